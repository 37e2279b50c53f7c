#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/exactnum.hpp"

using namespace kq;

static FieldDescriptor Q{1, std::nullopt};
static FieldDescriptor Qi{4, std::nullopt};
static FieldDescriptor Qz5{5, std::nullopt};
static FieldDescriptor Qs{1, std::string("s")};
static FieldDescriptor Qt{1, std::string("t")};
static FieldDescriptor Qit{4, std::string("t")};
static FieldDescriptor Qz20{20, std::nullopt};

TEST_CASE("parse and canonical round trip") {
  auto t = fe_parse("2*s/(s^2+1)", Qs);
  CHECK(fe_parse(t.to_string(), Qs) == t);
  CHECK(fe_parse("0", Q).is_zero());
  CHECK(fe_parse("z5^5", Qz5).is_one());
  CHECK_THROWS_AS(fe_parse("q+1", Q), ParseError);
  CHECK_THROWS_AS(fe_parse("i", Qz5), ParseError);
  CHECK_THROWS_AS(fe_parse("(1+2", Q), ParseError);
}

TEST_CASE("basic arithmetic") {
  auto i = fe_parse("i", Qi);
  CHECK((FieldElement::one(Qi) + i) * (FieldElement::one(Qi) - i) ==
        fe_parse("2", Qi));
  CHECK(fe_parse("1+z5+z5^2+z5^3+z5^4", Qz5).is_zero());
  // t^2+1 at s=1 with t = 2s/(s^2+1) gives 2
  auto t = fe_parse("2*s/(s^2+1)", Qs);
  auto v = (t * t + FieldElement::one(Qs))
               .specialize(FieldElement::one(Q));
  CHECK(v == fe_parse("2", Q));
}

TEST_CASE("field axioms on pseudo-random elements") {
  std::vector<FieldElement> xs = {
      fe_parse("3*z5-1/2", Qz5), fe_parse("z5^3+2*z5", Qz5),
      fe_parse("7-z5^2/3", Qz5)};
  auto x = xs[0], y = xs[1], z = xs[2];
  CHECK((x + y) + z == x + (y + z));
  CHECK(x * (y + z) == x * y + x * z);
  CHECK((x * x.inv()).is_one());
  CHECK((y / y).is_one());
  auto w = fe_parse("(s^3-2)/(s+5)", Qs);
  CHECK((w * w.inv()).is_one());
  auto u = fe_parse("(t^2+i*t)/(t-i)", Qit);
  CHECK((u * u.inv()).is_one());
  CHECK(fe_parse(u.to_string(), Qit) == u);
}

TEST_CASE("square roots") {
  CHECK(*fe_parse("4", Q).sqrt() == fe_parse("2", Q));
  CHECK(!fe_parse("s", Qs).sqrt().has_value());
  auto q = fe_parse("(s^2-1)^2/(s^2+1)^4", Qs);
  auto r = q.sqrt();
  REQUIRE(r.has_value());
  CHECK(*r * *r == q);
  // canonical sign: first nonzero coefficient positive
  CHECK(*fe_parse("(s^2-1)^2", Qs).sqrt() == fe_parse("s^2-1", Qs));
  // cyclotomic: sqrt(-1) in Q(i), sqrt(5) in Q(z5)
  auto m1 = fe_parse("0-1", Qi).sqrt();
  REQUIRE(m1.has_value());
  CHECK(*m1 * *m1 == fe_parse("0-1", Qi));
  auto five = fe_parse("5", Qz5).sqrt();
  REQUIRE(five.has_value());
  CHECK(*five * *five == fe_parse("5", Qz5));
  CHECK(!fe_parse("2", Qz5).sqrt().has_value());
  // z5 is the square of z5^3
  auto z5r = fe_parse("z5", Qz5).sqrt();
  REQUIRE(z5r.has_value());
  CHECK(*z5r * *z5r == fe_parse("z5", Qz5));
  CHECK(!fe_parse("1+i", Qi).sqrt().has_value());
  // squares of arbitrary elements are recognized
  auto a = fe_parse("z20^3-2*z20+7", Qz20);
  auto ra = (a * a).sqrt();
  REQUIRE(ra.has_value());
  CHECK(*ra * *ra == a * a);
  auto b = fe_parse("(z4*t^2-3*t)/(t+2)", Qit);
  auto rb = (b * b).sqrt();
  REQUIRE(rb.has_value());
  CHECK(*rb * *rb == b * b);
}

TEST_CASE("specialize") {
  auto f = fe_parse("t^3+3*t", Qit);
  CHECK(f.specialize(fe_parse("i", Qi)) == fe_parse("2*i", Qi));
  auto g = fe_parse("1/(t^2+1)", Qit);
  CHECK_THROWS_AS(g.specialize(fe_parse("i", Qi)), FieldError);
  auto h = fe_parse("2*s/(s^2+1)", Qs);
  CHECK(h.specialize(FieldElement::one(Q)).is_one());
}

TEST_CASE("embedding into larger cyclotomic fields") {
  auto z5 = FieldElement::zeta(Qz5);
  auto e = z5.embed(Qz20);
  CHECK(e == fe_parse("z20^4", Qz20));
  CHECK(e.pow(5).is_one());
  auto i20 = fe_parse("i", Qz20);
  CHECK(i20 == fe_parse("i", Qi).embed(Qz20));
  CHECK((i20 * i20) == fe_parse("0-1", Qz20));
}

TEST_CASE("canonical idempotence") {
  auto x = fe_parse("(2*t^2-2)/(2*t+2)", Qt);
  CHECK(x == fe_parse("t-1", Qt));
  CHECK(fe_parse(x.to_string(), Qt) == x);
}
