#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/polygeom.hpp"

using namespace kq;

static FieldDescriptor Q{1, std::nullopt};
static FieldDescriptor Qi{4, std::nullopt};
static FieldDescriptor Qt{1, std::string("t")};

static std::vector<VarSpec> X4{{"x0", 1}, {"x1", 1}, {"x2", 1}, {"x3", 1}};

static MultiPoly kummer_t(const FieldDescriptor& f) {
  // a=2, b=c=d=-t^2-1, e=t^3+3*t
  return MultiPoly::parse(
      "2*(x0^4+x1^4+x2^4+x3^4)"
      "+2*(-t^2-1)*(x0^2*x1^2+x2^2*x3^2)"
      "+2*(-t^2-1)*(x0^2*x2^2+x1^2*x3^2)"
      "+2*(-t^2-1)*(x0^2*x3^2+x1^2*x2^2)"
      "+4*(t^3+3*t)*x0*x1*x2*x3",
      f, X4);
}

TEST_CASE("parse, arithmetic, eval") {
  auto F = kummer_t(Qt);
  CHECK(F.is_homogeneous());
  CHECK(F.total_degree() == 4);
  auto p = ProjPoint::parse({"1", "1", "1", "t"}, Qt);
  CHECK(F.eval(p).is_zero());
  auto G = MultiPoly::parse("(x0+x1)^2", Q, X4);
  auto H = MultiPoly::parse("x0^2+2*x0*x1+x1^2", Q, X4);
  CHECK(G == H);
  CHECK(MultiPoly::parse(F.to_string(), Qt, X4) == F);
  CHECK_THROWS_AS(MultiPoly::parse("x0/x1", Q, X4), ParseError);
  CHECK_THROWS_AS(MultiPoly::parse("y0+1", Q, X4), ParseError);
}

TEST_CASE("transform action") {
  auto F = kummer_t(Qt);
  auto A1 = ProjTransform::parse(
      {{"-1", "0", "0", "0"},
       {"0", "1", "0", "0"},
       {"0", "0", "-1", "0"},
       {"0", "0", "0", "1"}},
      Qt);
  auto A3 = ProjTransform::parse(
      {{"0", "1", "0", "0"},
       {"1", "0", "0", "0"},
       {"0", "0", "0", "1"},
       {"0", "0", "1", "0"}},
      Qt);
  CHECK(poly_apply_transform(F, A1) == F);
  CHECK(poly_apply_transform(F, A3) == F);
  CHECK((A1 * A1).proj_equal(ProjTransform::identity(Qt, 4)));
  CHECK(A1.inverse().proj_equal(A1));
  CHECK(A1.det() == FieldElement::one(Qt));
  // Q1 = sum of squares maps to Q2 under B2 up to scalar
  auto B2 = ProjTransform::parse(
      {{"-i", "0", "0", "i"},
       {"0", "1", "1", "0"},
       {"1", "0", "0", "1"},
       {"0", "-i", "i", "0"}},
      Qi);
  auto Q1 = MultiPoly::parse("x0^2+x1^2+x2^2+x3^2", Qi, X4);
  auto Q6 = MultiPoly::parse("x0*x3+x1*x2", Qi, X4);
  auto img = poly_apply_transform(Q1, B2);
  auto c = img.proportionality(Q6);
  REQUIRE(c.has_value());
  CHECK(*c == fe_parse("4", Qi));
}

TEST_CASE("restriction to a trope plane") {
  auto F = kummer_t(Qt);
  auto h = MultiPoly::parse("x0+x1+x2+t*x3", Qt, X4);
  auto [rest, rec] = restrict_to_plane(F, h);
  CHECK(rec.var_name == "x0");
  // over Q(t) the scalar factor is not a square
  auto sq = poly_sqrt(rest);
  REQUIRE(sq.status == SqrtStatus::scalar_root_missing);
  REQUIRE(sq.monic_root.has_value());
  auto conic = MultiPoly::parse(
      "x1^2+x1*x2+x2^2+t*x1*x3+t*x2*x3-x3^2", Qt,
      {{"x1", 1}, {"x2", 1}, {"x3", 1}});
  CHECK(sq.monic_root->proportionality(conic).has_value());
  CHECK((*sq.monic_root * *sq.monic_root).scale(*sq.radicand) == rest);
  auto lifted = lift_from_plane(rest, rec);
  CHECK(lifted.vars() == X4);
  // over Q(s) with t = 2s/(s^2+1) the root exists in the field
  FieldDescriptor Qs{1, std::string("s")};
  auto Fs = MultiPoly::parse(
      "x0^4+x1^4+x2^4+x3^4"
      "-((2*s/(s^2+1))^2+1)*(x0^2*x1^2+x2^2*x3^2"
      "+x0^2*x2^2+x1^2*x3^2+x0^2*x3^2+x1^2*x2^2)"
      "+2*((2*s/(s^2+1))^3+3*(2*s/(s^2+1)))*x0*x1*x2*x3",
      Qs, X4);
  auto hs = MultiPoly::parse("x0+x1+x2+(2*s/(s^2+1))*x3", Qs, X4);
  auto [rests, recs] = restrict_to_plane(Fs, hs);
  auto sqs = poly_sqrt(rests);
  REQUIRE(sqs.status == SqrtStatus::ok);
  CHECK(*sqs.root * *sqs.root == rests);
}

TEST_CASE("poly sqrt statuses") {
  std::vector<VarSpec> X2{{"x", 1}, {"y", 1}};
  auto sq = poly_sqrt(MultiPoly::parse("x^2+2*x*y+y^2", Q, X2));
  REQUIRE(sq.status == SqrtStatus::ok);
  CHECK(*sq.root == MultiPoly::parse("x+y", Q, X2));
  auto s2 = poly_sqrt(MultiPoly::parse("2*x^2+4*x*y+2*y^2", Q, X2));
  CHECK(s2.status == SqrtStatus::scalar_root_missing);
  REQUIRE(s2.radicand.has_value());
  CHECK(*s2.radicand == fe_parse("2", Q));
  REQUIRE(s2.monic_root.has_value());
  CHECK(*s2.monic_root == MultiPoly::parse("x+y", Q, X2));
  auto s3 = poly_sqrt(MultiPoly::parse("x^2+y^2", Q, X2));
  CHECK(s3.status == SqrtStatus::not_a_square);
  auto s4 = poly_sqrt(MultiPoly::parse("x^3*y", Q, X2));
  CHECK(s4.status == SqrtStatus::not_a_square);
}

TEST_CASE("jacobian data") {
  auto F2 = MultiPoly::parse("x0^2", Q, X4);
  auto p = ProjPoint::parse({"0", "0", "0", "1"}, Q);
  auto jd = jacobian_at(F2, p);
  CHECK(jd.gradient_zero);
  CHECK(jd.hessian_rank == 1);
  // node of the t-family at t=2: [1:1:1:2]
  auto F = kummer_t(Qt).specialize_coeffs(fe_parse("2", Q));
  auto n = ProjPoint::parse({"1", "1", "1", "2"}, Q);
  auto jn = jacobian_at(F, n);
  CHECK(jn.gradient_zero);
  CHECK(jn.hessian_rank == 3);
  // generic point is smooth
  auto g = jacobian_at(F, ProjPoint::parse({"1", "0", "0", "0"}, Q));
  CHECK(!g.gradient_zero);
}

TEST_CASE("linear algebra") {
  auto I = ProjTransform::identity(Q, 3);
  CHECK(mat_rank(I.matrix()) == 3);
  Mat m = {{fe_parse("1", Q), fe_parse("2", Q)},
           {fe_parse("2", Q), fe_parse("4", Q)}};
  CHECK(mat_rank(m) == 1);
  auto ker = mat_kernel(m);
  REQUIRE(ker.size() == 1);
  CHECK((m[0][0] * ker[0][0] + m[0][1] * ker[0][1]).is_zero());
  std::vector<std::vector<Rat>> rm = {{Rat(1), Rat(-1, 2)},
                                      {Rat(-2), Rat(1)}};
  CHECK(rat_mat_rank(rm) == 1);
}
