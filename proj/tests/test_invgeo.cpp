#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/invgeo.hpp"

#include <set>

using namespace kq;

static FieldDescriptor Qi{4, std::nullopt};

static MatrixGroup heis() { return close(heisenberg_generators(Qi)); }

// + positions per row of the reference incidence table; rows 2k-1 and 2k
// coincide.
static const std::vector<std::vector<size_t>> kIncidence = {
    {5, 6, 8, 9},  {5, 6, 8, 9},  {6, 7, 9, 10}, {6, 7, 9, 10},
    {5, 7, 8, 10}, {5, 7, 8, 10}, {3, 4, 8, 9},  {3, 4, 8, 9},
    {2, 3, 9, 10}, {2, 3, 9, 10}, {2, 4, 8, 10}, {2, 4, 8, 10},
    {3, 4, 5, 6},  {3, 4, 5, 6},  {2, 3, 6, 7},  {2, 3, 6, 7},
    {2, 4, 5, 7},  {2, 4, 5, 7},  {1, 2, 5, 9},  {1, 2, 5, 9},
    {1, 4, 7, 9},  {1, 4, 7, 9},  {1, 3, 7, 8},  {1, 3, 7, 8},
    {1, 2, 6, 8},  {1, 2, 6, 8},  {1, 4, 6, 10}, {1, 4, 6, 10},
    {1, 3, 5, 10}, {1, 3, 5, 10},
};

TEST_CASE("fixed lines of the sixteen-element group") {
  auto H = heis();
  auto lines = fixed_lines(H);
  REQUIRE(lines.size() == 30);
  for (size_t k = 0; k < 30; ++k) CHECK(lines[k].id == k + 1);

  auto& A1 = H.generators[0].matrix;
  std::set<size_t> a1_lines;
  for (auto& l : lines)
    if (l.fixing.proj_equal(A1)) a1_lines.insert(l.id);
  CHECK(a1_lines == std::set<size_t>{3, 4});

  CHECK(lines[0].f1 == MultiPoly::parse("x0", Qi, surface_vars()));
  CHECK(lines[0].f2 == MultiPoly::parse("x1", Qi, surface_vars()));
  CHECK(lines[18].f1 == MultiPoly::parse("x0+i*x1", Qi, surface_vars()));

  // each nontrivial element fixes exactly two of the thirty
  std::map<std::string, size_t> per_element;
  for (auto& l : lines) ++per_element[l.fixing.key()];
  CHECK(per_element.size() == 15);
  for (auto& [k, n] : per_element) CHECK(n == 2);
}

TEST_CASE("semi-invariant quadrics") {
  auto H = heis();
  auto quadrics = invariant_quadrics(H);
  REQUIRE(quadrics.size() == 10);
  auto vars = surface_vars();
  std::vector<std::string> forms = {
      "x0^2+x1^2+x2^2+x3^2", "x0^2+x1^2-x2^2-x3^2", "x0^2-x1^2-x2^2+x3^2",
      "x0^2-x1^2+x2^2-x3^2", "x0*x2+x1*x3",         "x0*x3+x1*x2",
      "x0*x1+x2*x3",         "x0*x2-x1*x3",         "x0*x3-x1*x2",
      "x0*x1-x2*x3"};
  for (size_t k = 0; k < 10; ++k) {
    CHECK(quadrics[k].id == k + 1);
    CHECK(quadrics[k].form == MultiPoly::parse(forms[k], Qi, vars));
  }
  for (auto& [name, v] : quadrics[0].character) CHECK(v == 1);
  std::set<std::map<std::string, int>> chars;
  for (auto& q : quadrics) chars.insert(q.character);
  CHECK(chars.size() == 10);
}

TEST_CASE("incidence table") {
  auto H = heis();
  auto lines = fixed_lines(H);
  auto quadrics = invariant_quadrics(H);
  auto table = incidence_table(lines, quadrics);
  REQUIRE(table.size() == 30);
  for (size_t r = 0; r < 30; ++r) {
    std::set<size_t> plus;
    for (size_t c = 0; c < 10; ++c)
      if (table[r][c]) plus.insert(c + 1);
    CHECK(plus == std::set<size_t>(kIncidence[r].begin(), kIncidence[r].end()));
  }
  for (size_t r = 0; r + 1 < 30; r += 2) CHECK(table[r] == table[r + 1]);
  std::vector<size_t> col(10, 0);
  for (size_t r = 0; r < 30; ++r) {
    size_t row = 0;
    for (size_t c = 0; c < 10; ++c)
      if (table[r][c]) {
        ++row;
        ++col[c];
      }
    CHECK(row == 4);
  }
  for (size_t c = 0; c < 10; ++c) CHECK(col[c] == 12);
  // every two quadrics share exactly four of the lines
  for (size_t c1 = 0; c1 < 10; ++c1)
    for (size_t c2 = c1 + 1; c2 < 10; ++c2) {
      size_t both = 0;
      for (size_t r = 0; r < 30; ++r)
        if (table[r][c1] && table[r][c2]) ++both;
      CHECK(both == 4);
    }
}

TEST_CASE("intersection points and their orbits") {
  auto H = heis();
  auto lines = fixed_lines(H);
  auto sigma = line_singular_orbits(H, lines);
  REQUIRE(sigma.size() == 15);
  for (size_t k = 0; k < 15; ++k) {
    CHECK(sigma[k].id == k + 1);
    CHECK(sigma[k].points.size() == 4);
  }
  std::set<ProjPoint> coord;
  for (size_t i = 0; i < 4; ++i) {
    std::vector<std::string> c(4, "0");
    c[i] = "1";
    coord.insert(ProjPoint::parse(c, Qi));
  }
  CHECK(std::set<ProjPoint>(sigma[0].points.begin(), sigma[0].points.end()) ==
        coord);

  // six points on each line, three lines through each point
  std::vector<ProjPoint> all;
  for (auto& o : sigma)
    for (auto& p : o.points) all.push_back(p);
  for (auto& l : lines) {
    size_t on = 0;
    for (auto& p : all)
      if (l.f1.eval(p).is_zero() && l.f2.eval(p).is_zero()) ++on;
    CHECK(on == 6);
  }
  for (auto& p : all) {
    size_t through = 0;
    for (auto& l : lines)
      if (l.f1.eval(p).is_zero() && l.f2.eval(p).is_zero()) ++through;
    CHECK(through == 3);
  }
}

TEST_CASE("orbit length trichotomy") {
  auto H = heis();
  auto lines = fixed_lines(H);
  auto sigma = line_singular_orbits(H, lines);

  auto c1 = classify_orbit_length(H, lines, sigma,
                                  ProjPoint::parse({"1", "0", "0", "0"}, Qi));
  CHECK(c1.length == 4);
  CHECK(c1.sigma_id == 1);

  auto c2 = classify_orbit_length(H, lines, sigma,
                                  ProjPoint::parse({"0", "0", "1", "5"}, Qi));
  CHECK(c2.length == 8);
  CHECK(c2.line_id == 1);
  CHECK(c2.sigma_id == 0);

  auto c3 = classify_orbit_length(H, lines, sigma,
                                  ProjPoint::parse({"1", "2", "3", "5"}, Qi));
  CHECK(c3.length == 16);
  CHECK(c3.line_id == 0);
  CHECK(c3.sigma_id == 0);
}

TEST_CASE("normalizer generators permute lines and quadrics") {
  auto H = heis();
  auto lines = fixed_lines(H);
  auto quadrics = invariant_quadrics(H);
  auto B1 = ProjTransform::parse({{"i", "0", "0", "0"},
                                  {"0", "i", "0", "0"},
                                  {"0", "0", "1", "0"},
                                  {"0", "0", "0", "1"}},
                                 Qi);
  auto B2 = ProjTransform::parse({{"-i", "0", "0", "i"},
                                  {"0", "1", "1", "0"},
                                  {"1", "0", "0", "1"},
                                  {"0", "-i", "i", "0"}},
                                 Qi);
  std::vector<MultiPoly> qforms;
  for (auto& q : quadrics) qforms.push_back(q.form);
  for (auto& B : {B1, B2}) {
    auto perm = perm_on_polys(B, qforms);
    std::set<size_t> image(perm.begin(), perm.end());
    CHECK(image.size() == 10);
    auto inv = B.inverse();
    for (auto& l : lines) {
      auto g1 = poly_apply_transform(l.f1, inv);
      auto g2 = poly_apply_transform(l.f2, inv);
      size_t hits = 0;
      for (auto& m : lines) {
        Mat rows;
        for (auto* form : {&g1, &g2, &m.f1, &m.f2}) {
          std::vector<FieldElement> r(4, FieldElement::zero(Qi));
          for (size_t i = 0; i < 4; ++i) {
            Exponents e(4, 0);
            e[i] = 1;
            r[i] = form->coeff(e);
          }
          rows.push_back(r);
        }
        if (mat_rank(rows) == 2) ++hits;
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("line transversality for a smooth member") {
  auto H = heis();
  auto lines = fixed_lines(H);
  auto params = KummerParams::parse({"2", "-5", "-5", "-5", "14"}, Qi);
  auto S = build_surface(params);
  for (auto& l : lines) CHECK(line_transversal(S.F, l));
  CHECK(evaluate_on_special_orbits(S).all_nonzero);

  // degenerate member: F vanishes on special orbits
  auto bad = build_surface(KummerParams::parse({"2", "-2", "-2", "-2", "4"},
                                               Qi));
  CHECK_FALSE(evaluate_on_special_orbits(bad).all_nonzero);
}
