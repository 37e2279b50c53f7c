#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "core/kummer.hpp"

using namespace kq;

static FieldDescriptor Q{1, std::nullopt};
static FieldDescriptor Qi{4, std::nullopt};
static FieldDescriptor Qt{1, std::string("t")};

static KummerParams family_params(const std::string& t,
                                  const FieldDescriptor& f) {
  return KummerParams::parse(
      {"2", "-(" + t + ")^2-1", "-(" + t + ")^2-1", "-(" + t + ")^2-1",
       "(" + t + ")^3+3*(" + t + ")"},
      f);
}

static std::vector<ProjPoint> family_nodes(const std::string& t,
                                           const FieldDescriptor& f) {
  std::vector<std::vector<std::string>> pats = {
      {"1", "1", "1", t},    {"-1", "1", "-1", t},  {"-1", "-1", "1", t},
      {"1", "-1", "-1", t},  {"1", "1", t, "1"},    {"1", "-1", t, "-1"},
      {"-1", "-1", t, "1"},  {"-1", "1", t, "-1"},  {t, "1", "1", "1"},
      {t, "-1", "1", "-1"},  {t, "1", "-1", "-1"},  {t, "-1", "-1", "1"},
      {"1", t, "1", "1"},    {"-1", t, "-1", "1"},  {"1", t, "-1", "-1"},
      {"-1", t, "1", "-1"}};
  std::vector<ProjPoint> out;
  for (auto& p : pats) out.push_back(ProjPoint::parse(p, f));
  return out;
}

TEST_CASE("segre residual") {
  CHECK(segre_residual(KummerParams::parse({"1", "0", "0", "0", "-i"}, Qi))
            .is_zero());
  CHECK(segre_residual(
            KummerParams::parse({"1", "1", "-1", "-1", "-4"}, Q)) ==
        fe_parse("16", Q));
  CHECK(segre_residual(family_params("t", Qt)).is_zero());
}

TEST_CASE("build surface and warnings") {
  auto S2 = build_surface(family_params("2", Q));
  CHECK(S2.warnings.empty());
  CHECK(S2.F.coeff({4, 0, 0, 0}) == fe_parse("1", Q));
  CHECK(S2.F.coeff({1, 1, 1, 1}) == fe_parse("28", Q));
  auto fermat = build_surface(KummerParams::parse({"1", "0", "0", "0", "0"}, Q));
  REQUIRE(fermat.warnings.size() == 1);
  CHECK(fermat.warnings[0] == "segre residual is nonzero");
  auto S1 = build_surface(family_params("1", Q));
  bool degen = false;
  for (auto& w : S1.warnings) degen |= w.find("degenerate") == 0;
  CHECK(degen);
}

TEST_CASE("verify nodes") {
  auto S = build_surface(family_params("2", Q));
  auto rep = verify_nodes(S, family_nodes("2", Q));
  CHECK(rep.verdict);
  CHECK(rep.all_ordinary);
  CHECK(rep.single_h_orbit);
  for (auto& c : rep.checks) CHECK(c.hessian_rank == 3);
  auto bad = verify_nodes(S, {ProjPoint::parse({"1", "0", "0", "0"}, Q)});
  CHECK(!bad.checks[0].gradient_zero);
  CHECK(!bad.verdict);
  // symbolic t
  auto St = build_surface(family_params("t", Qt));
  auto rt = verify_nodes(St, family_nodes("t", Qt));
  CHECK(rt.verdict);
}

TEST_CASE("solve nodes") {
  auto S = build_surface(family_params("2", Q));
  auto found = solve_nodes(S);
  CHECK(found.complete);
  auto expect = family_nodes("2", Q);
  std::sort(expect.begin(), expect.end());
  CHECK(found.nodes == expect);
  auto fermat = build_surface(KummerParams::parse({"1", "0", "0", "0", "0"}, Q));
  auto none = solve_nodes(fermat);
  CHECK(none.nodes.empty());
  CHECK(!none.complete);
  auto S0 = build_surface(family_params("0", Q));
  CHECK(solve_nodes(S0).complete);
}

TEST_CASE("tropes") {
  auto S = build_surface(family_params("2", Q));
  S.nodes = family_nodes("2", Q);
  auto tropes = find_tropes(S);
  CHECK(tropes.size() == 16);
  auto vars = surface_vars();
  auto pi1 = MultiPoly::parse("x0+x1+x2+2*x3", Q, vars);
  bool found = false;
  for (auto& t : tropes) {
    CHECK(t.node_indices.size() == 6);
    // restriction really is radicand * conic^2
    auto [rest, rec] = restrict_to_plane(S.F, t.h);
    CHECK((t.conic_plane * t.conic_plane).scale(t.radicand) == rest);
    if (t.h == pi1) {
      found = true;
      // radicand is -3 up to a square (chart-dependent scaling)
      CHECK((t.radicand / fe_parse("-3", Q)).sqrt().has_value());
      CHECK(t.root_status == SqrtStatus::scalar_root_missing);
    }
  }
  CHECK(found);
  // H permutes the trope planes transitively
  auto H = close(heisenberg_generators(Q));
  std::vector<MultiPoly> hs;
  for (auto& t : tropes) hs.push_back(t.h);
  std::set<size_t> image;
  for (auto& g : H.elements) {
    auto perm = perm_on_polys(g, hs);
    image.insert(perm[0]);
  }
  CHECK(image.size() == 16);
}

TEST_CASE("special orbit evaluation") {
  auto S = build_surface(family_params("2", Q));
  CHECK(evaluate_on_special_orbits(S).all_nonzero);
  auto S1 = build_surface(family_params("1", Q));
  CHECK(!evaluate_on_special_orbits(S1).all_nonzero);
  auto tetra =
      build_surface(KummerParams::parse({"0", "0", "0", "0", "1"}, Q));
  auto rep = evaluate_on_special_orbits(tetra);
  bool sigma1 = false;
  for (auto& [k, p] : rep.vanishing) sigma1 |= (k == 1);
  CHECK(sigma1);
}
