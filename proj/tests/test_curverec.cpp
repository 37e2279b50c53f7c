#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "core/curverec.hpp"

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

// the branch list from the pencil through [t:1:-1:-1]
static SixPointSet family_branch(const std::string& t,
                                 const FieldDescriptor& f) {
  std::vector<std::vector<std::string>> pats = {
      {"(" + t + ")+1", "-2"}, {"1", "0"},
      {"-1", "1"},             {"1-(" + t + ")", "1+(" + t + ")"},
      {"0", "1"},              {"2", "(" + t + ")-1"}};
  std::vector<ProjPoint> pts;
  for (auto& p : pats) pts.push_back(ProjPoint::parse(p, f));
  return SixPointSet::make(std::move(pts));
}

static SixPointSet affine_points(const std::vector<std::string>& xs, bool inf,
                                 const FieldDescriptor& f) {
  std::vector<ProjPoint> pts;
  for (auto& x : xs) pts.push_back(ProjPoint::parse({x, "1"}, f));
  if (inf) pts.push_back(ProjPoint::parse({"1", "0"}, f));
  return SixPointSet::make(std::move(pts));
}

static Trope trope_for_plane(const KummerSurface& S, const std::string& text) {
  Trope t;
  t.h = MultiPoly::parse(text, S.field(), surface_vars());
  auto [rest, rec] = restrict_to_plane(S.F, t.h);
  t.rec = rec;
  auto r = poly_sqrt(rest);
  REQUIRE(r.monic_root.has_value());
  t.conic_plane = *r.monic_root;
  t.conic = lift_from_plane(t.conic_plane, rec);
  t.radicand = r.radicand ? *r.radicand : fe_parse("1", S.field());
  t.root_status = r.status;
  for (size_t i = 0; i < S.nodes->size(); ++i)
    if (t.h.eval((*S.nodes)[i]).is_zero()) t.node_indices.push_back(i);
  return t;
}

TEST_CASE("branch points at t=2") {
  auto S = build_surface(family_params("2", Q));
  S.nodes = family_nodes("2", Q);
  auto tropes = find_tropes(S);
  auto pi1 = MultiPoly::parse("x0+x1+x2+2*x3", Q, surface_vars());
  const Trope* T = nullptr;
  for (auto& t : tropes)
    if (t.h == pi1) T = &t;
  REQUIRE(T != nullptr);
  auto base = ProjPoint::parse({"2", "1", "-1", "-1"}, Q);
  auto P = trope_branch_points(S, *T, base);
  CHECK(mobius_equivalent(P, family_branch("2", Q)).has_value());
  // a different base node gives an equivalent set
  ProjPoint other;
  for (size_t i : T->node_indices)
    if (!((*S.nodes)[i] == base)) other = (*S.nodes)[i];
  auto P2 = trope_branch_points(S, *T, other);
  CHECK(mobius_equivalent(P, P2).has_value());
  CHECK_THROWS(trope_branch_points(S, *T,
                                   ProjPoint::parse({"1", "0", "0", "0"}, Q)));
}

TEST_CASE("branch points for symbolic t") {
  auto S = build_surface(family_params("t", Qt));
  S.nodes = family_nodes("t", Qt);
  auto T = trope_for_plane(S, "x0+x1+x2+t*x3");
  CHECK(T.node_indices.size() == 6);
  auto base = ProjPoint::parse({"t", "1", "-1", "-1"}, Qt);
  auto P = trope_branch_points(S, T, base);
  CHECK(mobius_equivalent(P, family_branch("t", Qt)).has_value());
}

TEST_CASE("sextic from points") {
  auto A = affine_points({"0", "1", "2", "3", "4"}, true, Q);
  auto f = sextic_from_points(A);
  auto vars = f.vars();
  auto expect =
      MultiPoly::parse("x*(x-y)*y*(x-2*y)*(x-3*y)*(x-4*y)", Q, vars);
  CHECK(f.proportionality(expect).has_value());
  CHECK(f.leading_term().second == fe_parse("1", Q));
  // branch sextic of the t=2 curve, roots {0,1,inf,-2,3/2,1/3}
  std::vector<ProjPoint> rts;
  for (auto& p : std::vector<std::vector<std::string>>{
           {"0", "1"}, {"1", "1"}, {"1", "0"}, {"-2", "1"}, {"3", "2"},
           {"1", "3"}})
    rts.push_back(ProjPoint::parse(p, Q));
  auto g = sextic_from_points(SixPointSet::make(rts));
  auto paper = MultiPoly::parse("x*y*(x-y)*(x+2*y)*(2*x-3*y)*(3*x-y)", Q, vars);
  CHECK(g.proportionality(paper).has_value());
  // the projected branch set carries onto the sextic roots by x -> -x
  CHECK(mobius_equivalent(family_branch("2", Q), SixPointSet::make(rts))
            .has_value());
  // z^2 = x^5 - x
  auto C = affine_points({"0", "1", "-1", "i", "-i"}, true, Qi);
  auto h = sextic_from_points(C);
  auto quint = MultiPoly::parse("x^5*y-x*y^5", Qi, h.vars());
  CHECK(h.proportionality(quint).has_value());
}

TEST_CASE("mobius equivalence") {
  auto A = family_branch("2", Q);
  auto self = mobius_equivalent(A, A);
  REQUIRE(self.has_value());
  auto shift = ProjTransform::parse({{"1", "1"}, {"0", "1"}}, Q);
  std::vector<ProjPoint> moved;
  for (auto& p : A.points) moved.push_back(shift.apply(p));
  auto B = SixPointSet::make(moved);
  auto M = mobius_equivalent(A, B);
  REQUIRE(M.has_value());
  std::set<ProjPoint> bset(B.points.begin(), B.points.end());
  std::set<ProjPoint> image;
  for (auto& p : A.points) image.insert(M->apply(p));
  CHECK(image == bset);
  // inverse carries B back onto A
  std::set<ProjPoint> aset(A.points.begin(), A.points.end());
  std::set<ProjPoint> back;
  auto Minv = M->inverse();
  for (auto& p : B.points) back.insert(Minv.apply(p));
  CHECK(back == aset);
  auto off = affine_points({"0", "1", "2", "3", "5"}, true, Q);
  CHECK(!mobius_equivalent(A, off).has_value());
}

TEST_CASE("reduced automorphisms") {
  auto g2 = reduced_aut(family_branch("2", Q));
  CHECK(g2.profile.order == 6);
  CHECK(g2.label == "S3");
  CHECK(g2.perms.size() == 6);
  auto g3 = reduced_aut(family_branch("3", Q));
  CHECK(g3.profile.order == 12);
  CHECK(g3.label == "D12");
  auto gi = reduced_aut(family_branch("i", Qi));
  CHECK(gi.profile.order == 24);
  CHECK(gi.label == "S4");
  auto g0 = reduced_aut(family_branch("0", Q));
  CHECK(g0.profile.order == 12);
  CHECK(g0.label == "D12");
  auto quint = reduced_aut(affine_points({"0", "1", "-1", "i", "-i"}, true, Qi));
  CHECK(quint.profile.order == 24);
  CHECK(quint.label == "S4");
  // equivalence preserves the profile
  auto shift = ProjTransform::parse({{"1", "2"}, {"0", "1"}}, Q);
  std::vector<ProjPoint> moved;
  for (auto& p : family_branch("2", Q).points) moved.push_back(shift.apply(p));
  auto gshift = reduced_aut(SixPointSet::make(moved));
  CHECK(gshift.profile.order == 6);
  CHECK(gshift.profile.histogram == g2.profile.histogram);
}
