#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "core/divlat.hpp"

using namespace kq;

static FieldDescriptor Qs{1, std::string("s")};
static FieldDescriptor Qt{1, std::string("t")};

// the double solid family with t substituted, in the w^2 = F normalization
static KummerSurface halved_surface(const std::string& t,
                                    const FieldDescriptor& f) {
  auto params = KummerParams::parse(
      {"1", "-((" + t + ")^2+1)/2", "-((" + t + ")^2+1)/2",
       "-((" + t + ")^2+1)/2", "((" + t + ")^3+3*(" + t + "))/2"},
      f);
  auto S = build_surface(params);
  std::vector<std::vector<std::string>> pats = {
      {"1", "1", "1", t},    {"-1", "1", "-1", t},  {"-1", "-1", "1", t},
      {"1", "-1", "-1", t},  {"1", "1", t, "1"},    {"1", "-1", t, "-1"},
      {"-1", "-1", t, "1"},  {"-1", "1", t, "-1"},  {t, "1", "1", "1"},
      {t, "-1", "1", "-1"},  {t, "1", "-1", "-1"},  {t, "-1", "-1", "1"},
      {"1", t, "1", "1"},    {"-1", t, "-1", "1"},  {"1", t, "-1", "-1"},
      {"-1", t, "1", "-1"}};
  std::vector<ProjPoint> nodes;
  for (auto& p : pats) nodes.push_back(ProjPoint::parse(p, f));
  S.nodes = nodes;
  std::vector<std::string> planes = {
      "x0+x1+x2+(T)*x3",   "x0-x1+x2-(T)*x3",   "x0+x1-x2-(T)*x3",
      "x0-x1-x2+(T)*x3",   "x0+x1+(T)*x2+x3",   "x0-x1+(T)*x2-x3",
      "x0+x1-(T)*x2-x3",   "x0-x1-(T)*x2+x3",   "x0+(T)*x1+x2+x3",
      "x0-(T)*x1-x2+x3",   "x0-(T)*x1+x2-x3",   "x0+(T)*x1-x2-x3",
      "(T)*x0+x1+x2+x3",   "(T)*x0-x1-x2+x3",   "(T)*x0-x1+x2-x3",
      "(T)*x0+x1-x2-x3"};
  std::vector<Trope> tropes;
  for (auto& text : planes) {
    std::string expanded;
    for (size_t i = 0; i < text.size(); ++i) {
      if (text[i] == 'T')
        expanded += t;
      else
        expanded += text[i];
    }
    tropes.push_back(
        trope_for_plane(S, MultiPoly::parse(expanded, f, surface_vars())));
  }
  S.tropes = tropes;
  return S;
}

static const std::vector<std::vector<int>> paper_matrix = {
    {-1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0},
    {1, -1, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1},
    {1, 1, -1, 1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 1},
    {1, 1, 1, -1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0},
    {1, 0, 1, 0, -1, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 0},
    {0, 1, 0, 1, 1, -1, 1, 1, 0, 0, 1, 1, 1, 0, 1, 0},
    {1, 0, 1, 0, 1, 1, -1, 1, 0, 0, 1, 1, 0, 1, 0, 1},
    {0, 1, 0, 1, 1, 1, 1, -1, 1, 1, 0, 0, 0, 1, 0, 1},
    {1, 1, 0, 0, 1, 0, 0, 1, -1, 1, 1, 1, 1, 0, 0, 1},
    {0, 0, 1, 1, 1, 0, 0, 1, 1, -1, 1, 1, 0, 1, 1, 0},
    {1, 1, 0, 0, 0, 1, 1, 0, 1, 1, -1, 1, 0, 1, 1, 0},
    {0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1, -1, 1, 0, 0, 1},
    {1, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0, 1, -1, 1, 1, 1},
    {1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0, 1, -1, 1, 1},
    {0, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1, 1, -1, 1},
    {0, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1, 1, 1, -1}};

static const std::string t_of_s = "2*s/(s^2+1)";

TEST_CASE("sheet splitting over the square-closed parameterization") {
  auto S = halved_surface(t_of_s, Qs);
  CHECK(S.warnings.empty());
  auto sheets = split_tropes(S);
  REQUIRE(sheets.size() == 32);
  CHECK(sheets[0].delta == fe_parse("1", Qs));
  CHECK(sheets[0].label() == "Pi1+");
  CHECK(sheets[1].label() == "Pi1-");
  // g^2 = F on each plane
  for (size_t i = 0; i < 32; i += 8) {
    auto diff = sheets[i].gpoly * sheets[i].gpoly - S.F;
    CHECK(restrict_to_plane(diff, sheets[i].h).first.is_zero());
  }
  // the first sheet matches the printed equation up to sign
  auto paper_g = MultiPoly::parse(
      "((s^2-1)/(s^2+1)^2)*((s^2+1)*x1^2+(s^2+1)*x1*x2+2*s*x1*x3"
      "+(s^2+1)*x2^2+2*s*x2*x3-(s^2+1)*x3^2)",
      Qs, surface_vars());
  auto q1 = restrict_to_plane(sheets[0].gpoly, sheets[0].h).first;
  auto q2 = restrict_to_plane(paper_g, sheets[0].h).first;
  auto c = q1.proportionality(q2);
  REQUIRE(c.has_value());
  CHECK((*c == fe_parse("1", Qs) || *c == fe_parse("-1", Qs)));
}

TEST_CASE("gram matrix against the printed one") {
  auto S = halved_surface(t_of_s, Qs);
  auto sheets = split_tropes(S);
  std::vector<PlaneSheet> plus;
  for (auto& s : sheets)
    if (s.eps > 0) plus.push_back(s);
  auto M = gram(plus, S);
  auto flips = align_gram(M, paper_matrix);
  REQUIRE(flips.has_value());
  CHECK(gram_rank(M) == 7);
  auto full = gram(sheets, S);
  CHECK(gram_rank(full) == 7);
  // block sums
  for (size_t i = 0; i < 16; ++i)
    for (size_t j = 0; j < 16; ++j) {
      int sum = full.entries[2 * i][2 * j] + full.entries[2 * i][2 * j + 1] +
                full.entries[2 * i + 1][2 * j] +
                full.entries[2 * i + 1][2 * j + 1];
      CHECK(sum == 2);
    }
  auto single = gram({sheets[0]}, S);
  CHECK(single.entries == std::vector<std::vector<int>>{{-1}});
  // misaligned reference is rejected
  auto broken = paper_matrix;
  broken[0][1] = 2;
  CHECK(!align_gram(M, broken).has_value());
}

TEST_CASE("extension requirement over the plain t-line") {
  auto S = halved_surface("t", Qt);
  CHECK_THROWS_AS((void)split_tropes(S), ExtensionRequired);
  auto sheets = split_tropes(S, true);
  REQUIRE(sheets.size() == 32);
  CHECK(!sheets[0].delta.sqrt().has_value());
  for (auto& s : sheets) {
    auto ratio = s.delta / sheets[0].delta;
    CHECK(ratio.sqrt().has_value());
  }
  CHECK(gram_rank(gram(sheets, S)) == 7);
}

TEST_CASE("lifted actions and invariant ranks") {
  auto S = halved_surface(t_of_s, Qs);
  auto sheets = split_tropes(S);
  std::vector<ProjTransform> hgens;
  for (auto& g : heisenberg_generators(Qs)) hgens.push_back(g.matrix);
  auto H = lift_group(hgens, S.F);
  CHECK(H.order() == 16);
  CHECK(invariant_class_rank(sheets, H, S) == 1);
  auto rep = criterion_report(sheets, H, S);
  CHECK(rep.verdict == "Z");
  CHECK(rep.plus_generates);
  CHECK(!rep.swaps_plus_minus);
  auto Hrho = lift_group(hgens, S.F, {-1, 1, -1, 1});
  CHECK(Hrho.order() == 16);
  CHECK(invariant_class_rank(sheets, Hrho, S) == 2);
  auto rep2 = criterion_report(sheets, Hrho, S);
  CHECK(rep2.verdict == "Z^2");
  // mu_2^4 : mu_3
  auto cyc = ProjTransform::parse(
      {{"0", "0", "1", "0"},
       {"1", "0", "0", "0"},
       {"0", "1", "0", "0"},
       {"0", "0", "0", "1"}},
      Qs);
  auto gens48 = hgens;
  gens48.push_back(cyc);
  auto G48 = lift_group(gens48, S.F);
  CHECK(G48.order() == 48);
  CHECK(invariant_class_rank(sheets, G48, S) == 1);
  // the deck involution swaps the two halves
  LiftedElement deck{ProjTransform::identity(Qs, 4), fe_parse("-1", Qs)};
  auto perm = sheet_permutation(deck, sheets, S);
  for (size_t i = 0; i < 32; i += 2) {
    CHECK(perm[i] == i + 1);
    CHECK(perm[i + 1] == i);
  }
}
