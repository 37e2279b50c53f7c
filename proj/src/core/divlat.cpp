#include "core/divlat.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace kq {

namespace {

std::vector<FieldElement> linear_coeffs(const MultiPoly& h) {
  const FieldDescriptor& f = h.field();
  std::vector<FieldElement> c(h.vars().size(), FieldElement::zero(f));
  for (auto& [e, v] : h.terms())
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) c[i] = v;
  return c;
}

// Restriction of a quadric to the line h1 = h2 = 0, as a binary form.
MultiPoly restrict_to_line(const MultiPoly& g, const MultiPoly& h1,
                           const MultiPoly& h2) {
  const FieldDescriptor& f = g.field();
  auto ker = mat_kernel({linear_coeffs(h1), linear_coeffs(h2)});
  if (ker.size() != 2) throw FieldError("planes do not meet in a line");
  std::vector<VarSpec> lv = {{"l0", 1}, {"l1", 1}};
  std::vector<MultiPoly> coord;
  for (size_t v = 0; v < 4; ++v) {
    MultiPoly lin(f, lv);
    if (!ker[0][v].is_zero()) lin.set_term({1, 0}, ker[0][v]);
    if (!ker[1][v].is_zero()) lin.set_term({0, 1}, ker[1][v]);
    coord.push_back(lin);
  }
  MultiPoly out(f, lv);
  for (auto& [e, c] : g.terms()) {
    MultiPoly term = MultiPoly::constant(c, lv);
    for (size_t v = 0; v < 4; ++v)
      for (int k = 0; k < e[v]; ++k) term = term * coord[v];
    out = out + term;
  }
  return out;
}

}  // namespace

std::string PlaneSheet::label() const {
  return "Pi" + std::to_string(trope + 1) + (eps > 0 ? "+" : "-");
}

std::vector<PlaneSheet> split_tropes(const KummerSurface& S,
                                     bool allow_radical) {
  if (!S.tropes || S.tropes->size() != 16)
    throw FieldError("sheet splitting needs the 16 tropes");
  const auto& tropes = *S.tropes;
  const FieldDescriptor& f = S.field();
  bool all_square = true;
  for (auto& t : tropes) {
    if (t.root_status == SqrtStatus::not_a_square)
      throw FieldError("trope restriction is not a square up to scalar");
    if (t.root_status == SqrtStatus::scalar_root_missing) all_square = false;
  }
  FieldElement delta = FieldElement::one(f);
  if (!all_square) {
    FieldElement missing = FieldElement::one(f);
    for (auto& t : tropes)
      if (t.root_status == SqrtStatus::scalar_root_missing) {
        missing = t.radicand;
        break;
      }
    if (!allow_radical) throw ExtensionRequired(missing);
    delta = missing;
  }
  std::vector<PlaneSheet> sheets;
  for (size_t i = 0; i < tropes.size(); ++i) {
    auto ratio = tropes[i].radicand / delta;
    auto v = ratio.sqrt();
    if (!v) throw ExtensionRequired(ratio);
    PlaneSheet plus;
    plus.trope = i;
    plus.eps = +1;
    plus.h = tropes[i].h;
    plus.gpoly = tropes[i].conic.scale(*v);
    plus.delta = delta;
    PlaneSheet minus = plus;
    minus.eps = -1;
    sheets.push_back(std::move(plus));
    sheets.push_back(std::move(minus));
  }
  return sheets;
}

int sheet_pair(const PlaneSheet& s1, const PlaneSheet& s2,
               const KummerSurface& S) {
  if (s1.trope == s2.trope) return s1.eps == s2.eps ? -1 : 2;
  auto r1 = restrict_to_line(s1.gpoly, s1.h, s2.h);
  auto r2 = restrict_to_line(s2.gpoly, s1.h, s2.h);
  if (r1.is_zero() || r2.is_zero())
    throw FieldError("line lies in the surface");
  if (s1.eps < 0) r1 = -r1;
  if (s2.eps < 0) r2 = -r2;
  auto c = r1.proportionality(r2);
  const FieldDescriptor& f = S.field();
  if (c && *c == FieldElement::one(f)) return 1;
  if (c && *c == -FieldElement::one(f)) return 0;
  throw FieldError("sheet restrictions do not agree up to sign");
}

GramMatrix gram(const std::vector<PlaneSheet>& sheets,
                const KummerSurface& S) {
  GramMatrix M;
  size_t n = sheets.size();
  M.entries.assign(n, std::vector<int>(n, 0));
  for (auto& s : sheets) M.labels.push_back(s.label());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      int v = sheet_pair(sheets[i], sheets[j], S);
      M.entries[i][j] = v;
      M.entries[j][i] = v;
    }
  return M;
}

int gram_rank(const GramMatrix& M) {
  std::vector<std::vector<Rat>> rows;
  for (auto& r : M.entries) {
    std::vector<Rat> row;
    for (int v : r) row.push_back(Rat(v));
    rows.push_back(std::move(row));
  }
  return rat_mat_rank(rows);
}

std::optional<std::vector<size_t>> align_gram(
    const GramMatrix& ours, const std::vector<std::vector<int>>& reference) {
  size_t n = ours.entries.size();
  if (reference.size() != n) return std::nullopt;
  std::vector<int> flip(n, 0);
  for (size_t j = 1; j < n; ++j) {
    int o = ours.entries[0][j], r = reference[0][j];
    if (o == r)
      flip[j] = 0;
    else if (o + r == 1)
      flip[j] = 1;
    else
      return std::nullopt;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int o = ours.entries[i][j];
      int expect = i == j ? o : (flip[i] == flip[j] ? o : 1 - o);
      if (expect != reference[i][j]) return std::nullopt;
    }
  std::vector<size_t> out;
  for (size_t i = 0; i < n; ++i)
    if (flip[i]) out.push_back(i);
  return out;
}

namespace {

LiftedElement normalize_lift(ProjTransform g, FieldElement s) {
  FieldElement lead = FieldElement::zero(s.descriptor());
  for (auto& row : g.matrix()) {
    for (auto& v : row)
      if (!v.is_zero()) {
        lead = v;
        break;
      }
    if (!lead.is_zero()) break;
  }
  FieldElement inv = lead.inv();
  return {g.scale(inv), s * inv * inv};
}

LiftedElement lift_mul(const LiftedElement& a, const LiftedElement& b) {
  return normalize_lift(a.g * b.g, a.s * b.s);
}

std::string lift_key(const LiftedElement& e) {
  return e.g.key() + "|" + e.s.to_string();
}

}  // namespace

LiftedGroup lift_group(const std::vector<ProjTransform>& generators,
                       const MultiPoly& F, std::vector<int> signs,
                       size_t cap) {
  const FieldDescriptor& f = F.field();
  if (signs.empty()) signs.assign(generators.size(), +1);
  if (signs.size() != generators.size())
    throw GroupError("one sign per generator expected");
  std::vector<LiftedElement> gens;
  for (size_t k = 0; k < generators.size(); ++k) {
    auto c = poly_apply_transform(F, generators[k]).proportionality(F);
    if (!c) throw GroupError("generator does not preserve the surface");
    auto s = c->sqrt();
    if (!s) throw ExtensionRequired(*c);
    if (signs[k] < 0) *s = -*s;
    auto e = normalize_lift(generators[k], *s);
    size_t ord = element_order(generators[k]);
    if (ord % 2 == 1) {
      LiftedElement p = e;
      for (size_t i = 1; i < ord; ++i) p = lift_mul(p, e);
      if (p.s == -FieldElement::one(f)) e.s = -e.s;
    }
    gens.push_back(std::move(e));
  }
  LiftedGroup G;
  G.generators = gens;
  auto id = normalize_lift(ProjTransform::identity(f, 4), FieldElement::one(f));
  std::set<std::string> seen = {lift_key(id)};
  G.elements.push_back(id);
  std::deque<size_t> queue = {0};
  while (!queue.empty()) {
    size_t at = queue.front();
    queue.pop_front();
    for (auto& g : gens) {
      auto next = lift_mul(G.elements[at], g);
      if (!seen.insert(lift_key(next)).second) continue;
      G.elements.push_back(next);
      if (G.elements.size() > cap)
        throw GroupError("lifted closure exceeded cap");
      queue.push_back(G.elements.size() - 1);
    }
  }
  return G;
}

LiftedGroup lift_group_exact(const std::vector<ProjTransform>& generators,
                             const MultiPoly& F, size_t cap) {
  std::vector<NamedGen> named;
  for (size_t k = 0; k < generators.size(); ++k)
    named.push_back({"g" + std::to_string(k), generators[k]});
  size_t target = close(named, cap).order();
  size_t n = generators.size();
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    std::vector<int> signs;
    for (size_t k = 0; k < n; ++k) signs.push_back(mask & (1 << k) ? -1 : +1);
    auto G = lift_group(generators, F, signs, cap);
    if (G.order() == target) return G;
  }
  throw GroupError("no sign assignment lifts the group exactly");
}

std::vector<size_t> sheet_permutation(const LiftedElement& e,
                                      const std::vector<PlaneSheet>& sheets,
                                      const KummerSurface& S) {
  const FieldDescriptor& f = S.field();
  auto ginv = e.g.inverse();
  std::vector<size_t> perm(sheets.size(), 0);
  for (size_t i = 0; i + 1 < sheets.size(); i += 2) {
    auto himg = poly_apply_transform(sheets[i].h, ginv);
    size_t j = sheets.size();
    for (size_t cand = 0; cand < sheets.size(); cand += 2)
      if (himg.proportionality(sheets[cand].h)) {
        j = cand;
        break;
      }
    if (j == sheets.size())
      throw GroupError("action does not permute the trope planes");
    auto gimg = poly_apply_transform(sheets[i].gpoly, ginv).scale(e.s);
    auto q1 = restrict_to_plane(gimg, sheets[j].h).first;
    auto q2 = restrict_to_plane(sheets[j].gpoly, sheets[j].h).first;
    auto c = q1.proportionality(q2);
    if (!c || !(*c == FieldElement::one(f) || *c == -FieldElement::one(f)))
      throw GroupError("action does not permute the sheets");
    bool keep = *c == FieldElement::one(f);
    perm[i] = keep ? j : j + 1;
    perm[i + 1] = keep ? j + 1 : j;
  }
  return perm;
}

namespace {

std::vector<std::vector<size_t>> sheet_orbits(
    const std::vector<PlaneSheet>& sheets, const LiftedGroup& G,
    const KummerSurface& S, std::vector<std::vector<size_t>>* perms_out) {
  size_t n = sheets.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> root = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto& movers = perms_out ? G.elements : G.generators;
  for (auto& e : movers) {
    auto perm = sheet_permutation(e, sheets, S);
    for (size_t i = 0; i < n; ++i) parent[root(i)] = root(perm[i]);
    if (perms_out) perms_out->push_back(std::move(perm));
  }
  std::map<size_t, std::vector<size_t>> buckets;
  for (size_t i = 0; i < n; ++i) buckets[root(i)].push_back(i);
  std::vector<std::vector<size_t>> orbits;
  for (auto& [r, members] : buckets) orbits.push_back(members);
  return orbits;
}

int orbit_sum_rank(const GramMatrix& M,
                   const std::vector<std::vector<size_t>>& orbits) {
  size_t n = M.entries.size(), k = orbits.size();
  std::vector<std::vector<Rat>> pairing(k, std::vector<Rat>(k, Rat(0)));
  for (size_t a = 0; a < k; ++a)
    for (size_t b = 0; b < k; ++b) {
      long sum = 0;
      for (size_t i : orbits[a])
        for (size_t j : orbits[b]) sum += M.entries[i][j];
      pairing[a][b] = Rat(sum);
      (void)n;
    }
  return rat_mat_rank(pairing);
}

}  // namespace

int invariant_class_rank(const std::vector<PlaneSheet>& sheets,
                         const LiftedGroup& G, const KummerSurface& S) {
  auto orbits = sheet_orbits(sheets, G, S, nullptr);
  return orbit_sum_rank(gram(sheets, S), orbits);
}

CriterionReport criterion_report(const std::vector<PlaneSheet>& sheets,
                                 const LiftedGroup& G,
                                 const KummerSurface& S) {
  CriterionReport rep;
  auto orbits = sheet_orbits(sheets, G, S, nullptr);
  // condition (i): the group fuses the two 16-sheet halves into one orbit
  rep.swaps_plus_minus = orbits.size() == 1;
  std::vector<PlaneSheet> plus, minus;
  if (orbits.size() == 2) {
    // the orbit containing sheet 0 plays the role of Pi^+
    size_t first = orbits[0].front() == 0 ? 0 : 1;
    for (size_t k = 0; k < 2; ++k)
      for (size_t i : orbits[k])
        (k == first ? plus : minus).push_back(sheets[i]);
  } else {
    for (auto& s : sheets) (s.eps > 0 ? plus : minus).push_back(s);
  }
  rep.plus_generates = gram_rank(gram(plus, S)) == 7;
  rep.minus_generates = gram_rank(gram(minus, S)) == 7;
  rep.invariant_rank = orbit_sum_rank(gram(sheets, S), orbits);
  if (rep.invariant_rank == 1) {
    rep.verdict = "Z";
    if (rep.swaps_plus_minus)
      rep.firing_condition = "condition (i): the group swaps Pi^+ and Pi^-";
    else if (rep.plus_generates)
      rep.firing_condition = "condition (iv): the + sheets generate Cl(X)";
    else if (rep.minus_generates)
      rep.firing_condition = "condition (v): the - sheets generate Cl(X)";
    else
      rep.firing_condition = "invariant rank 1";
  } else {
    rep.verdict = "Z^2";
    rep.firing_condition =
        "invariant rank " + std::to_string(rep.invariant_rank);
  }
  return rep;
}

}  // namespace kq
