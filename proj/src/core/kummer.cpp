#include "core/kummer.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kq {

std::vector<VarSpec> surface_vars() {
  return {{"x0", 1}, {"x1", 1}, {"x2", 1}, {"x3", 1}};
}

KummerParams KummerParams::make(FieldElement a, FieldElement b,
                                FieldElement c, FieldElement d,
                                FieldElement e) {
  std::vector<FieldElement*> all = {&a, &b, &c, &d, &e};
  FieldElement* first = nullptr;
  for (auto* x : all)
    if (!x->is_zero()) {
      first = x;
      break;
    }
  if (!first) throw FieldError("all parameters are zero");
  FieldElement inv = first->inv();
  for (auto* x : all) *x = *x * inv;
  return KummerParams{a, b, c, d, e};
}

KummerParams KummerParams::parse(const std::vector<std::string>& texts,
                                 const FieldDescriptor& f) {
  if (texts.size() != 5) throw FieldError("expected 5 parameters");
  return make(fe_parse(texts[0], f), fe_parse(texts[1], f),
              fe_parse(texts[2], f), fe_parse(texts[3], f),
              fe_parse(texts[4], f));
}

FieldElement segre_residual(const KummerParams& p) {
  return p.a * (p.a * p.a + p.e * p.e - p.b * p.b - p.c * p.c - p.d * p.d) +
         (p.b * p.c * p.d) * FieldElement::from_int(p.field(), 2);
}

static MultiPoly expand_quartic(const KummerParams& p) {
  const FieldDescriptor& f = p.field();
  auto vars = surface_vars();
  auto mono = [&](int e0, int e1, int e2, int e3, const FieldElement& c) {
    MultiPoly m(f, vars);
    m.set_term({e0, e1, e2, e3}, c);
    return m;
  };
  FieldElement two = FieldElement::from_int(f, 2);
  FieldElement four = FieldElement::from_int(f, 4);
  MultiPoly F(f, vars);
  F = F + mono(4, 0, 0, 0, p.a) + mono(0, 4, 0, 0, p.a) +
      mono(0, 0, 4, 0, p.a) + mono(0, 0, 0, 4, p.a);
  FieldElement b2 = two * p.b, c2 = two * p.c, d2 = two * p.d;
  if (!b2.is_zero())
    F = F + mono(2, 2, 0, 0, b2) + mono(0, 0, 2, 2, b2);
  if (!c2.is_zero())
    F = F + mono(2, 0, 2, 0, c2) + mono(0, 2, 0, 2, c2);
  if (!d2.is_zero())
    F = F + mono(2, 0, 0, 2, d2) + mono(0, 2, 2, 0, d2);
  FieldElement e4 = four * p.e;
  if (!e4.is_zero()) F = F + mono(1, 1, 1, 1, e4);
  return F;
}

static FieldDescriptor with_i(const FieldDescriptor& f) {
  return FieldDescriptor{std::lcm(f.cyclotomic_order, 4u),
                         f.transcendental};
}

std::vector<std::vector<ProjPoint>> sigma_orbits_points(
    const FieldDescriptor& f) {
  if (f.cyclotomic_order % 4 != 0)
    throw FieldError("sigma orbits need i in the field");
  static const std::vector<std::vector<std::vector<const char*>>> raw = {
      {{"1","0","0","0"},{"0","1","0","0"},{"0","0","1","0"},{"0","0","0","1"}},
      {{"1","1","1","-1"},{"1","1","-1","1"},{"1","-1","1","1"},{"-1","1","1","1"}},
      {{"1","1","1","1"},{"-1","-1","1","1"},{"1","-1","-1","1"},{"-1","1","-1","1"}},
      {{"0","0","1","1"},{"1","1","0","0"},{"0","0","-1","1"},{"1","-1","0","0"}},
      {{"1","0","1","0"},{"0","1","0","1"},{"-1","0","1","0"},{"0","-1","0","1"}},
      {{"0","1","1","0"},{"1","0","0","1"},{"0","-1","1","0"},{"-1","0","0","1"}},
      {{"i","0","0","1"},{"0","i","1","0"},{"-i","0","0","1"},{"0","-i","1","0"}},
      {{"i","0","1","0"},{"0","i","0","1"},{"0","-i","0","1"},{"-i","0","1","0"}},
      {{"i","1","0","0"},{"0","0","i","1"},{"-i","1","0","0"},{"0","0","-i","1"}},
      {{"i","i","1","1"},{"-i","-i","1","1"},{"i","-i","-1","1"},{"-i","i","-1","1"}},
      {{"1","i","i","1"},{"1","-i","-i","1"},{"-1","-i","i","1"},{"-1","i","-i","1"}},
      {{"1","i","-i","1"},{"-1","i","i","1"},{"-1","-i","-i","1"},{"1","-i","i","1"}},
      {{"i","1","i","1"},{"-i","1","-i","1"},{"-i","-1","i","1"},{"i","-1","-i","1"}},
      {{"i","1","-i","1"},{"i","-1","i","1"},{"-i","-1","-i","1"},{"-i","1","i","1"}},
      {{"i","i","-1","1"},{"-i","-i","-1","1"},{"i","-i","1","1"},{"-i","i","1","1"}},
  };
  std::vector<std::vector<ProjPoint>> out;
  for (auto& orb : raw) {
    std::vector<ProjPoint> pts;
    for (auto& p : orb) {
      std::vector<std::string> texts(p.begin(), p.end());
      pts.push_back(ProjPoint::parse(texts, f));
    }
    out.push_back(std::move(pts));
  }
  return out;
}

KummerSurface build_surface(const KummerParams& p) {
  KummerSurface S{p, expand_quartic(p), {}, std::nullopt, std::nullopt};
  for (auto& gen : heisenberg_generators(p.field()))
    if (poly_apply_transform(S.F, gen.matrix) != S.F)
      throw FieldError("quartic not invariant under " + gen.name);
  if (!segre_residual(p).is_zero())
    S.warnings.push_back("segre residual is nonzero");
  auto sq = poly_sqrt(S.F);
  if (sq.status != SqrtStatus::not_a_square)
    S.warnings.push_back("degenerate: quartic is a square up to scalar");
  FieldDescriptor fi = with_i(p.field());
  MultiPoly Fi = S.F.map_coeffs(fi);
  bool vanish = false;
  for (auto& orb : sigma_orbits_points(fi))
    for (auto& pt : orb)
      if (Fi.eval(pt).is_zero()) vanish = true;
  if (vanish)
    S.warnings.push_back(
        "degenerate: quartic vanishes on a special length-4 orbit");
  return S;
}

NodeReport verify_nodes(const KummerSurface& S,
                        const std::vector<ProjPoint>& candidates) {
  NodeReport rep;
  rep.all_ordinary = !candidates.empty();
  for (auto& p : candidates) {
    auto jd = jacobian_at(S.F, p);
    NodeCheck c{p, jd.gradient_zero, jd.hessian_rank,
                jd.gradient_zero && jd.hessian_rank == 3};
    if (!c.ordinary_double_point) rep.all_ordinary = false;
    rep.checks.push_back(std::move(c));
  }
  rep.single_h_orbit = false;
  if (candidates.size() == 16) {
    auto H = close(heisenberg_generators(S.field()));
    auto orb = orbit(H, candidates[0]);
    std::set<ProjPoint> cand(candidates.begin(), candidates.end());
    std::set<ProjPoint> os(orb.points.begin(), orb.points.end());
    rep.single_h_orbit = cand == os && cand.size() == 16;
  }
  rep.verdict = rep.all_ordinary && rep.single_h_orbit;
  return rep;
}

// --- node search ---

namespace {

std::vector<MultiPoly> coeffs_in(const MultiPoly& p, size_t var) {
  int d = p.degree_in(var);
  std::vector<MultiPoly> out(size_t(d) + 1,
                             MultiPoly(p.field(), p.vars()));
  for (auto& [e, c] : p.terms()) {
    Exponents r = e;
    int j = r[var];
    r[var] = 0;
    MultiPoly m(p.field(), p.vars());
    m.set_term(r, c);
    out[size_t(j)] = out[size_t(j)] + m;
  }
  return out;
}

MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> a,
                      const FieldDescriptor& f,
                      const std::vector<VarSpec>& vars) {
  size_t n = a.size();
  MultiPoly one = MultiPoly::constant(FieldElement::one(f), vars);
  MultiPoly prev = one;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      size_t piv = k + 1;
      while (piv < n && a[piv][k].is_zero()) ++piv;
      if (piv == n) return MultiPoly(f, vars);
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        MultiPoly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        auto q = num.divide_exact(prev);
        if (!q) throw FieldError("fraction-free elimination division failed");
        a[i][j] = *q;
      }
    prev = a[k][k];
  }
  MultiPoly det = a[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

// roots of a univariate polynomial given by ascending coefficients
std::vector<FieldElement> univ_roots(std::vector<FieldElement> cs,
                                     const FieldDescriptor& f, long height) {
  while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
  std::vector<FieldElement> roots;
  if (cs.empty()) return roots;
  size_t low = 0;
  while (low < cs.size() && cs[low].is_zero()) ++low;
  if (low > 0) {
    roots.push_back(FieldElement::zero(f));
    cs.erase(cs.begin(), cs.begin() + long(low));
  }
  if (cs.size() <= 1) return roots;
  auto eval = [&](const FieldElement& x) {
    FieldElement acc = FieldElement::zero(f);
    for (size_t k = cs.size(); k-- > 0;) acc = acc * x + cs[k];
    return acc;
  };
  // rational candidates by the rational root test on the rational part,
  // capped by the height bound
  Int lead = 1, tail = 1;
  bool rationalish = true;
  auto intify = [&](const FieldElement& c) -> std::optional<Int> {
    auto r = c.as_rational();
    if (!r) return std::nullopt;
    return r->get_num() * r->get_den();
  };
  auto lt = intify(cs.back());
  auto ct = intify(cs.front());
  if (lt && ct && *lt != 0 && *ct != 0) {
    lead = abs(*lt);
    tail = abs(*ct);
  } else {
    rationalish = false;
  }
  std::vector<Rat> rats;
  auto divisors = [&](const Int& v) {
    std::vector<Int> ds;
    for (Int d = 1; d <= height; ++d)
      if (v % d == 0) ds.push_back(d);
    return ds;
  };
  if (rationalish) {
    for (auto& p : divisors(tail))
      for (auto& q : divisors(lead)) {
        Rat r(p, q);
        r.canonicalize();
        rats.push_back(r);
        rats.push_back(-r);
      }
  }
  for (long k = -std::min(height, 8L); k <= std::min(height, 8L); ++k)
    if (k) rats.push_back(Rat(k));
  std::sort(rats.begin(), rats.end());
  rats.erase(std::unique(rats.begin(), rats.end()), rats.end());
  std::set<std::string> found;
  auto try_root = [&](const FieldElement& x) {
    if (eval(x).is_zero() && found.insert(x.to_string()).second)
      roots.push_back(x);
  };
  FieldElement zeta = f.cyclotomic_order > 1 ? FieldElement::zeta(f)
                                             : FieldElement::one(f);
  unsigned n = std::max(1u, f.cyclotomic_order);
  for (auto& r : rats) {
    FieldElement base = FieldElement::from_rat(f, r);
    FieldElement zp = FieldElement::one(f);
    for (unsigned k = 0; k < n; ++k) {
      try_root(base * zp);
      zp = zp * zeta;
    }
  }
  return roots;
}

std::vector<FieldElement> as_univariate(const MultiPoly& p, size_t var) {
  auto cs = coeffs_in(p, var);
  std::vector<FieldElement> out;
  for (auto& c : cs) {
    if (c.is_zero()) {
      out.push_back(FieldElement::zero(p.field()));
      continue;
    }
    auto [e, v] = c.leading_term();
    for (int x : e)
      if (x) throw FieldError("polynomial is not univariate");
    out.push_back(v);
  }
  return out;
}

MultiPoly subst_value(const MultiPoly& p, size_t var,
                      const FieldElement& value) {
  MultiPoly r(p.field(), p.vars());
  for (auto& [e, c] : p.terms()) {
    Exponents re = e;
    int k = re[var];
    re[var] = 0;
    MultiPoly m(p.field(), p.vars());
    FieldElement cc = c * value.pow(k);
    if (!cc.is_zero()) m.set_term(re, cc);
    r = r + m;
  }
  return r;
}

}  // namespace

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, size_t var) {
  auto pc = coeffs_in(p, var);
  auto qc = coeffs_in(q, var);
  size_t m = pc.size() - 1, n = qc.size() - 1;
  const FieldDescriptor& f = p.field();
  const auto& vars = p.vars();
  if (m == 0 && n == 0) throw FieldError("resultant needs a positive degree");
  if (m == 0) return p.pow(unsigned(n));
  if (n == 0) return q.pow(unsigned(m));
  size_t N = m + n;
  std::vector<std::vector<MultiPoly>> a(
      N, std::vector<MultiPoly>(N, MultiPoly(f, vars)));
  for (size_t r = 0; r < n; ++r)
    for (size_t k = 0; k <= m; ++k) a[r][r + m - k] = pc[k];
  for (size_t r = 0; r < m; ++r)
    for (size_t k = 0; k <= n; ++k) a[n + r][r + n - k] = qc[k];
  return bareiss_det(std::move(a), f, vars);
}

NodeSearchResult solve_nodes(const KummerSurface& S,
                             const NodeSearchConfig& config) {
  const FieldDescriptor& f = S.field();
  std::set<ProjPoint> nodes;
  auto is_node = [&](const ProjPoint& p) {
    auto jd = jacobian_at(S.F, p);
    return jd.gradient_zero;
  };
  auto H = close(heisenberg_generators(f));
  auto add_with_orbit = [&](const ProjPoint& p) {
    if (!is_node(p)) return;
    for (auto& q : orbit(H, p).points)
      if (is_node(q)) nodes.insert(q);
  };
  for (auto& p : config.candidates) add_with_orbit(p);
  if (f.transcendental && config.candidates.empty())
    throw FieldError(
        "node search over a transcendental field needs candidate hints");
  if (!f.transcendental) {
    auto vars = surface_vars();
    MultiPoly one3(f, std::vector<VarSpec>(vars.begin(), vars.end() - 1));
    // affine chart x3 = 1
    std::vector<MultiPoly> part;
    for (size_t i = 0; i < 3; ++i)
      part.push_back(S.F.derivative(i).substitute_out(
          3, MultiPoly::constant(FieldElement::one(f),
                                 {vars[0], vars[1], vars[2]})));
    MultiPoly R1 = resultant(part[0], part[1], 0);
    MultiPoly R2 = resultant(part[0], part[2], 0);
    if (!R1.is_zero() && !R2.is_zero() && R1.degree_in(1) > 0 &&
        R2.degree_in(1) > 0) {
      MultiPoly E = resultant(R1, R2, 1);
      if (!E.is_zero()) {
        for (auto& r2 : univ_roots(as_univariate(E, 2), f, config.height)) {
          MultiPoly R1s = subst_value(R1, 2, r2);
          std::vector<FieldElement> roots1;
          if (R1s.is_zero()) continue;
          roots1 = univ_roots(as_univariate(R1s, 1), f, config.height);
          for (auto& r1 : roots1) {
            MultiPoly p0 = subst_value(subst_value(part[0], 2, r2), 1, r1);
            if (p0.is_zero()) continue;
            for (auto& r0 :
                 univ_roots(as_univariate(p0, 0), f, config.height)) {
              std::vector<FieldElement> cs = {r0, r1, r2,
                                              FieldElement::one(f)};
              ProjPoint cand(cs);
              add_with_orbit(cand);
            }
          }
        }
      }
    }
  }
  NodeSearchResult res;
  res.nodes.assign(nodes.begin(), nodes.end());
  res.complete = res.nodes.size() == 16;
  return res;
}

Trope trope_for_plane(const KummerSurface& S, const MultiPoly& h) {
  if (!S.nodes || S.nodes->size() != 16)
    throw FieldError("tropes need 16 verified nodes");
  Trope t;
  t.h = h;
  for (size_t i = 0; i < 16; ++i)
    if (h.eval((*S.nodes)[i]).is_zero()) t.node_indices.push_back(i);
  if (t.node_indices.size() != 6)
    throw FieldError("plane is incident to " +
                     std::to_string(t.node_indices.size()) +
                     " nodes, not 6");
  auto [rest, rec] = restrict_to_plane(S.F, h);
  auto sq = poly_sqrt(rest);
  if (sq.status == SqrtStatus::not_a_square)
    throw FieldError("restriction is not a square up to scalar");
  t.conic_plane = *sq.monic_root;
  t.conic = lift_from_plane(t.conic_plane, rec);
  t.radicand = *sq.radicand;
  t.root_status = sq.status;
  t.rec = rec;
  return t;
}

std::vector<Trope> find_tropes(const KummerSurface& S) {
  if (!S.nodes || S.nodes->size() != 16)
    throw FieldError("tropes need 16 verified nodes");
  const auto& nodes = *S.nodes;
  const FieldDescriptor& f = S.field();
  auto vars = surface_vars();
  std::map<std::string, MultiPoly> planes;
  for (size_t i = 0; i < 16; ++i)
    for (size_t j = i + 1; j < 16; ++j)
      for (size_t k = j + 1; k < 16; ++k) {
        Mat m = {nodes[i].coords(), nodes[j].coords(), nodes[k].coords()};
        auto ker = mat_kernel(m);
        if (ker.size() != 1) continue;
        MultiPoly h(f, vars);
        FieldElement lead = FieldElement::zero(f);
        for (auto& c : ker[0])
          if (!c.is_zero()) {
            lead = c;
            break;
          }
        FieldElement inv = lead.inv();
        for (size_t v = 0; v < 4; ++v) {
          if (ker[0][v].is_zero()) continue;
          Exponents e(4, 0);
          e[v] = 1;
          h.set_term(e, ker[0][v] * inv);
        }
        planes.emplace(h.to_string(), h);
      }
  std::vector<Trope> tropes;
  for (auto& [key, h] : planes) {
    std::vector<size_t> incident;
    for (size_t i = 0; i < 16; ++i)
      if (h.eval(nodes[i]).is_zero()) incident.push_back(i);
    if (incident.size() != 6) continue;
    auto [rest, rec] = restrict_to_plane(S.F, h);
    auto sq = poly_sqrt(rest);
    if (sq.status == SqrtStatus::not_a_square) continue;
    Trope t;
    t.h = h;
    t.conic_plane = *sq.monic_root;
    t.conic = lift_from_plane(t.conic_plane, rec);
    t.radicand = *sq.radicand;
    t.root_status = sq.status;
    t.rec = rec;
    t.node_indices = incident;
    tropes.push_back(std::move(t));
  }
  if (tropes.size() != 16)
    throw FieldError("expected 16 tropes, found " +
                     std::to_string(tropes.size()));
  std::vector<int> per_node(16, 0);
  for (auto& t : tropes)
    for (size_t i : t.node_indices) per_node[i] += 1;
  for (int c : per_node)
    if (c != 6) throw FieldError("node-trope incidence is not 6/6");
  return tropes;
}

SpecialOrbitReport evaluate_on_special_orbits(const KummerSurface& S) {
  FieldDescriptor fi = with_i(S.field());
  MultiPoly Fi = S.F.map_coeffs(fi);
  SpecialOrbitReport rep;
  auto orbits = sigma_orbits_points(fi);
  for (size_t k = 0; k < orbits.size(); ++k)
    for (auto& pt : orbits[k])
      if (Fi.eval(pt).is_zero()) rep.vanishing.push_back({k + 1, pt});
  rep.all_nonzero = rep.vanishing.empty();
  return rep;
}

}  // namespace kq
