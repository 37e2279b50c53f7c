#include "core/curverec.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kq {

SixPointSet SixPointSet::make(std::vector<ProjPoint> pts) {
  if (pts.size() != 6) throw FieldError("expected six points");
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) throw FieldError("points are not distinct");
  return SixPointSet{std::move(pts)};
}

namespace {

// Intersection point of three hyperplane conditions in P^3.
ProjPoint triple_intersection(const Mat& rows) {
  auto ker = mat_kernel(rows);
  if (ker.size() != 1) throw FieldError("intersection is not a point");
  return ProjPoint(ker[0]);
}

}  // namespace

SixPointSet trope_branch_points(const KummerSurface& S, const Trope& T,
                                const ProjPoint& base) {
  if (!S.nodes) throw FieldError("surface has no nodes");
  const FieldDescriptor& f = S.field();
  if (!T.h.eval(base).is_zero()) throw FieldError("base is not on the trope");
  bool is_node = false;
  std::vector<ProjPoint> others;
  for (size_t i : T.node_indices) {
    const ProjPoint& n = (*S.nodes)[i];
    if (n == base)
      is_node = true;
    else
      others.push_back(n);
  }
  if (!is_node) throw FieldError("base is not an incident node");
  if (others.size() != 5) throw FieldError("trope does not have six nodes");
  // conic must be smooth: rank-3 symmetric matrix in the plane chart
  {
    const auto& pv = T.conic_plane.vars();
    Mat m(pv.size(),
          std::vector<FieldElement>(pv.size(), FieldElement::zero(f)));
    FieldElement half = FieldElement::from_rat(f, Rat(1, 2));
    for (size_t i = 0; i < pv.size(); ++i)
      for (size_t j = 0; j < pv.size(); ++j) {
        Exponents e(pv.size(), 0);
        e[i] += 1;
        e[j] += 1;
        FieldElement c = T.conic_plane.coeff(e);
        m[i][j] = i == j ? c : c * half;
      }
    if (mat_rank(m) != 3) throw FieldError("trope conic is singular");
  }
  // first coordinate hyperplane missing the base
  size_t cut = 4;
  for (size_t i = 0; i < 4; ++i)
    if (!base.coords()[i].is_zero()) {
      cut = i;
      break;
    }
  // h-coefficients, to pick the P^1 chart on the line {h = 0, x_cut = 0}
  std::vector<FieldElement> hc(4, FieldElement::zero(f));
  for (auto& [e, c] : T.h.terms())
    for (size_t v = 0; v < 4; ++v)
      if (e[v]) hc[v] = c;
  std::vector<size_t> rest;
  for (size_t v = 0; v < 4; ++v)
    if (v != cut) rest.push_back(v);
  size_t pj = 4, pk = 4;
  for (size_t a = 0; a < 3 && pj == 4; ++a)
    for (size_t b = a + 1; b < 3; ++b) {
      size_t m = 3 - a - b;  // index of the leftover slot in rest
      if (!hc[rest[m]].is_zero()) {
        pj = rest[a];
        pk = rest[b];
        break;
      }
    }
  if (pj == 4) throw FieldError("no valid pencil chart");
  auto param = [&](const ProjPoint& p) {
    return ProjPoint({p.coords()[pj], p.coords()[pk]});
  };
  std::vector<ProjPoint> result;
  for (auto& n : others) {
    // line(base, n) meets {x_cut = 0} at base_cut*n - n_cut*base
    std::vector<FieldElement> q(4, FieldElement::zero(f));
    for (size_t v = 0; v < 4; ++v)
      q[v] = base.coords()[cut] * n.coords()[v] -
             n.coords()[cut] * base.coords()[v];
    result.push_back(param(ProjPoint(q)));
  }
  // tangent line of the conic at the base
  std::vector<FieldElement> grad;
  for (size_t v = 0; v < 4; ++v)
    grad.push_back(T.conic.derivative(v).eval(base));
  std::vector<FieldElement> cutrow(4, FieldElement::zero(f));
  cutrow[cut] = FieldElement::one(f);
  ProjPoint tangent = triple_intersection({hc, grad, cutrow});
  result.push_back(param(tangent));
  return SixPointSet::make(std::move(result));
}

MultiPoly sextic_from_points(const SixPointSet& P) {
  const FieldDescriptor& f = P.points[0].coords()[0].descriptor();
  std::vector<VarSpec> xy = {{"x", 1}, {"y", 1}};
  MultiPoly prod = MultiPoly::constant(FieldElement::one(f), xy);
  for (auto& p : P.points) {
    MultiPoly lin(f, xy);
    if (!p.coords()[1].is_zero()) lin.set_term({1, 0}, p.coords()[1]);
    if (!p.coords()[0].is_zero()) lin.set_term({0, 1}, -p.coords()[0]);
    prod = prod * lin;
  }
  auto [e, c] = prod.leading_term();
  return prod.scale(c.inv());
}

namespace {

// 2x2 matrix sending p0, p1, p2 to [0:1], [1:0], [1:1].
ProjTransform to_standard_triple(const ProjPoint& p0, const ProjPoint& p1,
                                 const ProjPoint& p2) {
  const FieldDescriptor& f = p0.coords()[0].descriptor();
  auto lin = [&](const ProjPoint& p) {
    // row of the form vanishing at p
    return std::vector<FieldElement>{p.coords()[1], -p.coords()[0]};
  };
  auto ev = [&](const std::vector<FieldElement>& L, const ProjPoint& p) {
    return L[0] * p.coords()[0] + L[1] * p.coords()[1];
  };
  auto L0 = lin(p0), L1 = lin(p1);
  FieldElement a = ev(L1, p2), b = ev(L0, p2);
  if (a.is_zero() || b.is_zero())
    throw FieldError("triple points are not distinct");
  std::vector<std::vector<FieldElement>> m = {
      {a * L0[0], a * L0[1]}, {b * L1[0], b * L1[1]}};
  return ProjTransform(std::move(m));
}

}  // namespace

std::optional<ProjTransform> mobius_equivalent(const SixPointSet& A,
                                               const SixPointSet& B) {
  ProjTransform MA = to_standard_triple(A.points[0], A.points[1], A.points[2]);
  std::set<ProjPoint> bset(B.points.begin(), B.points.end());
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      if (j == i) continue;
      for (size_t k = 0; k < 6; ++k) {
        if (k == i || k == j) continue;
        ProjTransform MB =
            to_standard_triple(B.points[i], B.points[j], B.points[k]);
        ProjTransform M = MB.inverse() * MA;
        std::set<ProjPoint> image;
        for (auto& p : A.points) image.insert(M.apply(p));
        if (image == bset) return M.proj_normal();
      }
    }
  return std::nullopt;
}

ReducedAut reduced_aut(const SixPointSet& P) {
  ReducedAut out;
  std::set<std::string> seen;
  ProjTransform MA = to_standard_triple(P.points[0], P.points[1], P.points[2]);
  std::set<ProjPoint> pset(P.points.begin(), P.points.end());
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      if (j == i) continue;
      for (size_t k = 0; k < 6; ++k) {
        if (k == i || k == j) continue;
        ProjTransform MB =
            to_standard_triple(P.points[i], P.points[j], P.points[k]);
        ProjTransform M = (MB.inverse() * MA).proj_normal();
        if (!seen.insert(M.key()).second) continue;
        std::set<ProjPoint> image;
        for (auto& p : P.points) image.insert(M.apply(p));
        if (image != pset) continue;
        std::vector<size_t> perm(6);
        for (size_t a = 0; a < 6; ++a) {
          ProjPoint q = M.apply(P.points[a]);
          size_t b = 0;
          while (!(P.points[b] == q)) ++b;
          perm[a] = b;
        }
        out.elements.push_back(M);
        out.perms.push_back(std::move(perm));
      }
    }
  out.profile.order = out.elements.size();
  out.profile.exponent = 1;
  for (auto& g : out.elements) {
    size_t o = element_order(g, out.profile.order + 1);
    out.profile.histogram[o] += 1;
    out.profile.exponent = std::lcm(out.profile.exponent, o);
  }
  out.profile.center_order = 0;
  for (auto& g : out.elements) {
    bool central = true;
    for (auto& h : out.elements)
      if (!(g * h).proj_equal(h * g)) {
        central = false;
        break;
      }
    if (central) ++out.profile.center_order;
  }
  struct Entry {
    size_t order;
    std::map<size_t, size_t> hist;
    const char* name;
  };
  static const std::vector<Entry> table = {
      {5, {{1, 1}, {5, 4}}, "mu5"},
      {6, {{1, 1}, {2, 3}, {3, 2}}, "S3"},
      {12, {{1, 1}, {2, 7}, {3, 2}, {6, 2}}, "D12"},
      {24, {{1, 1}, {2, 9}, {3, 8}, {4, 6}}, "S4"},
  };
  out.label = "order " + std::to_string(out.profile.order) + ", unnamed";
  for (auto& e : table)
    if (e.order == out.profile.order && e.hist == out.profile.histogram) {
      out.label = e.name;
      break;
    }
  return out;
}

}  // namespace kq
