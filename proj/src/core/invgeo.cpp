#include "core/invgeo.hpp"

#include <algorithm>
#include <set>

namespace kq {

namespace {

std::vector<FieldElement> linear_coeffs(const MultiPoly& h) {
  std::vector<FieldElement> c(h.vars().size(),
                              FieldElement::zero(h.field()));
  for (auto& [e, v] : h.terms()) {
    size_t idx = 0;
    int total = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      total += e[i];
      if (e[i] == 1) idx = i;
    }
    if (total != 1) throw FieldError("form is not linear");
    c[idx] = v;
  }
  return c;
}

const std::vector<std::pair<const char*, const char*>>& line_strings() {
  static const std::vector<std::pair<const char*, const char*>> t = {
      {"x0", "x1"},
      {"x2", "x3"},
      {"x0", "x2"},
      {"x1", "x3"},
      {"x0", "x3"},
      {"x1", "x2"},
      {"x0+x1", "x2+x3"},
      {"x0-x1", "x2-x3"},
      {"x0+x2", "x1+x3"},
      {"x0-x2", "x1-x3"},
      {"x0+x3", "x1+x2"},
      {"x0-x3", "x1-x2"},
      {"x0+x1", "x2-x3"},
      {"x0-x1", "x2+x3"},
      {"x0+x2", "x1-x3"},
      {"x0-x2", "x1+x3"},
      {"x0+x3", "x1-x2"},
      {"x0-x3", "x1+x2"},
      {"x0+i*x1", "x2+i*x3"},
      {"x0-i*x1", "x2-i*x3"},
      {"x0+i*x2", "x1+i*x3"},
      {"x0-i*x2", "x1-i*x3"},
      {"x0+i*x3", "x1+i*x2"},
      {"x0-i*x3", "x1-i*x2"},
      {"x0-i*x1", "x2+i*x3"},
      {"x0+i*x1", "x2-i*x3"},
      {"x0+i*x2", "x1-i*x3"},
      {"x0-i*x2", "x1+i*x3"},
      {"x0+i*x3", "x1-i*x2"},
      {"x0-i*x3", "x1+i*x2"},
  };
  return t;
}

const std::vector<const char*>& quadric_strings() {
  static const std::vector<const char*> t = {
      "x0^2+x1^2+x2^2+x3^2", "x0^2+x1^2-x2^2-x3^2", "x0^2-x1^2-x2^2+x3^2",
      "x0^2-x1^2+x2^2-x3^2", "x0*x2+x1*x3",         "x0*x3+x1*x2",
      "x0*x1+x2*x3",         "x0*x2-x1*x3",         "x0*x3-x1*x2",
      "x0*x1-x2*x3",
  };
  return t;
}

bool same_line(const MultiPoly& a1, const MultiPoly& a2, const MultiPoly& b1,
               const MultiPoly& b2) {
  Mat m = {linear_coeffs(a1), linear_coeffs(a2), linear_coeffs(b1),
           linear_coeffs(b2)};
  return mat_rank(m) == 2;
}

// Spanning points of the line {f1 = f2 = 0}.
std::pair<std::vector<FieldElement>, std::vector<FieldElement>> line_span(
    const LineRecord& line) {
  Mat m = {linear_coeffs(line.f1), linear_coeffs(line.f2)};
  auto ker = mat_kernel(m);
  if (ker.size() != 2) throw FieldError("forms do not cut a line");
  return {ker[0], ker[1]};
}

bool point_on_line(const ProjPoint& p, const LineRecord& line) {
  return line.f1.eval(p).is_zero() && line.f2.eval(p).is_zero();
}

}  // namespace

std::vector<LineRecord> fixed_lines(const MatrixGroup& H) {
  const auto& f = H.elements[0].field();
  if (f.cyclotomic_order % 4 != 0)
    throw FieldError("fixed lines need i in the field");
  if (H.order() != 16) throw GroupError("expected the order-16 group");
  auto vars = surface_vars();
  auto& table = line_strings();
  std::vector<MultiPoly> tf1, tf2;
  for (auto& [s1, s2] : table) {
    tf1.push_back(MultiPoly::parse(s1, f, vars));
    tf2.push_back(MultiPoly::parse(s2, f, vars));
  }
  auto one = FieldElement::one(f);
  std::vector<LineRecord> out(30);
  std::vector<bool> used(30, false);
  for (size_t e = 1; e < H.order(); ++e) {
    const auto& g = H.elements[e];
    auto g2 = g * g;
    FieldElement lam = g2.matrix()[0][0];
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j)
        if (g2.matrix()[i][j] != (i == j ? lam : FieldElement::zero(f)))
          throw GroupError("element does not square to a scalar");
    auto s = lam.sqrt();
    if (!s) throw FieldError("cannot rescale: sqrt(" + lam.to_string() +
                             ") missing");
    auto inv = g.scale(s->inv());
    Mat combined;
    for (int sign : {+1, -1}) {
      Mat m = inv.matrix();
      for (size_t i = 0; i < 4; ++i)
        m[i][i] = m[i][i] - (sign > 0 ? one : -one);
      auto span = mat_kernel(m);
      if (span.size() != 2)
        throw GroupError("eigenspace of dimension " +
                         std::to_string(span.size()));
      for (auto& v : span) combined.push_back(v);
      auto forms = mat_kernel(Mat{span[0], span[1]});
      MultiPoly c1(f, vars), c2(f, vars);
      for (size_t i = 0; i < 4; ++i) {
        Exponents ex(4, 0);
        ex[i] = 1;
        c1.set_term(ex, forms[0][i]);
        c2.set_term(ex, forms[1][i]);
      }
      size_t id = 0;
      for (size_t k = 0; k < 30; ++k)
        if (same_line(c1, c2, tf1[k], tf2[k])) {
          id = k + 1;
          break;
        }
      if (id == 0) throw GroupError("eigenline not in the table");
      if (used[id - 1]) throw GroupError("eigenline matched twice");
      used[id - 1] = true;
      out[id - 1] = LineRecord{id, tf1[id - 1], tf2[id - 1], g};
    }
    if (mat_rank(combined) != 4)
      throw GroupError("eigenlines of one element are not skew");
  }
  return out;
}

std::vector<QuadricRecord> invariant_quadrics(const MatrixGroup& H) {
  const auto& f = H.elements[0].field();
  auto vars = surface_vars();
  std::vector<Exponents> basis;
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i; j < 4; ++j) {
      Exponents e(4, 0);
      ++e[i];
      ++e[j];
      basis.push_back(e);
    }
  std::vector<MultiPoly> monos;
  for (auto& e : basis) {
    MultiPoly m(f, vars);
    m.set_term(e, FieldElement::one(f));
    monos.push_back(m);
  }
  // action matrices of the generators on the quadric space
  std::vector<Mat> action;
  for (auto& gen : H.generators) {
    Mat T(10, std::vector<FieldElement>(10, FieldElement::zero(f)));
    for (size_t k = 0; k < 10; ++k) {
      auto img = poly_apply_transform(monos[k], gen.matrix);
      for (size_t j = 0; j < 10; ++j) T[j][k] = img.coeff(basis[j]);
    }
    action.push_back(T);
  }
  auto& table = quadric_strings();
  std::vector<MultiPoly> tq;
  for (auto* s : table) tq.push_back(MultiPoly::parse(s, f, vars));
  auto one = FieldElement::one(f);
  std::vector<QuadricRecord> out(10);
  std::vector<bool> used(10, false);
  size_t total_dim = 0;
  for (unsigned mask = 0; mask < (1u << H.generators.size()); ++mask) {
    Mat sys;
    for (size_t g = 0; g < H.generators.size(); ++g) {
      int chi = (mask >> g) & 1 ? -1 : +1;
      for (size_t r = 0; r < 10; ++r) {
        auto row = action[g][r];
        row[r] = row[r] - (chi > 0 ? one : -one);
        sys.push_back(row);
      }
    }
    auto ker = mat_kernel(sys);
    if (ker.empty()) continue;
    if (ker.size() > 1) throw GroupError("character eigenspace not a line");
    ++total_dim;
    MultiPoly q(f, vars);
    FieldElement lead = FieldElement::zero(f);
    for (size_t j = 0; j < 10; ++j)
      if (!ker[0][j].is_zero() && lead.is_zero()) lead = ker[0][j];
    for (size_t j = 0; j < 10; ++j) q.set_term(basis[j], ker[0][j] / lead);
    Mat sym(4, std::vector<FieldElement>(4, FieldElement::zero(f)));
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j) {
        Exponents e(4, 0);
        ++e[i];
        ++e[j];
        sym[i][j] = q.coeff(e);
        if (i != j)
          sym[i][j] = sym[i][j] / FieldElement::from_int(f, 2);
      }
    if (mat_rank(sym) != 4) throw GroupError("semi-invariant quadric singular");
    size_t id = 0;
    for (size_t k = 0; k < 10; ++k)
      if (q == tq[k]) {
        id = k + 1;
        break;
      }
    if (id == 0 || used[id - 1])
      throw GroupError("semi-invariant quadric not in the table");
    used[id - 1] = true;
    std::map<std::string, int> chi;
    for (size_t g = 0; g < H.generators.size(); ++g)
      chi[H.generators[g].name] = (mask >> g) & 1 ? -1 : +1;
    out[id - 1] = QuadricRecord{id, q, chi};
  }
  if (total_dim != 10)
    throw GroupError("quadric space decomposition has dimension " +
                     std::to_string(total_dim));
  return out;
}

MultiPoly restrict_to_line_pencil(const MultiPoly& F, const LineRecord& line) {
  auto [p, q] = line_span(line);
  const auto& f = F.field();
  std::vector<VarSpec> lv = {{"l0", 1}, {"l1", 1}};
  MultiPoly l0 = MultiPoly::var(f, lv, 0), l1 = MultiPoly::var(f, lv, 1);
  MultiPoly out(f, lv);
  for (auto& [e, c] : F.terms()) {
    MultiPoly term = MultiPoly::constant(c, lv);
    for (size_t i = 0; i < 4; ++i)
      if (e[i] > 0)
        term = term * (l0.scale(p[i]) + l1.scale(q[i])).pow(e[i]);
    out = out + term;
  }
  return out;
}

std::vector<std::vector<bool>> incidence_table(
    const std::vector<LineRecord>& lines,
    const std::vector<QuadricRecord>& quadrics) {
  std::vector<std::vector<bool>> table;
  for (auto& l : lines) {
    std::vector<bool> row;
    for (auto& q : quadrics)
      row.push_back(restrict_to_line_pencil(q.form, l).is_zero());
    table.push_back(row);
  }
  return table;
}

std::vector<OrbitRecord> line_singular_orbits(
    const MatrixGroup& H, const std::vector<LineRecord>& lines) {
  const auto& f = H.elements[0].field();
  std::set<ProjPoint> pts;
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j) {
      Mat m = {linear_coeffs(lines[i].f1), linear_coeffs(lines[i].f2),
               linear_coeffs(lines[j].f1), linear_coeffs(lines[j].f2)};
      auto ker = mat_kernel(m);
      if (ker.empty()) continue;
      if (ker.size() > 1) throw GroupError("coincident lines in the table");
      pts.insert(ProjPoint(ker[0]));
    }
  if (pts.size() != 60)
    throw GroupError("expected 60 intersection points, found " +
                     std::to_string(pts.size()));
  auto standard = sigma_orbits_points(f);
  std::vector<OrbitRecord> out;
  std::set<ProjPoint> left = pts;
  while (!left.empty()) {
    auto orb = orbit(H, *left.begin());
    if (orb.points.size() != 4)
      throw GroupError("intersection orbit of length " +
                       std::to_string(orb.points.size()));
    size_t id = 0;
    for (size_t k = 0; k < standard.size(); ++k) {
      std::set<ProjPoint> s(standard[k].begin(), standard[k].end());
      if (s == std::set<ProjPoint>(orb.points.begin(), orb.points.end()))
        id = k + 1;
    }
    if (id == 0) throw GroupError("intersection orbit not a standard one");
    for (auto& p : orb.points) {
      if (!left.erase(p))
        throw GroupError("orbit leaves the intersection set");
    }
    out.push_back(OrbitRecord{id, orb.points});
  }
  std::sort(out.begin(), out.end(),
            [](const OrbitRecord& a, const OrbitRecord& b) {
              return a.id < b.id;
            });
  return out;
}

OrbitClassification classify_orbit_length(const MatrixGroup& H,
                                          const std::vector<LineRecord>& lines,
                                          const std::vector<OrbitRecord>& sigma,
                                          const ProjPoint& p) {
  OrbitClassification out;
  out.length = orbit(H, p).points.size();
  for (auto& l : lines)
    if (point_on_line(p, l)) {
      out.line_id = l.id;
      break;
    }
  for (auto& o : sigma)
    for (auto& q : o.points)
      if (q == p) out.sigma_id = o.id;
  size_t expect = out.sigma_id ? 4 : out.line_id ? 8 : 16;
  if (out.length != expect)
    throw GroupError("orbit length " + std::to_string(out.length) +
                     " contradicts location certificate");
  return out;
}

bool line_transversal(const MultiPoly& F, const LineRecord& line) {
  auto q = restrict_to_line_pencil(F, line);
  if (q.is_zero()) return false;
  const auto& f = q.field();
  std::vector<VarSpec> sv = {{"l0", 1}};
  auto p = q.substitute_out(1, MultiPoly::constant(FieldElement::one(f), sv));
  if (4 - p.total_degree() > 1) return false;  // multiple root at [1:0]
  if (p.total_degree() < 1) return true;
  auto r = resultant(p, p.derivative(0), 0);
  return !r.is_zero();
}

}  // namespace kq
