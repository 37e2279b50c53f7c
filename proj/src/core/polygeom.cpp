#include "core/polygeom.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kq {

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
  long da = 0, db = 0;
  for (size_t i = 0; i < a.size(); ++i) da += long(a[i]) * weights[i];
  for (size_t i = 0; i < b.size(); ++i) db += long(b[i]) * weights[i];
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

static std::vector<int> var_weights(const std::vector<VarSpec>& vars) {
  std::vector<int> w;
  w.reserve(vars.size());
  for (auto& v : vars) w.push_back(v.weight);
  return w;
}

MultiPoly::MultiPoly(FieldDescriptor field, std::vector<VarSpec> vars)
    : field_(std::move(field)), vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(const FieldElement& c,
                              const std::vector<VarSpec>& vars) {
  MultiPoly p(c.descriptor(), vars);
  if (!c.is_zero()) p.terms_[Exponents(vars.size(), 0)] = c;
  return p;
}

MultiPoly MultiPoly::var(const FieldDescriptor& f,
                         const std::vector<VarSpec>& vars, size_t index) {
  MultiPoly p(f, vars);
  Exponents e(vars.size(), 0);
  e[index] = 1;
  p.terms_[e] = FieldElement::one(f);
  return p;
}

void MultiPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (auto& [e, c] : terms_) {
    int t = 0;
    for (size_t i = 0; i < e.size(); ++i) t += e[i] * vars_[i].weight;
    d = std::max(d, t);
  }
  return d;
}

bool MultiPoly::is_homogeneous() const {
  int d = -2;
  for (auto& [e, c] : terms_) {
    int t = 0;
    for (size_t i = 0; i < e.size(); ++i) t += e[i] * vars_[i].weight;
    if (d == -2)
      d = t;
    else if (t != d)
      return false;
  }
  return true;
}

int MultiPoly::degree_in(size_t var) const {
  int d = 0;
  for (auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void MultiPoly::set_term(const Exponents& e, const FieldElement& c) {
  if (e.size() != vars_.size()) throw FieldError("exponent arity mismatch");
  if (c.is_zero())
    terms_.erase(e);
  else
    terms_[e] = c;
}

FieldElement MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElement::zero(field_) : it->second;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (auto& [e, c] : o.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end())
      r.terms_[e] = c;
    else
      it->second = it->second + c;
  }
  r.prune();
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  return *this + (-o);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::scale(const FieldElement& c) const {
  MultiPoly r(field_, vars_);
  if (c.is_zero()) return r;
  for (auto& [e, v] : terms_) r.terms_[e] = v * c;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(field_, vars_);
  for (auto& [ea, ca] : terms_)
    for (auto& [eb, cb] : o.terms_) {
      Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto it = r.terms_.find(e);
      if (it == r.terms_.end())
        r.terms_[e] = ca * cb;
      else
        it->second = it->second + ca * cb;
    }
  r.prune();
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(FieldElement::one(field_), vars_);
  MultiPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return vars_ == o.vars_ && terms_ == o.terms_;
}

FieldElement MultiPoly::eval(const std::vector<FieldElement>& values) const {
  if (values.size() != vars_.size()) throw FieldError("eval arity mismatch");
  FieldElement acc = FieldElement::zero(field_);
  for (auto& [e, c] : terms_) {
    FieldElement t = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) t = t * values[i].pow(e[i]);
    acc = acc + t;
  }
  return acc;
}

FieldElement MultiPoly::eval(const ProjPoint& p) const {
  return eval(p.coords());
}

MultiPoly MultiPoly::derivative(size_t var) const {
  MultiPoly r(field_, vars_);
  for (auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    FieldElement nc = c * FieldElement::from_int(field_, e[var]);
    auto it = r.terms_.find(d);
    if (it == r.terms_.end())
      r.terms_[d] = nc;
    else
      it->second = it->second + nc;
  }
  r.prune();
  return r;
}

MultiPoly MultiPoly::substitute_out(size_t var,
                                    const MultiPoly& replacement) const {
  std::vector<VarSpec> rest;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (i != var) rest.push_back(vars_[i]);
  if (replacement.vars() != rest)
    throw FieldError("substitution variable mismatch");
  MultiPoly r(field_, rest);
  int dmax = degree_in(var);
  std::vector<MultiPoly> powers(dmax + 1);
  powers[0] = constant(FieldElement::one(field_), rest);
  for (int k = 1; k <= dmax; ++k) powers[k] = powers[k - 1] * replacement;
  for (auto& [e, c] : terms_) {
    Exponents re;
    re.reserve(rest.size());
    for (size_t i = 0; i < e.size(); ++i)
      if (i != var) re.push_back(e[i]);
    MultiPoly mono(field_, rest);
    mono.terms_[re] = c;
    r = r + mono * powers[e[var]];
  }
  return r;
}

MultiPoly MultiPoly::substitute_all(
    const std::vector<MultiPoly>& images) const {
  if (images.size() != vars_.size())
    throw FieldError("substitution arity mismatch");
  MultiPoly r(field_, vars_);
  for (auto& [e, c] : terms_) {
    MultiPoly t = constant(c, vars_);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) t = t * images[i].pow(e[i]);
    r = r + t;
  }
  return r;
}

std::pair<Exponents, FieldElement> MultiPoly::leading_term() const {
  if (terms_.empty()) throw FieldError("leading term of zero");
  GradedLexLess less{var_weights(vars_)};
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (less(best->first, it->first)) best = it;
  return {best->first, best->second};
}

std::optional<MultiPoly> MultiPoly::divide_exact(
    const MultiPoly& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  MultiPoly quot(field_, vars_);
  MultiPoly rem = *this;
  auto [de, dc] = divisor.leading_term();
  FieldElement dcinv = dc.inv();
  while (!rem.is_zero()) {
    auto [re, rc] = rem.leading_term();
    Exponents q(re.size());
    for (size_t i = 0; i < re.size(); ++i) {
      q[i] = re[i] - de[i];
      if (q[i] < 0) return std::nullopt;
    }
    MultiPoly mono(field_, vars_);
    mono.terms_[q] = rc * dcinv;
    quot = quot + mono;
    rem = rem - mono * divisor;
  }
  return quot;
}

std::optional<FieldElement> MultiPoly::proportionality(
    const MultiPoly& o) const {
  if (o.is_zero()) return std::nullopt;
  if (is_zero()) return FieldElement::zero(field_);
  auto [e, c] = o.leading_term();
  auto it = terms_.find(e);
  if (it == terms_.end()) return std::nullopt;
  FieldElement ratio = it->second / c;
  if (*this == o.scale(ratio)) return ratio;
  return std::nullopt;
}

MultiPoly MultiPoly::map_coeffs(const FieldDescriptor& target) const {
  MultiPoly r(target, vars_);
  for (auto& [e, c] : terms_) r.terms_[e] = c.embed(target);
  return r;
}

MultiPoly MultiPoly::specialize_coeffs(const FieldElement& value) const {
  MultiPoly r(value.descriptor(), vars_);
  for (auto& [e, c] : terms_) {
    FieldElement v = c.specialize(value);
    if (!v.is_zero()) r.terms_[e] = v;
  }
  return r;
}

static bool coeff_needs_parens(const std::string& s) {
  if (s.find('/') != std::string::npos) return true;
  for (size_t i = 0; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && i > 0 &&
        !(s[i - 1] == '(' || s[i - 1] == '+' || s[i - 1] == '-'))
      return true;
  if (s.find('*') != std::string::npos) return true;
  return false;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  GradedLexLess less{var_weights(vars_)};
  std::vector<const std::pair<const Exponents, FieldElement>*> ordered;
  for (auto& kv : terms_) ordered.push_back(&kv);
  std::sort(ordered.begin(), ordered.end(),
            [&](auto* a, auto* b) { return less(b->first, a->first); });
  std::string out;
  bool first = true;
  for (auto* kv : ordered) {
    const Exponents& e = kv->first;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i].name;
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = kv->second.to_string();
    std::string term;
    bool neg = false;
    if (mono.empty()) {
      term = cs;
      if (!term.empty() && term[0] == '-' && !coeff_needs_parens(cs)) {
        neg = true;
        term = term.substr(1);
      }
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      neg = true;
      term = mono;
    } else if (coeff_needs_parens(cs)) {
      term = "(" + cs + ")*" + mono;
    } else if (cs[0] == '-') {
      neg = true;
      term = cs.substr(1) + "*" + mono;
    } else {
      term = cs + "*" + mono;
    }
    if (first) {
      out = (neg ? "-" : "") + term;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

// --- polynomial expression parser ---

namespace {

struct PolyParser {
  const std::string& s;
  size_t pos = 0;
  const FieldDescriptor& field;
  const std::vector<VarSpec>& vars;

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  MultiPoly parse() {
    MultiPoly r = expr();
    skip();
    if (pos != s.size()) fail("unexpected trailing input");
    return r;
  }

  MultiPoly expr() {
    MultiPoly r = term();
    for (;;) {
      skip();
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  MultiPoly term() {
    MultiPoly r = factor();
    for (;;) {
      skip();
      if (eat('*'))
        r = r * factor();
      else if (eat('/')) {
        size_t at = pos;
        MultiPoly d = factor();
        auto [e, c] = d.is_zero()
                          ? std::pair<Exponents, FieldElement>{}
                          : d.leading_term();
        if (d.is_zero()) throw ParseError("division by zero", at);
        bool is_const = d.terms().size() == 1 &&
                        std::all_of(e.begin(), e.end(),
                                    [](int x) { return x == 0; });
        if (!is_const)
          throw ParseError("division by a non-constant polynomial", at);
        r = r.scale(c.inv());
      } else
        return r;
    }
  }

  MultiPoly factor() {
    MultiPoly b = base();
    skip();
    if (eat('^')) {
      skip();
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (pos == start) fail("expected integer exponent");
      return b.pow(unsigned(std::stoul(s.substr(start, pos - start))));
    }
    return b;
  }

  MultiPoly base() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    if (eat('(')) {
      MultiPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (eat('-')) return -factor();
    char c = s[pos];
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      Rat q(s.substr(start, pos - start));
      return MultiPoly::constant(FieldElement::from_rat(field, q), vars);
    }
    if (std::isalpha((unsigned char)c)) {
      size_t start = pos;
      while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) ||
                                s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name)
          return MultiPoly::var(field, vars, i);
      try {
        return MultiPoly::constant(fe_parse(name, field), vars);
      } catch (const ParseError&) {
        throw ParseError("unknown symbol '" + name + "'", start);
      }
    }
    fail("unexpected character");
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, const FieldDescriptor& f,
                           const std::vector<VarSpec>& vars) {
  PolyParser p{text, 0, f, vars};
  return p.parse();
}

MultiPoly poly_apply_transform(const MultiPoly& F, const ProjTransform& g) {
  const auto& vars = F.vars();
  if (g.size() != vars.size())
    throw FieldError("transform size does not match variable count");
  std::vector<MultiPoly> images;
  images.reserve(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) {
    MultiPoly row(F.field(), vars);
    for (size_t j = 0; j < vars.size(); ++j) {
      Exponents e(vars.size(), 0);
      e[j] = 1;
      if (!g.matrix()[i][j].is_zero()) row.set_term(e, g.matrix()[i][j]);
    }
    images.push_back(row);
  }
  return F.substitute_all(images);
}

static Int fe_height(const FieldElement& x) {
  Int h = 0;
  auto upd = [&](const Rat& q) {
    Int a = abs(q.get_num()), b = q.get_den();
    if (a > h) h = a;
    if (b > h) h = b;
  };
  for (const auto& p : x.num())
    for (const auto& q : p) upd(q);
  for (const auto& q : x.den()) upd(q);
  return h;
}

std::pair<MultiPoly, EliminationRecord> restrict_to_plane(const MultiPoly& F,
                                                          const MultiPoly& h) {
  const auto& vars = F.vars();
  if (h.vars() != vars) throw FieldError("plane variable mismatch");
  std::vector<FieldElement> lin(vars.size(), FieldElement::zero(F.field()));
  for (auto& [e, c] : h.terms()) {
    int tot = 0;
    size_t where = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      tot += e[i];
      if (e[i]) where = i;
    }
    if (tot != 1) throw FieldError("plane is not a linear form");
    lin[where] = c;
  }
  Int best_h = -1;
  size_t pick = vars.size();
  for (size_t i = 0; i < vars.size(); ++i) {
    if (lin[i].is_zero() || vars[i].weight != 1) continue;
    Int hh = fe_height(lin[i]);
    if (hh > best_h ||
        (hh == best_h && vars[i].name < vars[pick].name)) {
      best_h = hh;
      pick = i;
    }
  }
  if (pick == vars.size()) throw FieldError("plane has no usable coefficient");
  std::vector<VarSpec> rest;
  for (size_t i = 0; i < vars.size(); ++i)
    if (i != pick) rest.push_back(vars[i]);
  MultiPoly sub(F.field(), rest);
  FieldElement inv = lin[pick].inv();
  size_t k = 0;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (i == pick) continue;
    if (!lin[i].is_zero()) {
      Exponents e(rest.size(), 0);
      e[k] = 1;
      sub.set_term(e, -(lin[i] * inv));
    }
    ++k;
  }
  MultiPoly restricted = F.substitute_out(pick, sub);
  EliminationRecord rec{pick, vars[pick].name, sub, vars};
  return {restricted, rec};
}

MultiPoly lift_from_plane(const MultiPoly& q, const EliminationRecord& rec) {
  MultiPoly r(q.field(), rec.original_vars);
  for (auto& [e, c] : q.terms()) {
    Exponents a;
    a.reserve(rec.original_vars.size());
    size_t k = 0;
    for (size_t i = 0; i < rec.original_vars.size(); ++i) {
      if (i == rec.var_index)
        a.push_back(0);
      else
        a.push_back(e[k++]);
    }
    r.set_term(a, c);
  }
  return r;
}

// Monic square root over the base field by triangular matching in the most
// significant variable of positive degree (the last one, which carries the
// graded-lex leading term); empty when no square root exists over any
// field extension.
static std::optional<MultiPoly> monic_sqrt(const MultiPoly& q) {
  if (q.is_zero()) return q;
  const auto& vars = q.vars();
  size_t v = vars.size();
  for (size_t i = vars.size(); i-- > 0;)
    if (q.degree_in(i) > 0) {
      v = i;
      break;
    }
  if (v == vars.size()) {
    // constant: monic normalization means the constant is 1
    auto [e, c] = q.leading_term();
    if (c.is_one()) return q;
    return std::nullopt;
  }
  int d = q.degree_in(v);
  if (d % 2) return std::nullopt;
  int m = d / 2;
  // coefficients with respect to v, kept in the ambient variable set
  std::vector<MultiPoly> Q(d + 1, MultiPoly(q.field(), vars));
  for (auto& [e, c] : q.terms()) {
    Exponents r = e;
    int j = r[v];
    r[v] = 0;
    Q[j].set_term(r, c);
  }
  std::vector<MultiPoly> G(m + 1, MultiPoly(q.field(), vars));
  auto top = monic_sqrt(Q[d]);
  if (!top) return std::nullopt;
  G[m] = *top;
  MultiPoly twoGm =
      G[m].scale(FieldElement::from_int(q.field(), 2));
  for (int k = m - 1; k >= 0; --k) {
    MultiPoly rhs = Q[m + k];
    for (int a = k + 1; a < m; ++a) {
      int b = m + k - a;
      if (b <= k || b >= m || b < a) continue;
      MultiPoly prod = G[a] * G[b];
      rhs = rhs - (a == b ? prod : prod.scale(FieldElement::from_int(
                                       q.field(), 2)));
    }
    auto gk = rhs.divide_exact(twoGm);
    if (!gk) return std::nullopt;
    G[k] = *gk;
  }
  MultiPoly g(q.field(), vars);
  for (int k = 0; k <= m; ++k) {
    MultiPoly vk(q.field(), vars);
    Exponents e(vars.size(), 0);
    e[v] = k;
    vk.set_term(e, FieldElement::one(q.field()));
    g = g + G[k] * vk;
  }
  if (g * g != q) return std::nullopt;
  return g;
}

PolySqrtResult poly_sqrt(const MultiPoly& q) {
  PolySqrtResult res;
  if (q.is_zero()) {
    res.status = SqrtStatus::ok;
    res.root = q;
    res.monic_root = q;
    return res;
  }
  auto [le, lc] = q.leading_term();
  MultiPoly qhat = q.scale(lc.inv());
  auto ghat = monic_sqrt(qhat);
  if (!ghat) {
    res.status = SqrtStatus::not_a_square;
    return res;
  }
  res.monic_root = *ghat;
  res.radicand = lc;
  auto r = lc.sqrt();
  if (!r) {
    res.status = SqrtStatus::scalar_root_missing;
    return res;
  }
  res.status = SqrtStatus::ok;
  res.root = ghat->scale(*r);
  return res;
}

ProjPoint::ProjPoint(std::vector<FieldElement> coords)
    : coords_(std::move(coords)) {
  size_t first = coords_.size();
  for (size_t i = 0; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) {
      first = i;
      break;
    }
  if (first == coords_.size())
    throw FieldError("projective point has all coordinates zero");
  FieldElement inv = coords_[first].inv();
  for (auto& c : coords_) c = c * inv;
}

ProjPoint ProjPoint::parse(const std::vector<std::string>& texts,
                           const FieldDescriptor& f) {
  std::vector<FieldElement> cs;
  cs.reserve(texts.size());
  for (auto& t : texts) cs.push_back(fe_parse(t, f));
  return ProjPoint(std::move(cs));
}

bool ProjPoint::operator<(const ProjPoint& o) const {
  for (size_t i = 0; i < std::min(coords_.size(), o.coords_.size()); ++i) {
    std::string a = coords_[i].to_string(), b = o.coords_[i].to_string();
    if (a != b) return a < b;
  }
  return coords_.size() < o.coords_.size();
}

ProjPoint ProjPoint::embed(const FieldDescriptor& target) const {
  std::vector<FieldElement> cs;
  cs.reserve(coords_.size());
  for (auto& c : coords_) cs.push_back(c.embed(target));
  return ProjPoint(std::move(cs));
}

std::string ProjPoint::to_string() const {
  std::string out = "[";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += " : ";
    out += coords_[i].to_string();
  }
  return out + "]";
}

ProjTransform::ProjTransform(std::vector<std::vector<FieldElement>> m)
    : m_(std::move(m)) {
  for (auto& row : m_)
    if (row.size() != m_.size()) throw FieldError("matrix is not square");
}

ProjTransform ProjTransform::identity(const FieldDescriptor& f, size_t n) {
  std::vector<std::vector<FieldElement>> m(
      n, std::vector<FieldElement>(n, FieldElement::zero(f)));
  for (size_t i = 0; i < n; ++i) m[i][i] = FieldElement::one(f);
  return ProjTransform(std::move(m));
}

ProjTransform ProjTransform::parse(
    const std::vector<std::vector<std::string>>& m, const FieldDescriptor& f) {
  std::vector<std::vector<FieldElement>> rows;
  for (auto& r : m) {
    std::vector<FieldElement> row;
    for (auto& s : r) row.push_back(fe_parse(s, f));
    rows.push_back(std::move(row));
  }
  return ProjTransform(std::move(rows));
}

ProjTransform ProjTransform::operator*(const ProjTransform& o) const {
  size_t n = size();
  const FieldDescriptor& f = field();
  std::vector<std::vector<FieldElement>> m(
      n, std::vector<FieldElement>(n, FieldElement::zero(f)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        m[i][j] = m[i][j] + m_[i][k] * o.m_[k][j];
  return ProjTransform(std::move(m));
}

ProjTransform ProjTransform::scale(const FieldElement& c) const {
  auto m = m_;
  for (auto& row : m)
    for (auto& x : row) x = x * c;
  return ProjTransform(std::move(m));
}

ProjTransform ProjTransform::inverse() const {
  size_t n = size();
  const FieldDescriptor& f = field();
  auto a = m_;
  auto inv = identity(f, n).matrix();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw FieldError("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    FieldElement d = a[col][col].inv();
    for (size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * d;
      inv[col][j] = inv[col][j] * d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      FieldElement fctr = a[i][col];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] = a[i][j] - fctr * a[col][j];
        inv[i][j] = inv[i][j] - fctr * inv[col][j];
      }
    }
  }
  return ProjTransform(std::move(inv));
}

std::vector<FieldElement> ProjTransform::apply_vec(
    const std::vector<FieldElement>& v) const {
  size_t n = size();
  if (v.size() != n) throw FieldError("vector size mismatch");
  std::vector<FieldElement> r(n, FieldElement::zero(field()));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r[i] = r[i] + m_[i][j] * v[j];
  return r;
}

ProjPoint ProjTransform::apply(const ProjPoint& p) const {
  return ProjPoint(apply_vec(p.coords()));
}

FieldElement ProjTransform::det() const {
  size_t n = size();
  auto a = m_;
  FieldElement d = FieldElement::one(field());
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return FieldElement::zero(field());
    if (piv != col) {
      std::swap(a[piv], a[col]);
      d = -d;
    }
    d = d * a[col][col];
    FieldElement inv = a[col][col].inv();
    for (size_t i = col + 1; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      FieldElement fctr = a[i][col] * inv;
      for (size_t j = col; j < n; ++j) a[i][j] = a[i][j] - fctr * a[col][j];
    }
  }
  return d;
}

ProjTransform ProjTransform::embed(const FieldDescriptor& target) const {
  auto m = m_;
  for (auto& row : m)
    for (auto& x : row) x = x.embed(target);
  return ProjTransform(std::move(m));
}

ProjTransform ProjTransform::proj_normal() const {
  for (auto& row : m_)
    for (auto& x : row)
      if (!x.is_zero()) return scale(x.inv());
  throw FieldError("zero matrix");
}

bool ProjTransform::proj_equal(const ProjTransform& o) const {
  if (size() != o.size()) return false;
  return proj_normal().matrix() == o.proj_normal().matrix();
}

std::string ProjTransform::key() const {
  ProjTransform n = proj_normal();
  std::string out;
  for (auto& row : n.matrix()) {
    out += "[";
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ",";
      out += row[j].to_string();
    }
    out += "]";
  }
  return out;
}

JacobianData jacobian_at(const MultiPoly& F, const ProjPoint& p) {
  JacobianData out;
  size_t n = F.vars().size();
  std::vector<MultiPoly> grads;
  grads.reserve(n);
  for (size_t i = 0; i < n; ++i) grads.push_back(F.derivative(i));
  out.gradient_zero = true;
  for (size_t i = 0; i < n; ++i) {
    out.gradient.push_back(grads[i].eval(p));
    if (!out.gradient.back().is_zero()) out.gradient_zero = false;
  }
  Mat hess(n, std::vector<FieldElement>(n, FieldElement::zero(F.field())));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      FieldElement v = grads[i].derivative(j).eval(p);
      hess[i][j] = v;
      hess[j][i] = v;
    }
  out.hessian_rank = mat_rank(std::move(hess));
  return out;
}

int mat_rank(Mat m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    FieldElement inv = m[r][c].inv();
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      FieldElement f = m[i][c] * inv;
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++rank;
    ++r;
  }
  return rank;
}

std::vector<std::vector<FieldElement>> mat_kernel(Mat m) {
  if (m.empty()) return {};
  size_t rows = m.size(), cols = m[0].size();
  const FieldDescriptor& f = m[0][0].descriptor();
  std::vector<long> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    FieldElement inv = m[r][c].inv();
    for (size_t j = 0; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      FieldElement fac = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - fac * m[r][j];
    }
    pivot_col.push_back(long(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (long c : pivot_col) is_pivot[size_t(c)] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(cols, FieldElement::zero(f));
    v[free] = FieldElement::one(f);
    for (size_t k = 0; k < pivot_col.size(); ++k)
      v[size_t(pivot_col[k])] = -m[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

int rat_mat_rank(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++rank;
    ++r;
  }
  return rank;
}

}  // namespace kq
