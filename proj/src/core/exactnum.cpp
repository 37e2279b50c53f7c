#include "core/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace kq {

void up_trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int up_deg(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

UniPoly up_add(const UniPoly& a, const UniPoly& b) {
  UniPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  up_trim(r);
  return r;
}

UniPoly up_sub(const UniPoly& a, const UniPoly& b) {
  UniPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  up_trim(r);
  return r;
}

UniPoly up_mul(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  up_trim(r);
  return r;
}

UniPoly up_scale(const UniPoly& a, const Rat& c) {
  if (c == 0) return {};
  UniPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

void up_divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
  if (b.empty()) throw FieldError("polynomial division by zero");
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
  const Rat& lead = b.back();
  while (r.size() >= b.size()) {
    Rat c = r.back() / lead;
    size_t shift = r.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    up_trim(r);
    if (r.size() < b.size()) break;
    // up_trim guarantees progress: the leading term was cancelled
  }
  up_trim(q);
}

UniPoly up_gcd(UniPoly a, UniPoly b) {
  while (!b.empty()) {
    UniPoly q, r;
    up_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    Rat inv = Rat(1) / a.back();
    for (auto& c : a) c *= inv;
  }
  return a;
}

Rat up_eval(const UniPoly& p, const Rat& x) {
  Rat r(0);
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

UniPoly up_cyclotomic(unsigned n) {
  static std::map<unsigned, UniPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by the cyclotomic polynomials of the proper divisors
  UniPoly num(n + 1, Rat(0));
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    UniPoly q, r;
    up_divmod(num, up_cyclotomic(d), q, r);
    if (!r.empty()) throw FieldError("cyclotomic recursion failed");
    num = std::move(q);
  }
  cache[n] = num;
  return num;
}

std::optional<Rat> rat_sqrt(const Rat& q) {
  if (q == 0) return Rat(0);
  if (q < 0) return std::nullopt;
  Int n = q.get_num(), d = q.get_den();
  Int sn, sd;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rat(sn) / Rat(sd);
}

std::string FieldDescriptor::to_string() const {
  std::ostringstream os;
  if (cyclotomic_order == 1)
    os << "Q";
  else
    os << "Q(z" << cyclotomic_order << ")";
  if (transcendental) os << "(" << *transcendental << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement FieldElement::zero(const FieldDescriptor& d) {
  FieldElement e;
  e.desc_ = d;
  e.num_.assign(d.degree(), UniPoly{});
  e.den_ = UniPoly{Rat(1)};
  return e;
}

FieldElement FieldElement::from_rat(const FieldDescriptor& d, const Rat& q) {
  FieldElement e = zero(d);
  if (q != 0) e.num_[0] = UniPoly{q};
  return e;
}

FieldElement FieldElement::from_int(const FieldDescriptor& d, long v) {
  return from_rat(d, Rat(v));
}

FieldElement FieldElement::one(const FieldDescriptor& d) {
  return from_rat(d, Rat(1));
}

FieldElement FieldElement::zeta(const FieldDescriptor& d) {
  if (d.cyclotomic_order == 1) return one(d);
  FieldElement e = zero(d);
  if (d.degree() == 1) {
    // n = 2: zeta = -1
    e.num_[0] = UniPoly{Rat(-1)};
  } else {
    e.num_[1] = UniPoly{Rat(1)};
  }
  return e;
}

FieldElement FieldElement::variable(const FieldDescriptor& d) {
  if (!d.transcendental)
    throw FieldError("descriptor has no transcendental symbol");
  FieldElement e = zero(d);
  e.num_[0] = UniPoly{Rat(0), Rat(1)};
  return e;
}

FieldElement FieldElement::make(const FieldDescriptor& d,
                                std::vector<UniPoly> num, UniPoly den) {
  FieldElement e;
  e.desc_ = d;
  num.resize(d.degree());
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  up_trim(e.den_);
  for (auto& p : e.num_) up_trim(p);
  if (e.den_.empty()) throw FieldError("zero denominator");
  e.canonicalize();
  return e;
}

void FieldElement::canonicalize() {
  if (!desc_.transcendental) {
    // every polynomial must be constant; divide through by den
    Rat d = den_.empty() ? Rat(1) : den_[0];
    for (auto& p : num_) {
      if (p.size() > 1) throw FieldError("transcendental value in pure field");
      if (!p.empty()) {
        p[0] /= d;
        if (p[0] == 0) p.clear();
      }
    }
    den_ = UniPoly{Rat(1)};
    return;
  }
  // gcd of den with all numerator coefficient polynomials
  UniPoly g = den_;
  for (const auto& p : num_) {
    g = up_gcd(g, p);
    if (up_deg(g) == 0) break;
  }
  if (up_deg(g) > 0) {
    UniPoly q, r;
    up_divmod(den_, g, q, r);
    den_ = q;
    for (auto& p : num_) {
      up_divmod(p, g, q, r);
      p = q;
    }
  }
  // monic denominator
  Rat lead = den_.back();
  if (lead != 1) {
    Rat inv = Rat(1) / lead;
    for (auto& c : den_) c *= inv;
    for (auto& p : num_)
      for (auto& c : p) c *= inv;
  }
}

bool FieldElement::is_zero() const {
  for (const auto& p : num_)
    if (!p.empty()) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (num_.empty()) return false;
  if (num_[0].size() != 1 || num_[0][0] != 1) return false;
  for (size_t i = 1; i < num_.size(); ++i)
    if (!num_[i].empty()) return false;
  return up_deg(den_) == 0 && den_[0] == 1;
}

bool FieldElement::is_rational() const { return as_rational().has_value(); }

std::optional<Rat> FieldElement::as_rational() const {
  for (size_t i = 1; i < num_.size(); ++i)
    if (!num_[i].empty()) return std::nullopt;
  if (num_.empty()) return Rat(0);
  if (num_[0].size() > 1 || up_deg(den_) > 0) return std::nullopt;
  if (num_[0].empty()) return Rat(0);
  return num_[0][0] / den_[0];
}

static void check_same(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (a != b)
    throw FieldError("field descriptor mismatch: " + a.to_string() + " vs " +
                     b.to_string());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(desc_, o.desc_);
  FieldElement r;
  r.desc_ = desc_;
  r.num_.resize(desc_.degree());
  for (size_t i = 0; i < r.num_.size(); ++i)
    r.num_[i] = up_add(up_mul(num_[i], o.den_), up_mul(o.num_[i], den_));
  r.den_ = up_mul(den_, o.den_);
  r.canonicalize();
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  return *this + (-o);
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& p : r.num_)
    for (auto& c : p) c = -c;
  return r;
}

// Reduce a zeta-polynomial (UniPoly coefficients, any length) modulo Phi_n.
static void reduce_mod_phi(std::vector<UniPoly>& v, unsigned n) {
  UniPoly phi = up_cyclotomic(n);
  size_t deg = phi.size() - 1;  // = phi(n)
  for (size_t k = v.size(); k-- > deg;) {
    if (v[k].empty()) continue;
    UniPoly c = std::move(v[k]);
    v[k].clear();
    for (size_t i = 0; i < deg; ++i) {
      if (phi[i] == 0) continue;
      v[k - deg + i] = up_sub(v[k - deg + i], up_scale(c, phi[i]));
    }
  }
  v.resize(deg);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(desc_, o.desc_);
  size_t deg = desc_.degree();
  std::vector<UniPoly> prod(2 * deg, UniPoly{});
  for (size_t i = 0; i < deg; ++i) {
    if (num_[i].empty()) continue;
    for (size_t j = 0; j < deg; ++j) {
      if (o.num_[j].empty()) continue;
      prod[i + j] = up_add(prod[i + j], up_mul(num_[i], o.num_[j]));
    }
  }
  if (deg > 1) reduce_mod_phi(prod, desc_.cyclotomic_order);
  prod.resize(deg);
  FieldElement r;
  r.desc_ = desc_;
  r.num_ = std::move(prod);
  r.den_ = up_mul(den_, o.den_);
  r.canonicalize();
  return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return *this * o.inv();
}

bool FieldElement::operator==(const FieldElement& o) const {
  return desc_ == o.desc_ && num_ == o.num_ && den_ == o.den_;
}

// Rational functions in t over Q, used internally for inversion.
namespace {
struct RF {
  UniPoly n, d;  // d nonzero
  static RF zero() { return {UniPoly{}, UniPoly{Rat(1)}}; }
  static RF one() { return {UniPoly{Rat(1)}, UniPoly{Rat(1)}}; }
  bool is_zero() const { return n.empty(); }
  void reduce() {
    if (n.empty()) {
      d = UniPoly{Rat(1)};
      return;
    }
    UniPoly g = up_gcd(n, d);
    if (up_deg(g) > 0) {
      UniPoly q, r;
      up_divmod(n, g, q, r);
      n = q;
      up_divmod(d, g, q, r);
      d = q;
    }
    Rat lead = d.back();
    if (lead != 1) {
      Rat inv = Rat(1) / lead;
      for (auto& c : d) c *= inv;
      for (auto& c : n) c *= inv;
    }
  }
};

RF rf_add(const RF& a, const RF& b) {
  RF r{up_add(up_mul(a.n, b.d), up_mul(b.n, a.d)), up_mul(a.d, b.d)};
  r.reduce();
  return r;
}
RF rf_sub(const RF& a, const RF& b) {
  RF r{up_sub(up_mul(a.n, b.d), up_mul(b.n, a.d)), up_mul(a.d, b.d)};
  r.reduce();
  return r;
}
RF rf_mul(const RF& a, const RF& b) {
  RF r{up_mul(a.n, b.n), up_mul(a.d, b.d)};
  r.reduce();
  return r;
}
RF rf_div(const RF& a, const RF& b) {
  if (b.is_zero()) throw FieldError("division by zero");
  RF r{up_mul(a.n, b.d), up_mul(a.d, b.n)};
  r.reduce();
  return r;
}

using ZPoly = std::vector<RF>;  // polynomial in zeta with RF coefficients

void zp_trim(ZPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), RF::zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = rf_sub(r[i], b[i]);
  zp_trim(r);
  return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, RF::zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = rf_add(r[i + j], rf_mul(a[i], b[j]));
  zp_trim(r);
  return r;
}

void zp_divmod(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r) {
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, RF::zero());
  while (r.size() >= b.size()) {
    RF c = rf_div(r.back(), b.back());
    size_t shift = r.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i)
      r[shift + i] = rf_sub(r[shift + i], rf_mul(c, b[i]));
    zp_trim(r);
    if (r.size() < b.size()) break;
  }
  zp_trim(q);
}
}  // namespace

FieldElement FieldElement::inv() const {
  if (is_zero()) throw FieldError("division by zero");
  size_t deg = desc_.degree();
  if (deg == 1) {
    // plain rational function inversion
    FieldElement r;
    r.desc_ = desc_;
    r.num_.assign(1, den_);
    r.den_ = num_[0];
    r.canonicalize();
    return r;
  }
  // extended Euclid in Q(t)[zeta] against Phi_n
  UniPoly phi_q = up_cyclotomic(desc_.cyclotomic_order);
  ZPoly phi(phi_q.size());
  for (size_t i = 0; i < phi_q.size(); ++i)
    phi[i] = RF{phi_q[i] == 0 ? UniPoly{} : UniPoly{phi_q[i]},
                UniPoly{Rat(1)}};
  ZPoly a(deg);
  for (size_t i = 0; i < deg; ++i)
    a[i] = RF{num_[i], UniPoly{Rat(1)}};
  zp_trim(a);

  ZPoly r0 = phi, r1 = a;
  ZPoly s0 = {RF::zero()}, s1 = {RF::one()};
  zp_trim(s0);
  while (r1.size() > 1) {
    ZPoly q, r;
    zp_divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    ZPoly s2 = zp_sub(s0, zp_mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw FieldError("element not invertible");
  // a * s1 == r1[0] (a nonzero RF); inverse of num part is s1 / r1[0]
  RF unit = r1[0];
  std::vector<UniPoly> out(deg, UniPoly{});
  UniPoly common{Rat(1)};
  std::vector<RF> coeffs(deg, RF::zero());
  for (size_t i = 0; i < s1.size() && i < deg; ++i)
    coeffs[i] = rf_div(s1[i], unit);
  for (const auto& c : coeffs) common = up_mul(common, c.d);
  for (size_t i = 0; i < deg; ++i) {
    UniPoly q, r;
    up_divmod(common, coeffs[i].d, q, r);
    out[i] = up_mul(coeffs[i].n, q);
  }
  // multiply by the original denominator (1/x = den * (num-part)^-1)
  for (auto& p : out) p = up_mul(p, den_);
  FieldElement res;
  res.desc_ = desc_;
  res.num_ = std::move(out);
  res.den_ = std::move(common);
  res.canonicalize();
  return res;
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  FieldElement r = one(desc_), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Printing

static std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

static void print_term(std::ostringstream& os, bool& first, const Rat& c,
                       unsigned zp, unsigned tp, unsigned n,
                       const std::optional<std::string>& var) {
  if (c == 0) return;
  Rat a = c;
  bool neg = a < 0;
  if (neg) a = -a;
  if (first) {
    if (neg) os << "-";
    first = false;
  } else {
    os << (neg ? " - " : " + ");
  }
  bool coeff_one = (a == 1) && (zp > 0 || tp > 0);
  if (!coeff_one) os << rat_str(a);
  bool need_star = !coeff_one;
  if (zp > 0) {
    if (need_star) os << "*";
    os << "z" << n;
    if (zp > 1) os << "^" << zp;
    need_star = true;
  }
  if (tp > 0) {
    if (need_star) os << "*";
    os << *var;
    if (tp > 1) os << "^" << tp;
  }
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < num_.size(); ++i)
    for (size_t j = 0; j < num_[i].size(); ++j)
      print_term(os, first, num_[i][j], static_cast<unsigned>(i),
                 static_cast<unsigned>(j), desc_.cyclotomic_order,
                 desc_.transcendental);
  if (first) return "0";
  std::string n = os.str();
  if (up_deg(den_) == 0) return n;
  std::ostringstream ds;
  bool dfirst = true;
  for (size_t j = 0; j < den_.size(); ++j)
    print_term(ds, dfirst, den_[j], 0, static_cast<unsigned>(j),
               desc_.cyclotomic_order, desc_.transcendental);
  return "(" + n + ")/(" + ds.str() + ")";
}

// ---------------------------------------------------------------------------
// Square roots

namespace {

// Tonelli-Shanks square root modulo an odd prime; empty if none.
std::optional<Int> mod_sqrt(const Int& a0, const Int& p) {
  Int a = a0 % p;
  if (a < 0) a += p;
  if (a == 0) return Int(0);
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
  Int pm1 = p - 1;
  Int q = pm1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Int m(s), c, t, r, e2;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  Int qp1 = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), qp1.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    Int tt = t;
    long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

Int mod_inv(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw FieldError("not invertible in modular arithmetic");
  return r;
}

// Rational reconstruction of c mod m with |num|,|den| <= sqrt(m/2).
std::optional<Rat> rat_reconstruct(Int c, const Int& m) {
  c %= m;
  if (c < 0) c += m;
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
  Int r0 = m, r1 = c, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  Int den = t1 < 0 ? Int(-t1) : t1;
  Int num = t1 < 0 ? Int(-r1) : r1;
  if (den > bound) return std::nullopt;
  Int g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;
  return Rat(num) / Rat(den);
}

}  // namespace

// Square root of a transcendental-free element (coordinates as rationals).
static std::optional<std::vector<Rat>> cyclo_sqrt(
    const std::vector<Rat>& coords, unsigned n) {
  size_t deg = coords.size();
  if (deg == 1) {
    auto r = rat_sqrt(coords[0]);
    if (!r) return std::nullopt;
    return std::vector<Rat>{*r};
  }
  bool all_zero = true;
  for (const auto& c : coords)
    if (c != 0) all_zero = false;
  if (all_zero) return std::vector<Rat>(deg, Rat(0));

  // exact verification helper: square the candidate modulo Phi_n
  UniPoly phi = up_cyclotomic(n);
  auto square_is = [&](const std::vector<Rat>& r) {
    std::vector<Rat> prod(2 * deg, Rat(0));
    for (size_t i = 0; i < deg; ++i)
      for (size_t j = 0; j < deg; ++j) prod[i + j] += r[i] * r[j];
    for (size_t k = prod.size(); k-- > deg;) {
      if (prod[k] == 0) continue;
      Rat c = prod[k];
      prod[k] = 0;
      for (size_t i = 0; i < deg; ++i)
        if (phi[i] != 0) prod[k - deg + i] -= c * phi[i];
    }
    for (size_t i = 0; i < deg; ++i)
      if (prod[i] != coords[i]) return false;
    return true;
  };

  // split primes p = 1 (mod n); Phi_n has deg distinct roots mod p
  Int denom_lcm = 1;
  for (const auto& c : coords)
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());

  unsigned primes_tried = 0;
  for (Int p = 2 * n + 1; primes_tried < 3; p += n) {
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) continue;
    if (mpz_divisible_p(denom_lcm.get_mpz_t(), p.get_mpz_t())) continue;
    ++primes_tried;
    // primitive n-th root of unity mod p
    Int w = 0;
    for (Int g = 2; w == 0; ++g) {
      Int e = (p - 1) / n;
      Int cand;
      mpz_powm(cand.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
      if (cand == 1) continue;
      bool primitive = true;
      for (unsigned q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool qprime = true;
        for (unsigned f = 2; f * f <= q; ++f)
          if (q % f == 0) qprime = false;
        if (!qprime) continue;
        Int chk;
        Int ee(n / q);
        mpz_powm(chk.get_mpz_t(), cand.get_mpz_t(), ee.get_mpz_t(),
                 p.get_mpz_t());
        if (chk == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) w = cand;
    }
    // roots of Phi_n: w^k for gcd(k, n) = 1
    std::vector<Int> roots;
    for (unsigned k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      Int r;
      Int kk(k);
      mpz_powm(r.get_mpz_t(), w.get_mpz_t(), kk.get_mpz_t(), p.get_mpz_t());
      roots.push_back(r);
    }
    // embeddings of the element mod p
    std::vector<Int> emb(deg);
    bool bad_prime = false;
    for (size_t j = 0; j < deg; ++j) {
      Int v = 0, pw = 1;
      for (size_t i = 0; i < deg; ++i) {
        Int ci = coords[i].get_num() % p * mod_inv(coords[i].get_den() % p + p, p) % p;
        v = (v + ci * pw) % p;
        pw = pw * roots[j] % p;
      }
      if (v < 0) v += p;
      emb[j] = v;
      if (v == 0) bad_prime = true;  // ramified-looking: try another prime
    }
    if (bad_prime) continue;
    // componentwise square roots mod p; a failure certifies non-squareness
    std::vector<Int> rt(deg);
    bool ok = true;
    for (size_t j = 0; j < deg; ++j) {
      auto r = mod_sqrt(emb[j], p);
      if (!r) {
        ok = false;
        break;
      }
      rt[j] = *r;
    }
    if (!ok) return std::nullopt;
    // Hensel-lift roots and the Vandermonde inverse to p^(2^lifts)
    for (unsigned lifts = 4; lifts <= 7; ++lifts) {
      Int pk = p;
      std::vector<Int> r = rt, rts = roots;
      std::vector<Int> embk(deg);
      for (unsigned l = 0; l < lifts; ++l) {
        Int pk2 = pk * pk;
        for (size_t j = 0; j < deg; ++j) {
          // lift the root of Phi_n by Newton on Phi_n
          Int fv = 0, fd = 0, pw = 1;
          for (size_t i = 0; i < phi.size(); ++i) {
            Int ci = phi[i].get_num();
            fv = (fv + ci % pk2 * pw) % pk2;
            if (i + 1 < phi.size()) {
              Int cd = phi[i + 1].get_num() * Int(i + 1);
              fd = (fd + cd % pk2 * pw) % pk2;
            }
            pw = pw * rts[j] % pk2;
          }
          rts[j] = (rts[j] - fv * mod_inv(fd, pk2)) % pk2;
          if (rts[j] < 0) rts[j] += pk2;
        }
        for (size_t j = 0; j < deg; ++j) {
          Int v = 0, pw = 1;
          for (size_t i = 0; i < deg; ++i) {
            Int ci = coords[i].get_num() % pk2 *
                     mod_inv(coords[i].get_den() % pk2 + pk2, pk2) % pk2;
            v = (v + ci * pw) % pk2;
            pw = pw * rts[j] % pk2;
          }
          if (v < 0) v += pk2;
          embk[j] = v;
          // Newton lift of the square root
          Int inv2r = mod_inv(2 * r[j] % pk2, pk2);
          r[j] = (r[j] + (v - r[j] * r[j] % pk2) % pk2 * inv2r) % pk2;
          if (r[j] < 0) r[j] += pk2;
        }
        pk = pk2;
      }
      // Vandermonde inverse mod pk via Gaussian elimination
      std::vector<std::vector<Int>> M(deg, std::vector<Int>(2 * deg, 0));
      for (size_t j = 0; j < deg; ++j) {
        Int pw = 1;
        for (size_t i = 0; i < deg; ++i) {
          M[j][i] = pw;
          pw = pw * rts[j] % pk;
        }
        M[j][deg + j] = 1;
      }
      bool singular = false;
      for (size_t col = 0; col < deg && !singular; ++col) {
        size_t piv = col;
        while (piv < deg) {
          Int g;
          mpz_gcd(g.get_mpz_t(), M[piv][col].get_mpz_t(), pk.get_mpz_t());
          if (M[piv][col] != 0 && g == 1) break;
          ++piv;
        }
        if (piv == deg) {
          singular = true;
          break;
        }
        std::swap(M[col], M[piv]);
        Int inv = mod_inv(M[col][col], pk);
        for (size_t c2 = 0; c2 < 2 * deg; ++c2)
          M[col][c2] = M[col][c2] * inv % pk;
        for (size_t r2 = 0; r2 < deg; ++r2) {
          if (r2 == col || M[r2][col] == 0) continue;
          Int f = M[r2][col];
          for (size_t c2 = 0; c2 < 2 * deg; ++c2) {
            M[r2][c2] = (M[r2][c2] - f * M[col][c2]) % pk;
            if (M[r2][c2] < 0) M[r2][c2] += pk;
          }
        }
      }
      if (singular) break;  // try next prime
      // try all sign patterns with the first component fixed
      size_t patterns = size_t(1) << (deg - 1);
      for (size_t mask = 0; mask < patterns; ++mask) {
        std::vector<Rat> cand(deg);
        bool good = true;
        for (size_t i = 0; i < deg && good; ++i) {
          Int acc = 0;
          for (size_t j = 0; j < deg; ++j) {
            Int rv = (j > 0 && (mask >> (j - 1)) & 1) ? Int(pk - r[j]) : r[j];
            acc = (acc + M[i][deg + j] * rv) % pk;
          }
          auto q = rat_reconstruct(acc, pk);
          if (!q)
            good = false;
          else
            cand[i] = *q;
        }
        if (good && square_is(cand)) return cand;
      }
    }
  }
  return std::nullopt;
}

// Canonical sign for square roots: the first nonzero coefficient in the
// canonical term order must be positive.
static FieldElement normalize_sqrt_sign(const FieldElement& r) {
  int maxdeg = -1;
  for (const auto& p : r.num()) maxdeg = std::max(maxdeg, up_deg(p));
  for (int d = maxdeg; d >= 0; --d)
    for (const auto& p : r.num()) {
      if (d > up_deg(p) || p[d] == 0) continue;
      return p[d] > 0 ? r : -r;
    }
  return r;
}

std::optional<FieldElement> FieldElement::sqrt() const {
  if (is_zero()) return *this;
  size_t deg = desc_.degree();
  if (!desc_.transcendental || up_deg(den_) == 0) {
    bool constant = true;
    for (const auto& p : num_)
      if (p.size() > 1) constant = false;
    if (constant) {
      std::vector<Rat> coords(deg, Rat(0));
      Rat d = den_.empty() ? Rat(1) : den_[0];
      for (size_t i = 0; i < deg; ++i)
        if (!num_[i].empty()) coords[i] = num_[i][0] / d;
      auto r = cyclo_sqrt(coords, desc_.cyclotomic_order);
      if (!r) return std::nullopt;
      FieldElement root = zero(desc_);
      for (size_t i = 0; i < deg; ++i)
        if ((*r)[i] != 0) root.num_[i] = UniPoly{(*r)[i]};
      return normalize_sqrt_sign(root);
    }
  }
  // with a transcendental: r = s / den where s^2 = num * den as a
  // polynomial in t over the cyclotomic field
  std::vector<UniPoly> target(deg);
  for (size_t i = 0; i < deg; ++i) target[i] = up_mul(num_[i], den_);
  int tdeg = -1;
  for (const auto& p : target) tdeg = std::max(tdeg, up_deg(p));
  if (tdeg % 2 != 0) return std::nullopt;
  int half = tdeg / 2;
  // leading coefficient (in t) as a cyclotomic element
  auto t_coef = [&](const std::vector<UniPoly>& v, int k) {
    std::vector<Rat> c(deg, Rat(0));
    for (size_t i = 0; i < deg; ++i)
      if (k <= up_deg(v[i])) c[i] = v[i][k];
    return c;
  };
  auto lead = cyclo_sqrt(t_coef(target, tdeg), desc_.cyclotomic_order);
  if (!lead) return std::nullopt;
  // coefficient matching: s_k from the t^(tdeg - (half - k)) coefficient
  FieldDescriptor base{desc_.cyclotomic_order, std::nullopt};
  auto to_fe = [&](const std::vector<Rat>& c) {
    std::vector<UniPoly> n(deg);
    for (size_t i = 0; i < deg; ++i)
      if (c[i] != 0) n[i] = UniPoly{c[i]};
    return FieldElement::make(base, n, UniPoly{Rat(1)});
  };
  std::vector<FieldElement> s(half + 1, FieldElement::zero(base));
  s[half] = to_fe(*lead);
  FieldElement twolead = s[half] + s[half];
  for (int k = half - 1; k >= 0; --k) {
    // target coefficient at degree half + k minus known convolution terms
    FieldElement acc = to_fe(t_coef(target, half + k));
    for (int a = k + 1; a <= half; ++a) {
      int b = half + k - a;
      if (b <= k || b > half || b == a) continue;
      if (a < b) continue;  // count each unordered pair once
      acc = acc - (s[a] * s[b] + s[a] * s[b]);
    }
    int mid = half + k;
    if (mid % 2 == 0 && mid / 2 > k && mid / 2 <= half)
      acc = acc - s[mid / 2] * s[mid / 2];
    s[k] = acc / twolead;
  }
  // assemble s as a FieldElement of the full descriptor and verify
  FieldElement sfull = zero(desc_);
  for (int k = 0; k <= half; ++k) {
    FieldElement term = zero(desc_);
    for (size_t i = 0; i < deg; ++i) {
      const UniPoly& c = s[k].num()[i];
      if (c.empty()) continue;
      UniPoly mono(static_cast<size_t>(k) + 1, Rat(0));
      mono[k] = c[0];
      term.num_[i] = mono;
    }
    term.canonicalize();
    sfull = sfull + term;
  }
  FieldElement denom = zero(desc_);
  denom.num_[0] = den_;
  denom.canonicalize();
  FieldElement root = sfull / denom;
  if (!(root * root == *this)) return std::nullopt;
  return normalize_sqrt_sign(root);
}

FieldElement FieldElement::specialize(const FieldElement& value) const {
  if (!desc_.transcendental)
    throw FieldError("specialize: no transcendental to substitute");
  FieldDescriptor base{desc_.cyclotomic_order, std::nullopt};
  check_same(base, value.descriptor());
  auto eval = [&](const UniPoly& p) {
    FieldElement r = FieldElement::zero(base);
    for (size_t i = p.size(); i-- > 0;)
      r = r * value + FieldElement::from_rat(base, p[i]);
    return r;
  };
  FieldElement d = eval(den_);
  if (d.is_zero())
    throw FieldError("specialize: denominator vanishes at the given value");
  FieldElement zeta_pow = FieldElement::one(base);
  FieldElement z = FieldElement::zeta(base);
  FieldElement acc = FieldElement::zero(base);
  for (size_t i = 0; i < num_.size(); ++i) {
    if (!num_[i].empty()) acc = acc + eval(num_[i]) * zeta_pow;
    zeta_pow = zeta_pow * z;
  }
  return acc / d;
}

FieldElement FieldElement::embed(const FieldDescriptor& target) const {
  unsigned n = desc_.cyclotomic_order, m = target.cyclotomic_order;
  if (m % n != 0)
    throw FieldError("embed: target cyclotomic order must be a multiple");
  if (desc_.transcendental) {
    if (target.transcendental != desc_.transcendental)
      throw FieldError("embed: transcendental mismatch");
  }
  FieldElement z = FieldElement::zeta(target).pow(m / n);
  FieldElement acc = FieldElement::zero(target);
  FieldElement zp = FieldElement::one(target);
  FieldElement den_fe = FieldElement::zero(target);
  // numerator
  for (size_t i = 0; i < num_.size(); ++i) {
    if (!num_[i].empty()) {
      FieldElement c = FieldElement::zero(target);
      if (target.transcendental) {
        std::vector<UniPoly> nn(target.degree());
        nn[0] = num_[i];
        c = FieldElement::make(target, nn, UniPoly{Rat(1)});
      } else {
        c = FieldElement::from_rat(target, num_[i][0]);
      }
      acc = acc + c * zp;
    }
    zp = zp * z;
  }
  if (target.transcendental) {
    std::vector<UniPoly> dd(target.degree());
    dd[0] = den_;
    den_fe = FieldElement::make(target, dd, UniPoly{Rat(1)});
  } else {
    den_fe = FieldElement::from_rat(target, den_[0]);
  }
  return acc / den_fe;
}

// ---------------------------------------------------------------------------
// Parser

namespace {
struct Parser {
  const std::string& s;
  size_t pos = 0;
  const FieldDescriptor& desc;

  Parser(const std::string& text, const FieldDescriptor& d)
      : s(text), desc(d) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  FieldElement expr() {
    FieldElement v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  FieldElement term() {
    FieldElement v = factor();
    for (;;) {
      if (eat('*'))
        v = v * factor();
      else if (eat('/')) {
        FieldElement d = factor();
        if (d.is_zero()) throw ParseError("division by zero", pos);
        v = v / d;
      } else
        return v;
    }
  }

  FieldElement factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    FieldElement v = atom();
    skip();
    if (eat('^')) {
      skip();
      size_t start = pos;
      unsigned long e = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        e = e * 10 + (s[pos++] - '0');
      if (pos == start) throw ParseError("expected integer exponent", pos);
      v = v.pow(static_cast<long>(e));
    }
    return v;
  }

  FieldElement atom() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      FieldElement v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      return FieldElement::from_rat(
          desc, Rat(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) ||
              s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "i") {
        if (desc.cyclotomic_order % 4 != 0)
          throw ParseError("'i' requires cyclotomic order divisible by 4",
                           start);
        unsigned n = desc.cyclotomic_order;
        return FieldElement::zeta(desc).pow(n / 4);
      }
      if (name.size() > 1 && name[0] == 'z' &&
          std::isdigit(static_cast<unsigned char>(name[1]))) {
        unsigned m = 0;
        bool numeric = true;
        for (size_t i = 1; i < name.size(); ++i) {
          if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
            numeric = false;
            break;
          }
          m = m * 10 + (name[i] - '0');
        }
        if (numeric) {
          if (m == 0 || desc.cyclotomic_order % m != 0)
            throw ParseError("root of unity z" + std::to_string(m) +
                                 " not available in " + desc.to_string(),
                             start);
          return FieldElement::zeta(desc).pow(desc.cyclotomic_order / m);
        }
      }
      if (desc.transcendental && name == *desc.transcendental)
        return FieldElement::variable(desc);
      throw ParseError("unknown symbol '" + name + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};
}  // namespace

FieldElement fe_parse(const std::string& text, const FieldDescriptor& d) {
  Parser p(text, d);
  FieldElement v = p.expr();
  p.skip();
  if (p.pos != text.size())
    throw ParseError("trailing input", p.pos);
  return v;
}

}  // namespace kq
