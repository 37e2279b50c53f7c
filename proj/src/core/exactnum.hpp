#ifndef KQ_EXACTNUM_HPP
#define KQ_EXACTNUM_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kq {

using Int = mpz_class;
using Rat = mpq_class;

// Univariate polynomial over Q, coefficients in ascending degree order.
// Invariant: no trailing zero coefficients; the zero polynomial is empty.
using UniPoly = std::vector<Rat>;

void up_trim(UniPoly& p);
int up_deg(const UniPoly& p);  // -1 for zero
UniPoly up_add(const UniPoly& a, const UniPoly& b);
UniPoly up_sub(const UniPoly& a, const UniPoly& b);
UniPoly up_mul(const UniPoly& a, const UniPoly& b);
UniPoly up_scale(const UniPoly& a, const Rat& c);
// Division with remainder; divisor must be nonzero.
void up_divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
UniPoly up_gcd(UniPoly a, UniPoly b);  // monic gcd, 0 for (0,0)
Rat up_eval(const UniPoly& p, const Rat& x);
UniPoly up_cyclotomic(unsigned n);  // n-th cyclotomic polynomial
unsigned euler_phi(unsigned n);

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

struct FieldError : std::runtime_error {
  explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

// Ground field descriptor: Q(zeta_n), optionally extended by one
// transcendental variable. n = 1 means plain Q.
struct FieldDescriptor {
  unsigned cyclotomic_order = 1;
  std::optional<std::string> transcendental;

  bool operator==(const FieldDescriptor& o) const {
    return cyclotomic_order == o.cyclotomic_order &&
           transcendental == o.transcendental;
  }
  bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }
  unsigned degree() const { return euler_phi(cyclotomic_order); }
  std::string to_string() const;
};

// Element of Q(zeta_n)(t), stored as num/den with
//   num = sum_i num[i](t) * zeta^i   (i < phi(n)),
//   den a monic polynomial in t coprime to the content of num.
// Without a transcendental every polynomial is constant and den = 1.
class FieldElement {
 public:
  FieldElement() = default;
  static FieldElement zero(const FieldDescriptor& d);
  static FieldElement one(const FieldDescriptor& d);
  static FieldElement from_rat(const FieldDescriptor& d, const Rat& q);
  static FieldElement from_int(const FieldDescriptor& d, long v);
  static FieldElement zeta(const FieldDescriptor& d);  // primitive n-th root
  static FieldElement variable(const FieldDescriptor& d);
  // num[i][j]: coefficient of zeta^i t^j.
  static FieldElement make(const FieldDescriptor& d,
                           std::vector<UniPoly> num, UniPoly den);

  const FieldDescriptor& descriptor() const { return desc_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;        // lies in Q
  std::optional<Rat> as_rational() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement inv() const;
  FieldElement pow(long e) const;

  // Square root in the same field, if one exists; canonical sign
  // (lexicographically smaller print among the two roots).
  std::optional<FieldElement> sqrt() const;

  // Substitute the transcendental by a cyclotomic value; the result lives
  // in the transcendental-free descriptor.
  FieldElement specialize(const FieldElement& value) const;

  // Re-express in a larger field: target cyclotomic order must be a
  // multiple of the current one (zeta_m = zeta_n^{n/m}); the
  // transcendental, if any, must carry over or be dropped only when unused.
  FieldElement embed(const FieldDescriptor& target) const;

  std::string to_string() const;

  const std::vector<UniPoly>& num() const { return num_; }
  const UniPoly& den() const { return den_; }

 private:
  FieldDescriptor desc_;
  std::vector<UniPoly> num_;
  UniPoly den_{Rat(1)};
  void canonicalize();
};

// Expression grammar: integers, `i` (when 4 | n), `z<m>` for zeta_m with
// m | n, the transcendental symbol, `+ - * / ^`, parentheses.
FieldElement fe_parse(const std::string& text, const FieldDescriptor& d);

// Square root of a rational number, if it exists.
std::optional<Rat> rat_sqrt(const Rat& q);

}  // namespace kq

#endif
