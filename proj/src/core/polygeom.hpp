#ifndef KQ_POLYGEOM_HPP
#define KQ_POLYGEOM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/exactnum.hpp"

namespace kq {

struct VarSpec {
  std::string name;
  int weight = 1;
  bool operator==(const VarSpec& o) const {
    return name == o.name && weight == o.weight;
  }
};

using Exponents = std::vector<int>;

// Graded-lexicographic monomial order (weighted degree first, then lex with
// the earlier variable more significant). Used for all canonical choices.
struct GradedLexLess {
  std::vector<int> weights;
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class ProjPoint;
class ProjTransform;

class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(FieldDescriptor field, std::vector<VarSpec> vars);

  static MultiPoly parse(const std::string& text, const FieldDescriptor& f,
                         const std::vector<VarSpec>& vars);
  static MultiPoly constant(const FieldElement& c,
                            const std::vector<VarSpec>& vars);
  static MultiPoly var(const FieldDescriptor& f,
                       const std::vector<VarSpec>& vars, size_t index);

  const FieldDescriptor& field() const { return field_; }
  const std::vector<VarSpec>& vars() const { return vars_; }
  const std::map<Exponents, FieldElement>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;       // weighted; -1 for zero
  bool is_homogeneous() const;
  int degree_in(size_t var) const;

  void set_term(const Exponents& e, const FieldElement& c);
  FieldElement coeff(const Exponents& e) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scale(const FieldElement& c) const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  FieldElement eval(const std::vector<FieldElement>& values) const;
  FieldElement eval(const ProjPoint& p) const;
  MultiPoly derivative(size_t var) const;

  // Substitute one variable by a polynomial in the remaining variables; the
  // result drops that variable.
  MultiPoly substitute_out(size_t var, const MultiPoly& replacement) const;
  // Substitute every variable by the given polynomials (same ambient vars).
  MultiPoly substitute_all(const std::vector<MultiPoly>& images) const;

  // Leading term in graded-lex order.
  std::pair<Exponents, FieldElement> leading_term() const;

  // Exact division; empty if the divisor does not divide.
  std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

  // Proportionality: returns c with *this == c * o, if it exists (o != 0).
  std::optional<FieldElement> proportionality(const MultiPoly& o) const;

  MultiPoly map_coeffs(const FieldDescriptor& target) const;  // embed field
  MultiPoly specialize_coeffs(const FieldElement& value) const;

  std::string to_string() const;

 private:
  FieldDescriptor field_;
  std::vector<VarSpec> vars_;
  std::map<Exponents, FieldElement> terms_;  // plain lex map; order at print
  void prune();
};

// F(g x): right action of a projective transformation on polynomials.
MultiPoly poly_apply_transform(const MultiPoly& F, const ProjTransform& g);

struct EliminationRecord {
  size_t var_index;           // eliminated variable (index in original vars)
  std::string var_name;
  MultiPoly substitution;     // expression for the variable, in remaining vars
  std::vector<VarSpec> original_vars;
};

// Restriction of F to the plane {h = 0}: the variable with lexicographically
// first name among those whose h-coefficient has maximal height is solved
// for and eliminated.
std::pair<MultiPoly, EliminationRecord> restrict_to_plane(const MultiPoly& F,
                                                          const MultiPoly& h);

// Re-express a polynomial in the restricted variables in the ambient ones.
MultiPoly lift_from_plane(const MultiPoly& q, const EliminationRecord& rec);

enum class SqrtStatus { ok, scalar_root_missing, not_a_square };

struct PolySqrtResult {
  SqrtStatus status = SqrtStatus::not_a_square;
  std::optional<MultiPoly> root;       // when status == ok
  std::optional<MultiPoly> monic_root; // leading-coefficient-1 root over the
                                       // base field, when one exists
  std::optional<FieldElement> radicand;  // missing scalar square
};

PolySqrtResult poly_sqrt(const MultiPoly& q);

class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(std::vector<FieldElement> coords);
  static ProjPoint parse(const std::vector<std::string>& texts,
                         const FieldDescriptor& f);

  const std::vector<FieldElement>& coords() const { return coords_; }
  size_t dim() const { return coords_.size(); }
  bool operator==(const ProjPoint& o) const { return coords_ == o.coords_; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  bool operator<(const ProjPoint& o) const;  // canonical print order
  ProjPoint embed(const FieldDescriptor& target) const;
  std::string to_string() const;

 private:
  std::vector<FieldElement> coords_;  // first nonzero coordinate is 1
};

class ProjTransform {
 public:
  ProjTransform() = default;
  explicit ProjTransform(std::vector<std::vector<FieldElement>> m);
  static ProjTransform identity(const FieldDescriptor& f, size_t n);
  static ProjTransform parse(const std::vector<std::vector<std::string>>& m,
                             const FieldDescriptor& f);

  size_t size() const { return m_.size(); }
  const std::vector<std::vector<FieldElement>>& matrix() const { return m_; }
  const FieldDescriptor& field() const { return m_[0][0].descriptor(); }

  ProjTransform operator*(const ProjTransform& o) const;
  ProjTransform inverse() const;
  ProjTransform scale(const FieldElement& c) const;
  ProjPoint apply(const ProjPoint& p) const;
  std::vector<FieldElement> apply_vec(
      const std::vector<FieldElement>& v) const;
  FieldElement det() const;
  ProjTransform embed(const FieldDescriptor& target) const;

  // Projective equality: equal up to a global nonzero scalar.
  bool proj_equal(const ProjTransform& o) const;
  // Canonical representative: first nonzero entry (row-major) scaled to 1.
  ProjTransform proj_normal() const;
  std::string key() const;  // canonical print of the normal form

 private:
  std::vector<std::vector<FieldElement>> m_;
};

// Gradient and Hessian rank of F at p (canonical scaling chart).
struct JacobianData {
  std::vector<FieldElement> gradient;
  int hessian_rank = 0;
  bool gradient_zero = false;
};
JacobianData jacobian_at(const MultiPoly& F, const ProjPoint& p);

// Dense linear algebra over the field.
using Mat = std::vector<std::vector<FieldElement>>;
int mat_rank(Mat m);
std::vector<std::vector<FieldElement>> mat_kernel(Mat m);  // basis rows
int rat_mat_rank(std::vector<std::vector<Rat>> m);

}  // namespace kq

#endif
