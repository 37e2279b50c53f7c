#ifndef KQ_DIVLAT_HPP
#define KQ_DIVLAT_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/groups.hpp"
#include "core/kummer.hpp"

namespace kq {

struct ExtensionRequired : FieldError {
  FieldElement missing_root;
  explicit ExtensionRequired(FieldElement r)
      : FieldError("square root of " + r.to_string() +
                   " is missing from the field"),
        missing_root(std::move(r)) {}
};

// One of the two components of the pullback of a trope to w^2 = F, cut by
// w = eps * g with g = sqrt(delta) * gpoly. delta is a common square-class
// representative for all sheets of the surface (1 when the roots exist in
// the field), so all sign comparisons stay in the base field.
struct PlaneSheet {
  size_t trope = 0;  // index into the surface's trope list
  int eps = +1;
  MultiPoly h;
  MultiPoly gpoly;       // 4-variable quadric; g = sqrt(delta) * gpoly
  FieldElement delta;
  std::string label() const;
};

// Emits the 32 sheets, two per trope, with a deterministic sign convention:
// gpoly is the fe_sqrt-normalized root for the "+" sheet. When a scalar
// root is missing and allow_radical is set, all radicands must lie in one
// square class; its representative becomes delta.
std::vector<PlaneSheet> split_tropes(const KummerSurface& S,
                                     bool allow_radical = false);

int sheet_pair(const PlaneSheet& s1, const PlaneSheet& s2,
               const KummerSurface& S);

struct GramMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> entries;
};

GramMatrix gram(const std::vector<PlaneSheet>& sheets, const KummerSurface& S);

int gram_rank(const GramMatrix& M);

// Flip set aligning our sign convention with a reference 16x16 matrix:
// flipping trope i replaces every off-diagonal entry of row/column i by
// 1 - entry. Returns the tropes to flip (without the global flip), or
// empty if no alignment exists.
std::optional<std::vector<size_t>> align_gram(
    const GramMatrix& ours, const std::vector<std::vector<int>>& reference);

// Automorphism (x, w) -> (g x, s w) of P(1,1,1,1,2); normalized so that the
// first nonzero entry of g is 1.
struct LiftedElement {
  ProjTransform g;
  FieldElement s;
};

struct LiftedGroup {
  std::vector<LiftedElement> generators;
  std::vector<LiftedElement> elements;
  size_t order() const { return elements.size(); }
};

// Closes the lifts of the given generators acting on w^2 = F. Each
// generator's w-scale solves s^2 = c with F(g x) = c F(x); the canonical
// root is multiplied by the matching sign (+1 default). Generators of odd
// projective order get the sign fixed automatically so the lift has the
// same order.
LiftedGroup lift_group(const std::vector<ProjTransform>& generators,
                       const MultiPoly& F, std::vector<int> signs = {},
                       size_t cap = 10000);

// Searches generator sign assignments for a lift of the same order as the
// projective group, the subgroup avoiding the deck involution.
LiftedGroup lift_group_exact(const std::vector<ProjTransform>& generators,
                             const MultiPoly& F, size_t cap = 10000);

// Permutation of the sheet list induced by a lifted automorphism.
std::vector<size_t> sheet_permutation(const LiftedElement& e,
                                      const std::vector<PlaneSheet>& sheets,
                                      const KummerSurface& S);

int invariant_class_rank(const std::vector<PlaneSheet>& sheets,
                         const LiftedGroup& G, const KummerSurface& S);

struct CriterionReport {
  bool swaps_plus_minus = false;      // condition (i)
  bool plus_generates = false;        // condition (iv): rank of "+" block = 7
  bool minus_generates = false;       // condition (v)
  int invariant_rank = 0;
  std::string verdict;                // "Z" or "Z^2"
  std::string firing_condition;
};

CriterionReport criterion_report(const std::vector<PlaneSheet>& sheets,
                                 const LiftedGroup& G, const KummerSurface& S);

}  // namespace kq

#endif
