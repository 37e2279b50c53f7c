#ifndef KQ_GROUPS_HPP
#define KQ_GROUPS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/polygeom.hpp"

namespace kq {

struct NamedGen {
  std::string name;
  ProjTransform matrix;
};

struct MatrixGroup {
  std::vector<NamedGen> generators;
  std::vector<ProjTransform> elements;  // canonical scaling, element 0 = Id
  std::vector<std::string> words;       // one generator word per element
  std::map<std::string, size_t> index;  // canonical key -> element position

  size_t order() const { return elements.size(); }
  std::optional<size_t> find(const ProjTransform& g) const;
  bool contains(const ProjTransform& g) const { return find(g).has_value(); }
};

struct GroupError : std::runtime_error {
  explicit GroupError(const std::string& msg) : std::runtime_error(msg) {}
};

// Breadth-first closure under projective equality.
MatrixGroup close(const std::vector<NamedGen>& generators,
                  size_t cap = 10000);

struct OrbitResult {
  std::vector<ProjPoint> points;  // sorted canonical representatives
  size_t stabilizer_order = 0;
};
OrbitResult orbit(const MatrixGroup& G, const ProjPoint& p);

// Generator words: names, `*`, `^` with integer (possibly negative)
// exponents, parentheses, and commutators `[u,v]` = u^-1 v^-1 u v.
ProjTransform evaluate_word(const std::string& word,
                            const std::vector<NamedGen>& generators);

struct RelationCheck {
  std::string relation;
  bool holds = false;
};
// Each relation either `w` (projective identity) or checked for membership
// in `modulo` when given.
std::vector<RelationCheck> check_word_relations(
    const MatrixGroup& G, const std::vector<std::string>& relations,
    const MatrixGroup* modulo = nullptr);

// Induced permutation of a list of pairwise non-proportional forms:
// image[k] = j when forms[k]∘g is proportional to forms[j].
std::vector<size_t> perm_on_polys(const ProjTransform& g,
                                  const std::vector<MultiPoly>& forms);
std::string cycle_notation(const std::vector<size_t>& perm);

struct SignCharacter {
  std::map<std::string, int> values;  // generator name -> +-1
};

// Lift of the group to the double solid w^2 = F: each element acts on x by
// its matrix and on w by the product of generator signs along its word.
// Requires exact invariance F∘g = F for every generator.
struct LiftedAction {
  const MatrixGroup* group = nullptr;
  std::vector<int> signs;  // per element, aligned with group->elements
};
LiftedAction lift_by_character(const MatrixGroup& G, const MultiPoly& F,
                               const SignCharacter& rho);

struct GroupProfile {
  size_t order = 0;
  size_t exponent = 0;
  std::map<size_t, size_t> histogram;  // element order -> count
  size_t center_order = 0;
};
GroupProfile group_profile(const MatrixGroup& G);
size_t element_order(const ProjTransform& g, size_t cap = 10000);

// The four standard order-2 generators A1..A4 (entries 0, +-1).
std::vector<NamedGen> heisenberg_generators(const FieldDescriptor& f);

}  // namespace kq

#endif
