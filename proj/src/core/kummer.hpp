#ifndef KQ_KUMMER_HPP
#define KQ_KUMMER_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/groups.hpp"
#include "core/polygeom.hpp"

namespace kq {

struct KummerParams {
  FieldElement a, b, c, d, e;  // projective 5-tuple, first nonzero scaled to 1

  static KummerParams make(FieldElement a, FieldElement b, FieldElement c,
                           FieldElement d, FieldElement e);
  static KummerParams parse(const std::vector<std::string>& texts,
                            const FieldDescriptor& f);
  const FieldDescriptor& field() const { return a.descriptor(); }
};

FieldElement segre_residual(const KummerParams& p);

struct Trope {
  MultiPoly h;           // plane, first nonzero coefficient scaled to 1
  MultiPoly conic;       // monic square root of F|_h, lifted to 4 variables
  MultiPoly conic_plane; // the same root in the plane chart variables
  FieldElement radicand; // F|_h = radicand * conic_plane^2
  SqrtStatus root_status = SqrtStatus::not_a_square;
  EliminationRecord rec;
  std::vector<size_t> node_indices;  // incident nodes, ascending
};

struct KummerSurface {
  KummerParams params;
  MultiPoly F;
  std::vector<std::string> warnings;
  std::optional<std::vector<ProjPoint>> nodes;
  std::optional<std::vector<Trope>> tropes;

  const FieldDescriptor& field() const { return params.field(); }
};

// Expands F from the parameters and verifies exact invariance under A1..A4.
// Attaches warnings for a nonzero Segre residual and for degenerations
// (perfect-square F, or F vanishing on a special length-4 orbit).
KummerSurface build_surface(const KummerParams& p);

std::vector<VarSpec> surface_vars();

struct NodeCheck {
  ProjPoint point;
  bool gradient_zero = false;
  int hessian_rank = 0;
  bool ordinary_double_point = false;
};

struct NodeReport {
  std::vector<NodeCheck> checks;
  bool all_ordinary = false;
  bool single_h_orbit = false;
  bool verdict = false;  // 16 ordinary double points forming one H-orbit
};

NodeReport verify_nodes(const KummerSurface& S,
                        const std::vector<ProjPoint>& candidates);

struct NodeSearchConfig {
  long height = 64;
  std::vector<ProjPoint> candidates;  // optional hints, verified directly
};

struct NodeSearchResult {
  std::vector<ProjPoint> nodes;  // verified, sorted
  bool complete = false;         // true when exactly 16 were found
};

NodeSearchResult solve_nodes(const KummerSurface& S,
                             const NodeSearchConfig& config = {});

// Enumerates planes through node triples, keeps those with exactly six
// incident nodes whose F-restriction is a square up to scalar.
std::vector<Trope> find_tropes(const KummerSurface& S);

// Builds the trope record for one given plane; requires verified nodes,
// exactly six of them incident, and a square restriction.
Trope trope_for_plane(const KummerSurface& S, const MultiPoly& h);

struct SpecialOrbitReport {
  std::vector<std::pair<size_t, ProjPoint>> vanishing;  // (orbit 1..15, pt)
  bool all_nonzero = false;
};

// The 15 standard H-orbits of length 4 (coordinates in Q(i)).
std::vector<std::vector<ProjPoint>> sigma_orbits_points(
    const FieldDescriptor& f);

SpecialOrbitReport evaluate_on_special_orbits(const KummerSurface& S);

// Resultant of p and q with respect to one variable (Sylvester matrix,
// fraction-free determinant).
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, size_t var);

}  // namespace kq

#endif
