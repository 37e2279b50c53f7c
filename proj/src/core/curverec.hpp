#ifndef KQ_CURVEREC_HPP
#define KQ_CURVEREC_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/groups.hpp"
#include "core/kummer.hpp"
#include "core/polygeom.hpp"

namespace kq {

// Six distinct points of P^1, the branch locus of the genus-2 curve.
struct SixPointSet {
  std::vector<ProjPoint> points;

  static SixPointSet make(std::vector<ProjPoint> pts);
};

// Projects the six nodes on a trope conic from one of them to P^1. The
// pencil of lines through the base is read off on the first coordinate
// hyperplane missing the base; the base itself maps to the parameter of
// the conic's tangent line.
SixPointSet trope_branch_points(const KummerSurface& S, const Trope& T,
                                const ProjPoint& base);

// Product of the six linear forms vanishing at the points, monic in
// graded-lex order. Variables (x, y).
MultiPoly sextic_from_points(const SixPointSet& P);

// Fractional-linear map carrying A onto B as a set, if one exists; the
// first match over ordered triples of B in lexicographic order.
std::optional<ProjTransform> mobius_equivalent(const SixPointSet& A,
                                               const SixPointSet& B);

struct ReducedAut {
  std::vector<ProjTransform> elements;       // 2x2, canonical scaling
  std::vector<std::vector<size_t>> perms;    // induced point permutations
  GroupProfile profile;
  std::string label;  // "S3", "D12", "S4", "mu5", or "order n, unnamed"
};

// Group of fractional-linear self-maps of the six-point set.
ReducedAut reduced_aut(const SixPointSet& P);

}  // namespace kq

#endif
