#ifndef KQ_INVGEO_HPP
#define KQ_INVGEO_HPP

#include <map>
#include <string>
#include <vector>

#include "core/groups.hpp"
#include "core/kummer.hpp"

namespace kq {

// A fixed line of one nontrivial H element, labeled 1..30 as in the
// reference table.
struct LineRecord {
  size_t id = 0;
  MultiPoly f1, f2;          // defining linear forms
  ProjTransform fixing;      // the element whose eigenspace the line is
};

// An H-semi-invariant quadric, labeled 1..10.
struct QuadricRecord {
  size_t id = 0;
  MultiPoly form;
  std::map<std::string, int> character;  // generator name -> +-1
};

// Eigenspace lines of the 15 nontrivial elements, matched to the standard
// table. The field must contain i.
std::vector<LineRecord> fixed_lines(const MatrixGroup& H);

// Character eigenspaces of the H action on quadratic forms; exactly ten
// characters occur, each with a one-dimensional eigenspace.
std::vector<QuadricRecord> invariant_quadrics(const MatrixGroup& H);

// entry[i][j] = line i+1 lies in quadric j+1.
std::vector<std::vector<bool>> incidence_table(
    const std::vector<LineRecord>& lines,
    const std::vector<QuadricRecord>& quadrics);

struct OrbitRecord {
  size_t id = 0;
  std::vector<ProjPoint> points;
};

// The pairwise intersection points of the 30 lines, grouped into the 15
// length-4 H-orbits and matched to the standard Sigma lists.
std::vector<OrbitRecord> line_singular_orbits(
    const MatrixGroup& H, const std::vector<LineRecord>& lines);

struct OrbitClassification {
  size_t length = 0;          // 4, 8, or 16
  size_t line_id = 0;         // containing line, 0 if none
  size_t sigma_id = 0;        // containing Sigma orbit, 0 if none
};

// Orbit length with its location certificate; throws if the length
// contradicts the location trichotomy.
OrbitClassification classify_orbit_length(const MatrixGroup& H,
                                          const std::vector<LineRecord>& lines,
                                          const std::vector<OrbitRecord>& sigma,
                                          const ProjPoint& p);

// Restriction of F to the line as a binary form in (l0, l1).
MultiPoly restrict_to_line_pencil(const MultiPoly& F, const LineRecord& line);

// True when the restriction of F to the line is a squarefree binary
// quartic (nonzero discriminant).
bool line_transversal(const MultiPoly& F, const LineRecord& line);

}  // namespace kq

#endif
