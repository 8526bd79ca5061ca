#pragma once

// Oscillation-based discontinuity analysis: flags cells where a field's
// oscillation exceeds a threshold, builds small-area covers of the flagged
// region, and decides whether the closed-discontinuity-set reduction applies.

#include <string>
#include <vector>

#include "riemann2d/integrate.hpp"

namespace riemann2d {

struct FlaggedCell {
  BoundingRect rect;
  double oscillation = 0.0;
};

struct OscillationMap {
  BoundingRect rect;
  int level = 0;
  double delta = 0.0;
  std::vector<FlaggedCell> flagged_cells;
  double flagged_area = 0.0;
};

// Per-cell oscillation (exact range when available, sampled otherwise) over a
// uniform grid; cells with oscillation >= delta are flagged.
OscillationMap oscillation_map(const ScalarField2D& field, const BoundingRect& rect,
                               int level, double delta,
                               const IntegrateOptions& options = {});

// Cover of the estimated discontinuity set with total area < eps. Cells are
// flagged at the bottom of the delta ladder 2^-1 .. 2^-6 (the union over the
// ladder equals the smallest-delta set by monotonicity).
EpsCover discontinuity_cover(const ScalarField2D& field, const BoundingRect& rect,
                             double eps, const IntegrateOptions& options = {});

// Ladder of discontinuity covers for a whole epsilon sequence (rectangle
// Fubini machinery).
EpsLadder discontinuity_ladder(const ScalarField2D& field, const BoundingRect& rect,
                               std::span<const double> eps_seq,
                               const IntegrateOptions& options = {});

struct LineIntersections {
  std::size_t count = 0;
  IntervalSet intervals;      // y-extents of the cover cells hit by the line
  double stability_delta = 0.0;  // largest shift keeping the same cell pattern
};

LineIntersections vertical_line_intersections(const EpsCover& cover, double x);

struct Applicability {
  bool applicable = false;
  std::string reason;
};

// Applicable iff the field declares a closed discontinuity set and covers of
// area < 0.1, 0.01, 0.001 are all achievable.
Applicability theorem5_applicability(const ScalarField2D& field, const BoundingRect& rect,
                                     const IntegrateOptions& options = {});

}  // namespace riemann2d
