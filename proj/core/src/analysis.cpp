#include "riemann2d/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "riemann2d/errors.hpp"

namespace riemann2d {

namespace {

// Bottom of the delta ladder 2^-1 .. 2^-6. Flag sets grow as delta shrinks,
// so the union over the ladder equals the smallest-delta set.
constexpr double kCoverDelta = 1.0 / 64.0;

double cell_oscillation(const ScalarField2D& field, const BoundingRect& cell,
                        std::uint64_t seed) {
  if (auto r = field.cell_range(cell)) return r->second - r->first;
  const auto [lo, hi] = sampled_cell_range(field, cell, seed);
  return hi - lo;
}

}  // namespace

OscillationMap oscillation_map(const ScalarField2D& field, const BoundingRect& rect,
                               int level, double delta, const IntegrateOptions& options) {
  if (!(delta > 0.0)) throw std::invalid_argument("oscillation_map: delta must be positive");
  if (level < 0 || level > options.grid.max_level) {
    throw LevelTooDeep("oscillation_map: level " + std::to_string(level) +
                       " exceeds max_level " + std::to_string(options.grid.max_level));
  }

  OscillationMap map;
  map.rect = rect;
  map.level = level;
  map.delta = delta;

  const std::size_t n = std::size_t{1} << level;
  const double w = rect.width() / static_cast<double>(n);
  const double h = rect.height() / static_cast<double>(n);
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const BoundingRect cell{rect.x_lo + static_cast<double>(ix) * w,
                              rect.x_lo + static_cast<double>(ix + 1) * w,
                              rect.y_lo + static_cast<double>(iy) * h,
                              rect.y_lo + static_cast<double>(iy + 1) * h};
      const double osc = cell_oscillation(field, cell, options.seed);
      if (osc >= delta) {
        map.flagged_cells.push_back(FlaggedCell{cell, osc});
        map.flagged_area += cell.area();
      }
    }
  }
  return map;
}

EpsLadder discontinuity_ladder(const ScalarField2D& field, const BoundingRect& rect,
                               std::span<const double> eps_seq,
                               const IntegrateOptions& options) {
  auto tagger = [&field, seed = options.seed](const BoundingRect& cell) {
    return cell_oscillation(field, cell, seed) >= kCoverDelta ? CellTag::Boundary
                                                              : CellTag::FullInside;
  };
  return EpsLadder::build_classified(rect, tagger, eps_seq, options.grid);
}

EpsCover discontinuity_cover(const ScalarField2D& field, const BoundingRect& rect,
                             double eps, const IntegrateOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("discontinuity_cover: eps must be positive");
  const double seq[1] = {eps};
  EpsLadder ladder = discontinuity_ladder(field, rect, seq, options);
  if (ladder.rung_count() == 0) {
    throw CoverNotAchievable("discontinuity set of '" + field.name() +
                             "' not coverable below area " + std::to_string(eps));
  }
  return ladder.cover_at(0);
}

LineIntersections vertical_line_intersections(const EpsCover& cover, double x) {
  LineIntersections out;
  double stability = std::numeric_limits<double>::infinity();
  for (const BoundingRect& sq : cover.squares()) {
    if (x >= sq.x_lo && x <= sq.x_hi) {
      ++out.count;
      out.intervals.push_back(Interval{sq.y_lo, sq.y_hi});
      stability = std::min(stability, std::min(x - sq.x_lo, sq.x_hi - x));
    } else {
      stability = std::min(stability, x < sq.x_lo ? sq.x_lo - x : x - sq.x_hi);
    }
  }
  normalize(out.intervals);
  out.stability_delta = stability;
  return out;
}

Applicability theorem5_applicability(const ScalarField2D& field, const BoundingRect& rect,
                                     const IntegrateOptions& options) {
  if (!field.discontinuities_closed()) {
    return Applicability{false, "discontinuity set not declared closed"};
  }
  for (double eps : {0.1, 0.01, 0.001}) {
    try {
      discontinuity_cover(field, rect, eps, options);
    } catch (const CoverNotAchievable& err) {
      return Applicability{false, std::string("cover failure at eps ") +
                                      std::to_string(eps) + ": " + err.what()};
    }
  }
  return Applicability{true, "discontinuity covers achievable down to area 0.001"};
}

FubiniReport rectangle_fubini(const ScalarField2D& field, const BoundingRect& rect,
                              double tol, const IntegrateOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("rectangle_fubini: tol must be positive");
  if (!rect.valid()) throw std::invalid_argument("rectangle_fubini: empty rectangle");

  IntegrateOptions opts = options;
  if (opts.eps0 <= 0.0) opts.eps0 = 0.1 * rect.area();
  const std::vector<double> eps_seq = default_eps_sequence(rect, opts);
  EpsLadder ladder = discontinuity_ladder(field, rect, eps_seq, opts);
  if (ladder.rung_count() == 0) {
    throw CoverNotAchievable("rectangle_fubini: discontinuity set of '" + field.name() +
                             "' not coverable below area " + std::to_string(eps_seq.front()));
  }
  const auto rect_domain = make_rect_domain(rect);
  return detail::fubini_core(field, *rect_domain, ladder,
                             std::make_pair(rect.x_lo, rect.x_hi), tol, opts);
}

}  // namespace riemann2d
