#include "riemann2d/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "riemann2d/errors.hpp"

namespace riemann2d {

namespace {

std::pair<double, double> cell_range_of(const ScalarField2D& field, const BoundingRect& cell,
                                        std::uint64_t seed) {
  if (auto r = field.cell_range(cell)) return *r;
  return sampled_cell_range(field, cell, seed);
}

std::pair<double, double> line_range_of(const ScalarField2D& field, double x, double y_lo,
                                        double y_hi, std::uint64_t seed) {
  if (auto r = field.line_range_y(x, y_lo, y_hi)) return *r;
  return sampled_line_range(field, x, y_lo, y_hi, seed);
}

void require_field_covers(const ScalarField2D& field, const BoundingRect& bounds) {
  if (!field.rect().contains_rect(bounds)) {
    throw std::invalid_argument("field '" + field.name() +
                                "' is not declared on the integration bounds");
  }
}

}  // namespace

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::MaxDepth: return "MaxDepth";
    case RunStatus::Diverged: return "Diverged";
  }
  return "Diverged";
}

std::vector<double> default_eps_sequence(const BoundingRect& bounds,
                                         const IntegrateOptions& options) {
  const double eps0 = options.eps0 > 0.0 ? options.eps0 : 0.1 * bounds.area();
  const int terms = std::max(1, options.eps_terms);
  std::vector<double> seq(static_cast<std::size_t>(terms));
  for (int i = 0; i < terms; ++i) seq[static_cast<std::size_t>(i)] = std::ldexp(eps0, -i);
  return seq;
}

// ---------------------------------------------------------------------------
// Uniform-grid Darboux estimate

DarbouxEstimate darboux_double(const ScalarField2D& field, const JordanDomain& domain,
                               int level, const IntegrateOptions& options) {
  require_field_covers(field, domain.bounds());
  const CellGrid grid = classify_grid(domain, level, options.grid);
  const double cell_area = grid.cell_area();
  const std::size_t n = grid.cells_per_axis();

  double lower = 0.0;
  double upper = 0.0;
  std::size_t boundary_cells = 0;
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      switch (grid.tag(ix, iy)) {
        case CellTag::FullInside: {
          const auto [lo, hi] = cell_range_of(field, grid.cell_rect(ix, iy), options.seed);
          lower += lo * cell_area;
          upper += hi * cell_area;
          break;
        }
        case CellTag::Boundary: ++boundary_cells; break;
        case CellTag::FullOutside: break;
      }
    }
  }

  DarbouxEstimate est;
  est.lower_sum = lower;
  est.upper_sum = upper;
  est.level = level;
  est.boundary_contribution_bound = field.bound_on(domain.bounds()) *
                                    static_cast<double>(boundary_cells) * cell_area;
  return est;
}

// ---------------------------------------------------------------------------
// Adaptive double integral

namespace {

struct Leaf {
  BoundingRect rect;
  double flo = 0.0;
  double fhi = 0.0;
  int level = 0;
  CellTag tag = CellTag::Boundary;
};

void push_leaf(std::vector<Leaf>& leaves, const ScalarField2D& field,
               const JordanDomain& domain, const BoundingRect& rect, int level,
               std::uint64_t seed) {
  const CellTag tag = classify_cell(domain, rect);
  if (tag == CellTag::FullOutside) return;
  Leaf leaf;
  leaf.rect = rect;
  leaf.level = level;
  leaf.tag = tag;
  if (tag == CellTag::FullInside) {
    const auto [lo, hi] = cell_range_of(field, rect, seed);
    leaf.flo = lo;
    leaf.fhi = hi;
  }
  leaves.push_back(leaf);
}

}  // namespace

IntegralReport integrate_double(const ScalarField2D& field, const JordanDomain& domain,
                                double tol, const IntegrateOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_double: tol must be positive");
  require_field_covers(field, domain.bounds());

  const double bound_k = field.bound_on(domain.bounds());
  std::vector<Leaf> leaves;
  push_leaf(leaves, field, domain, domain.bounds(), 0, options.seed);

  IntegralReport report;
  int depth = 0;
  while (true) {
    double lower = 0.0;
    double upper = 0.0;
    double boundary_area = 0.0;
    double osc_gap = 0.0;
    std::size_t osc_leaves = 0;
    for (const Leaf& leaf : leaves) {
      if (leaf.tag == CellTag::FullInside) {
        const double a = leaf.rect.area();
        lower += leaf.flo * a;
        upper += leaf.fhi * a;
        if (leaf.fhi > leaf.flo) {
          osc_gap += (leaf.fhi - leaf.flo) * a;
          ++osc_leaves;
        }
      } else {
        boundary_area += leaf.rect.area();
      }
    }
    const double boundary_gap = 2.0 * bound_k * boundary_area;
    const double gap = (upper - lower) + boundary_gap;

    report.value = 0.5 * (lower + upper);
    report.gap = gap;
    report.trace.emplace_back(static_cast<double>(depth), report.value);

    if (gap <= tol) {
      report.status = RunStatus::Converged;
      break;
    }

    // Boundary cells are refined first: their count grows like the boundary
    // length, and an unresolved boundary biases the midpoint value. Interior
    // cells split when their bracket contribution exceeds an equal share of
    // the target, and only with whatever leaf budget remains.
    const double osc_threshold =
        osc_leaves > 0 ? (0.5 * tol) / static_cast<double>(osc_leaves)
                       : std::numeric_limits<double>::infinity();

    std::size_t boundary_splits = 0;
    std::size_t osc_splits = 0;
    for (const Leaf& leaf : leaves) {
      if (leaf.level >= options.grid.max_level) continue;
      if (leaf.tag == CellTag::Boundary) ++boundary_splits;
      else if ((leaf.fhi - leaf.flo) * leaf.rect.area() > osc_threshold) ++osc_splits;
    }
    bool split_boundary = boundary_gap > 0.5 * tol && boundary_splits > 0 &&
                          leaves.size() + 3 * boundary_splits <= options.leaf_budget;
    bool split_osc = osc_gap > 0.5 * tol && osc_splits > 0;
    if (split_osc) {
      const std::size_t after_boundary =
          leaves.size() + (split_boundary ? 3 * boundary_splits : 0);
      if (after_boundary + 3 * osc_splits > options.leaf_budget) split_osc = false;
    }
    if (!split_boundary && !split_osc) {
      report.status = RunStatus::MaxDepth;
      break;
    }

    std::vector<Leaf> next;
    next.reserve(leaves.size() + 3 * (boundary_splits + osc_splits));
    for (const Leaf& leaf : leaves) {
      const bool eligible = leaf.level < options.grid.max_level;
      const bool split =
          eligible &&
          ((leaf.tag == CellTag::Boundary && split_boundary) ||
           (leaf.tag == CellTag::FullInside && split_osc &&
            (leaf.fhi - leaf.flo) * leaf.rect.area() > osc_threshold));
      if (!split) {
        next.push_back(leaf);
        continue;
      }
      const double cx = leaf.rect.center_x();
      const double cy = leaf.rect.center_y();
      const BoundingRect quads[4] = {
          {leaf.rect.x_lo, cx, leaf.rect.y_lo, cy}, {cx, leaf.rect.x_hi, leaf.rect.y_lo, cy},
          {leaf.rect.x_lo, cx, cy, leaf.rect.y_hi}, {cx, leaf.rect.x_hi, cy, leaf.rect.y_hi}};
      for (const BoundingRect& q : quads) {
        if (leaf.tag == CellTag::FullInside && domain.cell_tag(q).value_or(CellTag::FullInside) ==
                                                   CellTag::FullInside) {
          // Children of certified-interior cells stay interior for exact tags.
          Leaf child;
          child.rect = q;
          child.level = leaf.level + 1;
          child.tag = CellTag::FullInside;
          const auto [lo, hi] = cell_range_of(field, q, options.seed);
          child.flo = lo;
          child.fhi = hi;
          next.push_back(child);
        } else {
          push_leaf(next, field, domain, q, leaf.level + 1, options.seed);
        }
      }
      depth = std::max(depth, leaf.level + 1);
    }
    leaves.swap(next);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Inner improper integral and the iterated engine

namespace {

struct Bracket1D {
  double value = 0.0;
  double gap = 0.0;
};

// Darboux bracketing of the 1D integral of f(x, .) over an interval union.
// Pieces whose oscillation exceeds its fair share of the gap target are
// bisected, so jump discontinuities cost O(log 1/tol) pieces instead of
// O(1/tol). Midpoint of the final bracket is the reported value.
Bracket1D integrate_slice_1d(const ScalarField2D& field, double x,
                             const IntervalSet& intervals, double gap_tol,
                             const IntegrateOptions& options) {
  Bracket1D out;
  const double total = total_length(intervals);
  if (total <= 0.0) return out;

  struct Piece {
    double y0, y1, lo, hi;
  };
  auto make_piece = [&](double y0, double y1) {
    const auto [lo, hi] = line_range_of(field, x, y0, y1, options.seed);
    return Piece{y0, y1, lo, hi};
  };

  std::vector<Piece> pieces;
  pieces.reserve(intervals.size());
  for (const Interval& iv : intervals) pieces.push_back(make_piece(iv.lo, iv.hi));

  const double osc_threshold = gap_tol / total;
  while (true) {
    double gap = 0.0;
    for (const Piece& p : pieces) gap += (p.hi - p.lo) * (p.y1 - p.y0);
    if (gap <= gap_tol ||
        pieces.size() >= static_cast<std::size_t>(options.line_pieces_max)) {
      break;
    }
    std::vector<Piece> next;
    next.reserve(pieces.size() * 2);
    bool split_any = false;
    for (const Piece& p : pieces) {
      const double ym = 0.5 * (p.y0 + p.y1);
      if (p.hi - p.lo > osc_threshold && ym > p.y0 && ym < p.y1) {
        next.push_back(make_piece(p.y0, ym));
        next.push_back(make_piece(ym, p.y1));
        split_any = true;
      } else {
        next.push_back(p);
      }
    }
    if (!split_any) break;
    pieces.swap(next);
  }

  for (const Piece& p : pieces) {
    out.value += 0.5 * (p.lo + p.hi) * (p.y1 - p.y0);
    out.gap += (p.hi - p.lo) * (p.y1 - p.y0);
  }
  return out;
}

struct InnerResult {
  IntegralReport report;
  std::size_t final_rung = 0;
};

// Walk the ladder from start_rung until the partial integrals are Cauchy,
// the slice-length increments are negligible, and the part of the line still
// hidden under the cover cannot move the value by more than `tol`. The last
// condition is the rigorous one: everything of the slice not yet certified
// lies under the cover's cells on this line.
InnerResult inner_over_ladder(const ScalarField2D& field, const EpsLadder& ladder,
                              double x, double tol, const IntegrateOptions& options,
                              std::size_t start_rung) {
  InnerResult out;
  IntegralReport& rep = out.report;
  const double bound_k = field.bound_on(ladder.partition().bounds());

  // Each convergence component stays below tol/3 so the summed gap is < tol.
  const double crit = tol / 3.0;

  double prev_value = 0.0;
  double prev_len = 0.0;
  IntervalSet prev_intervals;
  Bracket1D prev_bracket;
  bool have_prev = false;
  bool last_empty = false;
  rep.status = RunStatus::Diverged;
  for (std::size_t i = start_rung; i < ladder.rung_count(); ++i) {
    const SliceSet sl = ladder.slice_at(x, i);
    const double len = sl.total_length();
    const Bracket1D b = (have_prev && sl.intervals == prev_intervals)
                            ? prev_bracket
                            : integrate_slice_1d(field, x, sl.intervals, crit, options);
    const double tail = bound_k * sl.covered_length();
    rep.value = b.value;
    rep.trace.emplace_back(ladder.rung(i).eps, b.value);
    out.final_rung = i;
    last_empty = sl.empty();
    if (have_prev) {
      const double dv = std::abs(b.value - prev_value);
      const double dlen_term = bound_k * std::abs(len - prev_len);
      rep.gap = b.gap + dv + tail;
      if (dv <= crit && dlen_term <= crit && b.gap <= crit && tail <= crit) {
        rep.status = RunStatus::Converged;
        rep.empty_slice = last_empty && tail == 0.0;
        return out;
      }
    } else {
      rep.gap = b.gap + tail;
    }
    prev_value = b.value;
    prev_len = len;
    prev_intervals = sl.intervals;
    prev_bracket = b;
    have_prev = true;
  }
  rep.empty_slice = last_empty;
  if (rep.status != RunStatus::Converged && last_empty &&
      ladder.rung_count() - start_rung < 2) {
    // Degenerate one-rung ladder over an empty slice: nothing left to exhaust.
    rep.status = RunStatus::Converged;
    rep.gap = 0.0;
  }
  return out;
}

}  // namespace

IntegralReport inner_improper_integral(const ScalarField2D& field, const JordanDomain& domain,
                                       double x, std::span<const double> eps_seq, double tol,
                                       const IntegrateOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("inner_improper_integral: tol must be positive");
  require_field_covers(field, domain.bounds());
  EpsLadder ladder = EpsLadder::build(domain, eps_seq, options.grid);
  if (ladder.rung_count() == 0) {
    throw CoverNotAchievable("inner_improper_integral: no cover achievable for '" +
                             domain.name() + "'");
  }
  if (x < domain.bounds().x_lo || x > domain.bounds().x_hi) {
    IntegralReport rep;
    rep.status = RunStatus::Converged;
    rep.empty_slice = true;
    return rep;
  }
  return inner_over_ladder(field, ladder, x, tol, options, 0).report;
}

namespace detail {

LadderRun iterated_over_ladder(const ScalarField2D& field, const EpsLadder& ladder,
                               std::pair<double, double> extent, double tol,
                               const IntegrateOptions& options,
                               std::vector<std::pair<double, double>>* slice_samples) {
  LadderRun run;
  IntegralReport& rep = run.report;
  const double a = extent.first;
  const double b = extent.second;
  if (!(b > a) || ladder.rung_count() == 0) {
    rep.status = RunStatus::Converged;
    rep.empty_slice = true;
    return run;
  }

  const double width = b - a;
  const double bound_k = field.bound_on(ladder.partition().bounds());

  // The exhaustion tail is controlled globally: whatever part of a slice is
  // still hidden lies under the cover, and the cover's area bounds the
  // aggregated error over all abscissae at once. One rung therefore
  // suffices; pick the shallowest with a small enough leftover area.
  std::size_t rung = ladder.rung_count() - 1;
  for (std::size_t i = 0; i < ladder.rung_count(); ++i) {
    if (bound_k * ladder.rung(i).boundary_area <= 0.125 * tol) {
      rung = i;
      break;
    }
  }
  run.eps_used = ladder.rung(rung).eps;
  run.area_used = ladder.rung(rung).boundary_area;

  const double crit_1d = tol / (4.0 * width);
  double max_gap_1d = 0.0;
  auto eval_h = [&](double x) {
    const SliceSet sl = ladder.slice_at(x, rung);
    const Bracket1D br = integrate_slice_1d(field, x, sl.intervals, crit_1d, options);
    max_gap_1d = std::max(max_gap_1d, br.gap);
    return br.value;
  };

  double prev_sum = 0.0;
  bool have_prev = false;
  bool outer_converged = false;
  double delta_outer = 0.0;
  for (int n = options.outer_n0; n <= options.outer_n_max; n *= 2) {
    const double h = width / n;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += eval_h(a + (k + 0.5) * h);
    sum *= h;
    rep.value = sum;
    rep.trace.emplace_back(static_cast<double>(n), sum);
    if (have_prev) {
      delta_outer = std::abs(sum - prev_sum);
      if (delta_outer <= 0.25 * tol) {
        outer_converged = true;
        break;
      }
    }
    prev_sum = sum;
    have_prev = true;
  }

  rep.gap = delta_outer + width * max_gap_1d + bound_k * run.area_used;
  rep.status =
      (outer_converged && rep.gap <= tol) ? RunStatus::Converged : RunStatus::Diverged;

  if (slice_samples) {
    constexpr int kSamples = 33;
    for (int j = 0; j < kSamples; ++j) {
      const double x = a + width * j / (kSamples - 1);
      slice_samples->emplace_back(x, eval_h(x));
    }
  }
  return run;
}

FubiniReport fubini_core(const ScalarField2D& field, const JordanDomain& double_domain,
                         const EpsLadder& ladder, std::pair<double, double> extent,
                         double tol, const IntegrateOptions& options) {
  FubiniReport report;
  report.double_report = integrate_double(field, double_domain, tol, options);
  report.double_value = report.double_report.value;

  LadderRun run =
      iterated_over_ladder(field, ladder, extent, tol, options, &report.slices);
  report.iterated_report = run.report;
  report.iterated_value = run.report.value;
  report.discrepancy = std::abs(report.double_value - report.iterated_value);
  report.eps_final = run.eps_used;
  report.bound_K = field.bound_on(double_domain.bounds());
  report.predicted_bound = report.bound_K * report.eps_final;
  return report;
}

}  // namespace detail

IntegralReport iterated_integral(const ScalarField2D& field, const JordanDomain& domain,
                                 double tol, const IntegrateOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("iterated_integral: tol must be positive");
  require_field_covers(field, domain.bounds());
  const std::vector<double> eps_seq = default_eps_sequence(domain.bounds(), options);
  EpsLadder ladder = EpsLadder::build(domain, eps_seq, options.grid);
  if (ladder.rung_count() == 0) {
    throw CoverNotAchievable("iterated_integral: no cover achievable for '" +
                             domain.name() + "'");
  }
  const auto extent = ladder.full_inside_x_extent();
  if (!extent) {
    IntegralReport rep;
    rep.status = RunStatus::Converged;
    rep.empty_slice = true;
    return rep;
  }
  return detail::iterated_over_ladder(field, ladder, *extent, tol, options, nullptr).report;
}

FubiniReport fubini_check(const ScalarField2D& field, const JordanDomain& domain,
                          double tol, const IntegrateOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("fubini_check: tol must be positive");
  require_field_covers(field, domain.bounds());
  const std::vector<double> eps_seq = default_eps_sequence(domain.bounds(), options);
  EpsLadder ladder = EpsLadder::build(domain, eps_seq, options.grid);
  if (ladder.rung_count() == 0) {
    throw CoverNotAchievable("fubini_check: no cover achievable for '" + domain.name() + "'");
  }
  const auto extent = ladder.full_inside_x_extent();
  const std::pair<double, double> ab =
      extent ? *extent : std::make_pair(domain.bounds().x_lo, domain.bounds().x_lo);
  return detail::fubini_core(field, domain, ladder, ab, tol, options);
}

std::pair<double, double> upper_lower_partial(const ScalarField2D& field, double x,
                                              double y_lo, double y_hi, int level,
                                              const IntegrateOptions& options) {
  if (level < 0 || level > options.grid.max_level) {
    throw LevelTooDeep("upper_lower_partial: level " + std::to_string(level) +
                       " exceeds max_level " + std::to_string(options.grid.max_level));
  }
  if (!(y_lo < y_hi)) throw std::invalid_argument("upper_lower_partial: need y_lo < y_hi");
  const std::int64_t pieces = std::int64_t{1} << level;
  const double h = (y_hi - y_lo) / static_cast<double>(pieces);
  double lower = 0.0;
  double upper = 0.0;
  for (std::int64_t i = 0; i < pieces; ++i) {
    const double a = y_lo + static_cast<double>(i) * h;
    const double b = (i + 1 == pieces) ? y_hi : y_lo + static_cast<double>(i + 1) * h;
    const auto [lo, hi] = line_range_of(field, x, a, b, options.seed);
    lower += lo * (b - a);
    upper += hi * (b - a);
  }
  return {lower, upper};
}

}  // namespace riemann2d
