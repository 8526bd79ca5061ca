#pragma once

// Double integrals by Darboux sums over classified dyadic cells, inner slice
// integrals in the exhaustion (improper) sense, the outer iterated integral,
// and the combined consistency report with its cover-area discrepancy bound.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "riemann2d/fields.hpp"
#include "riemann2d/geometry.hpp"

namespace riemann2d {

struct IntegrateOptions {
  GridOptions grid;                       // max_level, cover cell budget
  std::size_t leaf_budget = 6'000'000;    // adaptive Darboux leaf cap
  double eps0 = 0.0;                      // 0 => 0.1 * bounding-rect area
  int eps_terms = 12;                     // eps_n = eps0 * 2^-n
  std::uint64_t seed = 0;                 // sampled-range probes
  int outer_n0 = 8;                       // initial outer subdivisions
  int outer_n_max = 1 << 14;
  int line_pieces_max = 1 << 17;          // per-slice 1D piece cap
};

std::vector<double> default_eps_sequence(const BoundingRect& bounds,
                                         const IntegrateOptions& options = {});

enum class RunStatus : std::uint8_t { Converged, MaxDepth, Diverged };
std::string_view to_string(RunStatus status);

struct DarbouxEstimate {
  double lower_sum = 0.0;
  double upper_sum = 0.0;
  int level = 0;
  double boundary_contribution_bound = 0.0;  // bound_K * Boundary-cell area

  double gap() const {
    return (upper_sum - lower_sum) + 2.0 * boundary_contribution_bound;
  }
  double midpoint() const { return 0.5 * (lower_sum + upper_sum); }
};

struct IntegralReport {
  double value = 0.0;
  double gap = 0.0;
  RunStatus status = RunStatus::Converged;
  std::vector<std::pair<double, double>> trace;  // (level or eps, partial value)
  bool empty_slice = false;                      // inner integrals only
};

struct FubiniReport {
  double double_value = 0.0;
  double iterated_value = 0.0;
  double discrepancy = 0.0;
  double eps_final = 0.0;
  double bound_K = 0.0;
  double predicted_bound = 0.0;  // bound_K * eps_final
  std::vector<std::pair<double, double>> slices;  // sampled (x, h(x)) pairs
  IntegralReport double_report;
  IntegralReport iterated_report;

  bool bound_holds() const {
    return discrepancy <= predicted_bound + double_report.gap + iterated_report.gap;
  }
};

// Uniform-grid Darboux estimate at a single level. Cell value bounds come
// from the field's exact range when available, sampling otherwise.
DarbouxEstimate darboux_double(const ScalarField2D& field, const JordanDomain& domain,
                               int level, const IntegrateOptions& options = {});

// Adaptive bracket refinement until (upper - lower) + 2*K*boundary_area <= tol,
// the leaf budget, or max_level. Value is the bracket midpoint.
IntegralReport integrate_double(const ScalarField2D& field, const JordanDomain& domain,
                                double tol, const IntegrateOptions& options = {});

// h(x): limit over the epsilon sequence of the integral of f(x, .) over the
// covered slice, with per-interval Darboux bracketing in 1D.
IntegralReport inner_improper_integral(const ScalarField2D& field,
                                       const JordanDomain& domain, double x,
                                       std::span<const double> eps_seq, double tol,
                                       const IntegrateOptions& options = {});

// Outer midpoint Riemann sums of h over the interior x-extent, refined until
// successive sums agree within tol/2.
IntegralReport iterated_integral(const ScalarField2D& field, const JordanDomain& domain,
                                 double tol, const IntegrateOptions& options = {});

FubiniReport fubini_check(const ScalarField2D& field, const JordanDomain& domain,
                          double tol, const IntegrateOptions& options = {});

// 1D Darboux envelope of y -> f(x, y) on [y_lo, y_hi] over 2^level uniform
// pieces. Exact per-piece bounds when the field supplies them.
std::pair<double, double> upper_lower_partial(const ScalarField2D& field, double x,
                                              double y_lo, double y_hi, int level,
                                              const IntegrateOptions& options = {});

// Fubini consistency over a rectangle with covers built over the field's
// discontinuity set instead of the domain boundary.
FubiniReport rectangle_fubini(const ScalarField2D& field, const BoundingRect& rect,
                              double tol, const IntegrateOptions& options = {});

namespace detail {

// Shared engine behind iterated_integral / fubini_check / rectangle_fubini:
// the outer Riemann sums draw slices from an already-built cover ladder.
struct LadderRun {
  IntegralReport report;
  double eps_used = 0.0;   // ladder eps at the shallowest rung any slice stopped at
  double area_used = 0.0;  // cover area at that rung
};

LadderRun iterated_over_ladder(const ScalarField2D& field, const EpsLadder& ladder,
                               std::pair<double, double> extent, double tol,
                               const IntegrateOptions& options,
                               std::vector<std::pair<double, double>>* slice_samples);

FubiniReport fubini_core(const ScalarField2D& field, const JordanDomain& double_domain,
                         const EpsLadder& ladder, std::pair<double, double> extent,
                         double tol, const IntegrateOptions& options);

}  // namespace detail

}  // namespace riemann2d
