#pragma once

// Bounded scalar fields on a rectangle, the fat (Smith-Volterra-Cantor) set
// machinery, and the piecewise counterexample field on the L-shaped domain.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "riemann2d/geometry.hpp"

namespace riemann2d {

/// A bounded real-valued function of two variables. `bound()` dominates |f|
/// on the declared rectangle; `bound_on` may tighten it on a sub-rectangle.
class ScalarField2D {
public:
  virtual ~ScalarField2D() = default;

  virtual double eval(double x, double y) const = 0;
  virtual double bound() const = 0;
  virtual const BoundingRect& rect() const = 0;
  virtual const std::string& name() const = 0;

  // Exact range of f over a cell / over a vertical segment, when the field
  // can supply one. nullopt means callers fall back to sampling.
  virtual std::optional<std::pair<double, double>> cell_range(const BoundingRect& cell) const {
    (void)cell;
    return std::nullopt;
  }
  virtual std::optional<std::pair<double, double>> line_range_y(double x, double y_lo,
                                                                double y_hi) const {
    (void)x;
    (void)y_lo;
    (void)y_hi;
    return std::nullopt;
  }

  double bound_on(const BoundingRect& sub) const {
    if (auto r = cell_range(sub)) {
      double m = std::max(std::abs(r->first), std::abs(r->second));
      return m;
    }
    return bound();
  }

  // Whether the set of discontinuity points is closed. Not decidable from
  // point queries; declared per field and trusted by the analyzer.
  virtual bool discontinuities_closed() const { return true; }
};

// Sampled range over a cell: 9 fixed probes plus `extra` seeded random ones.
std::pair<double, double> sampled_cell_range(const ScalarField2D& field,
                                             const BoundingRect& cell,
                                             std::uint64_t seed, int extra = 16);
std::pair<double, double> sampled_line_range(const ScalarField2D& field, double x,
                                             double y_lo, double y_hi,
                                             std::uint64_t seed, int extra = 8);

// ---------------------------------------------------------------------------
// Fat Cantor (Smith-Volterra-Cantor) set on [lo, hi].
//
// Construction step n removes from each of the 2^(n-1) surviving intervals a
// centered open interval of length (hi-lo) * 4^(-n). The depth-d set is the
// union of 2^d closed intervals of equal length and over-approximates the
// limit set, whose measure is (hi-lo)/2.

class FatCantorSet {
public:
  static constexpr int kMaxDepth = 30;

  static FatCantorSet build(double lo, double hi, int depth);  // throws DepthTooLarge

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int depth() const { return depth_; }
  double measure() const { return measure_; }

  std::uint64_t interval_count() const { return std::uint64_t{1} << depth_; }
  // i-th retained interval in ascending order, computed in O(depth).
  Interval interval(std::uint64_t i) const;
  double interval_length() const { return length_at_[depth_]; }

  bool contains(double y) const;
  // Exact interval queries against the depth-d set.
  bool meets(double a, double b) const;
  bool contains_interval(double a, double b) const;

private:
  FatCantorSet(double lo, double hi, int depth);

  double removal_length(int step) const;  // (hi-lo) * 4^(-step)

  double lo_ = 0.0;
  double hi_ = 1.0;
  int depth_ = 1;
  double measure_ = 0.0;
  std::vector<double> length_at_;  // retained interval length after each step
};

// Closed-form measure of the depth-d set: (hi-lo) * (1 + 2^-d) / 2.
double fat_cantor_measure_closed_form(double lo, double hi, int depth);

// Queries against the limit (depth -> infinity) set; used where a genuinely
// nowhere-dense set of positive measure is required. Interval queries are
// exact; point membership is decided by descent with a generous step cap.
class FatCantorLimitSet {
public:
  FatCantorLimitSet(double lo, double hi) : lo_(lo), hi_(hi) {}

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double measure() const { return 0.5 * (hi_ - lo_); }

  bool contains(double y) const;
  bool meets(double a, double b) const;

private:
  double lo_, hi_;
};

// ---------------------------------------------------------------------------
// Built-in fields.

std::shared_ptr<const ScalarField2D> constant_field(double value);
std::shared_ptr<const ScalarField2D> sum_of_squares_field();   // x^2 + y^2
std::shared_ptr<const ScalarField2D> smooth_wave_field();      // sin(3x + 2y)

// The counterexample field on the L-shaped domain D: -2 on {1} x P, -1 on
// {1} x ([1,2] \ P), 0 elsewhere (including the extension outside D), with P
// the depth-d fat Cantor set on [1,2].
struct PaperExample {
  std::shared_ptr<const ScalarField2D> field;
  std::shared_ptr<const JordanDomain> domain;
  FatCantorSet cantor;
};
PaperExample paper_example_field(int depth);

// Indicator of (limit fat Cantor set on [0,1]) x [0,1]; its discontinuity set
// has two-dimensional content 1/2, so no finite-area cover exists.
std::shared_ptr<const ScalarField2D> cantor_stripes_field();

// Parse "one", "poly", "cont-generic", "paper-example:<depth>", "cantor-stripes".
std::shared_ptr<const ScalarField2D> make_field(std::string_view spec);
std::vector<std::string> builtin_field_names();

}  // namespace riemann2d
