#include "riemann2d/fields.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "riemann2d/errors.hpp"

namespace riemann2d {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, double a, double b, double c, double d) {
  auto mix = [](std::uint64_t h, double v) {
    h ^= std::bit_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
  };
  std::uint64_t h = seed + 0xD1B54A32D192ED03ULL;
  h = mix(h, a);
  h = mix(h, b);
  h = mix(h, c);
  return mix(h, d);
}

}  // namespace

std::pair<double, double> sampled_cell_range(const ScalarField2D& field,
                                             const BoundingRect& cell,
                                             std::uint64_t seed, int extra) {
  const double cx = cell.center_x();
  const double cy = cell.center_y();
  const double xs[3] = {cell.x_lo, cx, cell.x_hi};
  const double ys[3] = {cell.y_lo, cy, cell.y_hi};
  double lo = field.eval(cx, cy);
  double hi = lo;
  for (double x : xs) {
    for (double y : ys) {
      const double v = field.eval(x, y);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::mt19937_64 rng(mix_seed(seed, cell.x_lo, cell.y_lo, cell.x_hi, cell.y_hi));
  std::uniform_real_distribution<double> ux(cell.x_lo, cell.x_hi);
  std::uniform_real_distribution<double> uy(cell.y_lo, cell.y_hi);
  for (int i = 0; i < extra; ++i) {
    const double v = field.eval(ux(rng), uy(rng));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

std::pair<double, double> sampled_line_range(const ScalarField2D& field, double x,
                                             double y_lo, double y_hi,
                                             std::uint64_t seed, int extra) {
  const double ym = 0.5 * (y_lo + y_hi);
  double lo = field.eval(x, ym);
  double hi = lo;
  for (double y : {y_lo, ym, y_hi}) {
    const double v = field.eval(x, y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::mt19937_64 rng(mix_seed(seed, x, y_lo, x, y_hi));
  std::uniform_real_distribution<double> uy(y_lo, y_hi);
  for (int i = 0; i < extra; ++i) {
    const double v = field.eval(x, uy(rng));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// FatCantorSet

FatCantorSet::FatCantorSet(double lo, double hi, int depth)
    : lo_(lo), hi_(hi), depth_(depth) {
  length_at_.resize(static_cast<std::size_t>(depth) + 1);
  length_at_[0] = hi - lo;
  for (int n = 1; n <= depth; ++n) {
    length_at_[static_cast<std::size_t>(n)] =
        0.5 * (length_at_[static_cast<std::size_t>(n - 1)] - removal_length(n));
  }
  measure_ = std::ldexp(length_at_[static_cast<std::size_t>(depth)], depth);
}

FatCantorSet FatCantorSet::build(double lo, double hi, int depth) {
  if (!(lo < hi)) throw std::invalid_argument("fat Cantor set: need lo < hi");
  if (depth < 1 || depth > kMaxDepth) {
    throw DepthTooLarge("fat Cantor set: depth " + std::to_string(depth) +
                        " outside [1, " + std::to_string(kMaxDepth) + "]");
  }
  return FatCantorSet(lo, hi, depth);
}

double FatCantorSet::removal_length(int step) const {
  return std::ldexp(hi_ - lo_, -2 * step);  // (hi-lo) * 4^-step
}

Interval FatCantorSet::interval(std::uint64_t i) const {
  double a = lo_;
  for (int n = 1; n <= depth_; ++n) {
    const bool right = (i >> (depth_ - n)) & 1u;
    if (right) a += length_at_[static_cast<std::size_t>(n)] + removal_length(n);
  }
  return Interval{a, a + length_at_[static_cast<std::size_t>(depth_)]};
}

bool FatCantorSet::contains(double y) const {
  if (y < lo_ || y > hi_) return false;
  double a = lo_;
  for (int n = 1; n <= depth_; ++n) {
    const double child = length_at_[static_cast<std::size_t>(n)];
    const double gap_lo = a + child;
    const double gap_hi = gap_lo + removal_length(n);
    if (y > gap_lo && y < gap_hi) return false;
    if (y >= gap_hi) a = gap_hi;
  }
  return true;
}

bool FatCantorSet::meets(double a, double b) const {
  if (b < lo_ || a > hi_) return false;
  auto rec = [&](auto&& self, double u, int n) -> bool {
    const double len = length_at_[static_cast<std::size_t>(n)];
    if (b < u || a > u + len) return false;
    if (n == depth_) return true;
    const double gap = removal_length(n + 1);
    const double child = length_at_[static_cast<std::size_t>(n + 1)];
    return self(self, u, n + 1) || self(self, u + child + gap, n + 1);
  };
  return rec(rec, lo_, 0);
}

bool FatCantorSet::contains_interval(double a, double b) const {
  if (a > b) std::swap(a, b);
  if (a < lo_ || b > hi_) return false;
  double u = lo_;
  for (int n = 0; n < depth_; ++n) {
    const double child = length_at_[static_cast<std::size_t>(n + 1)];
    const double gap_lo = u + child;
    const double gap_hi = gap_lo + removal_length(n + 1);
    if (b <= gap_lo) continue;          // stays in the left child
    if (a >= gap_hi) { u = gap_hi; continue; }  // right child
    return false;                        // overlaps the removed gap
  }
  return true;
}

double fat_cantor_measure_closed_form(double lo, double hi, int depth) {
  return (hi - lo) * 0.5 * (1.0 + std::ldexp(1.0, -depth));
}

// ---------------------------------------------------------------------------
// FatCantorLimitSet

namespace {
constexpr int kLimitDescentCap = 64;
}

bool FatCantorLimitSet::contains(double y) const {
  if (y < lo_ || y > hi_) return false;
  double u = lo_;
  double len = hi_ - lo_;
  for (int n = 1; n <= kLimitDescentCap; ++n) {
    if (y == u || y == u + len) return true;  // retained endpoints survive forever
    const double gap = std::ldexp(hi_ - lo_, -2 * n);
    const double child = 0.5 * (len - gap);
    const double gap_lo = u + child;
    const double gap_hi = gap_lo + gap;
    if (y > gap_lo && y < gap_hi) return false;
    if (y >= gap_hi) u = gap_hi;
    len = child;
  }
  return true;  // unresolved at double precision: within 2^-64 of the set
}

bool FatCantorLimitSet::meets(double a, double b) const {
  if (a > b) std::swap(a, b);
  if (b < lo_ || a > hi_) return false;
  auto rec = [&](auto&& self, double u, double len, int n) -> bool {
    if (b < u || a > u + len) return false;
    if ((u >= a && u <= b) || (u + len >= a && u + len <= b)) return true;
    if (n > kLimitDescentCap) return true;
    const double gap = std::ldexp(hi_ - lo_, -2 * n);
    const double child = 0.5 * (len - gap);
    return self(self, u, child, n + 1) || self(self, u + child + gap, child, n + 1);
  };
  return rec(rec, lo_, hi_ - lo_, 1);
}

// ---------------------------------------------------------------------------
// Built-in fields

namespace {

const BoundingRect kWideRect{-1.0e6, 1.0e6, -1.0e6, 1.0e6};

class ConstantField final : public ScalarField2D {
public:
  explicit ConstantField(double value)
      : value_(value), name_(value == 1.0 ? "one" : "const") {}

  double eval(double, double) const override { return value_; }
  double bound() const override { return std::max(std::abs(value_), 1.0); }
  const BoundingRect& rect() const override { return kWideRect; }
  const std::string& name() const override { return name_; }

  std::optional<std::pair<double, double>> cell_range(const BoundingRect&) const override {
    return std::make_pair(value_, value_);
  }
  std::optional<std::pair<double, double>> line_range_y(double, double, double) const override {
    return std::make_pair(value_, value_);
  }

private:
  double value_;
  std::string name_;
};

double square_range_lo(double a, double b) {
  if (a <= 0.0 && b >= 0.0) return 0.0;
  return std::min(a * a, b * b);
}
double square_range_hi(double a, double b) { return std::max(a * a, b * b); }

class SumSquaresField final : public ScalarField2D {
public:
  double eval(double x, double y) const override { return x * x + y * y; }
  double bound() const override { return 2.0 * 8.0 * 8.0; }
  const BoundingRect& rect() const override { return rect_; }
  const std::string& name() const override { return name_; }

  std::optional<std::pair<double, double>> cell_range(const BoundingRect& c) const override {
    return std::make_pair(square_range_lo(c.x_lo, c.x_hi) + square_range_lo(c.y_lo, c.y_hi),
                          square_range_hi(c.x_lo, c.x_hi) + square_range_hi(c.y_lo, c.y_hi));
  }
  std::optional<std::pair<double, double>> line_range_y(double x, double y_lo,
                                                        double y_hi) const override {
    return std::make_pair(x * x + square_range_lo(y_lo, y_hi),
                          x * x + square_range_hi(y_lo, y_hi));
  }

private:
  BoundingRect rect_{-8.0, 8.0, -8.0, 8.0};
  std::string name_ = "poly";
};

// Exact range of sin over a phase interval.
std::pair<double, double> sin_range(double p0, double p1) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  constexpr double kHalfPi = 1.5707963267948966192313216916398;
  if (p1 - p0 >= kTwoPi) return {-1.0, 1.0};
  double lo = std::min(std::sin(p0), std::sin(p1));
  double hi = std::max(std::sin(p0), std::sin(p1));
  const double k_hi = std::ceil((p0 - kHalfPi) / kTwoPi);
  if (kHalfPi + kTwoPi * k_hi <= p1) hi = 1.0;
  const double k_lo = std::ceil((p0 + kHalfPi) / kTwoPi);
  if (-kHalfPi + kTwoPi * k_lo <= p1) lo = -1.0;
  return {lo, hi};
}

class SmoothWaveField final : public ScalarField2D {
public:
  double eval(double x, double y) const override { return std::sin(3.0 * x + 2.0 * y); }
  double bound() const override { return 1.0; }
  const BoundingRect& rect() const override { return kWideRect; }
  const std::string& name() const override { return name_; }

  std::optional<std::pair<double, double>> cell_range(const BoundingRect& c) const override {
    return sin_range(3.0 * c.x_lo + 2.0 * c.y_lo, 3.0 * c.x_hi + 2.0 * c.y_hi);
  }
  std::optional<std::pair<double, double>> line_range_y(double x, double y_lo,
                                                        double y_hi) const override {
    return sin_range(3.0 * x + 2.0 * y_lo, 3.0 * x + 2.0 * y_hi);
  }

private:
  std::string name_ = "cont-generic";
};

class PaperExampleField final : public ScalarField2D {
public:
  explicit PaperExampleField(FatCantorSet cantor)
      : cantor_(std::move(cantor)),
        name_("paper-example:" + std::to_string(cantor_.depth())) {}

  double eval(double x, double y) const override {
    if (x == 1.0 && y >= 1.0 && y <= 2.0) return cantor_.contains(y) ? -2.0 : -1.0;
    return 0.0;
  }
  double bound() const override { return 2.0; }
  const BoundingRect& rect() const override { return rect_; }
  const std::string& name() const override { return name_; }

  std::optional<std::pair<double, double>> cell_range(const BoundingRect& c) const override {
    if (c.x_lo <= 1.0 && c.x_hi >= 1.0) {
      const double y0 = std::max(c.y_lo, 1.0);
      const double y1 = std::min(c.y_hi, 2.0);
      if (y0 <= y1) return std::make_pair(cantor_.meets(y0, y1) ? -2.0 : -1.0, 0.0);
    }
    return std::make_pair(0.0, 0.0);
  }

  std::optional<std::pair<double, double>> line_range_y(double x, double y_lo,
                                                        double y_hi) const override {
    if (x != 1.0) return std::make_pair(0.0, 0.0);
    const double y0 = std::max(y_lo, 1.0);
    const double y1 = std::min(y_hi, 2.0);
    if (y0 > y1) return std::make_pair(0.0, 0.0);
    const double lo = cantor_.meets(y0, y1) ? -2.0 : -1.0;
    if (y_lo >= 1.0 && y_hi <= 2.0) {
      return std::make_pair(lo, cantor_.contains_interval(y_lo, y_hi) ? -2.0 : -1.0);
    }
    return std::make_pair(lo, 0.0);
  }

  const FatCantorSet& cantor() const { return cantor_; }

private:
  FatCantorSet cantor_;
  BoundingRect rect_{0.0, 2.0, 0.0, 2.0};
  std::string name_;
};

class CantorStripesField final : public ScalarField2D {
public:
  CantorStripesField() : stripes_(0.0, 1.0) {}

  double eval(double x, double y) const override {
    if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) return 0.0;
    return stripes_.contains(x) ? 1.0 : 0.0;
  }
  double bound() const override { return 1.0; }
  const BoundingRect& rect() const override { return rect_; }
  const std::string& name() const override { return name_; }

  std::optional<std::pair<double, double>> cell_range(const BoundingRect& c) const override {
    const double x0 = std::max(c.x_lo, 0.0);
    const double x1 = std::min(c.x_hi, 1.0);
    const double y0 = std::max(c.y_lo, 0.0);
    const double y1 = std::min(c.y_hi, 1.0);
    if (x0 > x1 || y0 > y1) return std::make_pair(0.0, 0.0);
    // The limit set is nowhere dense, so no positive-width cell lies inside it.
    return std::make_pair(0.0, stripes_.meets(x0, x1) ? 1.0 : 0.0);
  }

  std::optional<std::pair<double, double>> line_range_y(double x, double y_lo,
                                                        double y_hi) const override {
    const double v = (x >= 0.0 && x <= 1.0 && stripes_.contains(x)) ? 1.0 : 0.0;
    if (y_lo >= 0.0 && y_hi <= 1.0) return std::make_pair(v, v);
    return std::make_pair(0.0, v);
  }

private:
  FatCantorLimitSet stripes_;
  BoundingRect rect_{0.0, 1.0, 0.0, 1.0};
  std::string name_ = "cantor-stripes";
};

}  // namespace

std::shared_ptr<const ScalarField2D> constant_field(double value) {
  return std::make_shared<ConstantField>(value);
}

std::shared_ptr<const ScalarField2D> sum_of_squares_field() {
  return std::make_shared<SumSquaresField>();
}

std::shared_ptr<const ScalarField2D> smooth_wave_field() {
  return std::make_shared<SmoothWaveField>();
}

PaperExample paper_example_field(int depth) {
  FatCantorSet cantor = FatCantorSet::build(1.0, 2.0, depth);
  PaperExample out{std::make_shared<PaperExampleField>(cantor), lshape_domain(),
                   std::move(cantor)};
  return out;
}

std::shared_ptr<const ScalarField2D> cantor_stripes_field() {
  return std::make_shared<CantorStripesField>();
}

std::shared_ptr<const ScalarField2D> make_field(std::string_view spec) {
  if (spec == "one") return constant_field(1.0);
  if (spec == "poly") return sum_of_squares_field();
  if (spec == "cont-generic") return smooth_wave_field();
  if (spec == "cantor-stripes") return cantor_stripes_field();
  constexpr std::string_view kPaperPrefix = "paper-example:";
  if (spec.substr(0, kPaperPrefix.size()) == kPaperPrefix) {
    const std::string arg(spec.substr(kPaperPrefix.size()));
    std::size_t used = 0;
    int depth = 0;
    try {
      depth = std::stoi(arg, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("paper-example: bad depth '" + arg + "'");
    }
    if (used != arg.size()) {
      throw std::invalid_argument("paper-example: bad depth '" + arg + "'");
    }
    return paper_example_field(depth).field;
  }
  throw UnknownFieldName("unknown field '" + std::string(spec) + "'");
}

std::vector<std::string> builtin_field_names() {
  return {"one", "poly", "cont-generic", "paper-example:<depth>", "cantor-stripes"};
}

}  // namespace riemann2d
