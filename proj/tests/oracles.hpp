#pragma once

// Brute-force oracles for the test suites. Everything here recomputes
// expected values along an independent path: explicit interval lists built by
// recursion, exhaustive per-cell geometry, closed-form calculus.

#include <cmath>
#include <utility>
#include <vector>

#include "riemann2d/geometry.hpp"

namespace oracle {

using riemann2d::BoundingRect;
using riemann2d::Interval;

// --- fat Cantor set -------------------------------------------------------

// Explicit retained-interval list: step n removes a centered open interval of
// length base*4^-n from each surviving interval.
inline void fat_cantor_rec(double lo, double hi, double base, int step, int depth,
                           std::vector<Interval>& out) {
  if (step > depth) {
    out.push_back(Interval{lo, hi});
    return;
  }
  const double gap = base * std::pow(4.0, -step);
  const double mid = 0.5 * (lo + hi);
  fat_cantor_rec(lo, mid - 0.5 * gap, base, step + 1, depth, out);
  fat_cantor_rec(mid + 0.5 * gap, hi, base, step + 1, depth, out);
}

inline std::vector<Interval> fat_cantor_intervals(double lo, double hi, int depth) {
  std::vector<Interval> out;
  fat_cantor_rec(lo, hi, hi - lo, 1, depth, out);
  return out;
}

inline bool in_interval_list(const std::vector<Interval>& list, double y) {
  for (const Interval& iv : list) {
    if (y >= iv.lo && y <= iv.hi) return true;
  }
  return false;
}

inline bool list_meets(const std::vector<Interval>& list, double a, double b) {
  for (const Interval& iv : list) {
    if (b >= iv.lo && a <= iv.hi) return true;
  }
  return false;
}

inline bool list_contains_interval(const std::vector<Interval>& list, double a, double b) {
  for (const Interval& iv : list) {
    if (a >= iv.lo && b <= iv.hi) return true;
  }
  return false;
}

inline double list_measure(const std::vector<Interval>& list) {
  double sum = 0.0;
  for (const Interval& iv : list) sum += iv.hi - iv.lo;
  return sum;
}

// 1D Darboux envelope of the counterexample line function f(1, .) on
// [y_lo, y_hi] within [1,2], straight from the explicit interval list.
inline std::pair<double, double> counterexample_envelope(const std::vector<Interval>& cantor,
                                                         double y_lo, double y_hi,
                                                         int level) {
  const long pieces = 1L << level;
  const double h = (y_hi - y_lo) / static_cast<double>(pieces);
  double lower = 0.0;
  double upper = 0.0;
  for (long i = 0; i < pieces; ++i) {
    const double a = y_lo + static_cast<double>(i) * h;
    const double b = (i + 1 == pieces) ? y_hi : y_lo + static_cast<double>(i + 1) * h;
    const double inf = list_meets(cantor, a, b) ? -2.0 : -1.0;
    const double sup = list_contains_interval(cantor, a, b) ? -2.0 : -1.0;
    lower += inf * (b - a);
    upper += sup * (b - a);
  }
  return {lower, upper};
}

// --- disk geometry --------------------------------------------------------

inline double chord_length(double r, double x) {
  return std::abs(x) >= r ? 0.0 : 2.0 * std::sqrt(r * r - x * x);
}

// Exhaustive inner/outer grid measure of the disk of radius r centered at the
// origin, classified per cell by exact distance extremes.
inline std::pair<double, double> disk_measure(double r, const BoundingRect& bounds,
                                              int level) {
  const long n = 1L << level;
  const double w = bounds.width() / static_cast<double>(n);
  const double h = bounds.height() / static_cast<double>(n);
  const double cell = w * h;
  double inner = 0.0;
  double outer = 0.0;
  for (long iy = 0; iy < n; ++iy) {
    for (long ix = 0; ix < n; ++ix) {
      const double x0 = bounds.x_lo + ix * w;
      const double x1 = bounds.x_lo + (ix + 1) * w;
      const double y0 = bounds.y_lo + iy * h;
      const double y1 = bounds.y_lo + (iy + 1) * h;
      const double nx = x0 > 0.0 ? x0 : (x1 < 0.0 ? x1 : 0.0);
      const double ny = y0 > 0.0 ? y0 : (y1 < 0.0 ? y1 : 0.0);
      const double fx = std::max(std::abs(x0), std::abs(x1));
      const double fy = std::max(std::abs(y0), std::abs(y1));
      const double dmin2 = nx * nx + ny * ny;
      const double dmax2 = fx * fx + fy * fy;
      if (dmax2 <= r * r) {
        inner += cell;
        outer += cell;
      } else if (dmin2 < r * r) {
        outer += cell;
      }
    }
  }
  return {inner, outer};
}

// --- axis-aligned rectangle unions (L-shape oracle) -------------------------

inline double rect_overlap_area(const BoundingRect& a, const BoundingRect& b) {
  const double w = std::min(a.x_hi, b.x_hi) - std::max(a.x_lo, b.x_lo);
  const double h = std::min(a.y_hi, b.y_hi) - std::max(a.y_lo, b.y_lo);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

// Inner/outer grid measure of a disjoint union of axis-aligned rectangles.
inline std::pair<double, double> rect_union_measure(const std::vector<BoundingRect>& parts,
                                                    const BoundingRect& bounds, int level) {
  const long n = 1L << level;
  const double w = bounds.width() / static_cast<double>(n);
  const double h = bounds.height() / static_cast<double>(n);
  const double cell = w * h;
  double inner = 0.0;
  double outer = 0.0;
  for (long iy = 0; iy < n; ++iy) {
    for (long ix = 0; ix < n; ++ix) {
      const BoundingRect c{bounds.x_lo + ix * w, bounds.x_lo + (ix + 1) * w,
                           bounds.y_lo + iy * h, bounds.y_lo + (iy + 1) * h};
      double covered = 0.0;
      for (const BoundingRect& p : parts) covered += rect_overlap_area(c, p);
      if (covered >= cell - 1e-12 * cell) {
        inner += cell;
        outer += cell;
      } else if (covered > 0.0) {
        outer += cell;
      }
    }
  }
  return {inner, outer};
}

inline std::vector<BoundingRect> lshape_parts() {
  return {BoundingRect{0.0, 2.0, 0.0, 1.0}, BoundingRect{1.0, 2.0, 1.0, 2.0}};
}

}  // namespace oracle
