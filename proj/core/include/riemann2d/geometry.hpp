#pragma once

// Planar Jordan domains represented by point classifiers, dyadic cell
// classification grids, boundary covers of small total area, and vertical
// slices extracted as finite interval unions.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riemann2d {

struct BoundingRect {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;

  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  double area() const { return width() * height(); }
  double center_x() const { return 0.5 * (x_lo + x_hi); }
  double center_y() const { return 0.5 * (y_lo + y_hi); }

  bool valid() const { return x_lo < x_hi && y_lo < y_hi; }
  bool contains(double x, double y) const {
    return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
  }
  bool contains_rect(const BoundingRect& r) const {
    return r.x_lo >= x_lo && r.x_hi <= x_hi && r.y_lo >= y_lo && r.y_hi <= y_hi;
  }
};

enum class PointClass : std::uint8_t { Inside, Outside, Unknown };
enum class CellTag : std::uint8_t { FullInside, FullOutside, Boundary };

std::string_view to_string(CellTag tag);

/// A bounded planar domain given by a pure point classifier plus a bounding
/// rectangle. Inside answers are points of the interior, Outside answers are
/// points of the complement's interior; Unknown is reserved for points the
/// classifier cannot separate from the boundary.
class JordanDomain {
public:
  virtual ~JordanDomain() = default;

  virtual PointClass classify(double x, double y) const = 0;
  virtual const BoundingRect& bounds() const = 0;
  virtual const std::string& name() const = 0;

  // Optional exact cell-intersection test. Built-in domains implement this;
  // probe-based classification is the fallback.
  virtual std::optional<CellTag> cell_tag(const BoundingRect& cell) const {
    (void)cell;
    return std::nullopt;
  }
};

// Tag one cell: the domain's exact test when present, otherwise the 9-probe
// rule (corners, center, edge midpoints; any Unknown forces Boundary).
CellTag classify_cell(const JordanDomain& domain, const BoundingRect& cell);

struct GridOptions {
  int max_level = 24;                     // dyadic coordinates stay exact in doubles
  std::size_t max_cover_cells = 4'000'000;  // refinement abort budget for covers
};

struct Cell {
  BoundingRect rect;
  int level = 0;
  CellTag tag = CellTag::Boundary;
};

/// Uniform dyadic partition of a domain's bounding rectangle with per-cell
/// tags. Cells are indexed (ix, iy) with 2^level cells per axis.
class CellGrid {
public:
  CellGrid(std::string domain_name, BoundingRect bounds, int level,
           std::vector<CellTag> tags);

  int level() const { return level_; }
  std::size_t cells_per_axis() const { return std::size_t{1} << level_; }
  std::size_t cell_count() const { return tags_.size(); }
  const BoundingRect& bounds() const { return bounds_; }
  const std::string& domain_name() const { return domain_name_; }

  CellTag tag(std::size_t ix, std::size_t iy) const {
    return tags_[iy * cells_per_axis() + ix];
  }
  BoundingRect cell_rect(std::size_t ix, std::size_t iy) const;
  Cell cell(std::size_t ix, std::size_t iy) const {
    return Cell{cell_rect(ix, iy), level_, tag(ix, iy)};
  }

  double cell_area() const { return bounds_.area() / static_cast<double>(cell_count()); }
  double inner_area() const { return inner_area_; }
  double outer_area() const { return outer_area_; }
  std::size_t count(CellTag t) const;

private:
  std::string domain_name_;
  BoundingRect bounds_;
  int level_;
  std::vector<CellTag> tags_;
  double inner_area_ = 0.0;
  double outer_area_ = 0.0;
};

CellGrid classify_grid(const JordanDomain& domain, int level,
                       const GridOptions& options = {});

struct MeasureBounds {
  double inner = 0.0;
  double outer = 0.0;
};

// Inner/outer Jordan-measure bracket at the given grid level.
MeasureBounds jordan_measure_bounds(const JordanDomain& domain, int level,
                                    const GridOptions& options = {});

// ---------------------------------------------------------------------------
// Interval sets (sorted disjoint closed intervals on a line).

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

using IntervalSet = std::vector<Interval>;

// Sort, merge overlapping/touching intervals, drop empty ones.
void normalize(IntervalSet& set);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet subtract(const IntervalSet& a, const IntervalSet& b);
double total_length(const IntervalSet& set);

// ---------------------------------------------------------------------------
// Adaptive dyadic partition shared by boundary covers and slice extraction.
//
// Only Boundary-tagged cells are ever split, so FullInside/FullOutside nodes
// are always leaves and the Boundary nodes at a given level coincide with the
// Boundary cells of the uniform grid at that level (for exact cell tags).

class DyadicPartition {
public:
  struct ColumnCell {
    BoundingRect rect;
    CellTag tag;
    int level;
    bool left_of_line;   // the vertical line touches or crosses this cell from the right
    bool right_of_line;  // ... from the left
  };

  const BoundingRect& bounds() const { return bounds_; }
  int depth() const { return depth_; }
  std::size_t node_count() const { return nodes_.size(); }

  // Total area of Boundary cells at a uniform cutoff level.
  double boundary_area_at(int level) const;

  // All cells whose closed x-extent contains x, stopping descent at `cutoff`.
  void collect_column(double x, int cutoff, std::vector<ColumnCell>& out) const;

  std::vector<BoundingRect> boundary_cells_at(int cutoff) const;
  bool boundary_covers(double x, double y, int cutoff) const;

  // x-range spanned by FullInside cells (nullopt if there are none).
  std::optional<std::pair<double, double>> full_inside_x_extent() const;

  // Builder used by geometry and analysis refiners.
  struct Builder;

private:
  struct Node {
    std::int32_t first_child = -1;  // children occupy [first_child, first_child+4)
    CellTag tag = CellTag::Boundary;
  };

  BoundingRect bounds_;
  std::vector<Node> nodes_;
  std::vector<double> boundary_area_by_level_;
  int depth_ = 0;
};

/// Finite family of closed axis-aligned cells covering the boundary (or a
/// discontinuity set) with total area below eps_target. The cells are the
/// Boundary cells of the generating partition at a single level, so none
/// contains another.
class EpsCover {
public:
  EpsCover(std::shared_ptr<const DyadicPartition> partition, int level,
           double total_area, double eps_target);

  double total_area() const { return total_area_; }
  double eps_target() const { return eps_target_; }
  int level() const { return level_; }
  const DyadicPartition& partition() const { return *partition_; }

  std::vector<BoundingRect> squares() const;
  bool covers_point(double x, double y) const;
  IntervalSet y_intervals_at(double x) const;

private:
  std::shared_ptr<const DyadicPartition> partition_;
  int level_;
  double total_area_;
  double eps_target_;
};

/// Vertical slice at abscissa x: the y-intervals of the domain interior that
/// survive after removing a boundary cover. eps == 0 marks a limit-set slice.
/// `covered` holds the cover's y-intervals on the same line; any interior
/// point of the line missing from `intervals` lies under them.
struct SliceSet {
  double x = 0.0;
  double eps = 0.0;
  IntervalSet intervals;
  IntervalSet covered;

  double total_length() const { return riemann2d::total_length(intervals); }
  double covered_length() const { return riemann2d::total_length(covered); }
  bool empty() const { return intervals.empty(); }
};

/// Covers for a whole decreasing epsilon sequence sharing one partition.
class EpsLadder {
public:
  struct Rung {
    double eps = 0.0;
    int level = 0;
    double boundary_area = 0.0;
  };

  static EpsLadder build(const JordanDomain& domain, std::span<const double> eps_seq,
                         const GridOptions& options = {});

  // Generic variant used by the discontinuity analyzer: `tagger` assigns a
  // tag to every cell of the bounding rectangle.
  static EpsLadder build_classified(const BoundingRect& bounds,
                                    const std::function<CellTag(const BoundingRect&)>& tagger,
                                    std::span<const double> eps_seq,
                                    const GridOptions& options = {});

  std::size_t rung_count() const { return rungs_.size(); }
  const Rung& rung(std::size_t i) const { return rungs_[i]; }
  const DyadicPartition& partition() const { return *partition_; }

  EpsCover cover_at(std::size_t i) const;
  SliceSet slice_at(double x, std::size_t i) const;

  // FullInside x-extent padded by one finest-level cell width and clamped to
  // the bounding rectangle; nullopt when no interior cell was found.
  std::optional<std::pair<double, double>> full_inside_x_extent() const;

private:
  std::shared_ptr<const DyadicPartition> partition_;
  std::vector<Rung> rungs_;
};

EpsCover build_eps_cover(const JordanDomain& domain, double eps,
                         const GridOptions& options = {});

SliceSet slice(const JordanDomain& domain, const EpsCover& cover, double x);

// Slice length at the last achievable epsilon of the sequence.
double slice_limit_measure(const JordanDomain& domain, double x,
                           std::span<const double> eps_seq,
                           const GridOptions& options = {});

// Slice of a partition without going through a domain (shared machinery).
SliceSet slice_partition(const DyadicPartition& partition, int cutoff, double x,
                         double eps);

// ---------------------------------------------------------------------------
// Built-in domain catalog.

std::shared_ptr<const JordanDomain> make_rect_domain(const BoundingRect& rect);
std::shared_ptr<const JordanDomain> make_disk_domain(double cx, double cy, double radius);
std::shared_ptr<const JordanDomain> make_annulus_domain(double r_inner, double r_outer);
std::shared_ptr<const JordanDomain> make_polygon_domain(std::vector<double> xy_pairs,
                                                        std::string name = "polygon");

// The L-shaped union of [0,2]x[0,1] and [1,2]x[1,2].
std::shared_ptr<const JordanDomain> lshape_domain();

// Parse "rect:x0,y0,x1,y1", "disk", "disk:r", "disk:cx,cy,r",
// "annulus:r_in,r_out", "lshape", "polygon:x0,y0,x1,y1,...".
std::shared_ptr<const JordanDomain> make_domain(std::string_view spec);
std::vector<std::string> builtin_domain_names();

}  // namespace riemann2d
