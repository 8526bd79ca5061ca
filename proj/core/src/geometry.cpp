#include "riemann2d/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "riemann2d/errors.hpp"

namespace riemann2d {

std::string_view to_string(CellTag tag) {
  switch (tag) {
    case CellTag::FullInside: return "FullInside";
    case CellTag::FullOutside: return "FullOutside";
    case CellTag::Boundary: return "Boundary";
  }
  return "Boundary";
}

CellTag classify_cell(const JordanDomain& domain, const BoundingRect& cell) {
  if (auto tag = domain.cell_tag(cell)) return *tag;

  const double cx = cell.center_x();
  const double cy = cell.center_y();
  const std::array<std::pair<double, double>, 9> probes = {{
      {cell.x_lo, cell.y_lo}, {cell.x_hi, cell.y_lo},
      {cell.x_lo, cell.y_hi}, {cell.x_hi, cell.y_hi},
      {cx, cy},
      {cx, cell.y_lo}, {cx, cell.y_hi},
      {cell.x_lo, cy}, {cell.x_hi, cy},
  }};

  bool any_inside = false;
  bool any_outside = false;
  for (const auto& [px, py] : probes) {
    switch (domain.classify(px, py)) {
      case PointClass::Inside: any_inside = true; break;
      case PointClass::Outside: any_outside = true; break;
      case PointClass::Unknown: return CellTag::Boundary;
    }
    if (any_inside && any_outside) return CellTag::Boundary;
  }
  return any_inside ? CellTag::FullInside : CellTag::FullOutside;
}

// ---------------------------------------------------------------------------
// CellGrid

CellGrid::CellGrid(std::string domain_name, BoundingRect bounds, int level,
                   std::vector<CellTag> tags)
    : domain_name_(std::move(domain_name)),
      bounds_(bounds),
      level_(level),
      tags_(std::move(tags)) {
  const double cell = cell_area();
  std::size_t inside = 0;
  std::size_t boundary = 0;
  for (CellTag t : tags_) {
    if (t == CellTag::FullInside) ++inside;
    else if (t == CellTag::Boundary) ++boundary;
  }
  inner_area_ = static_cast<double>(inside) * cell;
  outer_area_ = inner_area_ + static_cast<double>(boundary) * cell;
}

BoundingRect CellGrid::cell_rect(std::size_t ix, std::size_t iy) const {
  const double n = static_cast<double>(cells_per_axis());
  const double w = bounds_.width() / n;
  const double h = bounds_.height() / n;
  return BoundingRect{bounds_.x_lo + static_cast<double>(ix) * w,
                      bounds_.x_lo + static_cast<double>(ix + 1) * w,
                      bounds_.y_lo + static_cast<double>(iy) * h,
                      bounds_.y_lo + static_cast<double>(iy + 1) * h};
}

std::size_t CellGrid::count(CellTag t) const {
  return static_cast<std::size_t>(std::count(tags_.begin(), tags_.end(), t));
}

CellGrid classify_grid(const JordanDomain& domain, int level, const GridOptions& options) {
  if (level < 0 || level > options.max_level) {
    throw LevelTooDeep("classify_grid: level " + std::to_string(level) +
                       " exceeds max_level " + std::to_string(options.max_level));
  }
  const BoundingRect& b = domain.bounds();
  const std::size_t n = std::size_t{1} << level;
  const double w = b.width() / static_cast<double>(n);
  const double h = b.height() / static_cast<double>(n);

  std::vector<CellTag> tags(n * n);
  for (std::size_t iy = 0; iy < n; ++iy) {
    const double y0 = b.y_lo + static_cast<double>(iy) * h;
    const double y1 = b.y_lo + static_cast<double>(iy + 1) * h;
    for (std::size_t ix = 0; ix < n; ++ix) {
      const BoundingRect cell{b.x_lo + static_cast<double>(ix) * w,
                              b.x_lo + static_cast<double>(ix + 1) * w, y0, y1};
      tags[iy * n + ix] = classify_cell(domain, cell);
    }
  }
  return CellGrid(domain.name(), b, level, std::move(tags));
}

MeasureBounds jordan_measure_bounds(const JordanDomain& domain, int level,
                                    const GridOptions& options) {
  CellGrid grid = classify_grid(domain, level, options);
  return MeasureBounds{grid.inner_area(), grid.outer_area()};
}

// ---------------------------------------------------------------------------
// Interval sets

void normalize(IntervalSet& set) {
  set.erase(std::remove_if(set.begin(), set.end(),
                           [](const Interval& iv) { return !(iv.hi > iv.lo); }),
            set.end());
  std::sort(set.begin(), set.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalSet merged;
  for (const Interval& iv : set) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  set.swap(merged);
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (hi > lo) out.push_back(Interval{lo, hi});
    if (a[i].hi < b[j].hi) ++i;
    else ++j;
  }
  return out;
}

IntervalSet subtract(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t j = 0;
  for (const Interval& iv : a) {
    double cur = iv.lo;
    while (j < b.size() && b[j].hi <= iv.lo) ++j;
    std::size_t k = j;
    while (k < b.size() && b[k].lo < iv.hi && cur < iv.hi) {
      if (b[k].lo > cur) out.push_back(Interval{cur, b[k].lo});
      cur = std::max(cur, b[k].hi);
      ++k;
    }
    if (cur < iv.hi) out.push_back(Interval{cur, iv.hi});
  }
  return out;
}

double total_length(const IntervalSet& set) {
  double sum = 0.0;
  for (const Interval& iv : set) sum += iv.length();
  return sum;
}

// ---------------------------------------------------------------------------
// DyadicPartition

namespace {

std::array<BoundingRect, 4> split_rect(const BoundingRect& r) {
  const double cx = r.center_x();
  const double cy = r.center_y();
  return {BoundingRect{r.x_lo, cx, r.y_lo, cy}, BoundingRect{cx, r.x_hi, r.y_lo, cy},
          BoundingRect{r.x_lo, cx, cy, r.y_hi}, BoundingRect{cx, r.x_hi, cy, r.y_hi}};
}

}  // namespace

struct DyadicPartition::Builder {
  DyadicPartition part;
  // Current boundary leaves; all live at the same level by construction.
  std::vector<std::pair<std::int32_t, BoundingRect>> boundary;
  int level = 0;

  void init(const BoundingRect& bounds, const std::function<CellTag(const BoundingRect&)>& tag) {
    part.bounds_ = bounds;
    const CellTag t = tag(bounds);
    part.nodes_.push_back(Node{-1, t});
    if (t == CellTag::Boundary) boundary.emplace_back(0, bounds);
    part.boundary_area_by_level_.push_back(t == CellTag::Boundary ? bounds.area() : 0.0);
  }

  double boundary_area() const { return part.boundary_area_by_level_[static_cast<std::size_t>(level)]; }

  bool refine_once(const std::function<CellTag(const BoundingRect&)>& tag,
                   std::size_t max_cells) {
    if (boundary.empty()) {
      ++level;
      part.boundary_area_by_level_.push_back(0.0);
      part.depth_ = std::max(part.depth_, level);
      return true;
    }
    if (part.nodes_.size() + 4 * boundary.size() > max_cells) return false;

    std::vector<std::pair<std::int32_t, BoundingRect>> next;
    next.reserve(boundary.size() * 2);
    for (const auto& [idx, rect] : boundary) {
      const std::int32_t first = static_cast<std::int32_t>(part.nodes_.size());
      part.nodes_[static_cast<std::size_t>(idx)].first_child = first;
      for (const BoundingRect& child : split_rect(rect)) {
        const CellTag t = tag(child);
        part.nodes_.push_back(Node{-1, t});
        if (t == CellTag::Boundary) {
          next.emplace_back(static_cast<std::int32_t>(part.nodes_.size() - 1), child);
        }
      }
    }
    boundary.swap(next);
    ++level;
    part.depth_ = std::max(part.depth_, level);
    const double cell_area = part.bounds_.area() / std::pow(4.0, level);
    part.boundary_area_by_level_.push_back(static_cast<double>(boundary.size()) * cell_area);
    return true;
  }
};

double DyadicPartition::boundary_area_at(int level) const {
  if (level < 0) return bounds_.area();
  const std::size_t i = static_cast<std::size_t>(level);
  if (i < boundary_area_by_level_.size()) return boundary_area_by_level_[i];
  return boundary_area_by_level_.back();
}

void DyadicPartition::collect_column(double x, int cutoff,
                                     std::vector<ColumnCell>& out) const {
  if (nodes_.empty()) return;
  auto rec = [&](auto&& self, std::int32_t idx, const BoundingRect& rect, int level) -> void {
    if (x < rect.x_lo || x > rect.x_hi) return;
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    if (node.first_child < 0 || level >= cutoff) {
      out.push_back(ColumnCell{rect, node.tag, level, x > rect.x_lo, x < rect.x_hi});
      return;
    }
    const auto children = split_rect(rect);
    const double cx = rect.center_x();
    if (x <= cx) {
      self(self, node.first_child + 0, children[0], level + 1);
      self(self, node.first_child + 2, children[2], level + 1);
    }
    if (x >= cx) {
      self(self, node.first_child + 1, children[1], level + 1);
      self(self, node.first_child + 3, children[3], level + 1);
    }
  };
  rec(rec, 0, bounds_, 0);
}

std::vector<BoundingRect> DyadicPartition::boundary_cells_at(int cutoff) const {
  std::vector<BoundingRect> out;
  if (nodes_.empty()) return out;
  auto rec = [&](auto&& self, std::int32_t idx, const BoundingRect& rect, int level) -> void {
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    if (node.tag != CellTag::Boundary) return;
    if (level >= cutoff || node.first_child < 0) {
      if (level == cutoff && node.tag == CellTag::Boundary) out.push_back(rect);
      return;
    }
    const auto children = split_rect(rect);
    for (int c = 0; c < 4; ++c) self(self, node.first_child + c, children[c], level + 1);
  };
  rec(rec, 0, bounds_, 0);
  return out;
}

bool DyadicPartition::boundary_covers(double x, double y, int cutoff) const {
  if (nodes_.empty()) return false;
  auto rec = [&](auto&& self, std::int32_t idx, const BoundingRect& rect, int level) -> bool {
    if (!rect.contains(x, y)) return false;
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    if (level >= cutoff) return node.tag == CellTag::Boundary;
    if (node.first_child < 0) return false;
    const auto children = split_rect(rect);
    for (int c = 0; c < 4; ++c) {
      if (self(self, node.first_child + c, children[c], level + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, bounds_, 0);
}

std::optional<std::pair<double, double>> DyadicPartition::full_inside_x_extent() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  if (nodes_.empty()) return std::nullopt;
  auto rec = [&](auto&& self, std::int32_t idx, const BoundingRect& rect) -> void {
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    if (node.tag == CellTag::FullInside) {
      lo = std::min(lo, rect.x_lo);
      hi = std::max(hi, rect.x_hi);
      return;
    }
    if (node.first_child < 0) return;
    const auto children = split_rect(rect);
    for (int c = 0; c < 4; ++c) self(self, node.first_child + c, children[c]);
  };
  rec(rec, 0, bounds_);
  if (!(lo < hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

// ---------------------------------------------------------------------------
// EpsCover / EpsLadder

EpsCover::EpsCover(std::shared_ptr<const DyadicPartition> partition, int level,
                   double total_area, double eps_target)
    : partition_(std::move(partition)),
      level_(level),
      total_area_(total_area),
      eps_target_(eps_target) {}

std::vector<BoundingRect> EpsCover::squares() const {
  return partition_->boundary_cells_at(level_);
}

bool EpsCover::covers_point(double x, double y) const {
  return partition_->boundary_covers(x, y, level_);
}

IntervalSet EpsCover::y_intervals_at(double x) const {
  std::vector<DyadicPartition::ColumnCell> column;
  partition_->collect_column(x, level_, column);
  IntervalSet cover;
  for (const auto& cell : column) {
    if (cell.tag == CellTag::Boundary) cover.push_back(Interval{cell.rect.y_lo, cell.rect.y_hi});
  }
  normalize(cover);
  return cover;
}

SliceSet slice_partition(const DyadicPartition& partition, int cutoff, double x,
                         double eps) {
  SliceSet result;
  result.x = x;
  result.eps = eps;

  std::vector<DyadicPartition::ColumnCell> column;
  partition.collect_column(x, cutoff, column);

  // The interior certified by full-inside cells is the interior of their
  // union, so a point on a shared vertical edge needs coverage on both sides.
  IntervalSet left;
  IntervalSet right;
  IntervalSet cover;
  for (const auto& cell : column) {
    const Interval iv{cell.rect.y_lo, cell.rect.y_hi};
    if (cell.tag == CellTag::FullInside) {
      if (cell.left_of_line) left.push_back(iv);
      if (cell.right_of_line) right.push_back(iv);
    } else if (cell.tag == CellTag::Boundary) {
      cover.push_back(iv);
    }
  }
  normalize(left);
  normalize(right);
  normalize(cover);
  result.intervals = subtract(intersect(left, right), cover);
  result.covered = std::move(cover);
  return result;
}

EpsLadder EpsLadder::build_classified(const BoundingRect& bounds,
                                      const std::function<CellTag(const BoundingRect&)>& tagger,
                                      std::span<const double> eps_seq,
                                      const GridOptions& options) {
  for (std::size_t i = 0; i < eps_seq.size(); ++i) {
    if (!(eps_seq[i] > 0.0)) throw std::invalid_argument("eps values must be positive");
    if (i > 0 && !(eps_seq[i] < eps_seq[i - 1])) {
      throw std::invalid_argument("eps sequence must be strictly decreasing");
    }
  }

  auto part = std::make_shared<DyadicPartition>();
  DyadicPartition::Builder builder;
  builder.init(bounds, tagger);

  EpsLadder ladder;
  bool stuck = false;
  for (double eps : eps_seq) {
    while (!stuck && builder.boundary_area() >= eps) {
      if (builder.level >= options.max_level) { stuck = true; break; }
      if (!builder.refine_once(tagger, options.max_cover_cells)) { stuck = true; break; }
    }
    if (stuck && builder.boundary_area() >= eps) break;
    ladder.rungs_.push_back(Rung{eps, builder.level, builder.boundary_area()});
  }

  *part = std::move(builder.part);
  ladder.partition_ = std::move(part);
  return ladder;
}

EpsLadder EpsLadder::build(const JordanDomain& domain, std::span<const double> eps_seq,
                           const GridOptions& options) {
  auto tagger = [&domain](const BoundingRect& cell) { return classify_cell(domain, cell); };
  return build_classified(domain.bounds(), tagger, eps_seq, options);
}

EpsCover EpsLadder::cover_at(std::size_t i) const {
  const Rung& r = rungs_.at(i);
  return EpsCover(partition_, r.level, r.boundary_area, r.eps);
}

SliceSet EpsLadder::slice_at(double x, std::size_t i) const {
  const Rung& r = rungs_.at(i);
  return slice_partition(*partition_, r.level, x, r.eps);
}

std::optional<std::pair<double, double>> EpsLadder::full_inside_x_extent() const {
  auto extent = partition_->full_inside_x_extent();
  if (!extent) return std::nullopt;
  const BoundingRect& b = partition_->bounds();
  const double pad = b.width() / std::pow(2.0, partition_->depth());
  return std::make_pair(std::max(b.x_lo, extent->first - pad),
                        std::min(b.x_hi, extent->second + pad));
}

EpsCover build_eps_cover(const JordanDomain& domain, double eps, const GridOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("build_eps_cover: eps must be positive");
  const double seq[1] = {eps};
  EpsLadder ladder = EpsLadder::build(domain, seq, options);
  if (ladder.rung_count() == 0) {
    throw CoverNotAchievable("boundary of '" + domain.name() +
                             "' not resolvable below area " + std::to_string(eps));
  }
  return ladder.cover_at(0);
}

SliceSet slice(const JordanDomain& domain, const EpsCover& cover, double x) {
  (void)domain;  // the cover's generating partition carries all geometry
  return slice_partition(cover.partition(), cover.level(), x, cover.eps_target());
}

double slice_limit_measure(const JordanDomain& domain, double x,
                           std::span<const double> eps_seq, const GridOptions& options) {
  EpsLadder ladder = EpsLadder::build(domain, eps_seq, options);
  if (ladder.rung_count() == 0) {
    throw CoverNotAchievable("slice_limit_measure: no cover achievable for '" +
                             domain.name() + "'");
  }
  double last = 0.0;
  for (std::size_t i = 0; i < ladder.rung_count(); ++i) {
    last = ladder.slice_at(x, i).total_length();
  }
  return last;
}

// ---------------------------------------------------------------------------
// Built-in domains

namespace {

class RectDomain final : public JordanDomain {
public:
  explicit RectDomain(const BoundingRect& r) : rect_(r) {
    if (!r.valid()) throw std::invalid_argument("rect domain: empty rectangle");
  }

  PointClass classify(double x, double y) const override {
    if (x > rect_.x_lo && x < rect_.x_hi && y > rect_.y_lo && y < rect_.y_hi) {
      return PointClass::Inside;
    }
    if (x < rect_.x_lo || x > rect_.x_hi || y < rect_.y_lo || y > rect_.y_hi) {
      return PointClass::Outside;
    }
    return PointClass::Unknown;
  }

  const BoundingRect& bounds() const override { return rect_; }
  const std::string& name() const override { return name_; }

  std::optional<CellTag> cell_tag(const BoundingRect& cell) const override {
    if (rect_.contains_rect(cell)) return CellTag::FullInside;
    if (cell.x_hi <= rect_.x_lo || cell.x_lo >= rect_.x_hi || cell.y_hi <= rect_.y_lo ||
        cell.y_lo >= rect_.y_hi) {
      return CellTag::FullOutside;
    }
    return CellTag::Boundary;
  }

private:
  BoundingRect rect_;
  std::string name_ = "rect";
};

class DiskDomain final : public JordanDomain {
public:
  DiskDomain(double cx, double cy, double r) : cx_(cx), cy_(cy), r2_(r * r) {
    if (!(r > 0.0)) throw std::invalid_argument("disk domain: radius must be positive");
    bounds_ = BoundingRect{cx - r, cx + r, cy - r, cy + r};
  }

  PointClass classify(double x, double y) const override {
    const double d2 = (x - cx_) * (x - cx_) + (y - cy_) * (y - cy_);
    if (d2 < r2_) return PointClass::Inside;
    if (d2 > r2_) return PointClass::Outside;
    return PointClass::Unknown;
  }

  const BoundingRect& bounds() const override { return bounds_; }
  const std::string& name() const override { return name_; }

  std::optional<CellTag> cell_tag(const BoundingRect& cell) const override {
    const auto [dmin2, dmax2] = distance_range(cell);
    if (dmax2 <= r2_) return CellTag::FullInside;
    if (dmin2 >= r2_) return CellTag::FullOutside;
    return CellTag::Boundary;
  }

private:
  std::pair<double, double> distance_range(const BoundingRect& cell) const {
    const double nx = std::clamp(cx_, cell.x_lo, cell.x_hi);
    const double ny = std::clamp(cy_, cell.y_lo, cell.y_hi);
    const double dmin2 = (nx - cx_) * (nx - cx_) + (ny - cy_) * (ny - cy_);
    const double fx = std::max(std::abs(cell.x_lo - cx_), std::abs(cell.x_hi - cx_));
    const double fy = std::max(std::abs(cell.y_lo - cy_), std::abs(cell.y_hi - cy_));
    return {dmin2, fx * fx + fy * fy};
  }

  double cx_, cy_, r2_;
  BoundingRect bounds_;
  std::string name_ = "disk";
};

class AnnulusDomain final : public JordanDomain {
public:
  AnnulusDomain(double r_inner, double r_outer)
      : ri2_(r_inner * r_inner), ro2_(r_outer * r_outer) {
    if (!(0.0 < r_inner && r_inner < r_outer)) {
      throw std::invalid_argument("annulus domain: need 0 < r_inner < r_outer");
    }
    bounds_ = BoundingRect{-r_outer, r_outer, -r_outer, r_outer};
  }

  PointClass classify(double x, double y) const override {
    const double d2 = x * x + y * y;
    if (d2 > ri2_ && d2 < ro2_) return PointClass::Inside;
    if (d2 < ri2_ || d2 > ro2_) return PointClass::Outside;
    return PointClass::Unknown;
  }

  const BoundingRect& bounds() const override { return bounds_; }
  const std::string& name() const override { return name_; }

  std::optional<CellTag> cell_tag(const BoundingRect& cell) const override {
    const double nx = std::clamp(0.0, cell.x_lo, cell.x_hi);
    const double ny = std::clamp(0.0, cell.y_lo, cell.y_hi);
    const double dmin2 = nx * nx + ny * ny;
    const double fx = std::max(std::abs(cell.x_lo), std::abs(cell.x_hi));
    const double fy = std::max(std::abs(cell.y_lo), std::abs(cell.y_hi));
    const double dmax2 = fx * fx + fy * fy;
    if (dmax2 <= ro2_ && dmin2 >= ri2_) return CellTag::FullInside;
    if (dmin2 >= ro2_ || dmax2 <= ri2_) return CellTag::FullOutside;
    return CellTag::Boundary;
  }

private:
  double ri2_, ro2_;
  BoundingRect bounds_;
  std::string name_ = "annulus";
};

bool segment_meets_open_rect(double ax, double ay, double bx, double by,
                             const BoundingRect& rect) {
  const double dx = bx - ax;
  const double dy = by - ay;
  double t0 = 0.0;
  double t1 = 1.0;
  auto clip = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;
    const double r = q / p;
    if (p < 0.0) {
      if (r > t1) return false;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
    return true;
  };
  if (!clip(-dx, ax - rect.x_lo)) return false;
  if (!clip(dx, rect.x_hi - ax)) return false;
  if (!clip(-dy, ay - rect.y_lo)) return false;
  if (!clip(dy, rect.y_hi - ay)) return false;
  if (t0 > t1) return false;
  const double tm = 0.5 * (t0 + t1);
  const double mx = ax + tm * dx;
  const double my = ay + tm * dy;
  return mx > rect.x_lo && mx < rect.x_hi && my > rect.y_lo && my < rect.y_hi;
}

class PolygonDomain final : public JordanDomain {
public:
  PolygonDomain(std::vector<double> xy, std::string name) : name_(std::move(name)) {
    if (xy.size() < 6 || xy.size() % 2 != 0) {
      throw std::invalid_argument("polygon domain: need at least 3 x,y vertex pairs");
    }
    for (std::size_t i = 0; i + 1 < xy.size(); i += 2) {
      vx_.push_back(xy[i]);
      vy_.push_back(xy[i + 1]);
    }
    bounds_ = BoundingRect{*std::min_element(vx_.begin(), vx_.end()),
                           *std::max_element(vx_.begin(), vx_.end()),
                           *std::min_element(vy_.begin(), vy_.end()),
                           *std::max_element(vy_.begin(), vy_.end())};
    if (!bounds_.valid()) throw std::invalid_argument("polygon domain: degenerate vertex set");
  }

  PointClass classify(double x, double y) const override {
    bool inside = false;
    const std::size_t n = vx_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const double ax = vx_[j], ay = vy_[j], bx = vx_[i], by = vy_[i];
      const double cross = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
      if (cross == 0.0 && x >= std::min(ax, bx) && x <= std::max(ax, bx) &&
          y >= std::min(ay, by) && y <= std::max(ay, by)) {
        return PointClass::Unknown;  // exactly on an edge
      }
      if ((ay > y) != (by > y)) {
        const double xi = ax + (y - ay) * (bx - ax) / (by - ay);
        if (x < xi) inside = !inside;
      }
    }
    return inside ? PointClass::Inside : PointClass::Outside;
  }

  const BoundingRect& bounds() const override { return bounds_; }
  const std::string& name() const override { return name_; }

  std::optional<CellTag> cell_tag(const BoundingRect& cell) const override {
    const std::size_t n = vx_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      if (segment_meets_open_rect(vx_[j], vy_[j], vx_[i], vy_[i], cell)) {
        return CellTag::Boundary;
      }
    }
    // No edge crosses the open cell, so the whole cell sits on one side.
    switch (classify(cell.center_x(), cell.center_y())) {
      case PointClass::Inside: return CellTag::FullInside;
      case PointClass::Outside: return CellTag::FullOutside;
      case PointClass::Unknown: return CellTag::Boundary;
    }
    return CellTag::Boundary;
  }

private:
  std::vector<double> vx_, vy_;
  BoundingRect bounds_;
  std::string name_;
};

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token(text.substr(pos, comma - pos));
    if (token.empty()) throw std::invalid_argument("empty numeric argument");
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad numeric argument '" + token + "'");
    out.push_back(v);
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::shared_ptr<const JordanDomain> make_rect_domain(const BoundingRect& rect) {
  return std::make_shared<RectDomain>(rect);
}

std::shared_ptr<const JordanDomain> make_disk_domain(double cx, double cy, double radius) {
  return std::make_shared<DiskDomain>(cx, cy, radius);
}

std::shared_ptr<const JordanDomain> make_annulus_domain(double r_inner, double r_outer) {
  return std::make_shared<AnnulusDomain>(r_inner, r_outer);
}

std::shared_ptr<const JordanDomain> make_polygon_domain(std::vector<double> xy_pairs,
                                                        std::string name) {
  return std::make_shared<PolygonDomain>(std::move(xy_pairs), std::move(name));
}

std::shared_ptr<const JordanDomain> lshape_domain() {
  return make_polygon_domain({0, 0, 2, 0, 2, 2, 1, 2, 1, 1, 0, 1}, "lshape");
}

std::shared_ptr<const JordanDomain> make_domain(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (head == "rect") {
    const auto v = parse_numbers(args);
    if (v.size() != 4) throw std::invalid_argument("rect domain: expected x0,y0,x1,y1");
    return make_rect_domain(BoundingRect{v[0], v[2], v[1], v[3]});
  }
  if (head == "disk") {
    if (args.empty()) return make_disk_domain(0.0, 0.0, 1.0);
    const auto v = parse_numbers(args);
    if (v.size() == 1) return make_disk_domain(0.0, 0.0, v[0]);
    if (v.size() == 3) return make_disk_domain(v[0], v[1], v[2]);
    throw std::invalid_argument("disk domain: expected r or cx,cy,r");
  }
  if (head == "annulus") {
    if (args.empty()) return make_annulus_domain(0.5, 1.0);
    const auto v = parse_numbers(args);
    if (v.size() != 2) throw std::invalid_argument("annulus domain: expected r_in,r_out");
    return make_annulus_domain(v[0], v[1]);
  }
  if (head == "lshape") {
    if (!args.empty()) throw std::invalid_argument("lshape domain takes no arguments");
    return lshape_domain();
  }
  if (head == "polygon") {
    return make_polygon_domain(parse_numbers(args));
  }
  throw UnknownDomainName("unknown domain '" + std::string(head) + "'");
}

std::vector<std::string> builtin_domain_names() {
  return {"rect:x0,y0,x1,y1", "disk[:r|cx,cy,r]", "annulus[:r_in,r_out]", "lshape",
          "polygon:x0,y0,x1,y1,..."};
}

}  // namespace riemann2d
