#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "riemann2d/analysis.hpp"
#include "riemann2d/errors.hpp"

using namespace riemann2d;

namespace {

// Unit step across the diagonal y = x with exact per-cell ranges.
class DiagonalStep final : public ScalarField2D {
public:
  double eval(double x, double y) const override { return y > x ? 1.0 : 0.0; }
  double bound() const override { return 1.0; }
  const BoundingRect& rect() const override { return rect_; }
  const std::string& name() const override { return name_; }
  std::optional<std::pair<double, double>> cell_range(const BoundingRect& c) const override {
    if (c.y_lo > c.x_hi) return std::make_pair(1.0, 1.0);   // fully above
    if (c.y_hi <= c.x_lo) return std::make_pair(0.0, 0.0);  // fully below or on
    return std::make_pair(0.0, 1.0);
  }

private:
  BoundingRect rect_{0.0, 1.0, 0.0, 1.0};
  std::string name_ = "diag-step";
};

}  // namespace

TEST_CASE("oscillation map of a constant field is empty") {
  auto one = make_field("one");
  OscillationMap map = oscillation_map(*one, BoundingRect{0, 1, 0, 1}, 6, 0.5);
  CHECK(map.flagged_cells.empty());
  CHECK(map.flagged_area == 0.0);
}

TEST_CASE("oscillation map flags the counterexample seam band") {
  auto f = make_field("paper-example:4");
  const BoundingRect rect{0, 2, 0, 2};
  OscillationMap map = oscillation_map(*f, rect, 8, 0.5);
  CHECK(!map.flagged_cells.empty());
  CHECK(map.flagged_area <= 2.0 * 2.0 * std::ldexp(1.0, -8) * 2.0);
  const double w = rect.width() / std::ldexp(1.0, 8);
  for (const FlaggedCell& c : map.flagged_cells) {
    CHECK(c.rect.x_lo <= 1.0 + 1e-12);
    CHECK(c.rect.x_hi >= 1.0 - 1e-12);
    CHECK(c.rect.x_hi - c.rect.x_lo == doctest::Approx(w));
    CHECK(c.rect.y_hi >= 1.0 - w - 1e-12);
    CHECK(c.oscillation >= 1.0);
  }
}

TEST_CASE("oscillation map of a diagonal step shrinks with the level") {
  DiagonalStep f;
  double prev = 1e300;
  for (int level : {4, 5, 6, 7}) {
    OscillationMap map = oscillation_map(f, f.rect(), level, 0.5);
    CHECK(map.flagged_area <= 3.0 * std::ldexp(1.0, -level));
    CHECK(map.flagged_area <= prev + 1e-12);
    prev = map.flagged_area;
  }
}

TEST_CASE("flagged cells shrink as delta grows") {
  auto f = make_field("paper-example:4");
  const BoundingRect rect{0, 2, 0, 2};
  OscillationMap fine = oscillation_map(*f, rect, 7, 0.25);
  OscillationMap coarse = oscillation_map(*f, rect, 7, 1.5);
  CHECK(coarse.flagged_cells.size() <= fine.flagged_cells.size());
  CHECK(coarse.flagged_area <= fine.flagged_area + 1e-12);
  for (const FlaggedCell& c : coarse.flagged_cells) {
    bool found = false;
    for (const FlaggedCell& d : fine.flagged_cells) {
      if (c.rect.x_lo == d.rect.x_lo && c.rect.y_lo == d.rect.y_lo) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("discontinuity cover: continuous fields need no cells") {
  auto poly = make_field("poly");
  EpsCover cover = discontinuity_cover(*poly, BoundingRect{0, 1, 0, 1}, 0.01);
  CHECK(cover.total_area() == 0.0);
  CHECK(cover.squares().empty());
}

TEST_CASE("discontinuity cover: counterexample band is coverable") {
  auto f = make_field("paper-example:4");
  EpsCover cover = discontinuity_cover(*f, BoundingRect{0, 2, 0, 2}, 0.05);
  CHECK(cover.total_area() < 0.05);
  for (int k = 0; k <= 100; ++k) {
    const double y = 1.0 + k / 100.0;
    CHECK(cover.covers_point(1.0, y));
  }
  // Flagged cells at the cover's level sit inside the returned cover.
  OscillationMap map =
      oscillation_map(*f, BoundingRect{0, 2, 0, 2}, cover.level(), 1.0 / 64.0);
  for (const FlaggedCell& c : map.flagged_cells) {
    CHECK(cover.covers_point(c.rect.center_x(), c.rect.center_y()));
  }
}

TEST_CASE("discontinuity cover: fat-Cantor stripes have positive content") {
  auto f = make_field("cantor-stripes");
  IntegrateOptions opts;
  opts.grid.max_cover_cells = 300'000;
  CHECK_THROWS_AS(discontinuity_cover(*f, f->rect(), 0.1, opts), CoverNotAchievable);
}

TEST_CASE("vertical line intersections") {
  auto f = make_field("paper-example:4");
  EpsCover cover = discontinuity_cover(*f, BoundingRect{0, 2, 0, 2}, 0.05);
  const double w = 2.0 / std::ldexp(1.0, cover.level());

  LineIntersections hit = vertical_line_intersections(cover, 1.0);
  CHECK(hit.count > 0);
  CHECK(hit.count <= cover.squares().size());
  REQUIRE(!hit.intervals.empty());
  CHECK(hit.intervals.front().lo <= 1.0);
  CHECK(hit.intervals.back().hi >= 2.0);
  CHECK(hit.stability_delta == 0.0);  // x = 1 lies on cell edges

  LineIntersections inner = vertical_line_intersections(cover, 1.0 - 0.5 * w);
  CHECK(inner.stability_delta == doctest::Approx(0.5 * w));

  LineIntersections off = vertical_line_intersections(cover, 0.25);
  CHECK(off.count == 0);
  CHECK(off.intervals.empty());

  auto poly = make_field("poly");
  EpsCover empty = discontinuity_cover(*poly, BoundingRect{0, 1, 0, 1}, 0.01);
  CHECK(vertical_line_intersections(empty, 0.5).count == 0);
}

TEST_CASE("single-cell cover stability") {
  auto tagger = [](const BoundingRect&) { return CellTag::Boundary; };
  const double seq[1] = {2.0};
  EpsLadder ladder =
      EpsLadder::build_classified(BoundingRect{0, 1, 0, 1}, tagger, seq, GridOptions{});
  REQUIRE(ladder.rung_count() == 1);
  LineIntersections hit = vertical_line_intersections(ladder.cover_at(0), 0.5);
  CHECK(hit.count == 1);
  CHECK(hit.intervals.size() == 1);
  CHECK(hit.intervals[0].lo == 0.0);
  CHECK(hit.intervals[0].hi == 1.0);
  CHECK(hit.stability_delta == doctest::Approx(0.5));
}

TEST_CASE("closed-discontinuity reduction applicability") {
  auto poly = make_field("poly");
  CHECK(theorem5_applicability(*poly, BoundingRect{0, 1, 0, 1}).applicable);

  auto paper = make_field("paper-example:6");
  CHECK(theorem5_applicability(*paper, BoundingRect{0, 2, 0, 2}).applicable);

  auto stripes = make_field("cantor-stripes");
  IntegrateOptions opts;
  opts.grid.max_cover_cells = 300'000;
  Applicability a = theorem5_applicability(*stripes, stripes->rect(), opts);
  CHECK(!a.applicable);
  CHECK(a.reason.find("cover failure") != std::string::npos);
}

TEST_CASE("rectangle fubini: smooth and counterexample fields") {
  auto poly = make_field("poly");
  FubiniReport fr = rectangle_fubini(*poly, BoundingRect{0, 1, 0, 1}, 1e-4);
  CHECK(std::abs(fr.double_value - 2.0 / 3.0) <= 1e-4);
  CHECK(std::abs(fr.iterated_value - 2.0 / 3.0) <= 1e-4);
  CHECK(fr.bound_holds());

  auto one = make_field("one");
  FubiniReport f1 = rectangle_fubini(*one, BoundingRect{-1, 2, 0.5, 1}, 1e-9);
  CHECK(f1.double_value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f1.iterated_value == doctest::Approx(1.5).epsilon(1e-12));

  auto paper = make_field("paper-example:6");
  FubiniReport fp = rectangle_fubini(*paper, BoundingRect{0, 2, 0, 2}, 1e-3);
  CHECK(std::abs(fp.double_value) <= 1e-3);
  CHECK(std::abs(fp.iterated_value) <= 1e-3);
  CHECK(fp.bound_holds());

  auto stripes = make_field("cantor-stripes");
  IntegrateOptions opts;
  opts.grid.max_cover_cells = 300'000;
  CHECK_THROWS_AS(rectangle_fubini(*stripes, stripes->rect(), 1e-3, opts),
                  CoverNotAchievable);
}

TEST_CASE("rectangle fubini falls back to sampled line ranges") {
  // DiagonalStep supplies exact cell ranges (for the covers) but no exact
  // line ranges, so the 1D integrator runs on sampled bounds. The integral of
  // the upper-triangle indicator over the unit square is 1/2.
  DiagonalStep f;
  FubiniReport rep = rectangle_fubini(f, f.rect(), 1e-2);
  CHECK(std::abs(rep.double_value - 0.5) <= 2e-2);
  CHECK(std::abs(rep.iterated_value - 0.5) <= 2e-2);
  CHECK(rep.discrepancy <= 4e-2);
}
