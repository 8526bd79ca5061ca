#include "riemann2d/serialize.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace riemann2d {

namespace {

using nlohmann::json;

json trace_json(const std::vector<std::pair<double, double>>& trace) {
  json arr = json::array();
  for (const auto& [k, v] : trace) arr.push_back(json::array({k, v}));
  return arr;
}

json report_json(const IntegralReport& report) {
  json j;
  j["value"] = report.value;
  j["gap"] = report.gap;
  j["status"] = std::string(to_string(report.status));
  j["trace"] = trace_json(report.trace);
  return j;
}

}  // namespace

std::string to_json_string(const IntegralReport& report) {
  return report_json(report).dump();
}

std::string to_json_string(const FubiniReport& report) {
  json j;
  j["double"] = report.double_value;
  j["iterated"] = report.iterated_value;
  j["discrepancy"] = report.discrepancy;
  j["predicted_bound"] = report.predicted_bound;
  j["slices"] = trace_json(report.slices);
  j["eps_final"] = report.eps_final;
  j["bound_K"] = report.bound_K;
  j["double_gap"] = report.double_report.gap;
  j["iterated_gap"] = report.iterated_report.gap;
  j["double_status"] = std::string(to_string(report.double_report.status));
  j["iterated_status"] = std::string(to_string(report.iterated_report.status));
  return j.dump();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

void write_grid_csv(std::ostream& out, const CellGrid& grid) {
  out << "level,x_lo,y_lo,x_hi,y_hi,tag\n";
  const std::size_t n = grid.cells_per_axis();
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const Cell c = grid.cell(ix, iy);
      out << c.level << ',' << format_double(c.rect.x_lo) << ',' << format_double(c.rect.y_lo)
          << ',' << format_double(c.rect.x_hi) << ',' << format_double(c.rect.y_hi) << ','
          << to_string(c.tag) << '\n';
    }
  }
}

void write_oscillation_csv(std::ostream& out, const OscillationMap& map) {
  out << "x_lo,y_lo,x_hi,y_hi,osc_estimate\n";
  for (const FlaggedCell& cell : map.flagged_cells) {
    out << format_double(cell.rect.x_lo) << ',' << format_double(cell.rect.y_lo) << ','
        << format_double(cell.rect.x_hi) << ',' << format_double(cell.rect.y_hi) << ','
        << format_double(cell.oscillation) << '\n';
  }
}

void write_slice_csv(std::ostream& out, const SliceSet& slice) {
  out << "y_lo,y_hi\n";
  for (const Interval& iv : slice.intervals) {
    out << format_double(iv.lo) << ',' << format_double(iv.hi) << '\n';
  }
}

void write_measure_csv(std::ostream& out, int level, const MeasureBounds& bounds) {
  out << "level,inner,outer\n";
  out << level << ',' << format_double(bounds.inner) << ',' << format_double(bounds.outer)
      << '\n';
}

}  // namespace riemann2d
