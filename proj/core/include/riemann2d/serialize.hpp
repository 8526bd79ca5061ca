#pragma once

// Stable text encodings of reports and dumps: JSON strings with fixed key
// sets and CSV with '.' decimal separator and LF line endings.

#include <iosfwd>
#include <string>

#include "riemann2d/analysis.hpp"
#include "riemann2d/integrate.hpp"

namespace riemann2d {

// {"value":..., "gap":..., "status":..., "trace":[[k,v],...]}
std::string to_json_string(const IntegralReport& report);

// {"double":..., "iterated":..., "discrepancy":..., "predicted_bound":...,
//  "slices":[[x,h],...]} plus eps_final/bound_K and both integrator gaps.
std::string to_json_string(const FubiniReport& report);

// CSV row shape: level,x_lo,y_lo,x_hi,y_hi,tag
void write_grid_csv(std::ostream& out, const CellGrid& grid);

// CSV row shape: x_lo,y_lo,x_hi,y_hi,osc_estimate
void write_oscillation_csv(std::ostream& out, const OscillationMap& map);

// CSV row shape: y_lo,y_hi
void write_slice_csv(std::ostream& out, const SliceSet& slice);

// CSV row shape: level,inner,outer
void write_measure_csv(std::ostream& out, int level, const MeasureBounds& bounds);

// Deterministic shortest-round-trip formatting used by all CSV writers.
std::string format_double(double v);

}  // namespace riemann2d
