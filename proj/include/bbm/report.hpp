#pragma once

#include <string>

#include "bbm/inflation.hpp"

namespace bbm {

// report.json body: keys params, initial_norms, bootstrap
// {A, B, z_low, z_high, Y_measured, ok}, table (the CSV rows),
// inflation_ratio, slopes {u1_slope, u0_slope, inflation_slope}.
std::string report_json(const InflationReport& report);

// slopes.json body for a sweep, same slope keys plus halfwidths and k1_list.
std::string slopes_json(const SweepResult& sweep);

std::string sequence_json(const std::vector<SequencePoint>& points);

}  // namespace bbm
