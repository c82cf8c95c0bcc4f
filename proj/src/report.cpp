#include "bbm/report.hpp"

#include <json.hpp>

namespace bbm {

namespace {

using Json = nlohmann::ordered_json;

Json params_json(const ExperimentParams& p) {
  return Json{{"s", p.s},
              {"gamma", p.gamma},
              {"mu", p.mu},
              {"k1", p.k1},
              {"N", p.n_modes},
              {"dt", p.dt},
              {"T", p.horizon},
              {"output_points", p.output_points}};
}

Json slope_json(const std::optional<SlopeFit>& fit) {
  if (!fit) return nullptr;
  return fit->slope;
}

Json slopes_block(const SlopeSet& slopes) {
  Json j{{"u1_slope", slope_json(slopes.u1_slope)},
         {"u0_slope", slope_json(slopes.u0_slope)},
         {"inflation_slope", slope_json(slopes.inflation_slope)}};
  Json hw = Json::object();
  hw["u1"] = slopes.u1_slope ? Json(slopes.u1_slope->halfwidth) : Json(nullptr);
  hw["u0"] = slopes.u0_slope ? Json(slopes.u0_slope->halfwidth) : Json(nullptr);
  hw["inflation"] = slopes.inflation_slope ? Json(slopes.inflation_slope->halfwidth) : Json(nullptr);
  j["halfwidths"] = hw;
  return j;
}

Json bootstrap_block(const BootstrapReport& b) {
  return Json{{"A", b.A},
              {"B", b.B},
              {"z_low", b.z_low ? Json(*b.z_low) : Json(nullptr)},
              {"z_high", b.z_high ? Json(*b.z_high) : Json(nullptr)},
              {"Y_measured", b.y_measured},
              {"ok", b.ok}};
}

}  // namespace

std::string report_json(const InflationReport& report) {
  Json table = Json::array();
  for (const auto& row : report.table) {
    table.push_back(Json{{"t", row.t},
                         {"norm_L2", row.norm_L2},
                         {"norm_Hms", row.norm_Hms},
                         {"norm_Su0", row.norm_Su0},
                         {"norm_u1", row.norm_u1},
                         {"norm_y", row.norm_y},
                         {"ratio_y_u1", row.ratio_y_u1}});
  }

  Json j{{"params", params_json(report.params)},
         {"initial_norms", Json{{"Hms", report.initial_norm_ms}, {"L2", report.initial_norm_l2}}},
         {"bootstrap", bootstrap_block(report.bootstrap)},
         {"table", table},
         {"inflation_ratio", report.inflation_ratio},
         {"final_norms",
          Json{{"Hms", report.final_norm_ms}, {"u1_Hms", report.final_u1_norm_ms}}},
         {"slopes", slopes_block(report.slopes)}};
  return j.dump(2) + "\n";
}

std::string slopes_json(const SweepResult& sweep) {
  Json k1_list = Json::array();
  Json ratios = Json::array();
  for (const auto& run : sweep.runs) {
    k1_list.push_back(run.params.k1);
    ratios.push_back(run.inflation_ratio);
  }
  Json j = slopes_block(sweep.slopes);
  j["k1_list"] = k1_list;
  j["inflation_ratios"] = ratios;
  return j.dump(2) + "\n";
}

std::string sequence_json(const std::vector<SequencePoint>& points) {
  Json arr = Json::array();
  for (const auto& pt : points) {
    arr.push_back(Json{{"k1", pt.k1}, {"T", pt.T}, {"achieved_norm", pt.achieved_norm}});
  }
  return Json{{"sequence", arr}}.dump(2) + "\n";
}

}  // namespace bbm
