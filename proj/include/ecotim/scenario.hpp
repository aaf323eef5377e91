#pragma once

#include "ecotim/draft.hpp"
#include "ecotim/engine.hpp"

#include <string>
#include <vector>

namespace ecotim {

// One tillage task: the implement, its effective working width for area
// accounting, and the operator speed window with the conventional setpoint.
struct Scenario {
  std::string id;
  std::string name;
  DraftCoefficients draft;
  double width_eff_m = 0.0;
  double v_min_kmh = 0.0;
  double v_baseline_kmh = 0.0;
  double v_max_kmh = 0.0;
};

// The six built-in field scenarios S1..S6.
const std::vector<Scenario>& standard_scenarios();

// Lookup by id; throws std::runtime_error("unknown scenario ...") otherwise.
const Scenario& scenario_by_id(const std::string& id);

// Load a scenario or a dyno table from disk.
Scenario load_scenario_file(const std::string& path);
std::vector<DynoPoint> load_dyno_csv(const std::string& path);

} // namespace ecotim
