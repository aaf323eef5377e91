#pragma once

#include "ecotim/implement_ecu.hpp"
#include "ecotim/scenario.hpp"
#include "ecotim/track.hpp"
#include "ecotim/tractor_ecu.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ecotim {

struct SimConfig {
  double dt_s = 0.1;
  std::uint64_t seed = 42; // track seed
};

enum class Mode { baseline, ecotim };

// One tick of the trace. Energies are the increments over this tick in J.
struct StepRecord {
  double t_s = 0.0;
  double x_m = 0.0;
  double v_ms = 0.0;
  double v_cmd_ms = 0.0;
  double a_cmd_ms2 = 0.0;
  double draft_n = 0.0;
  double slip_front = 0.0;
  double slip_rear = 0.0;
  double eta_engine_rel = 0.0;
  double eta_transmission = 0.0;
  double eta_tractive = 0.0;
  double eta_tractor = 0.0;
  double deta_dv_per_ms = 0.0;
  double rpm = 0.0;
  double p_crank_kw = 0.0;
  double fuel_g_per_h = 0.0;
  bool power_limited = false;
  double e_thermal_j = 0.0;
  double e_transmission_j = 0.0;
  double e_rolling_j = 0.0;
  double e_slip_j = 0.0;
  double e_tillage_j = 0.0;
  double e_grade_j = 0.0; // signed climbing work
};

struct EnergyTotals {
  double fuel_chemical_j = 0.0;
  double thermal_j = 0.0;
  double transmission_j = 0.0;
  double rolling_j = 0.0;
  double slip_j = 0.0;
  double tillage_j = 0.0;
  double grade_j = 0.0;
};

struct RunSummary {
  std::string scenario_id;
  Mode mode = Mode::baseline;
  double v_set_kmh = 0.0;
  bool aborted = false;
  std::string abort_reason;

  double distance_m = 0.0;
  double area_ha = 0.0;
  double time_s = 0.0;
  double time_min_per_ha = 0.0;
  double fuel_g = 0.0;
  double fuel_l = 0.0;
  double fuel_l_per_ha = 0.0;

  EnergyTotals energy;
  double closure_rel_err = 0.0;
  // litre-per-hectare partition; the signed climbing work is folded into
  // rolling because the closed track returns to its start elevation
  double thermal_l_per_ha = 0.0;
  double transmission_l_per_ha = 0.0;
  double rolling_l_per_ha = 0.0;
  double slip_l_per_ha = 0.0;
  double tillage_l_per_ha = 0.0;

  double v_mean_kmh = 0.0;
  double v_min_obs_kmh = 0.0;
  double v_max_obs_kmh = 0.0;
  int power_limited_ticks = 0;
  int max_fixed_point_iters = 0;
  int fault_hold_ticks = 0;
};

struct RunResult {
  std::vector<StepRecord> steps;
  RunSummary summary;
};

// Closed-loop run: the tractor broadcasts efficiency and ground speed every
// tick, the implement answers with speed/acceleration commands, everything
// crosses the frame codec. Starts at the scenario baseline speed.
RunResult run_ecotim(const Scenario& sc, const Track& track,
                     const TractorParams& tractor, const OptimizerConfig& opt,
                     const SimConfig& sim);

// Conventional pass: constant setpoint, clamped to the feasible speed.
RunResult run_baseline(const Scenario& sc, const Track& track,
                       const TractorParams& tractor, double v_set_kmh,
                       const SimConfig& sim);

// Steady fuel per hectare at constant speed and ground condition; the oracle
// for optimality checks. std::nullopt when the point is infeasible.
std::optional<double> steady_fuel_l_per_ha(const TractorEcu& ecu,
                                           const Scenario& sc, double ci_kpa,
                                           double grade, double v_kmh);

} // namespace ecotim
