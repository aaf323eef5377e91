#include "ecotim/sim.hpp"

#include "ecotim/codec.hpp"
#include "ecotim/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ecotim {

namespace {

struct EnergySplit {
  double fuel_chem_w = 0.0;
  double thermal_w = 0.0;
  double transmission_w = 0.0;
  double rolling_w = 0.0;
  double slip_w = 0.0;
  double tillage_w = 0.0;
  double grade_w = 0.0;
};

EnergySplit split_power(const TractorEcu& ecu, const PowertrainState& st) {
  EnergySplit e;
  const double v_ms = st.v_kmh * kKmhToMs;
  e.fuel_chem_w = st.fuel_g_per_h * kDieselLhvJPerG / 3600.0;
  const double crank_w = st.p_crank_kw * 1000.0;
  e.thermal_w = e.fuel_chem_w - crank_w;
  e.transmission_w = crank_w - st.p_wheel_w;

  const auto& p = ecu.params();
  auto slip_loss = [v_ms](const TractionSolution& s, double load) {
    return (s.kappa + s.rho) * load * v_ms * s.slip / (1.0 - s.slip);
  };
  auto rolling_loss = [v_ms](const TractionSolution& s, double load) {
    return s.rho * load * v_ms;
  };
  e.slip_w = slip_loss(st.axles.front, p.front_tyre.axle_load_n) +
             slip_loss(st.axles.rear, p.rear_tyre.axle_load_n);
  e.rolling_w = rolling_loss(st.axles.front, p.front_tyre.axle_load_n) +
                rolling_loss(st.axles.rear, p.rear_tyre.axle_load_n);
  // drawbar work splits into tillage and climbing; when downhill assistance
  // ate part of the draft, the difference is (negative) climbing work
  e.tillage_w = std::min(st.draft_n, st.pull_n) * v_ms;
  e.grade_w = st.p_drawbar_w - e.tillage_w;
  return e;
}

struct Accumulator {
  EnergyTotals totals;
  double time_s = 0.0;
  double dist_m = 0.0;
  double v_min = std::numeric_limits<double>::infinity();
  double v_max = 0.0;
  int power_limited = 0;
  int max_fp = 0;

  void add(const EnergySplit& e, const PowertrainState& st, double dt,
           bool limited) {
    totals.fuel_chemical_j += e.fuel_chem_w * dt;
    totals.thermal_j += e.thermal_w * dt;
    totals.transmission_j += e.transmission_w * dt;
    totals.rolling_j += e.rolling_w * dt;
    totals.slip_j += e.slip_w * dt;
    totals.tillage_j += e.tillage_w * dt;
    totals.grade_j += e.grade_w * dt;
    time_s += dt;
    dist_m += st.v_kmh * kKmhToMs * dt;
    v_min = std::min(v_min, st.v_kmh);
    v_max = std::max(v_max, st.v_kmh);
    power_limited += limited ? 1 : 0;
    max_fp = std::max(max_fp, st.fixed_point_iters);
  }
};

StepRecord make_record(double t, double x, const PowertrainState& st,
                       const EnergySplit& e, double dt, bool limited,
                       double v_cmd_ms, double a_cmd, double deta) {
  StepRecord r;
  r.t_s = t;
  r.x_m = x;
  r.v_ms = st.v_kmh * kKmhToMs;
  r.v_cmd_ms = v_cmd_ms;
  r.a_cmd_ms2 = a_cmd;
  r.draft_n = st.draft_n;
  r.slip_front = st.axles.front.slip;
  r.slip_rear = st.axles.rear.slip;
  r.eta_engine_rel = st.eta_engine_rel;
  r.eta_transmission = st.eta_transmission;
  r.eta_tractive = st.eta_tractive;
  r.eta_tractor = st.eta_tractor;
  r.deta_dv_per_ms = deta;
  r.rpm = st.engine.rpm;
  r.p_crank_kw = st.p_crank_kw;
  r.fuel_g_per_h = st.fuel_g_per_h;
  r.power_limited = limited;
  r.e_thermal_j = e.thermal_w * dt;
  r.e_transmission_j = e.transmission_w * dt;
  r.e_rolling_j = e.rolling_w * dt;
  r.e_slip_j = e.slip_w * dt;
  r.e_tillage_j = e.tillage_w * dt;
  r.e_grade_j = e.grade_w * dt;
  return r;
}

RunSummary summarize(const Scenario& sc, Mode mode, double v_set,
                     const Accumulator& acc, bool aborted,
                     const std::string& reason, double fuel_g,
                     int fault_holds) {
  RunSummary s;
  s.scenario_id = sc.id;
  s.mode = mode;
  s.v_set_kmh = v_set;
  s.aborted = aborted;
  s.abort_reason = reason;
  s.distance_m = acc.dist_m;
  s.area_ha = sc.width_eff_m * acc.dist_m / 1e4;
  s.time_s = acc.time_s;
  s.fuel_g = fuel_g;
  s.fuel_l = fuel_g / kDieselDensity;
  if (s.area_ha > 0.0) {
    s.time_min_per_ha = acc.time_s / 60.0 / s.area_ha;
    s.fuel_l_per_ha = s.fuel_l / s.area_ha;
    auto per_ha = [&](double j) { return j / kDieselEnergyPerLitre / s.area_ha; };
    s.thermal_l_per_ha = per_ha(acc.totals.thermal_j);
    s.transmission_l_per_ha = per_ha(acc.totals.transmission_j);
    s.rolling_l_per_ha = per_ha(acc.totals.rolling_j + acc.totals.grade_j);
    s.slip_l_per_ha = per_ha(acc.totals.slip_j);
    s.tillage_l_per_ha = per_ha(acc.totals.tillage_j);
  }
  s.energy = acc.totals;
  const double sum = acc.totals.thermal_j + acc.totals.transmission_j +
                     acc.totals.rolling_j + acc.totals.slip_j +
                     acc.totals.tillage_j + acc.totals.grade_j;
  s.closure_rel_err = acc.totals.fuel_chemical_j > 0.0
                          ? std::fabs(acc.totals.fuel_chemical_j - sum) /
                                acc.totals.fuel_chemical_j
                          : 0.0;
  s.v_mean_kmh = acc.time_s > 0.0 ? acc.dist_m / acc.time_s * kMsToKmh : 0.0;
  s.v_min_obs_kmh = std::isfinite(acc.v_min) ? acc.v_min : 0.0;
  s.v_max_obs_kmh = acc.v_max;
  s.power_limited_ticks = acc.power_limited;
  s.max_fixed_point_iters = acc.max_fp;
  s.fault_hold_ticks = fault_holds;
  return s;
}

} // namespace

RunResult run_ecotim(const Scenario& sc, const Track& track,
                     const TractorParams& tractor, const OptimizerConfig& opt,
                     const SimConfig& sim) {
  TractorEcu ecu(tractor);
  OptimizerConfig cfg = opt;
  cfg.v_min_kmh = sc.v_min_kmh;
  cfg.v_max_kmh = sc.v_max_kmh;
  ImplementEcu implement(cfg, sc.draft);

  RunResult out;
  Accumulator acc;
  double fuel_g = 0.0;
  bool aborted = false;
  std::string reason;

  const double len = track.length_m();
  double x = 0.0, t = 0.0;
  double v_kmh = std::clamp(sc.v_baseline_kmh, sc.v_min_kmh, sc.v_max_kmh);
  double v_cmd_ms = v_kmh * kKmhToMs;
  std::optional<double> a_cmd;

  while (x < len - 1e-9) {
    const auto env = track.sample(x);
    bool limited = false;
    double draft = draft_force(sc.draft, v_kmh);
    auto st = ecu.evaluate(v_kmh, draft, env.ci_kpa, env.grade);
    if (!st) {
      const auto vmax = ecu.max_feasible_speed(sc.draft, env.ci_kpa, env.grade,
                                               sc.v_min_kmh, v_kmh);
      if (!vmax) {
        aborted = true;
        reason = "no feasible speed at the scenario minimum (x = " +
                 std::to_string(x) + " m)";
        break;
      }
      limited = true;
      v_kmh = *vmax;
      draft = draft_force(sc.draft, v_kmh);
      st = ecu.evaluate(v_kmh, draft, env.ci_kpa, env.grade);
      if (!st) {
        aborted = true;
        reason = "powertrain evaluation failed after the feasibility clamp";
        break;
      }
    }

    const auto deriv =
        ecu.efficiency_derivative(v_kmh, draft, env.ci_kpa, env.grade);

    // tractor -> implement across the bus
    EfficiencyBroadcast eb;
    eb.eta_tractor_pct = st->eta_tractor * 100.0;
    eb.deta_dv_pct_s_per_m = deriv.per_ms * 100.0;
    eb.eta_engine_pct = std::min(100.0, st->eta_engine_rel * 100.0);
    eb.eta_transmission_pct = std::min(100.0, st->eta_transmission * 100.0);
    eb.eta_tractive_pct = std::min(100.0, st->eta_tractive * 100.0);
    eb.engine_load_pct = std::min(100.0, st->engine.chi * 100.0);
    const Frame f_eff = encode_efficiency(eb);
    const Frame f_speed = encode_ground_speed({v_kmh * kKmhToMs, x});

    // implement -> tractor
    const auto cmd_frame = implement.tick(f_eff, f_speed);
    if (cmd_frame) {
      const auto cmd = decode_speed_accel(*cmd_frame);
      v_cmd_ms = cmd.speed_ms;
      a_cmd = cmd.accel_ms2;
    } else {
      a_cmd.reset(); // command suppressed: hold the last speed setpoint
    }

    const double v_ms = v_kmh * kKmhToMs;
    const double dt = std::min(sim.dt_s, (len - x) / std::max(v_ms, 1e-9));
    const auto energy = split_power(ecu, *st);
    acc.add(energy, *st, dt, limited);
    fuel_g += st->fuel_g_per_h / 3600.0 * dt;
    out.steps.push_back(make_record(t, x, *st, energy, dt, limited, v_cmd_ms,
                                    a_cmd.value_or(0.0), deriv.per_ms));
    x += v_ms * dt;
    t += dt;
    if (x >= len - 1e-9) break;

    const double v_next = ecu.respond(v_ms, v_cmd_ms, a_cmd, dt);
    v_kmh = std::clamp(v_next * kMsToKmh, sc.v_min_kmh, sc.v_max_kmh);
  }

  out.summary = summarize(sc, Mode::ecotim, sc.v_baseline_kmh, acc, aborted,
                          reason, fuel_g, implement.fault_hold_count());
  return out;
}

RunResult run_baseline(const Scenario& sc, const Track& track,
                       const TractorParams& tractor, double v_set_kmh,
                       const SimConfig& sim) {
  TractorEcu ecu(tractor);

  RunResult out;
  Accumulator acc;
  double fuel_g = 0.0;
  bool aborted = false;
  std::string reason;

  const double len = track.length_m();
  double x = 0.0, t = 0.0;

  while (x < len - 1e-9) {
    const auto env = track.sample(x);
    bool limited = false;
    double v_kmh = v_set_kmh;
    double draft = draft_force(sc.draft, v_kmh);
    auto st = ecu.evaluate(v_kmh, draft, env.ci_kpa, env.grade);
    if (!st) {
      const auto vmax = ecu.max_feasible_speed(
          sc.draft, env.ci_kpa, env.grade, std::min(sc.v_min_kmh, v_set_kmh), v_set_kmh);
      if (!vmax) {
        aborted = true;
        reason = "no feasible speed at the scenario minimum (x = " +
                 std::to_string(x) + " m)";
        break;
      }
      limited = true;
      v_kmh = *vmax;
      draft = draft_force(sc.draft, v_kmh);
      st = ecu.evaluate(v_kmh, draft, env.ci_kpa, env.grade);
      if (!st) {
        aborted = true;
        reason = "powertrain evaluation failed after the feasibility clamp";
        break;
      }
    }

    const double v_ms = v_kmh * kKmhToMs;
    const double dt = std::min(sim.dt_s, (len - x) / std::max(v_ms, 1e-9));
    const auto energy = split_power(ecu, *st);
    acc.add(energy, *st, dt, limited);
    fuel_g += st->fuel_g_per_h / 3600.0 * dt;
    out.steps.push_back(make_record(t, x, *st, energy, dt, limited,
                                    v_set_kmh * kKmhToMs, 0.0, 0.0));
    x += v_ms * dt;
    t += dt;
  }

  out.summary =
      summarize(sc, Mode::baseline, v_set_kmh, acc, aborted, reason, fuel_g, 0);
  return out;
}

std::optional<double> steady_fuel_l_per_ha(const TractorEcu& ecu,
                                           const Scenario& sc, double ci_kpa,
                                           double grade, double v_kmh) {
  const auto st = ecu.evaluate(v_kmh, draft_force(sc.draft, v_kmh), ci_kpa, grade);
  if (!st) return std::nullopt;
  const double fuel_l_per_h = st->fuel_g_per_h / kDieselDensity;
  const double area_ha_per_h = v_kmh * sc.width_eff_m / 10.0;
  return fuel_l_per_h / area_ha_per_h;
}

} // namespace ecotim
