#include "ecotim/tractor_ecu.hpp"

#include "ecotim/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace ecotim {

std::vector<DynoPoint> standard_dyno_points() {
  return {{850.0, 0.0, 1961.0},    {1400.0, 27.9, 7516.0},
          {1400.0, 55.8, 13032.0}, {1400.0, 79.05, 17629.0},
          {1600.0, 46.5, 11947.0}, {1600.0, 85.56, 19826.0},
          {1800.0, 37.2, 11084.0}, {1800.0, 90.21, 21988.0},
          {2000.0, 46.5, 14342.0}, {2000.0, 93.0, 24092.0}};
}

std::vector<EnvelopeKnot> standard_envelope_pto() {
  return {{1400.0, 79.05}, {1600.0, 85.56}, {1800.0, 90.21}, {2000.0, 93.0}};
}

TractorParams TractorParams::standard() {
  TractorParams p;
  p.dyno = standard_dyno_points();
  p.envelope_pto = standard_envelope_pto();
  return p;
}

TractorEcu::TractorEcu(TractorParams params) : params_(std::move(params)) {
  weight_n_ = params_.mass_kg * kGravity;
  params_.front_tyre.axle_load_n = weight_n_ * params_.front_weight_share;
  params_.rear_tyre.axle_load_n = weight_n_ * (1.0 - params_.front_weight_share);
  map_ = calibrate_willans(params_.dyno, params_.eta_pto, params_.n_idle,
                           params_.n_torque_peak, params_.n_rated,
                           params_.envelope_pto);
  best_sfc_ = ecotim::best_sfc(map_, params_.rpm_step);
}

std::optional<PowertrainState> TractorEcu::evaluate(double v_kmh, double draft_n,
                                                    double ci_kpa,
                                                    double grade) const {
  if (v_kmh <= 0.0)
    throw std::domain_error("tractor: speed must be positive");
  if (draft_n < 0.0)
    throw std::domain_error("tractor: draft force must be non-negative");

  PowertrainState st;
  st.v_kmh = v_kmh;
  st.draft_n = draft_n;
  const double v_ms = v_kmh * kKmhToMs;

  // grade resistance on the slope; downhill assistance never reverses the
  // demand below zero (the drivetrain does not recuperate)
  const double grade_force = weight_n_ * std::sin(std::atan(grade));
  st.pull_n = std::max(0.0, draft_n + grade_force);

  const double pull_front = st.pull_n * params_.front_weight_share;
  const double pull_rear = st.pull_n - pull_front;
  const auto front = solve_slip(params_.front_tyre, ci_kpa, pull_front, params_.s_max);
  const auto rear = solve_slip(params_.rear_tyre, ci_kpa, pull_rear, params_.s_max);
  if (!front || !rear) return std::nullopt; // traction limit
  st.axles = {*front, *rear};

  auto axle_input = [v_ms](const TractionSolution& s, double load_n) {
    return (s.kappa + s.rho) * load_n * v_ms / (1.0 - s.slip);
  };
  st.p_wheel_w = axle_input(*front, params_.front_tyre.axle_load_n) +
                 axle_input(*rear, params_.rear_tyre.axle_load_n);
  st.p_drawbar_w = st.pull_n * v_ms;
  st.eta_tractive = st.p_wheel_w > 0.0 ? st.p_drawbar_w / st.p_wheel_w : 0.0;

  // transmission load fraction depends on crank power, which depends on the
  // transmission efficiency. With the load derate (1+z)L/(L+z) the coupling
  // is a quadratic in L, so the fixed point is seeded with its closed-form
  // root; the short polish loop absorbs the clamp edges and must reach
  // machine precision, otherwise solver noise leaks into the broadcast
  // derivative.
  const double p_rated_w = params_.p_rated_kw * 1000.0;
  const double w = st.p_wheel_w / p_rated_w;
  const double eta_v = transmission_efficiency(params_.transmission, v_kmh, 1.0);
  const double z = params_.transmission.parasitic_zeta;
  const double disc = w * w + 4.0 * eta_v * (1.0 + z) * w * z;
  double load = std::clamp(
      (w + std::sqrt(disc)) / (2.0 * eta_v * (1.0 + z)), 1e-6, 1.05);
  int iters = 0;
  while (iters < 10) {
    ++iters;
    const double next = std::clamp(
        st.p_wheel_w /
            (transmission_efficiency(params_.transmission, v_kmh, load) * p_rated_w),
        1e-6, 1.05);
    const bool done = std::fabs(next - load) <= 1e-12 * std::max(next, 1e-9);
    load = next;
    if (done) break;
  }
  st.load_fraction = load;
  st.eta_transmission = transmission_efficiency(params_.transmission, v_kmh, load);
  st.p_crank_kw = st.p_wheel_w / st.eta_transmission / 1000.0;
  st.fixed_point_iters = iters;

  const auto eco = eco_mode_select(map_, st.p_crank_kw, params_.rpm_step);
  if (!eco) return std::nullopt; // demand above the rated envelope
  st.engine = eco->op;
  st.fuel_g_per_h = eco->fuel_g_per_h;
  st.eta_engine_rel = std::isfinite(eco->op.b_e) ? best_sfc_ / eco->op.b_e : 0.0;
  st.eta_tractor = st.eta_engine_rel * st.eta_transmission * st.eta_tractive;
  return st;
}

TractorEcu::Derivative TractorEcu::efficiency_derivative(double v_kmh,
                                                         double draft_held_n,
                                                         double ci_kpa,
                                                         double grade) const {
  auto eta_at = [&](double v) -> std::optional<double> {
    if (v <= 0.0) return std::nullopt;
    const auto st = evaluate(v, draft_held_n, ci_kpa, grade);
    if (!st) return std::nullopt;
    return st->eta_tractor;
  };
  Derivative d;
  const auto slope = central_difference(eta_at, v_kmh, params_.delta_v_kmh, d.one_sided);
  d.per_ms = slope ? *slope * kMsToKmh : 0.0;
  return d;
}

std::optional<double> TractorEcu::max_feasible_speed(const DraftCoefficients& draft,
                                                     double ci_kpa, double grade,
                                                     double v_lo_kmh,
                                                     double v_hi_kmh) const {
  auto feasible = [&](double v) {
    return evaluate(v, draft_force(draft, v), ci_kpa, grade).has_value();
  };
  if (v_hi_kmh <= v_lo_kmh) return feasible(v_lo_kmh) ? std::optional(v_lo_kmh) : std::nullopt;
  if (feasible(v_hi_kmh)) return v_hi_kmh;
  if (!feasible(v_lo_kmh)) return std::nullopt;
  double lo = v_lo_kmh, hi = v_hi_kmh;
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

double TractorEcu::respond(double v_ms, double v_cmd_ms,
                           std::optional<double> a_cmd_ms2, double dt_s) const {
  const double a = a_cmd_ms2.value_or(0.0);
  return v_ms + a * dt_s + dt_s / params_.tau_s * (v_cmd_ms - v_ms);
}

} // namespace ecotim
