#pragma once

#include "ecotim/draft.hpp"
#include "ecotim/engine.hpp"
#include "ecotim/traction.hpp"
#include "ecotim/transmission.hpp"

#include <optional>
#include <vector>

namespace ecotim {

// Complete tractor description. Axle loads are derived from the mass and the
// static weight split when the ECU is constructed; the fuel map is fitted
// from the dyno points at the same time.
struct TractorParams {
  double mass_kg = 8540.0;
  double front_weight_share = 0.40;
  TyreConfig front_tyre{0.54, 1.4132, 0.25, 0.0, 1.0};
  TyreConfig rear_tyre{0.65, 1.8102, 0.25, 0.0, 1.1};

  std::vector<DynoPoint> dyno;
  double eta_pto = 0.93;
  double n_idle = 850.0;
  double n_torque_peak = 1400.0;
  double n_rated = 2000.0;
  std::vector<EnvelopeKnot> envelope_pto;

  TransmissionParams transmission;
  double p_rated_kw = 100.0; // crank rating used for load fraction
  double tau_s = 2.0;        // speed setpoint response time constant
  double delta_v_kmh = 0.3;  // perturbation for the efficiency derivative
  double s_max = 0.25;       // slip ceiling
  double rpm_step = 10.0;    // eco mode sweep resolution

  // 100 kW class reference tractor with its measured dyno table
  static TractorParams standard();
};

// factory-measured dyno table of the reference tractor
std::vector<DynoPoint> standard_dyno_points();
std::vector<EnvelopeKnot> standard_envelope_pto();

struct AxleSolution {
  TractionSolution front, rear;
};

// Steady state of the whole powertrain at one speed / draft / ground
// condition. All powers in W unless suffixed.
struct PowertrainState {
  double v_kmh = 0.0;
  double draft_n = 0.0;
  double pull_n = 0.0; // draft plus grade force, clamped at zero
  AxleSolution axles;
  double eta_tractive = 0.0;
  double p_drawbar_w = 0.0;
  double p_wheel_w = 0.0; // power into the axles
  double p_crank_kw = 0.0;
  double load_fraction = 0.0;
  double eta_transmission = 0.0;
  OperatingPoint engine;
  double fuel_g_per_h = 0.0;
  double eta_engine_rel = 0.0; // best map b_e over actual b_e
  double eta_tractor = 0.0;    // product of the three stages
  int fixed_point_iters = 0;
};

// Generic central difference with automatic one-sided fallback when a probe
// fails; used for the broadcast efficiency derivative.
template <typename F>
std::optional<double> central_difference(F&& f, double x, double h, bool& one_sided) {
  const auto plus = f(x + h);
  const auto minus = f(x - h);
  one_sided = !(plus && minus);
  if (plus && minus) return (*plus - *minus) / (2.0 * h);
  const auto centre = f(x);
  if (!centre) return std::nullopt;
  if (plus) return (*plus - *centre) / h;
  if (minus) return (*centre - *minus) / h;
  return std::nullopt;
}

class TractorEcu {
 public:
  explicit TractorEcu(TractorParams params);

  const TractorParams& params() const { return params_; }
  const WillansMap& fuel_map() const { return map_; }
  double best_sfc() const { return best_sfc_; }
  double weight_n() const { return weight_n_; }

  // Full powertrain chain at one operating point. std::nullopt when either
  // axle hits the slip ceiling or the engine envelope cannot cover the
  // demand (power limit).
  std::optional<PowertrainState> evaluate(double v_kmh, double draft_n,
                                          double ci_kpa, double grade) const;

  struct Derivative {
    double per_ms = 0.0; // d(eta)/dv with v in m/s
    bool one_sided = false;
  };
  // Sensitivity of overall efficiency to speed with the measured draft force
  // held constant during the perturbation.
  Derivative efficiency_derivative(double v_kmh, double draft_held_n,
                                   double ci_kpa, double grade) const;

  // Largest feasible speed in [v_lo, v_hi] against the given draft model,
  // found by bisection to 0.01 km/h. std::nullopt when not even v_lo is
  // feasible.
  std::optional<double> max_feasible_speed(const DraftCoefficients& draft,
                                           double ci_kpa, double grade,
                                           double v_lo_kmh, double v_hi_kmh) const;

  // First-order speed response to a command: feed-forward on the commanded
  // acceleration plus exponential approach to the setpoint.
  double respond(double v_ms, double v_cmd_ms, std::optional<double> a_cmd_ms2,
                 double dt_s) const;

 private:
  TractorParams params_;
  WillansMap map_;
  double best_sfc_ = 0.0;
  double weight_n_ = 0.0;
};

} // namespace ecotim
