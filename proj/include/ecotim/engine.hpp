#pragma once

#include <optional>
#include <vector>

namespace ecotim {

// One steady-state dyno measurement. Power is measured at the PTO shaft,
// fuel flow at the supply line.
struct DynoPoint {
  double rpm = 0.0;
  double power_pto_kw = 0.0;
  double fuel_g_per_h = 0.0;
};

struct EnvelopeKnot {
  double rpm = 0.0;
  double power_kw = 0.0;
};

// Affine-in-power fuel map: mdot [g/h] = m0(n) + k(n) * P with n = rpm/1000,
// m0 = c1 + c2 n + c3 n^2 (zero-load flow) and k = c4 + c5 n (marginal flow).
// Power is referenced to the crankshaft.
struct WillansMap {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;
  double n_idle = 850.0;
  double n_torque_peak = 1400.0;
  double n_rated = 2000.0;
  double eta_pto = 1.0;
  std::vector<EnvelopeKnot> full_load; // crank kW, ascending rpm
  double fit_rms_g_per_h = 0.0;        // calibration residual

  double zero_load_flow(double rpm) const; // m0, g/h
  double marginal_flow(double rpm) const;  // k, g/(h*kW)
  // Full-load power limit at a given speed, piecewise linear between knots,
  // constant torque below the first knot.
  double full_load_power(double rpm) const;
  double rated_power() const; // max of the envelope, kW
};

struct OperatingPoint {
  double rpm = 0.0;
  double power_kw = 0.0; // crank
  double b_e = 0.0;      // g/kWh; +inf sentinel at zero power
  double chi = 0.0;      // load fraction P / rated
};

struct EcoSelection {
  OperatingPoint op;
  double fuel_g_per_h = 0.0;
};

// Least-squares fit of the five map coefficients from dyno data. PTO power
// and the PTO-referenced envelope are rescaled to crank level with eta_pto.
// Requires at least five points covering two distinct speeds and two
// distinct load levels; throws std::runtime_error otherwise or when the
// regression is rank deficient.
WillansMap calibrate_willans(const std::vector<DynoPoint>& points,
                             double eta_pto,
                             double n_idle,
                             double n_torque_peak,
                             double n_rated,
                             const std::vector<EnvelopeKnot>& envelope_pto);

// Fuel flow in g/h at crank power power_kw. Throws std::domain_error when
// rpm is outside [n_idle, n_rated], power is negative, or power exceeds the
// full-load envelope at that speed.
double fuel_flow(const WillansMap& map, double rpm, double power_kw);

// Reference specific-fuel-consumption model b_e = b_base*(0.22+0.096/chi)*f_pt
// used for plausibility comparison only. chi must be positive.
double asae_sfc(double chi, double b_e_base, double f_pt);

// Pick the engine speed in [n_torque_peak, n_rated] that minimises b_e while
// the full-load envelope still covers the demanded power. The sweep grid is
// refined with the exact envelope intersection speeds so the binding point is
// never missed. Returns std::nullopt when the demand exceeds the rated
// envelope (overload); at zero demand the speed of minimum zero-load flow is
// returned with an infinite b_e sentinel.
std::optional<EcoSelection> eco_mode_select(const WillansMap& map,
                                            double power_kw,
                                            double sweep_step_rpm = 10.0);

// Minimum b_e anywhere on the full-load envelope over the eco sweep range.
double best_sfc(const WillansMap& map, double sweep_step_rpm = 10.0);

} // namespace ecotim
