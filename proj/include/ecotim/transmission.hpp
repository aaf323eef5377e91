#pragma once

namespace ecotim {

// Power-split CVT efficiency model. The hydrostatic branch carries a share of
// the power that shrinks to zero at the mechanical lock-up speed v_sync and
// grows linearly away from it. A constant parasitic loss (charge pump,
// lubrication) makes part-load operation relatively less efficient.
struct TransmissionParams {
  double v_sync_kmh = 10.0;
  // component efficiencies of the mechanical path, for reference
  double eta_spur = 0.99;
  double eta_planetary = 0.98;
  double eta_variator = 0.85;
  double eta_final_drive = 0.945;
  // calibrated full-load efficiency at v_sync; absorbs a constant auxiliary
  // derate on top of the mechanical component chain
  double peak_eta = 0.84;
  // effective variator power share per unit hydrostatic fraction, calibrated
  // so full-load efficiency is 0.82 at 4 km/h
  double hydro_weight = 50.0 / 189.0;
  // constant-loss parameter: part-load derate (1+z)*L/(L+z), calibrated so
  // efficiency at 15 % load is 0.75
  double parasitic_zeta = 9.0 / 416.0;
};

// Hydrostatic power fraction |1 - v/v_sync|, clamped to [0, 1]. v_kmh >= 0.
double hydro_fraction(const TransmissionParams& p, double v_kmh);

// Input-to-output efficiency at ground speed v_kmh in (0, 15] and load
// fraction in (0, 1]; load fractions above a 5 % overload margin saturate.
double transmission_efficiency(const TransmissionParams& p, double v_kmh,
                               double load_fraction);

} // namespace ecotim
