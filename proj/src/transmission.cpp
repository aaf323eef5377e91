#include "ecotim/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecotim {

double hydro_fraction(const TransmissionParams& p, double v_kmh) {
  if (v_kmh < 0.0)
    throw std::domain_error("transmission: speed must be non-negative");
  return std::min(1.0, std::fabs(1.0 - v_kmh / p.v_sync_kmh));
}

double transmission_efficiency(const TransmissionParams& p, double v_kmh,
                               double load_fraction) {
  if (v_kmh <= 0.0 || v_kmh > 15.0)
    throw std::domain_error("transmission: speed outside (0, 15] km/h");
  if (load_fraction <= 0.0)
    throw std::domain_error("transmission: efficiency undefined at zero load");

  const double l = std::min(load_fraction, 1.05);
  const double f = hydro_fraction(p, v_kmh);
  const double blend = 1.0 - p.hydro_weight * f * (1.0 - p.eta_variator);
  const double z = p.parasitic_zeta;
  const double derate = (1.0 + z) * l / (l + z);
  return p.peak_eta * blend * derate;
}

} // namespace ecotim
