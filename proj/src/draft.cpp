#include "ecotim/draft.hpp"

#include <stdexcept>

namespace ecotim {

static void check_speed(double v_kmh) {
  if (v_kmh < 0.0)
    throw std::domain_error("draft model: speed must be non-negative");
}

double draft_force(const DraftCoefficients& c, double v_kmh) {
  check_speed(v_kmh);
  const double specific = c.a + c.b * v_kmh + c.c * v_kmh * v_kmh;
  return c.soil_factor * specific * c.width_m * c.depth_cm;
}

double draft_gradient(const DraftCoefficients& c, double v_kmh) {
  check_speed(v_kmh);
  return c.soil_factor * (c.b + 2.0 * c.c * v_kmh) * c.width_m * c.depth_cm;
}

} // namespace ecotim
