#pragma once

namespace ecotim {

// Implement draft model F = f_s * (A + B*v + C*v^2) * w * d with v in km/h,
// w in m, d in cm and F in N. The quadratic (A, B, C) characterises the tool
// family, f_s is a dimensionless soil texture factor.
struct DraftCoefficients {
  double a = 0.0; // N per (m * cm)
  double b = 0.0; // N*h per (m * cm * km)
  double c = 0.0; // N*h^2 per (m * cm * km^2)
  double soil_factor = 0.7;
  double width_m = 1.0;
  double depth_cm = 1.0;
};

// Draft force in N at ground speed v_kmh >= 0.
double draft_force(const DraftCoefficients& c, double v_kmh);

// Analytical dF/dv in N per km/h.
double draft_gradient(const DraftCoefficients& c, double v_kmh);

} // namespace ecotim
