#pragma once

#include <optional>
#include <utility>

namespace ecotim {

// One axle treated as a lumped wheel: both tyres of the axle are represented
// by a single contact carrying the full axle load.
struct TyreConfig {
  double section_width_m = 0.0;
  double overall_diameter_m = 0.0;
  double deflection_ratio = 0.25; // tyre deflection over section height
  double axle_load_n = 0.0;       // static vertical load on the axle
  double k_mp = 1.0;              // multi-pass cone index multiplier
};

struct TractionSolution {
  double slip = 0.0;
  double kappa = 0.0; // net pull coefficient, pull / axle load
  double rho = 0.0;   // motion resistance coefficient
  double eta = 0.0;   // tractive efficiency kappa/(kappa+rho)*(1-slip)
  double bn = 0.0;    // mobility number used
};

// Dimensionless mobility number Bn = (CI*b*d/W) * (1+5*delta) / (1+3*b/d)
// with W in kN. The cone index is scaled by the tyre's multi-pass factor.
double mobility_number(const TyreConfig& tyre, double ci_kpa);

// Net pull and motion resistance coefficients at mobility number bn and
// slip s: kappa = 0.88*(1-exp(-0.08*bn))*(1-exp(-7*s)) - rho,
// rho = 1.2/bn + 0.5*s/sqrt(bn) + 0.03.
std::pair<double, double> traction_curves(double bn, double s);

// Slip that produces the demanded pull on this axle, solved by bisection to
// a force residual of at most 1 N. Returns std::nullopt when the demand
// cannot be met at any slip up to s_max (traction limit).
std::optional<TractionSolution> solve_slip(const TyreConfig& tyre,
                                           double ci_kpa, double pull_n,
                                           double s_max = 0.25);

} // namespace ecotim
