#include "ecotim/traction.hpp"

#include <cmath>
#include <stdexcept>

namespace ecotim {

double mobility_number(const TyreConfig& tyre, double ci_kpa) {
  if (ci_kpa <= 0.0)
    throw std::domain_error("traction: cone index must be positive");
  if (tyre.axle_load_n <= 0.0)
    throw std::domain_error("traction: axle load must be positive");
  const double b = tyre.section_width_m;
  const double d = tyre.overall_diameter_m;
  const double w_kn = tyre.axle_load_n / 1000.0;
  const double ci = ci_kpa * tyre.k_mp;
  return (ci * b * d / w_kn) * (1.0 + 5.0 * tyre.deflection_ratio) /
         (1.0 + 3.0 * b / d);
}

std::pair<double, double> traction_curves(double bn, double s) {
  if (bn <= 0.0)
    throw std::domain_error("traction: mobility number must be positive");
  if (s < 0.0 || s >= 1.0)
    throw std::domain_error("traction: slip outside [0, 1)");
  const double rho = 1.2 / bn + 0.5 * s / std::sqrt(bn) + 0.03;
  const double gross = 0.88 * (1.0 - std::exp(-0.08 * bn)) * (1.0 - std::exp(-7.0 * s));
  return {gross - rho, rho};
}

std::optional<TractionSolution> solve_slip(const TyreConfig& tyre,
                                           double ci_kpa, double pull_n,
                                           double s_max) {
  if (pull_n < 0.0)
    throw std::domain_error("traction: pull demand must be non-negative");

  const double bn = mobility_number(tyre, ci_kpa);
  const double w = tyre.axle_load_n;
  const double target = pull_n / w;

  auto net = [bn](double s) { return traction_curves(bn, s).first; };

  if (net(s_max) < target) return std::nullopt; // traction limit

  // kappa(s) is monotone increasing over the bracket, bisect on force.
  // The interval is driven to exhaustion rather than stopping at the 1 N
  // residual bound, so the solution is a smooth function of the demand and
  // finite differences across it stay clean.
  double lo = 0.0, hi = s_max, mid = s_max;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    mid = 0.5 * (lo + hi);
    const double res = (net(mid) - target) * w;
    (res < 0.0 ? lo : hi) = mid;
  }

  TractionSolution sol;
  sol.slip = mid;
  sol.bn = bn;
  auto [kappa, rho] = traction_curves(bn, mid);
  sol.kappa = kappa;
  sol.rho = rho;
  sol.eta = (kappa > 0.0) ? kappa / (kappa + rho) * (1.0 - mid) : 0.0;
  return sol;
}

} // namespace ecotim
