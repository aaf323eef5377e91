#include "ecotim/engine.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace ecotim {

namespace {
constexpr double kPowerTolKw = 1e-9;
}

double WillansMap::zero_load_flow(double rpm) const {
  const double n = rpm / 1000.0;
  return c1 + c2 * n + c3 * n * n;
}

double WillansMap::marginal_flow(double rpm) const {
  const double n = rpm / 1000.0;
  return c4 + c5 * n;
}

double WillansMap::full_load_power(double rpm) const {
  if (full_load.empty())
    throw std::runtime_error("fuel map: empty full-load envelope");
  const auto& first = full_load.front();
  // below the first knot assume constant torque, so power scales with speed
  if (rpm <= first.rpm)
    return first.power_kw * rpm / first.rpm;
  for (std::size_t i = 1; i < full_load.size(); ++i) {
    if (rpm <= full_load[i].rpm) {
      const auto& a = full_load[i - 1];
      const auto& b = full_load[i];
      const double t = (rpm - a.rpm) / (b.rpm - a.rpm);
      return a.power_kw + t * (b.power_kw - a.power_kw);
    }
  }
  return full_load.back().power_kw;
}

double WillansMap::rated_power() const {
  double p = 0.0;
  for (const auto& k : full_load) p = std::max(p, k.power_kw);
  return p;
}

WillansMap calibrate_willans(const std::vector<DynoPoint>& points,
                             double eta_pto,
                             double n_idle,
                             double n_torque_peak,
                             double n_rated,
                             const std::vector<EnvelopeKnot>& envelope_pto) {
  if (eta_pto <= 0.0 || eta_pto > 1.0)
    throw std::runtime_error("calibration: eta_pto must be in (0, 1]");
  if (points.size() < 5)
    throw std::runtime_error("calibration: need at least 5 dyno points");

  std::set<double> speeds, loads;
  for (const auto& p : points) {
    speeds.insert(p.rpm);
    loads.insert(p.power_pto_kw);
  }
  if (speeds.size() < 2 || loads.size() < 2)
    throw std::runtime_error(
        "calibration: need at least two distinct speeds and two load levels");

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(n, 5);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    const double nk = p.rpm / 1000.0;
    const double pw = p.power_pto_kw / eta_pto; // crank power
    a(i, 0) = 1.0;
    a(i, 1) = nk;
    a(i, 2) = nk * nk;
    a(i, 3) = pw;
    a(i, 4) = nk * pw;
    y(i) = p.fuel_g_per_h;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 5)
    throw std::runtime_error("calibration: regressor matrix is rank deficient");
  const Eigen::VectorXd c = qr.solve(y);

  WillansMap map;
  map.c1 = c(0);
  map.c2 = c(1);
  map.c3 = c(2);
  map.c4 = c(3);
  map.c5 = c(4);
  map.n_idle = n_idle;
  map.n_torque_peak = n_torque_peak;
  map.n_rated = n_rated;
  map.eta_pto = eta_pto;
  map.full_load.reserve(envelope_pto.size());
  for (const auto& k : envelope_pto)
    map.full_load.push_back({k.rpm, k.power_kw / eta_pto});
  std::sort(map.full_load.begin(), map.full_load.end(),
            [](const EnvelopeKnot& l, const EnvelopeKnot& r) { return l.rpm < r.rpm; });
  map.fit_rms_g_per_h = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(n));
  return map;
}

double fuel_flow(const WillansMap& map, double rpm, double power_kw) {
  if (rpm < map.n_idle - 1e-9 || rpm > map.n_rated + 1e-9)
    throw std::domain_error("fuel map: engine speed outside validity range");
  if (power_kw < -kPowerTolKw)
    throw std::domain_error("fuel map: negative power demand");
  if (power_kw > map.full_load_power(rpm) + 1e-6)
    throw std::domain_error("fuel map: power above the full-load envelope");
  return map.zero_load_flow(rpm) + map.marginal_flow(rpm) * power_kw;
}

double asae_sfc(double chi, double b_e_base, double f_pt) {
  if (chi <= 0.0)
    throw std::domain_error("reference sfc model: load fraction must be positive");
  return b_e_base * (0.22 + 0.096 / chi) * f_pt;
}

std::optional<EcoSelection> eco_mode_select(const WillansMap& map,
                                            double power_kw,
                                            double sweep_step_rpm) {
  if (power_kw < -kPowerTolKw)
    throw std::domain_error("eco mode: negative power demand");
  power_kw = std::max(power_kw, 0.0);

  std::vector<double> grid;
  for (double n = map.n_torque_peak; n < map.n_rated - 1e-9; n += sweep_step_rpm)
    grid.push_back(n);
  grid.push_back(map.n_rated);

  if (power_kw <= kPowerTolKw) {
    // zero demand: minimise the zero-load flow; b_e is undefined here
    double best_n = grid.front();
    double best_m0 = map.zero_load_flow(best_n);
    for (double n : grid) {
      const double m0 = map.zero_load_flow(n);
      if (m0 < best_m0) {
        best_m0 = m0;
        best_n = n;
      }
    }
    EcoSelection sel;
    sel.op = {best_n, 0.0, std::numeric_limits<double>::infinity(), 0.0};
    sel.fuel_g_per_h = best_m0;
    return sel;
  }

  if (power_kw > map.rated_power() + 1e-6)
    return std::nullopt; // overload

  // add the exact speeds where the envelope equals the demand, so the
  // binding boundary of the feasible set is part of the candidate list
  for (std::size_t i = 1; i < map.full_load.size(); ++i) {
    const auto& a = map.full_load[i - 1];
    const auto& b = map.full_load[i];
    const double lo = std::min(a.power_kw, b.power_kw);
    const double hi = std::max(a.power_kw, b.power_kw);
    if (power_kw >= lo && power_kw <= hi && hi > lo) {
      const double t = (power_kw - a.power_kw) / (b.power_kw - a.power_kw);
      const double n = a.rpm + t * (b.rpm - a.rpm);
      if (n >= map.n_torque_peak - 1e-9 && n <= map.n_rated + 1e-9)
        grid.push_back(n);
    }
  }
  std::sort(grid.begin(), grid.end());

  bool found = false;
  EcoSelection best;
  for (double n : grid) {
    if (map.full_load_power(n) + 1e-6 < power_kw) continue;
    const double fuel = map.zero_load_flow(n) + map.marginal_flow(n) * power_kw;
    const double b_e = fuel / power_kw;
    if (!found || b_e < best.op.b_e) {
      found = true;
      best.op = {n, power_kw, b_e, power_kw / map.rated_power()};
      best.fuel_g_per_h = fuel;
    }
  }
  if (!found) return std::nullopt;
  return best;
}

double best_sfc(const WillansMap& map, double sweep_step_rpm) {
  double best = std::numeric_limits<double>::infinity();
  for (double n = map.n_torque_peak;; n += sweep_step_rpm) {
    if (n > map.n_rated) n = map.n_rated;
    const double p = map.full_load_power(n);
    if (p > kPowerTolKw) {
      const double b_e = (map.zero_load_flow(n) + map.marginal_flow(n) * p) / p;
      best = std::min(best, b_e);
    }
    if (n >= map.n_rated) break;
  }
  return best;
}

} // namespace ecotim
