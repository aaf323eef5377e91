#include "ecotim/implement_ecu.hpp"

#include "ecotim/constants.hpp"

#include <algorithm>
#include <cmath>

namespace ecotim {

namespace {
constexpr double kZeroDraftN = 0.5; // below this the tool is considered idle
}

OptimizeResult optimize_step(const OptimizerConfig& cfg,
                             const DraftCoefficients& draft,
                             const EfficiencyBroadcast& rx,
                             double v_actual_kmh) {
  OptimizeResult out;
  const double v = v_actual_kmh;
  auto clip_speed = [&](double s) {
    return std::clamp(s, cfg.v_min_kmh, cfg.v_max_kmh);
  };

  const double f0 = draft_force(draft, v);
  if (f0 < kZeroDraftN) {
    // nothing resists: fuel per area falls monotonically with speed
    out.command.speed_ms = clip_speed(v + cfg.dv_max_kmh) * kKmhToMs;
    out.command.accel_ms2 = cfg.a_max_ms2;
    return out;
  }

  const double eta0 = rx.eta_tractor_pct / 100.0;
  // broadcast slope is per m/s; the optimizer works in km/h
  const double slope_kmh = rx.deta_dv_pct_s_per_m / 100.0 / kMsToKmh;
  if (eta0 <= 0.0) {
    out.fault_hold = true;
    return out;
  }

  // linearise the efficiency at the probe speeds; if that goes non-positive,
  // shrink the probe once, then give up for this cycle
  double h = cfg.probe_kmh;
  double eta_p = 0.0, eta_m = 0.0;
  bool ok = false;
  for (int attempt = 0; attempt < 2; ++attempt) {
    eta_p = eta0 + slope_kmh * h;
    eta_m = eta0 - slope_kmh * h;
    if (eta_p > 0.0 && eta_m > 0.0) {
      ok = true;
      break;
    }
    h *= 0.5;
  }
  if (!ok) {
    out.fault_hold = true;
    return out;
  }
  eta_p = std::max(eta_p, cfg.eta_floor);
  eta_m = std::max(eta_m, cfg.eta_floor);

  const double fp = draft_force(draft, v + h);
  const double fm = draft_force(draft, std::max(0.0, v - h));
  const double slope = (fp / eta_p - fm / eta_m) / (2.0 * h);
  out.gradient = slope / (f0 / eta0); // per km/h, scale free

  const double dv = std::clamp(-cfg.k_v * out.gradient, -cfg.dv_max_kmh, cfg.dv_max_kmh);
  out.command.speed_ms = clip_speed(v + dv) * kKmhToMs;
  out.command.accel_ms2 =
      std::clamp(-cfg.k_a * out.gradient, -cfg.a_max_ms2, cfg.a_max_ms2);
  return out;
}

ImplementEcu::ImplementEcu(OptimizerConfig cfg, DraftCoefficients draft)
    : cfg_(cfg), draft_(draft) {}

bool ImplementEcu::command_capable() const {
  return ticks_since_rx_ < cfg_.capability_timeout_ticks && v_actual_ms_.has_value();
}

std::optional<Frame> ImplementEcu::tick(const std::optional<Frame>& efficiency,
                                        const std::optional<Frame>& ground_speed) {
  if (efficiency) {
    rx_ = decode_efficiency(*efficiency);
    ticks_since_rx_ = 0;
  } else if (ticks_since_rx_ < (1 << 20)) {
    ++ticks_since_rx_;
  }
  if (ground_speed) v_actual_ms_ = decode_ground_speed(*ground_speed).speed_ms;

  const long n = tick_count_++;
  if (!command_capable()) return std::nullopt; // stale broadcast: stay silent

  if (n % cfg_.cycle_divisor == 0) {
    const auto res = optimize_step(cfg_, draft_, *rx_, *v_actual_ms_ * kMsToKmh);
    if (res.fault_hold)
      ++fault_holds_; // keep the previous command
    else
      last_cmd_ = res.command;
  }
  if (!last_cmd_) return std::nullopt;
  return encode_speed_accel(*last_cmd_);
}

} // namespace ecotim
