#pragma once

#include "ecotim/codec.hpp"
#include "ecotim/draft.hpp"

#include <optional>

namespace ecotim {

struct OptimizerConfig {
  double probe_kmh = 0.5;   // draft/efficiency probe half-width
  double k_v = 2.0;         // speed step gain on the normalised gradient
  double dv_max_kmh = 0.5;  // speed step clamp per cycle
  double k_a = 1.0;         // acceleration gain
  double a_max_ms2 = 0.5;   // acceleration clamp
  double v_min_kmh = 2.0;
  double v_max_kmh = 12.0;
  double eta_floor = 0.01;  // lower bound for linearised efficiencies
  int capability_timeout_ticks = 3;
  int cycle_divisor = 1; // recompute the command every n-th tick
};

struct OptimizeResult {
  SpeedAccelCommand command;
  bool fault_hold = false; // linearisation failed, caller should hold
  double gradient = 0.0;   // normalised fuel-per-area gradient
};

// One optimizer evaluation: probes the implement's own draft model around the
// current speed, linearises the received tractor efficiency, and steps down
// the normalised gradient of draft over efficiency (proportional to fuel per
// worked area).
OptimizeResult optimize_step(const OptimizerConfig& cfg,
                             const DraftCoefficients& draft,
                             const EfficiencyBroadcast& rx,
                             double v_actual_kmh);

// Stateful implement controller fed with raw frames once per simulation tick.
class ImplementEcu {
 public:
  ImplementEcu(OptimizerConfig cfg, DraftCoefficients draft);

  // Consume this tick's frames (either may be missing) and produce the speed
  // command frame, or std::nullopt while the ECU is not command capable.
  std::optional<Frame> tick(const std::optional<Frame>& efficiency,
                            const std::optional<Frame>& ground_speed);

  bool command_capable() const;
  int fault_hold_count() const { return fault_holds_; }

 private:
  OptimizerConfig cfg_;
  DraftCoefficients draft_;
  std::optional<EfficiencyBroadcast> rx_;
  std::optional<double> v_actual_ms_;
  std::optional<SpeedAccelCommand> last_cmd_;
  int ticks_since_rx_ = 1 << 20;
  long tick_count_ = 0;
  int fault_holds_ = 0;
};

} // namespace ecotim
