#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace ecotim {

// 8-byte ISOBUS-style data frames addressed by parameter group number.
// Multi-byte fields are little endian, unused bytes are padded with 0xFF.
struct Frame {
  std::uint32_t pgn = 0; // 18-bit parameter group number
  std::array<std::uint8_t, 8> data{0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF};
};

namespace pgn {
// proprietary-A group used for the tractor efficiency broadcast
inline constexpr std::uint32_t kEfficiencyBroadcast = 61184;
inline constexpr std::uint32_t kGroundSpeed = 65096;
inline constexpr std::uint32_t kRearHitch = 65094;
inline constexpr std::uint32_t kSpeedCommand = 65098;
} // namespace pgn

// Tractor efficiency broadcast.
// bytes 0-1: overall efficiency, u16, 0.01 % per bit
// bytes 2-3: efficiency sensitivity to speed, i16, 0.01 (%*s/m) per bit
// bytes 4-7: diagnostic sub-efficiencies and engine load, u8, 0.4 % per bit
struct EfficiencyBroadcast {
  double eta_tractor_pct = 0.0;
  double deta_dv_pct_s_per_m = 0.0;
  double eta_engine_pct = 0.0;   // relative to the best map point
  double eta_transmission_pct = 0.0;
  double eta_tractive_pct = 0.0;
  double engine_load_pct = 0.0;
};

// Ground-based speed and distance.
// bytes 0-1: speed, u16, 0.001 m/s per bit
// bytes 2-5: distance, u32, 0.001 m per bit
struct GroundSpeed {
  double speed_ms = 0.0;
  double distance_m = 0.0;
};

// Rear hitch state.
// byte 0: hitch position, u8, 0.4 % per bit
// bytes 1-2: draft force, u16, 10 N per bit
struct HitchState {
  double position_pct = 0.0;
  double draft_n = 0.0;
};

// Speed command with the acceleration extension.
// bytes 0-1: speed setpoint, u16, 0.001 m/s per bit
// bytes 5-6: commanded acceleration, i16, 0.001 m/s^2 per bit;
//            0xFFFF marks the field as absent (legacy frames)
struct SpeedAccelCommand {
  double speed_ms = 0.0;
  std::optional<double> accel_ms2; // empty on legacy frames
};

Frame encode_efficiency(const EfficiencyBroadcast& m);
EfficiencyBroadcast decode_efficiency(const Frame& f);

Frame encode_ground_speed(const GroundSpeed& m);
GroundSpeed decode_ground_speed(const Frame& f);

Frame encode_hitch(const HitchState& m);
HitchState decode_hitch(const Frame& f);

Frame encode_speed_accel(const SpeedAccelCommand& m);
SpeedAccelCommand decode_speed_accel(const Frame& f);

// Fraction of the 250 kbit/s bus consumed by the given frame rate, assuming
// worst-case frame size.
double bus_load(double frames_per_second);

} // namespace ecotim
