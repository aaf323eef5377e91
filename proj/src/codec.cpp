#include "ecotim/codec.hpp"

#include "ecotim/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ecotim {

namespace {

long long quantize(double value, double lsb, double lo, double hi,
                   const char* field) {
  if (!(value >= lo - 1e-12 && value <= hi + 1e-12))
    throw std::domain_error(std::string("codec: ") + field + " out of range");
  return std::llround(value / lsb);
}

void put_u16(Frame& f, int at, std::uint16_t raw) {
  f.data[at] = static_cast<std::uint8_t>(raw & 0xFF);
  f.data[at + 1] = static_cast<std::uint8_t>(raw >> 8);
}

std::uint16_t get_u16(const Frame& f, int at) {
  return static_cast<std::uint16_t>(f.data[at] | (f.data[at + 1] << 8));
}

void put_u32(Frame& f, int at, std::uint32_t raw) {
  for (int i = 0; i < 4; ++i)
    f.data[at + i] = static_cast<std::uint8_t>((raw >> (8 * i)) & 0xFF);
}

std::uint32_t get_u32(const Frame& f, int at) {
  std::uint32_t raw = 0;
  for (int i = 0; i < 4; ++i)
    raw |= static_cast<std::uint32_t>(f.data[at + i]) << (8 * i);
  return raw;
}

std::uint8_t percent_u8(double pct, const char* field) {
  // 0.4 % per bit, raw values above 250 are reserved
  const long long raw = quantize(pct, 0.4, 0.0, 100.0, field);
  return static_cast<std::uint8_t>(raw);
}

double percent_from_u8(std::uint8_t raw, const char* field) {
  if (raw > 250)
    throw std::domain_error(std::string("codec: ") + field + " uses a reserved raw value");
  return raw * 0.4;
}

void expect_pgn(const Frame& f, std::uint32_t want) {
  if (f.pgn != want)
    throw std::runtime_error("codec: frame has unexpected parameter group");
}

} // namespace

Frame encode_efficiency(const EfficiencyBroadcast& m) {
  Frame f;
  f.pgn = pgn::kEfficiencyBroadcast;
  put_u16(f, 0, static_cast<std::uint16_t>(
                    quantize(m.eta_tractor_pct, 0.01, 0.0, 100.0, "efficiency")));
  const long long deta =
      quantize(m.deta_dv_pct_s_per_m, 0.01, -327.67, 327.67, "efficiency slope");
  put_u16(f, 2, static_cast<std::uint16_t>(static_cast<std::int16_t>(deta)));
  f.data[4] = percent_u8(m.eta_engine_pct, "engine efficiency");
  f.data[5] = percent_u8(m.eta_transmission_pct, "transmission efficiency");
  f.data[6] = percent_u8(m.eta_tractive_pct, "tractive efficiency");
  f.data[7] = percent_u8(m.engine_load_pct, "engine load");
  return f;
}

EfficiencyBroadcast decode_efficiency(const Frame& f) {
  expect_pgn(f, pgn::kEfficiencyBroadcast);
  EfficiencyBroadcast m;
  m.eta_tractor_pct = get_u16(f, 0) * 0.01;
  m.deta_dv_pct_s_per_m = static_cast<std::int16_t>(get_u16(f, 2)) * 0.01;
  m.eta_engine_pct = percent_from_u8(f.data[4], "engine efficiency");
  m.eta_transmission_pct = percent_from_u8(f.data[5], "transmission efficiency");
  m.eta_tractive_pct = percent_from_u8(f.data[6], "tractive efficiency");
  m.engine_load_pct = percent_from_u8(f.data[7], "engine load");
  return m;
}

Frame encode_ground_speed(const GroundSpeed& m) {
  Frame f;
  f.pgn = pgn::kGroundSpeed;
  put_u16(f, 0, static_cast<std::uint16_t>(
                    quantize(m.speed_ms, 0.001, 0.0, 65.534, "ground speed")));
  put_u32(f, 2, static_cast<std::uint32_t>(
                    quantize(m.distance_m, 0.001, 0.0, 4294967.294, "distance")));
  return f;
}

GroundSpeed decode_ground_speed(const Frame& f) {
  expect_pgn(f, pgn::kGroundSpeed);
  return {get_u16(f, 0) * 0.001, get_u32(f, 2) * 0.001};
}

Frame encode_hitch(const HitchState& m) {
  Frame f;
  f.pgn = pgn::kRearHitch;
  f.data[0] = percent_u8(m.position_pct, "hitch position");
  put_u16(f, 1, static_cast<std::uint16_t>(
                    quantize(m.draft_n, 10.0, 0.0, 655340.0, "draft force")));
  return f;
}

HitchState decode_hitch(const Frame& f) {
  expect_pgn(f, pgn::kRearHitch);
  return {percent_from_u8(f.data[0], "hitch position"), get_u16(f, 1) * 10.0};
}

Frame encode_speed_accel(const SpeedAccelCommand& m) {
  Frame f;
  f.pgn = pgn::kSpeedCommand;
  put_u16(f, 0, static_cast<std::uint16_t>(
                    quantize(m.speed_ms, 0.001, 0.0, 65.534, "speed setpoint")));
  if (m.accel_ms2) {
    long long raw = quantize(*m.accel_ms2, 0.001, -8.0, 8.0, "acceleration");
    // raw -1 would collide with the 0xFFFF absent marker; shift it to the
    // nearer neighbour so the error stays within one quantum
    if (raw == -1) raw = *m.accel_ms2 < -0.001 ? -2 : 0;
    put_u16(f, 5, static_cast<std::uint16_t>(static_cast<std::int16_t>(raw)));
  }
  return f;
}

SpeedAccelCommand decode_speed_accel(const Frame& f) {
  expect_pgn(f, pgn::kSpeedCommand);
  SpeedAccelCommand m;
  m.speed_ms = get_u16(f, 0) * 0.001;
  const std::uint16_t raw = get_u16(f, 5);
  if (raw != 0xFFFF)
    m.accel_ms2 = static_cast<std::int16_t>(raw) * 0.001;
  return m;
}

double bus_load(double frames_per_second) {
  if (frames_per_second < 0.0)
    throw std::domain_error("codec: frame rate must be non-negative");
  return frames_per_second * kCanFrameBits / kCanBitrate;
}

} // namespace ecotim
