#include <doctest.h>

#include "ecotim/codec.hpp"
#include "ecotim/constants.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace ecotim;

namespace {

struct GoldenRow {
  std::string kind;
  std::vector<double> fields;
  std::array<std::uint8_t, 8> bytes{};
};

std::vector<GoldenRow> load_golden() {
  std::ifstream in(ECOTIM_TEST_DATA_DIR "/golden_frames.txt");
  REQUIRE(in.good());
  std::vector<GoldenRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto bar = line.find('|');
    REQUIRE(bar != std::string::npos);
    GoldenRow row;
    std::istringstream head(line.substr(0, bar));
    head >> row.kind;
    double v;
    while (head >> v) row.fields.push_back(v);
    std::istringstream tail(line.substr(bar + 1));
    for (auto& b : row.bytes) {
      unsigned u;
      tail >> std::hex >> u;
      b = static_cast<std::uint8_t>(u);
    }
    rows.push_back(row);
  }
  REQUIRE(!rows.empty());
  return rows;
}

std::string hex(const std::array<std::uint8_t, 8>& d) {
  char buf[3 * 8 + 1];
  char* p = buf;
  for (auto b : d) p += std::snprintf(p, 4, "%02X ", b);
  return std::string(buf, p - 1);
}

} // namespace

TEST_CASE("frame layouts match the frozen byte fixtures") {
  for (const auto& row : load_golden()) {
    CAPTURE(row.kind);
    Frame f;
    if (row.kind == "efficiency") {
      REQUIRE(row.fields.size() == 6);
      f = encode_efficiency({row.fields[0], row.fields[1], row.fields[2],
                             row.fields[3], row.fields[4], row.fields[5]});
      CHECK(f.pgn == pgn::kEfficiencyBroadcast);
      const auto back = decode_efficiency(f);
      CHECK(back.eta_tractor_pct == doctest::Approx(row.fields[0]).epsilon(1e-9));
      CHECK(back.deta_dv_pct_s_per_m == doctest::Approx(row.fields[1]).epsilon(1e-9));
    } else if (row.kind == "ground_speed") {
      REQUIRE(row.fields.size() == 2);
      f = encode_ground_speed({row.fields[0], row.fields[1]});
      CHECK(f.pgn == pgn::kGroundSpeed);
    } else if (row.kind == "hitch") {
      REQUIRE(row.fields.size() == 2);
      f = encode_hitch({row.fields[0], row.fields[1]});
      CHECK(f.pgn == pgn::kRearHitch);
    } else if (row.kind == "speed_accel") {
      REQUIRE(row.fields.size() == 2);
      f = encode_speed_accel({row.fields[0], row.fields[1]});
      CHECK(f.pgn == pgn::kSpeedCommand);
    } else if (row.kind == "speed_accel_legacy") {
      REQUIRE(row.fields.size() == 1);
      f = encode_speed_accel({row.fields[0], std::nullopt});
      CHECK(f.pgn == pgn::kSpeedCommand);
    } else {
      FAIL("unknown fixture kind ", row.kind);
    }
    CHECK_MESSAGE(f.data == row.bytes, hex(f.data), " != ", hex(row.bytes));
  }
}

TEST_CASE("legacy command frames decode with the acceleration absent") {
  Frame f = encode_speed_accel({1.5, std::nullopt});
  CHECK(f.data[5] == 0xFF);
  CHECK(f.data[6] == 0xFF);
  const auto cmd = decode_speed_accel(f);
  CHECK(cmd.speed_ms == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(!cmd.accel_ms2.has_value());
}

TEST_CASE("tiny negative accelerations avoid the absent marker") {
  // raw -1 (0xFFFF) would read back as 'absent'; the encoder rounds it to 0
  Frame f = encode_speed_accel({2.0, -0.001});
  const auto cmd = decode_speed_accel(f);
  REQUIRE(cmd.accel_ms2.has_value());
  CHECK(*cmd.accel_ms2 == doctest::Approx(0.0));
  // the neighbouring code points are untouched
  CHECK(*decode_speed_accel(encode_speed_accel({2.0, -0.002})).accel_ms2 ==
        doctest::Approx(-0.002).epsilon(1e-9));
  CHECK(*decode_speed_accel(encode_speed_accel({2.0, 0.001})).accel_ms2 ==
        doctest::Approx(0.001).epsilon(1e-9));
}

TEST_CASE("round trips stay within quantization error") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> eta(0.0, 100.0);
  std::uniform_real_distribution<double> deta(-327.67, 327.67);
  std::uniform_real_distribution<double> speed(0.0, 65.534);
  std::uniform_real_distribution<double> dist(0.0, 4.0e6);
  std::uniform_real_distribution<double> draft(0.0, 60000.0);
  std::uniform_real_distribution<double> accel(-8.0, 8.0);

  for (int i = 0; i < 10000; ++i) {
    {
      EfficiencyBroadcast m{eta(rng), deta(rng), eta(rng),
                            eta(rng), eta(rng), eta(rng)};
      const auto back = decode_efficiency(encode_efficiency(m));
      CHECK(std::fabs(back.eta_tractor_pct - m.eta_tractor_pct) <= 0.005);
      CHECK(std::fabs(back.deta_dv_pct_s_per_m - m.deta_dv_pct_s_per_m) <= 0.005);
      CHECK(std::fabs(back.eta_engine_pct - m.eta_engine_pct) <= 0.2);
      CHECK(std::fabs(back.eta_transmission_pct - m.eta_transmission_pct) <= 0.2);
      CHECK(std::fabs(back.eta_tractive_pct - m.eta_tractive_pct) <= 0.2);
      CHECK(std::fabs(back.engine_load_pct - m.engine_load_pct) <= 0.2);
    }
    {
      GroundSpeed m{speed(rng), dist(rng)};
      const auto back = decode_ground_speed(encode_ground_speed(m));
      CHECK(std::fabs(back.speed_ms - m.speed_ms) <= 0.0005);
      CHECK(std::fabs(back.distance_m - m.distance_m) <= 0.0005);
    }
    {
      HitchState m{eta(rng), draft(rng)};
      const auto back = decode_hitch(encode_hitch(m));
      CHECK(std::fabs(back.position_pct - m.position_pct) <= 0.2);
      CHECK(std::fabs(back.draft_n - m.draft_n) <= 5.0);
    }
    {
      SpeedAccelCommand m{speed(rng), accel(rng)};
      const auto back = decode_speed_accel(encode_speed_accel(m));
      CHECK(std::fabs(back.speed_ms - m.speed_ms) <= 0.0005);
      REQUIRE(back.accel_ms2.has_value());
      // 1.5 LSB: half a bit of rounding plus the remapped -1 code point
      CHECK(std::fabs(*back.accel_ms2 - *m.accel_ms2) <= 0.0015);
    }
  }
}

TEST_CASE("out-of-range values are rejected at encode time") {
  CHECK_THROWS_AS(encode_efficiency({100.005, 0, 0, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(encode_efficiency({-0.01, 0, 0, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(encode_efficiency({50, 327.70, 0, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(encode_efficiency({50, -327.70, 0, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(encode_efficiency({50, 0, 100.4, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(encode_ground_speed({-0.001, 0}), std::domain_error);
  CHECK_THROWS_AS(encode_ground_speed({65.6, 0}), std::domain_error);
  CHECK_THROWS_AS(encode_ground_speed({1.0, -1.0}), std::domain_error);
  CHECK_THROWS_AS(encode_hitch({101.0, 0}), std::domain_error);
  CHECK_THROWS_AS(encode_hitch({50.0, -10.0}), std::domain_error);
  CHECK_THROWS_AS(encode_speed_accel({-0.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(encode_speed_accel({1.0, 8.1}), std::domain_error);
  CHECK_THROWS_AS(encode_speed_accel({1.0, -8.1}), std::domain_error);
}

TEST_CASE("decoders reject frames from the wrong parameter group") {
  Frame f = encode_ground_speed({1.0, 2.0});
  CHECK_THROWS_AS(decode_efficiency(f), std::runtime_error);
  CHECK_THROWS_AS(decode_hitch(f), std::runtime_error);
  CHECK_THROWS_AS(decode_speed_accel(f), std::runtime_error);
  Frame g = encode_efficiency({50, 0, 50, 50, 50, 50});
  CHECK_THROWS_AS(decode_ground_speed(g), std::runtime_error);
}

TEST_CASE("decoders reject reserved diagnostic code points") {
  Frame f = encode_efficiency({50, 0, 50, 50, 50, 50});
  f.data[4] = 0xFB; // first reserved raw value
  CHECK_THROWS_AS(decode_efficiency(f), std::domain_error);
}

TEST_CASE("bus load fractions") {
  CHECK(bus_load(10.0) == doctest::Approx(10.0 * 134.0 / 250000.0).epsilon(1e-12));
  CHECK(bus_load(10.0) < 0.01); // one extra 10 Hz broadcast costs under 1 %
  CHECK(bus_load(30.0) == doctest::Approx(0.016080).epsilon(1e-9));
  CHECK(bus_load(250000.0 / 134.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bus_load(0.0) == 0.0);
  CHECK_THROWS_AS(bus_load(-1.0), std::domain_error);
}
