#include <doctest.h>

#include "ecotim/scenario.hpp"
#include "ecotim/tractor_ecu.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

using namespace ecotim;

namespace {
const TractorEcu& ecu() {
  static const TractorEcu e(TractorParams::standard());
  return e;
}
} // namespace

TEST_CASE("speed response combines feed-forward and setpoint tracking") {
  // worked example: v = 2.0 m/s, command 2.5 m/s at 0.2 m/s^2, dt = 0.1 s
  //   2.0 + 0.2*0.1 + (0.1/2.0)*(2.5-2.0) = 2.045
  CHECK(ecu().respond(2.0, 2.5, 0.2, 0.1) == doctest::Approx(2.045).epsilon(1e-12));

  // at the setpoint with no feed-forward nothing moves
  CHECK(ecu().respond(1.8, 1.8, std::nullopt, 0.1) == doctest::Approx(1.8));
  CHECK(ecu().respond(1.8, 1.8, 0.0, 0.1) == doctest::Approx(1.8));

  // a missing acceleration behaves exactly like zero
  CHECK(ecu().respond(2.0, 2.5, std::nullopt, 0.1) ==
        doctest::Approx(ecu().respond(2.0, 2.5, 0.0, 0.1)).epsilon(1e-15));

  // the two terms superpose
  const double base = ecu().respond(2.0, 2.5, 0.0, 0.1);
  CHECK(ecu().respond(2.0, 2.5, 0.3, 0.1) ==
        doctest::Approx(base + 0.3 * 0.1).epsilon(1e-12));

  // exponential approach: repeated steps converge towards the setpoint
  double v = 1.0;
  for (int i = 0; i < 400; ++i) v = ecu().respond(v, 2.5, std::nullopt, 0.1);
  CHECK(v == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("overall efficiency is the exact product of the three stages") {
  for (double v : {4.0, 6.0, 8.0}) {
    for (double draft : {5000.0, 12000.0, 20000.0}) {
      const auto st = ecu().evaluate(v, draft, 1050.0, 0.0);
      REQUIRE(st.has_value());
      CHECK(st->eta_tractor ==
            doctest::Approx(st->eta_engine_rel * st->eta_transmission *
                            st->eta_tractive)
                .epsilon(1e-14));
      CHECK(st->eta_tractor > 0.0);
      CHECK(st->eta_tractor < 1.0);
      CHECK(st->fixed_point_iters <= 10);
      CHECK(st->fuel_g_per_h > 0.0);
    }
  }
}

TEST_CASE("powertrain energy bookkeeping is consistent") {
  const auto st = ecu().evaluate(6.0, 15000.0, 1050.0, 0.0);
  REQUIRE(st.has_value());
  // drawbar power from pull and speed
  CHECK(st->p_drawbar_w == doctest::Approx(15000.0 * 6.0 / 3.6).epsilon(1e-12));
  // wheel power exceeds drawbar power by the slip and rolling losses
  CHECK(st->p_wheel_w > st->p_drawbar_w);
  CHECK(st->eta_tractive ==
        doctest::Approx(st->p_drawbar_w / st->p_wheel_w).epsilon(1e-12));
  // crank power backs out through the transmission efficiency
  CHECK(st->p_crank_kw * 1000.0 * st->eta_transmission ==
        doctest::Approx(st->p_wheel_w).epsilon(1e-12));
  // the load fraction the fixed point settled on reproduces itself
  CHECK(st->load_fraction ==
        doctest::Approx(st->p_crank_kw / ecu().params().p_rated_kw)
            .epsilon(2e-4));
}

TEST_CASE("grade forces shift the pull demand") {
  const auto flat = ecu().evaluate(6.0, 10000.0, 1050.0, 0.0);
  const auto up = ecu().evaluate(6.0, 10000.0, 1050.0, 0.05);
  const auto down = ecu().evaluate(6.0, 10000.0, 1050.0, -0.05);
  REQUIRE(flat);
  REQUIRE(up);
  REQUIRE(down);
  const double w = ecu().weight_n();
  CHECK(up->pull_n == doctest::Approx(10000.0 + w * std::sin(std::atan(0.05)))
                          .epsilon(1e-12));
  CHECK(down->pull_n == doctest::Approx(10000.0 - w * std::sin(std::atan(0.05)))
                            .epsilon(1e-12));
  CHECK(up->fuel_g_per_h > flat->fuel_g_per_h);
  CHECK(down->fuel_g_per_h < flat->fuel_g_per_h);

  // a steep descent can exceed the draft; the demand clamps at zero
  const auto coast = ecu().evaluate(6.0, 1000.0, 1050.0, -0.08);
  REQUIRE(coast);
  CHECK(coast->pull_n == 0.0);
}

TEST_CASE("evaluate signals traction and power limits") {
  // far beyond the slip ceiling on soft ground
  CHECK(ecu().evaluate(5.0, 40000.0, 800.0, 0.0) == std::nullopt);
  // heavy draft at high speed exceeds the rated envelope
  CHECK(ecu().evaluate(9.5, 24000.0, 1300.0, 0.0) == std::nullopt);
  CHECK_THROWS_AS(ecu().evaluate(0.0, 1000.0, 1050.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(ecu().evaluate(5.0, -1.0, 1050.0, 0.0), std::domain_error);
}

TEST_CASE("central difference helper") {
  bool one_sided = false;
  auto constant = [](double) -> std::optional<double> { return 5.0; };
  auto d0 = central_difference(constant, 1.0, 0.3, one_sided);
  REQUIRE(d0);
  CHECK(*d0 == doctest::Approx(0.0));
  CHECK(!one_sided);

  auto affine = [](double x) -> std::optional<double> { return 3.0 * x + 1.0; };
  auto d1 = central_difference(affine, 2.0, 0.3, one_sided);
  REQUIRE(d1);
  CHECK(*d1 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(!one_sided);

  // upper probe fails: falls back to the lower one-sided difference
  auto capped = [](double x) -> std::optional<double> {
    if (x > 2.1) return std::nullopt;
    return 3.0 * x + 1.0;
  };
  auto d2 = central_difference(capped, 2.0, 0.3, one_sided);
  REQUIRE(d2);
  CHECK(*d2 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(one_sided);

  // nothing evaluable at all
  auto never = [](double) -> std::optional<double> { return std::nullopt; };
  CHECK(central_difference(never, 2.0, 0.3, one_sided) == std::nullopt);
}

TEST_CASE("broadcast efficiency derivative tracks a fine-step reference") {
  const auto& s1 = scenario_by_id("S1");
  for (double v : {5.0, 6.5, 7.5}) { // away from the lock-up kink at 10
    const double draft = draft_force(s1.draft, v);
    const auto d = ecu().efficiency_derivative(v, draft, 1050.0, 0.0);
    CHECK(!d.one_sided);

    // reference slope with h = 0.01 km/h, same held draft
    const double h = 0.01;
    const auto hi = ecu().evaluate(v + h, draft, 1050.0, 0.0);
    const auto lo = ecu().evaluate(v - h, draft, 1050.0, 0.0);
    REQUIRE(hi);
    REQUIRE(lo);
    const double ref = (hi->eta_tractor - lo->eta_tractor) / (2.0 * h) * 3.6;
    if (std::fabs(ref) > 1e-3) {
      CHECK(d.per_ms == doctest::Approx(ref).epsilon(0.05));
    }
  }
}

TEST_CASE("derivative probes fall back near the feasibility edge") {
  const auto& s2 = scenario_by_id("S2");
  const auto vmax = ecu().max_feasible_speed(s2.draft, 1050.0, 0.0, s2.v_min_kmh,
                                             s2.v_max_kmh);
  REQUIRE(vmax);
  REQUIRE(*vmax < s2.v_max_kmh); // the six-furrow plough is power limited
  const double v = *vmax - 0.1;  // the +0.3 probe lands beyond the limit
  const double draft = draft_force(s2.draft, v);
  const auto d = ecu().efficiency_derivative(v, draft, 1050.0, 0.0);
  CHECK(d.one_sided);
}

TEST_CASE("max feasible speed matches a brute-force sweep") {
  for (const auto& sc : standard_scenarios()) {
    for (double ci : {800.0, 1050.0, 1300.0}) {
      const auto fast = ecu().max_feasible_speed(sc.draft, ci, 0.0, sc.v_min_kmh,
                                                 sc.v_max_kmh);
      // brute force: walk down from the top in 0.001 km/h steps
      std::optional<double> ref;
      for (double v = sc.v_max_kmh; v >= sc.v_min_kmh - 1e-9; v -= 0.001) {
        if (ecu().evaluate(v, draft_force(sc.draft, v), ci, 0.0)) {
          ref = v;
          break;
        }
      }
      CAPTURE(sc.id);
      CAPTURE(ci);
      REQUIRE(fast.has_value() == ref.has_value());
      if (ref) CHECK(std::fabs(*fast - *ref) <= 0.011);
    }
  }
}

TEST_CASE("an infeasible floor yields no feasible speed at all") {
  // absurdly heavy hypothetical implement
  DraftCoefficients heavy{2000.0, 0.0, 20.0, 0.70, 4.0, 40.0};
  CHECK(ecu().max_feasible_speed(heavy, 800.0, 0.0, 4.0, 10.0) == std::nullopt);
}

TEST_CASE("fuel map calibration on the factory dyno table") {
  CHECK(ecu().fuel_map().fit_rms_g_per_h < 1.0);
  CHECK(ecu().best_sfc() == doctest::Approx(207.4).epsilon(0.002));
  // axle loads split 40/60
  CHECK(ecu().params().front_tyre.axle_load_n ==
        doctest::Approx(0.40 * 8540.0 * 9.80665).epsilon(1e-12));
  CHECK(ecu().params().rear_tyre.axle_load_n ==
        doctest::Approx(0.60 * 8540.0 * 9.80665).epsilon(1e-12));
}
