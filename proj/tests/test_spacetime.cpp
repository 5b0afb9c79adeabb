#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "qorder/errors.hpp"
#include "qorder/spacetime.hpp"
#include "support/generators.hpp"

using namespace qorder;
using namespace qorder::testing;

TEST_CASE("interval has signature (+,-,-,-)") {
  Event origin(0, 0, 0, 0);
  CHECK(interval(origin, origin) == 0.0);
  CHECK(interval(Event(0, 0, 0, 0), Event(0, 1, 0, 0)) == -1.0);
  CHECK(interval(Event(2, 1, 0, 0), Event(0, 0, 0, 0)) == 3.0);
  CHECK(interval(Event(0, 0, 2, 0), Event(0, 0, 0, 1)) == -5.0);
  // Symmetric in its arguments.
  CHECK(interval(Event(1, 2, 3, 4), Event(4, 3, 2, 1)) ==
        interval(Event(4, 3, 2, 1), Event(1, 2, 3, 4)));
}

TEST_CASE("causal separation is strict: the light cone counts as connected") {
  Event origin(0, 0, 0, 0);
  CHECK(causally_separated(Event(0, 1, 0, 0), origin));
  CHECK_FALSE(causally_separated(Event(2, 1, 0, 0), origin));
  CHECK_FALSE(causally_separated(Event(1, 1, 0, 0), origin));
  CHECK_FALSE(causally_separated(origin, origin));
}

TEST_CASE("events and boosts validate their inputs") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Event(inf, 0, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(Event(0, std::nan(""), 0, 0), InvalidArgument);
  CHECK_THROWS_AS(Boost({1.0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(Boost({0.8, 0.8, 0}), InvalidArgument);
  CHECK_THROWS_AS(Boost({0.5, 0, 0}, {inf, 0, 0, 0}), InvalidArgument);
  CHECK_NOTHROW(Boost({0.999, 0, 0}));
  Boost b({0.3, 0.4, 0.0});
  CHECK(b.speed() == doctest::Approx(0.5));
  CHECK(b.gamma() == doctest::Approx(1.0 / std::sqrt(0.75)));
}

TEST_CASE("zero boost with offset is a pure translation") {
  Boost shift({0, 0, 0}, {1, 2, 3, 4});
  Event moved = apply_boost(shift, Event(10, 20, 30, 40));
  CHECK(moved.t == 11.0);
  CHECK(moved.x == 22.0);
  CHECK(moved.y == 33.0);
  CHECK(moved.z == 44.0);
}

TEST_CASE("x-boost at half light speed matches the hand-evaluated matrix") {
  const double g = 1.0 / std::sqrt(0.75);
  Boost b({0.5, 0, 0});
  Event moved = apply_boost(b, Event(1, 0, 0, 0));
  CHECK(moved.t == doctest::Approx(g).epsilon(1e-12));
  CHECK(moved.x == doctest::Approx(-g * 0.5).epsilon(1e-12));
  CHECK(moved.y == 0.0);
  CHECK(moved.z == 0.0);

  // The same boost contracts a unit x-displacement at fixed t = 0.
  Event stick = apply_boost(b, Event(0, 1, 0, 0));
  CHECK(stick.t == doctest::Approx(-g * 0.5).epsilon(1e-12));
  CHECK(stick.x == doctest::Approx(g).epsilon(1e-12));
}

TEST_CASE("boosts preserve the interval") {
  std::mt19937_64 rng(7701);
  for (int trial = 0; trial < 200; ++trial) {
    Event p = random_event(rng);
    Event q = random_event(rng);
    Boost b = random_boost(rng);
    const double before = interval(p, q);
    const double after = interval(apply_boost(b, p), apply_boost(b, q));
    CHECK(std::abs(after - before) <= 1e-9 * (1.0 + std::abs(before)));
  }
}

TEST_CASE("time order of causally connected pairs is frame-invariant") {
  std::mt19937_64 rng(7702);
  for (int trial = 0; trial < 200; ++trial) {
    auto [p, q] = timelike_pair(rng);
    Boost b = random_boost(rng);
    const double before = p.t - q.t;
    const double after = apply_boost(b, p).t - apply_boost(b, q).t;
    CHECK(before * after > 0.0);
  }
}

TEST_CASE("order-reversing boost flips the documented example") {
  Event p(0.5, 0, 0, 0);
  Event q(0, 1, 0, 0);
  Boost b = find_order_reversing_boost(p, q);
  CHECK(b.speed() == doctest::Approx(0.75));
  CHECK(b.velocity()[0] == doctest::Approx(-0.75));
  const double dt_after = apply_boost(b, p).t - apply_boost(b, q).t;
  CHECK(dt_after < 0.0);
  CHECK(p.t - q.t > 0.0);
}

TEST_CASE("order-reversing boost works across random spacelike pairs") {
  std::mt19937_64 rng(7703);
  for (int trial = 0; trial < 200; ++trial) {
    auto [p, q] = spacelike_pair(rng);
    Boost b = find_order_reversing_boost(p, q);
    const double before = p.t - q.t;
    const double after = apply_boost(b, p).t - apply_boost(b, q).t;
    if (before == 0.0) {
      // Simultaneous in the fiducial frame: any boost along the separation
      // must produce a strict ordering.
      CHECK(after != 0.0);
    } else {
      CHECK(before * after < 0.0);
    }
  }
}

TEST_CASE("equal fiducial times still yield a strict boosted ordering") {
  Event p(3, -1, 2, 0);
  Event q(3, 4, 0, 1);
  Boost b = find_order_reversing_boost(p, q);
  CHECK(b.speed() == doctest::Approx(0.5));
  const double after = apply_boost(b, p).t - apply_boost(b, q).t;
  CHECK(after != 0.0);
}

TEST_CASE("no order-reversing boost exists inside or on the cone") {
  std::mt19937_64 rng(7704);
  CHECK_THROWS_AS(
      find_order_reversing_boost(Event(2, 1, 0, 0), Event(0, 0, 0, 0)),
      NotSpacelike);
  CHECK_THROWS_AS(
      find_order_reversing_boost(Event(1, 1, 0, 0), Event(0, 0, 0, 0)),
      NotSpacelike);
  CHECK_THROWS_AS(
      find_order_reversing_boost(Event(1, 2, 3, 4), Event(1, 2, 3, 4)),
      NotSpacelike);
  for (int trial = 0; trial < 50; ++trial) {
    auto [tp, tq] = timelike_pair(rng);
    CHECK_THROWS_AS(find_order_reversing_boost(tp, tq), NotSpacelike);
    auto [lp, lq] = lightlike_pair(rng);
    CHECK(interval(lp, lq) == 0.0);
    CHECK_THROWS_AS(find_order_reversing_boost(lp, lq), NotSpacelike);
  }
}

TEST_CASE("order tags are plain labels with readable names") {
  CHECK(to_string(OrderTag::l_first) == "l-first");
  CHECK(to_string(OrderTag::r_first) == "r-first");
}
