#include <cmath>
#include <cstdint>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"

#include "qorder/counterfactual.hpp"
#include "qorder/errors.hpp"
#include "qorder/hardy.hpp"
#include "qorder/hilbert.hpp"
#include "qorder/montecarlo.hpp"
#include "support/generators.hpp"

using namespace qorder;
using namespace qorder::testing;

namespace {

MeasurementBasis computational(Factor factor, const std::string& plus,
                               const std::string& minus) {
  return MeasurementBasis(factor,
                          {Ket::basis_state(2, 0), Ket::basis_state(2, 1)},
                          {plus, minus});
}

/// Four-sigma binomial tolerance around an expected frequency.
bool within_4_sigma(std::uint64_t count, std::uint64_t n, double p) {
  const double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  return std::abs(static_cast<double>(count) - static_cast<double>(n) * p) <=
         4.0 * sigma + 1.0;
}

}  // namespace

TEST_CASE("count tables tally, look up and merge") {
  CountTable t({"L+", "L-"}, {"R+", "R-"});
  CHECK(t.n_total() == 0);
  t.add(0, 1);
  t.add(0, 1);
  t.add(1, 0, 5);
  CHECK(t.count(0, 1) == 2);
  CHECK(t.count("L+", "R-") == 2);
  CHECK(t.count("L-", "R+") == 5);
  CHECK(t.count("L+", "R+") == 0);
  CHECK(t.n_total() == 7);
  CHECK_THROWS_AS(t.count("L?", "R+"), UnknownLabel);
  CHECK_THROWS_AS(CountTable({}, {"R"}), InvalidArgument);

  CountTable u({"L+", "L-"}, {"R+", "R-"});
  u.add(1, 1, 3);

  // Merging is commutative and associative, so shard order cannot matter.
  CountTable ab = t;
  ab += u;
  CountTable ba = u;
  ba += t;
  CHECK(ab == ba);
  CHECK(ab.n_total() == 10);

  CountTable other({"A", "B"}, {"R+", "R-"});
  CHECK_THROWS_AS(t += other, InvalidArgument);
}

TEST_CASE("run streams are reproducible and run-indexed") {
  RunStream a(42, 7);
  RunStream b(42, 7);
  RunStream c(42, 8);
  RunStream d(43, 7);
  bool all_same = true;
  bool c_differs = false;
  bool d_differs = false;
  for (int i = 0; i < 16; ++i) {
    const double va = a.uniform();
    CHECK(va >= 0.0);
    CHECK(va < 1.0);
    all_same = all_same && va == b.uniform();
    c_differs = c_differs || va != c.uniform();
    d_differs = d_differs || va != d.uniform();
  }
  CHECK(all_same);
  CHECK(c_differs);
  CHECK(d_differs);
}

TEST_CASE("simulation rejects an empty run budget") {
  BipartiteSpace space(2, 2);
  DensityOperator rho = DensityOperator::maximally_mixed(space);
  MeasurementBasis lb = computational(Factor::left, "L+", "L-");
  MeasurementBasis rb = computational(Factor::right, "R+", "R-");
  CHECK_THROWS_AS(simulate(rho, lb, rb, {0, 1, OrderTag::r_first}),
                  InvalidArgument);
  CHECK_THROWS_AS(simulate_serial(rho, lb, rb, {0, 1, OrderTag::r_first}),
                  InvalidArgument);
}

TEST_CASE("a product of basis states lands every run in one cell") {
  BipartiteSpace space(2, 2);
  DensityOperator rho = DensityOperator::pure(
      tensor(Ket::basis_state(2, 0), Ket::basis_state(2, 1)), space);
  MeasurementBasis lb = computational(Factor::left, "L+", "L-");
  MeasurementBasis rb = computational(Factor::right, "R+", "R-");
  for (OrderTag order : {OrderTag::l_first, OrderTag::r_first}) {
    CountTable t = simulate(rho, lb, rb, {500, 11, order});
    CHECK(t.count("L+", "R-") == 500);
    CHECK(t.n_total() == 500);
  }
}

TEST_CASE("the maximally mixed state fills all cells evenly") {
  BipartiteSpace space(2, 2);
  DensityOperator rho = DensityOperator::maximally_mixed(space);
  MeasurementBasis lb = computational(Factor::left, "L+", "L-");
  MeasurementBasis rb = computational(Factor::right, "R+", "R-");
  const std::uint64_t n = 40000;
  CountTable t = simulate(rho, lb, rb, {n, 2024, OrderTag::r_first});
  CHECK(t.n_total() == n);
  for (const auto& l : t.l_labels()) {
    for (const auto& r : t.r_labels()) {
      CHECK(within_4_sigma(t.count(l, r), n, 0.25));
    }
  }
}

TEST_CASE("cell frequencies track the analytic joint probabilities") {
  HardyScenario s = build_hardy({0.6, 1.1});
  DensityOperator rho = DensityOperator::pure(s.ket0, s.space);
  const std::uint64_t n = 50000;
  for (OrderTag order : {OrderTag::l_first, OrderTag::r_first}) {
    CountTable t = simulate(rho, s.l2, s.r2, {n, 91, order});
    CHECK(t.n_total() == n);
    for (const auto& l : t.l_labels()) {
      for (const auto& r : t.r_labels()) {
        const double p = joint_prob(rho, s.l2, s.r2, l, r);
        CHECK(within_4_sigma(t.count(l, r), n, p));
      }
    }
  }
}

TEST_CASE("the two orders produce statistically identical joint counts") {
  HardyScenario s = build_hardy({std::atan(1.0), std::atan(1.0)});
  DensityOperator rho = DensityOperator::pure(s.ket0, s.space);
  const std::uint64_t n = 50000;
  CountTable lf = simulate(rho, s.l2, s.r2, {n, 404, OrderTag::l_first});
  CountTable rf = simulate(rho, s.l2, s.r2, {n, 405, OrderTag::r_first});
  for (const auto& l : lf.l_labels()) {
    for (const auto& r : lf.r_labels()) {
      const double p = joint_prob(rho, s.l2, s.r2, l, r);
      const double sigma =
          std::sqrt(static_cast<double>(n) * p * (1.0 - p));
      const double diff = static_cast<double>(lf.count(l, r)) -
                          static_cast<double>(rf.count(l, r));
      CHECK(std::abs(diff) <= 4.0 * std::sqrt(2.0) * sigma + 1.0);
    }
  }
}

TEST_CASE("empirical conditionals converge on the analytic values") {
  HardyScenario s = build_hardy({0.6, 1.1});
  DensityOperator rho = DensityOperator::pure(s.ket0, s.space);
  const std::uint64_t n = 50000;
  for (OrderTag order : {OrderTag::l_first, OrderTag::r_first}) {
    CountTable t = simulate(rho, s.l2, s.r2, {n, 1234, order});
    for (const auto& r : t.r_labels()) {
      std::uint64_t n_r = 0;
      for (const auto& l : t.l_labels()) {
        n_r += t.count(l, r);
      }
      for (const auto& l : t.l_labels()) {
        const double expected = conditional_prob(rho, s.l2, s.r2, l, r, order);
        const double freq = empirical_conditional(t, l, r);
        const double sigma = std::sqrt(
            expected * (1.0 - expected) / static_cast<double>(n_r));
        CHECK(std::abs(freq - expected) <= 4.0 * sigma + 1e-9);
      }
    }
  }
}

TEST_CASE("conditioning on an unseen outcome is an error, not a zero") {
  BipartiteSpace space(2, 2);
  DensityOperator rho = DensityOperator::pure(
      tensor(Ket::basis_state(2, 0), Ket::basis_state(2, 0)), space);
  MeasurementBasis lb = computational(Factor::left, "L+", "L-");
  MeasurementBasis rb = computational(Factor::right, "R+", "R-");
  CountTable t = simulate(rho, lb, rb, {200, 3, OrderTag::r_first});
  CHECK(empirical_conditional(t, "L+", "R+") == doctest::Approx(1.0));
  CHECK_THROWS_AS(empirical_conditional(t, "L+", "R-"), NoConditionEvents);
}

TEST_CASE("equal seeds reproduce the table bit for bit, fresh seeds move it") {
  HardyScenario s = build_hardy({0.6, 1.1});
  DensityOperator rho = DensityOperator::pure(s.ket0, s.space);
  RunConfig config{5000, 77, OrderTag::l_first};
  CountTable a = simulate(rho, s.l2, s.r2, config);
  CountTable b = simulate(rho, s.l2, s.r2, config);
  CHECK(a == b);
  CountTable c = simulate(rho, s.l2, s.r2, {5000, 78, OrderTag::l_first});
  CHECK(a != c);
}

TEST_CASE("the parallel kernel replays the serial reference exactly") {
  std::mt19937_64 rng(3301);
  HardyScenario s = build_hardy({0.6, 1.1});
  DensityOperator hardy_rho = DensityOperator::pure(s.ket0, s.space);
  for (OrderTag order : {OrderTag::l_first, OrderTag::r_first}) {
    CHECK(simulate(hardy_rho, s.l2, s.r2, {3000, 5, order}) ==
          simulate_serial(hardy_rho, s.l2, s.r2, {3000, 5, order}));
  }
  BipartiteSpace space(2, 3);
  for (int trial = 0; trial < 3; ++trial) {
    DensityOperator rho = random_density(rng, space);
    MeasurementBasis lb = random_basis(rng, Factor::left, 2, "l");
    MeasurementBasis rb = random_basis(rng, Factor::right, 3, "r");
    RunConfig config{2000, 900 + static_cast<std::uint64_t>(trial),
                     trial % 2 == 0 ? OrderTag::l_first : OrderTag::r_first};
    CHECK(simulate(rho, lb, rb, config) ==
          simulate_serial(rho, lb, rb, config));
  }
}

#ifdef _OPENMP
TEST_CASE("tallies are independent of the thread count") {
  HardyScenario s = build_hardy({0.6, 1.1});
  DensityOperator rho = DensityOperator::pure(s.ket0, s.space);
  RunConfig config{20000, 31337, OrderTag::r_first};
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  CountTable one = simulate(rho, s.l2, s.r2, config);
  omp_set_num_threads(2);
  CountTable two = simulate(rho, s.l2, s.r2, config);
  omp_set_num_threads(4);
  CountTable four = simulate(rho, s.l2, s.r2, config);
  omp_set_num_threads(saved);
  CHECK(one == two);
  CHECK(one == four);
}
#endif
