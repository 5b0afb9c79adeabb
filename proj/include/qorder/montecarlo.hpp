#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qorder/hilbert.hpp"
#include "qorder/measurement.hpp"
#include "qorder/spacetime.hpp"

namespace qorder {

/// Repetition count, RNG seed and the hypothesized jump order for a
/// frequency-counting experiment.
struct RunConfig {
  std::uint64_t n_runs = 1;
  std::uint64_t seed = 0;
  OrderTag order = OrderTag::r_first;
};

/// Joint outcome tallies N_(l,r). Merging is associative and commutative,
/// so shard layout cannot affect totals.
class CountTable {
public:
  CountTable(std::vector<std::string> l_labels,
             std::vector<std::string> r_labels);

  std::uint64_t count(int l_index, int r_index) const;
  std::uint64_t count(const std::string& l_label,
                      const std::string& r_label) const;
  void add(int l_index, int r_index, std::uint64_t n = 1);

  std::uint64_t n_total() const { return n_total_; }
  const std::vector<std::string>& l_labels() const { return l_labels_; }
  const std::vector<std::string>& r_labels() const { return r_labels_; }

  /// Merge tallies; label sets must match.
  CountTable& operator+=(const CountTable& other);

  bool operator==(const CountTable&) const = default;

private:
  int index_of(const std::vector<std::string>& labels,
               const std::string& label) const;

  std::vector<std::string> l_labels_;
  std::vector<std::string> r_labels_;
  std::vector<std::uint64_t> counts_;  // l-major
  std::uint64_t n_total_ = 0;
};

/// Counter-based per-run random stream: run i always consumes stream i,
/// derived from (seed, i) alone, so results cannot depend on how runs are
/// sharded across threads. splitmix64 throughout.
class RunStream {
public:
  RunStream(std::uint64_t seed, std::uint64_t run);

  /// Next uniform double in [0, 1).
  double uniform();

private:
  std::uint64_t state_;
};

/// Samples config.n_runs sequential measurement pairs: the first side per
/// config.order from its Born distribution, a selective update, then the
/// second side. Outcomes are drawn by inverse CDF in basis-label order;
/// branches below the probability floor are never drawn. Deterministic in
/// (inputs, seed) and independent of thread count.
///
/// This is the OpenMP production kernel; per-first-outcome posteriors are
/// computed once and shared across runs.
CountTable simulate(const DensityOperator& rho0,
                    const MeasurementBasis& l_basis,
                    const MeasurementBasis& r_basis, const RunConfig& config);

/// Serial reference implementation: a literal per-run loop that re-derives
/// the distributions and selective update for every run. Kept for testing;
/// must produce a CountTable identical to simulate() for equal inputs.
CountTable simulate_serial(const DensityOperator& rho0,
                           const MeasurementBasis& l_basis,
                           const MeasurementBasis& r_basis,
                           const RunConfig& config);

/// Empirical conditional frequency N_(l,r) / N_r, with N_r summed over all
/// L-outcomes. Throws NoConditionEvents when no run produced r.
double empirical_conditional(const CountTable& table,
                             const std::string& l_label,
                             const std::string& r_label);

}  // namespace qorder
