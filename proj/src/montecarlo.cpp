#include "qorder/montecarlo.hpp"

#include <algorithm>
#include <utility>

#include "qorder/errors.hpp"

namespace qorder {

CountTable::CountTable(std::vector<std::string> l_labels,
                       std::vector<std::string> r_labels)
    : l_labels_(std::move(l_labels)),
      r_labels_(std::move(r_labels)),
      counts_(l_labels_.size() * r_labels_.size(), 0) {
  if (l_labels_.empty() || r_labels_.empty()) {
    throw InvalidArgument("CountTable: empty label set");
  }
}

int CountTable::index_of(const std::vector<std::string>& labels,
                         const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw UnknownLabel("CountTable: label \"" + label + "\" unknown");
  }
  return static_cast<int>(it - labels.begin());
}

std::uint64_t CountTable::count(int l_index, int r_index) const {
  return counts_.at(static_cast<size_t>(l_index) * r_labels_.size() +
                    static_cast<size_t>(r_index));
}

std::uint64_t CountTable::count(const std::string& l_label,
                                const std::string& r_label) const {
  return count(index_of(l_labels_, l_label), index_of(r_labels_, r_label));
}

void CountTable::add(int l_index, int r_index, std::uint64_t n) {
  counts_.at(static_cast<size_t>(l_index) * r_labels_.size() +
             static_cast<size_t>(r_index)) += n;
  n_total_ += n;
}

CountTable& CountTable::operator+=(const CountTable& other) {
  if (l_labels_ != other.l_labels_ || r_labels_ != other.r_labels_) {
    throw InvalidArgument("CountTable: merging incompatible tables");
  }
  for (size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
  }
  n_total_ += other.n_total_;
  return *this;
}

namespace {

// splitmix64 finalizer: full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

}  // namespace

RunStream::RunStream(std::uint64_t seed, std::uint64_t run)
    : state_(mix64(seed + kGamma) ^ mix64(run * kGamma + 1)) {}

double RunStream::uniform() {
  state_ += kGamma;
  return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
}

namespace {

// Cumulative Born weights in basis order, with sub-floor branches frozen
// at the previous value so they can never be drawn.
std::vector<double> cumulative(const std::vector<Outcome>& dist) {
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (size_t k = 0; k < dist.size(); ++k) {
    if (dist[k].probability > kProbTol) {
      acc += dist[k].probability;
    }
    cdf[k] = acc;
  }
  return cdf;
}

int pick(const std::vector<double>& cdf, double u) {
  // Strict comparison keeps zero-width bins unreachable. Rounding can
  // leave the total slightly under u; fall back to the last live bin.
  for (size_t k = 0; k < cdf.size(); ++k) {
    if (u < cdf[k]) {
      return static_cast<int>(k);
    }
  }
  for (size_t k = cdf.size(); k-- > 0;) {
    if (cdf[k] > (k == 0 ? 0.0 : cdf[k - 1])) {
      return static_cast<int>(k);
    }
  }
  return static_cast<int>(cdf.size()) - 1;
}

struct OrderedBases {
  const MeasurementBasis* first;
  const MeasurementBasis* second;
};

OrderedBases ordered(const MeasurementBasis& l_basis,
                     const MeasurementBasis& r_basis, OrderTag order) {
  if (order == OrderTag::l_first) {
    return {&l_basis, &r_basis};
  }
  return {&r_basis, &l_basis};
}

}  // namespace

CountTable simulate_serial(const DensityOperator& rho0,
                           const MeasurementBasis& l_basis,
                           const MeasurementBasis& r_basis,
                           const RunConfig& config) {
  if (config.n_runs < 1) {
    throw InvalidArgument("simulate: n_runs must be >= 1");
  }
  const auto bases = ordered(l_basis, r_basis, config.order);
  CountTable table(l_basis.labels(), r_basis.labels());
  for (std::uint64_t run = 0; run < config.n_runs; ++run) {
    RunStream stream(config.seed, run);
    const auto first_dist = outcome_distribution(rho0, *bases.first);
    const int k1 = pick(cumulative(first_dist), stream.uniform());
    const DensityOperator updated =
        selective_update(rho0, *bases.first, bases.first->label(k1));
    const auto second_dist = outcome_distribution(updated, *bases.second);
    const int k2 = pick(cumulative(second_dist), stream.uniform());
    if (config.order == OrderTag::l_first) {
      table.add(k1, k2);
    } else {
      table.add(k2, k1);
    }
  }
  return table;
}

CountTable simulate(const DensityOperator& rho0,
                    const MeasurementBasis& l_basis,
                    const MeasurementBasis& r_basis, const RunConfig& config) {
  if (config.n_runs < 1) {
    throw InvalidArgument("simulate: n_runs must be >= 1");
  }
  const auto bases = ordered(l_basis, r_basis, config.order);
  const int n_first = bases.first->dim();
  const int n_second = bases.second->dim();

  // The first-side distribution and the per-first-outcome posteriors are
  // run-independent; deriving them through the same calls as the serial
  // reference keeps the CDF doubles bit-identical between the two paths.
  const auto first_dist = outcome_distribution(rho0, *bases.first);
  const std::vector<double> first_cdf = cumulative(first_dist);
  std::vector<std::vector<double>> second_cdf(static_cast<size_t>(n_first));
  for (int k = 0; k < n_first; ++k) {
    if (first_dist[static_cast<size_t>(k)].probability <= kProbTol) {
      continue;  // never drawn
    }
    const DensityOperator updated =
        selective_update(rho0, *bases.first, bases.first->label(k));
    second_cdf[static_cast<size_t>(k)] =
        cumulative(outcome_distribution(updated, *bases.second));
  }

  const auto n = static_cast<std::int64_t>(config.n_runs);
  std::vector<std::uint64_t> cells(
      static_cast<size_t>(n_first) * static_cast<size_t>(n_second), 0);

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(cells.size(), 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t run = 0; run < n; ++run) {
      RunStream stream(config.seed, static_cast<std::uint64_t>(run));
      const int k1 = pick(first_cdf, stream.uniform());
      const int k2 = pick(second_cdf[static_cast<size_t>(k1)], stream.uniform());
      ++local[static_cast<size_t>(k1) * static_cast<size_t>(n_second) +
              static_cast<size_t>(k2)];
    }
#pragma omp critical
    for (size_t i = 0; i < cells.size(); ++i) {
      cells[i] += local[i];
    }
  }

  CountTable table(l_basis.labels(), r_basis.labels());
  for (int k1 = 0; k1 < n_first; ++k1) {
    for (int k2 = 0; k2 < n_second; ++k2) {
      const auto c = cells[static_cast<size_t>(k1) * static_cast<size_t>(n_second) +
                           static_cast<size_t>(k2)];
      if (c == 0) {
        continue;
      }
      if (config.order == OrderTag::l_first) {
        table.add(k1, k2, c);
      } else {
        table.add(k2, k1, c);
      }
    }
  }
  return table;
}

double empirical_conditional(const CountTable& table,
                             const std::string& l_label,
                             const std::string& r_label) {
  std::uint64_t n_r = 0;
  for (const auto& l : table.l_labels()) {
    n_r += table.count(l, r_label);
  }
  if (n_r == 0) {
    throw NoConditionEvents("empirical_conditional: no \"" + r_label +
                            "\" events");
  }
  return static_cast<double>(table.count(l_label, r_label)) /
         static_cast<double>(n_r);
}

}  // namespace qorder
