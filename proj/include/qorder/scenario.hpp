#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qorder/counterfactual.hpp"
#include "qorder/hardy.hpp"
#include "qorder/hilbert.hpp"
#include "qorder/measurement.hpp"
#include "qorder/montecarlo.hpp"
#include "qorder/spacetime.hpp"

namespace qorder {

/// Analyses a scenario file may request, in canonical spelling.
enum class Analysis {
  joint,
  conditional,
  counterfactual,
  gap,
  reciprocity,
  montecarlo,
};

std::string to_string(Analysis a);

/// Command-line overrides applied on top of a scenario file.
struct ScenarioOverrides {
  std::optional<std::string> order;  ///< "l-first" | "r-first" | "both"
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
};

/// A scenario file resolved to library objects, ready to run. States are
/// pure by construction: every preset and the explicit amplitude form
/// describe a composite ket.
struct ResolvedScenario {
  std::string name;
  Ket ket0;
  BipartiteSpace space;
  MeasurementBasis l_basis;
  MeasurementBasis r_basis;
  /// Alternative R-side observable for counterfactual questions; absent
  /// when neither given nor defaultable (d_R > 2).
  std::optional<MeasurementBasis> cf_basis;
  /// Designated actual R-outcome the counterfactual conditions on.
  std::string condition_label;
  /// Designated outcome of the counterfactual observable.
  std::string counterfactual_label;
  /// Hypotheses to evaluate: one tag, or both when order = "both".
  std::vector<OrderTag> orders;
  std::vector<Analysis> analyses;
  RunConfig montecarlo;  ///< order field unused; taken from `orders`
  std::optional<std::pair<Event, Event>> events;  ///< (event_l, event_r)
  /// Set when the state is the hardy preset; enables closed-form rows and
  /// parameter sweeps.
  std::optional<HardyParams> hardy;
  /// True when the file overrode any basis; sweeps refuse to run then,
  /// because swept angles regenerate the canonical hardy bases.
  bool custom_bases = false;

  DensityOperator rho0() const { return DensityOperator::pure(ket0, space); }
};

/// Parses and validates a scenario file (JSON, comments allowed), applies
/// overrides, and resolves everything to library objects. Throws
/// ScenarioError with an anchored message on any problem.
ResolvedScenario load_scenario(const std::string& path,
                               const ScenarioOverrides& overrides = {});

/// Same scenario rebuilt at a different hardy alpha, with the canonical
/// hardy bases and designated outcomes. Requires the hardy preset and no
/// custom bases.
ResolvedScenario with_hardy_alpha(const ResolvedScenario& base, double alpha);

}  // namespace qorder
