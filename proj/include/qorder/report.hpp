#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qorder/scenario.hpp"

namespace qorder {

/// One reported quantity. `order` is "l-first", "r-first", "both" for
/// cross-order quantities, or "-" for order-free ones. `path` tags how the
/// value was computed: "analytic", "closed-form" or "empirical".
struct ReportRow {
  std::string scenario;
  std::string order;
  std::string quantity;
  std::string label;
  double value = 0.0;
  std::string path;
};

/// Fixed %.12g rendering used in both the CSV and the table, so the two
/// artifacts can never disagree on a digit.
std::string format_value(double v);

/// Executes the scenario's analyses and the spacetime block, in file
/// order, with deterministic row order. Propagates ImpossibleCondition
/// from conditioning on zero-probability outcomes.
std::vector<ReportRow> run_analyses(const ResolvedScenario& scenario);

/// CSV with the fixed header row; '\n' line endings regardless of
/// platform.
void write_csv(const std::vector<ReportRow>& rows, std::ostream& out);

/// Aligned human-readable table of the same rows.
void write_table(const std::vector<ReportRow>& rows, std::ostream& out);

}  // namespace qorder
