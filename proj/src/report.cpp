#include "qorder/report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

#include "qorder/errors.hpp"

namespace qorder {

namespace {

const char* kOrderFree = "-";

void add(std::vector<ReportRow>& rows, const ResolvedScenario& sc,
         std::string order, std::string quantity, std::string label,
         double value, std::string path) {
  rows.push_back(ReportRow{sc.name, std::move(order), std::move(quantity),
                           std::move(label), value, std::move(path)});
}

void run_joint(std::vector<ReportRow>& rows, const ResolvedScenario& sc,
               const DensityOperator& rho0) {
  for (int li = 0; li < sc.l_basis.dim(); ++li) {
    for (int ri = 0; ri < sc.r_basis.dim(); ++ri) {
      const std::string label = sc.l_basis.label(li) + "&" + sc.r_basis.label(ri);
      add(rows, sc, kOrderFree, "joint", label,
          joint_prob(rho0, sc.l_basis, sc.r_basis, sc.l_basis.label(li),
                     sc.r_basis.label(ri)),
          "analytic");
    }
  }
}

void run_conditional(std::vector<ReportRow>& rows, const ResolvedScenario& sc,
                     const DensityOperator& rho0) {
  for (int li = 0; li < sc.l_basis.dim(); ++li) {
    for (int ri = 0; ri < sc.r_basis.dim(); ++ri) {
      const std::string label =
          sc.l_basis.label(li) + "|" + sc.r_basis.label(ri);
      for (OrderTag order : sc.orders) {
        add(rows, sc, to_string(order), "conditional", label,
            conditional_prob(rho0, sc.l_basis, sc.r_basis,
                             sc.l_basis.label(li), sc.r_basis.label(ri),
                             order),
            "analytic");
      }
    }
  }
}

void run_counterfactual(std::vector<ReportRow>& rows,
                        const ResolvedScenario& sc,
                        const DensityOperator& rho0) {
  const std::string label = sc.counterfactual_label + "|" + sc.condition_label;
  const Ket& r_vec =
      sc.r_basis.vector(sc.r_basis.index_of(sc.condition_label));
  const Ket& cf_vec =
      sc.cf_basis->vector(sc.cf_basis->index_of(sc.counterfactual_label));
  for (OrderTag order : sc.orders) {
    Scenario setup(rho0, sc.l_basis, sc.r_basis, *sc.cf_basis, order);
    add(rows, sc, to_string(order), "counterfactual", label,
        counterfactual_prob(setup, sc.condition_label,
                            sc.counterfactual_label),
        "analytic");
    const double closed =
        order == OrderTag::r_first
            ? pure_counterfactual_r_first(sc.ket0, sc.space, cf_vec)
            : pure_counterfactual_l_first(sc.ket0, sc.space, sc.l_basis,
                                          r_vec, cf_vec);
    add(rows, sc, to_string(order), "counterfactual", label, closed,
        "closed-form");
  }
}

void run_gap(std::vector<ReportRow>& rows, const ResolvedScenario& sc,
             const DensityOperator& rho0) {
  const std::string label = sc.counterfactual_label + "|" + sc.condition_label;
  Scenario setup(rho0, sc.l_basis, sc.r_basis, *sc.cf_basis,
                 sc.orders.front());
  add(rows, sc, "both", "gap", label,
      ordering_gap(setup, sc.condition_label, sc.counterfactual_label),
      "analytic");
  const Ket& r_vec =
      sc.r_basis.vector(sc.r_basis.index_of(sc.condition_label));
  const Ket& cf_vec =
      sc.cf_basis->vector(sc.cf_basis->index_of(sc.counterfactual_label));
  const double closed =
      pure_counterfactual_l_first(sc.ket0, sc.space, sc.l_basis, r_vec,
                                  cf_vec) -
      pure_counterfactual_r_first(sc.ket0, sc.space, cf_vec);
  add(rows, sc, "both", "gap", label, closed, "closed-form");
}

void run_reciprocity(std::vector<ReportRow>& rows,
                     const ResolvedScenario& sc) {
  // For each L-outcome, the premise target is whichever designated
  // R-vector the contraction lands closest to; the chain is then checked
  // against that pair.
  for (int li = 0; li < sc.l_basis.dim(); ++li) {
    int best = -1;
    ReciprocityReport best_report;
    for (int ri = 0; ri < sc.r_basis.dim(); ++ri) {
      ReciprocityReport report =
          check_reciprocity(sc.ket0, sc.space, sc.l_basis, sc.r_basis,
                            sc.l_basis.label(li), sc.r_basis.label(ri));
      if (report.premise_null) {
        continue;  // P(l) = 0: nothing was induced, the premise is vacuous
      }
      if (best < 0 || report.premise_residual < best_report.premise_residual) {
        best = ri;
        best_report = report;
      }
    }
    if (best < 0) {
      continue;
    }
    const std::string label =
        sc.l_basis.label(li) + "=>" + sc.r_basis.label(best);
    add(rows, sc, kOrderFree, "reciprocity_premise", label,
        best_report.premise_residual, "analytic");
    if (!best_report.conclusion_null) {
      add(rows, sc, kOrderFree, "reciprocity_conclusion", label,
          best_report.conclusion_residual, "analytic");
    }
  }
  try {
    SymmetricCaseReport symmetric =
        is_symmetric_case(sc.ket0, sc.space, sc.l_basis);
    for (size_t i = 0; i < symmetric.labels.size(); ++i) {
      add(rows, sc, kOrderFree, "symmetric_case", symmetric.labels[i],
          symmetric.symmetric[i] ? 1.0 : 0.0, "analytic");
    }
  } catch (const ImpossibleOutcome&) {
    // some L-outcome never occurs; the per-outcome verdicts are undefined
  }
}

void run_montecarlo(std::vector<ReportRow>& rows, const ResolvedScenario& sc,
                    const DensityOperator& rho0) {
  add(rows, sc, kOrderFree, "mc_runs", "-",
      static_cast<double>(sc.montecarlo.n_runs), "empirical");
  for (OrderTag order : sc.orders) {
    RunConfig config{sc.montecarlo.n_runs, sc.montecarlo.seed, order};
    const CountTable table = simulate(rho0, sc.l_basis, sc.r_basis, config);
    const double total = static_cast<double>(table.n_total());
    for (int li = 0; li < sc.l_basis.dim(); ++li) {
      for (int ri = 0; ri < sc.r_basis.dim(); ++ri) {
        add(rows, sc, to_string(order), "joint",
            sc.l_basis.label(li) + "&" + sc.r_basis.label(ri),
            static_cast<double>(table.count(li, ri)) / total, "empirical");
      }
    }
    for (int ri = 0; ri < sc.r_basis.dim(); ++ri) {
      std::uint64_t n_r = 0;
      for (int li = 0; li < sc.l_basis.dim(); ++li) {
        n_r += table.count(li, ri);
      }
      if (n_r == 0) {
        continue;  // cannot condition on an outcome no run produced
      }
      for (int li = 0; li < sc.l_basis.dim(); ++li) {
        add(rows, sc, to_string(order), "conditional",
            sc.l_basis.label(li) + "|" + sc.r_basis.label(ri),
            empirical_conditional(table, sc.l_basis.label(li),
                                  sc.r_basis.label(ri)),
            "empirical");
      }
    }
  }
}

void run_spacetime(std::vector<ReportRow>& rows, const ResolvedScenario& sc) {
  const Event& el = sc.events->first;
  const Event& er = sc.events->second;
  add(rows, sc, kOrderFree, "interval", "LR", interval(el, er), "analytic");
  const bool separated = causally_separated(el, er);
  add(rows, sc, kOrderFree, "causally_separated", "LR", separated ? 1.0 : 0.0,
      "analytic");
  if (!separated) {
    return;
  }
  const Boost boost = find_order_reversing_boost(el, er);
  add(rows, sc, kOrderFree, "boost_speed", "LR", boost.speed(), "analytic");
  const char* axes[3] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    add(rows, sc, kOrderFree, "boost_velocity", axes[i],
        boost.velocity()[static_cast<size_t>(i)], "analytic");
  }
  add(rows, sc, kOrderFree, "boosted_dt", "LR",
      apply_boost(boost, el).t - apply_boost(boost, er).t, "analytic");
}

}  // namespace

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<ReportRow> run_analyses(const ResolvedScenario& sc) {
  std::vector<ReportRow> rows;
  const DensityOperator rho0 = sc.rho0();
  for (Analysis analysis : sc.analyses) {
    switch (analysis) {
      case Analysis::joint:
        run_joint(rows, sc, rho0);
        break;
      case Analysis::conditional:
        run_conditional(rows, sc, rho0);
        break;
      case Analysis::counterfactual:
        run_counterfactual(rows, sc, rho0);
        break;
      case Analysis::gap:
        run_gap(rows, sc, rho0);
        break;
      case Analysis::reciprocity:
        run_reciprocity(rows, sc);
        break;
      case Analysis::montecarlo:
        run_montecarlo(rows, sc, rho0);
        break;
    }
  }
  if (sc.events) {
    run_spacetime(rows, sc);
  }
  return rows;
}

void write_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "scenario,order,quantity,label,value,path\n";
  for (const ReportRow& row : rows) {
    out << row.scenario << ',' << row.order << ',' << row.quantity << ','
        << row.label << ',' << format_value(row.value) << ',' << row.path
        << '\n';
  }
}

void write_table(const std::vector<ReportRow>& rows, std::ostream& out) {
  if (rows.empty()) {
    out << "(no rows)\n";
    return;
  }
  const bool one_scenario =
      std::all_of(rows.begin(), rows.end(), [&](const ReportRow& r) {
        return r.scenario == rows.front().scenario;
      });
  std::vector<std::string> header;
  if (!one_scenario) {
    header.push_back("scenario");
  }
  header.insert(header.end(), {"quantity", "label", "order", "path", "value"});

  std::vector<std::vector<std::string>> cells;
  for (const ReportRow& row : rows) {
    std::vector<std::string> line;
    if (!one_scenario) {
      line.push_back(row.scenario);
    }
    line.insert(line.end(), {row.quantity, row.label, row.order, row.path,
                             format_value(row.value)});
    cells.push_back(std::move(line));
  }

  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& line : cells) {
      width[c] = std::max(width[c], line[c].size());
    }
  }
  auto print_line = [&](const std::vector<std::string>& line) {
    for (size_t c = 0; c < line.size(); ++c) {
      out << line[c];
      if (c + 1 < line.size()) {
        out << std::string(width[c] - line[c].size() + 2, ' ');
      }
    }
    out << '\n';
  };
  print_line(header);
  std::vector<std::string> rule;
  for (size_t c = 0; c < header.size(); ++c) {
    rule.push_back(std::string(width[c], '-'));
  }
  print_line(rule);
  for (const auto& line : cells) {
    print_line(line);
  }
}

}  // namespace qorder
