#include "qorder/counterfactual.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qorder/errors.hpp"

namespace qorder {

namespace {

double clamp_prob(double p) { return std::min(std::max(p, 0.0), 1.0); }

double born_weight(const Matrix& state, const Ket& vec) {
  const Vector& v = vec.amplitudes();
  return v.dot(state * v).real();
}

/// Eigenvector of the (numerically) unit eigenvalue of a pure state.
Ket principal_ket(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  Eigen::Index top;
  es.eigenvalues().maxCoeff(&top);
  return Ket::normalized(es.eigenvectors().col(top));
}

}  // namespace

Scenario::Scenario(DensityOperator rho0, MeasurementBasis l_basis,
                   MeasurementBasis r_basis, MeasurementBasis r_prime_basis,
                   OrderTag order)
    : rho0_(std::move(rho0)),
      l_basis_(std::move(l_basis)),
      r_basis_(std::move(r_basis)),
      r_prime_basis_(std::move(r_prime_basis)),
      order_(order) {
  if (l_basis_.factor() != Factor::left ||
      r_basis_.factor() != Factor::right ||
      r_prime_basis_.factor() != Factor::right) {
    throw InvalidArgument("Scenario: basis factor assignment is L, R, R");
  }
  if (l_basis_.dim() != rho0_.space().dim_l() ||
      r_basis_.dim() != rho0_.space().dim_r() ||
      r_prime_basis_.dim() != rho0_.space().dim_r()) {
    throw DimensionMismatch("Scenario: basis dims do not match the state space");
  }
  // The alternative observable must be incompatible with the actual one:
  // at least one projector pair with a nonvanishing commutator.
  double max_comm = 0.0;
  for (int i = 0; i < r_basis_.dim(); ++i) {
    const Matrix p = projector(r_basis_.vector(i));
    for (int j = 0; j < r_prime_basis_.dim(); ++j) {
      const Matrix q = projector(r_prime_basis_.vector(j));
      max_comm = std::max(max_comm, (p * q - q * p).cwiseAbs().maxCoeff());
    }
  }
  if (max_comm <= kNumTol) {
    throw InvalidArgument(
        "Scenario: r and r' projector families commute; the counterfactual "
        "observable must be incompatible with the actual one");
  }
}

Scenario Scenario::with_order(OrderTag order) const {
  Scenario copy(*this);
  copy.order_ = order;
  return copy;
}

double conditional_prob(const DensityOperator& rho0,
                        const MeasurementBasis& l_basis,
                        const MeasurementBasis& r_basis,
                        const std::string& l_label, const std::string& r_label,
                        OrderTag order) {
  if (l_basis.factor() != Factor::left || r_basis.factor() != Factor::right) {
    throw InvalidArgument("conditional_prob: bases must be on L and R");
  }
  l_basis.index_of(l_label);
  const int r_idx = r_basis.index_of(r_label);

  if (order == OrderTag::r_first) {
    // Condition on the registered R-outcome, then the L Born weight.
    const double p_r =
        born_weight(partial_trace_l(rho0), r_basis.vector(r_idx));
    if (p_r <= kProbTol) {
      throw ImpossibleCondition(r_label, "conditional_prob: outcome \"" +
                                             r_label + "\" has probability " +
                                             std::to_string(p_r));
    }
    const DensityOperator updated = selective_update(rho0, r_basis, r_label);
    const int l_idx = l_basis.index_of(l_label);
    return clamp_prob(
        born_weight(partial_trace_r(updated), l_basis.vector(l_idx)));
  }

  // l-first: dephase in the L-basis without registering, then form the
  // count ratio N_lr / (N_lr + sum over other L-outcomes).
  const DensityOperator dephased = nonselective_update(rho0, l_basis);
  const Matrix r_op =
      sandwich(dephased, r_basis.vector(r_idx), Factor::right);
  // Joint cell P(l', r) in the dephased state is <l'| <r|rho|r> |l'>.
  double numerator = 0.0;
  double denominator = 0.0;
  for (int l = 0; l < l_basis.dim(); ++l) {
    const double cell =
        std::max(0.0, born_weight(r_op, l_basis.vector(l)));
    denominator += cell;
    if (l_basis.label(l) == l_label) {
      numerator = cell;
    }
  }
  if (denominator <= kProbTol) {
    throw ImpossibleCondition(r_label, "conditional_prob: outcome \"" +
                                           r_label + "\" has probability " +
                                           std::to_string(denominator));
  }
  return clamp_prob(numerator / denominator);
}

double joint_prob(const DensityOperator& rho0, const MeasurementBasis& l_basis,
                  const MeasurementBasis& r_basis, const std::string& l_label,
                  const std::string& r_label) {
  if (l_basis.factor() != Factor::left || r_basis.factor() != Factor::right) {
    throw InvalidArgument("joint_prob: bases must be on L and R");
  }
  const Matrix r_op =
      sandwich(rho0, r_basis.vector(r_basis.index_of(r_label)), Factor::right);
  return clamp_prob(
      born_weight(r_op, l_basis.vector(l_basis.index_of(l_label))));
}

Matrix counterfactual_state(const DensityOperator& rho0,
                            const MeasurementBasis& l_basis,
                            const MeasurementBasis& r_basis,
                            const std::string& r_label, OrderTag order) {
  if (l_basis.factor() != Factor::left || r_basis.factor() != Factor::right) {
    throw InvalidArgument("counterfactual_state: bases must be on L and R");
  }
  if (order == OrderTag::r_first) {
    // The hypothetical R'-measurement precedes everything, so it would
    // have found the untouched reduced state. The actual r never enters.
    Matrix state = partial_trace_l(rho0);
    check_density_matrix(state, "counterfactual_state(r-first)");
    return state;
  }

  const int r_idx = r_basis.index_of(r_label);
  const Matrix rho_l = partial_trace_r(rho0);
  const double p_r = born_weight(partial_trace_l(rho0), r_basis.vector(r_idx));
  if (p_r <= kProbTol) {
    throw ImpossibleCondition(
        r_label, "counterfactual_state: conditioning outcome \"" + r_label +
                     "\" has probability " + std::to_string(p_r));
  }
  // Mixture of post-L R-states weighted by P(l|r) = P(rl)/P(r). Outcomes
  // with vanishing L-weight carry vanishing conditional weight and are
  // skipped to avoid 0/0.
  const int dr = rho0.space().dim_r();
  Matrix state = Matrix::Zero(dr, dr);
  for (int l = 0; l < l_basis.dim(); ++l) {
    const double w_l = born_weight(rho_l, l_basis.vector(l));
    if (w_l <= kProbTol) {
      continue;
    }
    const Matrix post_l = sandwich(rho0, l_basis.vector(l), Factor::left);
    const double p_rl = std::max(0.0, born_weight(post_l, r_basis.vector(r_idx)));
    state += (p_rl / p_r) * (post_l / w_l);
  }
  check_density_matrix(state, "counterfactual_state(l-first)");
  return state;
}

double pure_counterfactual_r_first(const Ket& ket0, const BipartiteSpace& space,
                                   const Ket& r_prime_vec) {
  return contract_r(r_prime_vec, ket0, space).squaredNorm();
}

double pure_counterfactual_l_first(const Ket& ket0, const BipartiteSpace& space,
                                   const MeasurementBasis& l_basis,
                                   const Ket& r_vec, const Ket& r_prime_vec) {
  const double p_r = contract_r(r_vec, ket0, space).squaredNorm();
  if (p_r <= kProbTol) {
    throw ImpossibleCondition(
        "r", "pure_counterfactual_l_first: conditioning outcome has "
             "probability " + std::to_string(p_r));
  }
  double total = 0.0;
  for (int l = 0; l < l_basis.dim(); ++l) {
    const Vector c_l = contract_l(l_basis.vector(l), ket0, space);
    const double w_l = c_l.squaredNorm();
    if (w_l <= kProbTol) {
      continue;
    }
    const double a_lr = std::norm(r_vec.amplitudes().dot(c_l));
    const double a_lrp = std::norm(r_prime_vec.amplitudes().dot(c_l));
    total += a_lr * a_lrp / (p_r * w_l);
  }
  return total;
}

double counterfactual_prob(const Scenario& scenario, const std::string& r_label,
                           const std::string& r_prime_label) {
  const Matrix rho_r =
      counterfactual_state(scenario.rho0(), scenario.l_basis(),
                           scenario.r_basis(), r_label, scenario.order());
  const Ket& r_prime_vec =
      scenario.r_prime_basis().vector(scenario.r_prime_basis().index_of(r_prime_label));
  const double value = clamp_prob(born_weight(rho_r, r_prime_vec));

  // Built-in oracle: a pure initial state admits closed-form contraction
  // expressions for both orders; any disagreement means a broken pipeline.
  if (scenario.rho0().is_pure()) {
    const Ket ket0 = principal_ket(scenario.rho0());
    const auto& space = scenario.rho0().space();
    const double closed =
        scenario.order() == OrderTag::r_first
            ? pure_counterfactual_r_first(ket0, space, r_prime_vec)
            : pure_counterfactual_l_first(
                  ket0, space, scenario.l_basis(),
                  scenario.r_basis().vector(scenario.r_basis().index_of(r_label)),
                  r_prime_vec);
    if (std::abs(closed - value) > kNumTol) {
      throw ConsistencyFailure(
          "counterfactual_prob: pipeline value " + std::to_string(value) +
          " disagrees with pure-state closed form " + std::to_string(closed));
    }
  }
  return value;
}

double ordering_gap(const Scenario& scenario, const std::string& r_label,
                    const std::string& r_prime_label) {
  const double l_first = counterfactual_prob(
      scenario.with_order(OrderTag::l_first), r_label, r_prime_label);
  const double r_first = counterfactual_prob(
      scenario.with_order(OrderTag::r_first), r_label, r_prime_label);
  return l_first - r_first;
}

}  // namespace qorder
