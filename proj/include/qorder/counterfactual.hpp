#pragma once

#include <string>

#include "qorder/hilbert.hpp"
#include "qorder/measurement.hpp"
#include "qorder/spacetime.hpp"

namespace qorder {

/// A counterfactual setup: initial state, the two actually measured
/// observables (L-side and R-side), the alternative R-side observable the
/// counterfactual asks about, and the hypothesized jump order.
class Scenario {
public:
  /// Validates factor assignments and that r_basis and r_prime_basis do
  /// not commute as projector families (otherwise the counterfactual
  /// question is classical and order-insensitive by construction).
  Scenario(DensityOperator rho0, MeasurementBasis l_basis,
           MeasurementBasis r_basis, MeasurementBasis r_prime_basis,
           OrderTag order);

  const DensityOperator& rho0() const { return rho0_; }
  const MeasurementBasis& l_basis() const { return l_basis_; }
  const MeasurementBasis& r_basis() const { return r_basis_; }
  const MeasurementBasis& r_prime_basis() const { return r_prime_basis_; }
  OrderTag order() const { return order_; }

  /// Same scenario under the other hypothesis.
  Scenario with_order(OrderTag order) const;

private:
  DensityOperator rho0_;
  MeasurementBasis l_basis_;
  MeasurementBasis r_basis_;
  MeasurementBasis r_prime_basis_;
  OrderTag order_;
};

/// P(l | r) for actual selective measurements under a hypothesized order.
///
/// r-first: condition on the selective R-outcome, then take the L Born
/// weight of the updated state. l-first: dephase in the L-basis
/// nonselectively and form the joint-over-marginal count ratio. The two
/// routes agree identically for every valid input: actual-measurement
/// statistics carry no trace of the jump order.
///
/// Throws ImpossibleCondition when P(r) is below kProbTol.
double conditional_prob(const DensityOperator& rho0,
                        const MeasurementBasis& l_basis,
                        const MeasurementBasis& r_basis,
                        const std::string& l_label, const std::string& r_label,
                        OrderTag order);

/// Joint probability P(l, r) of commuting one-side outcomes,
/// <l|<r|rho|r>|l>. Symmetric in the order the two projections are applied.
double joint_prob(const DensityOperator& rho0, const MeasurementBasis& l_basis,
                  const MeasurementBasis& r_basis, const std::string& l_label,
                  const std::string& r_label);

/// The R-side state in which the counterfactual observable would have been
/// measured, under the hypothesized order.
///
/// r-first: the counterfactual measurement replaces R before anything else
/// touched the system, so the state is the plain reduced state Tr_L rho0
/// (the conditioning outcome never happened). l-first: the L-jump already
/// occurred, so the state is the mixture of post-L R-states weighted by
/// the conditionals P(l|r); terms whose L-outcome probability is below
/// kProbTol are skipped (their conditional weight vanishes with them).
///
/// Returns a validated density matrix on the R factor.
/// Throws ImpossibleCondition when order is l-first and P(r) <= kProbTol.
Matrix counterfactual_state(const DensityOperator& rho0,
                            const MeasurementBasis& l_basis,
                            const MeasurementBasis& r_basis,
                            const std::string& r_label, OrderTag order);

/// The counterfactual probability <r'| rho_R |r'> of obtaining r' had the
/// alternative observable been measured, under the scenario's order
/// hypothesis. Unlike actual conditionals, this quantity depends on the
/// order.
///
/// For pure rho0 the value is cross-validated against the closed-form
/// contraction expressions for the same order; a mismatch beyond kNumTol
/// throws ConsistencyFailure (a bug trap, not an input error).
double counterfactual_prob(const Scenario& scenario, const std::string& r_label,
                           const std::string& r_prime_label);

/// Closed-form counterfactual for a pure composite state, r-first:
/// the squared norm of the <r'| contraction.
double pure_counterfactual_r_first(const Ket& ket0, const BipartiteSpace& space,
                                   const Ket& r_prime_vec);

/// Closed-form counterfactual for a pure composite state, l-first: the
/// explicit sum over L-outcomes of |<r,l|0>|^2 |<r',l|0>|^2 over the
/// product of the two marginal weights.
double pure_counterfactual_l_first(const Ket& ket0, const BipartiteSpace& space,
                                   const MeasurementBasis& l_basis,
                                   const Ket& r_vec, const Ket& r_prime_vec);

/// P_cf(l-first) - P_cf(r-first) for the same data, both branches
/// evaluated regardless of the scenario's own order tag. Zero for product
/// states; strictly positive for the Hardy scenario away from degenerate
/// overlaps.
double ordering_gap(const Scenario& scenario, const std::string& r_label,
                    const std::string& r_prime_label);

}  // namespace qorder
