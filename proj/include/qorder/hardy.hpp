#pragma once

#include "qorder/hilbert.hpp"
#include "qorder/measurement.hpp"

namespace qorder {

/// Overlap angles parametrizing the Hardy-type state. alpha is the angle
/// between the two L-side bases (|<l|l'>|^2 = cos^2 alpha), beta the angle
/// between the two R-side bases (|<r|r'>|^2 = cos^2 beta). Both must lie
/// strictly inside (0, pi/2); at the endpoints the entangled cross term
/// vanishes or swallows the state.
struct HardyParams {
  double alpha;
  double beta;
};

/// The Hardy construction: state plus the four labeled observables.
struct HardyScenario {
  Ket ket0;                  ///< normalized Hardy state on the 2x2 space
  BipartiteSpace space;      ///< always {2, 2}
  MeasurementBasis l2;       ///< actual L observable, labels L2+/L2-
  MeasurementBasis l1;       ///< alternative L observable, labels L1+/L1-
  MeasurementBasis r2;       ///< actual R observable, labels R2+/R2-
  MeasurementBasis r1;       ///< alternative R observable, labels R1+/R1-
};

/// Builds the Hardy-type state |l'>|r'> - <lbar|l'><r|r'> |lbar>|r>
/// (normalized) with l' = L1+, lbar = L2-, r = R2+, r' = R1-, realizing
/// the overlaps as real rotations of the computational bases. The state
/// is constructed so the joint outcome (L2-, R2+) has exactly zero
/// amplitude. Throws DegenerateParams at or beyond the interval endpoints.
HardyScenario build_hardy(const HardyParams& params);

/// Closed-form counterfactual value for the r-first order:
/// [a + b(1-c)^2] / [a + b(1-c)] with a = cos^2 alpha, b = sin^2 alpha,
/// c = cos^2 beta. Strictly below 1 for interior parameters.
double closed_form_r_first(const HardyParams& params);

/// Closed-form counterfactual value for the l-first order: identically 1.
/// Conditioning on R2+ removes the L2- branch, and the surviving branch
/// leaves the R side in exactly the R1- state.
double closed_form_l_first(const HardyParams& params);

}  // namespace qorder
