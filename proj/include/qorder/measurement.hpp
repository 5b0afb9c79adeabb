#pragma once

#include <string>
#include <vector>

#include "qorder/hilbert.hpp"

namespace qorder {

/// A nondegenerate observable on one tensor factor, represented by its
/// orthonormal eigenbasis with distinct outcome labels. Rank-1 projectors
/// only; degenerate spectra are out of scope.
class MeasurementBasis {
public:
  /// Validates pairwise orthonormality (Gram matrix = identity within
  /// kNumTol) and label uniqueness.
  MeasurementBasis(Factor factor, std::vector<Ket> vectors,
                   std::vector<std::string> labels);

  /// Two-dimensional basis {cos t |0> + sin t |1>, -sin t |0> + cos t |1>}.
  static MeasurementBasis rotated_qubit(Factor factor, double angle,
                                        std::string plus_label,
                                        std::string minus_label);

  Factor factor() const { return factor_; }
  int dim() const { return static_cast<int>(vectors_.size()); }

  const Ket& vector(int i) const { return vectors_[static_cast<size_t>(i)]; }
  const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a label; throws UnknownLabel.
  int index_of(const std::string& label) const;
  bool has_label(const std::string& label) const;

private:
  Factor factor_;
  std::vector<Ket> vectors_;
  std::vector<std::string> labels_;
};

/// One measurement outcome with its Born probability.
struct Outcome {
  std::string label;
  int index = 0;
  double probability = 0.0;
};

/// Nonselective measurement: the full projector mixture
/// sum_k (P_k ⊗ I) rho (P_k ⊗ I). Trace preserving, idempotent per basis,
/// and leaves the remote reduced state untouched (no-signaling).
DensityOperator nonselective_update(const DensityOperator& rho0,
                                    const MeasurementBasis& basis);

/// Selective measurement with registered outcome `label`: project and
/// renormalize. Throws ImpossibleOutcome when the outcome probability is
/// below kProbTol.
DensityOperator selective_update(const DensityOperator& rho0,
                                 const MeasurementBasis& basis,
                                 const std::string& label);

/// Born weights <k|rho_factor|k> for every basis vector, in basis order.
/// Probabilities sum to 1 within kNormTol.
std::vector<Outcome> outcome_distribution(const DensityOperator& rho0,
                                          const MeasurementBasis& basis);

/// Selective measurement on a pure composite state.
struct PureSelectiveResult {
  Ket composite;       ///< |k> ⊗ partner
  Ket partner;         ///< normalized contraction on the complementary factor
  double probability;  ///< squared norm of the unnormalized contraction
};

/// Pure-state selective update; consistent with selective_update applied
/// to the corresponding projector. Throws ImpossibleOutcome when the
/// contraction is null.
PureSelectiveResult pure_selective(const Ket& ket0, const BipartiteSpace& space,
                                   const MeasurementBasis& basis,
                                   const std::string& label);

/// Per-outcome symmetry verdicts: outcome k is symmetric iff back-contracting
/// the induced complementary state returns |k> up to global phase.
struct SymmetricCaseReport {
  std::vector<std::string> labels;
  std::vector<bool> symmetric;

  /// Conjunction over all outcomes.
  bool all() const;
};

/// Tests the symmetric case for every outcome of `l_basis` on a pure
/// composite state. Throws ImpossibleOutcome if an intermediate contraction
/// is null for some outcome.
SymmetricCaseReport is_symmetric_case(const Ket& ket0,
                                      const BipartiteSpace& space,
                                      const MeasurementBasis& l_basis);

/// Residuals of the reciprocity implication chain on a 2x2 pure state:
/// if <L|0> is proportional to |R>, then <perpR|0> is proportional to
/// |perpL>. The perp vectors are the complementary vectors of the two
/// 2-dimensional bases. Null contractions are reported, not raised.
struct ReciprocityReport {
  bool premise_null = false;
  bool conclusion_null = false;
  /// Ray distance sqrt(1 - |<R|induced>|^2) of the induced R-state from
  /// the designated |R>.
  double premise_residual = 0.0;
  /// Ray distance of the normalized <perpR|0> contraction from |perpL>.
  double conclusion_residual = 0.0;

  /// Chain verified: premise holds and conclusion holds, both within tol.
  bool holds(double tol = kNumTol) const;
};

/// Verifies the reciprocity chain for the designated outcome pair
/// (l_label on l_basis, r_label on r_basis). Both bases must be
/// 2-dimensional.
ReciprocityReport check_reciprocity(const Ket& ket0, const BipartiteSpace& space,
                                    const MeasurementBasis& l_basis,
                                    const MeasurementBasis& r_basis,
                                    const std::string& l_label,
                                    const std::string& r_label);

}  // namespace qorder
