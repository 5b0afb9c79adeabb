#include "qorder/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "qorder/errors.hpp"

namespace qorder {

MeasurementBasis::MeasurementBasis(Factor factor, std::vector<Ket> vectors,
                                   std::vector<std::string> labels)
    : factor_(factor), vectors_(std::move(vectors)), labels_(std::move(labels)) {
  const auto n = vectors_.size();
  if (n == 0) {
    throw InvalidArgument("MeasurementBasis: no vectors");
  }
  if (labels_.size() != n) {
    throw InvalidArgument("MeasurementBasis: " + std::to_string(n) +
                          " vectors but " + std::to_string(labels_.size()) +
                          " labels");
  }
  for (const auto& v : vectors_) {
    if (v.dim() != static_cast<int>(n)) {
      throw InvalidArgument(
          "MeasurementBasis: need exactly dim vectors of matching dimension");
    }
  }
  // Gram matrix must be the identity: pairwise orthonormal within kNumTol.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const Complex g = inner(vectors_[i], vectors_[j]);
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - Complex(target, 0.0)) > kNumTol) {
        throw InvalidArgument("MeasurementBasis: vectors " + labels_[i] +
                              ", " + labels_[j] + " not orthonormal");
      }
    }
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw InvalidArgument("MeasurementBasis: duplicate label \"" + l + "\"");
    }
  }
}

MeasurementBasis MeasurementBasis::rotated_qubit(Factor factor, double angle,
                                                 std::string plus_label,
                                                 std::string minus_label) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Vector plus(2), minus(2);
  plus << c, s;
  minus << -s, c;
  std::vector<Ket> vectors;
  vectors.emplace_back(std::move(plus));
  vectors.emplace_back(std::move(minus));
  return MeasurementBasis(factor, std::move(vectors),
                          {std::move(plus_label), std::move(minus_label)});
}

int MeasurementBasis::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw UnknownLabel("label \"" + label + "\" not in basis");
  }
  return static_cast<int>(it - labels_.begin());
}

bool MeasurementBasis::has_label(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

namespace {

void check_basis_fits(const DensityOperator& rho, const MeasurementBasis& basis,
                      const char* who) {
  if (basis.dim() != rho.space().factor_dim(basis.factor())) {
    throw DimensionMismatch(std::string(who) + ": basis dim " +
                            std::to_string(basis.dim()) + " vs factor " +
                            to_string(basis.factor()) + " dim " +
                            std::to_string(rho.space().factor_dim(basis.factor())));
  }
}

}  // namespace

DensityOperator nonselective_update(const DensityOperator& rho0,
                                    const MeasurementBasis& basis) {
  check_basis_fits(rho0, basis, "nonselective_update");
  const auto& space = rho0.space();
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (int k = 0; k < basis.dim(); ++k) {
    const Matrix p = embed(projector(basis.vector(k)), basis.factor(), space);
    out += p * rho0.matrix() * p;
  }
  return DensityOperator(std::move(out), space);
}

DensityOperator selective_update(const DensityOperator& rho0,
                                 const MeasurementBasis& basis,
                                 const std::string& label) {
  check_basis_fits(rho0, basis, "selective_update");
  const int k = basis.index_of(label);
  const auto& space = rho0.space();
  const Matrix p = embed(projector(basis.vector(k)), basis.factor(), space);
  Matrix projected = p * rho0.matrix() * p;
  const double prob = projected.trace().real();
  if (prob <= kProbTol) {
    throw ImpossibleOutcome("selective_update: outcome \"" + label +
                            "\" has probability " + std::to_string(prob));
  }
  return DensityOperator(projected / prob, space);
}

std::vector<Outcome> outcome_distribution(const DensityOperator& rho0,
                                          const MeasurementBasis& basis) {
  check_basis_fits(rho0, basis, "outcome_distribution");
  const Matrix marginal = reduced_state(rho0, basis.factor());
  std::vector<Outcome> out;
  out.reserve(static_cast<size_t>(basis.dim()));
  for (int k = 0; k < basis.dim(); ++k) {
    const Vector& v = basis.vector(k).amplitudes();
    const double p = std::max(0.0, v.dot(marginal * v).real());
    out.push_back({basis.label(k), k, p});
  }
  return out;
}

PureSelectiveResult pure_selective(const Ket& ket0, const BipartiteSpace& space,
                                   const MeasurementBasis& basis,
                                   const std::string& label) {
  if (ket0.dim() != space.dim()) {
    throw DimensionMismatch("pure_selective: ket dim " +
                            std::to_string(ket0.dim()) + " vs space dim " +
                            std::to_string(space.dim()));
  }
  if (basis.dim() != space.factor_dim(basis.factor())) {
    throw DimensionMismatch("pure_selective: basis dim mismatch");
  }
  const int k = basis.index_of(label);
  const Vector c = contract(basis.vector(k), ket0, space, basis.factor());
  const double n2 = c.squaredNorm();
  if (n2 <= kProbTol) {
    throw ImpossibleOutcome("pure_selective: outcome \"" + label +
                            "\" has probability " + std::to_string(n2));
  }
  Ket partner = Ket::normalized(c);
  Ket composite = basis.factor() == Factor::left
                      ? tensor(basis.vector(k), partner)
                      : tensor(partner, basis.vector(k));
  return {std::move(composite), std::move(partner), n2};
}

bool SymmetricCaseReport::all() const {
  return std::all_of(symmetric.begin(), symmetric.end(),
                     [](bool b) { return b; });
}

SymmetricCaseReport is_symmetric_case(const Ket& ket0,
                                      const BipartiteSpace& space,
                                      const MeasurementBasis& l_basis) {
  if (l_basis.factor() != Factor::left) {
    throw InvalidArgument("is_symmetric_case: expected a left-factor basis");
  }
  SymmetricCaseReport report;
  for (int k = 0; k < l_basis.dim(); ++k) {
    const Vector c = contract_l(l_basis.vector(k), ket0, space);
    if (c.squaredNorm() <= kProbTol) {
      throw ImpossibleOutcome("is_symmetric_case: null contraction for \"" +
                              l_basis.label(k) + "\"");
    }
    const Ket induced = Ket::normalized(c);
    const Vector back = contract_r(induced, ket0, space);
    if (back.squaredNorm() <= kProbTol) {
      throw ImpossibleOutcome(
          "is_symmetric_case: null back-contraction for \"" +
          l_basis.label(k) + "\"");
    }
    report.labels.push_back(l_basis.label(k));
    report.symmetric.push_back(
        same_ray(Ket::normalized(back), l_basis.vector(k)));
  }
  return report;
}

bool ReciprocityReport::holds(double tol) const {
  return !premise_null && !conclusion_null && premise_residual <= tol &&
         conclusion_residual <= tol;
}

namespace {

// Sine of the angle between the rays, via the component of a orthogonal
// to b. Algebraically sqrt(1 - |<b|a>|^2), but the subtraction form
// resolves near-aligned rays to ~1e-16 instead of the sqrt(eps) floor
// that the overlap-squared form hits.
double ray_distance(const Ket& a, const Ket& b) {
  const Vector& u = a.amplitudes();
  const Vector& v = b.amplitudes();
  return (u - v * v.dot(u)).norm();
}

}  // namespace

ReciprocityReport check_reciprocity(const Ket& ket0, const BipartiteSpace& space,
                                    const MeasurementBasis& l_basis,
                                    const MeasurementBasis& r_basis,
                                    const std::string& l_label,
                                    const std::string& r_label) {
  if (l_basis.dim() != 2 || r_basis.dim() != 2) {
    throw InvalidArgument(
        "check_reciprocity: requires 2-dimensional bases (unique perp)");
  }
  if (l_basis.factor() != Factor::left || r_basis.factor() != Factor::right) {
    throw InvalidArgument("check_reciprocity: bases on wrong factors");
  }
  if (ket0.dim() != space.dim() || space.dim_l() != 2 || space.dim_r() != 2) {
    throw DimensionMismatch("check_reciprocity: requires a 2x2 pure state");
  }
  const int li = l_basis.index_of(l_label);
  const int ri = r_basis.index_of(r_label);
  const Ket& l_vec = l_basis.vector(li);
  const Ket& r_vec = r_basis.vector(ri);
  const Ket& perp_l = l_basis.vector(1 - li);
  const Ket& perp_r = r_basis.vector(1 - ri);

  ReciprocityReport report;
  const Vector fwd = contract_l(l_vec, ket0, space);
  if (fwd.squaredNorm() <= kProbTol) {
    report.premise_null = true;
  } else {
    report.premise_residual = ray_distance(Ket::normalized(fwd), r_vec);
  }
  const Vector back = contract_r(perp_r, ket0, space);
  if (back.squaredNorm() <= kProbTol) {
    report.conclusion_null = true;
  } else {
    report.conclusion_residual = ray_distance(Ket::normalized(back), perp_l);
  }
  return report;
}

}  // namespace qorder
