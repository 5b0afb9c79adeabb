#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace qorder {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// An operator on a single finite-dimensional space. Squareness is the
/// only structural invariant; validity as a state is checked explicitly
/// where contracts require it (see check_density_matrix).
using Operator = Matrix;

// Numerical tolerances. All linear algebra here is small dense products in
// 64-bit floats, so 1e-10 leaves three orders of headroom over accumulated
// machine epsilon.
inline constexpr double kNormTol = 1e-10;  // unit norm / unit trace
inline constexpr double kHermTol = 1e-10;  // Hermiticity residual
inline constexpr double kNumTol = 1e-10;   // generic cross-path agreement
inline constexpr double kPsdTol = 1e-9;    // eigenvalue floor
inline constexpr double kProbTol = 1e-12;  // below this an outcome is impossible

/// Which tensor factor of a bipartite space an object lives on.
enum class Factor { left, right };

/// Returns "L" or "R".
std::string to_string(Factor f);

/// Tensor-factor bookkeeping for a bipartite space of dimension
/// dim_l * dim_r. Composite indices are L-major: k = i_l * dim_r + i_r,
/// which makes the right-factor trace a contiguous-block trace.
class BipartiteSpace {
public:
  /// Requires dim_l, dim_r >= 2 and dim_l * dim_r <= 64.
  BipartiteSpace(int dim_l, int dim_r);

  int dim_l() const { return dim_l_; }
  int dim_r() const { return dim_r_; }
  int dim() const { return dim_l_ * dim_r_; }
  int factor_dim(Factor f) const { return f == Factor::left ? dim_l_ : dim_r_; }

  /// Composite index of (i_l, i_r) under the L-major convention.
  int composite_index(int i_l, int i_r) const { return i_l * dim_r_ + i_r; }

  bool operator==(const BipartiteSpace&) const = default;

private:
  int dim_l_;
  int dim_r_;
};

/// A normalized complex vector. Every publicly constructed Ket has unit
/// norm within kNormTol.
class Ket {
public:
  /// Validates unit norm; throws InvalidArgument otherwise.
  explicit Ket(Vector amplitudes);

  /// Rescales to unit norm; throws InvalidArgument on a (near-)zero vector.
  static Ket normalized(Vector amplitudes);

  /// Computational basis vector e_index.
  static Ket basis_state(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(int i) const { return amplitudes_(i); }

private:
  struct Unchecked {};
  Ket(Vector amplitudes, Unchecked) : amplitudes_(std::move(amplitudes)) {}

  Vector amplitudes_;
};

/// <a|b>.
Complex inner(const Ket& a, const Ket& b);

/// |k><k|.
Matrix projector(const Ket& k);

/// Whether |<a|b>| = 1 within tol, i.e. equal up to global phase.
bool same_ray(const Ket& a, const Ket& b, double tol = kNumTol);

/// Statistical operator on a bipartite space. Constructors validate
/// Hermiticity, unit trace and positive semidefiniteness eagerly: every
/// downstream formula divides by or conditions on its entries.
class DensityOperator {
public:
  DensityOperator(Matrix entries, BipartiteSpace space);

  /// |psi><psi| for a composite-space ket.
  static DensityOperator pure(const Ket& psi, BipartiteSpace space);

  /// Identity / dim.
  static DensityOperator maximally_mixed(BipartiteSpace space);

  const Matrix& matrix() const { return entries_; }
  const BipartiteSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }

  /// Tr(rho^2) > 1 - tol: rank one within tolerance.
  bool is_pure(double tol = kNumTol) const;

private:
  Matrix entries_;
  BipartiteSpace space_;
};

/// Throws InvalidArgument unless m is Hermitian (kHermTol), unit trace
/// (kNormTol) and PSD (eigenvalues >= -kPsdTol). Shared by the
/// DensityOperator constructor and by contracts that return single-factor
/// states as plain operators.
void check_density_matrix(const Matrix& m, const std::string& context);

/// Non-throwing variant of check_density_matrix.
bool is_density_matrix(const Matrix& m);

/// |a> tensor |b> with a on the left factor; L-major amplitude layout.
Ket tensor(const Ket& a, const Ket& b);

/// Kronecker product with `a` on the left factor; consistent with the
/// L-major composite index convention.
Matrix tensor(const Matrix& a, const Matrix& b);

/// Embeds a single-factor operator into the composite space
/// (op tensor I or I tensor op).
Matrix embed(const Matrix& op, Factor factor, const BipartiteSpace& space);

/// Tr_L: the reduced operator on the right factor.
Matrix partial_trace_l(const Matrix& m, const BipartiteSpace& space);
Matrix partial_trace_l(const DensityOperator& rho);

/// Tr_R: the reduced operator on the left factor.
Matrix partial_trace_r(const Matrix& m, const BipartiteSpace& space);
Matrix partial_trace_r(const DensityOperator& rho);

/// Reduced state on the given factor (Tr over the other factor).
Matrix reduced_state(const DensityOperator& rho, Factor factor);

/// The partial matrix element <k|rho|k> taken on `factor`, as an operator
/// on the complementary factor. PSD with trace equal to the Born
/// probability of outcome k (<= 1).
Matrix sandwich(const DensityOperator& rho, const Ket& ket, Factor factor);
Matrix sandwich(const Matrix& m, const BipartiteSpace& space, const Ket& ket,
                Factor factor);

/// <k|psi> for k on the left factor: the induced (unnormalized) vector on
/// the right factor.
Vector contract_l(const Ket& k, const Ket& psi, const BipartiteSpace& space);

/// <k|psi> for k on the right factor: the induced (unnormalized) vector on
/// the left factor.
Vector contract_r(const Ket& k, const Ket& psi, const BipartiteSpace& space);

/// Contraction on either factor; dispatches to contract_l / contract_r.
Vector contract(const Ket& k, const Ket& psi, const BipartiteSpace& space,
                Factor factor);

}  // namespace qorder
