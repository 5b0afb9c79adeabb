#include "qorder/hilbert.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qorder/errors.hpp"

namespace qorder {

namespace {

constexpr int kMaxCompositeDim = 64;

std::string dim_str(int rows, int cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace

std::string to_string(Factor f) { return f == Factor::left ? "L" : "R"; }

BipartiteSpace::BipartiteSpace(int dim_l, int dim_r)
    : dim_l_(dim_l), dim_r_(dim_r) {
  if (dim_l < 2 || dim_r < 2) {
    throw InvalidArgument("BipartiteSpace: factor dimensions must be >= 2, got " +
                          dim_str(dim_l, dim_r));
  }
  if (dim_l * dim_r > kMaxCompositeDim) {
    throw InvalidArgument("BipartiteSpace: composite dimension " +
                          std::to_string(dim_l * dim_r) + " exceeds cap " +
                          std::to_string(kMaxCompositeDim));
  }
}

Ket::Ket(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw InvalidArgument("Ket: empty amplitude vector");
  }
  const double n2 = amplitudes_.squaredNorm();
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw InvalidArgument("Ket: squared norm " + std::to_string(n2) +
                          " differs from 1 beyond tolerance");
  }
}

Ket Ket::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (n <= kProbTol) {
    throw InvalidArgument("Ket::normalized: (near-)zero vector");
  }
  return Ket(amplitudes / n, Unchecked{});
}

Ket Ket::basis_state(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw InvalidArgument("Ket::basis_state: index " + std::to_string(index) +
                          " out of range for dim " + std::to_string(dim));
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return Ket(std::move(v), Unchecked{});
}

Complex inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("inner: dims " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
  return a.amplitudes().dot(b.amplitudes());
}

Matrix projector(const Ket& k) {
  return k.amplitudes() * k.amplitudes().adjoint();
}

bool same_ray(const Ket& a, const Ket& b, double tol) {
  return std::abs(std::abs(inner(a, b)) - 1.0) <= tol;
}

void check_density_matrix(const Matrix& m, const std::string& context) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument(context + ": matrix is " +
                          dim_str(static_cast<int>(m.rows()),
                                  static_cast<int>(m.cols())) +
                          ", expected square");
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) {
    throw InvalidArgument(context + ": Hermiticity residual " +
                          std::to_string(herm));
  }
  const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_err > kNormTol) {
    throw InvalidArgument(context + ": trace differs from 1 by " +
                          std::to_string(tr_err));
  }
  // Dimensions are tiny, so a full Hermitian eigensolve is the robust PSD
  // check; the symmetrization discards the sub-tolerance residual.
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0,
                                           Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -kPsdTol) {
    throw InvalidArgument(context + ": negative eigenvalue " +
                          std::to_string(lo));
  }
}

bool is_density_matrix(const Matrix& m) {
  try {
    check_density_matrix(m, "is_density_matrix");
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

DensityOperator::DensityOperator(Matrix entries, BipartiteSpace space)
    : entries_(std::move(entries)), space_(space) {
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw DimensionMismatch(
        "DensityOperator: matrix is " +
        dim_str(static_cast<int>(entries_.rows()),
                static_cast<int>(entries_.cols())) +
        " but space dimension is " + std::to_string(space_.dim()));
  }
  check_density_matrix(entries_, "DensityOperator");
}

DensityOperator DensityOperator::pure(const Ket& psi, BipartiteSpace space) {
  if (psi.dim() != space.dim()) {
    throw DimensionMismatch("DensityOperator::pure: ket dim " +
                            std::to_string(psi.dim()) + " vs space dim " +
                            std::to_string(space.dim()));
  }
  return DensityOperator(projector(psi), space);
}

DensityOperator DensityOperator::maximally_mixed(BipartiteSpace space) {
  const int d = space.dim();
  return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d),
                         space);
}

bool DensityOperator::is_pure(double tol) const {
  return (entries_ * entries_).trace().real() > 1.0 - tol;
}

Ket tensor(const Ket& a, const Ket& b) {
  const int dl = a.dim();
  const int dr = b.dim();
  Vector out(dl * dr);
  for (int il = 0; il < dl; ++il) {
    for (int ir = 0; ir < dr; ++ir) {
      out(il * dr + ir) = a.amplitude(il) * b.amplitude(ir);
    }
  }
  return Ket::normalized(std::move(out));
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix embed(const Matrix& op, Factor factor, const BipartiteSpace& space) {
  const int d = space.factor_dim(factor);
  if (op.rows() != d || op.cols() != d) {
    throw DimensionMismatch("embed: operator is " +
                            dim_str(static_cast<int>(op.rows()),
                                    static_cast<int>(op.cols())) +
                            " but factor " + to_string(factor) +
                            " has dim " + std::to_string(d));
  }
  return factor == Factor::left
             ? tensor(op, Matrix::Identity(space.dim_r(), space.dim_r()))
             : tensor(Matrix::Identity(space.dim_l(), space.dim_l()), op);
}

Matrix partial_trace_l(const Matrix& m, const BipartiteSpace& space) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw DimensionMismatch("partial_trace_l: matrix dim mismatch");
  }
  const int dl = space.dim_l();
  const int dr = space.dim_r();
  Matrix out = Matrix::Zero(dr, dr);
  for (int il = 0; il < dl; ++il) {
    out += m.block(il * dr, il * dr, dr, dr);
  }
  return out;
}

Matrix partial_trace_r(const Matrix& m, const BipartiteSpace& space) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw DimensionMismatch("partial_trace_r: matrix dim mismatch");
  }
  const int dl = space.dim_l();
  const int dr = space.dim_r();
  Matrix out(dl, dl);
  for (int il = 0; il < dl; ++il) {
    for (int jl = 0; jl < dl; ++jl) {
      out(il, jl) = m.block(il * dr, jl * dr, dr, dr).trace();
    }
  }
  return out;
}

Matrix partial_trace_l(const DensityOperator& rho) {
  return partial_trace_l(rho.matrix(), rho.space());
}

Matrix partial_trace_r(const DensityOperator& rho) {
  return partial_trace_r(rho.matrix(), rho.space());
}

Matrix reduced_state(const DensityOperator& rho, Factor factor) {
  return factor == Factor::left ? partial_trace_r(rho) : partial_trace_l(rho);
}

Matrix sandwich(const Matrix& m, const BipartiteSpace& space, const Ket& ket,
                Factor factor) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw DimensionMismatch("sandwich: matrix dim mismatch");
  }
  if (ket.dim() != space.factor_dim(factor)) {
    throw DimensionMismatch("sandwich: ket dim " + std::to_string(ket.dim()) +
                            " vs factor " + to_string(factor) + " dim " +
                            std::to_string(space.factor_dim(factor)));
  }
  const int dl = space.dim_l();
  const int dr = space.dim_r();
  const Vector& k = ket.amplitudes();
  if (factor == Factor::left) {
    // <k|m|k> over L: weighted sum of the d_R x d_R blocks.
    Matrix out = Matrix::Zero(dr, dr);
    for (int il = 0; il < dl; ++il) {
      for (int jl = 0; jl < dl; ++jl) {
        out += std::conj(k(il)) * k(jl) * m.block(il * dr, jl * dr, dr, dr);
      }
    }
    return out;
  }
  // <k|m|k> over R: each entry is a quadratic form on a block.
  Matrix out(dl, dl);
  for (int il = 0; il < dl; ++il) {
    for (int jl = 0; jl < dl; ++jl) {
      out(il, jl) = k.dot(m.block(il * dr, jl * dr, dr, dr) * k);
    }
  }
  return out;
}

Matrix sandwich(const DensityOperator& rho, const Ket& ket, Factor factor) {
  return sandwich(rho.matrix(), rho.space(), ket, factor);
}

Vector contract_l(const Ket& k, const Ket& psi, const BipartiteSpace& space) {
  if (k.dim() != space.dim_l() || psi.dim() != space.dim()) {
    throw DimensionMismatch("contract_l: dim mismatch");
  }
  const int dr = space.dim_r();
  Vector out = Vector::Zero(dr);
  for (int il = 0; il < space.dim_l(); ++il) {
    out += std::conj(k.amplitude(il)) * psi.amplitudes().segment(il * dr, dr);
  }
  return out;
}

Vector contract_r(const Ket& k, const Ket& psi, const BipartiteSpace& space) {
  if (k.dim() != space.dim_r() || psi.dim() != space.dim()) {
    throw DimensionMismatch("contract_r: dim mismatch");
  }
  const int dl = space.dim_l();
  const int dr = space.dim_r();
  Vector out(dl);
  for (int il = 0; il < dl; ++il) {
    out(il) = k.amplitudes().dot(psi.amplitudes().segment(il * dr, dr));
  }
  return out;
}

Vector contract(const Ket& k, const Ket& psi, const BipartiteSpace& space,
                Factor factor) {
  return factor == Factor::left ? contract_l(k, psi, space)
                                : contract_r(k, psi, space);
}

}  // namespace qorder
