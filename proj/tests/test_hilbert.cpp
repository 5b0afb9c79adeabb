#include <cmath>
#include <random>

#include "doctest.h"

#include "qorder/errors.hpp"
#include "qorder/hardy.hpp"
#include "qorder/hilbert.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qorder;
using namespace qorder::testing;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Ket plus_state() {
  Vector v(2);
  v << kInvSqrt2, kInvSqrt2;
  return Ket(v);
}

Ket phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = kInvSqrt2;
  v(3) = kInvSqrt2;
  return Ket(v);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("bipartite space indexing is L-major") {
  BipartiteSpace space(2, 3);
  CHECK(space.dim() == 6);
  CHECK(space.composite_index(0, 0) == 0);
  CHECK(space.composite_index(0, 2) == 2);
  CHECK(space.composite_index(1, 0) == 3);
  CHECK(space.factor_dim(Factor::left) == 2);
  CHECK(space.factor_dim(Factor::right) == 3);
}

TEST_CASE("bipartite space rejects degenerate and oversized factors") {
  CHECK_THROWS_AS(BipartiteSpace(1, 2), InvalidArgument);
  CHECK_THROWS_AS(BipartiteSpace(2, 0), InvalidArgument);
  CHECK_THROWS_AS(BipartiteSpace(5, 13), InvalidArgument);
  CHECK_NOTHROW(BipartiteSpace(8, 8));
}

TEST_CASE("ket constructors enforce unit norm") {
  Vector v(2);
  v << 0.5, 0.5;
  CHECK_THROWS_AS(Ket{v}, InvalidArgument);
  CHECK(Ket::normalized(v).amplitudes().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Ket::normalized(Vector::Zero(3)), InvalidArgument);
  Ket e1 = Ket::basis_state(4, 1);
  CHECK(e1.amplitude(1) == Complex(1.0, 0.0));
  CHECK(e1.amplitude(0) == Complex(0.0, 0.0));
}

TEST_CASE("same_ray ignores global phase") {
  std::mt19937_64 rng(11);
  Ket a = random_ket(rng, 3);
  Vector rotated = a.amplitudes() * Complex(std::cos(1.1), std::sin(1.1));
  CHECK(same_ray(a, Ket(rotated)));
  CHECK_FALSE(same_ray(a, random_ket(rng, 3)));
}

TEST_CASE("tensor of basis states follows the L-major convention") {
  Ket l0 = Ket::basis_state(2, 0);
  Ket l1 = Ket::basis_state(2, 1);
  Ket r0 = Ket::basis_state(2, 0);
  Ket r1 = Ket::basis_state(2, 1);

  CHECK(tensor(l0, r0).amplitude(0) == Complex(1.0, 0.0));
  CHECK(tensor(l0, r1).amplitude(1) == Complex(1.0, 0.0));
  CHECK(tensor(l1, r0).amplitude(2) == Complex(1.0, 0.0));

  Ket mixed = tensor(plus_state(), r0);
  CHECK(mixed.amplitude(0).real() == doctest::Approx(kInvSqrt2));
  CHECK(std::abs(mixed.amplitude(1)) == doctest::Approx(0.0));
  CHECK(mixed.amplitude(2).real() == doctest::Approx(kInvSqrt2));
  CHECK(std::abs(mixed.amplitude(3)) == doctest::Approx(0.0));
}

TEST_CASE("partial traces of a product state recover the factors") {
  BipartiteSpace space(2, 2);
  Matrix rho_l = projector(Ket::basis_state(2, 0));
  Matrix rho_r = projector(Ket::basis_state(2, 1));
  DensityOperator rho(tensor(rho_l, rho_r), space);

  CHECK(max_abs(partial_trace_l(rho) - rho_r) < kNumTol);
  CHECK(max_abs(partial_trace_r(rho) - rho_l) < kNumTol);
}

TEST_CASE("maximally entangled state has maximally mixed marginals") {
  BipartiteSpace space(2, 2);
  DensityOperator rho = DensityOperator::pure(phi_plus(), space);
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK(max_abs(partial_trace_l(rho) - half) < kNumTol);
  CHECK(max_abs(partial_trace_r(rho) - half) < kNumTol);
}

TEST_CASE("partial traces match the elementwise loop oracle") {
  std::mt19937_64 rng(101);
  for (int dl : {2, 3, 4}) {
    for (int dr : {2, 3, 4}) {
      BipartiteSpace space(dl, dr);
      DensityOperator rho = random_density(rng, space);
      CHECK(max_abs(partial_trace_l(rho) -
                    oracle_partial_trace_l(rho.matrix(), dl, dr)) < kNumTol);
      CHECK(max_abs(partial_trace_r(rho) -
                    oracle_partial_trace_r(rho.matrix(), dl, dr)) < kNumTol);
      CHECK(std::abs(partial_trace_l(rho).trace() - Complex(1.0, 0.0)) <
            kNormTol);
      CHECK(std::abs(partial_trace_r(rho).trace() - Complex(1.0, 0.0)) <
            kNormTol);
    }
  }
}

TEST_CASE("hardy state marginal agrees with the loop oracle") {
  HardyScenario h = build_hardy({0.6, 1.1});
  DensityOperator rho = DensityOperator::pure(h.ket0, h.space);
  Matrix marginal = partial_trace_l(rho);
  CHECK(max_abs(marginal - oracle_partial_trace_l(rho.matrix(), 2, 2)) <
        kNumTol);
  CHECK(std::abs(marginal.trace() - Complex(1.0, 0.0)) < kNormTol);
}

TEST_CASE("left trace of a kronecker product scales the right operator") {
  std::mt19937_64 rng(7);
  BipartiteSpace space(3, 2);
  Matrix a = random_density_matrix(rng, 3) * 2.5;  // arbitrary trace
  Matrix b = random_density_matrix(rng, 2);
  Matrix composite = tensor(a, b);
  CHECK(max_abs(composite - oracle_kron(a, b)) < kNumTol);
  CHECK(max_abs(partial_trace_l(composite, space) - a.trace() * b) < kNumTol);
  CHECK(max_abs(partial_trace_r(composite, space) - b.trace() * a) < kNumTol);
}

TEST_CASE("tensor then partial trace round-trips a pure product") {
  std::mt19937_64 rng(13);
  Ket a = random_ket(rng, 2);
  Ket b = random_ket(rng, 3);
  BipartiteSpace space(2, 3);
  DensityOperator rho = DensityOperator::pure(tensor(a, b), space);
  CHECK(max_abs(partial_trace_r(rho) - projector(a)) < kNumTol);
  CHECK(max_abs(partial_trace_l(rho) - projector(b)) < kNumTol);
}

TEST_CASE("sandwich factorizes on product states") {
  std::mt19937_64 rng(17);
  BipartiteSpace space(2, 2);
  Matrix rho_l = random_density_matrix(rng, 2);
  Matrix rho_r = random_density_matrix(rng, 2);
  DensityOperator rho(tensor(rho_l, rho_r), space);
  Ket l = random_ket(rng, 2);
  Matrix expected =
      (l.amplitudes().adjoint() * rho_l * l.amplitudes())(0) * rho_r;
  CHECK(max_abs(sandwich(rho, l, Factor::left) - expected) < kNumTol);
}

TEST_CASE("sandwich with a ket orthogonal to the marginal support is zero") {
  BipartiteSpace space(2, 2);
  Matrix rho_r = 0.5 * Matrix::Identity(2, 2);
  DensityOperator rho(tensor(projector(Ket::basis_state(2, 0)), rho_r), space);
  Matrix out = sandwich(rho, Ket::basis_state(2, 1), Factor::left);
  CHECK(max_abs(out) < kNumTol);
}

TEST_CASE("hardy sandwich trace equals the marginal Born weight") {
  HardyScenario h = build_hardy({0.7853981633974483, 0.7853981633974483});
  DensityOperator rho = DensityOperator::pure(h.ket0, h.space);
  const Ket& r = h.r2.vector(0);  // R2+
  Matrix numerator = sandwich(rho, r, Factor::right);
  Complex born =
      (r.amplitudes().adjoint() * partial_trace_l(rho) * r.amplitudes())(0);
  CHECK(std::abs(numerator.trace() - born) < kNumTol);
}

TEST_CASE("sandwich agrees with projector conjugation plus partial trace") {
  std::mt19937_64 rng(19);
  for (int dl : {2, 3}) {
    for (int dr : {2, 4}) {
      BipartiteSpace space(dl, dr);
      DensityOperator rho = random_density(rng, space);

      Ket l = random_ket(rng, dl);
      Matrix p = embed(projector(l), Factor::left, space);
      Matrix conjugated = partial_trace_l(p * rho.matrix() * p, space);
      CHECK(max_abs(sandwich(rho, l, Factor::left) - conjugated) < kNumTol);
      CHECK(max_abs(sandwich(rho, l, Factor::left) -
                    oracle_sandwich_l(rho.matrix(), dl, dr, l.amplitudes())) <
            kNumTol);

      Ket r = random_ket(rng, dr);
      Matrix q = embed(projector(r), Factor::right, space);
      Matrix conjugated_r = partial_trace_r(q * rho.matrix() * q, space);
      CHECK(max_abs(sandwich(rho, r, Factor::right) - conjugated_r) < kNumTol);
      CHECK(max_abs(sandwich(rho, r, Factor::right) -
                    oracle_sandwich_r(rho.matrix(), dl, dr, r.amplitudes())) <
            kNumTol);
    }
  }
}

TEST_CASE("contractions agree with the loop oracles") {
  std::mt19937_64 rng(23);
  BipartiteSpace space(3, 4);
  Ket psi = random_ket(rng, 12);
  Ket l = random_ket(rng, 3);
  Ket r = random_ket(rng, 4);
  CHECK((contract_l(l, psi, space) -
         oracle_contract_l(l.amplitudes(), psi.amplitudes(), 3, 4))
            .norm() < kNumTol);
  CHECK((contract_r(r, psi, space) -
         oracle_contract_r(r.amplitudes(), psi.amplitudes(), 3, 4))
            .norm() < kNumTol);
  CHECK((contract(l, psi, space, Factor::left) - contract_l(l, psi, space))
            .norm() == 0.0);
}

TEST_CASE("density operator constructor rejects invalid matrices") {
  BipartiteSpace space(2, 2);

  Matrix not_hermitian = Matrix::Identity(4, 4) * 0.25;
  not_hermitian(0, 1) = Complex(0.3, 0.0);
  CHECK_THROWS_AS(DensityOperator(not_hermitian, space), InvalidArgument);

  Matrix wrong_trace = Matrix::Identity(4, 4);
  CHECK_THROWS_AS(DensityOperator(wrong_trace, space), InvalidArgument);

  Matrix negative = Matrix::Zero(4, 4);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator(negative, space), InvalidArgument);

  Matrix wrong_dim = Matrix::Identity(3, 3) / 3.0;
  CHECK_THROWS_AS(DensityOperator(wrong_dim, space), DimensionMismatch);

  CHECK(is_density_matrix(Matrix::Identity(4, 4) * 0.25));
  CHECK_FALSE(is_density_matrix(negative));
}

TEST_CASE("purity predicate separates pure from mixed") {
  BipartiteSpace space(2, 2);
  CHECK(DensityOperator::pure(phi_plus(), space).is_pure());
  CHECK_FALSE(DensityOperator::maximally_mixed(space).is_pure());
}

TEST_CASE("embed places the operator on the declared factor") {
  std::mt19937_64 rng(29);
  BipartiteSpace space(2, 3);
  Matrix a = random_density_matrix(rng, 2);
  Matrix b = random_density_matrix(rng, 3);
  CHECK(max_abs(embed(a, Factor::left, space) -
                oracle_kron(a, Matrix::Identity(3, 3))) < kNumTol);
  CHECK(max_abs(embed(b, Factor::right, space) -
                oracle_kron(Matrix::Identity(2, 2), b)) < kNumTol);
}
