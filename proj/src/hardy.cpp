#include "qorder/hardy.hpp"

#include <cmath>
#include <numbers>

#include "qorder/errors.hpp"

namespace qorder {

namespace {

void check_params(const HardyParams& params) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(params.alpha > 0.0 && params.alpha < half_pi) ||
      !(params.beta > 0.0 && params.beta < half_pi)) {
    throw DegenerateParams("HardyParams: angles must lie strictly in (0, pi/2)");
  }
}

}  // namespace

HardyScenario build_hardy(const HardyParams& params) {
  check_params(params);
  const BipartiteSpace space(2, 2);

  // Computational bases carry the actual observables; the alternatives are
  // real rotations chosen so that <L2+|L1+> = cos alpha and
  // <R2+|R1-> = cos beta. Any unitary-equivalent embedding would give the
  // same probabilities.
  MeasurementBasis l2(Factor::left,
                      {Ket::basis_state(2, 0), Ket::basis_state(2, 1)},
                      {"L2+", "L2-"});
  MeasurementBasis r2(Factor::right,
                      {Ket::basis_state(2, 0), Ket::basis_state(2, 1)},
                      {"R2+", "R2-"});
  MeasurementBasis l1 =
      MeasurementBasis::rotated_qubit(Factor::left, params.alpha, "L1+", "L1-");

  const double cb = std::cos(params.beta);
  const double sb = std::sin(params.beta);
  Vector r1_minus(2), r1_plus(2);
  r1_minus << cb, sb;
  r1_plus << -sb, cb;
  MeasurementBasis r1(Factor::right, {Ket(r1_plus), Ket(r1_minus)},
                      {"R1+", "R1-"});

  // |Psi> = |l'>|r'> - <lbar|l'> <r|r'> |lbar>|r>, then normalized.
  const Ket& l_prime = l1.vector(0);        // L1+
  const Ket& r_prime = r1.vector(1);        // R1-
  const Ket& l_bar = l2.vector(1);          // L2-
  const Ket& r_vec = r2.vector(0);          // R2+
  const Complex cross = inner(l_bar, l_prime) * inner(r_vec, r_prime);

  Vector psi = tensor(l_prime, r_prime).amplitudes() -
               cross * tensor(l_bar, r_vec).amplitudes();
  Ket ket0 = Ket::normalized(std::move(psi));

  return HardyScenario{std::move(ket0), space,          std::move(l2),
                       std::move(l1),   std::move(r2),  std::move(r1)};
}

double closed_form_r_first(const HardyParams& params) {
  check_params(params);
  const double a = std::pow(std::cos(params.alpha), 2);  // |<l|l'>|^2
  const double b = std::pow(std::sin(params.alpha), 2);  // |<lbar|l'>|^2
  const double c = std::pow(std::cos(params.beta), 2);   // |<r|r'>|^2
  return (a + b * (1.0 - c) * (1.0 - c)) / (a + b * (1.0 - c));
}

double closed_form_l_first(const HardyParams& params) {
  check_params(params);
  return 1.0;
}

}  // namespace qorder
