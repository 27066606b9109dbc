#include "qic/complement.hpp"

#include "qic/monotones.hpp"

#include <cmath>
#include <stdexcept>

namespace qic {

SingleQubitProps single_qubit_props(const ComplexMatrix& rho_k) {
  if (rho_k.rows() != 2 || rho_k.cols() != 2)
    throw std::invalid_argument("single_qubit_props: 2x2 density matrix required");
  require_density(rho_k, "single_qubit_props");
  SingleQubitProps p;
  p.coherence = 2.0 * std::abs(rho_k.mat(0, 1));
  p.predictability = std::abs(rho_k.mat(0, 0).real() - rho_k.mat(1, 1).real());
  p.mean_square = 0.5 * (p.coherence * p.coherence + p.predictability * p.predictability);
  p.mixedness = 1.0 - (rho_k.mat * rho_k.mat).trace().real();
  return p;
}

TwoQubitReport two_qubit_report(const ComplexMatrix& rho) {
  if (rho.dims != std::vector<Index>{2, 2})
    throw std::invalid_argument("two_qubit_report: dims [2,2] required");
  require_density(rho, "two_qubit_report");

  TwoQubitReport r;
  r.props1 = single_qubit_props(partial_trace_keep(rho, {0}));
  r.props2 = single_qubit_props(partial_trace_keep(rho, {1}));

  ComplexMatrix flipped = spin_flip(rho);
  r.overlap = (rho.mat * flipped.mat).trace().real();
  r.mixedness = 1.0 - (rho.mat * rho.mat).trace().real();
  Matrix diff = rho.mat - flipped.mat;
  r.hs_distance = std::sqrt(0.5 * (diff.adjoint() * diff).trace().real());
  r.indistinguishability = 1.0 - r.hs_distance * r.hs_distance;
  r.tangle = tangle_two_qubit(rho).value;
  r.separable_uncertainty = r.overlap + r.mixedness - r.tangle;
  return r;
}

namespace {

// Marginal mixedness of every qubit of an N-qubit pure state.
std::vector<SingleQubitProps> qubit_props(const PureStateVector& psi) {
  for (Index d : psi.dims)
    if (d != 2) throw std::invalid_argument("qubit marginals: all dims must equal 2");
  ComplexMatrix rho = psi.projector();
  std::vector<SingleQubitProps> out;
  for (std::size_t k = 0; k < psi.dims.size(); ++k)
    out.push_back(single_qubit_props(partial_trace_keep(rho, {k})));
  return out;
}

}  // namespace

double check_pure_relation(const PureStateVector& psi) {
  auto props = qubit_props(psi);
  double acc = 0.0;
  for (const auto& p : props) acc += 2.0 * p.mixedness + 2.0 * p.mean_square;
  return std::abs(acc - static_cast<double>(props.size()));
}

double residual_tangle_three_qubit(const PureStateVector& psi) {
  if (psi.dims != std::vector<Index>{2, 2, 2})
    throw std::invalid_argument("residual_tangle_three_qubit: dims [2,2,2] required");
  ComplexMatrix rho = psi.projector();

  ComplexMatrix rho_a = partial_trace_keep(rho, {0});
  double tau_a_bc = 2.0 * (1.0 - (rho_a.mat * rho_a.mat).trace().real());

  ComplexMatrix rho_ab = partial_trace_keep(rho, {0, 1});
  ComplexMatrix rho_ac = partial_trace_keep(rho, {0, 2});
  double tau_ab = tangle_two_qubit(rho_ab).value;
  double tau_ac = tangle_two_qubit(rho_ac).value;
  return tau_a_bc - tau_ab - tau_ac;
}

double check_three_qubit_relation(const PureStateVector& psi) {
  if (psi.dims != std::vector<Index>{2, 2, 2})
    throw std::invalid_argument("check_three_qubit_relation: dims [2,2,2] required");
  ComplexMatrix rho = psi.projector();

  double tau_123 = residual_tangle_three_qubit(psi);
  double pair_sum = 0.0;
  pair_sum += tangle_two_qubit(partial_trace_keep(rho, {0, 1})).value;
  pair_sum += tangle_two_qubit(partial_trace_keep(rho, {0, 2})).value;
  pair_sum += tangle_two_qubit(partial_trace_keep(rho, {1, 2})).value;

  double s2_sum = 0.0;
  for (const auto& p : qubit_props(psi)) s2_sum += p.mean_square;

  return std::abs(tau_123 + (2.0 / 3.0) * (pair_sum + s2_sum) - 1.0);
}

PureStateVector bell_state(BellState which) {
  Vector v = Vector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (which) {
    case BellState::PhiPlus:  v(0) = r; v(3) = r; break;
    case BellState::PhiMinus: v(0) = r; v(3) = -r; break;
    case BellState::PsiPlus:  v(1) = r; v(2) = r; break;
    case BellState::Singlet:  v(1) = r; v(2) = -r; break;
  }
  return PureStateVector(std::move(v), {2, 2});
}

ComplexMatrix werner_state(double lambda, BellState which) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("werner_state: lambda must lie in [0,1]");
  Matrix rho = lambda * bell_state(which).projector().mat +
               (1.0 - lambda) / 4.0 * Matrix::Identity(4, 4);
  return ComplexMatrix(std::move(rho), {2, 2});
}

ComplexMatrix mems_state(double x1, double x2) {
  if (x1 < 0.0 || x2 < 0.0 || x1 + x2 > 1.0)
    throw std::invalid_argument("mems_state: need x1,x2 >= 0 and x1+x2 <= 1");
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = x1;
  rho(3, 3) = x2;
  rho(2, 2) = 1.0 - x1 - x2;
  rho(0, 3) = rho(3, 0) = std::sqrt(x1 * x2);
  return ComplexMatrix(std::move(rho), {2, 2});
}

}  // namespace qic
