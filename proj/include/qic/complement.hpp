#pragma once

#include "qic/densecore.hpp"

namespace qic {

/// Single-qubit complementarity quantities. mean_square + mixedness = 1/2 for
/// any qubit state.
struct SingleQubitProps {
  double coherence = 0.0;      // nu = 2|Tr(rho sigma_+)|
  double predictability = 0.0; // p = |Tr(rho sigma_z)|
  double mean_square = 0.0;    // (nu^2 + p^2)/2
  double mixedness = 0.0;      // 1 - Tr(rho^2)
};

SingleQubitProps single_qubit_props(const ComplexMatrix& rho_k);

struct TwoQubitReport {
  SingleQubitProps props1, props2;
  double overlap = 0.0;               // Tr(rho rho~)
  double mixedness = 0.0;             // M(rho)
  double indistinguishability = 0.0;  // I(rho,rho~) = 1 - D_HS^2
  double hs_distance = 0.0;           // D_HS(rho - rho~)
  double tangle = 0.0;                // two-qubit tangle
  double separable_uncertainty = 0.0; // eta = overlap + mixedness - tangle
};

TwoQubitReport two_qubit_report(const ComplexMatrix& rho);

// |sum_k [tau_k{R_k} + 2 S^2bar(rho_k)] - N| for an N-qubit pure state.
double check_pure_relation(const PureStateVector& psi);

// tau_A(BC) - tau_AB - tau_AC for three qubits (qubit 0 as the pivot; the
// value is permutation invariant).
double residual_tangle_three_qubit(const PureStateVector& psi);

// |tau_123 + (2/3)[tau_12 + tau_13 + tau_23 + sum_k S^2bar_k] - 1|.
double check_three_qubit_relation(const PureStateVector& psi);

enum class BellState { PhiPlus, PhiMinus, PsiPlus, Singlet };

PureStateVector bell_state(BellState which);

// lambda |Bell><Bell| + (1-lambda)/4 I; spin-flip symmetric.
ComplexMatrix werner_state(double lambda, BellState which = BellState::Singlet);

// Maximally entangled state for fixed marginal mixednesses.
ComplexMatrix mems_state(double x1, double x2);

}  // namespace qic
