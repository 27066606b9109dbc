#pragma once

#include "qic/densecore.hpp"

namespace qic {

enum class Measure {
  EntropyOfEntanglement,
  EntanglementOfFormation,
  Concurrence2,
  Tangle2,
  IConcurrence,
  ITangle,
  Negativity,
  Mp,
  Np,
  LowerBoundC,
  LowerBoundTau,
};

struct MonotoneValue {
  double value = 0.0;
  Measure measure;
};

double von_neumann_entropy(const ComplexMatrix& rho);
double entropy_of_entanglement(const PureStateVector& psi);

// Universal inversion: Tr(m) I - m_A (x) I - I (x) m_B + m (bipartite dims).
ComplexMatrix universal_inversion(const ComplexMatrix& m);

// Spin flip: sigma_y (x) sigma_y m* sigma_y (x) sigma_y for two qubits,
// universal inversion for any other bipartite split. On [2,2] density
// matrices the two branches coincide.
ComplexMatrix spin_flip(const ComplexMatrix& rho);

MonotoneValue concurrence_two_qubit(const ComplexMatrix& rho);
MonotoneValue tangle_two_qubit(const ComplexMatrix& rho);

double binary_entropy(double x);
double eof_from_concurrence(double c);
double eof_two_qubit(const ComplexMatrix& rho);

MonotoneValue i_tangle_pure(const PureStateVector& psi, double scale = 1.0);

/// Detail of the rank-2 closed form: tangle = overlap + 2 lambda_min (1 - purity),
/// with lambda_min the smallest eigenvalue of the 3x3 M matrix built from the
/// two support eigenvectors.
struct Rank2Tangle {
  double value = 0.0;  // clamped at zero
  double lambda_min = 0.0;
  double overlap = 0.0;  // Tr(rho rho~)
  double purity = 0.0;   // Tr(rho^2)
};

Rank2Tangle i_tangle_rank2_detail(const ComplexMatrix& rho);
MonotoneValue i_tangle_rank2(const ComplexMatrix& rho);

MonotoneValue negativity(const ComplexMatrix& rho);

enum class PtMode { root, power };

// M_p (root mode) and N_p (power mode) of the partial transpose.
MonotoneValue pt_monotone(const ComplexMatrix& rho, double p, PtMode mode);

struct LowerBounds {
  double l_c = 0.0;    // 2 M_2^TA, lower bound on the I-concurrence
  double l_tau = 0.0;  // its square, lower bound on the I-tangle
};
LowerBounds lower_bounds(const ComplexMatrix& rho);

/// Two-qudit isotropic family: mixing weight omega and fidelity F are linked
/// by omega = (d^2 F - 1)/(d^2 - 1).
struct IsotropicFamily {
  Index d = 2;
  double omega = 0.0;
  double fidelity = 0.0;

  static IsotropicFamily from_omega(Index d, double omega);
  static IsotropicFamily from_fidelity(Index d, double fidelity);
};

PureStateVector max_entangled_state(Index d);  // sum_i |ii> / sqrt(d)
ComplexMatrix isotropic_state(const IsotropicFamily& fam);
double isotropic_lc_analytic(const IsotropicFamily& fam);

}  // namespace qic
