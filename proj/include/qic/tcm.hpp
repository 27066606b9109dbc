#pragma once

#include "qic/densecore.hpp"

#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace qic::tcm {

struct FockField {
  int n = 0;
};
struct CoherentField {
  double alpha = 0.0;
};
using FieldKind = std::variant<FockField, CoherentField>;

enum class AtomicKind { EE, GG, SymmetricEG, SymmetricGGEE, Custom };

/// Two-atom Tavis-Cummings run configuration. Time is measured in units of
/// 1/g. The photon window [s_min, s_max] truncates coherent fields; the field
/// basis itself extends two photons above (and, for initial states that can
/// lose photons, below) the window.
struct TCMConfig {
  double g = 1.0;
  FieldKind field = FockField{0};
  AtomicKind atoms = AtomicKind::EE;
  std::array<Complex, 4> custom_atoms{};  // amplitudes over {ee,eg,ge,gg}
  std::optional<int> s_min;               // defaults derived from the field
  std::optional<int> s_max;

  int window_min() const;
  int window_max() const;
  int field_dim() const;  // D_F = s_max + 2 - s_min + 1
};

/// Joint pure state of atom1 (x) atom2 (x) field. Atomic basis order is
/// {e,g} per atom, so the composite index is (a1*2 + a2)*n_phot + (n - offset).
struct TCMState {
  PureStateVector psi;  // dims [2, 2, n_phot]
  int photon_offset = 0;
  double time = 0.0;
  double g = 1.0;
  double discarded_mass = 0.0;  // probability lost to the truncation window

  Index n_phot() const { return psi.dims[2]; }
  Complex amp(int a1, int a2, int photon) const;
};

// Exact propagator on the excitation-K sector spanned by
// {|ee,k-2>, |eg,k-1>, |ge,k-1>, |gg,k>}: 4x4 for k >= 2, the lower 3x3
// block for k = 1, and 1x1 for k = 0.
Matrix propagator_block(int k, double t, double g = 1.0);

TCMState initial_state(const TCMConfig& cfg);

// Evolve by dt with the exact per-sector propagator.
TCMState evolve(const TCMState& state, double dt);

struct TCMMarginals {
  ComplexMatrix atoms;        // 4x4, dims [2,2]
  ComplexMatrix atom1;        // 2x2
  ComplexMatrix atom1_field;  // dims [2, n_phot]
};
TCMMarginals marginals(const TCMState& state);

struct BipartiteTangles {
  double field_ensemble = 0.0;  // tau_F(A1A2)
  double atom_remainder = 0.0;  // tau_A1(A2F)
  double atom_atom = 0.0;       // tau_A1A2
  double atom_field = 0.0;      // tau_A1F (rank-2 closed form)
  double lambda_min = 0.0;      // from the M matrix of the A1F partition
};
BipartiteTangles bipartite_tangles(const TCMState& state);

// I-residual tangle with the effective field dimension fixed at 3:
// (1/3)[2 tau_A1(A2F) + (3/2) tau_F(A1A2) - 2 tau_A1A2 - 4 tau_A1F].
// Values in [-1e-10, 0) clamp to zero; anything below is returned as-is so a
// positivity violation stays visible.
double i_residual_tangle(const BipartiteTangles& t);
double i_residual_tangle(const TCMState& state);

// P(both excited) - P(both ground).
double atomic_inversion(const TCMState& state);

/// Amplitudes of the symmetric J_x eigenstates m = -1, 0, +1; the singlet is
/// dark and tracked separately.
struct JxCoefficients {
  std::array<Complex, 3> d{};  // d_{-1}, d_0, d_{+1}
  double singlet_weight = 0.0;
};

JxCoefficients jx_coefficients(AtomicKind kind,
                               const std::array<Complex, 4>& custom = {});

// Factorization/Markoff approximation to the field-ensemble tangle; depends
// only on the |d_m|.
double approx_field_ensemble_tangle(const JxCoefficients& d, double nbar,
                                    double t, double g = 1.0);

// Residual tangle of a pure 2 (x) 2 (x) D state. d_eff <= 0 selects the
// number of field dimensions actually populated (rank of the D marginal).
double i_residual_general(const PureStateVector& psi, int d_eff = 0);

// Per-step trace used by the CLI and the figure reproductions.
struct TraceRow {
  double t = 0.0;
  double inversion = 0.0;
  double tau_field_ens = 0.0;
  double tau_atom_rest = 0.0;
  double tau_atom_atom = 0.0;
  double tau_atom_field = 0.0;
  double tau_residual = 0.0;
  double tau_approx = 0.0;  // NaN when the approximation does not apply
};
std::vector<TraceRow> run_trace(const TCMConfig& cfg, double tmax, double dt);

}  // namespace qic::tcm
