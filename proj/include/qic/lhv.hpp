#pragma once

#include "qic/stabilizer.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace qic {

/// One cell of the LHV table: a phase i^phase_exp times a product of shared
/// random variables, stored as a bitmask indexed by qubit of origin so that
/// the self-cancelling product is a bitwise xor.
struct LHVEntry {
  std::uint8_t phase_exp = 0;  // phase = i^phase_exp, exponent mod 4
  std::uint64_t rset = 0;

  bool operator==(const LHVEntry&) const = default;
};

LHVEntry entry_product(const LHVEntry& a, const LHVEntry& b);

/// Per qubit, one LHVEntry for each of I, X, Y, Z. Tables built from H and
/// CNOT keep X and Z real, Y imaginary, and rset(X) xor rset(Y) xor rset(Z)
/// empty on every qubit.
struct LHVTable {
  int n = 0;
  std::vector<std::array<LHVEntry, 4>> rows;

  const LHVEntry& entry(int qubit, Pauli p) const {
    return rows[static_cast<std::size_t>(qubit)][static_cast<int>(p)];
  }
  LHVEntry& entry(int qubit, Pauli p) {
    return rows[static_cast<std::size_t>(qubit)][static_cast<int>(p)];
  }

  bool operator==(const LHVTable&) const = default;
};

/// Initial sign of each qubit's Y phase: +1 for +i, -1 for -i.
using SignPattern = std::vector<int>;

/// Rectangular qubit lattice, row-major, 0-based; a chain is a single row.
struct Lattice {
  int rows = 1;
  int cols = 0;

  static Lattice chain(int n) { return {1, n}; }
  static Lattice grid(int r, int c) { return {r, c}; }

  int size() const { return rows * cols; }
  std::vector<int> neighbors(int site) const;
  bool operator==(const Lattice&) const = default;
};

SignPattern ghz_sign_pattern(int n);               // qubit 1 negative, rest positive
SignPattern checkerboard_sign_pattern(const Lattice& lat);

LHVTable new_table(int n, const SignPattern& pattern);

void apply_h(LHVTable& t, int qubit);

// Fails when the control and target are not identically correlated (their
// XYZ phase products differ).
void apply_cnot(LHVTable& t, int control, int target);

// Experimental: the table invariant is not guaranteed afterwards.
void apply_p(LHVTable& t, int qubit);

// Per-qubit correlation: rset(X)^rset(Y)^rset(Z) empty and XYZ phase
// product +/-i on every qubit.
bool table_invariant_holds(const LHVTable& t);

// Product of the entries selected by the measurement letters.
LHVEntry combine_entries(const LHVTable& t, const PauliString& m);

// Joint read rule: nonempty rset is Random, otherwise the sign of the phase
// with any i discarded.
Prediction predict_joint(const LHVTable& t, const PauliString& m);

/// One +/-1 draw per shared random variable.
struct RAssignment {
  std::uint64_t bits = 0;  // bit j set means R_j = -1

  int value(int j) const { return (bits >> j) & 1u ? -1 : +1; }
  int product(std::uint64_t rset) const;
};

/// Consistency-protocol result for measurements split over disjoint sets of
/// qubits. raw[k] reads set k's combined entry (i discarded, sign kept) under
/// the assignment; corrected applies set 1's sign flip from the truncated
/// q-product over sets 1..l-1.
struct LocalSample {
  std::vector<int> raw;
  std::vector<int> corrected;
  int bits_communicated = 0;
};

LocalSample sample_locals(const LHVTable& t, const std::vector<Pauli>& locals,
                          const RAssignment& r,
                          const std::vector<std::vector<int>>& partition);

// --- cluster-state correlation patterns -------------------------------------

PauliString cluster_generator(const Lattice& lat, int site);

// Signed product of the generators at the given sites.
PauliString stabilizer_element(const Lattice& lat, const std::vector<int>& centers);

/// Correlation-center pattern realizing one logical Clifford gate: the
/// stabilizer element is the product of the generators at `centers`.
struct GatePattern {
  Lattice lattice;
  std::vector<int> centers;  // 0-based sites carrying a correlation center
  int input = 0;
  std::vector<int> outputs;

  PauliString element() const { return stabilizer_element(lattice, centers); }
};

enum class ClusterGate { H, P };
enum class CnotInput { XI, ZI, IX, IZ };

// Five-qubit chain patterns for H and P, by input Pauli.
GatePattern gate_pattern(ClusterGate gate, Pauli input);

// 3x7-grid patterns generating the CNOT Pauli algebra.
GatePattern cnot_pattern(CnotInput input);

GatePattern identity_pattern();

/// Result of reducing a pattern over the non-output positions: the residue
/// equals sign * (output entry of `letter`). The element's overall sign is
/// byproduct bookkeeping and does not enter the reduction.
struct PatternEval {
  int sign = +1;
  Pauli letter = Pauli::I;
};

PatternEval eval_pattern(const LHVTable& cluster, const PauliString& pattern,
                         int output_pos);

// Multi-output form: sign such that the non-output product equals
// sign * product of the element's own output entries.
int eval_pattern_outputs(const LHVTable& cluster, const PauliString& element,
                         const std::vector<int>& outputs);

GatePattern concat_patterns(const GatePattern& first, const GatePattern& second);

}  // namespace qic
