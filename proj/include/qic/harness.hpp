#pragma once

#include "qic/lhv.hpp"
#include "qic/stabilizer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qic {

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;
};

// Line-oriented DSL: a `qubits N` header, then one gate per line with
// 1-based indices; `#` starts a comment.
Circuit parse_circuit(const std::string& text);

// H on qubit 1 followed by CNOT(1, j) for j = 2..n.
Circuit build_ghz_circuit(int n);

// For each site in index order: H, then CNOT to every higher-indexed
// neighbor. The resulting tableau is checked to stabilize every correlation
// operator K^(a) with sign +1.
Circuit build_cluster_circuit(const Lattice& lat);

struct Mismatch {
  PauliString measurement;
  Prediction stabilizer;
  Prediction lhv;
};

struct DiffReport {
  std::size_t total = 0;
  std::size_t matches = 0;
  std::vector<Mismatch> mismatches;
};

struct Scope {
  enum class Kind { All, Sample } kind = Kind::All;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static Scope all() { return {}; }
  static Scope sample(std::size_t k, std::uint64_t seed);
};

/// Runs both simulators gate by gate and compares predictions over the
/// selected measurement set. Gates are restricted to H and CNOT for the LHV
/// side unless experimental P is allowed.
DiffReport dual_run(const Circuit& c, const SignPattern& pattern,
                    const Scope& scope = Scope::all(),
                    bool allow_experimental_p = false);

// Measurement with index k of the base-4 enumeration (qubit 1 is the most
// significant digit; digits are I,X,Y,Z).
PauliString measurement_at(int n, std::uint64_t k);

struct ConsistencyReport {
  std::size_t elements = 0;     // deterministic measurements exercised
  std::size_t assignments = 0;  // RAssignments per element
  std::size_t checked = 0;
  std::size_t failures = 0;
  int bits_communicated = 0;    // N - 2 for singleton sets
};

// For every stabilizer element and every assignment of the referenced random
// variables, corrected single-qubit outcomes must multiply to the joint
// prediction.
ConsistencyReport consistency_run(const Circuit& c, const SignPattern& pattern);

struct MerminReport {
  int survivors = 0;            // assignments meeting the three constraints
  bool unanimous_minus = true;  // all survivors give m_x^1 m_x^2 m_x^3 = -1
  Prediction stabilizer_xxx = Prediction::Random;
  int control_survivors = 0;    // with one constraint dropped
  bool control_both_signs = false;
};

MerminReport mermin_demo();

std::string diff_report_csv(const DiffReport& r);

}  // namespace qic
