#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qic {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// Signed product of single-qubit Pauli operators; leftmost letter is qubit 1.
/// Only Hermitian elements are representable: the sign is +/-1, never +/-i.
struct PauliString {
  int sign = +1;
  std::vector<Pauli> letters;

  PauliString() = default;
  PauliString(int s, std::vector<Pauli> l);

  std::size_t size() const { return letters.size(); }
  std::string str() const;

  // Accepts an optional +/- prefix followed by letters IXYZ, e.g. "-XYY".
  static PauliString parse(std::string_view text);

  bool operator==(const PauliString&) const = default;
};

// Group product; throws if a residual +/-i phase survives (the factors
// anticommute), since such products are not Hermitian.
PauliString pauli_product(const PauliString& a, const PauliString& b);

// True when the unsigned strings anticommute.
bool anticommutes(const PauliString& a, const PauliString& b);

enum class Prediction { Plus, Minus, Random };

char prediction_char(Prediction p);

struct Gate {
  enum class Kind { H, P, X, Y, Z, CNOT };
  Kind kind;
  int a = 0;  // qubit index, 0-based
  int b = 0;  // CNOT target
};

/// Stabilizer tableau: n commuting, independent generators fixing the state.
struct Tableau {
  int n = 0;
  std::vector<PauliString> gens;
};

Tableau new_tableau(int n);

void apply_gate(Tableau& t, const Gate& g);

/// All 2^n signed products of the generators, with constant-time sign lookup
/// by unsigned letter pattern. Guarded at n <= 16.
class FullStabilizer {
 public:
  static FullStabilizer build(const Tableau& t);

  std::optional<int> sign_of(const PauliString& m) const;  // ignores m.sign
  std::size_t size() const { return elements_.size(); }
  const std::vector<PauliString>& elements() const { return elements_; }

 private:
  std::vector<PauliString> elements_;
  std::unordered_map<std::uint64_t, int> signs_;
};

std::uint64_t pack_letters(const PauliString& m);

// Measurement outcome: Random when m anticommutes with some generator,
// otherwise the stored sign (folded with m's own sign).
Prediction predict(const Tableau& t, const FullStabilizer& full, const PauliString& m);
Prediction predict(const Tableau& t, const PauliString& m);

// Sign of an unsigned Pauli pattern within the stabilizer group, found by
// solving for the generating subset over GF(2); nullopt when the pattern is
// not a member. Usable beyond the full-expansion guard (lattice verification
// at 21 qubits); measurement prediction stays on the expansion route.
std::optional<int> stabilizer_sign(const Tableau& t, const PauliString& m);

}  // namespace qic
