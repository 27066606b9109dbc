#include "qic/lhv.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qic {

LHVEntry entry_product(const LHVEntry& a, const LHVEntry& b) {
  return {static_cast<std::uint8_t>((a.phase_exp + b.phase_exp) & 3),
          a.rset ^ b.rset};
}

std::vector<int> Lattice::neighbors(int site) const {
  const int r = site / cols, c = site % cols;
  std::vector<int> out;
  if (r > 0) out.push_back(site - cols);
  if (c > 0) out.push_back(site - 1);
  if (c + 1 < cols) out.push_back(site + 1);
  if (r + 1 < rows) out.push_back(site + cols);
  std::sort(out.begin(), out.end());
  return out;
}

SignPattern ghz_sign_pattern(int n) {
  SignPattern p(static_cast<std::size_t>(n), +1);
  p[0] = -1;
  return p;
}

SignPattern checkerboard_sign_pattern(const Lattice& lat) {
  SignPattern p(static_cast<std::size_t>(lat.size()));
  for (int s = 0; s < lat.size(); ++s) {
    int parity = (s / lat.cols + s % lat.cols) & 1;
    p[static_cast<std::size_t>(s)] = parity ? +1 : -1;
  }
  return p;
}

LHVTable new_table(int n, const SignPattern& pattern) {
  if (n < 1) throw std::invalid_argument("new_table: need at least one qubit");
  if (static_cast<int>(pattern.size()) != n)
    throw std::invalid_argument("new_table: sign pattern length mismatch");
  LHVTable t;
  t.n = n;
  t.rows.resize(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    const std::uint64_t rq = 1ull << q;
    t.entry(q, Pauli::I) = {0, 0};
    t.entry(q, Pauli::X) = {0, rq};
    t.entry(q, Pauli::Y) = {
        static_cast<std::uint8_t>(pattern[static_cast<std::size_t>(q)] > 0 ? 1 : 3), rq};
    t.entry(q, Pauli::Z) = {0, 0};
  }
  return t;
}

void apply_h(LHVTable& t, int qubit) {
  if (qubit < 0 || qubit >= t.n)
    throw std::invalid_argument("apply_h: qubit index out of range");
  std::swap(t.entry(qubit, Pauli::X), t.entry(qubit, Pauli::Z));
  LHVEntry& y = t.entry(qubit, Pauli::Y);
  y.phase_exp = static_cast<std::uint8_t>((y.phase_exp + 2) & 3);
}

namespace {

int phase_branch(const LHVTable& t, int q) {
  return (t.entry(q, Pauli::X).phase_exp + t.entry(q, Pauli::Y).phase_exp +
          t.entry(q, Pauli::Z).phase_exp) & 3;
}

}  // namespace

void apply_cnot(LHVTable& t, int control, int target) {
  if (control < 0 || control >= t.n || target < 0 || target >= t.n)
    throw std::invalid_argument("apply_cnot: qubit index out of range");
  if (control == target)
    throw std::invalid_argument("apply_cnot: control equals target");
  if (phase_branch(t, control) != phase_branch(t, target))
    throw std::invalid_argument(
        "apply_cnot: control and target are not identically correlated "
        "(XYZ phase products differ)");

  const LHVEntry xc = t.entry(control, Pauli::X);
  const LHVEntry yc = t.entry(control, Pauli::Y);
  const LHVEntry zc = t.entry(control, Pauli::Z);
  const LHVEntry xt = t.entry(target, Pauli::X);
  const LHVEntry yt = t.entry(target, Pauli::Y);
  const LHVEntry zt = t.entry(target, Pauli::Z);

  t.entry(control, Pauli::X) = entry_product(xc, xt);
  t.entry(control, Pauli::Y) = entry_product(yc, xt);
  t.entry(target, Pauli::Z) = entry_product(zc, zt);
  t.entry(target, Pauli::Y) = entry_product(zc, yt);
}

void apply_p(LHVTable& t, int qubit) {
  if (qubit < 0 || qubit >= t.n)
    throw std::invalid_argument("apply_p: qubit index out of range");
  const LHVEntry x = t.entry(qubit, Pauli::X);
  const LHVEntry y = t.entry(qubit, Pauli::Y);
  // X := -Y, Y := X.
  t.entry(qubit, Pauli::X) = {static_cast<std::uint8_t>((y.phase_exp + 2) & 3), y.rset};
  t.entry(qubit, Pauli::Y) = x;
}

bool table_invariant_holds(const LHVTable& t) {
  for (int q = 0; q < t.n; ++q) {
    std::uint64_t x = t.entry(q, Pauli::X).rset ^ t.entry(q, Pauli::Y).rset ^
                      t.entry(q, Pauli::Z).rset;
    if (x != 0) return false;
    if ((phase_branch(t, q) & 1) == 0) return false;  // product must be +/-i
    if (t.entry(q, Pauli::X).phase_exp & 1) return false;
    if (t.entry(q, Pauli::Z).phase_exp & 1) return false;
    if (!(t.entry(q, Pauli::Y).phase_exp & 1)) return false;
  }
  return true;
}

LHVEntry combine_entries(const LHVTable& t, const PauliString& m) {
  if (static_cast<int>(m.size()) != t.n)
    throw std::invalid_argument("combine_entries: measurement length mismatch");
  LHVEntry acc{0, 0};
  for (int q = 0; q < t.n; ++q)
    acc = entry_product(acc, t.entry(q, m.letters[static_cast<std::size_t>(q)]));
  return acc;
}

Prediction predict_joint(const LHVTable& t, const PauliString& m) {
  LHVEntry e = combine_entries(t, m);
  if (e.rset != 0) return Prediction::Random;
  bool minus = e.phase_exp == 2 || e.phase_exp == 3;  // -1 or -i
  if (m.sign < 0) minus = !minus;
  return minus ? Prediction::Minus : Prediction::Plus;
}

int RAssignment::product(std::uint64_t rset) const {
  return std::popcount(rset & bits) & 1 ? -1 : +1;
}

LocalSample sample_locals(const LHVTable& t, const std::vector<Pauli>& locals,
                          const RAssignment& r,
                          const std::vector<std::vector<int>>& partition) {
  if (static_cast<int>(locals.size()) != t.n)
    throw std::invalid_argument("sample_locals: locals length mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(t.n), false);
  for (const auto& set : partition)
    for (int q : set) {
      if (q < 0 || q >= t.n)
        throw std::invalid_argument("sample_locals: qubit index out of range");
      if (seen[static_cast<std::size_t>(q)])
        throw std::invalid_argument("sample_locals: partition sets overlap");
      seen[static_cast<std::size_t>(q)] = true;
    }
  for (int q = 0; q < t.n; ++q)
    if (locals[static_cast<std::size_t>(q)] != Pauli::I &&
        !seen[static_cast<std::size_t>(q)])
      throw std::invalid_argument("sample_locals: measured qubit not covered");

  const std::size_t l = partition.size();
  LocalSample out;
  out.raw.reserve(l);
  std::vector<int> parity(l, 0);  // q_k = i when the set's phase is imaginary
  for (std::size_t k = 0; k < l; ++k) {
    LHVEntry acc{0, 0};
    for (int q : partition[k])
      acc = entry_product(acc, t.entry(q, locals[static_cast<std::size_t>(q)]));
    int sign = (acc.phase_exp == 2 || acc.phase_exp == 3) ? -1 : +1;
    out.raw.push_back(sign * r.product(acc.rset));
    parity[k] = acc.phase_exp & 1;
  }

  // Truncated product p_{l-1} = q_1 ... q_{l-1}; flip set 1 when it is i or -1.
  int q_exp = 0;
  for (std::size_t k = 0; k + 1 < l; ++k) q_exp = (q_exp + parity[k]) & 3;
  out.corrected = out.raw;
  if (!out.corrected.empty() && (q_exp == 1 || q_exp == 2)) out.corrected[0] = -out.corrected[0];
  out.bits_communicated = l >= 2 ? static_cast<int>(l) - 2 : 0;
  return out;
}

// --- cluster-state correlation patterns -------------------------------------

PauliString cluster_generator(const Lattice& lat, int site) {
  if (site < 0 || site >= lat.size())
    throw std::invalid_argument("cluster_generator: site out of range");
  PauliString g;
  g.letters.assign(static_cast<std::size_t>(lat.size()), Pauli::I);
  g.letters[static_cast<std::size_t>(site)] = Pauli::X;
  for (int b : lat.neighbors(site))
    g.letters[static_cast<std::size_t>(b)] = Pauli::Z;
  return g;
}

PauliString stabilizer_element(const Lattice& lat, const std::vector<int>& centers) {
  PauliString acc;
  acc.letters.assign(static_cast<std::size_t>(lat.size()), Pauli::I);
  for (int c : centers) acc = pauli_product(acc, cluster_generator(lat, c));
  return acc;
}

namespace {

GatePattern chain5(std::vector<int> centers_1based) {
  GatePattern p;
  p.lattice = Lattice::chain(5);
  for (int c : centers_1based) p.centers.push_back(c - 1);
  p.input = 0;
  p.outputs = {4};
  return p;
}

}  // namespace

GatePattern gate_pattern(ClusterGate gate, Pauli input) {
  if (gate == ClusterGate::H) {
    switch (input) {
      case Pauli::X: return chain5({1, 3, 4});
      case Pauli::Z: return chain5({2, 3, 5});
      case Pauli::Y: return chain5({1, 2, 4, 5});
      default: break;
    }
  } else {
    switch (input) {
      case Pauli::X: return chain5({1, 3, 4, 5});
      case Pauli::Z: return chain5({2, 4});
      case Pauli::Y: return chain5({1, 2, 3, 5});
      default: break;
    }
  }
  throw std::invalid_argument("gate_pattern: input must be X, Y or Z");
}

GatePattern cnot_pattern(CnotInput input) {
  GatePattern p;
  p.lattice = Lattice::grid(3, 7);
  p.input = input == CnotInput::IX || input == CnotInput::IZ ? 14 : 0;
  p.outputs = {6, 20};
  std::vector<int> centers_1based;
  switch (input) {
    case CnotInput::XI: centers_1based = {1, 3, 4, 5, 7, 11, 19, 21}; break;
    case CnotInput::ZI: centers_1based = {2, 3, 5, 6}; break;
    case CnotInput::IX: centers_1based = {15, 17, 19, 21}; break;
    case CnotInput::IZ: centers_1based = {5, 6, 11, 16, 18, 20}; break;
  }
  for (int c : centers_1based) p.centers.push_back(c - 1);
  return p;
}

GatePattern identity_pattern() {
  GatePattern p;
  p.lattice = Lattice::chain(1);
  p.input = 0;
  p.outputs = {0};
  return p;
}

PatternEval eval_pattern(const LHVTable& cluster, const PauliString& pattern,
                         int output_pos) {
  if (static_cast<int>(pattern.size()) != cluster.n)
    throw std::invalid_argument("eval_pattern: pattern length mismatch");
  if (output_pos < 0 || output_pos >= cluster.n)
    throw std::invalid_argument("eval_pattern: output position out of range");

  LHVEntry residue{0, 0};
  for (int q = 0; q < cluster.n; ++q) {
    if (q == output_pos) continue;
    residue = entry_product(residue, cluster.entry(q, pattern.letters[static_cast<std::size_t>(q)]));
  }
  for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const LHVEntry& e = cluster.entry(output_pos, p);
    if (e.rset != residue.rset) continue;
    int diff = (residue.phase_exp - e.phase_exp) & 3;
    if (diff == 0) return {+1, p};
    if (diff == 2) return {-1, p};
  }
  throw std::runtime_error("eval_pattern: residue matches no output entry");
}

int eval_pattern_outputs(const LHVTable& cluster, const PauliString& element,
                         const std::vector<int>& outputs) {
  if (static_cast<int>(element.size()) != cluster.n)
    throw std::invalid_argument("eval_pattern_outputs: length mismatch");
  LHVEntry residue{0, 0};
  for (int q = 0; q < cluster.n; ++q) {
    if (std::find(outputs.begin(), outputs.end(), q) != outputs.end()) continue;
    residue = entry_product(residue, cluster.entry(q, element.letters[static_cast<std::size_t>(q)]));
  }
  LHVEntry target{0, 0};
  for (int q : outputs)
    target = entry_product(target, cluster.entry(q, element.letters[static_cast<std::size_t>(q)]));
  if (residue.rset != target.rset)
    throw std::runtime_error("eval_pattern_outputs: residue does not reduce to the outputs");
  int diff = (residue.phase_exp - target.phase_exp) & 3;
  if (diff == 0) return +1;
  if (diff == 2) return -1;
  throw std::runtime_error("eval_pattern_outputs: imaginary residue");
}

GatePattern concat_patterns(const GatePattern& first, const GatePattern& second) {
  if (second.centers.empty() && second.lattice.size() <= 1) return first;
  if (first.centers.empty() && first.lattice.size() <= 1) return second;
  if (first.lattice.rows != 1 || second.lattice.rows != 1)
    throw std::invalid_argument("concat_patterns: only chain patterns compose");
  if (first.outputs.size() != 1 || second.input != 0)
    throw std::invalid_argument("concat_patterns: misaligned lattices");

  const int shift = first.outputs[0];
  GatePattern out;
  out.lattice = Lattice::chain(shift + second.lattice.cols);
  out.input = first.input;
  for (int o : second.outputs) out.outputs.push_back(o + shift);

  const bool in_first =
      std::find(first.centers.begin(), first.centers.end(), shift) != first.centers.end();
  const bool in_second =
      std::find(second.centers.begin(), second.centers.end(), 0) != second.centers.end();
  if (in_first != in_second)
    throw std::invalid_argument("concat_patterns: correlation centers disagree at the seam");

  for (int c : first.centers)
    if (c != shift) out.centers.push_back(c);
  for (int c : second.centers)
    if (c != 0) out.centers.push_back(c + shift);
  if (in_first) out.centers.push_back(shift);
  std::sort(out.centers.begin(), out.centers.end());
  return out;
}

}  // namespace qic
