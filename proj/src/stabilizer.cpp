#include "qic/stabilizer.hpp"

#include <array>
#include <stdexcept>

namespace qic {

namespace {

// Single-qubit products a*b -> (letter, phase exponent of i, mod 4).
struct LetterProduct {
  Pauli letter;
  int phase_exp;
};

constexpr std::array<std::array<LetterProduct, 4>, 4> kProducts = {{
    // I            X             Y             Z
    {{{Pauli::I, 0}, {Pauli::X, 0}, {Pauli::Y, 0}, {Pauli::Z, 0}}},  // I*
    {{{Pauli::X, 0}, {Pauli::I, 0}, {Pauli::Z, 1}, {Pauli::Y, 3}}},  // X*
    {{{Pauli::Y, 0}, {Pauli::Z, 3}, {Pauli::I, 0}, {Pauli::X, 1}}},  // Y*
    {{{Pauli::Z, 0}, {Pauli::Y, 1}, {Pauli::X, 3}, {Pauli::I, 0}}},  // Z*
}};

int idx(Pauli p) { return static_cast<int>(p); }

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(int s, std::vector<Pauli> l) : sign(s), letters(std::move(l)) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("PauliString: sign must be +1 or -1");
}

std::string PauliString::str() const {
  std::string out;
  if (sign < 0) out.push_back('-');
  for (Pauli p : letters) out.push_back(pauli_char(p));
  return out;
}

PauliString PauliString::parse(std::string_view text) {
  PauliString out;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    out.sign = text[i] == '-' ? -1 : +1;
    ++i;
  }
  for (; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': out.letters.push_back(Pauli::I); break;
      case 'X': out.letters.push_back(Pauli::X); break;
      case 'Y': out.letters.push_back(Pauli::Y); break;
      case 'Z': out.letters.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument("PauliString: bad letter '" +
                                    std::string(1, text[i]) + "'");
    }
  }
  if (out.letters.empty())
    throw std::invalid_argument("PauliString: empty string");
  return out;
}

PauliString pauli_product(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("pauli_product: length mismatch");
  PauliString out;
  out.letters.resize(a.size());
  int phase = 0;  // exponent of i, mod 4
  for (std::size_t q = 0; q < a.size(); ++q) {
    const LetterProduct& p = kProducts[idx(a.letters[q])][idx(b.letters[q])];
    out.letters[q] = p.letter;
    phase = (phase + p.phase_exp) & 3;
  }
  if (phase & 1)
    throw std::runtime_error("pauli_product: residual imaginary phase");
  out.sign = a.sign * b.sign * (phase == 2 ? -1 : +1);
  return out;
}

bool anticommutes(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("anticommutes: length mismatch");
  int count = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    Pauli x = a.letters[q], y = b.letters[q];
    if (x != Pauli::I && y != Pauli::I && x != y) ++count;
  }
  return count & 1;
}

char prediction_char(Prediction p) {
  switch (p) {
    case Prediction::Plus: return '+';
    case Prediction::Minus: return '-';
    case Prediction::Random: return 'R';
  }
  return '?';
}

Tableau new_tableau(int n) {
  if (n < 1) throw std::invalid_argument("new_tableau: need at least one qubit");
  Tableau t;
  t.n = n;
  for (int i = 0; i < n; ++i) {
    PauliString g;
    g.letters.assign(static_cast<std::size_t>(n), Pauli::I);
    g.letters[static_cast<std::size_t>(i)] = Pauli::Z;
    t.gens.push_back(std::move(g));
  }
  return t;
}

namespace {

void conj_h(PauliString& g, int i) {
  Pauli& p = g.letters[static_cast<std::size_t>(i)];
  if (p == Pauli::X) p = Pauli::Z;
  else if (p == Pauli::Z) p = Pauli::X;
  else if (p == Pauli::Y) g.sign = -g.sign;
}

void conj_p(PauliString& g, int i) {
  Pauli& p = g.letters[static_cast<std::size_t>(i)];
  if (p == Pauli::X) p = Pauli::Y;
  else if (p == Pauli::Y) {
    p = Pauli::X;
    g.sign = -g.sign;
  }
}

void conj_pauli(PauliString& g, int i, Pauli axis) {
  Pauli p = g.letters[static_cast<std::size_t>(i)];
  if (p != Pauli::I && p != axis) g.sign = -g.sign;
}

// (control, target) letter pair update under CNOT conjugation.
constexpr std::array<std::array<std::array<Pauli, 2>, 4>, 4> kCnotUpdate = {{
    {{{Pauli::I, Pauli::I}, {Pauli::I, Pauli::X}, {Pauli::Z, Pauli::Y}, {Pauli::Z, Pauli::Z}}},
    {{{Pauli::X, Pauli::X}, {Pauli::X, Pauli::I}, {Pauli::Y, Pauli::Z}, {Pauli::Y, Pauli::Y}}},
    {{{Pauli::Y, Pauli::X}, {Pauli::Y, Pauli::I}, {Pauli::X, Pauli::Z}, {Pauli::X, Pauli::Y}}},
    {{{Pauli::Z, Pauli::I}, {Pauli::Z, Pauli::X}, {Pauli::I, Pauli::Y}, {Pauli::I, Pauli::Z}}},
}};

void conj_cnot(PauliString& g, int c, int t) {
  Pauli& pc = g.letters[static_cast<std::size_t>(c)];
  Pauli& pt = g.letters[static_cast<std::size_t>(t)];
  const auto& upd = kCnotUpdate[idx(pc)][idx(pt)];
  pc = upd[0];
  pt = upd[1];
  // Sign rule: C(XZ)C~ = -YY and C(YY)C~ = -XZ.
  if ((pc == Pauli::X && pt == Pauli::Z) || (pc == Pauli::Y && pt == Pauli::Y))
    g.sign = -g.sign;
}

}  // namespace

void apply_gate(Tableau& t, const Gate& g) {
  auto check = [&](int q) {
    if (q < 0 || q >= t.n)
      throw std::invalid_argument("apply_gate: qubit index out of range");
  };
  check(g.a);
  if (g.kind == Gate::Kind::CNOT) {
    check(g.b);
    if (g.a == g.b)
      throw std::invalid_argument("apply_gate: CNOT control equals target");
  }
  for (PauliString& gen : t.gens) {
    switch (g.kind) {
      case Gate::Kind::H: conj_h(gen, g.a); break;
      case Gate::Kind::P: conj_p(gen, g.a); break;
      case Gate::Kind::X: conj_pauli(gen, g.a, Pauli::X); break;
      case Gate::Kind::Y: conj_pauli(gen, g.a, Pauli::Y); break;
      case Gate::Kind::Z: conj_pauli(gen, g.a, Pauli::Z); break;
      case Gate::Kind::CNOT: conj_cnot(gen, g.a, g.b); break;
    }
  }
}

std::uint64_t pack_letters(const PauliString& m) {
  std::uint64_t key = 0;
  for (Pauli p : m.letters) key = (key << 2) | static_cast<std::uint64_t>(p);
  return key;
}

FullStabilizer FullStabilizer::build(const Tableau& t) {
  if (t.n > 16)
    throw std::invalid_argument("FullStabilizer: guarded at 16 qubits");
  FullStabilizer full;
  PauliString identity;
  identity.letters.assign(static_cast<std::size_t>(t.n), Pauli::I);
  full.elements_.push_back(identity);
  for (const PauliString& g : t.gens) {
    const std::size_t count = full.elements_.size();
    for (std::size_t i = 0; i < count; ++i)
      full.elements_.push_back(pauli_product(full.elements_[i], g));
  }
  for (const PauliString& e : full.elements_) {
    auto [it, inserted] = full.signs_.emplace(pack_letters(e), e.sign);
    if (!inserted)
      throw std::runtime_error("FullStabilizer: generators are not independent");
  }
  return full;
}

std::optional<int> FullStabilizer::sign_of(const PauliString& m) const {
  auto it = signs_.find(pack_letters(m));
  if (it == signs_.end()) return std::nullopt;
  return it->second;
}

Prediction predict(const Tableau& t, const FullStabilizer& full, const PauliString& m) {
  if (static_cast<int>(m.size()) != t.n)
    throw std::invalid_argument("predict: measurement length mismatch");
  for (const PauliString& g : t.gens)
    if (anticommutes(g, m)) return Prediction::Random;
  auto sign = full.sign_of(m);
  if (!sign)
    throw std::runtime_error("predict: commuting observable missing from stabilizer");
  return *sign * m.sign > 0 ? Prediction::Plus : Prediction::Minus;
}

Prediction predict(const Tableau& t, const PauliString& m) {
  return predict(t, FullStabilizer::build(t), m);
}

std::optional<int> stabilizer_sign(const Tableau& t, const PauliString& m) {
  if (static_cast<int>(m.size()) != t.n)
    throw std::invalid_argument("stabilizer_sign: length mismatch");
  if (t.n > 63)
    throw std::invalid_argument("stabilizer_sign: too many qubits");

  const int n = t.n;
  auto sympl_bit = [](const PauliString& p, int coord) {
    int q = coord % static_cast<int>(p.size());
    Pauli l = p.letters[static_cast<std::size_t>(q)];
    bool xpart = coord < static_cast<int>(p.size());
    if (xpart) return l == Pauli::X || l == Pauli::Y;
    return l == Pauli::Z || l == Pauli::Y;
  };

  // Augmented system over GF(2): unknowns pick generators, coordinates run
  // over the 2n symplectic components.
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(2 * n), 0);
  std::vector<char> rhs(static_cast<std::size_t>(2 * n), 0);
  for (int r = 0; r < 2 * n; ++r) {
    for (int i = 0; i < n; ++i)
      if (sympl_bit(t.gens[static_cast<std::size_t>(i)], r))
        rows[static_cast<std::size_t>(r)] |= 1ull << i;
    rhs[static_cast<std::size_t>(r)] = sympl_bit(m, r);
  }

  std::vector<int> pivot_row(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int col = 0; col < n; ++col) {
    int found = -1;
    for (int r = next; r < 2 * n; ++r)
      if (rows[static_cast<std::size_t>(r)] >> col & 1) {
        found = r;
        break;
      }
    if (found < 0) continue;
    std::swap(rows[static_cast<std::size_t>(found)], rows[static_cast<std::size_t>(next)]);
    std::swap(rhs[static_cast<std::size_t>(found)], rhs[static_cast<std::size_t>(next)]);
    for (int r = 0; r < 2 * n; ++r)
      if (r != next && (rows[static_cast<std::size_t>(r)] >> col & 1)) {
        rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(next)];
        rhs[static_cast<std::size_t>(r)] ^= rhs[static_cast<std::size_t>(next)];
      }
    pivot_row[static_cast<std::size_t>(col)] = next;
    ++next;
  }
  for (int r = next; r < 2 * n; ++r)
    if (rhs[static_cast<std::size_t>(r)]) return std::nullopt;

  PauliString prod;
  prod.letters.assign(static_cast<std::size_t>(n), Pauli::I);
  for (int col = 0; col < n; ++col)
    if (pivot_row[static_cast<std::size_t>(col)] >= 0 &&
        rhs[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(col)])])
      prod = pauli_product(prod, t.gens[static_cast<std::size_t>(col)]);
  if (prod.letters != m.letters) return std::nullopt;
  return prod.sign;
}

}  // namespace qic
