#include "qic/harness.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qic {

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;

  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("circuit line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;

    if (!have_header) {
      if (word != "qubits") fail("expected 'qubits N' header");
      if (!(ls >> c.n) || c.n < 1) fail("bad qubit count");
      have_header = true;
      continue;
    }

    Gate g{};
    if (word == "H") g.kind = Gate::Kind::H;
    else if (word == "P") g.kind = Gate::Kind::P;
    else if (word == "X") g.kind = Gate::Kind::X;
    else if (word == "Y") g.kind = Gate::Kind::Y;
    else if (word == "Z") g.kind = Gate::Kind::Z;
    else if (word == "CNOT") g.kind = Gate::Kind::CNOT;
    else fail("unknown gate '" + word + "'");

    int a = 0;
    if (!(ls >> a)) fail("missing qubit index");
    if (a < 1 || a > c.n) fail("qubit index out of range");
    g.a = a - 1;
    if (g.kind == Gate::Kind::CNOT) {
      int b = 0;
      if (!(ls >> b)) fail("missing CNOT target");
      if (b < 1 || b > c.n) fail("target index out of range");
      if (b == a) fail("control equals target");
      g.b = b - 1;
    }
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
    c.gates.push_back(g);
  }
  if (!have_header) throw std::invalid_argument("circuit: missing 'qubits N' header");
  return c;
}

Circuit build_ghz_circuit(int n) {
  if (n < 2) throw std::invalid_argument("build_ghz_circuit: need n >= 2");
  Circuit c;
  c.n = n;
  c.gates.push_back({Gate::Kind::H, 0, 0});
  for (int j = 1; j < n; ++j) c.gates.push_back({Gate::Kind::CNOT, 0, j});
  return c;
}

Circuit build_cluster_circuit(const Lattice& lat) {
  if (lat.size() < 2)
    throw std::invalid_argument("build_cluster_circuit: need at least two sites");
  Circuit c;
  c.n = lat.size();
  for (int a = 0; a < lat.size(); ++a) {
    c.gates.push_back({Gate::Kind::H, a, 0});
    for (int b : lat.neighbors(a))
      if (b > a) c.gates.push_back({Gate::Kind::CNOT, a, b});
  }

  // The construction recipe leaves the CNOT ordering implicit; verify every
  // correlation operator before handing the circuit out.
  Tableau t = new_tableau(c.n);
  for (const Gate& g : c.gates) apply_gate(t, g);
  for (int a = 0; a < lat.size(); ++a) {
    auto sign = stabilizer_sign(t, cluster_generator(lat, a));
    if (!sign || *sign != +1)
      throw std::runtime_error("build_cluster_circuit: K^(a) not stabilized at site " +
                               std::to_string(a + 1));
  }
  return c;
}

Scope Scope::sample(std::size_t k, std::uint64_t seed) {
  Scope s;
  s.kind = Kind::Sample;
  s.count = k;
  s.seed = seed;
  return s;
}

PauliString measurement_at(int n, std::uint64_t k) {
  PauliString m;
  m.letters.assign(static_cast<std::size_t>(n), Pauli::I);
  for (int q = n - 1; q >= 0; --q) {
    m.letters[static_cast<std::size_t>(q)] = static_cast<Pauli>(k & 3);
    k >>= 2;
  }
  return m;
}

namespace {

void run_both(const Circuit& c, const SignPattern& pattern, bool allow_p,
              Tableau& t, LHVTable& lhv) {
  if (static_cast<int>(pattern.size()) != c.n)
    throw std::invalid_argument("dual_run: sign pattern length mismatch");
  t = new_tableau(c.n);
  lhv = new_table(c.n, pattern);
  for (const Gate& g : c.gates) {
    apply_gate(t, g);
    switch (g.kind) {
      case Gate::Kind::H: apply_h(lhv, g.a); break;
      case Gate::Kind::CNOT: apply_cnot(lhv, g.a, g.b); break;
      case Gate::Kind::P:
        if (!allow_p)
          throw std::invalid_argument("dual_run: P gate requires allow_experimental_p");
        apply_p(lhv, g.a);
        break;
      default:
        throw std::invalid_argument("dual_run: LHV execution is restricted to H and CNOT");
    }
  }
}

}  // namespace

DiffReport dual_run(const Circuit& c, const SignPattern& pattern,
                    const Scope& scope, bool allow_experimental_p) {
  Tableau t;
  LHVTable lhv;
  run_both(c, pattern, allow_experimental_p, t, lhv);
  FullStabilizer full = FullStabilizer::build(t);

  const std::uint64_t all = 1ull << (2 * c.n);
  std::vector<std::uint64_t> picks;
  if (scope.kind == Scope::Kind::Sample) {
    std::mt19937_64 rng(scope.seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, all - 1);
    picks.reserve(scope.count);
    for (std::size_t i = 0; i < scope.count; ++i) picks.push_back(dist(rng));
    std::sort(picks.begin(), picks.end());
  }

  DiffReport report;
  auto compare = [&](std::uint64_t k) {
    PauliString m = measurement_at(c.n, k);
    Prediction q = predict(t, full, m);
    Prediction l = predict_joint(lhv, m);
    ++report.total;
    if (q == l) ++report.matches;
    else report.mismatches.push_back({m, q, l});
  };
  if (scope.kind == Scope::Kind::All)
    for (std::uint64_t k = 0; k < all; ++k) compare(k);
  else
    for (std::uint64_t k : picks) compare(k);
  return report;
}

ConsistencyReport consistency_run(const Circuit& c, const SignPattern& pattern) {
  Tableau t;
  LHVTable lhv;
  run_both(c, pattern, false, t, lhv);
  FullStabilizer full = FullStabilizer::build(t);

  // Random variables actually referenced by the table.
  std::uint64_t referenced = 0;
  for (int q = 0; q < lhv.n; ++q)
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) referenced |= lhv.entry(q, p).rset;
  std::vector<int> rbits;
  for (int j = 0; j < 64; ++j)
    if (referenced & (1ull << j)) rbits.push_back(j);

  std::vector<std::vector<int>> singletons;
  for (int q = 0; q < c.n; ++q) singletons.push_back({q});

  ConsistencyReport rep;
  rep.assignments = 1ull << rbits.size();
  rep.bits_communicated = c.n - 2 >= 0 ? c.n - 2 : 0;

  for (const PauliString& element : full.elements()) {
    ++rep.elements;
    PauliString unsigned_m{+1, element.letters};
    Prediction joint = predict(t, full, unsigned_m);
    int joint_sign = joint == Prediction::Minus ? -1 : +1;
    // Stabilizer elements are deterministic under the LHV table too.
    if (predict_joint(lhv, unsigned_m) != joint) {
      ++rep.failures;
      continue;
    }
    for (std::uint64_t a = 0; a < rep.assignments; ++a) {
      RAssignment r;
      for (std::size_t i = 0; i < rbits.size(); ++i)
        if (a & (1ull << i)) r.bits |= 1ull << rbits[i];
      LocalSample s = sample_locals(lhv, element.letters, r, singletons);
      int prod = 1;
      for (int o : s.corrected) prod *= o;
      ++rep.checked;
      if (prod != joint_sign) ++rep.failures;
      if (s.bits_communicated != rep.bits_communicated) ++rep.failures;
    }
  }
  return rep;
}

MerminReport mermin_demo() {
  MerminReport rep;

  // Elements of reality m_x^j, m_y^j for three qubits; bit i of the counter
  // fixes one of the six values.
  for (int a = 0; a < 64; ++a) {
    auto val = [&](int bit) { return (a >> bit) & 1 ? -1 : +1; };
    int mx[3] = {val(0), val(1), val(2)};
    int my[3] = {val(3), val(4), val(5)};
    bool c1 = mx[0] * my[1] * my[2] == -1;
    bool c2 = my[0] * mx[1] * my[2] == -1;
    bool c3 = my[0] * my[1] * mx[2] == -1;
    int xxx = mx[0] * mx[1] * mx[2];
    if (c1 && c2 && c3) {
      ++rep.survivors;
      if (xxx != -1) rep.unanimous_minus = false;
    }
    if (c1 && c2) {  // control: drop the third constraint
      ++rep.control_survivors;
      if (xxx == 1) rep.control_both_signs = true;
    }
  }

  Circuit ghz = build_ghz_circuit(3);
  Tableau t = new_tableau(3);
  for (const Gate& g : ghz.gates) apply_gate(t, g);
  rep.stabilizer_xxx = predict(t, PauliString::parse("XXX"));
  return rep;
}

std::string diff_report_csv(const DiffReport& r) {
  std::ostringstream out;
  out << "total,matches,mismatches\n";
  out << r.total << "," << r.matches << "," << r.mismatches.size() << "\n";
  if (!r.mismatches.empty()) {
    out << "measurement,stabilizer,lhv\n";
    for (const auto& m : r.mismatches)
      out << m.measurement.str() << "," << prediction_char(m.stabilizer) << ","
          << prediction_char(m.lhv) << "\n";
  }
  return out.str();
}

}  // namespace qic
