#include "qic/stabilizer.hpp"

#include "qic/harness.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qic;
using namespace qic::test;

namespace {

// Independent oracle: simulate the circuit on a dense statevector and read
// <psi|P|psi>; stabilizer circuits give exactly +1, -1 or 0.
Matrix gate_matrix(const Gate& g, int n) {
  Matrix h(2, 2), p(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  p << 1, 0, 0, Complex(0, 1);

  auto embed1 = [&](const Matrix& u, int q) {
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) {
      const Matrix& f = (i == q) ? u : Matrix::Identity(2, 2).eval();
      Matrix next(out.rows() * 2, out.cols() * 2);
      for (Index r = 0; r < out.rows(); ++r)
        for (Index c = 0; c < out.cols(); ++c)
          next.block(r * 2, c * 2, 2, 2) = out(r, c) * f;
      out = next;
    }
    return out;
  };

  switch (g.kind) {
    case Gate::Kind::H: return embed1(h, g.a);
    case Gate::Kind::P: return embed1(p, g.a);
    case Gate::Kind::X: return embed1(pauli_x(), g.a);
    case Gate::Kind::Y: return embed1(pauli_y(), g.a);
    case Gate::Kind::Z: return embed1(pauli_z(), g.a);
    case Gate::Kind::CNOT: {
      const Index dim = Index(1) << n;
      Matrix cx = Matrix::Zero(dim, dim);
      for (Index b = 0; b < dim; ++b) {
        bool control = (b >> (n - 1 - g.a)) & 1;
        Index target_bit = Index(1) << (n - 1 - g.b);
        cx(control ? (b ^ target_bit) : b, b) = 1.0;
      }
      return cx;
    }
  }
  return Matrix::Identity(Index(1) << n, Index(1) << n);
}

Vector run_statevector(const Circuit& c) {
  Vector psi = Vector::Zero(Index(1) << c.n);
  psi(0) = 1.0;
  for (const Gate& g : c.gates) psi = gate_matrix(g, c.n) * psi;
  return psi;
}

Matrix pauli_matrix(const PauliString& m) {
  Matrix out = Matrix::Identity(1, 1);
  for (Pauli p : m.letters) {
    const Matrix f = p == Pauli::I   ? pauli_i()
                     : p == Pauli::X ? pauli_x()
                     : p == Pauli::Y ? pauli_y()
                                     : pauli_z();
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Index r = 0; r < out.rows(); ++r)
      for (Index c = 0; c < out.cols(); ++c) next.block(r * 2, c * 2, 2, 2) = out(r, c) * f;
    out = next;
  }
  return double(m.sign) * out;
}

Prediction oracle_predict(const Vector& psi, const PauliString& m) {
  Complex ev = (psi.adjoint() * pauli_matrix(m) * psi)(0);
  if (std::abs(ev - Complex(1, 0)) < 1e-9) return Prediction::Plus;
  if (std::abs(ev + Complex(1, 0)) < 1e-9) return Prediction::Minus;
  REQUIRE(std::abs(ev) < 1e-9);
  return Prediction::Random;
}

Tableau run_tableau(const Circuit& c) {
  Tableau t = new_tableau(c.n);
  for (const Gate& g : c.gates) apply_gate(t, g);
  return t;
}

}  // namespace

TEST_CASE("pauli strings") {
  PauliString s = PauliString::parse("-XYY");
  CHECK(s.sign == -1);
  CHECK(s.str() == "-XYY");
  CHECK(PauliString::parse("XIZZY").str() == "XIZZY");
  CHECK_THROWS_AS(PauliString::parse("XQ"), std::invalid_argument);

  SUBCASE("products reduce with the right phases") {
    auto x = PauliString::parse("X");
    CHECK_THROWS_AS(pauli_product(x, PauliString::parse("Y")), std::runtime_error);
    CHECK(pauli_product(PauliString::parse("XX"), PauliString::parse("YY")).str() == "-ZZ");
    CHECK(pauli_product(PauliString::parse("XZ"), PauliString::parse("YY")).str() == "ZX");
    CHECK(pauli_product(x, x).str() == "I");
  }

  SUBCASE("anticommutation") {
    CHECK(anticommutes(PauliString::parse("X"), PauliString::parse("Z")));
    CHECK_FALSE(anticommutes(PauliString::parse("XX"), PauliString::parse("ZZ")));
    CHECK_FALSE(anticommutes(PauliString::parse("XI"), PauliString::parse("IZ")));
  }
}

TEST_CASE("initial tableaux") {
  Tableau t = new_tableau(3);
  CHECK(t.gens[0].str() == "ZII");
  CHECK(t.gens[1].str() == "IZI");
  CHECK(t.gens[2].str() == "IIZ");
  CHECK(new_tableau(1).gens[0].str() == "Z");
  CHECK(new_tableau(5).gens[4].str() == "IIIIZ");
  CHECK_THROWS_AS(new_tableau(0), std::invalid_argument);
}

TEST_CASE("gate conjugation") {
  SUBCASE("GHZ circuit generators") {
    Tableau t = run_tableau(build_ghz_circuit(3));
    CHECK(t.gens[0].str() == "XXX");
    CHECK(t.gens[1].str() == "ZZI");
    CHECK(t.gens[2].str() == "ZIZ");
  }

  SUBCASE("five-qubit chain cluster generators") {
    Tableau t = run_tableau(build_cluster_circuit(Lattice::chain(5)));
    FullStabilizer full = FullStabilizer::build(t);
    const char* want[] = {"XZIII", "ZXZII", "IZXZI", "IIZXZ", "IIIZX"};
    for (const char* w : want)
      CHECK(predict(t, full, PauliString::parse(w)) == Prediction::Plus);
  }

  SUBCASE("gate involutions") {
    std::mt19937_64 rng(5);
    Circuit prep = build_ghz_circuit(4);
    Tableau base = run_tableau(prep);
    for (Gate g : {Gate{Gate::Kind::H, 2, 0}, Gate{Gate::Kind::X, 1, 0},
                   Gate{Gate::Kind::Y, 3, 0}, Gate{Gate::Kind::Z, 0, 0},
                   Gate{Gate::Kind::CNOT, 1, 3}}) {
      Tableau t = base;
      apply_gate(t, g);
      apply_gate(t, g);
      for (int i = 0; i < t.n; ++i) CHECK(t.gens[i] == base.gens[i]);
    }
    // P has order four
    Tableau t = base;
    for (int i = 0; i < 4; ++i) apply_gate(t, {Gate::Kind::P, 2, 0});
    for (int i = 0; i < t.n; ++i) CHECK(t.gens[i] == base.gens[i]);
  }

  SUBCASE("index range") {
    Tableau t = new_tableau(2);
    CHECK_THROWS_AS(apply_gate(t, Gate{Gate::Kind::H, 5, 0}), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(t, Gate{Gate::Kind::CNOT, 1, 1}), std::invalid_argument);
  }
}

TEST_CASE("full stabilizer expansion") {
  SUBCASE("single qubit") {
    FullStabilizer s = FullStabilizer::build(new_tableau(1));
    CHECK(s.size() == 2);
    CHECK(*s.sign_of(PauliString::parse("I")) == 1);
    CHECK(*s.sign_of(PauliString::parse("Z")) == 1);
    CHECK_FALSE(s.sign_of(PauliString::parse("X")).has_value());
  }

  SUBCASE("GHZ3 contents") {
    Tableau t = run_tableau(build_ghz_circuit(3));
    FullStabilizer s = FullStabilizer::build(t);
    CHECK(s.size() == 8);
    CHECK(*s.sign_of(PauliString::parse("XXX")) == 1);
    CHECK(*s.sign_of(PauliString::parse("XYY")) == -1);
    CHECK(*s.sign_of(PauliString::parse("YXY")) == -1);
    CHECK(*s.sign_of(PauliString::parse("YYX")) == -1);
    CHECK(*s.sign_of(PauliString::parse("ZZI")) == 1);
    CHECK(*s.sign_of(PauliString::parse("ZIZ")) == 1);
    CHECK(*s.sign_of(PauliString::parse("IZZ")) == 1);
  }

  SUBCASE("GHZ_N sign law: minus unless the Y count is a multiple of 4") {
    for (int n : {4, 6}) {
      Tableau t = run_tableau(build_ghz_circuit(n));
      FullStabilizer s = FullStabilizer::build(t);
      for (const PauliString& e : s.elements()) {
        int ys = 0, zs = 0, xs = 0;
        for (Pauli p : e.letters) {
          ys += p == Pauli::Y;
          zs += p == Pauli::Z;
          xs += p == Pauli::X;
        }
        if (xs + ys == 0) {
          CHECK(zs % 2 == 0);
          CHECK(e.sign == 1);
        } else {
          CHECK(xs + ys == n);
          CHECK(ys % 2 == 0);
          CHECK(e.sign == (ys % 4 == 0 ? 1 : -1));
        }
      }
    }
  }

  SUBCASE("guard") {
    CHECK_THROWS_AS(FullStabilizer::build(new_tableau(17)), std::invalid_argument);
  }
}

TEST_CASE("predictions") {
  SUBCASE("named cases") {
    Tableau ghz = run_tableau(build_ghz_circuit(3));
    FullStabilizer s = FullStabilizer::build(ghz);
    CHECK(predict(ghz, s, PauliString::parse("XXX")) == Prediction::Plus);
    CHECK(predict(ghz, s, PauliString::parse("XYY")) == Prediction::Minus);
    CHECK(predict(ghz, s, PauliString::parse("III")) == Prediction::Plus);

    Tableau zero = new_tableau(3);
    CHECK(predict(zero, PauliString::parse("ZZX")) == Prediction::Random);
  }

  SUBCASE("deterministic count is exactly 2^N") {
    for (int n : {2, 3, 4}) {
      Tableau t = run_tableau(build_ghz_circuit(n));
      FullStabilizer s = FullStabilizer::build(t);
      std::size_t deterministic = 0;
      for (std::uint64_t k = 0; k < (1ull << (2 * n)); ++k)
        if (predict(t, s, measurement_at(n, k)) != Prediction::Random) ++deterministic;
      CHECK(deterministic == (1ull << n));
    }
  }

  SUBCASE("deterministic predictions multiply") {
    Tableau t = run_tableau(build_cluster_circuit(Lattice::chain(4)));
    FullStabilizer s = FullStabilizer::build(t);
    auto sign_of = [](Prediction p) { return p == Prediction::Plus ? 1 : -1; };
    for (const PauliString& a : s.elements())
      for (const PauliString& b : s.elements()) {
        PauliString ua{+1, a.letters}, ub{+1, b.letters};
        PauliString prod = pauli_product(ua, ub);
        Prediction pa = predict(t, s, ua), pb = predict(t, s, ub);
        PauliString up{+1, prod.letters};
        int want = sign_of(pa) * sign_of(pb) * prod.sign;
        CHECK(sign_of(predict(t, s, up)) == want);
      }
  }

  SUBCASE("generators stay commuting and independent under random circuits") {
    std::mt19937_64 rng(55);
    for (int rep = 0; rep < 30; ++rep) {
      const int n = 2 + static_cast<int>(rng() % 4);
      Circuit c;
      c.n = n;
      std::uniform_int_distribution<int> kind(0, 5), qubit(0, n - 1);
      for (int d = 0; d < 25; ++d) {
        Gate g{};
        g.kind = static_cast<Gate::Kind>(kind(rng));
        g.a = qubit(rng);
        if (g.kind == Gate::Kind::CNOT) {
          do { g.b = qubit(rng); } while (g.b == g.a);
        }
        c.gates.push_back(g);
      }
      Tableau t = run_tableau(c);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          CHECK_FALSE(anticommutes(t.gens[static_cast<std::size_t>(i)],
                                   t.gens[static_cast<std::size_t>(j)]));
      CHECK_NOTHROW(FullStabilizer::build(t));  // rejects dependent generators
    }
  }

  SUBCASE("matches the dense statevector oracle on random circuits") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 30; ++rep) {
      const int n = 2 + static_cast<int>(rng() % 3);
      Circuit c;
      c.n = n;
      std::uniform_int_distribution<int> kind(0, 5), qubit(0, n - 1);
      for (int d = 0; d < 20; ++d) {
        Gate g{};
        g.kind = static_cast<Gate::Kind>(kind(rng));
        g.a = qubit(rng);
        if (g.kind == Gate::Kind::CNOT) {
          do { g.b = qubit(rng); } while (g.b == g.a);
        }
        c.gates.push_back(g);
      }
      Tableau t = run_tableau(c);
      FullStabilizer s = FullStabilizer::build(t);
      Vector psi = run_statevector(c);
      for (std::uint64_t k = 0; k < (1ull << (2 * n)); ++k) {
        PauliString m = measurement_at(n, k);
        CHECK(predict(t, s, m) == oracle_predict(psi, m));
      }
    }
  }
}

TEST_CASE("sign solver agrees with the full expansion") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 4);
    Circuit c;
    c.n = n;
    std::uniform_int_distribution<int> kind(0, 5), qubit(0, n - 1);
    for (int d = 0; d < 15; ++d) {
      Gate g{};
      g.kind = static_cast<Gate::Kind>(kind(rng));
      g.a = qubit(rng);
      if (g.kind == Gate::Kind::CNOT) {
        do { g.b = qubit(rng); } while (g.b == g.a);
      }
      c.gates.push_back(g);
    }
    Tableau t = run_tableau(c);
    FullStabilizer s = FullStabilizer::build(t);
    for (std::uint64_t k = 0; k < (1ull << (2 * n)); ++k) {
      PauliString m = measurement_at(n, k);
      auto via_solver = stabilizer_sign(t, m);
      auto via_table = s.sign_of(m);
      CHECK(via_solver.has_value() == via_table.has_value());
      if (via_solver && via_table) CHECK(*via_solver == *via_table);
    }
  }
}

TEST_CASE("cluster correlation operators") {
  for (int n = 2; n <= 9; ++n) {
    Lattice lat = Lattice::chain(n);
    Tableau t = run_tableau(build_cluster_circuit(lat));
    FullStabilizer s = FullStabilizer::build(t);
    for (int a = 0; a < n; ++a)
      CHECK(predict(t, s, cluster_generator(lat, a)) == Prediction::Plus);
  }
  Lattice grid = Lattice::grid(3, 3);
  Tableau t = run_tableau(build_cluster_circuit(grid));
  FullStabilizer s = FullStabilizer::build(t);
  for (int a = 0; a < 9; ++a)
    CHECK(predict(t, s, cluster_generator(grid, a)) == Prediction::Plus);
}
