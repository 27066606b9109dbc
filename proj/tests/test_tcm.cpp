#include "qic/tcm.hpp"

#include "qic/monotones.hpp"
#include "qic/sampling.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace qic;
using namespace qic::test;

namespace {

// Closed-form amplitudes for |ee,n> evolution (sector k = n+2): the state is
// p|ee,n> + (q/sqrt2)(|eg>+|ge>)|n+1> + r|gg,n+2>.
struct ClosedForm {
  double p;
  Complex q;
  double r;
};

ClosedForm pqr(int n, double t, double g = 1.0) {
  double delta = g * t * std::sqrt(2.0 * (2.0 * n + 3.0));
  ClosedForm c;
  c.p = (n + 2.0 + (n + 1.0) * std::cos(delta)) / (2.0 * n + 3.0);
  c.q = Complex(0.0, -1.0) * std::sqrt((n + 1.0) / (2.0 * n + 3.0)) * std::sin(delta);
  c.r = -std::sqrt((n + 2.0) / (n + 1.0)) * (1.0 - c.p);
  return c;
}

// Poisson amplitude products c[n,x] for a coherent field with real alpha.
double coherent_pair(double alpha, int n, int x) {
  double ln = -alpha * alpha + (2.0 * n + x) * std::log(alpha) -
              0.5 * (std::lgamma(n + 1.0) + std::lgamma(n + x + 1.0));
  return std::exp(ln);
}

tcm::TCMConfig fock_ee(int n) {
  tcm::TCMConfig cfg;
  cfg.field = tcm::FockField{n};
  cfg.atoms = tcm::AtomicKind::EE;
  return cfg;
}

}  // namespace

TEST_CASE("propagator blocks") {
  SUBCASE("identity at t = 0") {
    for (int k : {0, 1, 2, 7}) {
      Matrix u = tcm::propagator_block(k, 0.0);
      CHECK(max_abs(u - Matrix::Identity(u.rows(), u.cols())) < 1e-14);
    }
  }

  SUBCASE("unitary for k up to 50") {
    for (int k = 0; k <= 50; ++k) {
      for (double t : {0.37, 1.9, 11.4}) {
        Matrix u = tcm::propagator_block(k, t);
        CHECK(max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) < 1e-10);
      }
    }
  }

  SUBCASE("column 1 reproduces the closed-form amplitudes") {
    for (int n : {0, 3, 10}) {
      for (double t : {0.2, 1.1, 7.7}) {
        Matrix u = tcm::propagator_block(n + 2, t);
        ClosedForm c = pqr(n, t);
        CHECK(std::abs(u(0, 0) - c.p) < 1e-12);
        CHECK(std::abs(u(1, 0) - c.q / std::sqrt(2.0)) < 1e-12);
        CHECK(std::abs(u(2, 0) - c.q / std::sqrt(2.0)) < 1e-12);
        CHECK(std::abs(u(3, 0) - c.r) < 1e-12);
      }
    }
  }

  CHECK_THROWS_AS(tcm::propagator_block(-1, 1.0), std::invalid_argument);
}

TEST_CASE("initial states") {
  SUBCASE("Fock ee") {
    tcm::TCMState st = tcm::initial_state(fock_ee(10));
    CHECK(st.psi.norm() == doctest::Approx(1.0));
    CHECK(st.photon_offset == 10);
    CHECK(st.n_phot() == 3);  // photons 10..12
    CHECK(std::abs(st.amp(0, 0, 10) - Complex(1.0, 0.0)) < 1e-15);
  }

  SUBCASE("coherent weights and window mass") {
    tcm::TCMConfig cfg;
    cfg.field = tcm::CoherentField{10.0};
    cfg.atoms = tcm::AtomicKind::EE;
    CHECK(cfg.window_min() == 70);
    CHECK(cfg.window_max() == 130);
    CHECK(cfg.field_dim() == 63);
    tcm::TCMState st = tcm::initial_state(cfg);
    CHECK(st.psi.norm() == doctest::Approx(1.0));
    CHECK(st.discarded_mass < 0.003);
    CHECK(st.discarded_mass >= 0.0);
  }

  SUBCASE("symmetric atomic state") {
    tcm::TCMConfig cfg;
    cfg.field = tcm::FockField{5};
    cfg.atoms = tcm::AtomicKind::SymmetricEG;
    tcm::TCMState st = tcm::initial_state(cfg);
    CHECK(std::abs(st.amp(0, 1, 5) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
    CHECK(std::abs(st.amp(1, 0, 5) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  }

  SUBCASE("empty window rejected") {
    tcm::TCMConfig cfg;
    cfg.field = tcm::FockField{5};
    cfg.s_min = 6;
    cfg.s_max = 5;
    CHECK_THROWS_AS(tcm::initial_state(cfg), std::invalid_argument);
  }
}

TEST_CASE("evolution") {
  SUBCASE("t = 0 is the identity") {
    tcm::TCMState st = tcm::initial_state(fock_ee(4));
    tcm::TCMState ev = tcm::evolve(st, 0.0);
    CHECK((ev.psi.amps - st.psi.amps).norm() < 1e-14);
  }

  SUBCASE("matches the closed forms for |ee,n>") {
    for (int n : {2, 10}) {
      tcm::TCMState st = tcm::initial_state(fock_ee(n));
      for (double t : {0.9, 3.7, 21.0}) {
        tcm::TCMState ev = tcm::evolve(st, t);
        ClosedForm c = pqr(n, t);
        CHECK(std::abs(ev.amp(0, 0, n) - c.p) < 1e-10);
        CHECK(std::abs(ev.amp(0, 1, n + 1) - c.q / std::sqrt(2.0)) < 1e-10);
        CHECK(std::abs(ev.amp(1, 0, n + 1) - c.q / std::sqrt(2.0)) < 1e-10);
        CHECK(std::abs(ev.amp(1, 1, n + 2) - c.r) < 1e-10);
      }
    }
  }

  SUBCASE("norm and purity preserved") {
    tcm::TCMConfig cfg;
    cfg.field = tcm::CoherentField{4.0};
    cfg.atoms = tcm::AtomicKind::SymmetricGGEE;
    tcm::TCMState st = tcm::initial_state(cfg);
    for (double t : {1.0, 5.0, 40.0}) {
      tcm::TCMState ev = tcm::evolve(st, t);
      CHECK(std::abs(ev.psi.norm() - 1.0) < 1e-8);
    }
  }

  SUBCASE("amplitude outside any full sector is rejected") {
    // Populating a state whose sector would need photons below the basis
    // floor cannot be evolved exactly.
    tcm::TCMState st = tcm::initial_state(fock_ee(10));  // basis photons 10..12
    st.psi.amps((1 * 2 + 1) * st.n_phot() + 0) = 0.1;    // |gg,10>, sector K = 10
    st.psi.amps /= st.psi.amps.norm();
    CHECK_THROWS_AS(tcm::evolve(st, 1.0), std::runtime_error);
  }

  SUBCASE("conserved excitation number") {
    tcm::TCMConfig cfg;
    cfg.field = tcm::CoherentField{3.0};
    cfg.atoms = tcm::AtomicKind::GG;
    tcm::TCMState st = tcm::initial_state(cfg);
    auto mean_k = [](const tcm::TCMState& s) {
      double acc = 0.0;
      const Index nph = s.n_phot();
      for (int a = 0; a < 4; ++a) {
        int excited = (a < 2 ? 1 : 0) + (a % 2 == 0 ? 1 : 0);
        for (Index ph = 0; ph < nph; ++ph)
          acc += (s.photon_offset + double(ph) + excited) *
                 std::norm(s.psi.amps(a * nph + ph));
      }
      return acc;
    };
    double k0 = mean_k(st);
    for (double t : {2.0, 9.0}) CHECK(std::abs(mean_k(tcm::evolve(st, t)) - k0) < 1e-8);
  }
}

TEST_CASE("marginals against the closed forms") {
  SUBCASE("product initial state has pure marginals") {
    tcm::TCMState st = tcm::initial_state(fock_ee(6));
    tcm::TCMMarginals m = tcm::marginals(st);
    CHECK((m.atoms.mat * m.atoms.mat).trace().real() == doctest::Approx(1.0));
    CHECK((m.atom1.mat * m.atom1.mat).trace().real() == doctest::Approx(1.0));
  }

  SUBCASE("two-atom marginal for |ee,n>") {
    const int n = 10;
    tcm::TCMState st = tcm::evolve(tcm::initial_state(fock_ee(n)), 3.7);
    tcm::TCMMarginals m = tcm::marginals(st);
    ClosedForm c = pqr(n, 3.7);
    // in the symmetric basis {ee, (eg+ge)/sqrt2, gg}: diag(p^2, |q|^2, r^2)
    Matrix u(4, 3);
    u << 1, 0, 0,
         0, 1.0 / std::sqrt(2.0), 0,
         0, 1.0 / std::sqrt(2.0), 0,
         0, 0, 1;
    Matrix sym = u.adjoint() * m.atoms.mat * u;
    Matrix want = Matrix::Zero(3, 3);
    want(0, 0) = c.p * c.p;
    want(1, 1) = std::norm(c.q);
    want(2, 2) = c.r * c.r;
    CHECK(max_abs(sym - want) < 1e-10);
  }

  SUBCASE("exchange symmetry of the one-atom marginals") {
    tcm::TCMConfig cfg;
    cfg.field = tcm::CoherentField{3.0};
    cfg.atoms = tcm::AtomicKind::SymmetricEG;
    tcm::TCMState st = tcm::evolve(tcm::initial_state(cfg), 4.0);
    ComplexMatrix rho = st.psi.projector();
    ComplexMatrix a1 = partial_trace_keep(rho, {0});
    ComplexMatrix a2 = partial_trace_keep(rho, {1});
    CHECK(max_abs(a1.mat - a2.mat) < 1e-10);
  }

  SUBCASE("field and ensemble share nonzero spectra") {
    tcm::TCMState st = tcm::evolve(tcm::initial_state(fock_ee(5)), 2.2);
    ComplexMatrix rho = st.psi.projector();
    Spectrum atoms = hermitian_spectrum(partial_trace_keep(rho, {0, 1}));
    Spectrum field = hermitian_spectrum(partial_trace_keep(rho, {2}));
    for (std::size_t i = 0; i < 4; ++i) {
      double a = i < atoms.size() ? atoms[i] : 0.0;
      double f = i < field.size() ? field[i] : 0.0;
      if (a > 1e-9 || f > 1e-9) CHECK(std::abs(a - f) < 1e-9);
    }
  }
}

TEST_CASE("single atom-field marginal matches the reference construction") {
  // The reference populates rho_A1F entry-wise from the closed forms for a
  // stretched coherent run; compare against the partial trace.
  const double alpha = 4.0;
  tcm::TCMConfig cfg;
  cfg.field = tcm::CoherentField{alpha};
  cfg.atoms = tcm::AtomicKind::EE;
  const int s_min = cfg.window_min(), s_max = cfg.window_max();
  const int df = cfg.field_dim();
  const double t = 2.3;

  tcm::TCMState st = tcm::evolve(tcm::initial_state(cfg), t);
  ComplexMatrix got = tcm::marginals(st).atom1_field;
  REQUIRE(got.rows() == 2 * df);

  // Renormalize the Poisson pair weights exactly as the truncated initial
  // state does.
  double mass = 0.0;
  for (int n = s_min; n <= s_max; ++n) mass += coherent_pair(alpha, n, 0);
  auto cpair = [&](int n, int x) { return coherent_pair(alpha, n, x) / mass; };

  // The marginal keeps (atom1, field) with the e block first; cross terms
  // couple photon sectors n and m through the traced atom, with amplitude
  // products c_n c_m.
  Matrix want = Matrix::Zero(2 * df, 2 * df);
  auto ei = [&](int n) { return n - s_min; };
  auto gi = [&](int n) { return df + n - s_min; };
  auto amp = [&](int n) { return std::sqrt(cpair(n, 0)); };
  for (int n = s_min; n <= s_max; ++n) {
    for (int m = s_min; m <= s_max; ++m) {
      ClosedForm cn = pqr(n, t), cm = pqr(m, t);
      const double w = amp(n) * amp(m);
      const double inv2 = 0.5;
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      // |e,n><e,m| from the p terms
      want(ei(n), ei(m)) += w * cn.p * cm.p;
      // |e,n><g,m+1| from p x (q/sqrt2) through the traced atom in |e>
      want(ei(n), gi(m + 1)) += w * inv_sqrt2 * cn.p * std::conj(cm.q);
      want(gi(n + 1), ei(m)) += w * inv_sqrt2 * cn.q * cm.p;
      // |e,n+1><e,m+1| and |g,n+1><g,m+1| from the q terms
      want(ei(n + 1), ei(m + 1)) += w * inv2 * cn.q * std::conj(cm.q);
      want(gi(n + 1), gi(m + 1)) += w * inv2 * cn.q * std::conj(cm.q);
      // q x r couplings
      want(ei(n + 1), gi(m + 2)) += w * inv_sqrt2 * cn.q * cm.r;
      want(gi(n + 2), ei(m + 1)) += w * inv_sqrt2 * cn.r * std::conj(cm.q);
      // |g,n+2><g,m+2| from the r terms
      want(gi(n + 2), gi(m + 2)) += w * cn.r * cm.r;
    }
  }
  CHECK(max_abs(got.mat - want) < 1e-10);
}

TEST_CASE("bipartite tangles") {
  SUBCASE("all zero at t = 0") {
    tcm::BipartiteTangles t = tcm::bipartite_tangles(tcm::initial_state(fock_ee(10)));
    CHECK(std::abs(t.field_ensemble) < 1e-10);
    CHECK(std::abs(t.atom_remainder) < 1e-10);
    CHECK(std::abs(t.atom_atom) < 1e-10);
    CHECK(std::abs(t.atom_field) < 1e-10);
  }

  SUBCASE("atom-atom tangle vanishes for Fock ee runs") {
    tcm::TCMState init = tcm::initial_state(fock_ee(10));
    for (double t = 0.0; t <= 20.0; t += 1.0) {
      tcm::BipartiteTangles bt = tcm::bipartite_tangles(tcm::evolve(init, t));
      CHECK(bt.atom_atom <= 1e-10);
    }
  }

  SUBCASE("closed-form identity for the atom-field tangle") {
    tcm::TCMState init = tcm::initial_state(fock_ee(10));
    for (double t : {0.5, 2.0, 7.5, 13.0}) {
      tcm::BipartiteTangles bt = tcm::bipartite_tangles(tcm::evolve(init, t));
      double via_identity = 0.5 * bt.field_ensemble + bt.lambda_min * bt.atom_remainder;
      CHECK(std::abs(bt.atom_field - via_identity) < 1e-8);
    }
  }

  SUBCASE("exchange symmetry of atom-field tangles") {
    tcm::TCMConfig cfg;
    cfg.field = tcm::CoherentField{3.0};
    cfg.atoms = tcm::AtomicKind::EE;
    tcm::TCMState st = tcm::evolve(tcm::initial_state(cfg), 3.0);
    ComplexMatrix rho = st.psi.projector();
    double t1 = i_tangle_rank2(partial_trace_keep(rho, {0, 2})).value;
    double t2 = i_tangle_rank2(partial_trace_keep(rho, {1, 2})).value;
    CHECK(std::abs(t1 - t2) < 1e-8);
  }
}

TEST_CASE("I-residual tangle") {
  SUBCASE("zero at t = 0") {
    CHECK(std::abs(tcm::i_residual_tangle(tcm::initial_state(fock_ee(10)))) < 1e-9);
  }

  SUBCASE("GHZ embedded in 2x2x3 recovers the three-qubit value") {
    Vector v = Vector::Zero(12);
    v(0) = 1.0 / std::sqrt(2.0);       // |0,0,0>
    v(1 * 6 + 1 * 3 + 1) = v(0);       // |1,1,1>
    PureStateVector psi(v, {2, 2, 3});
    CHECK(tcm::i_residual_general(psi) == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("positive on Haar-random 2x2x3 and 2x2x4 states") {
    Rng rng(21);
    for (Index d : {3, 4}) {
      double worst = 1.0;
      for (int rep = 0; rep < 2000; ++rep) {
        PureStateVector psi = haar_random_pure({2, 2, d}, rng);
        worst = std::min(worst, tcm::i_residual_general(psi, static_cast<int>(d)));
      }
      CHECK(worst >= -1e-10);
    }
  }

  SUBCASE("CKW inequality on random three-qubit states") {
    Rng rng(22);
    for (int rep = 0; rep < 2000; ++rep) {
      PureStateVector psi = haar_random_pure({2, 2, 2}, rng);
      ComplexMatrix rho = psi.projector();
      ComplexMatrix rho_a = partial_trace_keep(rho, {0});
      double tau_a = 2.0 * (1.0 - (rho_a.mat * rho_a.mat).trace().real());
      double tau_ab = tangle_two_qubit(partial_trace_keep(rho, {0, 1})).value;
      double tau_ac = tangle_two_qubit(partial_trace_keep(rho, {0, 2})).value;
      CHECK(tau_ab + tau_ac <= tau_a + 1e-10);
    }
  }
}

TEST_CASE("Fock-run tangles oscillate in phase at twice the Rabi frequency") {
  // Local maxima of every nonzero tangle curve fall on a shared grid, at
  // sampling resolution, spaced by half the Rabi period pi/sqrt(2 delta).
  const double dt = 0.05;
  auto rows = tcm::run_trace(fock_ee(10), 3.0, dt);
  auto maxima = [&](auto&& field) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i)
      if (field(rows[i]) > field(rows[i - 1]) && field(rows[i]) >= field(rows[i + 1]))
        out.push_back(i);
    return out;
  };
  auto m_f = maxima([](const tcm::TraceRow& r) { return r.tau_field_ens; });
  auto m_rest = maxima([](const tcm::TraceRow& r) { return r.tau_atom_rest; });
  auto m_af = maxima([](const tcm::TraceRow& r) { return r.tau_atom_field; });
  auto m_res = maxima([](const tcm::TraceRow& r) { return r.tau_residual; });

  REQUIRE(m_f.size() >= 5);
  REQUIRE(m_rest.size() == m_f.size());
  REQUIRE(m_af.size() == m_f.size());
  REQUIRE(m_res.size() == m_f.size());
  for (std::size_t i = 0; i < m_f.size(); ++i) {
    CHECK(std::abs(int(m_rest[i]) - int(m_f[i])) <= 1);
    CHECK(std::abs(int(m_af[i]) - int(m_f[i])) <= 1);
    CHECK(std::abs(int(m_res[i]) - int(m_f[i])) <= 1);
  }

  const double half_rabi = M_PI / std::sqrt(2.0 * 23.0);  // k = 12 sector
  for (std::size_t i = 1; i < m_f.size(); ++i) {
    double spacing = (m_f[i] - m_f[i - 1]) * dt;
    CHECK(std::abs(spacing - half_rabi) <= dt + 1e-12);
  }
}

TEST_CASE("residual combination closes algebraically") {
  // At every step (in particular near the zero crossings where the sharing
  // constraint is tightest), the reported residual and the four tangles
  // satisfy the defining combination exactly.
  tcm::TCMState init = tcm::initial_state(fock_ee(10));
  for (double t = 0.0; t <= 30.0; t += 1.0) {
    tcm::BipartiteTangles bt = tcm::bipartite_tangles(tcm::evolve(init, t));
    double res = tcm::i_residual_tangle(bt);
    double combo = (2.0 * bt.atom_remainder + 1.5 * bt.field_ensemble -
                    2.0 * bt.atom_atom - 4.0 * bt.atom_field) / 3.0;
    CHECK(std::abs(res - combo) < 1e-8);  // only the clamp may separate them
  }
}

TEST_CASE("atomic inversion") {
  CHECK(tcm::atomic_inversion(tcm::initial_state(fock_ee(3))) == doctest::Approx(1.0));

  tcm::TCMConfig gg;
  gg.field = tcm::CoherentField{3.0};
  gg.atoms = tcm::AtomicKind::GG;
  CHECK(tcm::atomic_inversion(tcm::initial_state(gg)) == doctest::Approx(-1.0));

  SUBCASE("matches the closed-form series") {
    tcm::TCMState init = tcm::initial_state(fock_ee(10));
    for (double t = 0.0; t <= 10.0; t += 0.5) {
      ClosedForm c = pqr(10, t);
      CHECK(std::abs(tcm::atomic_inversion(tcm::evolve(init, t)) -
                     (c.p * c.p - c.r * c.r)) < 1e-10);
    }
  }
}

TEST_CASE("Jx coefficients") {
  auto ee = tcm::jx_coefficients(tcm::AtomicKind::EE);
  CHECK(std::abs(ee.d[0]) == doctest::Approx(0.5));
  CHECK(std::abs(ee.d[1]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(ee.d[2]) == doctest::Approx(0.5));
  CHECK(ee.singlet_weight == doctest::Approx(0.0));

  auto gg = tcm::jx_coefficients(tcm::AtomicKind::GG);
  CHECK(std::abs(gg.d[0]) == doctest::Approx(0.5));
  CHECK(std::abs(gg.d[1]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(gg.d[2]) == doctest::Approx(0.5));

  for (auto kind : {tcm::AtomicKind::SymmetricEG, tcm::AtomicKind::SymmetricGGEE}) {
    auto s = tcm::jx_coefficients(kind);
    CHECK(std::abs(s.d[0]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(s.d[1]) == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(1e-12));
    CHECK(std::abs(s.d[2]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  }

  auto singlet_state = tcm::jx_coefficients(
      tcm::AtomicKind::Custom, {0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0});
  CHECK(std::abs(singlet_state.d[0]) < 1e-12);
  CHECK(std::abs(singlet_state.d[1]) < 1e-12);
  CHECK(std::abs(singlet_state.d[2]) < 1e-12);
  CHECK(singlet_state.singlet_weight == doctest::Approx(1.0));
}

TEST_CASE("factorization approximation") {
  auto stretched = tcm::jx_coefficients(tcm::AtomicKind::EE);

  SUBCASE("t = 0 value from the moduli") {
    // At t' = 0 the pointer states are orthonormal, so the purity is
    // sum |d_m|^4 = 3/8 for |d+-1| = 1/2, |d0| = 1/sqrt2, i.e. c - h(0) = 3/2.
    CHECK(tcm::approx_field_ensemble_tangle(stretched, 100.0, 0.0) ==
          doctest::Approx(2.0 * (1.0 - 3.0 / 8.0)).epsilon(1e-12));
  }

  SUBCASE("depends only on the moduli") {
    tcm::JxCoefficients phased = stretched;
    for (auto& dm : phased.d) dm *= Complex(0.0, 1.0);
    for (double t : {0.0, 3.0, 11.0})
      CHECK(tcm::approx_field_ensemble_tangle(stretched, 100.0, t) ==
            doctest::Approx(tcm::approx_field_ensemble_tangle(phased, 100.0, t)));
  }

  SUBCASE("tracks the exact evolution better at larger nbar") {
    auto sup_gap = [](double alpha) {
      tcm::TCMConfig cfg;
      cfg.field = tcm::CoherentField{alpha};
      cfg.atoms = tcm::AtomicKind::EE;
      auto jx = tcm::jx_coefficients(cfg.atoms);
      tcm::TCMState init = tcm::initial_state(cfg);
      const double nbar = alpha * alpha;
      double worst = 0.0;
      for (double t = 0.2 * alpha; t <= 2.5 * alpha; t += 0.1 * alpha) {
        tcm::TCMState st = tcm::evolve(init, t);
        ComplexMatrix atoms = tcm::marginals(st).atoms;
        double exact = 2.0 * (1.0 - (atoms.mat * atoms.mat).trace().real());
        double approx = tcm::approx_field_ensemble_tangle(jx, nbar, t);
        worst = std::max(worst, std::abs(exact - approx));
      }
      return worst;
    };
    double gap10 = sup_gap(10.0);  // nbar = 100
    double gap20 = sup_gap(20.0);  // nbar = 400
    CHECK(gap20 < gap10);
  }

  CHECK_THROWS_AS(tcm::approx_field_ensemble_tangle(stretched, 0.5, 1.0),
                  std::invalid_argument);
}

TEST_CASE("stretched-state equivalence") {
  // |ee,alpha> and |gg,alpha> runs produce the same tangle curves in the
  // large-nbar regime; the tolerance is calibrated at nbar = 400 and must
  // shrink as nbar grows.
  auto curves_gap = [](double alpha) {
    tcm::TCMConfig a, b;
    a.field = b.field = tcm::CoherentField{alpha};
    a.atoms = tcm::AtomicKind::EE;
    b.atoms = tcm::AtomicKind::GG;
    tcm::TCMState ia = tcm::initial_state(a);
    tcm::TCMState ib = tcm::initial_state(b);
    double worst = 0.0;
    for (double t = 0.0; t <= 2.0 * alpha; t += alpha / 4.0) {
      tcm::BipartiteTangles ta = tcm::bipartite_tangles(tcm::evolve(ia, t));
      tcm::BipartiteTangles tb = tcm::bipartite_tangles(tcm::evolve(ib, t));
      worst = std::max({worst, std::abs(ta.field_ensemble - tb.field_ensemble),
                        std::abs(ta.atom_remainder - tb.atom_remainder),
                        std::abs(ta.atom_atom - tb.atom_atom),
                        std::abs(ta.atom_field - tb.atom_field)});
    }
    return worst;
  };
  double gap100 = curves_gap(10.0);
  double gap400 = curves_gap(20.0);
  CHECK(gap400 < gap100);
  CHECK(gap100 < 0.2);  // already close at nbar = 100
}

TEST_CASE("trace runs") {
  auto rows = tcm::run_trace(fock_ee(10), 5.0, 1.0);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].t == 0.0);
  CHECK(rows[0].inversion == doctest::Approx(1.0));
  CHECK(std::isnan(rows[0].tau_approx));
  for (const auto& r : rows) {
    CHECK(r.tau_atom_atom <= 1e-10);
    CHECK(r.tau_residual >= -1e-10);
    CHECK(r.inversion >= -1.0 - 1e-10);
    CHECK(r.inversion <= 1.0 + 1e-10);
  }
}
