#include "qic/tcm.hpp"

#include "qic/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qic::tcm {

namespace {

constexpr int kEE = 0, kEG = 1, kGE = 2, kGG = 3;

std::array<Complex, 4> atomic_amplitudes(AtomicKind kind,
                                         const std::array<Complex, 4>& custom) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case AtomicKind::EE: return {1.0, 0.0, 0.0, 0.0};
    case AtomicKind::GG: return {0.0, 0.0, 0.0, 1.0};
    case AtomicKind::SymmetricEG: return {0.0, r, r, 0.0};
    case AtomicKind::SymmetricGGEE: return {r, 0.0, 0.0, r};
    case AtomicKind::Custom: {
      double n = 0.0;
      for (const auto& c : custom) n += std::norm(c);
      if (n <= 0.0)
        throw std::invalid_argument("tcm: custom atomic state must be nonzero");
      std::array<Complex, 4> out = custom;
      for (auto& c : out) c /= std::sqrt(n);
      return out;
    }
  }
  throw std::logic_error("tcm: unknown atomic kind");
}

// Lowest field basis index needed so no populated sector leaves the window.
int basis_floor(AtomicKind kind, int s_min) {
  switch (kind) {
    case AtomicKind::EE: return s_min;
    case AtomicKind::SymmetricEG: return std::max(s_min - 1, 0);
    default: return std::max(s_min - 2, 0);
  }
}

}  // namespace

int TCMConfig::window_min() const {
  if (s_min) return *s_min;
  if (const auto* f = std::get_if<FockField>(&field)) return f->n;
  double a = std::get<CoherentField>(field).alpha;
  return std::max(static_cast<int>(std::floor(a * a - 3.0 * a)), 0);
}

int TCMConfig::window_max() const {
  if (s_max) return *s_max;
  if (const auto* f = std::get_if<FockField>(&field)) return f->n;
  double a = std::get<CoherentField>(field).alpha;
  return static_cast<int>(std::ceil(a * a + 3.0 * a));
}

int TCMConfig::field_dim() const { return window_max() + 2 - window_min() + 1; }

Complex TCMState::amp(int a1, int a2, int photon) const {
  int ph = photon - photon_offset;
  if (ph < 0 || ph >= n_phot()) return 0.0;
  return psi.amps((a1 * 2 + a2) * n_phot() + ph);
}

Matrix propagator_block(int k, double t, double g) {
  if (k < 0) throw std::invalid_argument("propagator_block: k must be >= 0");
  if (k == 0) return Matrix::Identity(1, 1);

  const double gam = k - 1.0;
  const double dlt = 2.0 * k - 1.0;
  const double beta = std::sqrt(2.0 * dlt) * g * t;
  const double c = std::cos(beta), s = std::sin(beta);
  const Complex iu(0.0, 1.0);
  const Complex q = -iu / std::sqrt(2.0) * std::sqrt(gam / dlt) * s;
  const Complex w = -iu / std::sqrt(2.0) * std::sqrt(k / dlt) * s;

  if (k == 1) {
    Matrix u(3, 3);
    u << 0.5 * (c + 1.0), 0.5 * (c - 1.0), w,
         0.5 * (c - 1.0), 0.5 * (c + 1.0), w,
         w, w, (k * c + gam) / dlt;
    return u;
  }
  Matrix u(4, 4);
  u << (gam * c + k) / dlt, q, q, -std::sqrt(k * gam) * (1.0 - c) / dlt,
       q, 0.5 * (c + 1.0), 0.5 * (c - 1.0), w,
       q, 0.5 * (c - 1.0), 0.5 * (c + 1.0), w,
       -std::sqrt(k * gam) * (1.0 - c) / dlt, w, w, (k * c + gam) / dlt;
  return u;
}

TCMState initial_state(const TCMConfig& cfg) {
  const int s_min = cfg.window_min();
  const int s_max = cfg.window_max();
  if (s_min > s_max) throw std::invalid_argument("tcm: empty photon window");

  const int lo = basis_floor(cfg.atoms, s_min);
  const int hi = s_max + 2;
  const int n_phot = hi - lo + 1;

  // Field amplitudes over [s_min, s_max], renormalized after truncation.
  std::vector<double> field(static_cast<std::size_t>(n_phot), 0.0);
  double discarded = 0.0;
  if (const auto* f = std::get_if<FockField>(&cfg.field)) {
    if (f->n < s_min || f->n > s_max)
      throw std::invalid_argument("tcm: Fock number outside the photon window");
    field[static_cast<std::size_t>(f->n - lo)] = 1.0;
  } else {
    const double alpha = std::get<CoherentField>(cfg.field).alpha;
    if (alpha <= 0.0)
      throw std::invalid_argument("tcm: coherent amplitude must be positive");
    double mass = 0.0;
    for (int n = s_min; n <= s_max; ++n) {
      double lc = -0.5 * alpha * alpha + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0);
      double c = std::exp(lc);
      field[static_cast<std::size_t>(n - lo)] = c;
      mass += c * c;
    }
    discarded = 1.0 - mass;
    const double scale = 1.0 / std::sqrt(mass);
    for (auto& c : field) c *= scale;
  }

  const auto atoms = atomic_amplitudes(cfg.atoms, cfg.custom_atoms);
  Vector amps = Vector::Zero(4 * n_phot);
  for (int a = 0; a < 4; ++a)
    for (int ph = 0; ph < n_phot; ++ph)
      amps(a * n_phot + ph) = atoms[static_cast<std::size_t>(a)] *
                              field[static_cast<std::size_t>(ph)];

  TCMState st;
  st.psi = PureStateVector(std::move(amps), {2, 2, n_phot});
  st.photon_offset = lo;
  st.time = 0.0;
  st.g = cfg.g;
  st.discarded_mass = discarded;
  return st;
}

TCMState evolve(const TCMState& state, double dt) {
  const int lo = state.photon_offset;
  const int hi = lo + static_cast<int>(state.n_phot()) - 1;
  const Index nph = state.n_phot();

  TCMState out = state;
  out.time += dt;
  Vector& amps = out.psi.amps;
  std::vector<bool> covered(static_cast<std::size_t>(4 * nph), false);

  auto flat = [&](int atom, int photon) { return atom * nph + (photon - lo); };

  for (int k = std::max(lo, 0); k <= hi; ++k) {
    // Basis rows of sector k, in propagator order.
    std::vector<Index> idx;
    if (k >= 2) {
      if (k - 2 < lo) continue;  // sector extends below the basis
      idx = {flat(kEE, k - 2), flat(kEG, k - 1), flat(kGE, k - 1), flat(kGG, k)};
    } else if (k == 1) {
      if (lo > 0) continue;
      idx = {flat(kEG, 0), flat(kGE, 0), flat(kGG, 1)};
    } else {
      if (lo > 0) continue;
      idx = {flat(kGG, 0)};
    }

    Matrix u = propagator_block(k, dt, state.g);
    Vector v(static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) v(static_cast<Index>(i)) = amps(idx[i]);
    v = u * v;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      amps(idx[i]) = v(static_cast<Index>(i));
      covered[static_cast<std::size_t>(idx[i])] = true;
    }
  }

  // Amplitudes in sectors that straddle the window boundary cannot be evolved
  // exactly; they must be unpopulated.
  for (Index i = 0; i < amps.size(); ++i)
    if (!covered[static_cast<std::size_t>(i)] && std::abs(amps(i)) > 1e-12)
      throw std::runtime_error("tcm::evolve: excitation leaves the truncated window");
  return out;
}

TCMMarginals marginals(const TCMState& state) {
  ComplexMatrix rho = state.psi.projector();
  TCMMarginals m;
  m.atoms = partial_trace_keep(rho, {0, 1});
  m.atom1 = partial_trace_keep(rho, {0});
  m.atom1_field = partial_trace_keep(rho, {0, 2});
  return m;
}

BipartiteTangles bipartite_tangles(const TCMState& state) {
  TCMMarginals m = marginals(state);
  BipartiteTangles t;
  t.field_ensemble = 2.0 * (1.0 - (m.atoms.mat * m.atoms.mat).trace().real());
  t.atom_remainder = 2.0 * (1.0 - (m.atom1.mat * m.atom1.mat).trace().real());
  t.atom_atom = tangle_two_qubit(m.atoms).value;
  Rank2Tangle af = i_tangle_rank2_detail(m.atom1_field);
  t.atom_field = af.value;
  t.lambda_min = af.lambda_min;
  return t;
}

double i_residual_tangle(const BipartiteTangles& t) {
  double v = (2.0 * t.atom_remainder + 1.5 * t.field_ensemble -
              2.0 * t.atom_atom - 4.0 * t.atom_field) / 3.0;
  if (v < 0.0 && v >= -1e-10) return 0.0;
  return v;
}

double i_residual_tangle(const TCMState& state) {
  return i_residual_tangle(bipartite_tangles(state));
}

double atomic_inversion(const TCMState& state) {
  const Index nph = state.n_phot();
  double p_ee = 0.0, p_gg = 0.0;
  for (Index ph = 0; ph < nph; ++ph) {
    p_ee += std::norm(state.psi.amps(kEE * nph + ph));
    p_gg += std::norm(state.psi.amps(kGG * nph + ph));
  }
  return p_ee - p_gg;
}

JxCoefficients jx_coefficients(AtomicKind kind, const std::array<Complex, 4>& custom) {
  const auto a = atomic_amplitudes(kind, custom);
  const double r = 1.0 / std::sqrt(2.0);
  // Symmetric J_x eigenvectors over {ee,eg,ge,gg}; m = -1, 0, +1.
  const std::array<std::array<double, 4>, 3> basis = {{
      {0.5, -0.5, -0.5, 0.5},
      {-r, 0.0, 0.0, r},
      {0.5, 0.5, 0.5, 0.5},
  }};
  JxCoefficients out;
  for (int m = 0; m < 3; ++m) {
    Complex acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += basis[m][i] * a[static_cast<std::size_t>(i)];
    out.d[static_cast<std::size_t>(m)] = acc;
  }
  Complex singlet = r * a[kEG] - r * a[kGE];
  out.singlet_weight = std::norm(singlet);
  return out;
}

double approx_field_ensemble_tangle(const JxCoefficients& d, double nbar,
                                    double t, double g) {
  if (nbar <= 1.0)
    throw std::invalid_argument("approx_field_ensemble_tangle: nbar must exceed 1");
  const double dm1 = std::norm(d.d[0]);
  const double d0 = std::norm(d.d[1]);
  const double dp1 = std::norm(d.d[2]);

  // Decohered purity: sum |d_m|^4 plus pointer-state overlap terms. Adjacent
  // pairs overlap as (1 - cos 4t')/4, the outer pair as sin^4(2t'); c bundles
  // the constants so c - h(0) = 4 sum |d_m|^4.
  const double p = d0 * (dm1 + dp1);
  const double q = dm1 * dp1;
  const double c = 4.0 * (dm1 * dm1 + d0 * d0 + dp1 * dp1) + 2.0 * p + 3.0 * q;
  const double tp = g * t / (2.0 * std::sqrt(nbar - 1.0 + 0.5));
  const double h = (2.0 * p + 4.0 * q) * std::cos(4.0 * tp) - q * std::cos(8.0 * tp);
  return 2.0 * (1.0 - 0.25 * (c - h));
}

double i_residual_general(const PureStateVector& psi, int d_eff) {
  if (psi.dims.size() != 3 || psi.dims[0] != 2 || psi.dims[1] != 2)
    throw std::invalid_argument("i_residual_general: dims [2,2,D] required");
  ComplexMatrix rho = psi.projector();

  ComplexMatrix rho_a = partial_trace_keep(rho, {0});
  ComplexMatrix rho_b = partial_trace_keep(rho, {1});
  ComplexMatrix rho_c = partial_trace_keep(rho, {2});

  if (d_eff <= 0) {
    d_eff = 0;
    for (double lam : hermitian_spectrum(rho_c).values)
      if (lam > kRankTol) ++d_eff;
    d_eff = std::max(d_eff, 1);
  }
  const double scale_c = std::min<double>(d_eff, 4) / 2.0;

  double tau_a = 2.0 * (1.0 - (rho_a.mat * rho_a.mat).trace().real());
  double tau_b = 2.0 * (1.0 - (rho_b.mat * rho_b.mat).trace().real());
  double tau_c = scale_c * 2.0 * (1.0 - (rho_c.mat * rho_c.mat).trace().real());

  double tau_ab = tangle_two_qubit(partial_trace_keep(rho, {0, 1})).value;
  double tau_ac = i_tangle_rank2(partial_trace_keep(rho, {0, 2})).value;
  double tau_bc = i_tangle_rank2(partial_trace_keep(rho, {1, 2})).value;

  return (tau_a + tau_b + tau_c - 2.0 * (tau_ab + tau_ac + tau_bc)) / 3.0;
}

std::vector<TraceRow> run_trace(const TCMConfig& cfg, double tmax, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("run_trace: dt must be positive");
  TCMState init = initial_state(cfg);

  bool with_approx = false;
  double nbar = 0.0;
  if (const auto* coh = std::get_if<CoherentField>(&cfg.field)) {
    nbar = coh->alpha * coh->alpha;
    with_approx = nbar > 1.0;
  }
  JxCoefficients jx{};
  if (with_approx) jx = jx_coefficients(cfg.atoms, cfg.custom_atoms);

  std::vector<TraceRow> rows;
  for (double t = 0.0; t <= tmax + 1e-9; t += dt) {
    TCMState st = evolve(init, t);
    BipartiteTangles bt = bipartite_tangles(st);
    TraceRow row;
    row.t = t;
    row.inversion = atomic_inversion(st);
    row.tau_field_ens = bt.field_ensemble;
    row.tau_atom_rest = bt.atom_remainder;
    row.tau_atom_atom = bt.atom_atom;
    row.tau_atom_field = bt.atom_field;
    row.tau_residual = i_residual_tangle(bt);
    row.tau_approx = with_approx
                         ? approx_field_ensemble_tangle(jx, nbar, t, cfg.g)
                         : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qic::tcm
