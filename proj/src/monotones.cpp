#include "qic/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qic {

namespace {

// A monotone may dip slightly below zero from roundoff; anything worse than
// this signals a logic or conditioning fault and is surfaced.
constexpr double kNegClamp = 1e-12;

double clamp_monotone(double v, const char* where) {
  if (v >= 0.0) return v;
  if (v >= -kNegClamp) return 0.0;
  throw std::runtime_error(std::string(where) + ": monotone evaluated to " +
                           std::to_string(v));
}

const Matrix& sigma_y_pair() {
  static const Matrix yy = [] {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 3) = -1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 0) = -1;
    return m;
  }();
  return yy;
}

}  // namespace

double von_neumann_entropy(const ComplexMatrix& rho) {
  require_density(rho, "von_neumann_entropy");
  Spectrum s = hermitian_spectrum(rho);
  double acc = 0.0;
  for (double lam : s.values)
    if (lam > 0.0) acc -= lam * std::log2(lam);
  return acc;
}

double entropy_of_entanglement(const PureStateVector& psi) {
  Spectrum c = schmidt_coefficients(psi);
  double acc = 0.0;
  for (double ci : c.values) {
    double p = ci * ci;
    if (p > 0.0) acc -= p * std::log2(p);
  }
  return acc;
}

ComplexMatrix universal_inversion(const ComplexMatrix& m) {
  if (!m.is_bipartite())
    throw std::invalid_argument("universal_inversion: bipartite dims are required");
  const Index da = m.dims[0], db = m.dims[1];
  ComplexMatrix ma = partial_trace_keep(m, {0});
  ComplexMatrix mb = partial_trace_keep(m, {1});
  Matrix out = m.mat.trace() * Matrix::Identity(da * db, da * db) -
               tensor(ma, identity_matrix(db)).mat -
               tensor(identity_matrix(da), mb).mat + m.mat;
  return ComplexMatrix(std::move(out), m.dims);
}

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  if (!rho.is_bipartite())
    throw std::invalid_argument("spin_flip: bipartite dims are required");
  if (rho.dims[0] == 2 && rho.dims[1] == 2) {
    const Matrix& yy = sigma_y_pair();
    return ComplexMatrix(yy * rho.mat.conjugate() * yy, rho.dims);
  }
  return universal_inversion(rho);
}

MonotoneValue concurrence_two_qubit(const ComplexMatrix& rho) {
  if (rho.dims != std::vector<Index>{2, 2})
    throw std::invalid_argument("concurrence_two_qubit: dims [2,2] required");
  require_density(rho, "concurrence_two_qubit");
  const Matrix& yy = sigma_y_pair();
  Matrix prod = rho.mat * (yy * rho.mat.conjugate() * yy);

  Eigen::ComplexEigenSolver<Matrix> es(prod, false);
  std::vector<double> lams;
  for (Index i = 0; i < 4; ++i) {
    Complex e = es.eigenvalues()(i);
    if (std::abs(e.imag()) > 1e-9)
      throw std::runtime_error("concurrence_two_qubit: complex eigenvalue of rho*rho~");
    double re = e.real();
    if (re < -1e-9)
      throw std::runtime_error("concurrence_two_qubit: negative eigenvalue of rho*rho~");
    if (re < kChopTol) re = 0.0;
    lams.push_back(std::sqrt(re));
  }
  std::sort(lams.begin(), lams.end(), std::greater<>());
  double c = std::max(0.0, lams[0] - lams[1] - lams[2] - lams[3]);
  return {c, Measure::Concurrence2};
}

MonotoneValue tangle_two_qubit(const ComplexMatrix& rho) {
  double c = concurrence_two_qubit(rho).value;
  return {c * c, Measure::Tangle2};
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof_from_concurrence(double c) {
  double arg = 1.0 - c * c;
  arg = std::max(arg, 0.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(arg)));
}

double eof_two_qubit(const ComplexMatrix& rho) {
  return eof_from_concurrence(concurrence_two_qubit(rho).value);
}

MonotoneValue i_tangle_pure(const PureStateVector& psi, double scale) {
  if (psi.dims.size() != 2)
    throw std::invalid_argument("i_tangle_pure: bipartite dims are required");
  ComplexMatrix rho_a = partial_trace_keep(psi.projector(), {0});
  double purity = (rho_a.mat * rho_a.mat).trace().real();
  double v = 2.0 * scale * (1.0 - purity);
  return {clamp_monotone(v, "i_tangle_pure"), Measure::ITangle};
}

Rank2Tangle i_tangle_rank2_detail(const ComplexMatrix& rho) {
  if (!rho.is_bipartite())
    throw std::invalid_argument("i_tangle_rank2: bipartite dims are required");
  require_density(rho, "i_tangle_rank2");

  Eigensystem es = hermitian_eigensystem(rho);
  for (std::size_t i = 2; i < es.values.size(); ++i)
    if (es.values[i] > kRankTol)
      throw std::invalid_argument("i_tangle_rank2: rank exceeds two");
  if (rho.rows() < 2)
    throw std::invalid_argument("i_tangle_rank2: dimension too small");

  // gamma_ij = |v_i><v_j| over the two support eigenvectors; tilde applies the
  // universal inversion to the adjoint, following Osborne's construction.
  ComplexMatrix gamma[2][2];
  ComplexMatrix gtilde[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix g = es.vectors.col(i) * es.vectors.col(j).adjoint();
      gamma[i][j] = ComplexMatrix(g, rho.dims);
      gtilde[i][j] = universal_inversion(ComplexMatrix(g.adjoint().eval(), rho.dims));
    }

  Complex T[2][2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          T[i][j][k][l] = (gamma[i][j].mat * gtilde[k][l].mat).trace();

  // Real symmetric 3x3 M matrix; element combinations follow the reference
  // construction of the rank-2 tangle.
  const Complex I(0.0, 1.0);
  auto t = [&](int a, int b, int c, int d) { return T[a - 1][b - 1][c - 1][d - 1]; };
  Eigen::Matrix3cd M;
  M(0, 0) = 0.25 * t(1, 2, 2, 1) + 0.5 * t(1, 1, 2, 2) + 0.25 * t(2, 1, 1, 2);
  M(0, 1) = M(1, 0) = 0.25 * I * (t(1, 2, 2, 1) - t(2, 1, 1, 2));
  M(0, 2) = M(2, 0) =
      0.25 * (t(1, 1, 2, 1) - t(2, 1, 2, 2) + t(1, 1, 1, 2) - t(1, 2, 2, 2));
  M(1, 1) = -0.25 * t(1, 2, 2, 1) + 0.5 * t(1, 1, 2, 2) - 0.25 * t(2, 1, 1, 2);
  M(1, 2) = M(2, 1) =
      0.25 * I * (t(1, 1, 2, 1) - t(1, 1, 1, 2) + t(2, 1, 2, 2) - t(1, 2, 2, 2));
  M(2, 2) = 0.25 * t(1, 1, 1, 1) - 0.5 * t(1, 1, 2, 2) + 0.25 * t(2, 2, 2, 2);
  if (M.imag().cwiseAbs().maxCoeff() > 1e-8)
    throw std::runtime_error("i_tangle_rank2: M matrix is not real");

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> ms(M.real());

  Rank2Tangle out;
  out.lambda_min = ms.eigenvalues().minCoeff();
  out.overlap = (rho.mat * universal_inversion(rho).mat).trace().real();
  out.purity = (rho.mat * rho.mat).trace().real();
  double v = out.overlap + 2.0 * out.lambda_min * (1.0 - out.purity);
  out.value = clamp_monotone(v, "i_tangle_rank2");
  return out;
}

MonotoneValue i_tangle_rank2(const ComplexMatrix& rho) {
  return {i_tangle_rank2_detail(rho).value, Measure::ITangle};
}

MonotoneValue negativity(const ComplexMatrix& rho) {
  if (!rho.is_bipartite())
    throw std::invalid_argument("negativity: bipartite dims are required");
  Spectrum s = hermitian_spectrum(partial_transpose(rho, 0));
  double acc = 0.0;
  for (double v : s.values)
    if (v < 0.0) acc += -v;
  return {acc, Measure::Negativity};
}

MonotoneValue pt_monotone(const ComplexMatrix& rho, double p, PtMode mode) {
  if (p < 1.0) throw std::invalid_argument("pt_monotone: p must be >= 1");
  if (!rho.is_bipartite())
    throw std::invalid_argument("pt_monotone: bipartite dims are required");
  Spectrum s = hermitian_spectrum(partial_transpose(rho, 0));
  double acc = 0.0;
  for (double v : s.values)
    if (v < 0.0) acc += std::pow(-v, p);
  if (mode == PtMode::root) return {std::pow(acc, 1.0 / p), Measure::Mp};
  return {acc, Measure::Np};
}

LowerBounds lower_bounds(const ComplexMatrix& rho) {
  double m2 = pt_monotone(rho, 2.0, PtMode::root).value;
  LowerBounds b;
  b.l_c = 2.0 * m2;
  b.l_tau = b.l_c * b.l_c;
  return b;
}

IsotropicFamily IsotropicFamily::from_omega(Index d, double omega) {
  if (d < 2) throw std::invalid_argument("IsotropicFamily: d must be >= 2");
  if (omega < 0.0 || omega > 1.0)
    throw std::invalid_argument("IsotropicFamily: omega must lie in [0,1]");
  IsotropicFamily f;
  f.d = d;
  f.omega = omega;
  f.fidelity = (omega * (static_cast<double>(d * d) - 1.0) + 1.0) /
               static_cast<double>(d * d);
  return f;
}

IsotropicFamily IsotropicFamily::from_fidelity(Index d, double fidelity) {
  if (d < 2) throw std::invalid_argument("IsotropicFamily: d must be >= 2");
  double omega = (static_cast<double>(d * d) * fidelity - 1.0) /
                 (static_cast<double>(d * d) - 1.0);
  if (omega < -1e-12 || omega > 1.0 + 1e-12)
    throw std::invalid_argument("IsotropicFamily: fidelity out of range");
  return from_omega(d, std::clamp(omega, 0.0, 1.0));
}

PureStateVector max_entangled_state(Index d) {
  Vector v = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureStateVector(std::move(v), {d, d});
}

ComplexMatrix isotropic_state(const IsotropicFamily& fam) {
  const Index d = fam.d;
  Matrix id = Matrix::Identity(d * d, d * d);
  Matrix proj = max_entangled_state(d).projector().mat;
  Matrix rho = (1.0 - fam.omega) / static_cast<double>(d * d) * id + fam.omega * proj;
  return ComplexMatrix(std::move(rho), {d, d});
}

double isotropic_lc_analytic(const IsotropicFamily& fam) {
  const double d = static_cast<double>(fam.d);
  if (fam.omega <= 1.0 / (d + 1.0)) return 0.0;
  return (2.0 / d) * ((fam.omega - 1.0) / d + fam.omega) * std::sqrt(d * (d - 1.0) / 2.0);
}

}  // namespace qic
