#include "qic/densecore.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qic {

namespace {

Index product(const std::vector<Index>& dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

}  // namespace

ComplexMatrix::ComplexMatrix(Matrix m, std::vector<Index> d)
    : mat(std::move(m)), dims(std::move(d)) {
  if (mat.rows() != mat.cols())
    throw std::invalid_argument("ComplexMatrix: dims metadata requires a square matrix");
  if (product(dims) != mat.rows())
    throw std::invalid_argument("ComplexMatrix: product of dims must equal matrix dimension");
}

PureStateVector::PureStateVector(Vector a, std::vector<Index> d)
    : amps(std::move(a)), dims(std::move(d)) {
  if (product(dims) != amps.size())
    throw std::invalid_argument("PureStateVector: product of dims must equal length");
  if (std::abs(amps.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("PureStateVector: amplitudes are not normalized");
}

ComplexMatrix PureStateVector::projector() const {
  return ComplexMatrix(amps * amps.adjoint(), dims);
}

double Spectrum::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_density_matrix(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if (!is_hermitian(rho.mat, tol)) return false;
  if (std::abs(rho.mat.trace() - Complex(1.0, 0.0)) > 1e-8) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho.mat + rho.mat.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-8;
}

void require_density(const ComplexMatrix& rho, const char* where) {
  if (!is_density_matrix(rho))
    throw std::invalid_argument(std::string(where) + ": not a valid density matrix");
}

ComplexMatrix identity_matrix(Index n) {
  return ComplexMatrix(Matrix::Identity(n, n), {n});
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a.mat(i, j) * b.mat;
  std::vector<Index> dims;
  if (a.has_dims() && b.has_dims() && a.rows() == a.cols() && b.rows() == b.cols()) {
    dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  }
  if (dims.empty()) return ComplexMatrix(std::move(out));
  return ComplexMatrix(std::move(out), std::move(dims));
}

PureStateVector tensor(const PureStateVector& a, const PureStateVector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a.amps(i) * b.amps;
  std::vector<Index> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  return PureStateVector(std::move(out), std::move(dims));
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t keep) {
  return partial_trace_keep(rho, {keep});
}

ComplexMatrix partial_trace_keep(const ComplexMatrix& rho,
                                 const std::vector<std::size_t>& keep) {
  if (!rho.has_dims())
    throw std::invalid_argument("partial_trace: dims metadata is required");
  const auto& dims = rho.dims;
  const std::size_t n = dims.size();
  for (std::size_t k : keep)
    if (k >= n) throw std::invalid_argument("partial_trace: subsystem index out of range");
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("partial_trace: keep set must be strictly ascending");

  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

  // Row-major strides of the multi-index.
  std::vector<Index> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  std::vector<Index> kept_dims;
  Index out_dim = 1;
  for (std::size_t k : keep) {
    kept_dims.push_back(dims[k]);
    out_dim *= dims[k];
  }
  Index traced_dim = 1;
  for (std::size_t t : traced) traced_dim *= dims[t];

  // Base offset of each kept multi-index and of each traced multi-index.
  auto offsets = [&](const std::vector<std::size_t>& subs) {
    Index count = 1;
    for (std::size_t s : subs) count *= dims[s];
    std::vector<Index> off(static_cast<std::size_t>(count), 0);
    std::vector<Index> idx(subs.size(), 0);
    for (Index c = 0; c < count; ++c) {
      Index o = 0;
      for (std::size_t i = 0; i < subs.size(); ++i) o += idx[i] * stride[subs[i]];
      off[static_cast<std::size_t>(c)] = o;
      for (std::size_t i = subs.size(); i-- > 0;) {
        if (++idx[i] < dims[subs[i]]) break;
        idx[i] = 0;
      }
    }
    return off;
  };
  const auto kept_off = offsets(keep);
  const auto traced_off = offsets(traced);

  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (Index r = 0; r < out_dim; ++r)
    for (Index c = 0; c < out_dim; ++c) {
      Complex acc = 0.0;
      for (Index s = 0; s < traced_dim; ++s)
        acc += rho.mat(kept_off[r] + traced_off[s], kept_off[c] + traced_off[s]);
      out(r, c) = acc;
    }
  if (kept_dims.empty()) kept_dims.push_back(1);
  return ComplexMatrix(std::move(out), std::move(kept_dims));
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t subsystem) {
  if (!rho.is_bipartite())
    throw std::invalid_argument("partial_transpose: bipartite dims are required");
  if (subsystem > 1)
    throw std::invalid_argument("partial_transpose: subsystem must be 0 or 1");
  const Index da = rho.dims[0], db = rho.dims[1];
  Matrix out(rho.rows(), rho.cols());
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < da; ++k)
        for (Index l = 0; l < db; ++l) {
          // <i,j|out|k,l>
          Complex v = (subsystem == 0) ? rho.mat(k * db + j, i * db + l)
                                       : rho.mat(i * db + l, k * db + j);
          out(i * db + j, k * db + l) = v;
        }
  return ComplexMatrix(std::move(out), rho.dims);
}

namespace {

// Descending stable order over Eigen's ascending eigenvalue output.
std::vector<Index> descending_order(const Eigen::VectorXd& vals) {
  std::vector<Index> order(static_cast<std::size_t>(vals.size()));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return vals(a) > vals(b); });
  return order;
}

double chop(double v) { return std::abs(v) < kChopTol ? 0.0 : v; }

}  // namespace

Spectrum hermitian_spectrum(const ComplexMatrix& h) {
  if (!is_hermitian(h.mat))
    throw std::invalid_argument("hermitian_spectrum: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h.mat + h.mat.adjoint()),
                                           Eigen::EigenvaluesOnly);
  Spectrum s;
  const auto order = descending_order(es.eigenvalues());
  s.values.reserve(order.size());
  for (Index i : order) s.values.push_back(chop(es.eigenvalues()(i)));
  return s;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& h) {
  if (!is_hermitian(h.mat))
    throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h.mat + h.mat.adjoint()));
  const auto order = descending_order(es.eigenvalues());

  Eigensystem sys;
  sys.vectors.resize(h.rows(), h.cols());
  sys.values.values.reserve(order.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    sys.values.values.push_back(chop(es.eigenvalues()(order[c])));
    Vector v = es.eigenvectors().col(order[c]);
    // Phase convention: first component of largest magnitude made real positive.
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > best + 1e-15) {
        best = std::abs(v(i));
        pivot = i;
      }
    if (best > 0.0) v *= std::conj(v(pivot)) / std::abs(v(pivot));
    sys.vectors.col(static_cast<Index>(c)) = v;
  }
  return sys;
}

double trace_norm(const ComplexMatrix& h) {
  Spectrum s = hermitian_spectrum(h);
  double acc = 0.0;
  for (double v : s.values) acc += std::abs(v);
  return acc;
}

Spectrum schmidt_coefficients(const PureStateVector& psi) {
  if (psi.dims.size() != 2)
    throw std::invalid_argument("schmidt_coefficients: bipartite dims are required");
  const Index da = psi.dims[0], db = psi.dims[1];
  Matrix m(da, db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j) m(i, j) = psi.amps(i * db + j);
  Eigen::JacobiSVD<Matrix> svd(m);
  Spectrum s;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    double v = svd.singularValues()(i);
    if (v >= kChopTol) s.values.push_back(v);
  }
  return s;
}

bool majorization_compare(const Spectrum& x, const Spectrum& y,
                          MajorizationMode mode, double tol) {
  if (x.size() != y.size())
    throw std::invalid_argument("majorization_compare: length mismatch");
  std::vector<double> xs = x.values, ys = y.values;
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  double px = 0.0, py = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    if (px > py + tol) return false;
  }
  if (mode == MajorizationMode::strict && std::abs(px - py) > tol) return false;
  return true;
}

// --- state file io ----------------------------------------------------------

namespace {

using nlohmann::json;

json parse_field(std::istream& in, const std::string& key) {
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("state file: malformed line '" + line + "'");
    std::string k = line.substr(pos, colon - pos);
    k.erase(k.find_last_not_of(" \t") + 1);
    if (k != key)
      throw std::runtime_error("state file: expected field '" + key + "', got '" + k + "'");
    return json::parse(line.substr(colon + 1));
  }
  throw std::runtime_error("state file: missing field '" + key + "'");
}

}  // namespace

LoadedState load_state(std::istream& in) {
  json jdims = parse_field(in, "dims");
  json jentries = parse_field(in, "entries");
  std::vector<Index> dims;
  for (const auto& d : jdims) dims.push_back(d.get<Index>());
  Index dim = 1;
  for (Index d : dims) dim *= d;

  std::vector<Complex> entries;
  for (const auto& e : jentries) {
    if (!e.is_array() || e.size() != 2)
      throw std::runtime_error("state file: entries must be [re,im] pairs");
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }

  if (static_cast<Index>(entries.size()) == dim) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = entries[static_cast<std::size_t>(i)];
    return PureStateVector(std::move(v), std::move(dims));
  }
  if (static_cast<Index>(entries.size()) == dim * dim) {
    Matrix m(dim, dim);
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j)
        m(i, j) = entries[static_cast<std::size_t>(i * dim + j)];
    return ComplexMatrix(std::move(m), std::move(dims));
  }
  throw std::runtime_error("state file: entry count matches neither a vector nor a matrix");
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  return load_state(in);
}

namespace {

void write_entries(std::ostream& out, const Complex* data, Index count) {
  out << "entries: [";
  for (Index i = 0; i < count; ++i) {
    if (i) out << ",";
    out << "[" << data[i].real() << "," << data[i].imag() << "]";
  }
  out << "]\n";
}

void write_dims(std::ostream& out, const std::vector<Index>& dims) {
  out << "dims: [";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out << ",";
    out << dims[i];
  }
  out << "]\n";
}

}  // namespace

void save_state(std::ostream& out, const ComplexMatrix& m) {
  out.precision(17);
  write_dims(out, m.dims);
  // row-major
  std::vector<Complex> flat;
  flat.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) flat.push_back(m.mat(i, j));
  write_entries(out, flat.data(), static_cast<Index>(flat.size()));
}

void save_state(std::ostream& out, const PureStateVector& v) {
  out.precision(17);
  write_dims(out, v.dims);
  write_entries(out, v.amps.data(), v.amps.size());
}

}  // namespace qic
