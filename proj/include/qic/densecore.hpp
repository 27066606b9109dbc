#pragma once

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Shared numerical conventions.
constexpr double kHermTol = 1e-9;   // hermiticity check, relative to max |entry|
constexpr double kChopTol = 1e-10;  // eigenvalues below this magnitude report as 0
constexpr double kRankTol = 1e-9;   // eigenvalues below this do not count toward rank

/// Dense complex matrix carrying optional tensor-factor metadata. When dims is
/// nonempty the matrix is an operator on the product space with the listed
/// subsystem dimensions (their product equals the matrix dimension).
struct ComplexMatrix {
  Matrix mat;
  std::vector<Index> dims;

  ComplexMatrix() = default;
  explicit ComplexMatrix(Matrix m) : mat(std::move(m)) {}
  ComplexMatrix(Matrix m, std::vector<Index> d);

  Index rows() const { return mat.rows(); }
  Index cols() const { return mat.cols(); }
  bool has_dims() const { return !dims.empty(); }
  bool is_bipartite() const { return dims.size() == 2; }
};

/// Pure state amplitudes with subsystem-dimension metadata.
struct PureStateVector {
  Vector amps;
  std::vector<Index> dims;

  PureStateVector() = default;
  PureStateVector(Vector a, std::vector<Index> d);

  Index size() const { return amps.size(); }
  double norm() const { return amps.norm(); }
  ComplexMatrix projector() const;  // |psi><psi| with the same dims
};

/// Real values sorted descending (eigenvalues, Schmidt coefficients, ...).
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double sum() const;
};

bool is_hermitian(const Matrix& m, double tol = kHermTol);
bool is_density_matrix(const ComplexMatrix& rho, double tol = kHermTol);
void require_density(const ComplexMatrix& rho, const char* where);

ComplexMatrix identity_matrix(Index n);

// Kronecker product; dims metadata concatenated.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
PureStateVector tensor(const PureStateVector& a, const PureStateVector& b);

// Marginal on one subsystem, tracing out the rest. Requires dims metadata.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t keep);

// Marginal on a set of subsystems, given in ascending order. keep may be empty
// (full trace, returning a 1x1 matrix).
ComplexMatrix partial_trace_keep(const ComplexMatrix& rho,
                                 const std::vector<std::size_t>& keep);

// Transpose of one factor of a bipartite operator.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t subsystem);

// Eigenvalues of a Hermitian matrix, descending, chopped at kChopTol.
Spectrum hermitian_spectrum(const ComplexMatrix& h);

/// Eigen-decomposition with deterministic ordering and phases: values sorted
/// descending, each eigenvector scaled so its largest-magnitude component
/// (first such, on ties) is real positive.
struct Eigensystem {
  Spectrum values;
  Matrix vectors;  // column i pairs with values[i]
};
Eigensystem hermitian_eigensystem(const ComplexMatrix& h);

// Sum of |eigenvalue| over the spectrum of a Hermitian matrix.
double trace_norm(const ComplexMatrix& h);

// Schmidt coefficients of a bipartite pure state: nonnegative, descending,
// zeros below kChopTol dropped.
Spectrum schmidt_coefficients(const PureStateVector& psi);

enum class MajorizationMode { strict, weak };

// x majorized by y: prefix-sum dominance, plus total-sum equality in strict
// mode. Comparisons allow slack tol.
bool majorization_compare(const Spectrum& x, const Spectrum& y,
                          MajorizationMode mode, double tol = 1e-9);

// --- State file format shared by the CLI -----------------------------------
//
//   dims: [d1,d2,...]
//   entries: [[re,im],...]        (row-major; vectors use a single row)

using LoadedState = std::variant<ComplexMatrix, PureStateVector>;

LoadedState load_state(std::istream& in);
LoadedState load_state_file(const std::string& path);
void save_state(std::ostream& out, const ComplexMatrix& m);
void save_state(std::ostream& out, const PureStateVector& v);

}  // namespace qic
