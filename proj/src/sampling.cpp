#include "qic/sampling.hpp"

namespace qic {

PureStateVector haar_random_pure(const std::vector<Index>& dims, Rng& rng) {
  Index dim = 1;
  for (Index d : dims) dim *= d;
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  v /= v.norm();
  return PureStateVector(std::move(v), dims);
}

Matrix haar_random_unitary(Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the diagonal phases so the distribution is Haar.
  for (Index i = 0; i < d; ++i) {
    Complex rd = r(i, i);
    q.col(i) *= std::abs(rd) > 0 ? rd / std::abs(rd) : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix random_density_matrix(const std::vector<Index>& dims, Index rank,
                                    Rng& rng) {
  std::vector<Index> full = dims;
  full.push_back(rank);
  PureStateVector psi = haar_random_pure(full, rng);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < dims.size(); ++i) keep.push_back(i);
  return partial_trace_keep(psi.projector(), keep);
}

ComplexMatrix random_hermitian(Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Matrix h = 0.5 * (g + g.adjoint());
  return ComplexMatrix(std::move(h));
}

}  // namespace qic
