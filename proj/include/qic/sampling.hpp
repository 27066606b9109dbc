#pragma once

#include "qic/densecore.hpp"

#include <random>

namespace qic {

using Rng = std::mt19937_64;

// Haar-random pure state: normalized vector of complex normals.
PureStateVector haar_random_pure(const std::vector<Index>& dims, Rng& rng);

// Haar-random unitary via QR of a complex Gaussian matrix.
Matrix haar_random_unitary(Index d, Rng& rng);

// Random density matrix of the given rank: partial trace of a Haar-random
// pure state on dims (x) [rank].
ComplexMatrix random_density_matrix(const std::vector<Index>& dims, Index rank,
                                    Rng& rng);

// Random Hermitian matrix with standard-normal entries.
ComplexMatrix random_hermitian(Index d, Rng& rng);

}  // namespace qic
