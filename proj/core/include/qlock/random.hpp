#pragma once

// Seeded random generation of states, unitaries and distributions.
//
// All routines draw from std::mt19937_64 passed by the caller; there is no
// shared generator state. Complex Gaussian entries use independent standard
// normal real and imaginary parts.

#include <cstdint>
#include <random>
#include <vector>

#include "qlock/qmath.hpp"

namespace qlock {

using Rng = std::mt19937_64;

/// d x d matrix of i.i.d. complex standard normals.
ComplexMatrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(int d, Rng& rng);

/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(int d, Rng& rng);

/// Uniformly distributed unit vector in C^d.
ComplexVector random_unit_vector(int d, Rng& rng);

/// Point drawn from the flat (Dirichlet(1,...,1)) distribution on the simplex.
std::vector<double> random_simplex(int n, Rng& rng);

/// Joint distribution with the given shape, table drawn from the flat simplex.
JointDistribution random_joint(std::vector<int> shape, Rng& rng);

}  // namespace qlock
