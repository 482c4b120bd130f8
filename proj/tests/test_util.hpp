#pragma once

#include <cmath>

#include "qlock/qmath.hpp"
#include "qlock/random.hpp"

namespace qlock::testing {

inline DensityMatrix bell_state() {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(phi);
}

inline DensityMatrix random_density(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix w = g * g.adjoint();
  w = (w + w.adjoint()) / 2.0;
  return DensityMatrix(w / w.trace().real());
}

inline DensityMatrix ket(int d, int i) { return DensityMatrix::basis_state(d, i); }

}  // namespace qlock::testing
