#include "qlock/random.hpp"

#include <cmath>

namespace qlock {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_hermitian(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

ComplexVector random_unit_vector(int d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

std::vector<double> random_simplex(int n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    x = expo(rng);
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

JointDistribution random_joint(std::vector<int> shape, Rng& rng) {
  int size = 1;
  for (int n : shape) size *= n;
  return JointDistribution(std::move(shape), random_simplex(size, rng));
}

}  // namespace qlock
