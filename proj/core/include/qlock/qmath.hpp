#pragma once

// Dense complex linear algebra and the entropy / information functionals
// shared by every other part of the library. All information quantities are
// in bits.
//
// Layout conventions: matrices are indexed (row, col); in a tensor product
// A (x) B the composite index is a * dim_b + b, i.e. subsystem A is major.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qlock/tolerances.hpp"

namespace qlock {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

/// Largest absolute entry of `m`.
double max_abs(const ComplexMatrix& m);

/// max |m_ij - conj(m_ji)|; requires a square matrix.
double hermiticity_residual(const ComplexMatrix& m);

/// ||U U^dagger - I||_max; requires a square matrix.
double unitarity_residual(const ComplexMatrix& u);

/// Hermitian, positive semidefinite, unit-trace matrix.
///
/// Construction validates the invariants against the given tolerances and
/// throws InvariantError on violation. Instances are immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m,
                         const Tolerances& tol = kDefaultTolerances);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix basis_state(int dim, int index);
  /// |psi><psi| for a unit vector psi.
  static DensityMatrix pure(const ComplexVector& psi);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Nonnegative reals summing to one.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs,
                             const Tolerances& tol = kDefaultTolerances);

  static ProbabilityVector uniform(std::size_t n);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }

 private:
  std::vector<double> p_;
};

/// Joint probability table over two or three classical variables.
///
/// The table is stored row-major: the last variable varies fastest.
class JointDistribution {
 public:
  JointDistribution(std::vector<int> shape, std::vector<double> table,
                    const Tolerances& tol = kDefaultTolerances);

  /// Normalizes a table of counts; the total must be positive.
  static JointDistribution from_counts(std::vector<int> shape,
                                       std::span<const std::uint64_t> counts);

  int rank() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  std::span<const double> table() const { return table_; }

  double at(int i, int j) const;
  double at(int i, int j, int k) const;

  /// Distribution of a single variable.
  ProbabilityVector marginal(int var) const;

  /// Flattened marginal over the listed variables (in the listed order).
  std::vector<double> marginal_table(std::span<const int> vars) const;

  /// Merges variables into composite ones, e.g. {{0}, {1, 2}} turns
  /// p(a, b, k) into p(a, (b, k)). Each group must be non-empty; groups must
  /// partition the variables and there must be two or three of them.
  JointDistribution regroup(const std::vector<std::vector<int>>& groups) const;

 private:
  std::vector<int> shape_;
  std::vector<double> table_;
};

// ---------------------------------------------------------------------------
// Operators

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Kronecker product with a's index major.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced state on `keep`. Throws DimensionError("bad factorization") when
/// rho.dim() != dim_a * dim_b.
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Subsystem keep);

/// Same contraction on an arbitrary square operator (no validation of the
/// result).
ComplexMatrix partial_trace_operator(const ComplexMatrix& m, int dim_a,
                                     int dim_b, Subsystem keep);

struct Eigensystem {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors
};

/// Eigendecomposition of a Hermitian matrix. Throws InvariantError if `m` is
/// not square or not Hermitian within `tol.hermiticity`.
Eigensystem eig_hermitian(const ComplexMatrix& m,
                          const Tolerances& tol = kDefaultTolerances);

// ---------------------------------------------------------------------------
// Entropies and information quantities (bits)

/// -sum x log2 x over the given weights; entries below the cutoff are 0.
/// Entries in [-psd, 0) count as 0.
double entropy_of_weights(std::span<const double> weights,
                          const Tolerances& tol = kDefaultTolerances);

double von_neumann_entropy(const DensityMatrix& rho,
                           const Tolerances& tol = kDefaultTolerances);

double shannon_entropy(const ProbabilityVector& p);

/// D(p || q). Throws InvariantError("divergence infinite") if p is not
/// absolutely continuous with respect to q.
double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& q);

/// I(A;B) = H(A) + H(B) - H(A,B) of a two-variable joint.
double classical_mutual_information(const JointDistribution& j);

/// H(A|B) = H(A,B) - H(B) of a two-variable joint.
double classical_conditional_entropy(const JointDistribution& j);

/// H(A|B) = sum_b p(b) H(A|B=b); the averaged form of the same quantity.
double classical_conditional_entropy_averaged(const JointDistribution& j);

/// I(A;K|B) of a three-variable joint ordered (A, B, K).
double conditional_mutual_information(const JointDistribution& j);

/// S(A) + S(B) - S(A,B).
double quantum_mutual_information(const DensityMatrix& rho, int dim_a,
                                  int dim_b);

/// S(A,B) - S(B); negative for entangled inputs.
double quantum_conditional_entropy(const DensityMatrix& rho, int dim_a,
                                   int dim_b);

}  // namespace qlock
