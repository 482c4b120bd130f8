#include "qlock/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qlock/error.hpp"

namespace qlock {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
  }
}

// Shannon entropy of a nonnegative table; exact zeros contribute nothing.
double shannon_of(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

std::size_t product(const std::vector<int>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         [](std::size_t acc, int n) { return acc * static_cast<std::size_t>(n); });
}

void validate_probabilities(std::span<const double> p, double sum_tol, const char* what) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvariantError(std::string(what) + ": entries must be finite and nonnegative");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > sum_tol) {
    throw InvariantError(std::string(what) + ": entries must sum to 1");
  }
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix& m) {
  require_square(m, "hermiticity_residual");
  return max_abs(m - m.adjoint());
}

double unitarity_residual(const ComplexMatrix& u) {
  require_square(u, "unitarity_residual");
  return max_abs(u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols()));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  if (hermiticity_residual(m_) > tol.hermiticity) {
    throw InvariantError("DensityMatrix: not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > tol.trace) {
    throw InvariantError("DensityMatrix: trace is not 1");
  }
  const Eigensystem es = eig_hermitian(m_, tol);
  if (es.values(0) < -tol.psd) {
    throw InvariantError("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw DimensionError("maximally_mixed: dim must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw DimensionError("basis_state: index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  if (psi.size() == 0) throw DimensionError("pure: empty vector");
  return DensityMatrix(psi * psi.adjoint());
}

// ---------------------------------------------------------------------------

ProbabilityVector::ProbabilityVector(std::vector<double> probs, const Tolerances& tol)
    : p_(std::move(probs)) {
  if (p_.empty()) throw InvariantError("ProbabilityVector: empty");
  validate_probabilities(p_, tol.probability_sum, "ProbabilityVector");
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// ---------------------------------------------------------------------------

JointDistribution::JointDistribution(std::vector<int> shape, std::vector<double> table,
                                     const Tolerances& tol)
    : shape_(std::move(shape)), table_(std::move(table)) {
  if (shape_.size() != 2 && shape_.size() != 3) {
    throw DimensionError("JointDistribution: needs two or three variables");
  }
  for (int n : shape_) {
    if (n < 1) throw DimensionError("JointDistribution: alphabet sizes must be positive");
  }
  if (table_.size() != product(shape_)) {
    throw DimensionError("JointDistribution: table size does not match shape");
  }
  validate_probabilities(table_, tol.probability_sum, "JointDistribution");
}

JointDistribution JointDistribution::from_counts(std::vector<int> shape,
                                                 std::span<const std::uint64_t> counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0,
                                       [](double acc, std::uint64_t c) { return acc + static_cast<double>(c); });
  if (!(total > 0.0)) throw InvariantError("from_counts: no observations");
  std::vector<double> table(counts.size());
  std::transform(counts.begin(), counts.end(), table.begin(),
                 [total](std::uint64_t c) { return static_cast<double>(c) / total; });
  return JointDistribution(std::move(shape), std::move(table));
}

double JointDistribution::at(int i, int j) const {
  if (rank() != 2) throw DimensionError("JointDistribution::at: rank mismatch");
  return table_[static_cast<std::size_t>(i) * shape_[1] + j];
}

double JointDistribution::at(int i, int j, int k) const {
  if (rank() != 3) throw DimensionError("JointDistribution::at: rank mismatch");
  return table_[(static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k];
}

std::vector<double> JointDistribution::marginal_table(std::span<const int> vars) const {
  std::vector<int> sub_shape;
  for (int v : vars) {
    if (v < 0 || v >= rank()) throw DimensionError("marginal_table: variable out of range");
    sub_shape.push_back(shape_[v]);
  }
  std::vector<double> out(product(sub_shape), 0.0);
  std::vector<int> idx(shape_.size(), 0);
  for (double p : table_) {
    std::size_t flat = 0;
    for (std::size_t n = 0; n < vars.size(); ++n) flat = flat * sub_shape[n] + idx[vars[n]];
    out[flat] += p;
    for (int d = rank() - 1; d >= 0; --d) {
      if (++idx[d] < shape_[d]) break;
      idx[d] = 0;
    }
  }
  return out;
}

ProbabilityVector JointDistribution::marginal(int var) const {
  const int vars[] = {var};
  return ProbabilityVector(marginal_table(vars));
}

JointDistribution JointDistribution::regroup(const std::vector<std::vector<int>>& groups) const {
  if (groups.size() != 2 && groups.size() != 3) {
    throw DimensionError("regroup: need two or three groups");
  }
  std::vector<int> order;
  std::vector<int> new_shape;
  for (const auto& g : groups) {
    if (g.empty()) throw DimensionError("regroup: empty group");
    int size = 1;
    for (int v : g) {
      order.push_back(v);
      size *= shape_.at(v);
    }
    new_shape.push_back(size);
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int n = 0; n < rank(); ++n) {
    if (static_cast<int>(sorted.size()) != rank() || sorted[n] != n) {
      throw DimensionError("regroup: groups must partition the variables");
    }
  }
  // Marginalizing over all variables in a new order is a permutation.
  return JointDistribution(std::move(new_shape), marginal_table(order));
}

// ---------------------------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace_operator(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw DimensionError("bad factorization");
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i) {
      for (int j = 0; j < dim_a; ++j) {
        Complex s = 0.0;
        for (int b = 0; b < dim_b; ++b) s += m(i * dim_b + b, j * dim_b + b);
        out(i, j) = s;
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a) {
    out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b, Subsystem keep) {
  return DensityMatrix(partial_trace_operator(rho.matrix(), dim_a, dim_b, keep));
}

Eigensystem eig_hermitian(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvariantError("eig_hermitian: matrix must be square and non-empty");
  }
  if (hermiticity_residual(m) > tol.hermiticity) {
    throw InvariantError("eig_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw InvariantError("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// ---------------------------------------------------------------------------

double entropy_of_weights(std::span<const double> weights, const Tolerances& tol) {
  double h = 0.0;
  for (double w : weights) {
    if (w < 0.0 && w >= -tol.psd) w = 0.0;
    if (w < tol.entropy_cutoff) continue;
    h -= w * std::log2(w);
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
  const RealVector values = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(
                                rho.matrix(), Eigen::EigenvaluesOnly)
                                .eigenvalues();
  return entropy_of_weights(std::span<const double>(values.data(), values.size()), tol);
}

double shannon_entropy(const ProbabilityVector& p) { return shannon_of(p.values()); }

double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw DimensionError("kl_divergence: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw InvariantError("divergence infinite");
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

double classical_mutual_information(const JointDistribution& j) {
  if (j.rank() != 2) throw DimensionError("classical_mutual_information: needs a two-variable joint");
  const auto pa = j.marginal(0);
  const auto pb = j.marginal(1);
  double mi = 0.0;
  for (int a = 0; a < j.shape()[0]; ++a) {
    for (int b = 0; b < j.shape()[1]; ++b) {
      const double p = j.at(a, b);
      if (p > 0.0) mi += p * std::log2(p / (pa[a] * pb[b]));
    }
  }
  return std::max(mi, 0.0);
}

double classical_conditional_entropy(const JointDistribution& j) {
  if (j.rank() != 2) throw DimensionError("classical_conditional_entropy: needs a two-variable joint");
  const int b_only[] = {1};
  return std::max(shannon_of(j.table()) - shannon_of(j.marginal_table(b_only)), 0.0);
}

double classical_conditional_entropy_averaged(const JointDistribution& j) {
  if (j.rank() != 2) throw DimensionError("classical_conditional_entropy: needs a two-variable joint");
  const int na = j.shape()[0];
  const int nb = j.shape()[1];
  double h = 0.0;
  std::vector<double> column(na);
  for (int b = 0; b < nb; ++b) {
    double pb = 0.0;
    for (int a = 0; a < na; ++a) pb += j.at(a, b);
    if (pb <= 0.0) continue;
    for (int a = 0; a < na; ++a) column[a] = j.at(a, b) / pb;
    h += pb * shannon_of(column);
  }
  return h;
}

double conditional_mutual_information(const JointDistribution& j) {
  if (j.rank() != 3) throw DimensionError("conditional_mutual_information: needs a three-variable joint");
  const int ab[] = {0, 1};
  const int bk[] = {1, 2};
  const int b_only[] = {1};
  const auto p_ab = j.marginal_table(ab);
  const auto p_bk = j.marginal_table(bk);
  const auto p_b = j.marginal_table(b_only);
  const int na = j.shape()[0];
  const int nb = j.shape()[1];
  const int nk = j.shape()[2];
  double cmi = 0.0;
  for (int a = 0; a < na; ++a) {
    for (int b = 0; b < nb; ++b) {
      for (int k = 0; k < nk; ++k) {
        const double p = j.at(a, b, k);
        if (p <= 0.0) continue;
        cmi += p * std::log2(p * p_b[b] / (p_ab[a * nb + b] * p_bk[b * nk + k]));
      }
    }
  }
  return std::max(cmi, 0.0);
}

double quantum_mutual_information(const DensityMatrix& rho, int dim_a, int dim_b) {
  const double s_a = von_neumann_entropy(partial_trace(rho, dim_a, dim_b, Subsystem::A));
  const double s_b = von_neumann_entropy(partial_trace(rho, dim_a, dim_b, Subsystem::B));
  return s_a + s_b - von_neumann_entropy(rho);
}

double quantum_conditional_entropy(const DensityMatrix& rho, int dim_a, int dim_b) {
  const double s_b = von_neumann_entropy(partial_trace(rho, dim_a, dim_b, Subsystem::B));
  return von_neumann_entropy(rho) - s_b;
}

}  // namespace qlock
