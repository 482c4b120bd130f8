#include "qlock/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qlock/error.hpp"
#include "qlock/random.hpp"

namespace qlock {

CQEnsemble::CQEnsemble(std::vector<int> labels, ProbabilityVector probs,
                       std::vector<DensityMatrix> states)
    : labels_(std::move(labels)), probs_(std::move(probs)), states_(std::move(states)) {
  if (states_.empty()) throw InvariantError("CQEnsemble: no letters");
  if (labels_.size() != states_.size() || probs_.size() != states_.size()) {
    throw InvariantError("CQEnsemble: labels, probs and states differ in length");
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) {
      throw DimensionError("CQEnsemble: states differ in dimension");
    }
  }
}

DensityMatrix CQEnsemble::average_state() const {
  ComplexMatrix avg = ComplexMatrix::Zero(dim_b(), dim_b());
  for (int a = 0; a < size(); ++a) avg += probs_[a] * states_[a].matrix();
  return DensityMatrix(std::move(avg));
}

std::string_view to_string(BasisFamily family) {
  return family == BasisFamily::HadamardTensor ? "hadamard" : "fourier";
}

BasisFamily basis_family_from_string(std::string_view name) {
  if (name == "hadamard") return BasisFamily::HadamardTensor;
  if (name == "fourier") return BasisFamily::Fourier;
  throw InputError("unknown basis family '" + std::string(name) + "'");
}

LockingInstance::LockingInstance(int m, int key_size, std::vector<ComplexMatrix> basis_unitaries,
                                 BasisFamily family)
    : m_(m), key_size_(key_size), unitaries_(std::move(basis_unitaries)), family_(family) {
  if (m_ < 1 || m_ > 6) throw LimitError("locking instance: m must be in [1, 6]");
  if (key_size_ != 1) throw LimitError("locking instance: only a one-bit key is supported");
  if (num_keys() != (1 << key_size_)) {
    throw InvariantError("locking instance: need one basis per key value");
  }
  const int d = dim();
  for (const auto& u : unitaries_) {
    if (u.rows() != d || u.cols() != d) throw DimensionError("locking instance: basis has wrong dimension");
    if (unitarity_residual(u) > kDefaultTolerances.unitarity) {
      throw InvariantError("locking instance: basis is not unitary");
    }
  }
  if (max_abs(unitaries_.front() - ComplexMatrix::Identity(d, d)) > kDefaultTolerances.unitarity) {
    throw InvariantError("locking instance: U_0 must be the identity");
  }
  for (int j = 0; j < num_keys(); ++j) {
    for (int k = j + 1; k < num_keys(); ++k) {
      if (!mub_check(unitaries_[j], unitaries_[k])) {
        throw InvariantError("locking instance: bases are not mutually unbiased");
      }
    }
  }
}

DensityMatrix cq_to_density(const CQEnsemble& ens) {
  const int n = ens.size();
  const int d = ens.dim_b();
  ComplexMatrix rho = ComplexMatrix::Zero(n * d, n * d);
  for (int a = 0; a < n; ++a) {
    rho.block(a * d, a * d, d, d) = ens.probs()[a] * ens.states()[a].matrix();
  }
  return DensityMatrix(std::move(rho));
}

ComplexMatrix fourier_matrix(int d) {
  if (d < 2) throw DimensionError("fourier_matrix: d must be at least 2");
  ComplexMatrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // Reduce the exponent first so large jk does not lose phase accuracy.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      f(j, k) = std::polar(norm, angle);
    }
  }
  return f;
}

ComplexMatrix hadamard_tensor(int m) {
  if (m < 1) throw DimensionError("hadamard_tensor: m must be positive");
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  ComplexMatrix out = h;
  for (int i = 1; i < m; ++i) out = kron(out, h);
  return out;
}

bool mub_check(const ComplexMatrix& u, const ComplexMatrix& v, double tol) {
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows()) {
    throw DimensionError("mub_check: dimension mismatch");
  }
  const double target = 1.0 / static_cast<double>(u.rows());
  const ComplexMatrix overlap = u.adjoint() * v;
  for (Eigen::Index i = 0; i < overlap.rows(); ++i) {
    for (Eigen::Index j = 0; j < overlap.cols(); ++j) {
      if (std::abs(std::norm(overlap(i, j)) - target) > tol) return false;
    }
  }
  return true;
}

LockingSetup build_locking_state(int m, BasisFamily family) {
  if (m < 1 || m > 6) throw LimitError("build_locking_state: m must be in [1, 6]");
  const int d = 1 << m;
  std::vector<ComplexMatrix> bases{
      ComplexMatrix::Identity(d, d),
      family == BasisFamily::HadamardTensor ? hadamard_tensor(m) : fourier_matrix(d)};
  LockingInstance instance(m, 1, bases, family);

  const int n = 2 * d;
  std::vector<int> labels;
  std::vector<DensityMatrix> states;
  labels.reserve(n);
  states.reserve(n);
  for (int a = 0; a < d; ++a) {
    for (int k = 0; k < 2; ++k) {
      labels.push_back(locking_label(a, k));
      const ComplexVector psi = bases[k].col(a);
      states.push_back(DensityMatrix::pure(psi));
    }
  }
  CQEnsemble ensemble(std::move(labels), ProbabilityVector::uniform(n), std::move(states));
  return {std::move(instance), std::move(ensemble)};
}

CQEnsemble random_cq_ensemble(int n_letters, int dim_b, Purity purity, std::uint64_t seed) {
  if (n_letters < 1) throw DimensionError("random_cq_ensemble: need at least one letter");
  if (dim_b < 2) throw DimensionError("random_cq_ensemble: dim_b must be at least 2");
  Rng rng(seed);
  std::vector<double> probs = random_simplex(n_letters, rng);
  std::vector<int> labels;
  std::vector<DensityMatrix> states;
  for (int a = 0; a < n_letters; ++a) {
    labels.push_back(a);
    if (purity == Purity::Pure) {
      states.push_back(DensityMatrix::pure(random_unit_vector(dim_b, rng)));
    } else {
      const ComplexMatrix g = ginibre(dim_b, dim_b, rng);
      ComplexMatrix w = g * g.adjoint();
      w = (w + w.adjoint()) / 2.0;
      w /= w.trace().real();
      states.emplace_back(std::move(w));
    }
  }
  return CQEnsemble(std::move(labels), ProbabilityVector(std::move(probs)), std::move(states));
}

CQEnsemble orthogonal_ensemble(int n) {
  if (n < 1) throw DimensionError("orthogonal_ensemble: need at least one letter");
  const int d = std::max(n, 2);
  std::vector<int> labels;
  std::vector<DensityMatrix> states;
  for (int a = 0; a < n; ++a) {
    labels.push_back(a);
    states.push_back(DensityMatrix::basis_state(d, a));
  }
  return CQEnsemble(std::move(labels), ProbabilityVector::uniform(n), std::move(states));
}

CQEnsemble two_state_ensemble() {
  ComplexVector zero(2), plus(2);
  zero << 1.0, 0.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return CQEnsemble({0, 1}, ProbabilityVector::uniform(2),
                    {DensityMatrix::pure(zero), DensityMatrix::pure(plus)});
}

CQEnsemble conjugate(const CQEnsemble& ens, const ComplexMatrix& v) {
  if (v.rows() != ens.dim_b() || v.cols() != ens.dim_b()) {
    throw DimensionError("conjugate: unitary has wrong dimension");
  }
  std::vector<DensityMatrix> states;
  for (const auto& s : ens.states()) {
    ComplexMatrix c = v * s.matrix() * v.adjoint();
    c = (c + c.adjoint()) / 2.0;
    states.emplace_back(std::move(c));
  }
  return CQEnsemble(ens.labels(), ens.probs(), std::move(states));
}

}  // namespace qlock
