#include "qlock/measurement.hpp"

#include <algorithm>

#include "qlock/error.hpp"

namespace qlock {

Povm::Povm(std::vector<ComplexMatrix> elements, const Tolerances& tol)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvariantError("Povm: no elements");
  const auto d = elements_.front().rows();
  if (d == 0) throw DimensionError("Povm: empty element");
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw DimensionError("Povm: elements differ in dimension");
    const Eigensystem es = eig_hermitian(e, tol);
    if (es.values(0) < -tol.psd) throw InvariantError("Povm: element is not positive semidefinite");
    total += e;
  }
  if (max_abs(total - ComplexMatrix::Identity(d, d)) > tol.povm_completeness) {
    throw InvariantError("Povm: elements do not sum to the identity");
  }
}

Povm Povm::from_vectors(const ComplexMatrix& columns, const Tolerances& tol) {
  std::vector<ComplexMatrix> elements;
  elements.reserve(columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    elements.push_back(columns.col(j) * columns.col(j).adjoint());
  }
  Povm povm(std::move(elements), tol);
  povm.vectors_ = columns;
  return povm;
}

Povm Povm::trivial(int dim) {
  if (dim < 1) throw DimensionError("Povm::trivial: dim must be positive");
  return Povm({ComplexMatrix::Identity(dim, dim)});
}

Povm projective_povm(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) throw DimensionError("projective_povm: not square");
  if (unitarity_residual(u) > kDefaultTolerances.unitarity) {
    throw InvariantError("projective_povm: matrix is not unitary");
  }
  return Povm::from_vectors(u);
}

OutcomeAnalysis measure_b(const DensityMatrix& rho_ab, int dim_a, int dim_b, const Povm& povm) {
  if (povm.dim() != dim_b || rho_ab.dim() != dim_a * dim_b) {
    throw DimensionError("measure_b: dimension mismatch");
  }
  std::vector<double> probs;
  std::vector<ComplexMatrix> unnormalized;
  double total = 0.0;
  for (const auto& element : povm.elements()) {
    // (Tr_B[(I (x) M) rho])_ij = Tr(M rho_ij) with rho_ij the (i, j) block.
    const ComplexMatrix element_t = element.transpose();
    ComplexMatrix reduced(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i) {
      for (int j = 0; j < dim_a; ++j) {
        reduced(i, j) = rho_ab.matrix().block(i * dim_b, j * dim_b, dim_b, dim_b)
                            .cwiseProduct(element_t)
                            .sum();
      }
    }
    reduced = (reduced + reduced.adjoint()) / 2.0;
    const double p = std::max(reduced.trace().real(), 0.0);
    total += p;
    probs.push_back(p);
    unnormalized.push_back(std::move(reduced));
  }
  // Absorb the POVM's completeness slack so the outcome law is exactly normalized.
  for (double& p : probs) p /= total;
  for (auto& r : unnormalized) r /= total;
  OutcomeAnalysis out{ProbabilityVector(probs), {}, {}};
  for (int b = 0; b < povm.size(); ++b) {
    if (probs[b] <= kDefaultTolerances.outcome_cutoff) continue;
    out.retained.push_back(b);
    out.conditional_states.emplace_back(unnormalized[b] / probs[b]);
  }
  return out;
}

JointDistribution induced_joint(const CQEnsemble& ens, const Povm& povm) {
  if (povm.dim() != ens.dim_b()) throw DimensionError("induced_joint: dimension mismatch");
  const int n = ens.size();
  const int outcomes = povm.size();
  std::vector<double> table(static_cast<std::size_t>(n) * outcomes);
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    const ComplexMatrix& sigma = ens.states()[a].matrix();
    for (int b = 0; b < outcomes; ++b) {
      // Tr(M sigma) = sum_ij M_ij sigma_ji
      const double overlap = (povm.elements()[b].cwiseProduct(sigma.transpose())).sum().real();
      const double p = ens.probs()[a] * std::max(overlap, 0.0);
      table[static_cast<std::size_t>(a) * outcomes + b] = p;
      total += p;
    }
  }
  for (double& p : table) p /= total;
  return JointDistribution({n, outcomes}, std::move(table));
}

double measured_mutual_information(const CQEnsemble& ens, const Povm& povm) {
  return classical_mutual_information(induced_joint(ens, povm));
}

double measured_conditional_entropy(const CQEnsemble& ens, const Povm& povm) {
  const OutcomeAnalysis analysis = measure_b(cq_to_density(ens), ens.size(), ens.dim_b(), povm);
  double h = 0.0;
  for (std::size_t i = 0; i < analysis.retained.size(); ++i) {
    h += analysis.outcome_probs[analysis.retained[i]] *
         von_neumann_entropy(analysis.conditional_states[i]);
  }
  return h;
}

}  // namespace qlock
