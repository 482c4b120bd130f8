#pragma once

// Measurements on Bob's side of a bipartite state and the classical data they
// induce.

#include <optional>
#include <vector>

#include "qlock/qmath.hpp"
#include "qlock/states.hpp"

namespace qlock {

/// Positive operators summing to the identity.
class Povm {
 public:
  /// Throws InvariantError if an element is not PSD or the elements are not
  /// complete within the tolerances.
  explicit Povm(std::vector<ComplexMatrix> elements,
                const Tolerances& tol = kDefaultTolerances);

  /// Rank-1 POVM {w_j w_j^dagger} from the columns of a d x N matrix with
  /// W W^dagger = I. The columns are kept as an annotation.
  static Povm from_vectors(const ComplexMatrix& columns,
                           const Tolerances& tol = kDefaultTolerances);

  /// The single-outcome measurement {I}.
  static Povm trivial(int dim);

  int dim() const { return static_cast<int>(elements_.front().rows()); }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  /// Measurement vectors as columns, when the POVM is known to be rank-1.
  const std::optional<ComplexMatrix>& vectors() const { return vectors_; }

 private:
  std::vector<ComplexMatrix> elements_;
  std::optional<ComplexMatrix> vectors_;
};

/// Outcome statistics of a B-side measurement and Alice's conditional states.
struct OutcomeAnalysis {
  ProbabilityVector outcome_probs;          // p_b for every outcome
  std::vector<int> retained;                // outcomes with p_b above the cutoff
  std::vector<DensityMatrix> conditional_states;  // rho_{A|b}, aligned with retained
};

/// Measurement in the basis given by the columns of a unitary. Throws
/// InvariantError if `u` is not unitary.
Povm projective_povm(const ComplexMatrix& u);

/// p_b = Tr[(I (x) M_b) rho] and rho_{A|b} = Tr_B[(I (x) M_b) rho] / p_b.
OutcomeAnalysis measure_b(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                          const Povm& povm);

/// p(a, b) = p_a Tr(M_b sigma^(a)).
JointDistribution induced_joint(const CQEnsemble& ens, const Povm& povm);

/// I(A;B) of induced_joint(ens, povm).
double measured_mutual_information(const CQEnsemble& ens, const Povm& povm);

/// sum_b p_b S(rho_{A|b}) for the measurement applied to cq_to_density(ens).
double measured_conditional_entropy(const CQEnsemble& ens, const Povm& povm);

}  // namespace qlock
