#pragma once

// Classical-quantum ensembles, the one-bit-key locking construction and the
// mutually unbiased basis unitaries it is built from.

#include <cstdint>
#include <string_view>
#include <vector>

#include "qlock/qmath.hpp"

namespace qlock {

/// Letters a with probabilities p_a and Bob-side states sigma_B^(a).
///
/// All states share one dimension. The letter's position in the list is its
/// index on Alice's register; `labels` carry the caller's symbol for it.
class CQEnsemble {
 public:
  CQEnsemble(std::vector<int> labels, ProbabilityVector probs,
             std::vector<DensityMatrix> states);

  int size() const { return static_cast<int>(states_.size()); }
  int dim_b() const { return states_.front().dim(); }
  const std::vector<int>& labels() const { return labels_; }
  const ProbabilityVector& probs() const { return probs_; }
  const std::vector<DensityMatrix>& states() const { return states_; }

  /// sum_a p_a sigma_B^(a).
  DensityMatrix average_state() const;

 private:
  std::vector<int> labels_;
  ProbabilityVector probs_;
  std::vector<DensityMatrix> states_;
};

enum class BasisFamily { HadamardTensor, Fourier };

std::string_view to_string(BasisFamily family);
/// Accepts "hadamard" and "fourier".
BasisFamily basis_family_from_string(std::string_view name);

/// Message of m bits hidden by a one-bit key choosing between U_0 = I and a
/// basis U_1 unbiased with respect to the computational one.
class LockingInstance {
 public:
  /// Throws InvariantError unless U_0 is the identity, every U_k is unitary
  /// and every pair is mutually unbiased; LimitError for key_size != 1.
  LockingInstance(int m, int key_size, std::vector<ComplexMatrix> basis_unitaries,
                  BasisFamily family);

  int m() const { return m_; }
  int key_size() const { return key_size_; }
  int dim() const { return 1 << m_; }
  int num_keys() const { return static_cast<int>(unitaries_.size()); }
  const std::vector<ComplexMatrix>& basis_unitaries() const { return unitaries_; }
  BasisFamily family() const { return family_; }

 private:
  int m_;
  int key_size_;
  std::vector<ComplexMatrix> unitaries_;
  BasisFamily family_;
};

/// Letter (a, k) of a locking ensemble is stored at index and label a * 2 + k.
constexpr int locking_label(int message, int key) { return message * 2 + key; }

struct LockingSetup {
  LockingInstance instance;
  CQEnsemble ensemble;
};

/// sum_a p_a |a><a| (x) sigma_B^(a), with the letter index as the A basis.
DensityMatrix cq_to_density(const CQEnsemble& ens);

/// The uniform ensemble over (a, k) with Bob states U_k |a><a| U_k^dagger.
/// Throws LimitError unless 1 <= m <= 6.
LockingSetup build_locking_state(int m, BasisFamily family);

/// True iff |<a| U^dagger V |a'>|^2 = 1/d within tol for all a, a'.
bool mub_check(const ComplexMatrix& u, const ComplexMatrix& v, double tol = 1e-9);

/// omega^{jk} / sqrt(d), omega = exp(2 pi i / d).
ComplexMatrix fourier_matrix(int d);

/// H^{(x) m}.
ComplexMatrix hadamard_tensor(int m);

enum class Purity { Pure, Mixed };

/// Seeded random ensemble. Probabilities come from the flat simplex; pure
/// letters are Haar random vectors, mixed letters G G^dagger / Tr(G G^dagger)
/// for a complex Ginibre G.
CQEnsemble random_cq_ensemble(int n_letters, int dim_b, Purity purity,
                              std::uint64_t seed);

/// n equiprobable computational basis states in dimension max(n, 2).
CQEnsemble orthogonal_ensemble(int n);

/// {1/2: |0>, 1/2: |+>}.
CQEnsemble two_state_ensemble();

/// Every letter conjugated by the same unitary: sigma -> V sigma V^dagger.
CQEnsemble conjugate(const CQEnsemble& ens, const ComplexMatrix& v);

}  // namespace qlock
