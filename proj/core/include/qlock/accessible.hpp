#pragma once

// Accessible information of a classical-quantum ensemble: the largest mutual
// information between Alice's letter and the outcome of a measurement on
// Bob's system, found by candidate bases plus random-restart hill climbing
// over rank-1 POVMs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlock/measurement.hpp"
#include "qlock/states.hpp"

namespace qlock {

/// Largest Bob dimension the optimizer accepts.
inline constexpr int kMaxOptimizerDim = 16;

enum class CandidateBasis { Computational, MubPartner, MarginalEigenbasis };

std::string_view to_string(CandidateBasis c);
CandidateBasis candidate_basis_from_string(std::string_view name);

struct OptimizerConfig {
  int restarts = 50;
  int max_iters = 200;
  double step_init = 0.5;
  double step_min = 1e-4;
  /// Number of rank-1 outcomes; 0 selects d * d. Use d for projective-only.
  int outcome_budget = 0;
  std::vector<CandidateBasis> candidate_bases{CandidateBasis::Computational,
                                              CandidateBasis::MubPartner,
                                              CandidateBasis::MarginalEigenbasis};
  /// Unitary used for the MubPartner candidate; skipped when absent.
  std::optional<ComplexMatrix> mub_partner;
  std::uint64_t seed = 0;
  /// Worker threads for restarts. Results do not depend on this value.
  int threads = 1;

  /// Outcome budget after substituting the default for dimension d. Throws
  /// InputError when the budget or the restart count is out of range.
  int resolved_outcome_budget(int d) const;
};

struct CandidateValue {
  CandidateBasis basis;
  double value;

  bool operator==(const CandidateValue&) const = default;
};

struct AccessibleInfoResult {
  double value = 0.0;
  Povm best_povm;
  double upper_bound = 0.0;  // Holevo quantity
  std::vector<double> per_restart_values;  // by restart index
  std::vector<CandidateValue> candidate_values;
  /// The two largest values found across candidates and restarts agree to
  /// within 1e-4.
  bool converged = false;
};

/// S(sum_a p_a sigma_a) - sum_a p_a S(sigma_a).
double holevo_chi(const CQEnsemble& ens);

/// Best measured mutual information over candidate bases and restarts.
/// Throws LimitError("instance too large") when dim_b > kMaxOptimizerDim.
AccessibleInfoResult accessible_information(const CQEnsemble& ens,
                                            const OptimizerConfig& cfg);

/// The maximizing POVM of accessible_information.
Povm optimize_povm(const CQEnsemble& ens, const OptimizerConfig& cfg);

/// One hill-climbing run from a Haar-random isometry seeded with `seed`.
/// Returns the final measurement vectors as columns of a d x budget matrix.
ComplexMatrix hill_climb(const CQEnsemble& ens, const OptimizerConfig& cfg,
                         int budget, std::uint64_t seed);

}  // namespace qlock
