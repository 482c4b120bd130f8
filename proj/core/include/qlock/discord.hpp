#pragma once

// Quantum discord of classical-quantum states (measurement on B), the locking
// advantage of a one-bit key, and the single-copy identity chain linking the
// two.

#include <optional>
#include <vector>

#include "qlock/accessible.hpp"
#include "qlock/states.hpp"

namespace qlock {

struct OptimizerDiagnostics {
  std::vector<double> per_restart_values;
  std::vector<CandidateValue> candidate_values;
  double holevo_chi = 0.0;
  int best_povm_outcomes = 0;
  bool converged = false;

  bool operator==(const OptimizerDiagnostics&) const = default;
};

/// Discord with Alice classical and Bob measured.
struct DiscordReport {
  double mutual_info_q = 0.0;              // I(A;B) of the state
  double i_acc = 0.0;                      // best measured I(A;B)
  double discord = 0.0;                    // mutual_info_q - i_acc
  double cond_entropy_q = 0.0;             // S(A|B)
  double min_measured_cond_entropy = 0.0;  // sum_b p_b S(rho_{A|b}) at the best POVM
  /// |discord - (min_measured_cond_entropy - cond_entropy_q)|
  double identity_residual = 0.0;
  OptimizerDiagnostics diagnostics;

  bool operator==(const DiscordReport&) const = default;
};

struct LockingReport {
  int m = 0;
  int key_bits = 0;
  double i_acc_with_key = 0.0;
  double i_acc_without_key = 0.0;
  double i_q_without_key = 0.0;
  double delta = 0.0;
  double discord = 0.0;
  double delta_equals_discord_residual = 0.0;

  bool operator==(const LockingReport&) const = default;
};

struct IdentityChainReport {
  /// Exact key-conditioned measured information; locking instances only.
  std::optional<double> i_acc_with_key;
  double i_q_with_key = 0.0;                // I(A,K;B,K)
  double i_q_without_key_plus_key = 0.0;    // I(A,K;B) + |K|
  double message_bound = 0.0;               // log2(dim_b) + |K|
  /// Largest pairwise difference among the (available) equal-by-theory terms.
  double equality_residual = 0.0;
  /// I(A,K;B,K) <= I(A,K;B) + |K| <= message_bound, with 1e-9 slack.
  bool inequalities_hold = false;
};

DiscordReport quantum_discord_cq(const CQEnsemble& ens, const OptimizerConfig& cfg);

/// Bob learns k, measures in basis U_k and so reads a with certainty.
/// Returns I((A,K); (B_outcome, K)) of the resulting joint. Throws
/// InvariantError if `ens` was not generated from `inst`.
double key_then_measure_info(const LockingInstance& inst, const CQEnsemble& ens);

/// Ensemble whose Bob states also carry the key: |k><k| (x) sigma^(a,k), with
/// k = label mod 2^key_bits.
CQEnsemble with_key_register(const CQEnsemble& ens, int key_bits);

/// Delta = I_acc(A,K;B,K) - (I_acc(A,K;B) + |K|) next to the discord of the
/// keyless state. The optimizer config gains U_1 as MUB partner candidate
/// when it has none.
LockingReport locking_delta(const LockingSetup& setup, const OptimizerConfig& cfg);

/// Checks I_acc(A,K;B,K) = I(A,K;B,K) = I(A,K;B) + |K| = m + |K| for a
/// locking setup; all four terms enter equality_residual.
IdentityChainReport single_copy_identity_chain(const LockingSetup& setup);

/// The same bounds for an arbitrary ensemble whose labels encode the key in
/// their low bits; no with-key accessible information is available here.
IdentityChainReport key_chain_bounds(const CQEnsemble& ens, int key_bits);

}  // namespace qlock
