#pragma once

// Sampling the locking protocol and the classical one-time-pad baseline.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qlock/measurement.hpp"
#include "qlock/qmath.hpp"
#include "qlock/states.hpp"

namespace qlock {

enum class StrategyKind {
  BeforeKeyFixedPovm,       // Bob measures a fixed POVM, then hears k
  AfterKeyConditionedBasis  // Bob hears k, then measures in basis U_k
};

struct StrategySpec {
  StrategyKind kind = StrategyKind::AfterKeyConditionedBasis;
  std::optional<Povm> povm;  // required for BeforeKeyFixedPovm
};

/// Sample counts indexed by (a, k, b), b varying fastest.
struct CountTable {
  int messages = 0;
  int keys = 0;
  int outcomes = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t& at(int a, int k, int b) {
    return counts[(static_cast<std::size_t>(a) * keys + k) * outcomes + b];
  }
  std::uint64_t at(int a, int k, int b) const {
    return counts[(static_cast<std::size_t>(a) * keys + k) * outcomes + b];
  }
  std::uint64_t total() const;
};

struct EmpiricalReport {
  std::uint64_t n_samples = 0;
  double empirical_mi = 0.0;   // plug-in estimate
  double analytic_mi = 0.0;    // exact value of the sampled joint
  double std_error_estimate = 0.0;
  std::uint64_t seed = 0;
  /// After-key runs: samples whose outcome differs from the message.
  std::uint64_t decoding_errors = 0;

  bool operator==(const EmpiricalReport&) const = default;
};

struct SimulationResult {
  EmpiricalReport report;
  CountTable counts;
};

/// Samples per batch; batch i draws from a generator seeded with (seed, i),
/// so the result does not depend on `threads`.
inline constexpr std::uint64_t kSimulationBatch = 8192;

/// Draws (a, k) uniformly, prepares U_k|a> and samples Bob's outcome by
/// inverse CDF over exact Born probabilities. Before-key runs tally
/// ((a,k), b); after-key runs tally ((a,k), (b,k)). Throws DimensionError if
/// the strategy's POVM does not act on Bob's dimension, InvariantError if a
/// before-key strategy has no POVM.
SimulationResult simulate_locking_run(const LockingSetup& setup, const StrategySpec& strategy,
                                      std::uint64_t n_samples, std::uint64_t seed,
                                      int threads = 1);

/// Mutual information of the (a,k) vs outcome table: B is b for before-key
/// and (b, k) for after-key tables.
double plug_in_mutual_information(const CountTable& counts, StrategyKind kind);

/// Writes "a,k,b,count" rows for every cell.
void write_counts_csv(std::ostream& out, const CountTable& counts);

/// p(a, b, k) with A, K uniform on 2^m values and B = A xor K.
/// Throws LimitError unless 1 <= m <= 3.
JointDistribution one_time_pad_joint(int m);

struct KeyBoundReport {
  double i_a_b = 0.0;               // I(A;B)
  double i_a_bk = 0.0;              // I(A;B,K)
  double i_a_k_given_b = 0.0;       // I(A;K|B)
  double key_bits = 0.0;            // log2 |K alphabet|
  double slack = 0.0;               // key_bits - I(A;K|B)
  bool bound_holds = false;         // I(A;K|B) <= key_bits + 1e-12
  double chain_rule_residual = 0.0; // |I(A;B,K) - I(A;B) - I(A;K|B)|
  /// H(A|B,K) = 0: the message is recoverable from (B, K).
  bool decodable = false;
  /// |H(A) - I(A;B,K)| for decodable joints, otherwise 0.
  double message_decomposition_residual = 0.0;
};

/// Key-size bound on the conditional mutual information of a joint ordered
/// (A, B, K).
KeyBoundReport classical_key_bound_check(const JointDistribution& j);

}  // namespace qlock
