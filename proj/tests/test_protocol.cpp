#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qlock/error.hpp"
#include "qlock/protocol.hpp"
#include "qlock/random.hpp"

namespace qlock {
namespace {

StrategySpec before_key(const Povm& povm) { return {StrategyKind::BeforeKeyFixedPovm, povm}; }
StrategySpec after_key() { return {StrategyKind::AfterKeyConditionedBasis, std::nullopt}; }

TEST(Simulate, AfterKeyDecodesPerfectly) {
  for (BasisFamily f : {BasisFamily::HadamardTensor, BasisFamily::Fourier}) {
    const LockingSetup s = build_locking_state(2, f);
    const SimulationResult r = simulate_locking_run(s, after_key(), 50000, 7);
    EXPECT_EQ(r.report.decoding_errors, 0u);
    EXPECT_NEAR(r.report.analytic_mi, 3.0, 1e-9);
    EXPECT_NEAR(r.report.empirical_mi, 3.0, 0.02);
    EXPECT_EQ(r.counts.total(), 50000u);
    for (int a = 0; a < 4; ++a) {
      for (int k = 0; k < 2; ++k) {
        for (int b = 0; b < 4; ++b) {
          if (b != a) EXPECT_EQ(r.counts.at(a, k, b), 0u);
        }
      }
    }
  }
}

TEST(Simulate, BeforeKeyComputationalConverges) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  const SimulationResult r =
      simulate_locking_run(s, before_key(projective_povm(ComplexMatrix::Identity(2, 2))), 200000, 3);
  EXPECT_NEAR(r.report.analytic_mi, 0.5, 1e-12);
  EXPECT_NEAR(r.report.empirical_mi, 0.5, 0.02);
  EXPECT_GT(r.report.std_error_estimate, 0.0);
  EXPECT_LT(r.report.std_error_estimate, 0.01);
  EXPECT_EQ(r.report.decoding_errors, 0u);
}

TEST(Simulate, FrequenciesMatchBornRule) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  const std::uint64_t n = 400000;
  const SimulationResult r = simulate_locking_run(s, before_key(projective_povm(ComplexMatrix::Identity(2, 2))), n, 11);
  // p(a, k, b) = 1/4 |<b|U_k|a>|^2.
  const double expected[2][2][2] = {{{0.25, 0.0}, {0.125, 0.125}}, {{0.0, 0.25}, {0.125, 0.125}}};
  for (int a = 0; a < 2; ++a) {
    for (int k = 0; k < 2; ++k) {
      for (int b = 0; b < 2; ++b) {
        const double p = expected[a][k][b];
        const double freq = static_cast<double>(r.counts.at(a, k, b)) / n;
        EXPECT_NEAR(freq, p, 5.0 * std::sqrt(p * (1 - p) / n) + 1e-12);
      }
    }
  }
}

TEST(Simulate, DeterministicAndThreadIndependent) {
  const LockingSetup s = build_locking_state(2, BasisFamily::HadamardTensor);
  const StrategySpec strat = before_key(projective_povm(hadamard_tensor(2)));
  const SimulationResult a = simulate_locking_run(s, strat, 30000, 42, 1);
  const SimulationResult b = simulate_locking_run(s, strat, 30000, 42, 3);
  EXPECT_EQ(a.counts.counts, b.counts.counts);
  EXPECT_EQ(a.report, b.report);
  const SimulationResult c = simulate_locking_run(s, strat, 30000, 43, 1);
  EXPECT_NE(a.counts.counts, c.counts.counts);
}

TEST(Simulate, Validation) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  EXPECT_THROW(simulate_locking_run(s, {StrategyKind::BeforeKeyFixedPovm, std::nullopt}, 10, 0), InvariantError);
  EXPECT_THROW(simulate_locking_run(s, before_key(Povm::trivial(4)), 10, 0), DimensionError);
  EXPECT_THROW(simulate_locking_run(s, after_key(), 0, 0), InputError);
}

TEST(PlugIn, MatchesOracleOnCounts) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  const SimulationResult r = simulate_locking_run(s, before_key(projective_povm(ComplexMatrix::Identity(2, 2))), 1000, 9);
  oracle::Table2 t(4, std::vector<double>(2));
  for (int a = 0; a < 2; ++a) {
    for (int k = 0; k < 2; ++k) {
      for (int b = 0; b < 2; ++b) t[a * 2 + k][b] = r.counts.at(a, k, b) / 1000.0;
    }
  }
  EXPECT_NEAR(plug_in_mutual_information(r.counts, StrategyKind::BeforeKeyFixedPovm),
              oracle::mutual_information(t), 1e-12);
  EXPECT_NEAR(r.report.empirical_mi, oracle::mutual_information(t), 1e-12);
}

TEST(PlugIn, AfterKeyGroupsOutcomeWithKey) {
  CountTable c;
  c.messages = 2;
  c.keys = 2;
  c.outcomes = 2;
  c.counts.assign(8, 0);
  for (int a = 0; a < 2; ++a) {
    for (int k = 0; k < 2; ++k) c.at(a, k, a) = 5;
  }
  // (a, k) is fully determined by (b, k): two bits.
  EXPECT_NEAR(plug_in_mutual_information(c, StrategyKind::AfterKeyConditionedBasis), 2.0, 1e-12);
  // b alone carries only a: one bit.
  EXPECT_NEAR(plug_in_mutual_information(c, StrategyKind::BeforeKeyFixedPovm), 1.0, 1e-12);
}

TEST(CountsCsv, Format) {
  CountTable c;
  c.messages = 1;
  c.keys = 2;
  c.outcomes = 2;
  c.counts = {3, 0, 1, 4};
  std::ostringstream out;
  write_counts_csv(out, c);
  EXPECT_EQ(out.str(), "a,k,b,count\n0,0,0,3\n0,0,1,0\n0,1,0,1\n0,1,1,4\n");
}

TEST(OneTimePad, JointLayout) {
  const JointDistribution j = one_time_pad_joint(1);
  EXPECT_EQ(j.shape(), (std::vector<int>{2, 2, 2}));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int k = 0; k < 2; ++k) EXPECT_EQ(j.at(a, b, k), (b == (a ^ k)) ? 0.25 : 0.0);
    }
  }
  EXPECT_THROW(one_time_pad_joint(4), LimitError);
  EXPECT_THROW(one_time_pad_joint(0), LimitError);
}

TEST(KeyBound, OneTimePadIsTight) {
  for (int m = 1; m <= 3; ++m) {
    const KeyBoundReport r = classical_key_bound_check(one_time_pad_joint(m));
    EXPECT_NEAR(r.i_a_b, 0.0, 1e-12);
    EXPECT_NEAR(r.i_a_bk, m, 1e-12);
    EXPECT_NEAR(r.i_a_k_given_b, oracle::conditional_mutual_information(oracle::one_time_pad_events(m)), 1e-12);
    EXPECT_NEAR(r.key_bits, m, 1e-15);
    EXPECT_NEAR(r.slack, 0.0, 1e-12);
    EXPECT_TRUE(r.bound_holds);
    EXPECT_LE(r.chain_rule_residual, 1e-12);
    EXPECT_TRUE(r.decodable);
    EXPECT_LE(r.message_decomposition_residual, 1e-12);
  }
}

TEST(KeyBound, RandomJoints) {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const JointDistribution j = random_joint({2 + trial % 3, 2 + trial % 2, 2 + trial % 4}, rng);
    const KeyBoundReport r = classical_key_bound_check(j);
    EXPECT_TRUE(r.bound_holds);
    EXPECT_GE(r.i_a_k_given_b, -1e-12);
    EXPECT_LE(r.chain_rule_residual, 1e-12);
    EXPECT_FALSE(r.decodable);
    EXPECT_EQ(r.message_decomposition_residual, 0.0);
  }
}

TEST(KeyBound, RequiresThreeVariables) {
  EXPECT_THROW(classical_key_bound_check(JointDistribution({2, 2}, {0.25, 0.25, 0.25, 0.25})), DimensionError);
}

}  // namespace
}  // namespace qlock
