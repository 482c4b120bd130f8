#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qlock/discord.hpp"
#include "qlock/error.hpp"
#include "qlock/random.hpp"
#include "qlock/states.hpp"

namespace qlock {
namespace {

OptimizerConfig quick_config(int restarts = 6, int iters = 120) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iters = iters;
  return cfg;
}

TEST(Discord, OrthogonalEnsembleHasNone) {
  const DiscordReport r = quantum_discord_cq(orthogonal_ensemble(4), quick_config(2, 20));
  EXPECT_NEAR(r.mutual_info_q, 2.0, 1e-12);
  EXPECT_NEAR(r.i_acc, 2.0, 1e-12);
  EXPECT_NEAR(r.discord, 0.0, 1e-12);
  EXPECT_NEAR(r.cond_entropy_q, 0.0, 1e-12);
  EXPECT_LE(r.identity_residual, 1e-9);
}

TEST(Discord, TwoStateEnsembleMatchesOracles) {
  const DiscordReport r = quantum_discord_cq(two_state_ensemble(), quick_config(10, 200));
  const double chi = oracle::h2((1.0 + 1.0 / std::sqrt(2.0)) / 2.0);
  const double acc = oracle::two_state_grid_accessible(0.0, std::numbers::pi / 4.0, 1e-4);
  // For a cq state with pure letters I(A;B) equals the Holevo quantity.
  EXPECT_NEAR(r.mutual_info_q, chi, 1e-12);
  EXPECT_NEAR(r.i_acc, acc, 1e-4);
  EXPECT_NEAR(r.discord, chi - acc, 1e-4);
  EXPECT_NEAR(r.diagnostics.holevo_chi, chi, 1e-12);
  EXPECT_LE(r.identity_residual, 1e-9);
}

TEST(Discord, SingleBitLocking) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  OptimizerConfig cfg = quick_config();
  cfg.mub_partner = s.instance.basis_unitaries()[1];
  const DiscordReport r = quantum_discord_cq(s.ensemble, cfg);
  EXPECT_NEAR(r.mutual_info_q, 1.0, 1e-12);
  EXPECT_NEAR(r.i_acc, 0.5, 1e-9);
  EXPECT_NEAR(r.discord, 0.5, 1e-9);
  // S(A|B) = H(A) - I(A;B) = 2 - 1.
  EXPECT_NEAR(r.cond_entropy_q, 1.0, 1e-12);
  EXPECT_NEAR(r.min_measured_cond_entropy, 1.5, 1e-9);
  EXPECT_LE(r.identity_residual, 1e-9);
}

TEST(Discord, PropertiesOnRandomEnsembles) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const int d = 2 + static_cast<int>(seed % 2);
    const CQEnsemble e = random_cq_ensemble(n, d, seed % 2 ? Purity::Pure : Purity::Mixed, seed);
    const DiscordReport r = quantum_discord_cq(e, quick_config(3, 60));
    EXPECT_GE(r.discord, -1e-9) << "seed " << seed;
    EXPECT_LE(r.i_acc, r.diagnostics.holevo_chi + 1e-9);
    EXPECT_LE(r.i_acc, r.mutual_info_q + 1e-9);
    EXPECT_GE(r.cond_entropy_q, -1e-9);
    EXPECT_LE(r.identity_residual, 1e-9);
    EXPECT_EQ(r.diagnostics.per_restart_values.size(), 3u);
  }
}

TEST(Discord, DeterministicForFixedSeed) {
  const CQEnsemble e = random_cq_ensemble(3, 3, Purity::Mixed, 12);
  OptimizerConfig cfg = quick_config(3, 40);
  cfg.seed = 5;
  EXPECT_EQ(quantum_discord_cq(e, cfg), quantum_discord_cq(e, cfg));
}

TEST(KeyThenMeasure, RecoversMessageAndKey) {
  for (BasisFamily f : {BasisFamily::HadamardTensor, BasisFamily::Fourier}) {
    for (int m = 1; m <= 4; ++m) {
      const LockingSetup s = build_locking_state(m, f);
      EXPECT_NEAR(key_then_measure_info(s.instance, s.ensemble), m + 1.0, 1e-9);
    }
  }
}

TEST(KeyThenMeasure, RejectsForeignEnsemble) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  EXPECT_THROW(key_then_measure_info(s.instance, two_state_ensemble()), InvariantError);
  const LockingSetup other = build_locking_state(1, BasisFamily::Fourier);
  const ComplexMatrix swap = (ComplexMatrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
  EXPECT_THROW(key_then_measure_info(s.instance, conjugate(other.ensemble, swap)), InvariantError);
}

TEST(WithKeyRegister, BlockStructure) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  const CQEnsemble keyed = with_key_register(s.ensemble, 1);
  ASSERT_EQ(keyed.dim_b(), 4);
  for (int i = 0; i < keyed.size(); ++i) {
    const int k = i % 2;
    const ComplexMatrix& m = keyed.states()[i].matrix();
    EXPECT_LE(max_abs(m.block(2 * k, 2 * k, 2, 2) - s.ensemble.states()[i].matrix()), 1e-15);
    EXPECT_EQ(max_abs(m.block(2 * (1 - k), 2 * (1 - k), 2, 2)), 0.0);
  }
  EXPECT_THROW(with_key_register(s.ensemble, 0), LimitError);
}

TEST(IdentityChain, LockingTermsCoincide) {
  for (BasisFamily f : {BasisFamily::HadamardTensor, BasisFamily::Fourier}) {
    for (int m = 1; m <= 3; ++m) {
      const IdentityChainReport r = single_copy_identity_chain(build_locking_state(m, f));
      ASSERT_TRUE(r.i_acc_with_key.has_value());
      EXPECT_NEAR(*r.i_acc_with_key, m + 1.0, 1e-6);
      EXPECT_NEAR(r.i_q_with_key, m + 1.0, 1e-6);
      EXPECT_NEAR(r.i_q_without_key_plus_key, m + 1.0, 1e-6);
      EXPECT_NEAR(r.message_bound, m + 1.0, 1e-12);
      EXPECT_LE(r.equality_residual, 1e-6);
      EXPECT_TRUE(r.inequalities_hold);
    }
  }
}

TEST(IdentityChain, BoundsHoldOnRandomEnsembles) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CQEnsemble e = random_cq_ensemble(4, 2 + static_cast<int>(seed % 3),
                                            seed % 2 ? Purity::Pure : Purity::Mixed, seed);
    const IdentityChainReport r = key_chain_bounds(e, 1);
    EXPECT_FALSE(r.i_acc_with_key.has_value());
    EXPECT_TRUE(r.inequalities_hold) << "seed " << seed;
    EXPECT_LE(r.i_q_with_key, r.i_q_without_key_plus_key + 1e-9);
  }
}

TEST(LockingDelta, SingleBitHeadline) {
  const LockingReport r = locking_delta(build_locking_state(1, BasisFamily::HadamardTensor), quick_config());
  EXPECT_EQ(r.m, 1);
  EXPECT_EQ(r.key_bits, 1);
  EXPECT_NEAR(r.i_acc_with_key, 2.0, 1e-9);
  EXPECT_NEAR(r.i_acc_without_key, 0.5, 1e-6);
  EXPECT_NEAR(r.i_q_without_key, 1.0, 1e-9);
  EXPECT_NEAR(r.delta, 0.5, 1e-6);
  EXPECT_NEAR(r.discord, 0.5, 1e-6);
  EXPECT_LE(r.delta_equals_discord_residual, 1e-6);
}

TEST(LockingDelta, TwoBitsFourier) {
  const LockingReport r = locking_delta(build_locking_state(2, BasisFamily::Fourier), quick_config(4, 100));
  EXPECT_NEAR(r.i_acc_with_key, 3.0, 1e-9);
  EXPECT_NEAR(r.i_acc_without_key, 1.0, 1e-6);
  EXPECT_NEAR(r.i_q_without_key, 2.0, 1e-9);
  EXPECT_NEAR(r.delta, 1.0, 1e-6);
  EXPECT_NEAR(r.discord, 1.0, 1e-6);
}

}  // namespace
}  // namespace qlock
