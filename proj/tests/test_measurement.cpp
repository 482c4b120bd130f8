#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qlock/accessible.hpp"
#include "qlock/error.hpp"
#include "qlock/measurement.hpp"
#include "qlock/random.hpp"
#include "qlock/states.hpp"

namespace qlock {
namespace {

ComplexMatrix random_isometry(int d, int n, Rng& rng) {
  return random_unitary(n, rng).topRows(d);
}

CQEnsemble binary_symmetric_ensemble(double flip) {
  ComplexMatrix s0 = ComplexMatrix::Zero(2, 2), s1 = ComplexMatrix::Zero(2, 2);
  s0(0, 0) = 1.0 - flip;
  s0(1, 1) = flip;
  s1(0, 0) = flip;
  s1(1, 1) = 1.0 - flip;
  return CQEnsemble({0, 1}, ProbabilityVector::uniform(2), {DensityMatrix(s0), DensityMatrix(s1)});
}

TEST(PovmType, ProjectiveIsValid) {
  const Povm p = projective_povm(hadamard_tensor(2));
  EXPECT_EQ(p.size(), 4);
  EXPECT_EQ(p.dim(), 4);
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (const auto& e : p.elements()) sum += e;
  EXPECT_LE(max_abs(sum - ComplexMatrix::Identity(4, 4)), 1e-12);
}

TEST(PovmType, RejectsIncomplete) {
  ComplexMatrix half = ComplexMatrix::Identity(2, 2) * 0.5;
  EXPECT_THROW(Povm({half}), InvariantError);
}

TEST(PovmType, RejectsNegativeElement) {
  ComplexMatrix e0 = ComplexMatrix::Zero(2, 2), e1 = ComplexMatrix::Zero(2, 2);
  e0(0, 0) = 1.5;
  e0(1, 1) = 1.0;
  e1(0, 0) = -0.5;
  EXPECT_THROW(Povm({e0, e1}), InvariantError);
}

TEST(PovmType, RejectsMixedDimensions) {
  EXPECT_THROW(Povm({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(3, 3)}), DimensionError);
}

TEST(PovmType, ProjectiveRejectsNonUnitary) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.3;
  EXPECT_THROW(projective_povm(m), InvariantError);
}

TEST(PovmType, FromRandomIsometryIsComplete) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const int n = d + trial % (d * d - d + 1);
    const Povm p = Povm::from_vectors(random_isometry(d, n, rng));
    EXPECT_EQ(p.size(), n);
    ASSERT_TRUE(p.vectors().has_value());
    for (const auto& e : p.elements()) EXPECT_GE(eig_hermitian(e).values(0), -1e-12);
  }
}

TEST(MeasureB, LockingSingleBitComputational) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  const OutcomeAnalysis out =
      measure_b(cq_to_density(s.ensemble), 4, 2, projective_povm(ComplexMatrix::Identity(2, 2)));
  ASSERT_EQ(out.outcome_probs.size(), 2u);
  EXPECT_NEAR(out.outcome_probs[0], 0.5, 1e-15);
  EXPECT_NEAR(out.outcome_probs[1], 0.5, 1e-15);
  ASSERT_EQ(out.retained, (std::vector<int>{0, 1}));
  // Hand-derived: p(a,k | b=0) = (1/4) |<0|U_k|a>|^2 / (1/2).
  const double diag0[4] = {0.5, 0.25, 0.0, 0.25};
  const double diag1[4] = {0.0, 0.25, 0.5, 0.25};
  const ComplexMatrix& r0 = out.conditional_states[0].matrix();
  const ComplexMatrix& r1 = out.conditional_states[1].matrix();
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(r0(i, i).real(), diag0[i], 1e-15);
    EXPECT_NEAR(r1(i, i).real(), diag1[i], 1e-15);
    for (int j = 0; j < 4; ++j) {
      if (i != j) {
        EXPECT_EQ(std::abs(r0(i, j)), 0.0);
        EXPECT_EQ(std::abs(r1(i, j)), 0.0);
      }
    }
  }
}

TEST(MeasureB, DropsZeroOutcomes) {
  const CQEnsemble e = CQEnsemble({0}, ProbabilityVector::uniform(1), {DensityMatrix::basis_state(2, 0)});
  const OutcomeAnalysis out = measure_b(cq_to_density(e), 1, 2, projective_povm(ComplexMatrix::Identity(2, 2)));
  EXPECT_EQ(out.outcome_probs[1], 0.0);
  EXPECT_EQ(out.retained, (std::vector<int>{0}));
  EXPECT_EQ(out.conditional_states.size(), 1u);
}

TEST(MeasureB, BadFactorization) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  EXPECT_THROW(measure_b(cq_to_density(s.ensemble), 4, 2, projective_povm(ComplexMatrix::Identity(4, 4))),
               DimensionError);
}

TEST(MeasureB, AgreesWithInducedJoint) {
  Rng rng(22);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CQEnsemble e = random_cq_ensemble(3, 3, Purity::Mixed, seed);
    const Povm p = Povm::from_vectors(random_isometry(3, 5, rng));
    const OutcomeAnalysis out = measure_b(cq_to_density(e), 3, 3, p);
    const JointDistribution j = induced_joint(e, p);
    const ProbabilityVector pb = j.marginal(1);
    for (int b = 0; b < p.size(); ++b) EXPECT_NEAR(out.outcome_probs[b], pb[b], 1e-12);
    // Conditional states are diagonal with entries p(a|b).
    for (std::size_t r = 0; r < out.retained.size(); ++r) {
      const int b = out.retained[r];
      for (int a = 0; a < 3; ++a) {
        EXPECT_NEAR(out.conditional_states[r].matrix()(a, a).real(), j.at(a, b) / pb[b], 1e-10);
      }
    }
  }
}

TEST(MeasureB, AveragedConditionalStatesRecoverMarginal) {
  Rng rng(26);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const int d = 2 + static_cast<int>(seed % 3);
    const CQEnsemble e = random_cq_ensemble(n, d, seed % 2 ? Purity::Pure : Purity::Mixed, seed);
    const DensityMatrix rho = cq_to_density(e);
    const OutcomeAnalysis out = measure_b(rho, n, d, Povm::from_vectors(random_isometry(d, d * d, rng)));
    ComplexMatrix mixed = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < out.retained.size(); ++i) {
      mixed += out.outcome_probs[out.retained[i]] * out.conditional_states[i].matrix();
    }
    EXPECT_LE(max_abs(mixed - partial_trace(rho, n, d, Subsystem::A).matrix()), 1e-9) << "seed " << seed;
  }
}

TEST(MeasuredInformation, LockingComputationalBasis) {
  const LockingSetup s = build_locking_state(1, BasisFamily::HadamardTensor);
  const Povm comp = projective_povm(ComplexMatrix::Identity(2, 2));
  EXPECT_NEAR(measured_mutual_information(s.ensemble, comp), 0.5, 1e-12);
  EXPECT_NEAR(measured_conditional_entropy(s.ensemble, comp), 1.5, 1e-12);
}

TEST(MeasuredInformation, BinarySymmetricChannel) {
  const CQEnsemble e = binary_symmetric_ensemble(0.11);
  const Povm comp = projective_povm(ComplexMatrix::Identity(2, 2));
  EXPECT_NEAR(measured_mutual_information(e, comp), 1.0 - oracle::h2(0.11), 1e-12);
  EXPECT_NEAR(measured_conditional_entropy(e, comp), oracle::h2(0.11), 1e-12);
}

TEST(MeasuredInformation, TrivialPovmGivesNothing) {
  const CQEnsemble e = random_cq_ensemble(4, 3, Purity::Pure, 9);
  EXPECT_NEAR(measured_mutual_information(e, Povm::trivial(3)), 0.0, 1e-15);
  EXPECT_NEAR(measured_conditional_entropy(e, Povm::trivial(3)), shannon_entropy(e.probs()), 1e-12);
}

TEST(MeasuredInformation, OrthogonalEnsembleIsPerfectlyReadable) {
  const CQEnsemble e = orthogonal_ensemble(4);
  EXPECT_NEAR(measured_mutual_information(e, projective_povm(ComplexMatrix::Identity(4, 4))), 2.0, 1e-12);
}

TEST(MeasuredInformation, MatchesOracleOnExplicitTable) {
  Rng rng(23);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CQEnsemble e = random_cq_ensemble(3, 2, Purity::Mixed, seed);
    const ComplexMatrix w = random_isometry(2, 3, rng);
    oracle::Table2 t(3, std::vector<double>(3));
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const ComplexVector v = w.col(b);
        t[a][b] = e.probs()[a] * (v.adjoint() * e.states()[a].matrix() * v)(0, 0).real();
      }
    }
    EXPECT_NEAR(measured_mutual_information(e, Povm::from_vectors(w)), oracle::mutual_information(t), 1e-10);
  }
}

TEST(MeasuredInformation, BoundedByHolevoAndDecomposes) {
  Rng rng(24);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const int d = 2 + static_cast<int>(seed % 2);
    const CQEnsemble e = random_cq_ensemble(n, d, seed % 2 ? Purity::Pure : Purity::Mixed, seed);
    const Povm p = Povm::from_vectors(random_isometry(d, d * d, rng));
    const double mi = measured_mutual_information(e, p);
    const double chi = holevo_chi(e);
    EXPECT_GE(mi, -1e-12);
    EXPECT_LE(mi, chi + 1e-9) << "seed " << seed;
    // I(A;B_measured) = H(A) - sum_b p_b S(rho_{A|b}).
    EXPECT_NEAR(mi + measured_conditional_entropy(e, p), shannon_entropy(e.probs()), 1e-9);
    // Measuring cannot decrease S(A|B).
    const double s_cond = quantum_conditional_entropy(cq_to_density(e), n, d);
    EXPECT_GE(measured_conditional_entropy(e, p), s_cond - 1e-9);
  }
}

TEST(MeasuredInformation, UnitarilyCovariant) {
  Rng rng(25);
  const CQEnsemble e = random_cq_ensemble(3, 3, Purity::Pure, 2);
  const ComplexMatrix v = random_unitary(3, rng);
  const ComplexMatrix w = random_isometry(3, 9, rng);
  EXPECT_NEAR(measured_mutual_information(e, Povm::from_vectors(w)),
              measured_mutual_information(conjugate(e, v), Povm::from_vectors(v * w)), 1e-10);
}

TEST(InducedJoint, DimensionMismatch) {
  EXPECT_THROW(induced_joint(two_state_ensemble(), Povm::trivial(3)), DimensionError);
}

}  // namespace
}  // namespace qlock
