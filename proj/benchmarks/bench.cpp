#include <benchmark/benchmark.h>

#include "qlock/accessible.hpp"
#include "qlock/discord.hpp"
#include "qlock/protocol.hpp"
#include "qlock/random.hpp"

namespace {

using namespace qlock;

void BM_VonNeumannEntropy(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix rho = random_cq_ensemble(1, d, Purity::Mixed, 1).states()[0];
  for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(rho));
}
BENCHMARK(BM_VonNeumannEntropy)->Arg(4)->Arg(16)->Arg(64);

void BM_PartialTrace(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const LockingSetup s = build_locking_state(m, BasisFamily::HadamardTensor);
  const DensityMatrix rho = cq_to_density(s.ensemble);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(rho, s.ensemble.size(), s.ensemble.dim_b(), Subsystem::B));
  }
}
BENCHMARK(BM_PartialTrace)->DenseRange(1, 3);

void BM_MeasuredMutualInformation(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const LockingSetup s = build_locking_state(m, BasisFamily::Fourier);
  Rng rng(2);
  const int d = s.ensemble.dim_b();
  const Povm povm = Povm::from_vectors(random_unitary(d * d, rng).topRows(d));
  for (auto _ : state) benchmark::DoNotOptimize(measured_mutual_information(s.ensemble, povm));
}
BENCHMARK(BM_MeasuredMutualInformation)->DenseRange(1, 3);

void BM_HillClimb(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const LockingSetup s = build_locking_state(m, BasisFamily::HadamardTensor);
  const OptimizerConfig cfg;
  const int d = s.ensemble.dim_b();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hill_climb(s.ensemble, cfg, d * d, seed++));
}
BENCHMARK(BM_HillClimb)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_AccessibleInformation(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const LockingSetup s = build_locking_state(m, BasisFamily::HadamardTensor);
  OptimizerConfig cfg;
  cfg.mub_partner = s.instance.basis_unitaries()[1];
  for (auto _ : state) benchmark::DoNotOptimize(accessible_information(s.ensemble, cfg).value);
}
BENCHMARK(BM_AccessibleInformation)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_SimulateAfterKey(benchmark::State& state) {
  const LockingSetup s = build_locking_state(2, BasisFamily::HadamardTensor);
  const StrategySpec strategy{StrategyKind::AfterKeyConditionedBasis, std::nullopt};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_locking_run(s, strategy, n, 7).report);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_SimulateAfterKey)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

void BM_OneTimePadKeyBound(benchmark::State& state) {
  const JointDistribution j = one_time_pad_joint(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classical_key_bound_check(j));
}
BENCHMARK(BM_OneTimePadKeyBound)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
