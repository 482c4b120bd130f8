#include "qlock/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <thread>

#include "qlock/discord.hpp"
#include "qlock/error.hpp"
#include "qlock/random.hpp"

namespace qlock {

namespace {

// Row-stochastic table of cumulative outcome probabilities per letter.
std::vector<std::vector<double>> outcome_cdfs(const LockingSetup& setup, const StrategySpec& strategy) {
  const CQEnsemble& ens = setup.ensemble;
  std::vector<std::vector<double>> cdfs;
  for (int i = 0; i < ens.size(); ++i) {
    const ComplexMatrix& sigma = ens.states()[i].matrix();
    std::vector<double> probs;
    if (strategy.kind == StrategyKind::BeforeKeyFixedPovm) {
      for (const auto& element : strategy.povm->elements()) {
        probs.push_back(std::max(element.cwiseProduct(sigma.transpose()).sum().real(), 0.0));
      }
    } else {
      const ComplexMatrix& u = setup.instance.basis_unitaries()[i % setup.instance.num_keys()];
      for (int b = 0; b < u.cols(); ++b) {
        probs.push_back(std::max((u.col(b).adjoint() * sigma * u.col(b))(0, 0).real(), 0.0));
      }
    }
    double acc = 0.0;
    for (double& p : probs) p = (acc += p);
    for (double& p : probs) p /= acc;
    probs.back() = 1.0;
    cdfs.push_back(std::move(probs));
  }
  return cdfs;
}

CountTable empty_table(const LockingSetup& setup, int outcomes) {
  CountTable t;
  t.messages = setup.instance.dim();
  t.keys = setup.instance.num_keys();
  t.outcomes = outcomes;
  t.counts.assign(static_cast<std::size_t>(t.messages) * t.keys * outcomes, 0);
  return t;
}

JointDistribution joint_from_counts(const CountTable& counts, StrategyKind kind) {
  const int letters = counts.messages * counts.keys;
  if (kind == StrategyKind::BeforeKeyFixedPovm) {
    return JointDistribution::from_counts({letters, counts.outcomes}, counts.counts);
  }
  std::vector<std::uint64_t> regrouped(static_cast<std::size_t>(letters) * counts.outcomes * counts.keys, 0);
  for (int a = 0; a < counts.messages; ++a) {
    for (int k = 0; k < counts.keys; ++k) {
      const int letter = a * counts.keys + k;
      for (int b = 0; b < counts.outcomes; ++b) {
        regrouped[(static_cast<std::size_t>(letter) * counts.outcomes + b) * counts.keys + k] =
            counts.at(a, k, b);
      }
    }
  }
  return JointDistribution::from_counts({letters, counts.outcomes * counts.keys}, regrouped);
}

// sqrt(Var[log2 p(x,y) / (p(x) p(y))] / n) under the empirical law.
double plug_in_std_error(const JointDistribution& j, std::uint64_t n) {
  const auto pa = j.marginal(0);
  const auto pb = j.marginal(1);
  double first = 0.0;
  double second = 0.0;
  for (int a = 0; a < j.shape()[0]; ++a) {
    for (int b = 0; b < j.shape()[1]; ++b) {
      const double p = j.at(a, b);
      if (p <= 0.0) continue;
      const double info = std::log2(p / (pa[a] * pb[b]));
      first += p * info;
      second += p * info * info;
    }
  }
  return std::sqrt(std::max(second - first * first, 0.0) / static_cast<double>(n));
}

}  // namespace

std::uint64_t CountTable::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

double plug_in_mutual_information(const CountTable& counts, StrategyKind kind) {
  return classical_mutual_information(joint_from_counts(counts, kind));
}

SimulationResult simulate_locking_run(const LockingSetup& setup, const StrategySpec& strategy,
                                      std::uint64_t n_samples, std::uint64_t seed, int threads) {
  if (n_samples < 1) throw InputError("simulate: need at least one sample");
  const int d = setup.instance.dim();
  const int keys = setup.instance.num_keys();
  const int letters = setup.ensemble.size();
  double analytic = 0.0;
  int outcomes = d;
  if (strategy.kind == StrategyKind::BeforeKeyFixedPovm) {
    if (!strategy.povm) throw InvariantError("simulate: before-key strategy needs a POVM");
    if (strategy.povm->dim() != d) throw DimensionError("simulate: POVM dimension does not match instance");
    outcomes = strategy.povm->size();
    analytic = measured_mutual_information(setup.ensemble, *strategy.povm);
  } else {
    analytic = key_then_measure_info(setup.instance, setup.ensemble);
  }

  const auto cdfs = outcome_cdfs(setup, strategy);
  const std::uint64_t batches = (n_samples + kSimulationBatch - 1) / kSimulationBatch;
  std::vector<CountTable> partial(batches, empty_table(setup, outcomes));
  std::vector<std::uint64_t> errors(batches, 0);

  auto run_batch = [&](std::uint64_t batch) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
    Rng rng(seq);
    std::uniform_int_distribution<int> letter_dist(0, letters - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::uint64_t begin = batch * kSimulationBatch;
    const std::uint64_t end = std::min(n_samples, begin + kSimulationBatch);
    for (std::uint64_t s = begin; s < end; ++s) {
      const int letter = letter_dist(rng);
      const int a = letter / keys;
      const int k = letter % keys;
      const auto& cdf = cdfs[letter];
      const double u = unit(rng);
      const int b = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      const int outcome = std::min(b, outcomes - 1);
      ++partial[batch].at(a, k, outcome);
      if (strategy.kind == StrategyKind::AfterKeyConditionedBasis && outcome != a) ++errors[batch];
    }
  };

  const auto workers_wanted = static_cast<std::uint64_t>(std::max(threads, 1));
  const std::uint64_t workers = std::min(workers_wanted, batches);
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t b = t; b < batches; b += workers) run_batch(b);
      });
    }
  }

  SimulationResult result{{}, empty_table(setup, outcomes)};
  for (std::uint64_t b = 0; b < batches; ++b) {
    for (std::size_t c = 0; c < result.counts.counts.size(); ++c) {
      result.counts.counts[c] += partial[b].counts[c];
    }
    result.report.decoding_errors += errors[b];
  }
  const JointDistribution empirical = joint_from_counts(result.counts, strategy.kind);
  result.report.n_samples = n_samples;
  result.report.empirical_mi = classical_mutual_information(empirical);
  result.report.analytic_mi = analytic;
  result.report.std_error_estimate = plug_in_std_error(empirical, n_samples);
  result.report.seed = seed;
  return result;
}

void write_counts_csv(std::ostream& out, const CountTable& counts) {
  out << "a,k,b,count\n";
  for (int a = 0; a < counts.messages; ++a) {
    for (int k = 0; k < counts.keys; ++k) {
      for (int b = 0; b < counts.outcomes; ++b) {
        out << a << ',' << k << ',' << b << ',' << counts.at(a, k, b) << '\n';
      }
    }
  }
}

JointDistribution one_time_pad_joint(int m) {
  if (m < 1 || m > 3) throw LimitError("one_time_pad_joint: m must be in [1, 3]");
  const int n = 1 << m;
  std::vector<double> table(static_cast<std::size_t>(n) * n * n, 0.0);
  const double p = 1.0 / (static_cast<double>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int k = 0; k < n; ++k) {
      const int b = a ^ k;
      table[(static_cast<std::size_t>(a) * n + b) * n + k] = p;
    }
  }
  return JointDistribution({n, n, n}, std::move(table));
}

KeyBoundReport classical_key_bound_check(const JointDistribution& j) {
  if (j.rank() != 3) throw DimensionError("classical_key_bound_check: needs a joint over (A, B, K)");
  const int ab[] = {0, 1};
  const JointDistribution joint_ab({j.shape()[0], j.shape()[1]}, j.marginal_table(ab));
  const JointDistribution joint_a_bk = j.regroup({{0}, {1, 2}});

  KeyBoundReport r;
  r.i_a_b = classical_mutual_information(joint_ab);
  r.i_a_bk = classical_mutual_information(joint_a_bk);
  r.i_a_k_given_b = conditional_mutual_information(j);
  r.key_bits = std::log2(static_cast<double>(j.shape()[2]));
  r.slack = r.key_bits - r.i_a_k_given_b;
  r.bound_holds = r.i_a_k_given_b <= r.key_bits + 1e-12;
  r.chain_rule_residual = std::abs(r.i_a_bk - r.i_a_b - r.i_a_k_given_b);
  r.decodable = classical_conditional_entropy(joint_a_bk) <= 1e-12;
  if (r.decodable) {
    r.message_decomposition_residual = std::abs(shannon_entropy(j.marginal(0)) - r.i_a_bk);
  }
  return r;
}

}  // namespace qlock
