#include "qlock/discord.hpp"

#include <algorithm>
#include <cmath>

#include "qlock/error.hpp"

namespace qlock {

namespace {

void require_generated_from(const LockingInstance& inst, const CQEnsemble& ens) {
  const int d = inst.dim();
  if (ens.dim_b() != d || ens.size() != d * inst.num_keys()) {
    throw InvariantError("ensemble does not match locking instance");
  }
  for (int a = 0; a < d; ++a) {
    for (int k = 0; k < inst.num_keys(); ++k) {
      const int idx = locking_label(a, k);
      const ComplexVector psi = inst.basis_unitaries()[k].col(a);
      const ComplexMatrix expected = psi * psi.adjoint();
      if (ens.labels()[idx] != idx ||
          max_abs(ens.states()[idx].matrix() - expected) > kDefaultTolerances.hermiticity) {
        throw InvariantError("ensemble does not match locking instance");
      }
    }
  }
}

double spread(std::initializer_list<double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

}  // namespace

DiscordReport quantum_discord_cq(const CQEnsemble& ens, const OptimizerConfig& cfg) {
  const DensityMatrix rho = cq_to_density(ens);
  const int n = ens.size();
  const int d = ens.dim_b();
  AccessibleInfoResult acc = accessible_information(ens, cfg);

  DiscordReport r;
  r.mutual_info_q = quantum_mutual_information(rho, n, d);
  r.i_acc = acc.value;
  r.discord = r.mutual_info_q - r.i_acc;
  r.cond_entropy_q = quantum_conditional_entropy(rho, n, d);
  r.min_measured_cond_entropy = measured_conditional_entropy(ens, acc.best_povm);
  r.identity_residual =
      std::abs(r.discord - (r.min_measured_cond_entropy - r.cond_entropy_q));
  r.diagnostics = {std::move(acc.per_restart_values), std::move(acc.candidate_values),
                   acc.upper_bound, acc.best_povm.size(), acc.converged};
  return r;
}

double key_then_measure_info(const LockingInstance& inst, const CQEnsemble& ens) {
  require_generated_from(inst, ens);
  const int d = inst.dim();
  const int keys = inst.num_keys();
  const int n = ens.size();
  // A = letter index (a, k); B = (outcome b, k).
  std::vector<double> table(static_cast<std::size_t>(n) * d * keys, 0.0);
  for (int i = 0; i < n; ++i) {
    const int k = i % keys;
    const ComplexMatrix& u = inst.basis_unitaries()[k];
    const ComplexMatrix& sigma = ens.states()[i].matrix();
    for (int b = 0; b < d; ++b) {
      const double born = std::max((u.col(b).adjoint() * sigma * u.col(b))(0, 0).real(), 0.0);
      table[static_cast<std::size_t>(i) * d * keys + b * keys + k] = ens.probs()[i] * born;
    }
  }
  double total = 0.0;
  for (double p : table) total += p;
  for (double& p : table) p /= total;
  return classical_mutual_information(JointDistribution({n, d * keys}, std::move(table)));
}

CQEnsemble with_key_register(const CQEnsemble& ens, int key_bits) {
  if (key_bits < 1 || key_bits > 4) throw LimitError("with_key_register: key_bits must be in [1, 4]");
  const int keys = 1 << key_bits;
  std::vector<DensityMatrix> states;
  for (int i = 0; i < ens.size(); ++i) {
    const int k = ens.labels()[i] % keys;
    ComplexMatrix key = ComplexMatrix::Zero(keys, keys);
    key(k, k) = 1.0;
    states.emplace_back(kron(key, ens.states()[i].matrix()));
  }
  return CQEnsemble(ens.labels(), ens.probs(), std::move(states));
}

LockingReport locking_delta(const LockingSetup& setup, const OptimizerConfig& cfg) {
  const LockingInstance& inst = setup.instance;
  OptimizerConfig tuned = cfg;
  if (!tuned.mub_partner) tuned.mub_partner = inst.basis_unitaries().back();

  LockingReport r;
  r.m = inst.m();
  r.key_bits = inst.key_size();
  r.i_acc_with_key = key_then_measure_info(inst, setup.ensemble);
  r.i_acc_without_key = accessible_information(setup.ensemble, tuned).value;
  r.i_q_without_key = quantum_mutual_information(cq_to_density(setup.ensemble),
                                                 setup.ensemble.size(), setup.ensemble.dim_b());
  r.delta = r.i_acc_with_key - (r.i_acc_without_key + r.key_bits);
  r.discord = quantum_discord_cq(setup.ensemble, tuned).discord;
  r.delta_equals_discord_residual = std::abs(r.delta - r.discord);
  return r;
}

IdentityChainReport key_chain_bounds(const CQEnsemble& ens, int key_bits) {
  const CQEnsemble keyed = with_key_register(ens, key_bits);
  IdentityChainReport r;
  r.i_q_with_key = quantum_mutual_information(cq_to_density(keyed), keyed.size(), keyed.dim_b());
  r.i_q_without_key_plus_key =
      quantum_mutual_information(cq_to_density(ens), ens.size(), ens.dim_b()) + key_bits;
  r.message_bound = std::log2(static_cast<double>(ens.dim_b())) + key_bits;
  r.equality_residual = spread({r.i_q_with_key, r.i_q_without_key_plus_key});
  r.inequalities_hold = r.i_q_with_key <= r.i_q_without_key_plus_key + 1e-9 &&
                        r.i_q_without_key_plus_key <= r.message_bound + 1e-9;
  return r;
}

IdentityChainReport single_copy_identity_chain(const LockingSetup& setup) {
  IdentityChainReport r = key_chain_bounds(setup.ensemble, setup.instance.key_size());
  const double with_key = key_then_measure_info(setup.instance, setup.ensemble);
  r.i_acc_with_key = with_key;
  r.equality_residual =
      spread({with_key, r.i_q_with_key, r.i_q_without_key_plus_key, r.message_bound});
  return r;
}

}  // namespace qlock
