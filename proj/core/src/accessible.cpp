#include "qlock/accessible.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

#include "qlock/error.hpp"
#include "qlock/random.hpp"

namespace qlock {

namespace {

// Mutual information of the joint p(a, b) = p_a w_b^dagger sigma_a w_b.
class MeasuredInformation {
 public:
  explicit MeasuredInformation(const CQEnsemble& ens) : ens_(ens) {}

  double operator()(const ComplexMatrix& w) const {
    const int n = ens_.size();
    const auto outcomes = w.cols();
    joint_.resize(n, outcomes);
    for (int a = 0; a < n; ++a) {
      const ComplexMatrix sw = ens_.states()[a].matrix() * w;
      joint_.row(a) = ens_.probs()[a] * (w.conjugate().cwiseProduct(sw)).colwise().sum().real().cwiseMax(0.0);
    }
    joint_ /= joint_.sum();
    const Eigen::VectorXd pa = joint_.rowwise().sum();
    const Eigen::RowVectorXd pb = joint_.colwise().sum();
    double mi = 0.0;
    for (Eigen::Index b = 0; b < outcomes; ++b) {
      for (int a = 0; a < n; ++a) {
        const double p = joint_(a, b);
        if (p > 0.0) mi += p * std::log2(p / (pa(a) * pb(b)));
      }
    }
    return mi;
  }

 private:
  const CQEnsemble& ens_;
  mutable Eigen::MatrixXd joint_;
};

// Restores W W^dagger = I by the polar retraction W <- (W W^dagger)^{-1/2} W.
ComplexMatrix retract(const ComplexMatrix& w) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(w * w.adjoint());
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint() * w;
}

ComplexMatrix candidate_unitary(const CQEnsemble& ens, const OptimizerConfig& cfg,
                                CandidateBasis c, bool& available) {
  const int d = ens.dim_b();
  available = true;
  switch (c) {
    case CandidateBasis::Computational:
      return ComplexMatrix::Identity(d, d);
    case CandidateBasis::MubPartner:
      if (!cfg.mub_partner || cfg.mub_partner->rows() != d || cfg.mub_partner->cols() != d) {
        available = false;
        return {};
      }
      return *cfg.mub_partner;
    case CandidateBasis::MarginalEigenbasis:
      return eig_hermitian(ens.average_state().matrix()).vectors;
  }
  available = false;
  return {};
}

}  // namespace

std::string_view to_string(CandidateBasis c) {
  switch (c) {
    case CandidateBasis::Computational:
      return "computational";
    case CandidateBasis::MubPartner:
      return "mub_partner";
    case CandidateBasis::MarginalEigenbasis:
      return "marginal_eigenbasis";
  }
  return "unknown";
}

CandidateBasis candidate_basis_from_string(std::string_view name) {
  if (name == "computational") return CandidateBasis::Computational;
  if (name == "mub_partner") return CandidateBasis::MubPartner;
  if (name == "marginal_eigenbasis") return CandidateBasis::MarginalEigenbasis;
  throw InputError("unknown candidate basis '" + std::string(name) + "'");
}

int OptimizerConfig::resolved_outcome_budget(int d) const {
  if (restarts < 1) throw InputError("optimizer: restarts must be at least 1");
  if (max_iters < 0) throw InputError("optimizer: max_iters must be nonnegative");
  if (!(step_init > 0.0) || !(step_min > 0.0) || step_min > step_init) {
    throw InputError("optimizer: need 0 < step_min <= step_init");
  }
  const int budget = outcome_budget == 0 ? d * d : outcome_budget;
  if (budget < d || budget > d * d) {
    throw InputError("optimizer: outcome budget must lie between d and d^2");
  }
  return budget;
}

double holevo_chi(const CQEnsemble& ens) {
  double average_entropy = 0.0;
  for (int a = 0; a < ens.size(); ++a) {
    average_entropy += ens.probs()[a] * von_neumann_entropy(ens.states()[a]);
  }
  return von_neumann_entropy(ens.average_state()) - average_entropy;
}

ComplexMatrix hill_climb(const CQEnsemble& ens, const OptimizerConfig& cfg, int budget,
                         std::uint64_t seed) {
  const int d = ens.dim_b();
  Rng rng(seed);
  const MeasuredInformation objective(ens);

  ComplexMatrix w = random_unitary(budget, rng).topRows(d);
  double best = objective(w);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d) * budget);
  const double decay = cfg.max_iters > 1
                           ? std::pow(cfg.step_min / cfg.step_init, 1.0 / (cfg.max_iters - 1))
                           : 1.0;
  double step = cfg.step_init;
  for (int it = 0; it < cfg.max_iters; ++it, step *= decay) {
    const ComplexMatrix direction = ginibre(d, budget, rng) * scale;
    // Project onto the tangent space of {W : W W^dagger = I}.
    const ComplexMatrix x = direction * w.adjoint();
    const ComplexMatrix tangent = direction - 0.5 * (x + x.adjoint()) * w;
    const ComplexMatrix proposal = retract(w + step * tangent);
    const double value = objective(proposal);
    if (value > best) {
      best = value;
      w = proposal;
    }
  }
  return w;
}

AccessibleInfoResult accessible_information(const CQEnsemble& ens, const OptimizerConfig& cfg) {
  const int d = ens.dim_b();
  if (d > kMaxOptimizerDim) throw LimitError("instance too large");
  const int budget = cfg.resolved_outcome_budget(d);

  std::optional<Povm> best_povm;
  double best_value = -1.0;
  std::vector<double> found;

  std::vector<CandidateValue> candidates;
  for (CandidateBasis c : cfg.candidate_bases) {
    bool available = false;
    const ComplexMatrix u = candidate_unitary(ens, cfg, c, available);
    if (!available) continue;
    Povm povm = projective_povm(u);
    const double value = measured_mutual_information(ens, povm);
    candidates.push_back({c, value});
    found.push_back(value);
    if (value > best_value) {
      best_value = value;
      best_povm = std::move(povm);
    }
  }

  // Each restart owns its slot; the seed is derived from the restart index.
  std::vector<ComplexMatrix> vectors(cfg.restarts);
  std::vector<double> restart_values(cfg.restarts);
  auto run = [&](int r) {
    vectors[r] = hill_climb(ens, cfg, budget, cfg.seed + static_cast<std::uint64_t>(r));
    restart_values[r] = measured_mutual_information(ens, Povm::from_vectors(vectors[r]));
  };
  const int threads = std::clamp(cfg.threads, 1, cfg.restarts);
  if (threads == 1) {
    for (int r = 0; r < cfg.restarts; ++r) run(r);
  } else {
    std::vector<std::jthread> workers;
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (int r = t; r < cfg.restarts; r += threads) run(r);
      });
    }
  }
  for (int r = 0; r < cfg.restarts; ++r) {
    found.push_back(restart_values[r]);
    if (restart_values[r] > best_value) {
      best_value = restart_values[r];
      best_povm = Povm::from_vectors(vectors[r]);
    }
  }

  std::sort(found.begin(), found.end(), std::greater<>());
  const bool converged = found.size() >= 2 && found[0] - found[1] <= 1e-4;
  return AccessibleInfoResult{best_value, std::move(*best_povm), holevo_chi(ens),
                              std::move(restart_values), std::move(candidates), converged};
}

Povm optimize_povm(const CQEnsemble& ens, const OptimizerConfig& cfg) {
  return accessible_information(ens, cfg).best_povm;
}

}  // namespace qlock
