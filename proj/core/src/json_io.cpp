#include "qlock/json_io.hpp"

#include <string>

#include "qlock/error.hpp"

namespace qlock {

namespace {

// Runs a parse step, converting library and JSON exceptions into InputError.
template <typename F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  return parsing("matrix", [&] {
    if (!j.is_array() || j.empty()) throw InputError("matrix: expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Json& row = j.at(i);
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        throw InputError("matrix: ragged rows");
      }
      for (Eigen::Index k = 0; k < cols; ++k) {
        const Json& z = row.at(k);
        if (!z.is_array() || z.size() != 2) throw InputError("matrix: entries must be [re, im]");
        m(i, k) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    }
    return m;
  });
}

Json ensemble_to_json(const CQEnsemble& ens) {
  Json states = Json::array();
  for (const auto& s : ens.states()) states.push_back(matrix_to_json(s.matrix()));
  return Json{{"labels", ens.labels()},
              {"probs", std::vector<double>(ens.probs().values().begin(), ens.probs().values().end())},
              {"dim_b", ens.dim_b()},
              {"states", std::move(states)}};
}

CQEnsemble ensemble_from_json(const Json& j) {
  return parsing("ensemble", [&] {
    auto labels = j.at("labels").get<std::vector<int>>();
    auto probs = j.at("probs").get<std::vector<double>>();
    const int dim_b = j.at("dim_b").get<int>();
    std::vector<DensityMatrix> states;
    for (const Json& s : j.at("states")) {
      ComplexMatrix m = matrix_from_json(s);
      if (m.rows() != dim_b || m.cols() != dim_b) throw InputError("ensemble: state does not match dim_b");
      states.emplace_back(std::move(m));
    }
    return CQEnsemble(std::move(labels), ProbabilityVector(std::move(probs)), std::move(states));
  });
}

Json povm_to_json(const Povm& povm) {
  Json elements = Json::array();
  for (const auto& e : povm.elements()) elements.push_back(matrix_to_json(e));
  return Json{{"dim", povm.dim()}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const Json& j) {
  return parsing("povm", [&] {
    const int dim = j.at("dim").get<int>();
    std::vector<ComplexMatrix> elements;
    for (const Json& e : j.at("elements")) {
      elements.push_back(matrix_from_json(e));
      if (elements.back().rows() != dim) throw InputError("povm: element does not match dim");
    }
    return Povm(std::move(elements));
  });
}

Json optimizer_config_to_json(const OptimizerConfig& cfg) {
  Json candidates = Json::array();
  for (auto c : cfg.candidate_bases) candidates.push_back(std::string(to_string(c)));
  return Json{{"restarts", cfg.restarts},
              {"max_iters", cfg.max_iters},
              {"step_init", cfg.step_init},
              {"step_min", cfg.step_min},
              {"outcome_budget", cfg.outcome_budget},
              {"candidate_bases", std::move(candidates)},
              {"seed", cfg.seed},
              {"threads", cfg.threads}};
}

OptimizerConfig optimizer_config_from_json(const Json& j) {
  return parsing("optimizer config", [&] {
    OptimizerConfig cfg;
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.max_iters = j.value("max_iters", cfg.max_iters);
    cfg.step_init = j.value("step_init", cfg.step_init);
    cfg.step_min = j.value("step_min", cfg.step_min);
    cfg.outcome_budget = j.value("outcome_budget", cfg.outcome_budget);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    if (j.contains("candidate_bases")) {
      cfg.candidate_bases.clear();
      for (const auto& name : j.at("candidate_bases")) {
        cfg.candidate_bases.push_back(candidate_basis_from_string(name.get<std::string>()));
      }
    }
    return cfg;
  });
}

void to_json(Json& j, const CandidateValue& v) {
  j = Json{{"basis", std::string(to_string(v.basis))}, {"value", v.value}};
}

void from_json(const Json& j, CandidateValue& v) {
  v.basis = candidate_basis_from_string(j.at("basis").get<std::string>());
  v.value = j.at("value").get<double>();
}

void to_json(Json& j, const OptimizerDiagnostics& d) {
  j = Json{{"per_restart_values", d.per_restart_values},
           {"candidate_values", d.candidate_values},
           {"holevo_chi", d.holevo_chi},
           {"best_povm_outcomes", d.best_povm_outcomes},
           {"converged", d.converged}};
}

void from_json(const Json& j, OptimizerDiagnostics& d) {
  j.at("per_restart_values").get_to(d.per_restart_values);
  j.at("candidate_values").get_to(d.candidate_values);
  j.at("holevo_chi").get_to(d.holevo_chi);
  j.at("best_povm_outcomes").get_to(d.best_povm_outcomes);
  j.at("converged").get_to(d.converged);
}

void to_json(Json& j, const DiscordReport& r) {
  j = Json{{"measurement_side", "B"},
           {"mutual_info_q", r.mutual_info_q},
           {"i_acc", r.i_acc},
           {"discord", r.discord},
           {"cond_entropy_q", r.cond_entropy_q},
           {"min_measured_cond_entropy", r.min_measured_cond_entropy},
           {"identity_residual", r.identity_residual},
           {"optimizer", r.diagnostics}};
}

void from_json(const Json& j, DiscordReport& r) {
  j.at("mutual_info_q").get_to(r.mutual_info_q);
  j.at("i_acc").get_to(r.i_acc);
  j.at("discord").get_to(r.discord);
  j.at("cond_entropy_q").get_to(r.cond_entropy_q);
  j.at("min_measured_cond_entropy").get_to(r.min_measured_cond_entropy);
  j.at("identity_residual").get_to(r.identity_residual);
  j.at("optimizer").get_to(r.diagnostics);
}

void to_json(Json& j, const LockingReport& r) {
  j = Json{{"m", r.m},
           {"key_bits", r.key_bits},
           {"i_acc_with_key", r.i_acc_with_key},
           {"i_acc_without_key", r.i_acc_without_key},
           {"i_q_without_key", r.i_q_without_key},
           {"delta", r.delta},
           {"discord", r.discord},
           {"delta_equals_discord_residual", r.delta_equals_discord_residual}};
}

void from_json(const Json& j, LockingReport& r) {
  j.at("m").get_to(r.m);
  j.at("key_bits").get_to(r.key_bits);
  j.at("i_acc_with_key").get_to(r.i_acc_with_key);
  j.at("i_acc_without_key").get_to(r.i_acc_without_key);
  j.at("i_q_without_key").get_to(r.i_q_without_key);
  j.at("delta").get_to(r.delta);
  j.at("discord").get_to(r.discord);
  j.at("delta_equals_discord_residual").get_to(r.delta_equals_discord_residual);
}

void to_json(Json& j, const IdentityChainReport& r) {
  j = Json{{"i_acc_with_key", r.i_acc_with_key ? Json(*r.i_acc_with_key) : Json(nullptr)},
           {"i_q_with_key", r.i_q_with_key},
           {"i_q_without_key_plus_key", r.i_q_without_key_plus_key},
           {"message_bound", r.message_bound},
           {"equality_residual", r.equality_residual},
           {"inequalities_hold", r.inequalities_hold}};
}

void to_json(Json& j, const EmpiricalReport& r) {
  j = Json{{"n_samples", r.n_samples},
           {"empirical_mi", r.empirical_mi},
           {"analytic_mi", r.analytic_mi},
           {"std_error_estimate", r.std_error_estimate},
           {"seed", r.seed},
           {"decoding_errors", r.decoding_errors}};
}

void from_json(const Json& j, EmpiricalReport& r) {
  j.at("n_samples").get_to(r.n_samples);
  j.at("empirical_mi").get_to(r.empirical_mi);
  j.at("analytic_mi").get_to(r.analytic_mi);
  j.at("std_error_estimate").get_to(r.std_error_estimate);
  j.at("seed").get_to(r.seed);
  j.at("decoding_errors").get_to(r.decoding_errors);
}

void to_json(Json& j, const KeyBoundReport& r) {
  j = Json{{"i_a_b", r.i_a_b},
           {"i_a_bk", r.i_a_bk},
           {"i_a_k_given_b", r.i_a_k_given_b},
           {"key_bits", r.key_bits},
           {"slack", r.slack},
           {"bound_holds", r.bound_holds},
           {"chain_rule_residual", r.chain_rule_residual},
           {"decodable", r.decodable},
           {"message_decomposition_residual", r.message_decomposition_residual}};
}

}  // namespace qlock
