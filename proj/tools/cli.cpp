#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "qlock/discord.hpp"
#include "qlock/error.hpp"
#include "qlock/protocol.hpp"
#include "qlock/random.hpp"
#include "qlock/states.hpp"

namespace qlock::cli {

namespace {

struct OptimizerFlags {
  int restarts = 50;
  int iters = 200;
  int outcome_budget = 0;
  std::uint64_t seed = 0;
};

struct CommonFlags {
  int threads = 0;
  std::string out_file;
  bool json = false;
  bool timings = false;
};

class PhaseTimer {
 public:
  explicit PhaseTimer(bool enabled) : enabled_(enabled) {}

  template <typename F>
  auto time(const std::string& phase, F&& f) -> decltype(f()) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(phase, start);
    } else {
      auto value = f();
      record(phase, start);
      return value;
    }
  }

  std::map<std::string, double> timings() const { return timings_; }

 private:
  void record(const std::string& phase, std::chrono::steady_clock::time_point start) {
    if (!enabled_) return;
    timings_[phase] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  bool enabled_;
  std::map<std::string, double> timings_;
};

int resolved_threads(int requested) {
  if (requested > 0) return requested;
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

OptimizerConfig make_config(const OptimizerFlags& f, int threads) {
  OptimizerConfig cfg;
  cfg.restarts = f.restarts;
  cfg.max_iters = f.iters;
  cfg.outcome_budget = f.outcome_budget;
  cfg.seed = f.seed;
  cfg.threads = threads;
  return cfg;
}

void add_optimizer_flags(CLI::App* app, OptimizerFlags& f) {
  app->add_option("--restarts", f.restarts, "Random restarts of the POVM search")->check(CLI::PositiveNumber);
  app->add_option("--iters", f.iters, "Hill-climbing iterations per restart")->check(CLI::NonNegativeNumber);
  app->add_option("--outcome-budget", f.outcome_budget, "Rank-1 POVM outcomes (0 = d^2)");
  app->add_option("--seed", f.seed, "Seed for all randomness");
}

void add_common_flags(CLI::App* app, CommonFlags& f) {
  app->add_option("--threads", f.threads, "Worker threads (default: available parallelism)");
  app->add_option("--out", f.out_file, "Write the JSON report to FILE");
  app->add_flag("--json", f.json, "Print the JSON report instead of a summary");
  app->add_flag("--timings", f.timings, "Record per-phase wall-clock timings in the report");
}

Json echo_optimizer(const OptimizerFlags& f) {
  return Json{{"restarts", f.restarts}, {"iters", f.iters}, {"outcome_budget", f.outcome_budget}, {"seed", f.seed}};
}

std::string bits(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

void emit(const RunReport& report, const CommonFlags& common, std::ostream& out,
          const std::string& summary) {
  const Json j = report;
  if (!common.out_file.empty()) {
    std::ofstream file(common.out_file);
    if (!file) throw InputError("cannot write '" + common.out_file + "'");
    file << j.dump(2) << '\n';
  }
  if (common.json) {
    out << j.dump(2) << '\n';
  } else {
    out << summary;
  }
}

// Builtin ensembles: locking:m=1..3, bb84pair, orthogonal:n.
struct Builtin {
  CQEnsemble ensemble;
  std::optional<ComplexMatrix> mub_partner;
};

Builtin resolve_builtin(const std::string& name, BasisFamily family) {
  if (name == "bb84pair") return {two_state_ensemble(), std::nullopt};
  if (name.rfind("locking:m=", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(name.substr(10));
    } catch (const std::exception&) {
      throw InputError("bad builtin '" + name + "'");
    }
    if (m < 1 || m > 3) throw LimitError("builtin locking ensembles cover m = 1..3");
    LockingSetup setup = build_locking_state(m, family);
    return {setup.ensemble, setup.instance.basis_unitaries().back()};
  }
  if (name.rfind("orthogonal:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(11));
    } catch (const std::exception&) {
      throw InputError("bad builtin '" + name + "'");
    }
    if (n < 1) throw InputError("orthogonal ensembles need at least one letter");
    if (n > kMaxOptimizerDim) throw LimitError("instance too large");
    return {orthogonal_ensemble(n), std::nullopt};
  }
  throw InputError("unknown builtin '" + name + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// --- commands ---------------------------------------------------------------

struct DiscordArgs {
  std::string builtin;
  std::string ensemble_file;
  std::string family = "hadamard";
  OptimizerFlags opt;
  CommonFlags common;
};

int cmd_discord(const DiscordArgs& args, std::ostream& out) {
  if (args.builtin.empty() == args.ensemble_file.empty()) {
    throw InputError("discord: give exactly one of --builtin or --ensemble");
  }
  const int threads = resolved_threads(args.common.threads);
  PhaseTimer timer(args.common.timings);
  const BasisFamily family = basis_family_from_string(args.family);
  Builtin source = timer.time("load", [&] {
    if (!args.builtin.empty()) return resolve_builtin(args.builtin, family);
    return Builtin{ensemble_from_json(read_json_file(args.ensemble_file)), std::nullopt};
  });
  OptimizerConfig cfg = make_config(args.opt, threads);
  cfg.mub_partner = source.mub_partner;
  const DiscordReport report = timer.time("discord", [&] { return quantum_discord_cq(source.ensemble, cfg); });

  RunReport run;
  run.command = "discord";
  run.config_echo = Json{{"builtin", args.builtin},
                         {"ensemble", args.ensemble_file},
                         {"family", args.family},
                         {"optimizer", echo_optimizer(args.opt)},
                         {"threads", threads}};
  run.results = Json{{"discord", report}};
  run.timings_ms = timer.timings();
  run.seed = args.opt.seed;

  std::ostringstream summary;
  summary << "quantum discord (A classical, B measured)\n"
          << "  I(A;B)               " << bits(report.mutual_info_q) << " bits\n"
          << "  I_acc                " << bits(report.i_acc) << " bits\n"
          << "  discord              " << bits(report.discord) << " bits\n"
          << "  S(A|B)               " << bits(report.cond_entropy_q) << " bits\n"
          << "  min sum p_b S(A|b)   " << bits(report.min_measured_cond_entropy) << " bits\n"
          << "  identity residual    " << std::scientific << std::setprecision(2)
          << report.identity_residual << "\n";
  emit(run, args.common, out, summary.str());
  return kSuccess;
}

struct LockArgs {
  int m = 1;
  std::string family = "hadamard";
  OptimizerFlags opt;
  CommonFlags common;
};

int cmd_lock_analyze(const LockArgs& args, std::ostream& out) {
  if (args.m < 1 || args.m > 3) throw LimitError("lock-analyze: m must be in [1, 3]");
  const int threads = resolved_threads(args.common.threads);
  PhaseTimer timer(args.common.timings);
  const BasisFamily family = basis_family_from_string(args.family);
  const LockingSetup setup = timer.time("build", [&] { return build_locking_state(args.m, family); });
  const LockingReport locking =
      timer.time("locking_delta", [&] { return locking_delta(setup, make_config(args.opt, threads)); });
  const IdentityChainReport chain = timer.time("identity_chain", [&] { return single_copy_identity_chain(setup); });

  RunReport run;
  run.command = "lock-analyze";
  run.config_echo = Json{{"m", args.m},
                         {"family", args.family},
                         {"optimizer", echo_optimizer(args.opt)},
                         {"threads", threads}};
  run.results = Json{{"locking", locking}, {"identity_chain", chain}};
  run.timings_ms = timer.timings();
  run.seed = args.opt.seed;

  std::ostringstream summary;
  summary << "m  I_q(AK;B)  I_acc(AK;B)  I_acc(AK;BK)  Delta   discord\n"
          << locking.m << "  " << bits(locking.i_q_without_key) << "     " << bits(locking.i_acc_without_key)
          << "       " << bits(locking.i_acc_with_key) << "        " << bits(locking.delta) << "  "
          << bits(locking.discord) << "\n"
          << "|Delta - discord| = " << std::scientific << std::setprecision(2)
          << locking.delta_equals_discord_residual << ", identity chain residual = "
          << chain.equality_residual << "\n";
  emit(run, args.common, out, summary.str());
  return kSuccess;
}

struct SimulateArgs {
  int m = 1;
  std::string family = "hadamard";
  std::string strategy = "after-key";
  std::uint64_t n = 100000;
  std::string povm_file;
  std::string csv_file;
  OptimizerFlags opt;
  CommonFlags common;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  if (args.strategy != "after-key" && args.strategy != "before-key") {
    throw InputError("simulate: --strategy must be after-key or before-key");
  }
  if (args.n < 1) throw InputError("simulate: --n must be positive");
  const int threads = resolved_threads(args.common.threads);
  PhaseTimer timer(args.common.timings);
  const BasisFamily family = basis_family_from_string(args.family);
  const LockingSetup setup = timer.time("build", [&] { return build_locking_state(args.m, family); });

  StrategySpec strategy;
  std::string povm_source = "none";
  if (args.strategy == "before-key") {
    strategy.kind = StrategyKind::BeforeKeyFixedPovm;
    if (!args.povm_file.empty()) {
      strategy.povm = povm_from_json(read_json_file(args.povm_file));
      povm_source = "file";
    } else if (setup.instance.dim() <= kMaxOptimizerDim) {
      OptimizerConfig cfg = make_config(args.opt, threads);
      cfg.mub_partner = setup.instance.basis_unitaries().back();
      strategy.povm = timer.time("optimize", [&] { return optimize_povm(setup.ensemble, cfg); });
      povm_source = "optimizer";
    } else {
      strategy.povm = projective_povm(ComplexMatrix::Identity(setup.instance.dim(), setup.instance.dim()));
      povm_source = "computational";
    }
  }
  const SimulationResult sim =
      timer.time("sample", [&] { return simulate_locking_run(setup, strategy, args.n, args.opt.seed, threads); });

  if (!args.csv_file.empty()) {
    std::ofstream csv(args.csv_file);
    if (!csv) throw InputError("cannot write '" + args.csv_file + "'");
    write_counts_csv(csv, sim.counts);
  }

  RunReport run;
  run.command = "simulate";
  run.config_echo = Json{{"m", args.m},
                         {"family", args.family},
                         {"strategy", args.strategy},
                         {"n", args.n},
                         {"povm", args.povm_file},
                         {"povm_source", povm_source},
                         {"optimizer", echo_optimizer(args.opt)},
                         {"threads", threads}};
  run.results = Json{{"empirical", sim.report}};
  run.timings_ms = timer.timings();
  run.seed = args.opt.seed;

  std::ostringstream summary;
  summary << "locking protocol, m = " << args.m << ", strategy " << args.strategy << ", n = " << args.n << "\n"
          << "  empirical MI   " << bits(sim.report.empirical_mi) << " bits (+/- "
          << bits(sim.report.std_error_estimate) << ")\n"
          << "  analytic MI    " << bits(sim.report.analytic_mi) << " bits\n";
  if (strategy.kind == StrategyKind::AfterKeyConditionedBasis) {
    summary << "  decoding errors " << sim.report.decoding_errors << "\n";
  }
  emit(run, args.common, out, summary.str());
  return kSuccess;
}

struct SelftestArgs {
  bool json = false;
  std::string tolerances_file;
};

int cmd_selftest(const SelftestArgs& args, std::ostream& out) {
  Tolerances tol;
  if (!args.tolerances_file.empty()) tol = tolerances_from_json(read_json_file(args.tolerances_file));
  const std::vector<SelftestCheck> checks = run_selftest(tol);
  const auto first_failure =
      std::find_if(checks.begin(), checks.end(), [](const SelftestCheck& c) { return !c.passed; });

  if (args.json) {
    Json list = Json::array();
    for (const auto& c : checks) {
      list.push_back({{"group", c.group}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    out << Json{{"schema_version", kSchemaVersion}, {"checks", list}}.dump(2) << '\n';
  } else {
    std::vector<std::string> groups;
    for (const auto& c : checks) {
      if (std::find(groups.begin(), groups.end(), c.group) == groups.end()) groups.push_back(c.group);
    }
    for (const auto& g : groups) {
      const bool ok = std::all_of(checks.begin(), checks.end(),
                                  [&](const SelftestCheck& c) { return c.group != g || c.passed; });
      out << (ok ? "PASS " : "FAIL ") << g << "\n";
    }
    if (first_failure != checks.end()) {
      out << "first failure: " << first_failure->group << "/" << first_failure->name << " ("
          << first_failure->detail << ")\n";
    }
  }
  return first_failure == checks.end() ? kSuccess : kSelftestFailure;
}

}  // namespace

// --- reports ----------------------------------------------------------------

void to_json(Json& j, const RunReport& r) {
  j = Json{{"schema_version", r.schema_version},
           {"command", r.command},
           {"config_echo", r.config_echo},
           {"results", r.results},
           {"timings_ms", r.timings_ms},
           {"seed", r.seed}};
}

void from_json(const Json& j, RunReport& r) {
  j.at("schema_version").get_to(r.schema_version);
  j.at("command").get_to(r.command);
  r.config_echo = j.at("config_echo");
  r.results = j.at("results");
  j.at("timings_ms").get_to(r.timings_ms);
  j.at("seed").get_to(r.seed);
}

Tolerances tolerances_from_json(const Json& j) {
  try {
    Tolerances t;
    t.hermiticity = j.value("hermiticity", t.hermiticity);
    t.trace = j.value("trace", t.trace);
    t.psd = j.value("psd", t.psd);
    t.probability_sum = j.value("probability_sum", t.probability_sum);
    t.unitarity = j.value("unitarity", t.unitarity);
    t.povm_completeness = j.value("povm_completeness", t.povm_completeness);
    t.entropy_cutoff = j.value("entropy_cutoff", t.entropy_cutoff);
    t.outcome_cutoff = j.value("outcome_cutoff", t.outcome_cutoff);
    return t;
  } catch (const std::exception& e) {
    throw InputError(std::string("tolerances: ") + e.what());
  }
}

// --- selftest -----------------------------------------------------------------

std::vector<SelftestCheck> run_selftest(const Tolerances& tol) {
  std::vector<SelftestCheck> checks;
  auto check = [&](const std::string& group, const std::string& name, auto&& body) {
    SelftestCheck c{group, name, false, ""};
    try {
      const double deviation = body();
      c.passed = deviation <= 0.0;
      std::ostringstream d;
      d << "excess " << std::scientific << std::setprecision(3) << std::max(deviation, 0.0);
      c.detail = d.str();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  };

  // Each body returns how far the quantity lies outside its allowed band
  // (<= 0 means pass).
  check("entropy", "bell_conditional_entropy", [&] {
    ComplexVector phi = ComplexVector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    return std::abs(quantum_conditional_entropy(DensityMatrix::pure(phi), 2, 2) + 1.0) - 1e-9;
  });
  check("entropy", "pure_state_entropy", [&] {
    Rng rng(11);
    return std::abs(von_neumann_entropy(DensityMatrix::pure(random_unit_vector(5, rng)), tol)) - 1e-9;
  });
  check("entropy", "maximally_mixed_d8", [&] {
    return std::abs(von_neumann_entropy(DensityMatrix::maximally_mixed(8), tol) - 3.0) - 1e-9;
  });
  check("entropy", "unitary_invariance", [&] {
    Rng rng(12);
    const CQEnsemble e = random_cq_ensemble(1, 4, Purity::Mixed, 13);
    const ComplexMatrix u = random_unitary(4, rng);
    ComplexMatrix rotated = u * e.states()[0].matrix() * u.adjoint();
    if (hermiticity_residual(rotated) > tol.hermiticity) return hermiticity_residual(rotated);
    rotated = (rotated + rotated.adjoint()) / 2.0;
    return std::abs(von_neumann_entropy(DensityMatrix(rotated, tol), tol) -
                    von_neumann_entropy(e.states()[0], tol)) - 1e-9;
  });

  check("chain_rule", "random_joints", [&] {
    Rng rng(21);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const JointDistribution j = random_joint({3, 4, 2}, rng);
      worst = std::max(worst, classical_key_bound_check(j).chain_rule_residual);
    }
    return worst - 1e-12;
  });
  check("chain_rule", "conditional_entropy_forms", [&] {
    Rng rng(22);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const JointDistribution j = random_joint({4, 3}, rng);
      worst = std::max(worst, std::abs(classical_conditional_entropy(j) -
                                       classical_conditional_entropy_averaged(j)));
    }
    return worst - 1e-12;
  });
  check("chain_rule", "one_time_pad", [&] {
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m) {
      const KeyBoundReport r = classical_key_bound_check(one_time_pad_joint(m));
      worst = std::max({worst, std::abs(r.i_a_b), std::abs(r.i_a_bk - m), std::abs(r.i_a_k_given_b - m)});
    }
    return worst - 1e-12;
  });

  check("povm", "projective_completeness", [&] {
    Rng rng(31);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Povm p = projective_povm(random_unitary(4, rng));
      ComplexMatrix total = ComplexMatrix::Zero(4, 4);
      for (const auto& e : p.elements()) total += e;
      worst = std::max(worst, max_abs(total - ComplexMatrix::Identity(4, 4)));
    }
    return worst - tol.povm_completeness;
  });
  check("povm", "conjugated_state_hermiticity", [&] {
    Rng rng(32);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix u = random_unitary(4, rng);
      const ComplexMatrix sigma = random_cq_ensemble(1, 4, Purity::Mixed, 100 + i).states()[0].matrix();
      worst = std::max(worst, hermiticity_residual(u * sigma * u.adjoint()));
    }
    return worst - tol.hermiticity;
  });
  check("povm", "non_disturbance", [&] {
    Rng rng(33);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const CQEnsemble e = random_cq_ensemble(3, 3, Purity::Mixed, 200 + i);
      const DensityMatrix rho = cq_to_density(e);
      const OutcomeAnalysis o = measure_b(rho, 3, 3, projective_povm(random_unitary(3, rng)));
      ComplexMatrix avg = ComplexMatrix::Zero(3, 3);
      for (std::size_t k = 0; k < o.retained.size(); ++k) {
        avg += o.outcome_probs[o.retained[k]] * o.conditional_states[k].matrix();
      }
      worst = std::max(worst, max_abs(avg - partial_trace(rho, 3, 3, Subsystem::A).matrix()));
    }
    return worst - 1e-9;
  });

  check("discord_bounds", "random_ensembles", [&] {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.max_iters = 100;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const CQEnsemble e = random_cq_ensemble(2 + i % 3, 2 + i % 2, i % 2 ? Purity::Mixed : Purity::Pure, 300 + i);
      cfg.seed = 300 + i;
      const DiscordReport r = quantum_discord_cq(e, cfg);
      worst = std::max({worst, -r.discord - 1e-6, r.discord - r.diagnostics.holevo_chi - 1e-6,
                        r.identity_residual - 1e-6});
    }
    return worst;
  });

  check("locking", "delta_equals_discord", [&] {
    double worst = 0.0;
    for (int m = 1; m <= 2; ++m) {
      OptimizerConfig cfg;
      cfg.restarts = 5;
      const LockingReport r = locking_delta(build_locking_state(m, BasisFamily::HadamardTensor), cfg);
      worst = std::max({worst, r.delta_equals_discord_residual - 1e-3, std::abs(r.delta - m / 2.0) - 1e-3,
                        std::abs(r.discord - m / 2.0) - 1e-3});
    }
    return worst;
  });
  check("locking", "identity_chain", [&] {
    double worst = 0.0;
    for (int m = 1; m <= 2; ++m) {
      worst = std::max(worst, single_copy_identity_chain(build_locking_state(m, BasisFamily::HadamardTensor))
                                  .equality_residual - 1e-6);
    }
    return worst;
  });
  return checks;
}

// --- entry point ----------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qlock: classical and quantum correlations of classical-quantum states"};
  app.require_subcommand(1);

  DiscordArgs discord_args;
  auto* discord = app.add_subcommand("discord", "Quantum discord of a classical-quantum ensemble");
  discord->add_option("--builtin", discord_args.builtin, "locking:m=1..3, bb84pair or orthogonal:N");
  discord->add_option("--ensemble", discord_args.ensemble_file, "Ensemble JSON file");
  discord->add_option("--family", discord_args.family, "MUB family for locking builtins: hadamard|fourier");
  add_optimizer_flags(discord, discord_args.opt);
  add_common_flags(discord, discord_args.common);

  LockArgs lock_args;
  auto* lock = app.add_subcommand("lock-analyze", "Locking advantage against discord for the one-bit-key state");
  lock->add_option("--m", lock_args.m, "Message bits (1..3)");
  lock->add_option("--family", lock_args.family, "hadamard|fourier");
  add_optimizer_flags(lock, lock_args.opt);
  add_common_flags(lock, lock_args.common);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo run of the locking protocol");
  sim->add_option("--m", sim_args.m, "Message bits");
  sim->add_option("--family", sim_args.family, "hadamard|fourier");
  sim->add_option("--strategy", sim_args.strategy, "after-key|before-key");
  sim->add_option("--n", sim_args.n, "Number of samples");
  sim->add_option("--povm", sim_args.povm_file, "POVM JSON for the before-key strategy");
  sim->add_option("--csv", sim_args.csv_file, "Write the count table as CSV");
  add_optimizer_flags(sim, sim_args.opt);
  add_common_flags(sim, sim_args.common);

  SelftestArgs self_args;
  auto* self = app.add_subcommand("selftest", "Run the invariant suite");
  self->add_flag("--json", self_args.json, "Machine-readable result list");
  self->add_option("--tolerances", self_args.tolerances_file, "JSON file overriding tolerances");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (discord->parsed()) return cmd_discord(discord_args, out);
    if (lock->parsed()) return cmd_lock_analyze(lock_args, out);
    if (sim->parsed()) return cmd_simulate(sim_args, out);
    if (self->parsed()) return cmd_selftest(self_args, out);
  } catch (const LimitError& e) {
    err << "error: " << e.what() << '\n';
    return kLimitError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace qlock::cli
