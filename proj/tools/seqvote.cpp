#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "seqvote/axioms.hpp"
#include "seqvote/error.hpp"
#include "seqvote/gen.hpp"
#include "seqvote/io.hpp"
#include "seqvote/rules.hpp"

using namespace seqvote;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct RunArgs {
  std::string instance;
  std::string rule;
  std::string completion = "phragmen";
  std::uint64_t node_budget = PavOptions{}.node_budget;
  bool compact = false;
};

struct CheckArgs {
  std::string instance;
  std::string decisions;
  std::string seq;
  std::string axiom;
  std::string epsilon = "0";
  std::string alpha = "1";
  std::string agreement = "paper-k";
  std::string target = "ell";
  std::size_t voter_limit = CheckOptions{}.voter_limit;
  std::uint64_t node_budget = ParetoOptions{}.node_budget;
};

struct GenArgs {
  std::string dist = "restricted";
  std::size_t n = 20;
  std::size_t T = 50;
  std::size_t m = 20;
  double f = 1.5;
  std::optional<double> sigma;
  bool random = false;
  double p = 0.5;
  bool counterexample = false;
  std::string epsilon = "1/2";
  std::size_t k = 2;
  bool n_given = false;
  std::uint64_t guard = CounterexampleConfig{}.guard;
  std::string out;
};

struct ExperimentArgs {
  std::string config;
  std::optional<int> threads;
};

void print_json(const io::Json& j, bool compact) { std::cout << (compact ? j.dump() : j.dump(2)) << '\n'; }

int cmd_run(const Globals& g, const RunArgs& a) {
  const DecisionInstance inst = io::read_instance(a.instance);
  if (!is_known_rule(a.rule)) throw Error(ErrorCode::UnknownName, "unknown rule '" + a.rule + "'");
  MesConfig mes;
  mes.completion = parse_completion(a.completion);
  const RuleResult res = run_rule(a.rule, inst, mes, PavOptions{a.node_budget});
  if (!g.quiet) print_json(io::result_to_json(inst, res), a.compact);
  return 0;
}

AxiomKind representation_kind(const std::string& name) {
  if (name == "weak-jr") return {Family::JR, Strength::Weak};
  if (name == "jr") return {Family::JR, Strength::Full};
  if (name == "weak-pjr") return {Family::PJR, Strength::Weak};
  if (name == "pjr") return {Family::PJR, Strength::Full};
  if (name == "weak-ejr") return {Family::EJR, Strength::Weak};
  if (name == "ejr") return {Family::EJR, Strength::Full};
  throw Error(ErrorCode::UnknownName, "unknown axiom '" + name + "'");
}

int cmd_check(const Globals& g, const CheckArgs& a) {
  static const std::set<std::string> kAxioms = {"weak-jr", "jr",       "weak-pjr",           "pjr",    "weak-ejr",
                                                "ejr",     "lq-closed", "lq-closed-perpetual", "pareto", "variant-pjr"};
  if (!kAxioms.count(a.axiom)) throw Error(ErrorCode::UnknownName, "unknown axiom '" + a.axiom + "'");
  const DecisionInstance inst = io::read_instance(a.instance);
  if (a.decisions.empty() == a.seq.empty())
    throw Error(ErrorCode::ParseError, "give exactly one of a decisions file or --seq");
  const DecisionSequence seq =
      a.seq.empty() ? io::read_sequence(inst, a.decisions) : io::parse_sequence_text(inst, a.seq);

  AxiomReport report;
  if (a.axiom == "lq-closed" || a.axiom == "lq-closed-perpetual") {
    report = check_lower_quota_closed(inst, seq, a.axiom == "lq-closed-perpetual");
  } else if (a.axiom == "pareto") {
    report = check_pareto(inst, seq, ParetoOptions{a.node_budget});
  } else if (a.axiom == "variant-pjr") {
    VariantSpec spec;
    spec.size_slack = Fraction::parse(a.epsilon);
    spec.alpha = Fraction::parse(a.alpha);
    if (a.agreement == "paper-k") spec.agreement = AgreementMode::PaperK;
    else if (a.agreement == "ell") spec.agreement = AgreementMode::Ell;
    else if (a.agreement == "ell-over-alpha") spec.agreement = AgreementMode::EllOverAlpha;
    else throw Error(ErrorCode::UnknownName, "unknown agreement mode '" + a.agreement + "'");
    if (a.target == "ell") spec.target = TargetMode::Ell;
    else if (a.target == "floor-alpha-ell") spec.target = TargetMode::FloorAlphaEll;
    else throw Error(ErrorCode::UnknownName, "unknown target mode '" + a.target + "'");
    report = check_variant(inst, seq, spec, CheckOptions{a.voter_limit});
  } else {
    report = check_representation(inst, seq, representation_kind(a.axiom), CheckOptions{a.voter_limit});
  }
  if (!g.quiet) print_json(io::report_to_json(inst, report), false);
  return report.satisfied ? 0 : 1;
}

int cmd_gen(const Globals& g, const GenArgs& a) {
  const std::uint64_t seed = g.seed.value_or(0);
  DecisionInstance inst;
  std::string summary;
  if (a.counterexample + a.random > 1) throw Error(ErrorCode::BadConfig, "--random and --counterexample are exclusive");
  if (a.counterexample) {
    CounterexampleConfig c;
    c.epsilon = Fraction::parse(a.epsilon);
    c.k = a.k;
    c.T = a.T;
    if (a.n_given) c.n = a.n;
    c.guard = a.guard;
    const auto shape = counterexample_shape(c);
    inst = gen_counterexample(c);
    summary = fmt::format("counterexample: n={} T={} s={} subset-alternatives={}", shape.n, a.T, shape.s,
                          shape.subset_alternatives);
  } else if (a.random) {
    inst = gen_random(a.n, a.T, a.m, a.p, seed);
    summary = fmt::format("random: n={} T={} m={} p={}", a.n, a.T, a.m, a.p);
  } else {
    EuclideanConfig e;
    e.distribution = parse_distribution(a.dist);
    e.n = a.n;
    e.T = a.T;
    e.m = a.m;
    e.f = a.f;
    e.sigma = a.sigma;
    e.seed = seed;
    inst = gen_euclidean(e);
    summary = fmt::format("{}: n={} T={} m={} f={} sigma={}", a.dist, a.n, a.T, a.m, a.f, e.effective_sigma());
  }
  summary += fmt::format(" mean-approval-size={:.4f}", mean_approval_size(inst));

  if (a.out.empty()) {
    std::cout << io::instance_to_json(inst).dump() << '\n';
    if (!g.quiet) std::cerr << summary << '\n';
  } else {
    io::write_instance(a.out, inst);
    if (!g.quiet) std::cout << summary << '\n';
  }
  return 0;
}

int cmd_experiment(const Globals& g, const ExperimentArgs& a) {
  io::ExperimentConfig cfg = io::read_experiment(a.config);
  if (g.seed) cfg.seed = *g.seed;
  if (a.threads) cfg.threads = *a.threads;
  const auto rows = io::run_experiment(cfg);

  auto csv = io::open_output(cfg.output);
  csv << io::metrics_csv(rows);
  auto summary = io::open_output(cfg.summary);
  const io::Json stats = io::metrics_summary(rows);
  summary << stats.dump(2) << '\n';

  if (!g.quiet) {
    std::cout << fmt::format("{} trials x {} rules -> {}\n", cfg.trials, cfg.rules.size(), cfg.output.string());
    std::size_t width = 0;
    for (const auto& [rule, per] : stats.items()) width = std::max(width, rule.size());
    for (const auto& [rule, per] : stats.items())
      std::cout << fmt::format("  {:<{}} avg={:.4f} p25={:.4f} gini={:.4f}\n", rule, width,
                               per["avg_utility"]["mean"].get<double>(), per["p25_utility"]["mean"].get<double>(),
                               per["gini"]["mean"].get<double>());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proportional sequential decision rules and axiom checkers"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (gen) or master seed override (experiment)");
  app.add_flag("-q,--quiet", g.quiet, "Suppress normal output");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a rule on an instance");
  run_cmd->add_option("instance", run.instance, "Instance JSON")->required();
  run_cmd->add_option("-r,--rule", run.rule, "phragmen, mes, mes-offline, pav, pav-ls, av, rr, quota, consensus")
      ->required();
  run_cmd->add_option("--completion", run.completion, "MES completion: phragmen, epsilon, utilitarian, none");
  run_cmd->add_option("--node-budget", run.node_budget, "Exact PAV search node budget");
  run_cmd->add_flag("--compact", run.compact, "Single-line JSON");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check an axiom for a decision sequence");
  check_cmd->add_option("instance", check.instance, "Instance JSON")->required();
  check_cmd->add_option("decisions", check.decisions, "Decisions JSON (index array, or run output)");
  check_cmd->add_option("--seq", check.seq, "Inline comma-separated labels or indices");
  check_cmd->add_option("-a,--axiom", check.axiom,
                        "weak-jr, jr, weak-pjr, pjr, weak-ejr, ejr, lq-closed, lq-closed-perpetual, pareto, "
                        "variant-pjr")
      ->required();
  check_cmd->add_option("--epsilon", check.epsilon, "variant-pjr size slack");
  check_cmd->add_option("--alpha", check.alpha, "variant-pjr alpha");
  check_cmd->add_option("--agreement", check.agreement, "variant-pjr agreement: paper-k, ell, ell-over-alpha");
  check_cmd->add_option("--target", check.target, "variant-pjr target: ell, floor-alpha-ell");
  check_cmd->add_option("--voter-limit", check.voter_limit, "Refuse instances with more voters");
  check_cmd->add_option("--node-budget", check.node_budget, "Pareto search node budget");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--dist", gen.dist, "restricted, many-groups, unbalanced, balanced-nearby");
  gen_cmd->add_option("--n", gen.n, "Voters");
  gen_cmd->add_option("--T", gen.T, "Rounds");
  gen_cmd->add_option("--m", gen.m, "Alternatives per round");
  gen_cmd->add_option("--f", gen.f, "Approval factor");
  gen_cmd->add_option("--sigma", gen.sigma, "Standard deviation");
  gen_cmd->add_flag("--random", gen.random, "Independent random approvals");
  gen_cmd->add_option("--p", gen.p, "Approval probability (--random)");
  gen_cmd->add_flag("--counterexample", gen.counterexample, "Infeasibility construction");
  gen_cmd->add_option("--epsilon", gen.epsilon, "Size slack (--counterexample)");
  gen_cmd->add_option("--k", gen.k, "Agreement rounds (--counterexample)");
  gen_cmd->add_option("--guard", gen.guard, "Maximum alternatives per round (--counterexample)");
  gen_cmd->add_option("-o,--out", gen.out, "Output path (default: stdout)");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a multi-trial experiment from a TOML config");
  exp_cmd->add_option("config", exp.config, "Experiment TOML")->required();
  exp_cmd->add_option("--threads", exp.threads, "Worker threads");

  for (auto* sub : {run_cmd, check_cmd, gen_cmd, exp_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(g, run);
    if (*check_cmd) return cmd_check(g, check);
    if (*gen_cmd) {
      gen.n_given = gen_cmd->count("--n") > 0;
      return cmd_gen(g, gen);
    }
    if (*exp_cmd) return cmd_experiment(g, exp);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
