#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "seqvote/error.hpp"
#include "seqvote/io.hpp"

namespace seqvote::io {

namespace {

constexpr std::uint64_t kTrialTag = 0x7472;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); }

void check_keys(const toml::table& t, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : t)
    if (!allowed.count(std::string(k.str()))) bad("unknown key '" + std::string(k.str()) + "' in " + where);
}

template <typename T>
T required(const toml::table& t, const char* key, const std::string& where) {
  const auto v = t[key].value<T>();
  if (!v) bad("missing or mistyped '" + std::string(key) + "' in " + where);
  return *v;
}

std::size_t count(const toml::table& t, const char* key, const std::string& where) {
  const auto v = required<std::int64_t>(t, key, where);
  if (v < 0) bad("'" + std::string(key) + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

RuleSpec rule_spec(const std::string& name) {
  if (!is_known_rule(name)) bad("unknown rule '" + name + "'");
  return {name, name, {}, {}};
}

RuleSpec rule_spec(const toml::table& t) {
  check_keys(t, {"name", "label", "completion", "node_budget"}, "[[rules]]");
  RuleSpec spec = rule_spec(required<std::string>(t, "name", "[[rules]]"));
  if (auto c = t["completion"].value<std::string>()) spec.mes.completion = parse_completion(*c);
  if (spec.mes.completion == Completion::None) bad("completion 'none' leaves rounds undecided; not usable in experiments");
  if (auto b = t["node_budget"].value<std::int64_t>()) {
    if (*b <= 0) bad("node_budget must be positive");
    spec.pav.node_budget = static_cast<std::uint64_t>(*b);
  }
  spec.label = t["label"].value_or(spec.name);
  return spec;
}

std::string fmt_metric(double v) { return fmt::format("{}", v); }

}  // namespace

ExperimentConfig parse_experiment(const std::string& toml_text, const std::filesystem::path& base) {
  toml::table doc;
  try {
    doc = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream ss;
    ss << e;
    throw Error(ErrorCode::ParseError, ss.str());
  }
  check_keys(doc, {"trials", "seed", "output", "summary", "threads", "generator", "rules"}, "experiment");

  ExperimentConfig cfg;
  cfg.trials = count(doc, "trials", "experiment");
  cfg.seed = static_cast<std::uint64_t>(required<std::int64_t>(doc, "seed", "experiment"));
  cfg.output = base / required<std::string>(doc, "output", "experiment");
  if (auto s = doc["summary"].value<std::string>()) {
    cfg.summary = base / *s;
  } else {
    cfg.summary = cfg.output;
    cfg.summary.replace_extension(".summary.json");
  }
  if (auto th = doc["threads"].value<std::int64_t>()) {
    if (*th < 1) bad("threads must be at least 1");
    cfg.threads = static_cast<int>(*th);
  }

  const toml::table* gen = doc["generator"].as_table();
  if (!gen) bad("missing [generator] table");
  const std::string kind = gen->contains("kind") ? required<std::string>(*gen, "kind", "[generator]") : "euclidean";
  if (kind == "euclidean") {
    check_keys(*gen, {"kind", "distribution", "n", "T", "m", "f", "sigma"}, "[generator]");
    cfg.generator = GeneratorKind::Euclidean;
    auto& e = cfg.euclidean;
    e.distribution = parse_distribution(required<std::string>(*gen, "distribution", "[generator]"));
    e.n = count(*gen, "n", "[generator]");
    e.T = count(*gen, "T", "[generator]");
    e.m = count(*gen, "m", "[generator]");
    e.f = required<double>(*gen, "f", "[generator]");
    if (auto s = (*gen)["sigma"].value<double>()) e.sigma = *s;
  } else if (kind == "random") {
    check_keys(*gen, {"kind", "n", "T", "m", "p"}, "[generator]");
    cfg.generator = GeneratorKind::Random;
    cfg.euclidean.n = count(*gen, "n", "[generator]");
    cfg.euclidean.T = count(*gen, "T", "[generator]");
    cfg.euclidean.m = count(*gen, "m", "[generator]");
    cfg.p_approve = required<double>(*gen, "p", "[generator]");
  } else {
    bad("unknown generator kind '" + kind + "'");
  }

  const toml::array* rules = doc["rules"].as_array();
  if (!rules || rules->empty()) bad("'rules' must list at least one rule");
  std::set<std::string> labels;
  for (const toml::node& r : *rules) {
    RuleSpec spec;
    if (auto name = r.value<std::string>()) {
      spec = rule_spec(*name);
    } else if (const toml::table* t = r.as_table()) {
      spec = rule_spec(*t);
    } else {
      bad("each rule must be a name or a table");
    }
    if (!labels.insert(spec.label).second) bad("duplicate rule label '" + spec.label + "'");
    cfg.rules.push_back(std::move(spec));
  }

  // Surface generator misconfiguration before any trial runs.
  if (cfg.trials > 0) trial_instance(cfg, 0);
  return cfg;
}

ExperimentConfig read_experiment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str(), path.parent_path());
}

std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t trial) {
  return derive_seed(config.seed, kTrialTag, trial);
}

DecisionInstance trial_instance(const ExperimentConfig& config, std::size_t trial) {
  const std::uint64_t seed = trial_seed(config, trial);
  if (config.generator == GeneratorKind::Random)
    return gen_random(config.euclidean.n, config.euclidean.T, config.euclidean.m, config.p_approve, seed);
  EuclideanConfig e = config.euclidean;
  e.seed = seed;
  return gen_euclidean(e);
}

std::vector<MetricsRow> run_experiment(const ExperimentConfig& config) {
  const std::size_t R = config.rules.size();
  const auto trials = static_cast<std::ptrdiff_t>(config.trials);
  std::vector<MetricsRow> rows(R * config.trials);
  std::vector<std::string> failures(R * config.trials);
  const int threads = config.threads.value_or(0);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads != 1)
  for (std::ptrdiff_t t = 0; t < trials; ++t) {
    const auto trial = static_cast<std::size_t>(t);
    DecisionInstance inst;
    try {
      inst = trial_instance(config, trial);
    } catch (const std::exception& e) {
      failures[trial] = std::string("generator: ") + e.what();
      continue;
    }
    for (std::size_t r = 0; r < R; ++r) {
      const RuleSpec& spec = config.rules[r];
      try {
        const RuleResult res = run_rule(spec.name, inst, spec.mes, spec.pav);
        rows[r * config.trials + trial] = metrics_row(spec.label, trial, utility(inst, res.sequence), inst.horizon());
      } catch (const std::exception& e) {
        failures[r * config.trials + trial] = e.what();
      }
    }
  }

  for (std::size_t i = 0; i < failures.size(); ++i)
    if (!failures[i].empty()) {
      const std::size_t r = i / config.trials;
      const std::size_t trial = i % config.trials;
      throw Error(ErrorCode::BadConfig, fmt::format("rule '{}' failed on trial {} (seed {}): {}",
                                                    config.rules[r].label, trial, trial_seed(config, trial),
                                                    failures[i]));
    }
  return rows;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const MetricsRow& r : rows)
    out += fmt::format("{},{},{},{},{}\n", r.rule, r.trial, fmt_metric(r.avg_utility), fmt_metric(r.p25_utility),
                       fmt_metric(r.gini));
  return out;
}

Json metrics_summary(const std::vector<MetricsRow>& rows) {
  Json out = Json::object();
  std::vector<std::string> order;
  std::map<std::string, std::array<std::vector<double>, 3>> values;
  for (const MetricsRow& r : rows) {
    if (!values.count(r.rule)) order.push_back(r.rule);
    auto& v = values[r.rule];
    v[0].push_back(r.avg_utility);
    v[1].push_back(r.p25_utility);
    v[2].push_back(r.gini);
  }
  static constexpr const char* kNames[] = {"avg_utility", "p25_utility", "gini"};
  for (const std::string& rule : order) {
    Json per = Json::object();
    for (std::size_t m = 0; m < 3; ++m) {
      const auto& v = values[rule][m];
      double sum = 0;
      for (double x : v) sum += x;
      per[kNames[m]] = {{"median", percentile(v, 0.5)},
                        {"p25", percentile(v, 0.25)},
                        {"p75", percentile(v, 0.75)},
                        {"mean", sum / static_cast<double>(v.size())}};
    }
    out[rule] = per;
  }
  return out;
}

}  // namespace seqvote::io
