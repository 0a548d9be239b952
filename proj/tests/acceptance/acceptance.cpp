// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <fmt/format.h>

#include "instances.hpp"
#include "oracles.hpp"
#include "seqvote/axioms.hpp"
#include "seqvote/gen.hpp"
#include "seqvote/io.hpp"
#include "seqvote/metrics.hpp"
#include "seqvote/rules.hpp"

using namespace seqvote;
namespace ex = seqvote::testing;

namespace {

// Pinned sizes and tolerances.
constexpr std::size_t kPropertyInstances = 1000;
constexpr std::size_t kOracleInstances = 200;
constexpr std::size_t kCounterexampleSequences = 1000;
constexpr std::size_t kExperimentTrials = 200;
constexpr double kApprovalSizeTarget = 2.12;
constexpr double kApprovalSizeTolerance = 0.5;
constexpr std::size_t kAdapterProfiles = 100;
constexpr double kGoldenSeconds = 1.0;

constexpr AxiomKind kJr{Family::JR, Strength::Full};
constexpr AxiomKind kWeakJr{Family::JR, Strength::Weak};
constexpr AxiomKind kPjr{Family::PJR, Strength::Full};
constexpr AxiomKind kWeakPjr{Family::PJR, Strength::Weak};
constexpr AxiomKind kEjr{Family::EJR, Strength::Full};
constexpr AxiomKind kWeakEjr{Family::EJR, Strength::Weak};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> run;
};

std::string groups(const VoterSet& g) {
  std::string s = "{";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + "}";
}

Outcome golden_phragmen() {
  Outcome o;
  const auto inst = ex::three_way();
  const auto r = run_phragmen(inst);
  o.require(r.sequence == ex::seq(inst, "ababababab"), "decisions are not the a/b alternation");
  o.require(utility(inst, r.sequence) == UtilityVector{10, 10, 10, 5, 5, 5, 5, 5, 5, 5}, "utilities differ");
  const auto rep = check_representation(inst, r.sequence, kWeakEjr);
  o.require(!rep.satisfied, "Weak EJR reported satisfied");
  if (rep.witness) {
    o.require(rep.witness->group == VoterSet{3, 4, 5, 6, 7, 8}, "witness " + groups(rep.witness->group));
    o.require(rep.witness->demand == 6, "demand " + std::to_string(rep.witness->demand));
  }
  o.detail = o.pass ? "witness S={3..8}, l=6" : o.detail;
  return o;
}

Outcome golden_mes_minority_tail() {
  Outcome o;
  const auto inst = ex::minority_tail();
  const auto r = run_mes(inst);
  o.require(r.sequence == ex::seq(inst, "bbbbbbbbbbccddee"), "decisions differ");
  o.require(!r.trace.premature_round, "terminated prematurely");
  const auto rep = check_representation(inst, r.sequence, kEjr);
  o.require(!rep.satisfied, "EJR reported satisfied");
  if (rep.witness) {
    o.require(rep.witness->group == VoterSet{0, 1, 2}, "witness " + groups(rep.witness->group));
    o.require(rep.witness->agreement == 10 && rep.witness->demand == 3, "k or l differ");
  }
  o.detail = o.pass ? "witness S={0,1,2}, k=10, l=3" : o.detail;
  return o;
}

Outcome golden_mes_early_stop() {
  Outcome o;
  const auto inst = ex::early_stop();
  for (Completion c : {Completion::Phragmen, Completion::Epsilon, Completion::Utilitarian}) {
    const auto r = run_mes(inst, {c, false});
    o.require(r.sequence == ex::seq(inst, "bbbbbb"), std::string(to_string(c)) + " completion is not b^6");
    o.require(r.trace.premature_round == std::optional<std::size_t>(4),
              std::string(to_string(c)) + " completion did not stop at round 4");
  }
  const auto d = ex::seq(inst, "bbbbbb");
  const auto pjr = check_representation(inst, d, kPjr);
  o.require(!pjr.satisfied, "PJR reported satisfied");
  if (pjr.witness)
    o.require(pjr.witness->group == VoterSet{0} && pjr.witness->agreement == 3 && pjr.witness->demand == 1,
              "PJR witness differs");
  const auto lq = check_lower_quota_closed(inst, d, false);
  o.require(!lq.satisfied, "lower quota reported satisfied");
  if (lq.witness) o.require(lq.witness->group == VoterSet{0} && lq.witness->demand == 2, "quota witness differs");
  o.detail = o.pass ? "premature at round 4; PJR S={0}, k=3, l=1; quota 2" : o.detail;
  return o;
}

Outcome golden_pareto() {
  Outcome o;
  const auto inst = ex::pareto_gap();
  const auto rep = check_pareto(inst, ex::seq(inst, "bbbbbcd"));
  o.require(!rep.satisfied, "D reported efficient");
  if (rep.witness && rep.witness->dominating)
    o.require(*rep.witness->dominating == ex::seq(inst, "aabbbbb"), "different dominating sequence");
  o.require(check_pareto(inst, run_pav_exact(inst).sequence).satisfied, "PAV output dominated");
  o.detail = o.pass ? "witness (a,a,b,b,b,b,b)" : o.detail;
  return o;
}

Outcome golden_pav() {
  Outcome o;
  const auto f7 = ex::early_stop();
  const auto r7 = run_pav_exact(f7);
  const auto opt7 = oracle::pav_exhaustive(f7);
  o.require(*r7.trace.pav_score == Fraction(17, 3) && opt7.score == Fraction(17, 3), "early-stop score is not 17/3");
  o.require(std::count(r7.sequence.decisions.begin(), r7.sequence.decisions.begin() + 3, 0) == 2,
            "early-stop: a not chosen in exactly two of rounds 1-3");
  const auto f4 = ex::shared_pair();
  const auto r4 = run_pav_exact(f4);
  o.require(*r4.trace.pav_score == Fraction(25, 3) && oracle::pav_exhaustive(f4).score == Fraction(25, 3),
            "shared-pair score is not 25/3");
  const auto labels = labels_of(f4, r4.sequence);
  o.require(std::count(labels.begin(), labels.end(), "a") == 4 && std::count(labels.begin(), labels.end(), "d") == 4,
            "shared-pair: not four a-rounds and four d-rounds");
  o.require(check_representation(f4, r4.sequence, kEjr).satisfied, "shared-pair output fails EJR");
  o.detail = o.pass ? "17/3 and 25/3, matching exhaustive enumeration" : o.detail;
  return o;
}

Outcome rule_guarantees() {
  Outcome o;
  std::size_t checks = 0;
  for (std::uint64_t seed = 0; seed < kPropertyInstances && o.pass; ++seed) {
    const auto inst = ex::random_small(seed);
    const GroupTable table(inst);
    const auto where = [&](const char* what) { return fmt::format("{} on seed {}", what, seed); };
    o.require(check_representation(table, run_phragmen(inst).sequence, kPjr).satisfied, where("Phragmen violates PJR"));
    for (Completion c : {Completion::Phragmen, Completion::Epsilon, Completion::Utilitarian}) {
      o.require(check_representation(table, run_mes(inst, {c, false}).sequence, kWeakEjr).satisfied,
                where("MES violates Weak EJR"));
      o.require(check_representation(table, run_mes(inst, {c, true}).sequence, kWeakEjr).satisfied,
                where("offline MES violates Weak EJR"));
    }
    const auto pav = run_pav_exact(inst).sequence;
    o.require(check_representation(table, pav, kEjr).satisfied, where("exact PAV violates EJR"));
    o.require(check_representation(table, run_pav_local_search(inst).sequence, kEjr).satisfied,
              where("LS-PAV violates EJR"));
    o.require(check_pareto(inst, pav).satisfied, where("exact PAV is Pareto dominated"));
    checks += 10;
  }
  if (o.pass) o.detail = fmt::format("{} instances, {} checks", kPropertyInstances, checks);
  return o;
}

Outcome implication_lattice() {
  Outcome o;
  std::size_t pairs = 0;
  std::size_t ejr_holds = 0, pjr_holds = 0, weak_pjr_holds = 0;
  for (std::uint64_t seed = 0; seed < kPropertyInstances && o.pass; ++seed) {
    // Closed groups then approve something in every round, as the quota implication needs.
    const auto inst = ex::random_small(seed, 8, 6, 4, true);
    const GroupTable table(inst);
    std::vector<DecisionSequence> seqs = {ex::random_sequence(inst, seed), run_phragmen(inst).sequence,
                                          run_mes(inst).sequence, run_approval_voting(inst).sequence,
                                          run_round_robin(inst).sequence};
    for (const auto& d : seqs) {
      ++pairs;
      const bool ejr = check_representation(table, d, kEjr).satisfied;
      const bool wejr = check_representation(table, d, kWeakEjr).satisfied;
      const bool pjr = check_representation(table, d, kPjr).satisfied;
      const bool wpjr = check_representation(table, d, kWeakPjr).satisfied;
      const bool jr = check_representation(table, d, kJr).satisfied;
      const bool wjr = check_representation(table, d, kWeakJr).satisfied;
      const bool lq = check_lower_quota_closed(inst, d, false).satisfied;
      const auto where = [&](const char* what) { return fmt::format("{} (seed {})", what, seed); };
      o.require(!ejr || (wejr && pjr), where("EJR without Weak EJR or PJR"));
      o.require(!pjr || (wpjr && jr), where("PJR without Weak PJR or JR"));
      o.require(!wejr || wpjr, where("Weak EJR without Weak PJR"));
      o.require(!jr || wjr, where("JR without Weak JR"));
      o.require(!wpjr || lq, where("Weak PJR without lower quota"));
      ejr_holds += ejr;
      pjr_holds += pjr;
      weak_pjr_holds += wpjr;
    }
  }
  if (o.pass)
    o.detail = fmt::format("{} pairs (EJR held on {}, PJR on {}, Weak PJR on {})", pairs, ejr_holds, pjr_holds,
                           weak_pjr_holds);
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  const AxiomKind kinds[] = {kWeakJr, kJr, kWeakPjr, kPjr, kWeakEjr, kEjr};
  std::size_t violated = 0;
  for (std::uint64_t seed = 0; seed < kOracleInstances && o.pass; ++seed) {
    const auto inst = ex::random_small(seed + 50'000, 10, 6, 4);
    const GroupTable table(inst);
    const std::vector<DecisionSequence> seqs = {ex::random_sequence(inst, seed), run_phragmen(inst).sequence};
    for (const auto& d : seqs)
      for (AxiomKind k : kinds) {
        const auto naive = oracle::violating_groups(inst, d, k);
        const auto par = check_representation(table, d, k);
        const auto ser = serial::check_representation(table, d, k);
        const auto where = fmt::format("{} on seed {}", k.name(), seed);
        o.require(par.satisfied == naive.empty() && ser.satisfied == naive.empty(), "verdict differs: " + where);
        if (!naive.empty() && par.witness && ser.witness) {
          o.require(par.witness->group == naive.front() && ser.witness->group == naive.front(),
                    "witness differs: " + where);
          ++violated;
        }
      }
  }
  if (o.pass) o.detail = fmt::format("{} instances, {} violations matched", kOracleInstances, violated);
  return o;
}

Outcome counterexample_bound() {
  Outcome o;
  const CounterexampleConfig cfg{Fraction(1, 2), 2, 3};
  const auto shape = counterexample_shape(cfg);
  o.require(shape.n == 16 && shape.s == 4, fmt::format("n={} s={}", shape.n, shape.s));
  const auto inst = gen_counterexample(cfg);
  const GroupTable table(inst);
  const VariantSpec spec = VariantSpec::stronger_pjr(cfg.epsilon);
  const std::size_t bound = cfg.k * shape.s + (cfg.T - cfg.k);
  std::size_t most = 0;
  for (std::uint64_t seed = 0; seed < kCounterexampleSequences && o.pass; ++seed) {
    const auto d = ex::random_sequence(inst, seed);
    const auto u = utility(inst, d);
    const auto satisfied = static_cast<std::size_t>(std::count_if(u.begin(), u.end(), [](auto x) { return x > 0; }));
    most = std::max(most, satisfied);
    o.require(satisfied <= bound, fmt::format("{} satisfied voters on sequence {}", satisfied, seed));
    o.require(!check_variant(table, d, spec).satisfied, fmt::format("sequence {} satisfies the axiom", seed));
  }
  if (o.pass) o.detail = fmt::format("n=16, s=4; all {} violated; at most {} of bound {} satisfied",
                                     kCounterexampleSequences, most, bound);
  return o;
}

Outcome adversary() {
  Outcome o;
  for (const char* name : {"phragmen", "mes"}) {
    auto rule = make_online_rule(name);
    const auto out = adversary_online(*rule, {Fraction(1, 2), 2, 3});
    o.require(!out.report.satisfied, std::string(name) + " output satisfies the axiom");
    o.require(out.witness_report.satisfied, std::string(name) + ": constructed witness violates the axiom");
  }
  if (o.pass) o.detail = "Phragmen and MES violated; constructed witnesses satisfied";
  return o;
}

io::ExperimentConfig restricted_experiment() {
  io::ExperimentConfig cfg;
  cfg.trials = kExperimentTrials;
  cfg.seed = 2024;
  cfg.euclidean = {Distribution::Restricted, 20, 50, 20, 1.5};
  for (const char* r : {"av", "phragmen", "mes", "pav-ls", "quota", "consensus", "rr"}) cfg.rules.push_back({r, r, {}, {}});
  return cfg;
}

Outcome experiment_ordering() {
  Outcome o;
  const auto cfg = restricted_experiment();
  const auto rows = io::run_experiment(cfg);
  const auto summary = io::metrics_summary(rows);
  auto mean = [&](const std::string& rule, const char* metric) { return summary[rule][metric]["mean"].get<double>(); };
  for (std::size_t t = 0; t < cfg.trials; ++t)
    for (std::size_t r = 1; r < cfg.rules.size(); ++r)
      o.require(rows[t].avg_utility >= rows[r * cfg.trials + t].avg_utility,
                fmt::format("{} beats av on trial {}", cfg.rules[r].name, t));
  for (const auto& spec : cfg.rules) {
    if (spec.name != "av") {
      o.require(mean("av", "avg_utility") > mean(spec.name, "avg_utility"), "av not strictly highest vs " + spec.name);
      o.require(mean("av", "gini") > mean(spec.name, "gini"), "av gini not highest vs " + spec.name);
    }
    if (spec.name != "rr")
      o.require(mean("rr", "avg_utility") < mean(spec.name, "avg_utility"), "rr not lowest vs " + spec.name);
  }
  if (o.pass) {
    o.detail = fmt::format("{} trials; avg av={:.3f}", cfg.trials, mean("av", "avg_utility"));
    for (const char* r : {"pav-ls", "phragmen", "mes", "quota", "consensus", "rr"})
      o.detail += fmt::format(" {}={:.3f}", r, mean(r, "avg_utility"));
    o.detail += fmt::format("; gini av={:.3f}", mean("av", "gini"));
  }
  return o;
}

Outcome approval_size() {
  Outcome o;
  const auto cfg = restricted_experiment();
  double total = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) total += mean_approval_size(io::trial_instance(cfg, t));
  const double mean = total / static_cast<double>(cfg.trials);
  o.require(std::abs(mean - kApprovalSizeTarget) <= kApprovalSizeTolerance, fmt::format("mean {:.3f}", mean));
  if (o.pass) o.detail = fmt::format("mean approval size {:.3f} (target {} +/- {})", mean, kApprovalSizeTarget,
                                     kApprovalSizeTolerance);
  return o;
}

Outcome adapter_monotone() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < kAdapterProfiles && o.pass; ++seed) {
    Stream rng(derive_seed(seed, 0xAD));
    ApprovalProfile p;
    p.candidates = 1 + rng.below(8);
    p.approvals.resize(1 + rng.below(10));
    for (auto& a : p.approvals)
      for (std::size_t c = 0; c < p.candidates; ++c)
        if (rng.uniform() < 0.4) a.push_back(c);
    auto rule = make_online_rule("phragmen");
    std::vector<std::size_t> prev;
    for (std::size_t k = 1; k <= p.candidates; ++k) {
      auto w = multiwinner_adapter(p, k, *rule);
      std::sort(w.begin(), w.end());
      o.require(w.size() == k && std::includes(w.begin(), w.end(), prev.begin(), prev.end()),
                fmt::format("profile {}: committee for k={} does not contain k-1", seed, k));
      prev = w;
    }
  }
  if (o.pass) o.detail = fmt::format("{} profiles nested for every k", kAdapterProfiles);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Phragmen on three-way violates Weak EJR", kGoldenSeconds, golden_phragmen},
      {2, "MES on minority-tail violates EJR", kGoldenSeconds, golden_mes_minority_tail},
      {3, "MES on early-stop stops early, violates PJR and lower quota", kGoldenSeconds, golden_mes_early_stop},
      {4, "Pareto check on pareto-gap", kGoldenSeconds, golden_pareto},
      {5, "exact PAV on early-stop and shared-pair", kGoldenSeconds, golden_pav},
      {6, "rule guarantees on random instances", 0, rule_guarantees},
      {7, "axiom implication lattice", 0, implication_lattice},
      {8, "pruned checkers match the naive oracle", 0, oracle_agreement},
      {9, "counterexample construction defeats every sequence", 0, counterexample_bound},
      {10, "online adversary against Phragmen and MES", 0, adversary},
      {11, "restricted experiment: AV highest average and Gini, RR lowest", 0, experiment_ordering},
      {12, "restricted experiment: mean approval size", 0, approval_size},
      {13, "multiwinner adapter committees are nested", 0, adapter_monotone},
  };

  int failed = 0;
  double property_seconds = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs > c.time_limit) o.require(false, fmt::format("took {:.2f}s", secs));
    if (c.id >= 6 && c.id <= 8) property_seconds += secs;
    std::printf("%s  criterion %2d  %-62s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("property suites (6-8) total %.2fs\n", property_seconds);
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
