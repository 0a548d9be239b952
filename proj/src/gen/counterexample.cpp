#include <algorithm>

#include "seqvote/error.hpp"
#include "seqvote/gen.hpp"

namespace seqvote {

namespace {

/// C(n, s), or guard + 1 once it exceeds `guard`.
std::uint64_t binomial_capped(std::size_t n, std::size_t s, std::uint64_t guard) {
  s = std::min(s, n - s);
  unsigned __int128 c = 1;
  for (std::size_t i = 1; i <= s; ++i) {
    c = c * (n - s + i) / i;
    if (c > guard) return guard + 1;
  }
  return static_cast<std::uint64_t>(c);
}

std::string subset_label(const std::vector<std::size_t>& idx) {
  std::string label = "s";
  for (std::size_t i = 0; i < idx.size(); ++i) label += (i ? "-" : "") + std::to_string(idx[i]);
  return label;
}

Round subset_round(std::size_t n, std::size_t s) {
  Round r;
  r.approvals.resize(n);
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    const AlternativeIndex c = r.alternatives.size();
    r.alternatives.push_back(subset_label(idx));
    for (std::size_t v : idx) r.approvals[v].push_back(c);
    std::size_t pos = s;
    while (pos > 0 && idx[pos - 1] == n - s + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < s; ++i) idx[i] = idx[i - 1] + 1;
  }
  return r;
}

Round singleton_round(std::size_t n) {
  Round r;
  r.approvals.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    r.alternatives.push_back("v" + std::to_string(v));
    r.approvals[v].push_back(v);
  }
  return r;
}

Round counterexample_round(const CounterexampleShape& shape, const CounterexampleConfig& config, std::size_t j) {
  return j < config.k ? subset_round(shape.n, shape.s) : singleton_round(shape.n);
}

}  // namespace

CounterexampleShape counterexample_shape(const CounterexampleConfig& config) {
  const Fraction& eps = config.epsilon;
  if (eps.sign() <= 0 || eps >= Fraction(1)) throw Error(ErrorCode::BadConfig, "epsilon must lie in (0, 1)");
  const long long k = static_cast<long long>(config.k);
  const long long T = static_cast<long long>(config.T);
  const long long min_k = ((Fraction(1) - eps) / eps).ceil();
  if (k <= min_k)
    throw Error(ErrorCode::BadConfig, "k must exceed ceil((1 - eps) / eps) = " + std::to_string(min_k));
  if (T <= k) throw Error(ErrorCode::BadConfig, "T must exceed k");

  const long long n_min = (Fraction(k * (T + 1)) / (eps * Fraction(k) + eps - Fraction(1))).ceil();
  const long long n = config.n ? static_cast<long long>(*config.n) : n_min;
  if (n < n_min) throw Error(ErrorCode::BadConfig, "n must be at least " + std::to_string(n_min));

  CounterexampleShape shape;
  shape.n = static_cast<std::size_t>(n);
  shape.s = static_cast<std::size_t>(((Fraction(1) - eps) * Fraction(n) / Fraction(k)).ceil());
  shape.subset_alternatives = binomial_capped(shape.n, shape.s, config.guard);
  if (shape.subset_alternatives > config.guard)
    throw Error(ErrorCode::GuardExceeded, "C(" + std::to_string(shape.n) + ", " + std::to_string(shape.s) +
                                              ") exceeds the guard of " + std::to_string(config.guard));
  return shape;
}

DecisionInstance gen_counterexample(const CounterexampleConfig& config) {
  const auto shape = counterexample_shape(config);
  DecisionInstance inst;
  inst.voters = shape.n;
  for (std::size_t j = 0; j < config.T; ++j) inst.rounds.push_back(counterexample_round(shape, config, j));
  return inst;
}

AdversaryOutcome adversary_online(OnlineRule& rule, const CounterexampleConfig& config) {
  const auto shape = counterexample_shape(config);
  const std::size_t n = shape.n;
  const std::size_t horizon = config.T;

  AdversaryOutcome out;
  out.instance.voters = n;
  rule.reset(n, horizon);
  UtilityVector satisfied(n, 0);
  for (std::size_t j = 0; j + 1 < horizon; ++j) {
    out.instance.rounds.push_back(counterexample_round(shape, config, j));
    const Round& r = out.instance.rounds.back();
    const auto choice = rule.decide(r);
    if (!choice) throw Error(ErrorCode::ConstructionFailed, "rule left round " + std::to_string(j) + " undecided");
    out.sequence.decisions.push_back(*choice);
    for (VoterIndex v = 0; v < n; ++v)
      if (r.approves(v, *choice)) ++satisfied[v];
  }

  std::vector<VoterIndex> special;
  for (VoterIndex v = 0; v < n && special.size() < shape.s + 1; ++v)
    if (satisfied[v] == 0) special.push_back(v);
  if (special.size() < shape.s + 1)
    throw Error(ErrorCode::ConstructionFailed, "only " + std::to_string(special.size()) +
                                                   " unsatisfied voters after " + std::to_string(horizon - 1) +
                                                   " rounds, need " + std::to_string(shape.s + 1));

  Round last;
  last.approvals.resize(n);
  std::vector<bool> is_special(n, false);
  for (VoterIndex v : special) {
    is_special[v] = true;
    last.approvals[v].push_back(last.alternatives.size());
    last.alternatives.push_back("x" + std::to_string(v));
  }
  const AlternativeIndex common = last.alternatives.size();
  if (special.size() < n) {
    last.alternatives.push_back("common");
    for (VoterIndex v = 0; v < n; ++v)
      if (!is_special[v]) last.approvals[v].push_back(common);
  }
  out.instance.rounds.push_back(last);
  const auto choice = rule.decide(out.instance.rounds.back());
  if (!choice) throw Error(ErrorCode::ConstructionFailed, "rule left the final round undecided");
  out.sequence.decisions.push_back(*choice);

  const VariantSpec spec = VariantSpec::stronger_pjr(config.epsilon);
  const GroupTable table(out.instance, CheckOptions{kMaxCheckerVoters});
  out.report = check_variant(table, out.sequence, spec);

  // Witness: cover the special voters in the early rounds, then everyone else with the common alternative.
  std::vector<bool> covered(n, false);
  for (std::size_t j = 0; j + 1 < horizon; ++j) {
    const auto supp = out.instance.rounds[j].supporters();
    AlternativeIndex best = 0;
    std::pair<std::size_t, std::size_t> best_gain{0, 0};
    for (AlternativeIndex c = 0; c < supp.size(); ++c) {
      std::pair<std::size_t, std::size_t> gain{0, 0};
      for (VoterIndex v : supp[c])
        if (!covered[v]) ++(is_special[v] ? gain.first : gain.second);
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    out.witness.decisions.push_back(best);
    for (VoterIndex v : supp[best]) covered[v] = true;
  }
  out.witness.decisions.push_back(special.size() < n ? common : 0);
  out.witness_report = check_variant(table, out.witness, spec);
  return out;
}

}  // namespace seqvote
