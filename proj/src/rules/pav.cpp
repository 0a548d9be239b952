#include <algorithm>
#include <functional>

#include <gmpxx.h>

#include "seqvote/error.hpp"
#include "steppers.hpp"

namespace seqvote {

namespace {

/// Harmonic terms scaled by L = lcm(1..T+1), so every 1/u with u <= T+1 is an exact integer.
class ScaledHarmonic {
 public:
  explicit ScaledHarmonic(std::size_t horizon) : inv_(horizon + 2) {
    scale_ = 1;
    for (unsigned long u = 2; u <= horizon + 1; ++u) mpz_lcm_ui(scale_.get_mpz_t(), scale_.get_mpz_t(), u);
    for (std::size_t u = 1; u <= horizon + 1; ++u) inv_[u] = scale_ / static_cast<unsigned long>(u);
  }

  const mpz_class& inv(std::size_t u) const { return inv_[u]; }
  const mpz_class& scale() const { return scale_; }

  Fraction to_fraction(const mpz_class& scaled) const {
    return Fraction(mpq_class(scaled, scale_));
  }

 private:
  mpz_class scale_;
  std::vector<mpz_class> inv_;
};

/// Dense approval lookup: approve[j][c * n + v].
struct ApprovalTable {
  explicit ApprovalTable(const DecisionInstance& instance) : n(instance.voters) {
    for (const auto& r : instance.rounds) {
      std::vector<char> m(r.alternatives.size() * n, 0);
      for (VoterIndex v = 0; v < n; ++v)
        for (AlternativeIndex c : r.approvals[v]) m[c * n + v] = 1;
      approve.push_back(std::move(m));
      supporters.push_back(r.supporters());
    }
  }
  bool at(std::size_t j, AlternativeIndex c, VoterIndex v) const { return approve[j][c * n + v] != 0; }

  std::size_t n;
  std::vector<std::vector<char>> approve;
  std::vector<std::vector<VoterSet>> supporters;
};

mpz_class scaled_swap_gain(const ApprovalTable& table, const ScaledHarmonic& h, const UtilityVector& u,
                           std::size_t j, AlternativeIndex from, AlternativeIndex to) {
  mpz_class gain = 0;
  if (from == to) return gain;
  for (VoterIndex v : table.supporters[j][to])
    if (!table.at(j, from, v)) gain += h.inv(u[v] + 1);
  for (VoterIndex v : table.supporters[j][from])
    if (!table.at(j, to, v)) gain -= h.inv(u[v]);
  return gain;
}

mpz_class scaled_score(const ScaledHarmonic& h, const UtilityVector& u) {
  mpz_class s = 0;
  for (std::size_t x : u)
    for (std::size_t t = 1; t <= x; ++t) s += h.inv(t);
  return s;
}

}  // namespace

Fraction pav_score(const DecisionInstance& instance, const DecisionSequence& sequence) {
  Fraction s;
  for (std::size_t x : utility(instance, sequence)) s += harmonic(x);
  return s;
}

Fraction pav_swap_gain(const DecisionInstance& instance, const DecisionSequence& sequence,
                       const UtilityVector& utilities, std::size_t round, AlternativeIndex to) {
  const Round& r = instance.rounds.at(round);
  const AlternativeIndex from = sequence[round];
  Fraction gain;
  if (to == from) return gain;
  for (VoterIndex v = 0; v < instance.voters; ++v) {
    const bool likes_to = r.approves(v, to);
    const bool likes_from = r.approves(v, from);
    if (likes_to && !likes_from) gain += Fraction(1, static_cast<long long>(utilities[v] + 1));
    if (likes_from && !likes_to) gain -= Fraction(1, static_cast<long long>(utilities[v]));
  }
  return gain;
}

RuleResult run_pav_exact(const DecisionInstance& instance, const PavOptions& options) {
  validate(instance);
  const std::size_t horizon = instance.horizon();
  const ApprovalTable table(instance);
  const ScaledHarmonic h(horizon);

  UtilityVector u(instance.voters, 0);
  std::vector<AlternativeIndex> current(horizon, 0);
  std::vector<AlternativeIndex> best_seq;
  std::optional<mpz_class> best;
  std::uint64_t nodes = 0;

  // Marginal gains only shrink as utilities grow, so gains frozen at the partial
  // utilities bound what any completion can still add.
  auto bound_rest = [&](std::size_t from) {
    mpz_class total = 0;
    for (std::size_t j = from; j < horizon; ++j) {
      mpz_class round_best = 0;
      for (const auto& s : table.supporters[j]) {
        mpz_class g = 0;
        for (VoterIndex v : s) g += h.inv(u[v] + 1);
        if (g > round_best) round_best = g;
      }
      total += round_best;
    }
    return total;
  };

  std::function<void(std::size_t, const mpz_class&)> dfs = [&](std::size_t j, const mpz_class& score) {
    if (++nodes > options.node_budget)
      throw Error(ErrorCode::SearchBudgetExceeded,
                  "exact PAV exceeded " + std::to_string(options.node_budget) + " search nodes");
    if (j == horizon) {
      if (!best || score > *best) {
        best = score;
        best_seq = current;
      }
      return;
    }
    if (best && score + bound_rest(j) <= *best) return;
    const auto& alts = table.supporters[j];
    for (AlternativeIndex c = 0; c < alts.size(); ++c) {
      mpz_class next = score;
      for (VoterIndex v : alts[c]) next += h.inv(++u[v]);
      current[j] = c;
      dfs(j + 1, next);
      for (VoterIndex v : alts[c]) --u[v];
    }
  };
  dfs(0, mpz_class(0));

  RuleResult result;
  result.trace.rule = "pav";
  result.sequence.decisions = best_seq;
  result.trace.pav_score = h.to_fraction(*best);
  result.trace.nodes = nodes;
  for (std::size_t j = 0; j < horizon; ++j) result.trace.per_round.push_back({j, best_seq[j], "pav", {}});
  return result;
}

RuleResult run_pav_local_search(const DecisionInstance& instance, const std::optional<DecisionSequence>& init) {
  validate(instance);
  const std::size_t horizon = instance.horizon();
  const ApprovalTable table(instance);
  const ScaledHarmonic h(horizon);

  DecisionSequence seq = init ? *init : run_approval_voting(instance).sequence;
  validate(instance, seq);
  UtilityVector u = utility(instance, seq);

  // gain >= n / T^2  <=>  scaled_gain * T^2 >= n * L
  const mpz_class threshold = mpz_class(static_cast<unsigned long>(instance.voters)) * h.scale();
  const mpz_class t_sq = mpz_class(static_cast<unsigned long>(horizon)) * static_cast<unsigned long>(horizon);

  RuleResult result;
  result.trace.rule = "pav-ls";
  // At most n H(T) / (n / T^2) improving swaps.
  const double swap_cap = static_cast<double>(horizon) * horizon * harmonic(horizon).to_double() + 1.0;

  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t j = 0; j < horizon && !improved; ++j) {
      const AlternativeIndex from = seq.decisions[j];
      for (AlternativeIndex c = 0; c < table.supporters[j].size(); ++c) {
        if (c == from) continue;
        mpz_class gain = scaled_swap_gain(table, h, u, j, from, c);
        if (gain * t_sq < threshold) continue;
        for (VoterIndex v : table.supporters[j][from]) --u[v];
        for (VoterIndex v : table.supporters[j][c]) ++u[v];
        seq.decisions[j] = c;
        result.trace.swaps.push_back({j, from, c, h.to_fraction(gain)});
        improved = true;
        break;
      }
    }
    if (static_cast<double>(result.trace.swaps.size()) > swap_cap)
      throw Error(ErrorCode::ConstructionFailed, "local search exceeded its swap bound");
  }

  result.sequence = seq;
  result.trace.pav_score = h.to_fraction(scaled_score(h, u));
  for (std::size_t j = 0; j < horizon; ++j) result.trace.per_round.push_back({j, seq[j], "pav-ls", {}});
  return result;
}

}  // namespace seqvote
