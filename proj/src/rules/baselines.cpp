#include <algorithm>

#include "steppers.hpp"

namespace seqvote {

namespace detail {

AlternativeIndex most_approved(const std::vector<VoterSet>& supporters) {
  AlternativeIndex best = 0;
  for (AlternativeIndex c = 1; c < supporters.size(); ++c)
    if (supporters[c].size() > supporters[best].size()) best = c;
  return best;
}

// Approval Voting

void ApprovalVotingRule::reset(std::size_t /*voters*/, std::size_t /*horizon*/) {
  round_ = 0;
  trace_ = RuleTrace{};
  trace_.rule = "av";
}

std::optional<AlternativeIndex> ApprovalVotingRule::decide(const Round& round) {
  const AlternativeIndex chosen = most_approved(round.supporters());
  trace_.per_round.push_back({round_++, chosen, "av", {}});
  return chosen;
}

// Round Robin

void RoundRobinRule::reset(std::size_t voters, std::size_t /*horizon*/) {
  voters_ = voters;
  round_ = 0;
  trace_ = RuleTrace{};
  trace_.rule = "rr";
}

std::optional<AlternativeIndex> RoundRobinRule::decide(const Round& round) {
  AlternativeIndex chosen = 0;
  // Designated voter is round mod n; an empty approval set passes control to the next voter.
  for (std::size_t offset = 0; offset < voters_; ++offset) {
    const auto& set = round.approvals[(round_ + offset) % voters_];
    if (!set.empty()) {
      chosen = *std::min_element(set.begin(), set.end());
      break;
    }
  }
  trace_.per_round.push_back({round_++, chosen, "rr", {}});
  return chosen;
}

// Perpetual Consensus

void PerpetualConsensusRule::reset(std::size_t voters, std::size_t /*horizon*/) {
  weights_.assign(voters, Fraction());
  round_ = 0;
  trace_ = RuleTrace{};
  trace_.rule = "consensus";
}

std::optional<AlternativeIndex> PerpetualConsensusRule::decide(const Round& round) {
  const auto supporters = round.supporters();
  const bool anyone = std::any_of(supporters.begin(), supporters.end(), [](const VoterSet& s) { return !s.empty(); });
  AlternativeIndex chosen = 0;
  if (anyone) {
    for (auto& w : weights_) w += 1;
    std::optional<Fraction> best;
    for (AlternativeIndex c = 0; c < supporters.size(); ++c) {
      if (supporters[c].empty()) continue;
      Fraction sum;
      for (VoterIndex v : supporters[c]) sum += weights_[v];
      if (!best || sum > *best) {
        best = std::move(sum);
        chosen = c;
      }
    }
    const Fraction share(static_cast<long long>(weights_.size()), static_cast<long long>(supporters[chosen].size()));
    for (VoterIndex v : supporters[chosen]) weights_[v] -= share;
  }
  trace_.per_round.push_back({round_++, chosen, "consensus", WeightDetail{weights_}});
  return chosen;
}

// Perpetual Quota

void PerpetualQuotaRule::reset(std::size_t voters, std::size_t /*horizon*/) {
  quota_.assign(voters, Fraction());
  satisfaction_.assign(voters, 0);
  round_ = 0;
  trace_ = RuleTrace{};
  trace_.rule = "quota";
}

std::optional<AlternativeIndex> PerpetualQuotaRule::decide(const Round& round) {
  const auto supporters = round.supporters();
  const auto n = static_cast<long long>(quota_.size());
  for (VoterIndex v = 0; v < quota_.size(); ++v) {
    std::size_t best = 0;
    for (AlternativeIndex c : round.approvals[v]) best = std::max(best, supporters[c].size());
    if (best > 0) quota_[v] += Fraction(static_cast<long long>(best), n);
  }

  AlternativeIndex chosen = 0;
  std::size_t best_below = 0;
  std::size_t best_size = 0;
  for (AlternativeIndex c = 0; c < supporters.size(); ++c) {
    std::size_t below = 0;
    for (VoterIndex v : supporters[c])
      if (Fraction(static_cast<long long>(satisfaction_[v])) < quota_[v]) ++below;
    const std::size_t size = supporters[c].size();
    if (below > best_below || (below == best_below && size > best_size)) {
      chosen = c;
      best_below = below;
      best_size = size;
    }
  }
  for (VoterIndex v : supporters[chosen]) ++satisfaction_[v];
  trace_.per_round.push_back({round_++, chosen, "quota", QuotaDetail{quota_, satisfaction_}});
  return chosen;
}

}  // namespace detail

RuleResult run_approval_voting(const DecisionInstance& instance) {
  detail::ApprovalVotingRule rule;
  return run_online(rule, instance);
}

RuleResult run_round_robin(const DecisionInstance& instance) {
  detail::RoundRobinRule rule;
  return run_online(rule, instance);
}

RuleResult run_perpetual_consensus(const DecisionInstance& instance) {
  detail::PerpetualConsensusRule rule;
  return run_online(rule, instance);
}

RuleResult run_perpetual_quota(const DecisionInstance& instance) {
  detail::PerpetualQuotaRule rule;
  return run_online(rule, instance);
}

}  // namespace seqvote
