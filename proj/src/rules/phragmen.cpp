#include <algorithm>
#include <numeric>

#include "seqvote/error.hpp"
#include "steppers.hpp"

namespace seqvote {

WaterLine water_line(const std::vector<Fraction>& loads, const VoterSet& approvers) {
  if (approvers.empty()) throw Error(ErrorCode::EmptyGroup, "water line needs at least one approver");

  // The minimizing subset is a prefix of the approvers sorted by load.
  VoterSet order = approvers;
  std::stable_sort(order.begin(), order.end(), [&](VoterIndex a, VoterIndex b) { return loads[a] < loads[b]; });

  Fraction prefix;
  Fraction best;
  std::size_t best_len = 0;
  for (std::size_t t = 1; t <= order.size(); ++t) {
    prefix += loads[order[t - 1]];
    Fraction value = (prefix + 1) / Fraction(static_cast<long long>(t));
    // Ties go to the longer prefix.
    if (best_len == 0 || value <= best) {
      best = std::move(value);
      best_len = t;
    }
  }
  VoterSet members(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_len));
  std::sort(members.begin(), members.end());
  return {best, members};
}

namespace detail {

void PhragmenRule::reset(std::size_t voters, std::size_t /*horizon*/) {
  loads_.assign(voters, Fraction());
  round_ = 0;
  trace_ = RuleTrace{};
  trace_.rule = "phragmen";
}

std::optional<AlternativeIndex> PhragmenRule::decide(const Round& round) {
  const auto supporters = round.supporters();
  std::optional<WaterLine> best;
  AlternativeIndex chosen = 0;
  for (AlternativeIndex c = 0; c < supporters.size(); ++c) {
    if (supporters[c].empty()) continue;
    WaterLine w = water_line(loads_, supporters[c]);
    if (!best || w.value < best->value) {
      best = std::move(w);
      chosen = c;
    }
  }

  PhragmenDetail detail;
  if (best) {
    for (VoterIndex v : best->members) loads_[v] = best->value;
    detail.water_line = best->value;
    detail.load_set = best->members;
  }
  detail.loads = loads_;
  trace_.per_round.push_back({round_++, chosen, "phragmen", std::move(detail)});
  return chosen;
}

}  // namespace detail

RuleResult run_phragmen(const DecisionInstance& instance) {
  detail::PhragmenRule rule;
  return run_online(rule, instance);
}

}  // namespace seqvote
