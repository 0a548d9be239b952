#include "seqvote/axioms.hpp"
#include "seqvote/error.hpp"

namespace seqvote {

namespace {

struct ParetoSearch {
  const DecisionInstance& instance;
  const UtilityVector& baseline;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<std::vector<std::size_t>> remaining;  // [round][voter]: rounds >= round with a non-empty approval set
  std::vector<std::vector<VoterSet>> supporters;
  UtilityVector current;
  std::vector<AlternativeIndex> path;

  ParetoSearch(const DecisionInstance& inst, const UtilityVector& base, std::uint64_t node_budget)
      : instance(inst), baseline(base), budget(node_budget), current(inst.voters, 0) {
    const std::size_t horizon = inst.horizon();
    remaining.assign(horizon + 1, std::vector<std::size_t>(inst.voters, 0));
    for (std::size_t j = horizon; j-- > 0;)
      for (VoterIndex v = 0; v < inst.voters; ++v)
        remaining[j][v] = remaining[j + 1][v] + (inst.rounds[j].approvals[v].empty() ? 0 : 1);
    for (const Round& r : inst.rounds) supporters.push_back(r.supporters());
  }

  bool feasible(std::size_t round) const {
    for (VoterIndex v = 0; v < instance.voters; ++v)
      if (current[v] + remaining[round][v] < baseline[v]) return false;
    return true;
  }

  bool search(std::size_t round) {
    if (++nodes > budget)
      throw Error(ErrorCode::SearchBudgetExceeded,
                  "Pareto search exceeded " + std::to_string(budget) + " nodes");
    if (round == instance.horizon()) return current != baseline;
    const std::size_t options = instance.rounds[round].alternatives.size();
    for (AlternativeIndex c = 0; c < options; ++c) {
      for (VoterIndex v : supporters[round][c]) ++current[v];
      path.push_back(c);
      if (feasible(round + 1) && search(round + 1)) return true;
      path.pop_back();
      for (VoterIndex v : supporters[round][c]) --current[v];
    }
    return false;
  }
};

}  // namespace

AxiomReport check_pareto(const DecisionInstance& instance, const DecisionSequence& sequence,
                         const ParetoOptions& options) {
  validate(instance, sequence);
  const UtilityVector base = utility(instance, sequence);
  ParetoSearch search(instance, base, options.node_budget);

  AxiomReport report;
  report.axiom = "Pareto efficiency";
  if (search.search(0)) {
    report.satisfied = false;
    Witness w;
    w.dominating = DecisionSequence{search.path};
    const UtilityVector better = utility(instance, *w.dominating);
    for (VoterIndex v = 0; v < instance.voters; ++v)
      if (better[v] > base[v]) {
        w.voter = v;
        w.demand = better[v];
        w.observed = base[v];
        break;
      }
    w.group = {*w.voter};
    report.witness = std::move(w);
  }
  return report;
}

}  // namespace seqvote
