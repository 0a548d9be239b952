#include <algorithm>
#include <map>

#include "seqvote/axioms.hpp"

namespace seqvote {

std::vector<ClosedGroup> find_closed_groups(const DecisionInstance& instance) {
  validate(instance);
  const std::size_t n = instance.voters;

  std::map<std::vector<ApprovalSet>, VoterSet> classes;
  for (VoterIndex v = 0; v < n; ++v) {
    std::vector<ApprovalSet> profile;
    for (const Round& r : instance.rounds) {
      ApprovalSet s = r.approvals[v];
      std::sort(s.begin(), s.end());
      profile.push_back(std::move(s));
    }
    classes[std::move(profile)].push_back(v);
  }

  std::vector<ClosedGroup> out;
  for (auto& [profile, group] : classes) {
    bool closed = true;
    for (std::size_t j = 0; j < instance.horizon() && closed; ++j) {
      const Round& r = instance.rounds[j];
      for (VoterIndex v = 0; v < n && closed; ++v) {
        if (std::binary_search(group.begin(), group.end(), v)) continue;
        for (AlternativeIndex c : r.approvals[v])
          if (std::binary_search(profile[j].begin(), profile[j].end(), c)) {
            closed = false;
            break;
          }
      }
    }
    if (closed) out.push_back({group, profile});
  }
  std::sort(out.begin(), out.end(), [](const ClosedGroup& a, const ClosedGroup& b) { return a.members < b.members; });
  return out;
}

AxiomReport check_lower_quota_closed(const DecisionInstance& instance, const DecisionSequence& sequence,
                                     bool perpetual) {
  validate(instance, sequence);
  const std::size_t n = instance.voters;
  const std::size_t horizon = instance.horizon();

  AxiomReport report;
  report.axiom = perpetual ? "perpetual lower quota for closed groups" : "lower quota for closed groups";

  for (const ClosedGroup& g : find_closed_groups(instance)) {
    // Members share approval sets, so one member's utility stands for all.
    const VoterIndex rep = g.members.front();
    std::vector<std::size_t> prefix(horizon + 1, 0);
    for (std::size_t j = 0; j < horizon; ++j)
      prefix[j + 1] = prefix[j] + (instance.rounds[j].approves(rep, sequence[j]) ? 1 : 0);

    const std::size_t from = perpetual ? 1 : horizon;
    for (std::size_t k = from; k <= horizon; ++k) {
      const std::size_t quota = k * g.members.size() / n;
      if (prefix[k] < quota) {
        report.satisfied = false;
        Witness w;
        w.group = g.members;
        w.agreement = k;
        w.demand = quota;
        w.observed = prefix[k];
        w.voter = rep;
        report.witness = std::move(w);
        return report;
      }
    }
  }
  return report;
}

}  // namespace seqvote
