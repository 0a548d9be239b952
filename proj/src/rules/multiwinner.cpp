#include <algorithm>

#include "seqvote/error.hpp"
#include "seqvote/rules.hpp"

namespace seqvote {

std::vector<std::size_t> selection_order(const ApprovalProfile& profile, OnlineRule& rule) {
  if (rule.needs_horizon())
    throw Error(ErrorCode::BadConfig, "multi-winner reduction needs an online rule, got '" +
                                          std::string(rule.name()) + "'");
  const std::size_t m = profile.candidates;
  const std::size_t n = profile.approvals.size();
  if (m == 0 || n == 0) throw Error(ErrorCode::EmptyInstance, "profile needs candidates and voters");
  for (const auto& a : profile.approvals)
    for (std::size_t c : a)
      if (c >= m) throw Error(ErrorCode::BadIndex, "candidate " + std::to_string(c) + " out of range");

  rule.reset(n, m);
  std::vector<std::size_t> remaining(m);
  for (std::size_t c = 0; c < m; ++c) remaining[c] = c;
  std::vector<std::size_t> order;

  // Round j offers the candidates not yet selected, with approvals restricted to them.
  while (!remaining.empty()) {
    Round round;
    for (std::size_t c : remaining) round.alternatives.push_back("c" + std::to_string(c));
    round.approvals.resize(n);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t pos = 0; pos < remaining.size(); ++pos)
        if (std::find(profile.approvals[v].begin(), profile.approvals[v].end(), remaining[pos]) !=
            profile.approvals[v].end())
          round.approvals[v].push_back(pos);
    auto d = rule.decide(round);
    if (!d || *d >= remaining.size()) throw Error(ErrorCode::ConstructionFailed, "rule did not pick a candidate");
    order.push_back(remaining[*d]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*d));
  }
  return order;
}

std::vector<std::size_t> multiwinner_adapter(const ApprovalProfile& profile, std::size_t k, OnlineRule& rule) {
  if (k == 0 || k > profile.candidates)
    throw Error(ErrorCode::KTooLarge, "committee size " + std::to_string(k) + " not in [1, " +
                                          std::to_string(profile.candidates) + "]");
  auto order = selection_order(profile, rule);
  order.resize(k);
  return order;
}

}  // namespace seqvote
