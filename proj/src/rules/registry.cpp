#include <array>

#include "seqvote/error.hpp"
#include "steppers.hpp"

namespace seqvote {

namespace {

constexpr std::array<std::string_view, 9> kRuleNames = {"phragmen", "mes", "mes-offline", "pav", "pav-ls",
                                                         "av",       "rr",  "quota",       "consensus"};

}  // namespace

RuleResult run_online(OnlineRule& rule, const DecisionInstance& instance) {
  validate(instance);
  rule.reset(instance.voters, instance.horizon());
  RuleResult result;
  result.sequence.decisions.reserve(instance.horizon());
  for (const Round& round : instance.rounds) {
    auto d = rule.decide(round);
    if (!d) result.complete = false;
    result.sequence.decisions.push_back(d.value_or(kUndecided));
  }
  result.trace = rule.trace();
  return result;
}

std::unique_ptr<OnlineRule> make_online_rule(std::string_view name, const MesConfig& mes) {
  if (name == "phragmen") return std::make_unique<detail::PhragmenRule>();
  if (name == "mes") return std::make_unique<detail::MesRule>(mes.completion);
  if (name == "av") return std::make_unique<detail::ApprovalVotingRule>();
  if (name == "rr") return std::make_unique<detail::RoundRobinRule>();
  if (name == "quota") return std::make_unique<detail::PerpetualQuotaRule>();
  if (name == "consensus") return std::make_unique<detail::PerpetualConsensusRule>();
  throw Error(ErrorCode::UnknownName, "no online rule named '" + std::string(name) + "'");
}

bool is_known_rule(std::string_view name) {
  for (auto n : kRuleNames)
    if (n == name) return true;
  return false;
}

RuleResult run_rule(std::string_view name, const DecisionInstance& instance, const MesConfig& mes,
                    const PavOptions& pav) {
  if (name == "phragmen") return run_phragmen(instance);
  if (name == "mes") return run_mes(instance, {mes.completion, false});
  if (name == "mes-offline") return run_mes(instance, {mes.completion, true});
  if (name == "pav") return run_pav_exact(instance, pav);
  if (name == "pav-ls") return run_pav_local_search(instance);
  if (name == "av") return run_approval_voting(instance);
  if (name == "rr") return run_round_robin(instance);
  if (name == "quota") return run_perpetual_quota(instance);
  if (name == "consensus") return run_perpetual_consensus(instance);
  throw Error(ErrorCode::UnknownName, "unknown rule '" + std::string(name) + "'");
}

}  // namespace seqvote
