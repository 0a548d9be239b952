#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seqvote/fraction.hpp"
#include "seqvote/instance.hpp"

namespace seqvote {

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

struct PhragmenDetail {
  Fraction water_line;       // s_c of the chosen alternative
  VoterSet load_set;         // voters whose load was raised to the water line
  std::vector<Fraction> loads;  // all voter loads after the round
};

struct MesDetail {
  std::optional<Fraction> rho;  // empty when nothing was affordable
  std::vector<Fraction> payments;
  std::vector<Fraction> budgets;  // after payment
  Fraction top_up;                // epsilon completion only
  bool premature = false;         // this round is the first unaffordable one
};

struct WeightDetail {
  std::vector<Fraction> weights;  // perpetual consensus weights after the round
};

struct QuotaDetail {
  std::vector<Fraction> quota;
  std::vector<std::size_t> satisfaction;
};

using RoundDetail = std::variant<std::monostate, PhragmenDetail, MesDetail, WeightDetail, QuotaDetail>;

struct RoundRecord {
  std::size_t round = 0;
  AlternativeIndex chosen = kUndecided;
  std::string decided_by;  // the rule (or completion rule) that made this decision
  RoundDetail detail;
};

struct SwapRecord {
  std::size_t round;
  AlternativeIndex from;
  AlternativeIndex to;
  Fraction gain;
};

struct RuleTrace {
  std::string rule;
  /// Records in decision order; for offline rules this is not round order.
  std::vector<RoundRecord> per_round;
  std::optional<std::size_t> premature_round;  // 0-based
  std::vector<SwapRecord> swaps;               // local-search PAV
  std::optional<Fraction> pav_score;
  std::uint64_t nodes = 0;                     // exact PAV search nodes
};

struct RuleResult {
  DecisionSequence sequence;
  RuleTrace trace;
  /// False only for MES with completion none after premature termination.
  bool complete = true;
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class Completion { Phragmen, Epsilon, Utilitarian, None };

struct MesConfig {
  Completion completion = Completion::Phragmen;
  bool offline = false;
};

Completion parse_completion(std::string_view name);
std::string_view to_string(Completion c);

struct PavOptions {
  std::uint64_t node_budget = 20'000'000;
};

// ---------------------------------------------------------------------------
// Online interface
// ---------------------------------------------------------------------------

/// A rule that decides one round at a time from the history it has seen.
class OnlineRule {
 public:
  virtual ~OnlineRule() = default;

  virtual std::string_view name() const = 0;
  /// True for semi-online rules that need the time horizon up front.
  virtual bool needs_horizon() const { return false; }

  virtual void reset(std::size_t voters, std::size_t horizon) = 0;
  /// Returns nullopt only when the rule declines to decide (MES without completion).
  virtual std::optional<AlternativeIndex> decide(const Round& round) = 0;

  RuleTrace& trace() { return trace_; }
  const RuleTrace& trace() const { return trace_; }

 protected:
  RuleTrace trace_;
};

/// Online rule names: phragmen, mes, av, rr, quota, consensus.
std::unique_ptr<OnlineRule> make_online_rule(std::string_view name, const MesConfig& mes = {});

/// Feeds every round of `instance` to `rule` in order.
RuleResult run_online(OnlineRule& rule, const DecisionInstance& instance);

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

/// Water-filling value for an alternative: min over approver subsets of (load sum + 1) / |S|.
struct WaterLine {
  Fraction value;
  VoterSet members;
};
WaterLine water_line(const std::vector<Fraction>& loads, const VoterSet& approvers);

/// Minimal rho at which `approvers` can cover `price`, or nullopt if their budgets fall short.
std::optional<Fraction> min_affordable_rho(const std::vector<Fraction>& budgets, const VoterSet& approvers,
                                           const Fraction& price);

RuleResult run_phragmen(const DecisionInstance& instance);
RuleResult run_mes(const DecisionInstance& instance, const MesConfig& config = {});
RuleResult run_pav_exact(const DecisionInstance& instance, const PavOptions& options = {});
RuleResult run_pav_local_search(const DecisionInstance& instance,
                                const std::optional<DecisionSequence>& init = std::nullopt);
RuleResult run_approval_voting(const DecisionInstance& instance);
RuleResult run_round_robin(const DecisionInstance& instance);
RuleResult run_perpetual_consensus(const DecisionInstance& instance);
RuleResult run_perpetual_quota(const DecisionInstance& instance);

Fraction pav_score(const DecisionInstance& instance, const DecisionSequence& sequence);

/// Exact PAV-score change from replacing the decision of `round` by `to`.
Fraction pav_swap_gain(const DecisionInstance& instance, const DecisionSequence& sequence,
                       const UtilityVector& utilities, std::size_t round, AlternativeIndex to);

/// Dispatch by CLI rule name: phragmen, mes, mes-offline, pav, pav-ls, av, rr, quota, consensus.
RuleResult run_rule(std::string_view name, const DecisionInstance& instance, const MesConfig& mes = {},
                    const PavOptions& pav = {});
bool is_known_rule(std::string_view name);

// ---------------------------------------------------------------------------
// Multi-winner reduction
// ---------------------------------------------------------------------------

struct ApprovalProfile {
  std::size_t candidates = 0;
  std::vector<std::vector<std::size_t>> approvals;  // per voter, candidate indices
};

/// Full selection order d_1..d_m produced by offering the shrinking candidate set round by round.
std::vector<std::size_t> selection_order(const ApprovalProfile& profile, OnlineRule& rule);

/// Committee of size k: the first k selections.
std::vector<std::size_t> multiwinner_adapter(const ApprovalProfile& profile, std::size_t k, OnlineRule& rule);

}  // namespace seqvote
