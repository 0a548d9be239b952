#pragma once

// Internal stepper classes shared by the rule translation units.

#include <memory>
#include <optional>
#include <vector>

#include "seqvote/rules.hpp"

namespace seqvote::detail {

class PhragmenRule final : public OnlineRule {
 public:
  std::string_view name() const override { return "phragmen"; }
  void reset(std::size_t voters, std::size_t horizon) override;
  std::optional<AlternativeIndex> decide(const Round& round) override;

  const std::vector<Fraction>& loads() const { return loads_; }

 private:
  std::vector<Fraction> loads_;
  std::size_t round_ = 0;
};

class ApprovalVotingRule final : public OnlineRule {
 public:
  std::string_view name() const override { return "av"; }
  void reset(std::size_t voters, std::size_t horizon) override;
  std::optional<AlternativeIndex> decide(const Round& round) override;

 private:
  std::size_t round_ = 0;
};

class RoundRobinRule final : public OnlineRule {
 public:
  std::string_view name() const override { return "rr"; }
  void reset(std::size_t voters, std::size_t horizon) override;
  std::optional<AlternativeIndex> decide(const Round& round) override;

 private:
  std::size_t voters_ = 0;
  std::size_t round_ = 0;
};

class PerpetualConsensusRule final : public OnlineRule {
 public:
  std::string_view name() const override { return "consensus"; }
  void reset(std::size_t voters, std::size_t horizon) override;
  std::optional<AlternativeIndex> decide(const Round& round) override;

 private:
  std::vector<Fraction> weights_;
  std::size_t round_ = 0;
};

class PerpetualQuotaRule final : public OnlineRule {
 public:
  std::string_view name() const override { return "quota"; }
  void reset(std::size_t voters, std::size_t horizon) override;
  std::optional<AlternativeIndex> decide(const Round& round) override;

 private:
  std::vector<Fraction> quota_;
  std::vector<std::size_t> satisfaction_;
  std::size_t round_ = 0;
};

class MesRule final : public OnlineRule {
 public:
  explicit MesRule(Completion completion) : completion_(completion) {}

  std::string_view name() const override { return "mes"; }
  bool needs_horizon() const override { return true; }
  void reset(std::size_t voters, std::size_t horizon) override;
  std::optional<AlternativeIndex> decide(const Round& round) override;

 private:
  std::optional<AlternativeIndex> complete_round(const Round& round, const std::vector<VoterSet>& supporters,
                                                 bool first_stuck);

  Completion completion_;
  std::size_t voters_ = 0;
  Fraction price_;
  std::vector<Fraction> budgets_;
  bool stopped_ = false;
  std::unique_ptr<PhragmenRule> phragmen_;
  std::size_t round_ = 0;
};

/// Index of the alternative with most supporters, lowest index on ties; 0 when nobody approves anything.
AlternativeIndex most_approved(const std::vector<VoterSet>& supporters);

}  // namespace seqvote::detail
