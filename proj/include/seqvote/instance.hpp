#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace seqvote {

using VoterIndex = std::size_t;
using AlternativeIndex = std::size_t;

/// Sorted list of distinct voter indices.
using VoterSet = std::vector<VoterIndex>;
using ApprovalSet = std::vector<AlternativeIndex>;

/// Marks a round left undecided by a rule that stopped early.
inline constexpr AlternativeIndex kUndecided = std::numeric_limits<AlternativeIndex>::max();

struct Round {
  std::vector<std::string> alternatives;
  /// One approval set per voter, as indices into `alternatives`. May be empty.
  std::vector<ApprovalSet> approvals;

  bool approves(VoterIndex voter, AlternativeIndex alt) const;
  /// Approvers of each alternative, ascending by voter index.
  std::vector<VoterSet> supporters() const;
};

struct DecisionInstance {
  std::size_t voters = 0;
  std::vector<Round> rounds;

  std::size_t horizon() const { return rounds.size(); }
};

struct DecisionSequence {
  std::vector<AlternativeIndex> decisions;

  std::size_t size() const { return decisions.size(); }
  AlternativeIndex operator[](std::size_t j) const { return decisions[j]; }
  bool complete() const;
  friend bool operator==(const DecisionSequence&, const DecisionSequence&) = default;
};

/// Per-voter count of approved decisions.
using UtilityVector = std::vector<std::size_t>;

/// Throws `Error` naming the first failing round/voter.
void validate(const DecisionInstance& instance);
void validate(const DecisionInstance& instance, const DecisionSequence& sequence);

UtilityVector utility(const DecisionInstance& instance, const DecisionSequence& sequence);

/// Rounds (0-based, ascending) in which every member of `group` approves a common alternative.
std::vector<std::size_t> agreement_rounds(const DecisionInstance& instance, const VoterSet& group);

/// Number of rounds whose decision is approved by at least one member of `group`.
std::size_t satisfied_round_count(const DecisionInstance& instance, const VoterSet& group,
                                  const DecisionSequence& sequence);

/// Label-based sequence construction, e.g. {"a", "b", "a"}.
DecisionSequence sequence_from_labels(const DecisionInstance& instance,
                                      const std::vector<std::string>& labels);
std::vector<std::string> labels_of(const DecisionInstance& instance, const DecisionSequence& sequence);

}  // namespace seqvote
