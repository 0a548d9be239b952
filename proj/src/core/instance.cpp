#include "seqvote/instance.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "seqvote/error.hpp"

namespace seqvote {

namespace {

std::string where(std::size_t round) { return "round " + std::to_string(round); }

std::string where(std::size_t round, std::size_t voter) {
  return "round " + std::to_string(round) + ", voter " + std::to_string(voter);
}

void check_group(const DecisionInstance& instance, const VoterSet& group) {
  if (group.empty()) throw Error(ErrorCode::EmptyGroup, "group must be non-empty");
  for (VoterIndex v : group)
    if (v >= instance.voters) throw Error(ErrorCode::BadIndex, "voter " + std::to_string(v) + " out of range");
}

}  // namespace

bool Round::approves(VoterIndex voter, AlternativeIndex alt) const {
  const auto& set = approvals[voter];
  return std::find(set.begin(), set.end(), alt) != set.end();
}

std::vector<VoterSet> Round::supporters() const {
  std::vector<VoterSet> out(alternatives.size());
  for (VoterIndex v = 0; v < approvals.size(); ++v)
    for (AlternativeIndex c : approvals[v])
      if (out[c].empty() || out[c].back() != v) out[c].push_back(v);
  return out;
}

bool DecisionSequence::complete() const {
  return std::none_of(decisions.begin(), decisions.end(),
                      [](AlternativeIndex d) { return d == kUndecided; });
}

void validate(const DecisionInstance& instance) {
  if (instance.voters == 0) throw Error(ErrorCode::EmptyInstance, "instance has no voters");
  if (instance.rounds.empty()) throw Error(ErrorCode::EmptyInstance, "instance has no rounds");
  for (std::size_t j = 0; j < instance.rounds.size(); ++j) {
    const Round& round = instance.rounds[j];
    if (round.alternatives.empty()) throw Error(ErrorCode::EmptyRound, where(j) + " has no alternatives");
    std::set<std::string> labels;
    for (const auto& label : round.alternatives)
      if (!labels.insert(label).second)
        throw Error(ErrorCode::DuplicateLabel, where(j) + " repeats label '" + label + "'");
    if (round.approvals.size() != instance.voters)
      throw Error(ErrorCode::LengthMismatch, where(j) + " has " + std::to_string(round.approvals.size()) +
                                                 " approval sets for " + std::to_string(instance.voters) + " voters");
    for (VoterIndex v = 0; v < instance.voters; ++v) {
      std::vector<AlternativeIndex> seen;
      for (AlternativeIndex c : round.approvals[v]) {
        if (c >= round.alternatives.size())
          throw Error(ErrorCode::BadIndex, where(j, v) + " approves index " + std::to_string(c));
        if (std::find(seen.begin(), seen.end(), c) != seen.end())
          throw Error(ErrorCode::BadIndex, where(j, v) + " approves index " + std::to_string(c) + " twice");
        seen.push_back(c);
      }
    }
  }
}

void validate(const DecisionInstance& instance, const DecisionSequence& sequence) {
  if (sequence.size() != instance.horizon())
    throw Error(ErrorCode::LengthMismatch, "sequence has " + std::to_string(sequence.size()) +
                                               " decisions for " + std::to_string(instance.horizon()) + " rounds");
  for (std::size_t j = 0; j < sequence.size(); ++j)
    if (sequence[j] >= instance.rounds[j].alternatives.size())
      throw Error(ErrorCode::BadIndex, where(j) + " decision is not a valid alternative");
}

UtilityVector utility(const DecisionInstance& instance, const DecisionSequence& sequence) {
  validate(instance, sequence);
  UtilityVector u(instance.voters, 0);
  for (std::size_t j = 0; j < sequence.size(); ++j)
    for (VoterIndex v = 0; v < instance.voters; ++v)
      if (instance.rounds[j].approves(v, sequence[j])) ++u[v];
  return u;
}

std::vector<std::size_t> agreement_rounds(const DecisionInstance& instance, const VoterSet& group) {
  check_group(instance, group);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < instance.rounds.size(); ++j) {
    const Round& round = instance.rounds[j];
    std::vector<AlternativeIndex> common = round.approvals[group.front()];
    std::sort(common.begin(), common.end());
    for (std::size_t g = 1; g < group.size() && !common.empty(); ++g) {
      std::vector<AlternativeIndex> other = round.approvals[group[g]];
      std::sort(other.begin(), other.end());
      std::vector<AlternativeIndex> next;
      std::set_intersection(common.begin(), common.end(), other.begin(), other.end(), std::back_inserter(next));
      common = std::move(next);
    }
    if (!common.empty()) out.push_back(j);
  }
  return out;
}

std::size_t satisfied_round_count(const DecisionInstance& instance, const VoterSet& group,
                                  const DecisionSequence& sequence) {
  check_group(instance, group);
  validate(instance, sequence);
  std::size_t count = 0;
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    const Round& round = instance.rounds[j];
    if (std::any_of(group.begin(), group.end(), [&](VoterIndex v) { return round.approves(v, sequence[j]); }))
      ++count;
  }
  return count;
}

DecisionSequence sequence_from_labels(const DecisionInstance& instance, const std::vector<std::string>& labels) {
  if (labels.size() != instance.horizon())
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(instance.horizon()) + " labels");
  DecisionSequence seq;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const auto& alts = instance.rounds[j].alternatives;
    auto it = std::find(alts.begin(), alts.end(), labels[j]);
    if (it == alts.end()) throw Error(ErrorCode::BadIndex, where(j) + " has no alternative '" + labels[j] + "'");
    seq.decisions.push_back(static_cast<AlternativeIndex>(it - alts.begin()));
  }
  return seq;
}

std::vector<std::string> labels_of(const DecisionInstance& instance, const DecisionSequence& sequence) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < sequence.size(); ++j)
    out.push_back(sequence[j] == kUndecided ? std::string() : instance.rounds[j].alternatives.at(sequence[j]));
  return out;
}

}  // namespace seqvote
