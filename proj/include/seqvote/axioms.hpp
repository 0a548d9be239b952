#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqvote/fraction.hpp"
#include "seqvote/instance.hpp"

namespace seqvote {

enum class Family { JR, PJR, EJR };
enum class Strength { Weak, Full };

struct AxiomKind {
  Family family;
  Strength strength;

  std::string name() const;
};

/// Which agreement requirement bounds the demand of a group.
enum class AgreementMode {
  PaperK,        // k = number of rounds the group agrees in; size >= (l - eps) n / k
  Ell,           // agree in at least l rounds; size >= (l - eps) n / T
  EllOverAlpha,  // agree in at least l / alpha rounds; size >= (l - eps) n / T
};

enum class TargetMode { Ell, FloorAlphaEll };

struct VariantSpec {
  Fraction size_slack;  // epsilon >= 0
  AgreementMode agreement = AgreementMode::PaperK;
  TargetMode target = TargetMode::Ell;
  Fraction alpha = Fraction(1);

  static VariantSpec stronger_pjr(Fraction epsilon) { return {std::move(epsilon)}; }
  std::string name() const;
};

struct Witness {
  VoterSet group;
  std::size_t agreement = 0;  // rounds the group agrees in (prefix length for lower quota)
  std::size_t demand = 0;     // required satisfaction
  std::size_t observed = 0;   // actual satisfaction
  std::optional<VoterIndex> voter;            // lower quota: the under-served member
  std::optional<DecisionSequence> dominating;  // Pareto: the dominating sequence
};

struct AxiomReport {
  std::string axiom;
  bool satisfied = true;
  std::optional<Witness> witness;
};

struct CheckOptions {
  std::size_t voter_limit = 20;
};

/// Largest voter count a checker accepts regardless of options.
inline constexpr std::size_t kMaxCheckerVoters = 26;

using VoterMask = std::uint32_t;

/// Agreement count of every voter group, indexed by bit mask. Built once per instance
/// and shared across the sequences being checked.
class GroupTable {
 public:
  explicit GroupTable(const DecisionInstance& instance, const CheckOptions& options = {});

  const DecisionInstance& instance() const { return *instance_; }
  std::size_t voters() const { return instance_->voters; }
  std::uint16_t agreement(VoterMask group) const { return agreement_[group]; }
  /// Approver mask of alternative `alt` in round `round`.
  VoterMask approvers(std::size_t round, AlternativeIndex alt) const { return approvers_[round][alt]; }

 private:
  const DecisionInstance* instance_;
  std::vector<std::uint16_t> agreement_;
  std::vector<std::vector<VoterMask>> approvers_;
};

/// Deterministic enumeration order: by group size, then lexicographic on sorted members.
bool precedes(VoterMask a, VoterMask b);
VoterSet members(VoterMask mask);
VoterMask mask_of(const VoterSet& group);

// Parallel kernels (OpenMP over voter masks; the reported witness is the first in enumeration order).
AxiomReport check_representation(const GroupTable& table, const DecisionSequence& sequence, AxiomKind kind);
AxiomReport check_variant(const GroupTable& table, const DecisionSequence& sequence, const VariantSpec& spec);

AxiomReport check_representation(const DecisionInstance& instance, const DecisionSequence& sequence,
                                 AxiomKind kind, const CheckOptions& options = {});
AxiomReport check_variant(const DecisionInstance& instance, const DecisionSequence& sequence,
                          const VariantSpec& spec, const CheckOptions& options = {});

namespace serial {

/// Single-threaded reference: walks groups in enumeration order and stops at the first violation.
AxiomReport check_representation(const GroupTable& table, const DecisionSequence& sequence, AxiomKind kind);
AxiomReport check_variant(const GroupTable& table, const DecisionSequence& sequence, const VariantSpec& spec);

}  // namespace serial

/// Re-checks a reported witness in isolation. True iff the witness still shows a violation.
bool witness_violates(const DecisionInstance& instance, const DecisionSequence& sequence, AxiomKind kind,
                      const Witness& witness);

// Closed groups and quotas

struct ClosedGroup {
  VoterSet members;
  std::vector<ApprovalSet> shared;  // the common approval set in each round
};

std::vector<ClosedGroup> find_closed_groups(const DecisionInstance& instance);

AxiomReport check_lower_quota_closed(const DecisionInstance& instance, const DecisionSequence& sequence,
                                     bool perpetual);

// Pareto efficiency

struct ParetoOptions {
  std::uint64_t node_budget = 50'000'000;
};

AxiomReport check_pareto(const DecisionInstance& instance, const DecisionSequence& sequence,
                         const ParetoOptions& options = {});

}  // namespace seqvote
