#include <algorithm>
#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqvote/axioms.hpp"
#include "seqvote/error.hpp"

namespace seqvote {

std::string AxiomKind::name() const {
  std::string base = family == Family::JR ? "JR" : (family == Family::PJR ? "PJR" : "EJR");
  return strength == Strength::Weak ? "Weak " + base : base;
}

std::string VariantSpec::name() const {
  std::string s = "variant-PJR(eps=" + size_slack.str();
  s += agreement == AgreementMode::PaperK ? ", agreement=k" : (agreement == AgreementMode::Ell ? ", agreement=l" : ", agreement=l/alpha");
  if (target == TargetMode::FloorAlphaEll) s += ", target=floor(alpha l)";
  if (agreement == AgreementMode::EllOverAlpha || target == TargetMode::FloorAlphaEll) s += ", alpha=" + alpha.str();
  return s + ")";
}

bool precedes(VoterMask a, VoterMask b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  const VoterMask diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

VoterSet members(VoterMask mask) {
  VoterSet out;
  for (VoterIndex v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1u) out.push_back(v);
  return out;
}

VoterMask mask_of(const VoterSet& group) {
  VoterMask m = 0;
  for (VoterIndex v : group) m |= VoterMask{1} << v;
  return m;
}

GroupTable::GroupTable(const DecisionInstance& instance, const CheckOptions& options) : instance_(&instance) {
  validate(instance);
  const std::size_t n = instance.voters;
  const std::size_t limit = std::min(options.voter_limit, kMaxCheckerVoters);
  if (n > limit)
    throw Error(ErrorCode::TooManyVoters,
                std::to_string(n) + " voters exceeds the checker limit of " + std::to_string(limit));
  if (instance.horizon() > 0xFFFF) throw Error(ErrorCode::TooManyVoters, "horizon too long for the checker");

  const std::size_t groups = std::size_t{1} << n;
  agreement_.assign(groups, 0);
  std::vector<char> agrees(groups);

  for (const Round& round : instance.rounds) {
    std::vector<VoterMask> masks(round.alternatives.size(), 0);
    for (VoterIndex v = 0; v < n; ++v)
      for (AlternativeIndex c : round.approvals[v]) masks[c] |= VoterMask{1} << v;
    approvers_.push_back(masks);

    // A group agrees iff it is a subset of some alternative's approver set: push
    // approver sets down to all their subsets.
    std::fill(agrees.begin(), agrees.end(), 0);
    for (VoterMask m : masks) agrees[m] = 1;
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t bit = std::size_t{1} << b;
#pragma omp parallel for schedule(static) if (groups > (1u << 14))
      for (std::size_t s = 0; s < groups; ++s)
        if (!(s & bit) && agrees[s | bit]) agrees[s] = 1;
    }
#pragma omp parallel for schedule(static) if (groups > (1u << 14))
    for (std::size_t s = 1; s < groups; ++s) agreement_[s] = static_cast<std::uint16_t>(agreement_[s] + agrees[s]);
  }
}

namespace {

/// Required satisfaction per (group size, agreement count), and whether it is counted per group or per voter.
struct DemandTable {
  std::vector<std::vector<std::size_t>> target;  // [size][agreement]
  bool voter_level = false;
  std::string axiom;
};

DemandTable representation_demand(std::size_t n, std::size_t horizon, AxiomKind kind) {
  DemandTable t;
  t.axiom = kind.name();
  t.voter_level = kind.family == Family::EJR;
  t.target.assign(n + 1, std::vector<std::size_t>(horizon + 1, 0));
  for (std::size_t s = 1; s <= n; ++s)
    for (std::size_t k = 1; k <= horizon; ++k) {
      if (kind.strength == Strength::Weak && k != horizon) continue;
      // |S| >= l n / k  <=>  l <= |S| k / n
      std::size_t l = s * k / n;
      if (kind.family == Family::JR) l = std::min<std::size_t>(l, 1);
      t.target[s][k] = l;
    }
  return t;
}

DemandTable variant_demand(std::size_t n, std::size_t horizon, const VariantSpec& spec) {
  if (spec.size_slack.sign() < 0) throw Error(ErrorCode::BadSpec, "size slack must be non-negative");
  const bool uses_alpha = spec.agreement == AgreementMode::EllOverAlpha || spec.target == TargetMode::FloorAlphaEll;
  if (uses_alpha && (spec.alpha.sign() <= 0 || spec.alpha > Fraction(1)))
    throw Error(ErrorCode::BadSpec, "alpha must lie in (0, 1], got " + spec.alpha.str());

  DemandTable t;
  t.axiom = spec.name();
  t.target.assign(n + 1, std::vector<std::size_t>(horizon + 1, 0));
  const Fraction nf(static_cast<long long>(n));
  for (std::size_t s = 1; s <= n; ++s)
    for (std::size_t k = 1; k <= horizon; ++k) {
      const Fraction size(static_cast<long long>(s));
      long long l = 0;
      switch (spec.agreement) {
        case AgreementMode::PaperK:
          // |S| >= (l - eps) n / k
          l = (size * Fraction(static_cast<long long>(k)) / nf + spec.size_slack).floor();
          break;
        case AgreementMode::Ell:
          l = std::min<long long>((size * Fraction(static_cast<long long>(horizon)) / nf + spec.size_slack).floor(),
                                  static_cast<long long>(k));
          break;
        case AgreementMode::EllOverAlpha:
          l = std::min((size * Fraction(static_cast<long long>(horizon)) / nf + spec.size_slack).floor(),
                       (spec.alpha * Fraction(static_cast<long long>(k))).floor());
          break;
      }
      if (l < 1) continue;
      if (spec.target == TargetMode::FloorAlphaEll) l = (spec.alpha * Fraction(l)).floor();
      t.target[s][k] = static_cast<std::size_t>(std::max<long long>(l, 0));
    }
  return t;
}

struct Evaluator {
  const GroupTable& table;
  const DemandTable& demand;
  std::vector<VoterMask> decision_masks;  // approvers of each round's decision
  UtilityVector utilities;

  Evaluator(const GroupTable& t, const DemandTable& d, const DecisionSequence& seq) : table(t), demand(d) {
    validate(t.instance(), seq);
    for (std::size_t j = 0; j < seq.size(); ++j) decision_masks.push_back(t.approvers(j, seq[j]));
    utilities.assign(t.voters(), 0);
    for (VoterMask m : decision_masks)
      for (VoterIndex v = 0; v < t.voters(); ++v)
        if (m >> v & 1u) ++utilities[v];
  }

  std::size_t required(VoterMask group) const {
    return demand.target[static_cast<std::size_t>(std::popcount(group))][table.agreement(group)];
  }

  /// Satisfaction of `group`, counted no further than `cap`.
  std::size_t observed(VoterMask group, std::size_t cap) const {
    std::size_t obs = 0;
    if (demand.voter_level) {
      for (VoterMask g = group; g != 0; g &= g - 1) {
        obs = std::max(obs, utilities[static_cast<std::size_t>(std::countr_zero(g))]);
        if (obs >= cap) break;
      }
    } else {
      for (VoterMask m : decision_masks)
        if ((m & group) != 0 && ++obs >= cap) break;
    }
    return obs;
  }

  bool violates(VoterMask group) const {
    const std::size_t need = required(group);
    return need > 0 && observed(group, need) < need;
  }

  AxiomReport report(std::optional<VoterMask> violating) const {
    AxiomReport r;
    r.axiom = demand.axiom;
    r.satisfied = !violating.has_value();
    if (violating) {
      Witness w;
      w.group = members(*violating);
      w.agreement = table.agreement(*violating);
      w.demand = required(*violating);
      w.observed = observed(*violating, static_cast<std::size_t>(-1));
      r.witness = std::move(w);
    }
    return r;
  }
};

std::optional<VoterMask> first_violation_parallel(const Evaluator& eval) {
  const std::size_t groups = std::size_t{1} << eval.table.voters();
  std::optional<VoterMask> best;
#pragma omp parallel
  {
    std::optional<VoterMask> local;
#pragma omp for schedule(dynamic, 4096) nowait
    for (std::size_t s = 1; s < groups; ++s) {
      const auto mask = static_cast<VoterMask>(s);
      if (local && !precedes(mask, *local)) continue;
      if (eval.violates(mask)) local = mask;
    }
#pragma omp critical(seqvote_first_violation)
    if (local && (!best || precedes(*local, *best))) best = local;
  }
  return best;
}

std::optional<VoterMask> first_violation_serial(const Evaluator& eval) {
  const std::size_t n = eval.table.voters();
  for (std::size_t size = 1; size <= n; ++size) {
    // Lexicographic combinations of `size` voters.
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      VoterMask mask = 0;
      for (std::size_t i : idx) mask |= VoterMask{1} << i;
      if (eval.violates(mask)) return mask;
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

AxiomReport check_representation(const GroupTable& table, const DecisionSequence& sequence, AxiomKind kind) {
  const auto demand = representation_demand(table.voters(), table.instance().horizon(), kind);
  const Evaluator eval(table, demand, sequence);
  return eval.report(first_violation_parallel(eval));
}

AxiomReport check_variant(const GroupTable& table, const DecisionSequence& sequence, const VariantSpec& spec) {
  const auto demand = variant_demand(table.voters(), table.instance().horizon(), spec);
  const Evaluator eval(table, demand, sequence);
  return eval.report(first_violation_parallel(eval));
}

AxiomReport check_representation(const DecisionInstance& instance, const DecisionSequence& sequence,
                                 AxiomKind kind, const CheckOptions& options) {
  return check_representation(GroupTable(instance, options), sequence, kind);
}

AxiomReport check_variant(const DecisionInstance& instance, const DecisionSequence& sequence,
                          const VariantSpec& spec, const CheckOptions& options) {
  return check_variant(GroupTable(instance, options), sequence, spec);
}

namespace serial {

AxiomReport check_representation(const GroupTable& table, const DecisionSequence& sequence, AxiomKind kind) {
  const auto demand = representation_demand(table.voters(), table.instance().horizon(), kind);
  const Evaluator eval(table, demand, sequence);
  return eval.report(first_violation_serial(eval));
}

AxiomReport check_variant(const GroupTable& table, const DecisionSequence& sequence, const VariantSpec& spec) {
  const auto demand = variant_demand(table.voters(), table.instance().horizon(), spec);
  const Evaluator eval(table, demand, sequence);
  return eval.report(first_violation_serial(eval));
}

}  // namespace serial

bool witness_violates(const DecisionInstance& instance, const DecisionSequence& sequence, AxiomKind kind,
                      const Witness& w) {
  if (w.group.empty() || w.demand == 0) return false;
  const std::size_t n = instance.voters;
  const std::size_t k = agreement_rounds(instance, w.group).size();
  if (kind.strength == Strength::Weak && k != instance.horizon()) return false;
  if (w.agreement > k || w.agreement == 0) return false;
  if (w.group.size() * w.agreement < w.demand * n) return false;
  if (kind.family == Family::JR && w.demand > 1) return false;
  std::size_t obs = 0;
  if (kind.family == Family::EJR) {
    const auto u = utility(instance, sequence);
    for (VoterIndex v : w.group) obs = std::max(obs, u[v]);
  } else {
    obs = satisfied_round_count(instance, w.group, sequence);
  }
  return obs < w.demand;
}

}  // namespace seqvote
