#include <algorithm>
#include <optional>

#include "seqvote/error.hpp"
#include "steppers.hpp"

namespace seqvote {

std::optional<Fraction> min_affordable_rho(const std::vector<Fraction>& budgets, const VoterSet& approvers,
                                           const Fraction& price) {
  if (approvers.empty()) return std::nullopt;
  std::vector<Fraction> sorted;
  sorted.reserve(approvers.size());
  Fraction total;
  for (VoterIndex v : approvers) {
    sorted.push_back(budgets[v]);
    total += budgets[v];
  }
  if (total < price) return std::nullopt;
  std::sort(sorted.begin(), sorted.end());

  // Voters below the line pay their whole budget; the remaining suffix splits the rest equally.
  Fraction residual = price;
  const std::size_t m = sorted.size();
  for (std::size_t t = 0; t < m; ++t) {
    Fraction rho = residual / Fraction(static_cast<long long>(m - t));
    if (rho <= sorted[t]) return rho;
    residual -= sorted[t];
  }
  return sorted.back();  // unreachable when total >= price
}

Completion parse_completion(std::string_view name) {
  if (name == "phragmen") return Completion::Phragmen;
  if (name == "epsilon") return Completion::Epsilon;
  if (name == "utilitarian") return Completion::Utilitarian;
  if (name == "none") return Completion::None;
  throw Error(ErrorCode::UnknownName, "unknown completion '" + std::string(name) + "'");
}

std::string_view to_string(Completion c) {
  switch (c) {
    case Completion::Phragmen: return "phragmen";
    case Completion::Epsilon: return "epsilon";
    case Completion::Utilitarian: return "utilitarian";
    case Completion::None: return "none";
  }
  return "?";
}

namespace {

struct Purchase {
  AlternativeIndex alt = 0;
  Fraction rho;
};

std::optional<Purchase> cheapest(const std::vector<Fraction>& budgets, const std::vector<VoterSet>& supporters,
                                 const Fraction& price) {
  std::optional<Purchase> best;
  for (AlternativeIndex c = 0; c < supporters.size(); ++c) {
    auto rho = min_affordable_rho(budgets, supporters[c], price);
    if (rho && (!best || *rho < best->rho)) best = Purchase{c, std::move(*rho)};
  }
  return best;
}

MesDetail pay(std::vector<Fraction>& budgets, const VoterSet& payers, const Fraction& rho) {
  MesDetail d;
  d.rho = rho;
  d.payments.assign(budgets.size(), Fraction());
  for (VoterIndex v : payers) {
    Fraction p = min(budgets[v], rho);
    budgets[v] -= p;
    d.payments[v] = std::move(p);
  }
  d.budgets = budgets;
  return d;
}

/// Smallest uniform top-up making some alternative affordable; nullopt if no alternative has an approver.
std::optional<Fraction> min_top_up(const std::vector<Fraction>& budgets, const std::vector<VoterSet>& supporters,
                                   const Fraction& price) {
  std::optional<Fraction> best;
  for (const auto& s : supporters) {
    if (s.empty()) continue;
    Fraction total;
    for (VoterIndex v : s) total += budgets[v];
    Fraction delta = (price - total) / Fraction(static_cast<long long>(s.size()));
    if (!best || delta < *best) best = std::move(delta);
  }
  return best;
}

}  // namespace

namespace detail {

void MesRule::reset(std::size_t voters, std::size_t horizon) {
  if (horizon == 0) throw Error(ErrorCode::EmptyInstance, "MES needs a positive horizon");
  voters_ = voters;
  price_ = Fraction(static_cast<long long>(voters), static_cast<long long>(horizon));
  budgets_.assign(voters, Fraction(1));
  stopped_ = false;
  phragmen_.reset();
  round_ = 0;
  trace_ = RuleTrace{};
  trace_.rule = "mes";
}

std::optional<AlternativeIndex> MesRule::decide(const Round& round) {
  const auto supporters = round.supporters();
  if (!stopped_) {
    if (auto buy = cheapest(budgets_, supporters, price_)) {
      trace_.per_round.push_back({round_++, buy->alt, "mes", pay(budgets_, supporters[buy->alt], buy->rho)});
      return buy->alt;
    }
    // Nothing affordable: premature termination.
    const bool first_stuck = !trace_.premature_round;
    if (first_stuck) trace_.premature_round = round_;
    if (completion_ != Completion::Epsilon) stopped_ = true;
    return complete_round(round, supporters, first_stuck);
  }
  return complete_round(round, supporters, false);
}

std::optional<AlternativeIndex> MesRule::complete_round(const Round& round, const std::vector<VoterSet>& supporters,
                                                        bool first_stuck) {
  const std::size_t j = round_++;
  switch (completion_) {
    case Completion::None: {
      MesDetail d;
      d.premature = first_stuck;
      d.budgets = budgets_;
      trace_.per_round.push_back({j, kUndecided, "none", std::move(d)});
      return std::nullopt;
    }
    case Completion::Utilitarian: {
      MesDetail d;
      d.premature = first_stuck;
      d.budgets = budgets_;
      const AlternativeIndex c = most_approved(supporters);
      trace_.per_round.push_back({j, c, "utilitarian", std::move(d)});
      return c;
    }
    case Completion::Phragmen: {
      if (!phragmen_) {
        phragmen_ = std::make_unique<PhragmenRule>();
        phragmen_->reset(voters_, 0);
      }
      const AlternativeIndex c = *phragmen_->decide(round);
      RoundRecord rec = phragmen_->trace().per_round.back();
      rec.round = j;
      if (first_stuck) {
        // Keep the MES view of the stuck round; the Phragmén loads stay in the completion's own record.
        MesDetail d;
        d.premature = true;
        d.budgets = budgets_;
        rec.detail = std::move(d);
      }
      trace_.per_round.push_back(std::move(rec));
      return c;
    }
    case Completion::Epsilon: {
      auto delta = min_top_up(budgets_, supporters, price_);
      if (!delta) {
        MesDetail d;
        d.premature = first_stuck;
        d.budgets = budgets_;
        trace_.per_round.push_back({j, 0, "epsilon", std::move(d)});
        return 0;
      }
      for (auto& b : budgets_) b += *delta;
      auto buy = cheapest(budgets_, supporters, price_);
      if (!buy) throw Error(ErrorCode::ConstructionFailed, "top-up did not make any alternative affordable");
      MesDetail d = pay(budgets_, supporters[buy->alt], buy->rho);
      d.top_up = *delta;
      d.premature = first_stuck;
      trace_.per_round.push_back({j, buy->alt, "epsilon", std::move(d)});
      return buy->alt;
    }
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

RuleResult run_offline_mes(const DecisionInstance& instance, Completion completion) {
  validate(instance);
  const std::size_t n = instance.voters;
  const std::size_t horizon = instance.horizon();
  const Fraction price(static_cast<long long>(n), static_cast<long long>(horizon));

  std::vector<std::vector<VoterSet>> supporters;
  for (const auto& r : instance.rounds) supporters.push_back(r.supporters());

  RuleResult result;
  result.trace.rule = "mes-offline";
  result.sequence.decisions.assign(horizon, kUndecided);
  std::vector<Fraction> budgets(n, Fraction(1));
  std::vector<bool> decided(horizon, false);
  std::size_t remaining = horizon;

  auto best_pair = [&]() {
    std::optional<std::pair<std::size_t, Purchase>> best;
    for (std::size_t j = 0; j < horizon; ++j) {
      if (decided[j]) continue;
      auto buy = cheapest(budgets, supporters[j], price);
      if (buy && (!best || buy->rho < best->second.rho)) best = std::make_pair(j, std::move(*buy));
    }
    return best;
  };
  auto record = [&](std::size_t j, AlternativeIndex c, std::string by, RoundDetail d) {
    result.sequence.decisions[j] = c;
    decided[j] = true;
    --remaining;
    result.trace.per_round.push_back({j, c, std::move(by), std::move(d)});
  };

  bool stuck_once = false;
  while (remaining > 0) {
    auto best = best_pair();
    if (best) {
      const auto& [j, buy] = *best;
      record(j, buy.alt, "mes", pay(budgets, supporters[j][buy.alt], buy.rho));
      continue;
    }
    const bool first_stuck = !stuck_once;
    if (first_stuck) {
      stuck_once = true;
      for (std::size_t j = 0; j < horizon; ++j)
        if (!decided[j]) {
          result.trace.premature_round = j;
          break;
        }
    }
    if (completion == Completion::Epsilon) {
      std::optional<Fraction> delta;
      for (std::size_t j = 0; j < horizon; ++j) {
        if (decided[j]) continue;
        auto d = min_top_up(budgets, supporters[j], price);
        if (d && (!delta || *d < *delta)) delta = std::move(d);
      }
      if (!delta) {
        for (std::size_t j = 0; j < horizon; ++j)
          if (!decided[j]) record(j, 0, "epsilon", MesDetail{});
        break;
      }
      for (auto& b : budgets) b += *delta;
      auto again = best_pair();
      if (!again) throw Error(ErrorCode::ConstructionFailed, "top-up did not make any alternative affordable");
      const auto& [j, buy] = *again;
      MesDetail d = pay(budgets, supporters[j][buy.alt], buy.rho);
      d.top_up = *delta;
      d.premature = first_stuck;
      record(j, buy.alt, "epsilon", std::move(d));
      continue;
    }
    // Remaining rounds in round order by the completion rule.
    detail::PhragmenRule phragmen;
    phragmen.reset(n, 0);
    for (std::size_t j = 0; j < horizon; ++j) {
      if (decided[j]) continue;
      if (completion == Completion::None) {
        result.complete = false;
        result.trace.per_round.push_back({j, kUndecided, "none", MesDetail{}});
        continue;
      }
      if (completion == Completion::Utilitarian) {
        record(j, detail::most_approved(supporters[j]), "utilitarian", MesDetail{});
      } else {
        const AlternativeIndex c = *phragmen.decide(instance.rounds[j]);
        record(j, c, "phragmen", phragmen.trace().per_round.back().detail);
      }
    }
    break;
  }
  return result;
}

}  // namespace

RuleResult run_mes(const DecisionInstance& instance, const MesConfig& config) {
  if (config.offline) return run_offline_mes(instance, config.completion);
  detail::MesRule rule(config.completion);
  return run_online(rule, instance);
}

}  // namespace seqvote
