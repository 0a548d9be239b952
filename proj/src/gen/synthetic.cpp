#include <algorithm>
#include <array>
#include <cmath>

#include "seqvote/error.hpp"
#include "seqvote/gen.hpp"

namespace seqvote {

namespace {

constexpr std::uint64_t kVoterTag = 1;
constexpr std::uint64_t kRoundTag = 2;
constexpr std::uint64_t kRandomTag = 3;
constexpr int kResampleCap = 10'000;

struct Cluster {
  double share;
  double x;
  double y;
};

std::vector<Cluster> clusters(Distribution d) {
  switch (d) {
    case Distribution::Restricted: return {{1.0 / 3, -0.5, -0.5}, {2.0 / 3, 0.5, 0.5}};
    case Distribution::ManyGroups: return {{0.2, -0.5, -0.5}, {0.2, -0.5, 0.5}, {0.2, 0.5, -0.5}, {0.4, 0.5, 0.5}};
    case Distribution::Unbalanced: return {{0.2, -0.5, -0.5}, {0.8, 0.5, 0.5}};
    case Distribution::BalancedNearby: return {{0.6, -0.25, 0.0}, {0.4, 0.25, 0.0}};
  }
  return {};
}

/// Largest-remainder apportionment of n voters to the cluster shares.
std::vector<std::size_t> group_sizes(const std::vector<Cluster>& cs, std::size_t n) {
  std::vector<std::size_t> sizes(cs.size());
  std::vector<std::pair<double, std::size_t>> rest;
  std::size_t given = 0;
  for (std::size_t g = 0; g < cs.size(); ++g) {
    const double exact = cs[g].share * static_cast<double>(n);
    sizes[g] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    given += sizes[g];
    rest.emplace_back(exact - static_cast<double>(sizes[g]), g);
  }
  std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; given < n; ++i, ++given) ++sizes[rest[i % rest.size()].second];
  return sizes;
}

}  // namespace

Distribution parse_distribution(std::string_view name) {
  if (name == "restricted") return Distribution::Restricted;
  if (name == "many-groups") return Distribution::ManyGroups;
  if (name == "unbalanced") return Distribution::Unbalanced;
  if (name == "balanced-nearby") return Distribution::BalancedNearby;
  throw Error(ErrorCode::UnknownName, "unknown distribution '" + std::string(name) + "'");
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::Restricted: return "restricted";
    case Distribution::ManyGroups: return "many-groups";
    case Distribution::Unbalanced: return "unbalanced";
    case Distribution::BalancedNearby: return "balanced-nearby";
  }
  return "?";
}

double default_sigma(Distribution d) { return d == Distribution::Unbalanced ? 0.1 : 0.2; }

DecisionInstance gen_euclidean(const EuclideanConfig& config) {
  if (config.n == 0 || config.T == 0 || config.m == 0)
    throw Error(ErrorCode::BadConfig, "n, T and m must be positive");
  if (!(config.f >= 1.0)) throw Error(ErrorCode::BadConfig, "approval factor f must be at least 1");
  const double sigma = config.effective_sigma();
  if (!(sigma > 0.0)) throw Error(ErrorCode::BadConfig, "sigma must be positive");

  const auto cs = clusters(config.distribution);
  const auto sizes = group_sizes(cs, config.n);
  std::vector<std::array<double, 2>> voters;
  for (std::size_t g = 0; g < cs.size(); ++g)
    for (std::size_t i = 0; i < sizes[g]; ++i) {
      Stream rng(derive_seed(config.seed, kVoterTag, voters.size()));
      double x = rng.normal(cs[g].x, sigma);
      double y = rng.normal(cs[g].y, sigma);
      if (config.distribution == Distribution::Restricted) {
        int tries = 0;
        while (std::abs(x) > 1.0 || std::abs(y) > 1.0) {
          if (++tries > kResampleCap)
            throw Error(ErrorCode::BadConfig, "voter resampling did not land in the square");
          x = rng.normal(cs[g].x, sigma);
          y = rng.normal(cs[g].y, sigma);
        }
      }
      voters.push_back({x, y});
    }

  const double f2 = config.f * config.f;
  DecisionInstance inst;
  inst.voters = config.n;
  for (std::size_t j = 0; j < config.T; ++j) {
    Stream rng(derive_seed(config.seed, kRoundTag, j));
    std::vector<std::array<double, 2>> alts(config.m);
    Round round;
    for (std::size_t c = 0; c < config.m; ++c) {
      alts[c] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      round.alternatives.push_back("c" + std::to_string(c));
    }
    round.approvals.resize(config.n);
    std::vector<double> d2(config.m);
    for (std::size_t v = 0; v < config.n; ++v) {
      for (std::size_t c = 0; c < config.m; ++c) {
        const double dx = voters[v][0] - alts[c][0];
        const double dy = voters[v][1] - alts[c][1];
        d2[c] = dx * dx + dy * dy;
      }
      const double closest = *std::min_element(d2.begin(), d2.end());
      for (std::size_t c = 0; c < config.m; ++c)
        if (d2[c] <= f2 * closest) round.approvals[v].push_back(c);
    }
    inst.rounds.push_back(std::move(round));
  }
  return inst;
}

DecisionInstance gen_random(std::size_t n, std::size_t T, std::size_t m, double p_approve, std::uint64_t seed,
                            bool nonempty) {
  if (n == 0 || T == 0 || m == 0) throw Error(ErrorCode::BadConfig, "n, T and m must be positive");
  if (!(p_approve > 0.0 && p_approve <= 1.0)) throw Error(ErrorCode::BadConfig, "p_approve must lie in (0, 1]");
  DecisionInstance inst;
  inst.voters = n;
  for (std::size_t j = 0; j < T; ++j) {
    Stream rng(derive_seed(seed, kRandomTag, j));
    Round round;
    for (std::size_t c = 0; c < m; ++c) round.alternatives.push_back("c" + std::to_string(c));
    round.approvals.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t c = 0; c < m; ++c)
        if (p_approve >= 1.0 || rng.uniform() < p_approve) round.approvals[v].push_back(c);
      if (nonempty && round.approvals[v].empty()) round.approvals[v].push_back(rng.below(m));
    }
    inst.rounds.push_back(std::move(round));
  }
  return inst;
}

double mean_approval_size(const DecisionInstance& instance) {
  std::size_t total = 0;
  for (const Round& r : instance.rounds)
    for (const auto& a : r.approvals) total += a.size();
  const std::size_t cells = instance.voters * instance.horizon();
  return cells == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(cells);
}

}  // namespace seqvote
