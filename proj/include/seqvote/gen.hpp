#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "seqvote/axioms.hpp"
#include "seqvote/fraction.hpp"
#include "seqvote/instance.hpp"
#include "seqvote/rules.hpp"

namespace seqvote {

// ---------------------------------------------------------------------------
// Random streams
// ---------------------------------------------------------------------------

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// Seed of substream `index` of kind `tag` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0);

/// mt19937_64 with portable uniform and normal draws (no reliance on std distributions).
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  double normal(double mean, double sd);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

enum class Distribution { Restricted, ManyGroups, Unbalanced, BalancedNearby };

Distribution parse_distribution(std::string_view name);
std::string_view to_string(Distribution d);
/// Standard deviation used when none is given.
double default_sigma(Distribution d);

struct EuclideanConfig {
  Distribution distribution = Distribution::Restricted;
  std::size_t n = 20;
  std::size_t T = 50;
  std::size_t m = 20;
  double f = 1.5;
  std::optional<double> sigma;
  std::uint64_t seed = 0;

  double effective_sigma() const { return sigma.value_or(default_sigma(distribution)); }
};

DecisionInstance gen_euclidean(const EuclideanConfig& config);

/// Independent approvals with probability `p_approve`. With `nonempty`, a voter left with no
/// approval in a round approves one alternative drawn uniformly.
DecisionInstance gen_random(std::size_t n, std::size_t T, std::size_t m, double p_approve, std::uint64_t seed,
                            bool nonempty = false);

struct CounterexampleConfig {
  Fraction epsilon = Fraction(1, 2);
  std::size_t k = 2;
  std::size_t T = 3;
  std::optional<std::size_t> n;
  std::uint64_t guard = 1'000'000;
};

struct CounterexampleShape {
  std::size_t n;
  std::size_t s;
  std::uint64_t subset_alternatives;  // C(n, s)
};

/// Validates the config and derives n and s.
CounterexampleShape counterexample_shape(const CounterexampleConfig& config);

DecisionInstance gen_counterexample(const CounterexampleConfig& config);

struct AdversaryOutcome {
  DecisionInstance instance;
  DecisionSequence sequence;  // the rule's decisions on the adapted instance
  AxiomReport report;         // epsilon-Stronger PJR on `sequence`
  DecisionSequence witness;   // a sequence built for the adapted instance
  AxiomReport witness_report; // epsilon-Stronger PJR on `witness`
};

/// Runs the adaptive construction against `rule`. The rule must accept rounds one at a time.
AdversaryOutcome adversary_online(OnlineRule& rule, const CounterexampleConfig& config);

/// Mean approval set size over all voters and rounds.
double mean_approval_size(const DecisionInstance& instance);

}  // namespace seqvote
