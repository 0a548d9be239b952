#include "instances.hpp"

#include "seqvote/gen.hpp"

namespace seqvote::testing {

Round round_of(const std::string& labels, const std::vector<std::string>& sets) {
  Round r;
  for (char c : labels) r.alternatives.emplace_back(1, c);
  for (const std::string& s : sets) {
    ApprovalSet a;
    for (char c : s) a.push_back(labels.find(c));
    r.approvals.push_back(a);
  }
  return r;
}

DecisionInstance shared_pair() {
  DecisionInstance d{4, {}};
  for (int j = 0; j < 8; ++j)
    d.rounds.push_back(j < 6 ? round_of("abcd", {"ab", "ac", "d", "d"}) : round_of("abcef", {"ab", "ac", "e", "f"}));
  return d;
}

DecisionInstance three_way() {
  DecisionInstance d{10, {}};
  for (int j = 0; j < 10; ++j)
    d.rounds.push_back(round_of("abc", {"ab", "ab", "ab", "ac", "ac", "ac", "ac", "bc", "bc", "b"}));
  return d;
}

DecisionInstance minority_tail() {
  DecisionInstance d{8, {}};
  for (int j = 0; j < 16; ++j)
    d.rounds.push_back(j < 10 ? round_of("ab", {"a", "a", "a", "b", "b", "b", "b", "b"})
                              : round_of("bcde", {"c", "d", "e", "b", "b", "b", "b", "b"}));
  return d;
}

DecisionInstance early_stop() {
  DecisionInstance d{3, {}};
  for (int j = 0; j < 6; ++j) d.rounds.push_back(j < 3 ? round_of("ab", {"a", "b", "b"}) : round_of("b", {"", "b", "b"}));
  return d;
}

DecisionInstance pareto_gap() {
  DecisionInstance d{7, {}};
  for (int j = 0; j < 7; ++j)
    d.rounds.push_back(j < 2 ? round_of("ab", {"a", "a", "b", "b", "b", "b", "b"})
                             : round_of("bcd", {"c", "d", "b", "b", "b", "b", "b"}));
  return d;
}

DecisionSequence seq(const DecisionInstance& instance, const std::string& labels) {
  std::vector<std::string> names;
  for (char c : labels) names.emplace_back(1, c);
  return sequence_from_labels(instance, names);
}

DecisionInstance random_small(std::uint64_t seed, std::size_t max_n, std::size_t max_T, std::size_t max_m,
                              bool nonempty) {
  Stream rng(derive_seed(seed, 0xABCD));
  const std::size_t n = 1 + rng.below(max_n);
  const std::size_t T = 1 + rng.below(max_T);
  const std::size_t m = 1 + rng.below(max_m);
  const double p = rng.uniform(0.2, 0.8);
  return gen_random(n, T, m, p, rng.next(), nonempty);
}

DecisionSequence random_sequence(const DecisionInstance& instance, std::uint64_t seed) {
  Stream rng(derive_seed(seed, 0xD5));
  DecisionSequence d;
  for (const Round& r : instance.rounds) d.decisions.push_back(rng.below(r.alternatives.size()));
  return d;
}

}  // namespace seqvote::testing
