#include <doctest.h>

#include "expect.hpp"
#include "seqvote/gen.hpp"

using namespace seqvote;

namespace {

bool same(const DecisionInstance& a, const DecisionInstance& b) {
  if (a.voters != b.voters || a.horizon() != b.horizon()) return false;
  for (std::size_t j = 0; j < a.horizon(); ++j)
    if (a.rounds[j].alternatives != b.rounds[j].alternatives || a.rounds[j].approvals != b.rounds[j].approvals)
      return false;
  return true;
}

}  // namespace

TEST_SUITE("streams") {
  TEST_CASE("uniform draws stay in range and streams are reproducible") {
    Stream a(5), b(5);
    for (int i = 0; i < 1000; ++i) {
      const double x = a.uniform();
      CHECK(x >= 0.0);
      CHECK(x < 1.0);
      CHECK(x == b.uniform());
      CHECK(a.below(7) < 7);
      b.below(7);
    }
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  }

  TEST_CASE("normal draws have the requested moments") {
    Stream s(11);
    double sum = 0, sq = 0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
      const double x = s.normal(1.0, 2.0);
      sum += x;
      sq += x * x;
    }
    const double mean = sum / N;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.05));
    CHECK(sq / N - mean * mean == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_SUITE("euclidean") {
  TEST_CASE("every approval set is non-empty and runs repeat") {
    for (Distribution d : {Distribution::Restricted, Distribution::ManyGroups, Distribution::Unbalanced,
                           Distribution::BalancedNearby}) {
      EuclideanConfig c{d, 20, 10, 8, 1.5, std::nullopt, 3};
      const auto inst = gen_euclidean(c);
      CHECK_NOTHROW(validate(inst));
      for (const Round& r : inst.rounds)
        for (const auto& a : r.approvals) CHECK_FALSE(a.empty());
      CHECK(same(inst, gen_euclidean(c)));
      c.seed = 4;
      CHECK_FALSE(same(inst, gen_euclidean(c)));
    }
  }

  TEST_CASE("factor one approves only the closest alternative") {
    EuclideanConfig c{Distribution::ManyGroups, 15, 20, 6, 1.0, std::nullopt, 9};
    const auto inst = gen_euclidean(c);
    CHECK(mean_approval_size(inst) == doctest::Approx(1.0));
  }

  TEST_CASE("restricted default setting has about 2.12 approvals per voter") {
    double total = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s)
      total += mean_approval_size(gen_euclidean({Distribution::Restricted, 20, 50, 20, 1.5, std::nullopt,
                                                 static_cast<std::uint64_t>(s)}));
    CHECK(std::abs(total / seeds - 2.12) <= 0.5);
  }

  TEST_CASE("sigma defaults and names") {
    CHECK(default_sigma(Distribution::Unbalanced) == 0.1);
    CHECK(default_sigma(Distribution::Restricted) == 0.2);
    CHECK(EuclideanConfig{Distribution::Unbalanced}.effective_sigma() == 0.1);
    CHECK(parse_distribution("balanced-nearby") == Distribution::BalancedNearby);
    CHECK(to_string(Distribution::ManyGroups) == "many-groups");
    CHECK_ERROR_CODE(parse_distribution("circle"), ErrorCode::UnknownName);
  }

  TEST_CASE("bad configs") {
    CHECK_ERROR_CODE(gen_euclidean({Distribution::Restricted, 5, 5, 5, 0.5}), ErrorCode::BadConfig);
    CHECK_ERROR_CODE(gen_euclidean({Distribution::Restricted, 0, 5, 5, 1.5}), ErrorCode::BadConfig);
    CHECK_ERROR_CODE(gen_euclidean({Distribution::Restricted, 5, 5, 5, 1.5, -1.0}), ErrorCode::BadConfig);
    CHECK_ERROR_CODE(gen_euclidean({Distribution::Restricted, 5, 5, 5, 1.5, 1e6}), ErrorCode::BadConfig);
  }
}

TEST_SUITE("random") {
  TEST_CASE("certain approval gives full sets") {
    const auto inst = gen_random(4, 3, 5, 1.0, 1);
    for (const Round& r : inst.rounds)
      for (const auto& a : r.approvals) CHECK(a.size() == 5);
  }

  TEST_CASE("deterministic and valid") {
    const auto a = gen_random(6, 4, 3, 0.5, 77);
    CHECK_NOTHROW(validate(a));
    CHECK(same(a, gen_random(6, 4, 3, 0.5, 77)));
    const auto b = gen_random(6, 4, 3, 0.1, 77, true);
    for (const Round& r : b.rounds)
      for (const auto& s : r.approvals) CHECK(s.size() >= 1);
  }

  TEST_CASE("bad probability") {
    CHECK_ERROR_CODE(gen_random(2, 2, 2, 0.0, 1), ErrorCode::BadConfig);
    CHECK_ERROR_CODE(gen_random(2, 2, 2, 1.5, 1), ErrorCode::BadConfig);
  }
}

TEST_SUITE("counterexample") {
  TEST_CASE("shape for epsilon 1/2, k 2, T 3") {
    const CounterexampleConfig c{Fraction(1, 2), 2, 3};
    const auto shape = counterexample_shape(c);
    CHECK(shape.n == 16);
    CHECK(shape.s == 4);
    CHECK(shape.subset_alternatives == 1820);
    const auto inst = gen_counterexample(c);
    CHECK(inst.rounds[0].alternatives.size() == 1820);
    CHECK(inst.rounds[1].alternatives.size() == 1820);
    CHECK(inst.rounds[2].alternatives.size() == 16);
    for (VoterIndex v = 0; v < 16; ++v) CHECK(inst.rounds[0].approvals[v].size() == 455);
    for (const auto& s : inst.rounds[0].supporters()) CHECK(s.size() == 4);
  }

  TEST_CASE("satisfied voters never exceed k s + T - k") {
    const CounterexampleConfig c{Fraction(1, 2), 2, 3};
    const auto inst = gen_counterexample(c);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Stream rng(seed);
      DecisionSequence d;
      for (const Round& r : inst.rounds) d.decisions.push_back(rng.below(r.alternatives.size()));
      const auto u = utility(inst, d);
      CHECK(std::count_if(u.begin(), u.end(), [](std::size_t x) { return x > 0; }) <= 9);
    }
  }

  TEST_CASE("hypothesis and guard") {
    CHECK_ERROR_CODE(counterexample_shape({Fraction(1, 2), 1, 3}), ErrorCode::BadConfig);
    CHECK_ERROR_CODE(counterexample_shape({Fraction(1, 2), 2, 2}), ErrorCode::BadConfig);
    CHECK_ERROR_CODE(counterexample_shape({Fraction(0), 2, 3}), ErrorCode::BadConfig);
    CHECK_ERROR_CODE(counterexample_shape({Fraction(1, 2), 2, 3, 10}), ErrorCode::BadConfig);
    CHECK_ERROR_CODE(counterexample_shape({Fraction(1, 2), 2, 3, std::nullopt, 1000}), ErrorCode::GuardExceeded);
    CHECK(counterexample_shape({Fraction(1, 2), 2, 3, 18}).s == 5);
  }
}

TEST_SUITE("adversary") {
  TEST_CASE("Phragmen and MES both lose") {
    for (const char* name : {"phragmen", "mes"}) {
      CAPTURE(name);
      auto rule = make_online_rule(name);
      const auto out = adversary_online(*rule, {Fraction(1, 2), 2, 3});
      CHECK_NOTHROW(validate(out.instance, out.sequence));
      CHECK(out.instance.rounds.back().alternatives.size() == 6);
      CHECK_FALSE(out.report.satisfied);
      CHECK(out.witness_report.satisfied);
      CHECK(out.instance.rounds.back().alternatives[out.witness.decisions.back()] == "common");
    }
  }
}
