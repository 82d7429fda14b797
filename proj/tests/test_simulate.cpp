#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "tsplan/modelgen.hpp"
#include "tsplan/simulate.hpp"

using namespace tsplan;
using tsplan::testing::demo_model;
using tsplan::testing::ids_to_sequence;

TEST_SUITE_BEGIN("simulate");

TEST_CASE("a certain first action solves at its conditional cost") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0}, {"k", "root", 1.0, 1.0}};
  doc.actions = {{"sure", "k", 2.0, 1.0, std::nullopt}};
  auto m = build_model(doc);
  auto outcome = simulate_outcome(m, std::vector<ActionIndex>{0}, 0.999);
  CHECK(outcome.solved);
  CHECK(outcome.cost == doctest::Approx(4.0));  // 2 + opening 2
}

TEST_CASE("hopeless sequences pay the full sunk cost") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0}, {"k", "root", 0.5, 0.5}};
  doc.actions = {{"x", "root", 1.0, 0.0, std::nullopt},
                 {"y", "k", 2.0, 0.0, std::nullopt}};
  auto m = build_model(doc);
  auto seq = ids_to_sequence(m, {"x", "y"});
  auto outcome = simulate_outcome(m, seq, 0.0);
  CHECK(!outcome.solved);
  CHECK(outcome.cost == doctest::Approx(4.0));  // 1 + (2 + 1)
}

TEST_CASE("the drawn step determines the walked cost") {
  auto m = demo_model();
  auto s = ids_to_sequence(m, {"g1", "g2", "a1", "a2", "b1", "b2"});
  // Outcome mass: g1 owns [0, .25), g2 [.25, .45), ...; a draw in g2's band
  // walks g1 (cost 2, opening G) and g2 (cost 1).
  auto outcome = simulate_outcome(m, s, 0.30);
  CHECK(outcome.solved);
  CHECK(outcome.cost == doctest::Approx(3.0));

  SUBCASE("a draw beyond the total mass walks everything") {
    auto all = simulate_outcome(m, s, 0.9999999999999);
    // Total probability mass is 1.0; only a draw at the extreme top can
    // fall through, and this model solves for any u < 1.
    CHECK(all.solved);
  }
}

TEST_CASE("trial costs stay within the analytic bounds") {
  auto m = demo_model();
  auto s = ids_to_sequence(m, {"g1", "g2", "a1", "a2", "b1", "b2"});
  auto r = evaluate_ecr(m, s);
  double sunk = 0.0;
  for (double c : r.step_costs) sunk += c;
  SplitMix64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    auto outcome = simulate_once(m, s, rng);
    CHECK(outcome.cost >= r.step_costs[0]);
    CHECK(outcome.cost <= sunk + 1e-12);
  }
}

TEST_CASE("estimates converge to the analytic expectation") {
  auto m = demo_model();
  auto s = ids_to_sequence(m, {"g1", "g2", "a1", "a2", "b1", "b2"});
  auto summary = estimate_ecr(m, s, 200000, 2024);
  CHECK(summary.trials == 200000);
  CHECK(summary.std_error > 0.0);
  CHECK(std::abs(summary.mean_cost - 4.71) <= 4.0 * summary.std_error);
  CHECK(summary.solve_rate == doctest::Approx(1.0).epsilon(1e-3));

  auto s2 = ids_to_sequence(m, {"a1", "g1", "a2", "g2", "b1", "b2"});
  auto alt = estimate_ecr(m, s2, 200000, 2024);
  CHECK(std::abs(alt.mean_cost - 4.83) <= 4.0 * alt.std_error);
}

TEST_CASE("degenerate single-action estimates are exact") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0}};
  doc.actions = {{"only", "root", 5.0, 0.3, std::nullopt}};
  auto m = build_model(doc);
  auto summary = estimate_ecr(m, std::vector<ActionIndex>{0}, 10000, 7);
  CHECK(summary.mean_cost == 5.0);
  CHECK(summary.std_error == 0.0);
  CHECK(summary.solve_rate == doctest::Approx(0.3).epsilon(0.1));
}

TEST_CASE("fixed seeds reproduce bit-identical summaries") {
  auto m = demo_model();
  auto s = ids_to_sequence(m, {"g1", "g2", "a1", "a2", "b1", "b2"});
  auto first = estimate_ecr(m, s, 5000, 99);
  auto second = estimate_ecr(m, s, 5000, 99);
  CHECK(first.mean_cost == second.mean_cost);
  CHECK(first.std_error == second.std_error);
  CHECK(first.solve_rate == second.solve_rate);
  auto other = estimate_ecr(m, s, 5000, 100);
  CHECK(first.mean_cost != other.mean_cost);
}

TEST_CASE("estimates are unbiased across seeds") {
  GeneratorParams params;
  params.actions = 6;
  params.clusters = 2;
  params.max_depth = 2;
  params.seed = 31;
  auto m = random_model(params);
  std::vector<ActionIndex> seq(m.action_count());
  for (ActionIndex a = 0; a < ActionIndex(m.action_count()); ++a) seq[a] = a;
  const double analytic = ecr_value(m, seq);

  int within_band = 0;
  const int runs = 100;
  for (int seed = 0; seed < runs; ++seed) {
    auto summary = estimate_ecr(m, seq, 10000, std::uint64_t(seed));
    if (std::abs(summary.mean_cost - analytic) <= 4.0 * summary.std_error)
      ++within_band;
  }
  CHECK(within_band >= 99);

  SUBCASE("zero trials are rejected") {
    CHECK_THROWS_AS(estimate_ecr(m, seq, 0, 1), ValidationError);
  }
}

TEST_SUITE_END();
