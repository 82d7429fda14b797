#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "tsplan/modelgen.hpp"
#include "tsplan/oracle.hpp"
#include "tsplan/planner_flat.hpp"
#include "tsplan/planner_tree.hpp"
#include "tsplan/ratio.hpp"

using namespace tsplan;
using tsplan::testing::demo_model;
using tsplan::testing::deep_model;
using tsplan::testing::ids_to_sequence;
using tsplan::testing::sequence_to_ids;

namespace {

// Every compound action reachable from the queue, nested ones included.
void collect_compounds(const PlanEntry& entry,
                       std::vector<std::shared_ptr<const CompoundAction>>& out) {
  if (!entry.is_compound()) return;
  out.push_back(entry.compound);
  for (const PlanEntry& item : entry.compound->items)
    collect_compounds(item, out);
}

std::vector<std::shared_ptr<const CompoundAction>> all_compounds(
    const AbsorbedCluster& root) {
  std::vector<std::shared_ptr<const CompoundAction>> out;
  for (const PlanEntry& e : root.entries_by_priority())
    collect_compounds(e, out);
  return out;
}

void collect_atomics(const PlanEntry& entry, std::vector<ActionIndex>& out) {
  if (!entry.is_compound()) {
    out.push_back(entry.action);
    return;
  }
  for (const PlanEntry& item : entry.compound->items)
    collect_atomics(item, out);
}

// Efficiency of the best compound action over the subtree rooted at
// `cluster`: exhaustive scan over nonempty action subsets, charging every
// cluster on the paths from `cluster` to the chosen actions.
double best_enumerated_compound(const TroubleshootingModel& m,
                                ClusterIndex cluster) {
  std::vector<ActionIndex> pool;
  for (ActionIndex a = 0; a < ActionIndex(m.action_count()); ++a)
    if (m.is_ancestor_or_self(cluster, m.action(a).cluster)) pool.push_back(a);
  REQUIRE(!pool.empty());
  REQUIRE(pool.size() <= 16);

  double best_p = 0.0, best_c = 1.0;
  bool seen = false;
  for (std::uint32_t mask = 1; mask < (1u << pool.size()); ++mask) {
    double prob = 0.0, cost = 0.0;
    std::set<ClusterIndex> opened;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      prob += m.action(pool[i]).repair_prob;
      cost += m.action(pool[i]).cost;
      for (ClusterIndex c = m.action(pool[i]).cluster;; c = *m.cluster(c).parent) {
        opened.insert(c);
        if (c == cluster) break;
      }
    }
    for (ClusterIndex c : opened) cost += m.cluster(c).combined_cost();
    if (!seen || ratio_compare(prob, cost, best_p, best_c) > 0) {
      best_p = prob;
      best_c = cost;
      seen = true;
    }
  }
  return best_p / best_c;
}

}  // namespace

TEST_SUITE_BEGIN("planner_tree");

TEST_CASE("absorbing the reference model yields the known aggregates") {
  auto m = demo_model();
  auto root = induce_absorption(m);
  auto entries = root.entries_by_priority();
  REQUIRE(entries.size() == 4);  // two compounds, two root atomics

  std::map<std::string, const PlanEntry*> by_cluster;
  int atomics = 0;
  for (const auto& e : entries) {
    if (e.is_compound())
      by_cluster[m.cluster(e.compound->cluster).id] = &e;
    else
      ++atomics;
  }
  CHECK(atomics == 2);
  REQUIRE(by_cluster.count("B"));
  REQUIRE(by_cluster.count("G"));
  CHECK(by_cluster["B"]->prob == doctest::Approx(0.30).epsilon(1e-12));
  CHECK(by_cluster["B"]->cost == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(by_cluster["B"]->efficiency() == doctest::Approx(0.075).epsilon(1e-12));
  CHECK(by_cluster["G"]->prob == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(by_cluster["G"]->cost == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(by_cluster["G"]->efficiency() == doctest::Approx(0.15).epsilon(1e-12));

  // Priority order: G compound, a1, a2, B compound.
  CHECK(entries[0].is_compound());
  CHECK(m.action(entries[1].action).id == "a1");
  CHECK(m.action(entries[2].action).id == "a2");
  CHECK(entries[3].is_compound());
}

TEST_CASE("single-action child becomes a one-item compound") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0}, {"k", "root", 0.4, 0.6}};
  doc.actions = {{"x", "k", 1.0, 0.2, std::nullopt}};
  auto m = build_model(doc);
  auto root = induce_absorption(m);
  auto entries = root.entries_by_priority();
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].is_compound());
  CHECK(entries[0].prob == doctest::Approx(0.2));
  CHECK(entries[0].cost == doctest::Approx(2.0));
  CHECK(entries[0].efficiency() == doctest::Approx(0.1));
}

TEST_CASE("greedy leftovers stay below their compound's efficiency") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0}, {"k", "root", 0.5, 0.5}};
  doc.actions = {{"strong", "k", 1.0, 0.5, std::nullopt},
                 {"weak", "k", 1.0, 0.01, std::nullopt}};
  auto m = build_model(doc);
  auto root = induce_absorption(m);
  auto entries = root.entries_by_priority();
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].is_compound());
  CHECK(entries[0].efficiency() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(!entries[1].is_compound());
  CHECK(m.action(entries[1].action).id == "weak");
  CHECK(entries[1].efficiency() < entries[0].efficiency());
}

TEST_CASE("chains produce nested compounds") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0},
                  {"k1", "root", 1.0, 0.0},
                  {"k2", "k1", 0.5, 0.5}};
  doc.actions = {{"r", "root", 1.0, 0.1, std::nullopt},
                 {"x1", "k1", 1.0, 0.2, std::nullopt},
                 {"x2", "k2", 1.0, 0.3, std::nullopt}};
  auto m = build_model(doc);
  auto root = induce_absorption(m);
  auto entries = root.entries_by_priority();
  REQUIRE(entries.size() == 2);

  const PlanEntry* outer = nullptr;
  for (const auto& e : entries)
    if (e.is_compound()) outer = &e;
  REQUIRE(outer != nullptr);
  CHECK(m.cluster(outer->compound->cluster).id == "k1");
  bool has_nested = false;
  for (const auto& item : outer->compound->items)
    if (item.is_compound()) {
      has_nested = true;
      CHECK(m.cluster(item.compound->cluster).id == "k2");
      // Nested compound carries its own opening charge.
      CHECK(item.cost == doctest::Approx(2.0));
    }
  CHECK(has_nested);
}

TEST_CASE("actionless intermediate clusters still charge their opening") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0},
                  {"shell", "root", 1.0, 1.0},   // no actions of its own
                  {"inner", "shell", 0.5, 0.5}};
  doc.actions = {{"x", "inner", 1.0, 0.5, std::nullopt},
                 {"r", "root", 1.0, 0.4, std::nullopt}};
  auto m = build_model(doc);

  auto root = induce_absorption(m);
  auto entries = root.entries_by_priority();
  REQUIRE(entries.size() == 2);
  const PlanEntry* shell = nullptr;
  for (const auto& e : entries)
    if (e.is_compound()) shell = &e;
  REQUIRE(shell != nullptr);
  CHECK(m.cluster(shell->compound->cluster).id == "shell");
  CHECK(shell->cost == doctest::Approx(4.0));  // shell 2 + (inner 1 + x 1)
  CHECK(shell->prob == doctest::Approx(0.5));

  auto plan = plan_tree(m);
  auto oracle = brute_force_optimal(m);
  CHECK(plan.result.ecr == doctest::Approx(oracle.best_ecr).epsilon(1e-9));
}

TEST_CASE("absorb rejects non-children") {
  auto m = deep_model();
  auto root_base = base_cluster(m, m.root());
  std::vector<AbsorbedCluster> wrong;
  wrong.push_back(base_cluster(m, m.cluster_index("N")));  // grandchild
  CHECK_THROWS_AS(absorb(m, std::move(root_base), std::move(wrong)),
                  ValidationError);
}

TEST_CASE("empty subtrees are dropped during absorption") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0},
                  {"dead", "root", 2.0, 2.0},
                  {"deader", "dead", 1.0, 1.0}};
  doc.actions = {{"x", "root", 1.0, 0.5, std::nullopt}};
  auto m = build_model(doc);
  auto root = induce_absorption(m);
  auto entries = root.entries_by_priority();
  REQUIRE(entries.size() == 1);
  CHECK(!entries[0].is_compound());

  auto plan = plan_tree(m);
  CHECK(plan.result.opening_indices.empty());
}

TEST_CASE("tree plan of the reference model matches the flat plan") {
  auto m = demo_model();
  auto tree = plan_tree(m);
  auto flat = plan_flat(m);
  CHECK(tree.result.sequence == flat.sequence);
  CHECK(tree.result.ecr == flat.ecr);  // identical code path downstream
  CHECK(tree.result.ecr == doctest::Approx(4.71).epsilon(1e-12));
}

TEST_CASE("depth-1 agreement holds on random models") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorParams params;
    params.actions = 2 + int(seed % 8);
    params.clusters = int(seed % 4);
    params.max_depth = 1;
    params.seed = 5000 + seed;
    auto m = random_model(params);
    auto tree = plan_tree(m);
    auto flat = plan_flat(m);
    CHECK(tree.result.sequence == flat.sequence);
    CHECK(tree.result.ecr == flat.ecr);
  }
}

TEST_CASE("root-only models reduce to the ratio rule") {
  ModelDocument doc;
  doc.clusters = {{"root", std::nullopt, 0.0, 0.0}};
  doc.actions = {{"x", "root", 2.0, 0.4, std::nullopt},
                 {"y", "root", 1.0, 0.3, std::nullopt},
                 {"z", "root", 4.0, 0.1, std::nullopt}};
  auto m = build_model(doc);
  std::vector<ActionIndex> all{0, 1, 2};
  CHECK(plan_tree(m).result.sequence == p_over_c(m, all));
}

TEST_CASE("deep reference model plans optimally") {
  auto m = deep_model();
  auto plan = plan_tree(m);
  auto oracle = brute_force_optimal(m);
  CHECK(plan.result.ecr == doctest::Approx(oracle.best_ecr).epsilon(1e-9));
}

TEST_CASE("tree plans match the exhaustive oracle on random models") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorParams params;
    params.actions = 2 + int(seed % 6);
    params.clusters = 1 + int(seed % 4);
    params.max_depth = 1 + int(seed % 3);
    params.seed = 6000 + seed;
    auto m = random_model(params);
    auto plan = plan_tree(m);
    auto oracle = brute_force_optimal(m);
    CHECK(plan.result.ecr == doctest::Approx(oracle.best_ecr).epsilon(1e-9));
  }
}

TEST_CASE("compound aggregates and orderings satisfy their invariants") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorParams params;
    params.actions = 3 + int(seed % 8);
    params.clusters = 1 + int(seed % 5);
    params.max_depth = 1 + int(seed % 3);
    params.seed = 7000 + seed;
    auto m = random_model(params);
    auto root = induce_absorption(m);

    for (const auto& compound : all_compounds(root)) {
      REQUIRE(!compound->items.empty());

      // Cached aggregates equal the re-summed flattened contents.
      double prob = 0.0, cost = m.cluster(compound->cluster).combined_cost();
      for (const auto& item : compound->items) {
        prob += item.prob;
        cost += item.cost;
      }
      CHECK(compound->total_prob == doctest::Approx(prob).epsilon(1e-12));
      CHECK(compound->total_cost == doctest::Approx(cost).epsilon(1e-12));

      // Items were accumulated in descending efficiency.
      for (std::size_t i = 0; i + 1 < compound->items.size(); ++i)
        CHECK(compound->items[i].efficiency() >=
              compound->items[i + 1].efficiency() - 1e-12);

      // Ratio-of-sums bound: the compound can never beat its best item
      // (the opening charge enters as probability-free cost).
      const double ef = compound->total_prob / compound->total_cost;
      double max_item = 0.0;
      for (const auto& item : compound->items)
        max_item = std::max(max_item, item.efficiency());
      CHECK(ef <= max_item + 1e-12);

      // Every atomic action inside is at least as efficient as the
      // compound containing it.
      std::vector<ActionIndex> atoms;
      for (const auto& item : compound->items) collect_atomics(item, atoms);
      for (ActionIndex a : atoms) {
        const Action& act = m.action(a);
        CHECK(act.repair_prob / act.cost >= ef - 1e-12);
      }

      // First unfolded action belongs to the compound's subtree.
      CHECK(m.is_ancestor_or_self(compound->cluster,
                                  m.action(atoms.front()).cluster));
    }
  }
}

TEST_CASE("built compounds dominate every enumerable compound") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GeneratorParams params;
    params.actions = 3 + int(seed % 6);  // <= 8 actions keeps 2^n small
    params.clusters = 1 + int(seed % 4);
    params.max_depth = 1 + int(seed % 3);
    params.seed = 8000 + seed;
    auto m = random_model(params);
    auto root = induce_absorption(m);

    for (const auto& compound : all_compounds(root)) {
      const double built = compound->total_prob / compound->total_cost;
      const double best = best_enumerated_compound(m, compound->cluster);
      CHECK(built == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("ratio of sums stays between the extreme ratios") {
  std::mt19937_64 rng(42);
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  for (int round = 0; round < 500; ++round) {
    const int n = 1 + int(rng() % 6);
    double sum_p = 0.0, sum_c = 0.0;
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < n; ++i) {
      const double p = unit();
      const double c = 0.1 + unit();
      sum_p += p;
      sum_c += c;
      lo = std::min(lo, p / c);
      hi = std::max(hi, p / c);
    }
    const double mediant = sum_p / sum_c;
    CHECK(mediant >= lo - 1e-12);
    CHECK(mediant <= hi + 1e-12);
  }
}

TEST_CASE("emissions appear in non-increasing efficiency order") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GeneratorParams params;
    params.actions = 4 + int(seed % 8);
    params.clusters = 1 + int(seed % 5);
    params.max_depth = 1 + int(seed % 3);
    params.seed = 9000 + seed;
    auto m = random_model(params);
    auto plan = plan_tree(m);

    for (std::size_t i = 0; i + 1 < plan.emissions.size(); ++i)
      CHECK(plan.emissions[i].entry.efficiency() >=
            plan.emissions[i + 1].entry.efficiency() - 1e-12);

    // Spans tile the sequence.
    int next = 0;
    for (const auto& e : plan.emissions) {
      CHECK(e.first == next);
      CHECK(e.last >= e.first);
      next = e.last + 1;
    }
    CHECK(next == int(plan.result.sequence.size()));

    // Each compound's unfolded actions occupy its span contiguously.
    for (const auto& e : plan.emissions) {
      std::vector<ActionIndex> atoms;
      unfold(e.entry, atoms);
      REQUIRE(int(atoms.size()) == e.last - e.first + 1);
      for (std::size_t k = 0; k < atoms.size(); ++k)
        CHECK(plan.result.sequence[e.first + int(k)] == atoms[k]);
    }
  }
}

TEST_SUITE_END();
