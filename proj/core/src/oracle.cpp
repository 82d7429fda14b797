#include "tsplan/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "tsplan/ratio.hpp"

namespace tsplan {

namespace {

constexpr double kTieTolerance = 1e-12;

std::vector<ActionIndex> all_actions_by_id(const TroubleshootingModel& model) {
  std::vector<ActionIndex> order(model.action_count());
  for (ActionIndex a = 0; a < ActionIndex(model.action_count()); ++a)
    order[a] = a;
  std::sort(order.begin(), order.end(), [&](ActionIndex x, ActionIndex y) {
    return model.action_rank(x) < model.action_rank(y);
  });
  return order;
}

}  // namespace

OracleReport brute_force_optimal(const TroubleshootingModel& model,
                                 int limit) {
  const int n = int(model.action_count());
  if (n > limit)
    throw InfeasibleError(
        "brute_force_optimal: " + std::to_string(n) + " actions exceed the " +
        std::to_string(limit) +
        "-action limit (" + std::to_string(n) +
        "! permutations); use the planners and spot-check smaller models");

  auto rank_less = [&](ActionIndex x, ActionIndex y) {
    return model.action_rank(x) < model.action_rank(y);
  };

  OracleReport report;
  EcrScratch scratch;

  // Pass 1: the exact float minimum.
  std::vector<ActionIndex> perm = all_actions_by_id(model);
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, ecr_value(model, perm, scratch));
    ++report.sequences_examined;
  } while (std::next_permutation(perm.begin(), perm.end(), rank_less));

  // Pass 2: tie count within tolerance and the lexicographically smallest
  // permutation attaining the minimum exactly.
  perm = all_actions_by_id(model);
  do {
    const double ecr = ecr_value(model, perm, scratch);
    if (std::abs(ecr - best) <= kTieTolerance) ++report.ties;
    if (ecr == best && report.best_sequence.empty()) report.best_sequence = perm;
  } while (std::next_permutation(perm.begin(), perm.end(), rank_less));

  report.best_ecr = best;
  return report;
}

std::vector<AdjacencyViolation> check_adjacency(
    const TroubleshootingModel& model, std::span<const ActionIndex> sequence,
    double tolerance) {
  std::vector<AdjacencyViolation> violations;
  if (sequence.size() < 2) return violations;
  const PlanResult eval = evaluate_ecr(model, sequence);

  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    const ActionIndex x = sequence[i];
    const ActionIndex y = sequence[i + 1];
    // If step i opened an ancestor of y's cluster, performing y first would
    // shift that opening charge onto y; the exchange argument gives no
    // inequality for such pairs.
    bool released = false;
    for (ClusterIndex c : eval.opened_at[i])
      if (model.is_ancestor_or_self(c, model.action(y).cluster)) {
        released = true;
        break;
      }
    if (released) continue;

    const double ef_x = model.action(x).repair_prob / eval.step_costs[i];
    const double ef_y = model.action(y).repair_prob / eval.step_costs[i + 1];
    if (ef_y - ef_x > tolerance) {
      const bool x_opens = !eval.opened_at[i].empty();
      const bool y_opens = !eval.opened_at[i + 1].empty();
      AdjacencyCase kind = x_opens
                               ? (y_opens ? AdjacencyCase::OpenOpen
                                          : AdjacencyCase::OpenFree)
                               : (y_opens ? AdjacencyCase::FreeOpen
                                          : AdjacencyCase::FreeFree);
      violations.push_back({int(i), kind, x, y, ef_x, ef_y});
    }
  }
  return violations;
}

std::vector<std::pair<int, int>> regular_partition(
    const TroubleshootingModel& model, std::span<const ActionIndex> sequence,
    PartitionMode mode) {
  auto group_of = [&](ActionIndex a) -> ClusterIndex {
    ClusterIndex c = model.action(a).cluster;
    if (mode == PartitionMode::Cluster) return c;
    // Top-level subtree: the depth-1 ancestor, or the root itself.
    while (model.cluster_depth(c) > 1) c = *model.cluster(c).parent;
    return c;
  };

  std::vector<std::pair<int, int>> runs;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (!runs.empty() &&
        group_of(sequence[i]) == group_of(sequence[runs.back().first]))
      runs.back().second = int(i);
    else
      runs.emplace_back(int(i), int(i));
  }
  return runs;
}

std::vector<BlockOrderViolation> check_block_efficiency_order(
    const TroubleshootingModel& model, std::span<const ActionIndex> sequence,
    PartitionMode mode, double tolerance) {
  std::vector<BlockOrderViolation> violations;
  const auto runs = regular_partition(model, sequence, mode);
  if (runs.size() < 2) return violations;
  const PlanResult eval = evaluate_ecr(model, sequence);

  auto block_efficiency = [&](std::pair<int, int> run) {
    double prob = 0.0, cost = 0.0;
    for (int i = run.first; i <= run.second; ++i) {
      prob += model.action(sequence[i]).repair_prob;
      cost += eval.step_costs[i];
    }
    return prob / cost;
  };

  double prev = block_efficiency(runs[0]);
  for (std::size_t b = 1; b < runs.size(); ++b) {
    const double cur = block_efficiency(runs[b]);
    if (cur - prev > tolerance)
      violations.push_back({runs[b - 1], runs[b], prev, cur});
    prev = cur;
  }
  return violations;
}

MaximizingSet brute_force_maximizing_set(
    const TroubleshootingModel& model, ClusterIndex cluster,
    std::span<const ActionIndex> actions) {
  const int n = int(actions.size());
  if (n == 0)
    throw ValidationError("brute_force_maximizing_set: empty cluster");
  if (n > 20)
    throw InfeasibleError("brute_force_maximizing_set: " + std::to_string(n) +
                          " actions exceed the 20-action subset-scan limit");

  const double base = model.cluster(cluster).combined_cost();
  double best_prob = 0.0, best_cost = base;
  std::uint32_t best_mask = 0;
  int best_size = -1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double prob = 0.0, cost = base;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        prob += model.action(actions[i]).repair_prob;
        cost += model.action(actions[i]).cost;
      }
    const int size = std::popcount(mask);
    const int cmp =
        best_size < 0 ? 1 : ratio_compare(prob, cost, best_prob, best_cost);
    if (cmp > 0 || (cmp == 0 && size > best_size)) {
      best_prob = prob;
      best_cost = cost;
      best_mask = mask;
      best_size = size;
    }
  }

  MaximizingSet result;
  result.cluster = cluster;
  result.total_prob = best_prob;
  result.total_cost = best_cost;
  result.efficiency = best_prob / best_cost;
  for (int i = 0; i < n; ++i)
    if (best_mask & (1u << i)) result.ordered_sequence.push_back(actions[i]);
  std::sort(result.ordered_sequence.begin(), result.ordered_sequence.end(),
            [&](ActionIndex x, ActionIndex y) {
              const Action& ax = model.action(x);
              const Action& ay = model.action(y);
              int c = ratio_compare(ax.repair_prob, ax.cost, ay.repair_prob,
                                    ay.cost);
              if (c != 0) return c > 0;
              return model.action_rank(x) < model.action_rank(y);
            });
  return result;
}

}  // namespace tsplan
