#include "tsplan/planner_flat.hpp"

#include <algorithm>
#include <queue>

#include "tsplan/ratio.hpp"

namespace tsplan {

namespace {

// Descending efficiency, ties by ascending action id.
void sort_by_efficiency(const TroubleshootingModel& model,
                        std::vector<ActionIndex>& actions) {
  std::sort(actions.begin(), actions.end(), [&](ActionIndex x, ActionIndex y) {
    const Action& ax = model.action(x);
    const Action& ay = model.action(y);
    int c = ratio_compare(ax.repair_prob, ax.cost, ay.repair_prob, ay.cost);
    if (c != 0) return c > 0;
    return model.action_rank(x) < model.action_rank(y);
  });
}

struct Candidate {
  double prob = 0.0;
  double cost = 0.0;
  bool is_cluster = false;
  ActionIndex action = -1;
  ClusterIndex cluster = -1;
};

// Max-queue order: descending efficiency; on ties a cluster beats an
// action, then ascending id.
struct CandidateLess {
  const TroubleshootingModel* model;
  bool operator()(const Candidate& a, const Candidate& b) const {
    int c = ratio_compare(a.prob, a.cost, b.prob, b.cost);
    if (c != 0) return c < 0;
    if (a.is_cluster != b.is_cluster) return !a.is_cluster;
    if (a.is_cluster)
      return model->cluster_rank(a.cluster) > model->cluster_rank(b.cluster);
    return model->action_rank(a.action) > model->action_rank(b.action);
  }
};

}  // namespace

std::vector<ActionIndex> p_over_c(const TroubleshootingModel& model,
                                  std::span<const ActionIndex> actions) {
  if (actions.empty()) throw ValidationError("p_over_c: empty action list");
  std::vector<ActionIndex> order(actions.begin(), actions.end());
  sort_by_efficiency(model, order);
  return order;
}

std::optional<MaximizingSet> maximizing_set(
    const TroubleshootingModel& model, ClusterIndex cluster,
    std::span<const ActionIndex> actions) {
  if (actions.empty()) return std::nullopt;
  std::vector<ActionIndex> order(actions.begin(), actions.end());
  sort_by_efficiency(model, order);

  MaximizingSet result;
  result.cluster = cluster;
  result.total_cost = model.cluster(cluster).combined_cost();
  for (ActionIndex a : order) {
    const Action& act = model.action(a);
    // Include while the running ratio does not strictly decrease, i.e.
    // while ef(action) >= accumulated ratio. Entries are sorted, so the
    // first failure ends the scan.
    if (ratio_less(act.repair_prob, act.cost, result.total_prob,
                   result.total_cost))
      break;
    result.ordered_sequence.push_back(a);
    result.total_prob += act.repair_prob;
    result.total_cost += act.cost;
  }
  result.efficiency = result.total_prob / result.total_cost;
  return result;
}

PlanResult plan_flat(const TroubleshootingModel& model) {
  if (model.tree_depth() > 1)
    throw InfeasibleError(
        "plan_flat handles flat models only (root plus bottom-level "
        "clusters); this tree has depth " +
        std::to_string(model.tree_depth()) + ", use the tree planner");

  std::vector<MaximizingSet> sets;
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess> queue{
      CandidateLess{&model}};
  for (ActionIndex a : model.actions_in(model.root())) {
    const Action& act = model.action(a);
    queue.push({act.repair_prob, act.cost, false, a, -1});
  }
  for (ClusterIndex c = 0; c < ClusterIndex(model.cluster_count()); ++c) {
    if (c == model.root() || model.actions_in(c).empty()) continue;
    auto ms = maximizing_set(model, c, model.actions_in(c));
    queue.push({ms->total_prob, ms->total_cost, true, -1,
                ClusterIndex(sets.size())});
    sets.push_back(std::move(*ms));
  }

  std::vector<ActionIndex> sequence;
  sequence.reserve(model.action_count());
  std::vector<char> emitted(model.action_count(), 0);
  while (!queue.empty()) {
    Candidate top = queue.top();
    queue.pop();
    if (!top.is_cluster) {
      sequence.push_back(top.action);
      continue;
    }
    const MaximizingSet& ms = sets[top.cluster];
    for (ActionIndex a : ms.ordered_sequence) {
      sequence.push_back(a);
      emitted[a] = 1;
    }
    // The cluster is open now; leftovers compete by plain efficiency.
    for (ActionIndex a : model.actions_in(ms.cluster)) {
      if (emitted[a]) continue;
      const Action& act = model.action(a);
      queue.push({act.repair_prob, act.cost, false, a, -1});
    }
  }
  return evaluate_ecr(model, sequence);
}

}  // namespace tsplan
