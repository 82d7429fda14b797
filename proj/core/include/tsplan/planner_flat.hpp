#pragma once

#include <optional>
#include <vector>

#include "tsplan/ecr.hpp"
#include "tsplan/model.hpp"

namespace tsplan {

/// The largest subset of a cluster's actions maximizing summed repair
/// probability over cluster cost plus summed action cost, together with the
/// maximizing sequence (members sorted by descending efficiency).
struct MaximizingSet {
  ClusterIndex cluster = -1;
  std::vector<ActionIndex> ordered_sequence;
  double total_prob = 0.0;
  double total_cost = 0.0;  // includes the cluster's open+close cost
  double efficiency = 0.0;  // total_prob / total_cost
};

/// Actions sorted by descending repair-probability-to-cost ratio, ties by
/// ascending action id. Optimal for actions in a single open cluster.
std::vector<ActionIndex> p_over_c(const TroubleshootingModel& model,
                                  std::span<const ActionIndex> actions);

/// Greedy scan in descending efficiency, accumulating actions while the
/// running ratio does not strictly decrease. Zero-probability actions are
/// excluded once the ratio is positive; efficiency ties on the boundary are
/// included, so the result is the largest maximizing subset. Returns
/// nullopt for an empty action set.
std::optional<MaximizingSet> maximizing_set(
    const TroubleshootingModel& model, ClusterIndex cluster,
    std::span<const ActionIndex> actions);

/// Optimal sequence for a flat model (root plus bottom-level clusters):
/// free actions and whole maximizing sequences compete by descending
/// efficiency; leftover actions are released into the pool when their
/// cluster opens. Throws InfeasibleError for deeper trees.
PlanResult plan_flat(const TroubleshootingModel& model);

}  // namespace tsplan
