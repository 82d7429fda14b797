#pragma once

#include <memory>
#include <vector>

#include "tsplan/ecr.hpp"
#include "tsplan/model.hpp"

namespace tsplan {

struct CompoundAction;

/// One schedulable unit: either an atomic action or a compound action
/// (opening a cluster plus a prescribed inner sequence). `prob` and `cost`
/// are the aggregates used for efficiency comparisons; for a compound they
/// include the opening charge of every cluster opened inside.
struct PlanEntry {
  double prob = 0.0;
  double cost = 0.0;
  ActionIndex action = -1;
  std::shared_ptr<const CompoundAction> compound;

  bool is_compound() const { return compound != nullptr; }
  double efficiency() const { return prob / cost; }
};

struct CompoundAction {
  ClusterIndex cluster = -1;  // the cluster this action opens
  double total_prob = 0.0;
  double total_cost = 0.0;  // item costs plus every opening charge inside
  std::vector<PlanEntry> items;  // descending efficiency at build time
};

/// Appends the atomic actions of an entry in execution order.
void unfold(const PlanEntry& entry, std::vector<ActionIndex>& out);

struct TreePlan;

/// A cluster whose subtree has been reduced to a single max-queue of atomic
/// and compound actions keyed by efficiency. Move-only; the queue supports
/// constant-time merging.
class AbsorbedCluster {
 public:
  AbsorbedCluster(AbsorbedCluster&&) noexcept;
  AbsorbedCluster& operator=(AbsorbedCluster&&) noexcept;
  ~AbsorbedCluster();

  ClusterIndex cluster() const;
  bool empty() const;
  std::size_t size() const;
  /// Snapshot of the queue in priority order (descending efficiency, ties
  /// compound-first then ascending id).
  std::vector<PlanEntry> entries_by_priority() const;

 private:
  friend AbsorbedCluster base_cluster(const TroubleshootingModel&,
                                      ClusterIndex);
  friend AbsorbedCluster absorb(const TroubleshootingModel&, AbsorbedCluster,
                                std::vector<AbsorbedCluster>);
  friend AbsorbedCluster induce_absorption(const TroubleshootingModel&);
  friend TreePlan plan_tree(const TroubleshootingModel&);
  explicit AbsorbedCluster(const TroubleshootingModel& model, ClusterIndex c);
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Queue holding only the cluster's own atomic actions; the starting point
/// for absorption.
AbsorbedCluster base_cluster(const TroubleshootingModel& model,
                             ClusterIndex cluster);

/// Absorbs fully absorbed child clusters into their direct parent: each
/// non-empty child contributes one compound action built from its
/// maximizing prefix (greedy over the child's mixed entries by descending
/// efficiency), and its remaining entries are merged into the parent's
/// queue. Children with no actions anywhere in their subtree are dropped.
AbsorbedCluster absorb(const TroubleshootingModel& model,
                       AbsorbedCluster parent,
                       std::vector<AbsorbedCluster> children);

/// Bottom-up absorption of the whole tree into a single queue at the root.
AbsorbedCluster induce_absorption(const TroubleshootingModel& model);

/// One top-level emission of plan_tree: the entry popped from the root
/// queue and the span [first, last] it occupies in the final sequence.
struct TreePlanEmission {
  PlanEntry entry;
  int first = 0;
  int last = 0;
};

struct TreePlan {
  PlanResult result;
  std::vector<TreePlanEmission> emissions;
};

/// Optimal sequence for a tree model of any depth: absorbs the tree, then
/// repeatedly emits the most efficient entry, unfolding compound actions in
/// their prescribed order.
TreePlan plan_tree(const TroubleshootingModel& model);

enum class Algorithm { Basic, Flat, Tree };

/// Planner selection by tree depth: depth 0 -> plain ratio ordering,
/// depth 1 -> flat, deeper -> tree.
Algorithm choose_algorithm(const TroubleshootingModel& model);

/// Plans with the algorithm chosen by choose_algorithm.
PlanResult plan_auto(const TroubleshootingModel& model);

}  // namespace tsplan
