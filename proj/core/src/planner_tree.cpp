#include "tsplan/planner_tree.hpp"

#include <algorithm>
#include <utility>

#include <boost/heap/pairing_heap.hpp>

#include "tsplan/planner_flat.hpp"
#include "tsplan/ratio.hpp"

namespace tsplan {

namespace {

// Queue element: a compound action, or a cursor into one cluster's actions
// sorted by descending efficiency. A cursor stands for its current atomic
// action and is re-queued advanced to the next one when popped, so a queue
// holds one node per cluster list plus one per compound rather than one
// per action. Merges stay O(1) and every heap stays small.
struct HeapEntry {
  double prob = 0.0;
  double cost = 0.0;
  ActionIndex action = -1;  // atom represented by a cursor entry
  std::shared_ptr<const CompoundAction> compound;
  std::shared_ptr<const std::vector<ActionIndex>> list;
  std::uint32_t pos = 0;

  bool is_compound() const { return compound != nullptr; }
};

// Priority: descending efficiency; ties prefer compound entries (keeps
// blocks contiguous), then ascending id.
struct EntryLess {
  const TroubleshootingModel* model;
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    int c = ratio_compare(a.prob, a.cost, b.prob, b.cost);
    if (c != 0) return c < 0;
    if (a.is_compound() != b.is_compound()) return !a.is_compound();
    if (a.is_compound())
      return model->cluster_rank(a.compound->cluster) >
             model->cluster_rank(b.compound->cluster);
    return model->action_rank(a.action) > model->action_rank(b.action);
  }
};

using EntryHeap =
    boost::heap::pairing_heap<HeapEntry, boost::heap::compare<EntryLess>>;

// Removes the most efficient unit, advancing its cursor when one remains.
PlanEntry pop_unit(const TroubleshootingModel& model, EntryHeap& heap) {
  HeapEntry top = heap.top();
  heap.pop();
  PlanEntry unit;
  unit.prob = top.prob;
  unit.cost = top.cost;
  if (top.is_compound()) {
    unit.compound = std::move(top.compound);
    return unit;
  }
  unit.action = top.action;
  if (top.list && top.pos + 1 < top.list->size()) {
    ++top.pos;
    const ActionIndex next = (*top.list)[top.pos];
    const Action& act = model.action(next);
    top.action = next;
    top.prob = act.repair_prob;
    top.cost = act.cost;
    heap.push(std::move(top));
  }
  return unit;
}

// Pops the greedy maximizing prefix of the child queue and wraps it in a
// compound action; leftovers stay in the queue. The running ratio starts at
// 0 over the child's opening charge and never decreases, so the scan stops
// at the first entry less efficient than the accumulated ratio. Returns the
// number of units consumed.
std::size_t build_compound(const TroubleshootingModel& model,
                           ClusterIndex child, EntryHeap& queue,
                           HeapEntry& out) {
  auto compound = std::make_shared<CompoundAction>();
  compound->cluster = child;
  compound->total_cost = model.cluster(child).combined_cost();
  std::size_t consumed = 0;
  while (!queue.empty()) {
    const HeapEntry& top = queue.top();
    if (ratio_less(top.prob, top.cost, compound->total_prob,
                   compound->total_cost))
      break;
    PlanEntry unit = pop_unit(model, queue);
    compound->total_prob += unit.prob;
    compound->total_cost += unit.cost;
    compound->items.push_back(std::move(unit));
    ++consumed;
  }
  out.prob = compound->total_prob;
  out.cost = compound->total_cost;
  out.action = -1;
  out.compound = std::move(compound);
  out.list = nullptr;
  return consumed;
}

// Flattens every unit behind the queue (expanding cursors) into priority
// order. Cursors expand sequentially and a 16-byte key sort replaces
// per-unit heap pops: float efficiencies order the bulk (division is
// correctly rounded, hence monotone in the exact ratio) and only float
// ties fall back to the exact comparator.
std::vector<PlanEntry> units_by_priority(const TroubleshootingModel& model,
                                         const EntryHeap& heap,
                                         std::size_t hint) {
  std::vector<PlanEntry> units;
  units.reserve(hint);
  for (const HeapEntry& node : heap) {
    if (node.is_compound()) {
      PlanEntry e;
      e.prob = node.prob;
      e.cost = node.cost;
      e.compound = node.compound;
      units.push_back(std::move(e));
    } else {
      for (std::size_t i = node.pos; i < node.list->size(); ++i) {
        const ActionIndex a = (*node.list)[i];
        PlanEntry e;
        e.prob = model.action(a).repair_prob;
        e.cost = model.action(a).cost;
        e.action = a;
        units.push_back(std::move(e));
      }
    }
  }

  struct Key {
    double efficiency;
    std::uint32_t index;
  };
  std::vector<Key> keys;
  keys.reserve(units.size());
  for (std::uint32_t i = 0; i < units.size(); ++i)
    keys.push_back({units[i].cost > 0.0 ? units[i].prob / units[i].cost : 0.0,
                    i});
  std::sort(keys.begin(), keys.end(), [&](const Key& x, const Key& y) {
    if (x.efficiency != y.efficiency) return x.efficiency > y.efficiency;
    const PlanEntry& a = units[x.index];
    const PlanEntry& b = units[y.index];
    int c = ratio_compare(a.prob, a.cost, b.prob, b.cost);
    if (c != 0) return c > 0;
    if (a.is_compound() != b.is_compound()) return a.is_compound();
    if (a.is_compound())
      return model.cluster_rank(a.compound->cluster) <
             model.cluster_rank(b.compound->cluster);
    return model.action_rank(a.action) < model.action_rank(b.action);
  });

  std::vector<PlanEntry> ordered;
  ordered.reserve(units.size());
  for (const Key& key : keys) ordered.push_back(std::move(units[key.index]));
  return ordered;
}

}  // namespace

void unfold(const PlanEntry& entry, std::vector<ActionIndex>& out) {
  if (!entry.is_compound()) {
    out.push_back(entry.action);
    return;
  }
  for (const PlanEntry& item : entry.compound->items) unfold(item, out);
}

struct AbsorbedCluster::Impl {
  Impl(const TroubleshootingModel& model, ClusterIndex c)
      : cluster(c), heap(EntryLess{&model}) {}
  ClusterIndex cluster;
  EntryHeap heap;
  std::size_t units = 0;  // atoms still behind cursors plus compounds
};

AbsorbedCluster::AbsorbedCluster(const TroubleshootingModel& model,
                                 ClusterIndex c)
    : impl_(std::make_unique<Impl>(model, c)) {}
AbsorbedCluster::AbsorbedCluster(AbsorbedCluster&&) noexcept = default;
AbsorbedCluster& AbsorbedCluster::operator=(AbsorbedCluster&&) noexcept =
    default;
AbsorbedCluster::~AbsorbedCluster() = default;

ClusterIndex AbsorbedCluster::cluster() const { return impl_->cluster; }
bool AbsorbedCluster::empty() const { return impl_->units == 0; }
std::size_t AbsorbedCluster::size() const { return impl_->units; }

std::vector<PlanEntry> AbsorbedCluster::entries_by_priority() const {
  // Reaches the model through the comparator stored in the heap.
  const TroubleshootingModel& model = *impl_->heap.value_comp().model;
  return units_by_priority(model, impl_->heap, impl_->units);
}

AbsorbedCluster base_cluster(const TroubleshootingModel& model,
                             ClusterIndex cluster) {
  AbsorbedCluster result(model, cluster);
  auto actions = model.actions_in(cluster);
  if (actions.empty()) return result;

  auto list = std::make_shared<std::vector<ActionIndex>>(actions.begin(),
                                                         actions.end());
  std::sort(list->begin(), list->end(), [&](ActionIndex x, ActionIndex y) {
    const Action& ax = model.action(x);
    const Action& ay = model.action(y);
    int c = ratio_compare(ax.repair_prob, ax.cost, ay.repair_prob, ay.cost);
    if (c != 0) return c > 0;
    return model.action_rank(x) < model.action_rank(y);
  });

  HeapEntry cursor;
  cursor.action = (*list)[0];
  cursor.prob = model.action(cursor.action).repair_prob;
  cursor.cost = model.action(cursor.action).cost;
  cursor.pos = 0;
  cursor.list = std::move(list);
  result.impl_->units = model.actions_in(cluster).size();
  result.impl_->heap.push(std::move(cursor));
  return result;
}

AbsorbedCluster absorb(const TroubleshootingModel& model,
                       AbsorbedCluster parent,
                       std::vector<AbsorbedCluster> children) {
  for (AbsorbedCluster& child : children) {
    if (child.impl_->cluster == parent.impl_->cluster ||
        !model.cluster(child.impl_->cluster).parent ||
        *model.cluster(child.impl_->cluster).parent != parent.impl_->cluster)
      throw ValidationError("absorb: '" +
                            model.cluster(child.impl_->cluster).id +
                            "' is not a direct child of '" +
                            model.cluster(parent.impl_->cluster).id + "'");
    if (child.empty()) continue;  // no actions in the whole subtree
    HeapEntry compound;
    const std::size_t consumed =
        build_compound(model, child.impl_->cluster, child.impl_->heap,
                       compound);
    parent.impl_->heap.push(std::move(compound));
    parent.impl_->heap.merge(child.impl_->heap);
    parent.impl_->units += 1 + (child.impl_->units - consumed);
    child.impl_->units = 0;
  }
  return parent;
}

AbsorbedCluster induce_absorption(const TroubleshootingModel& model) {
  // Children carry greater depth, so absorbing in descending depth order
  // reduces every subtree before its parent.
  std::vector<ClusterIndex> order(model.cluster_count());
  for (ClusterIndex c = 0; c < ClusterIndex(model.cluster_count()); ++c)
    order[c] = c;
  std::sort(order.begin(), order.end(), [&](ClusterIndex a, ClusterIndex b) {
    return model.cluster_depth(a) > model.cluster_depth(b);
  });

  std::vector<std::unique_ptr<AbsorbedCluster>> absorbed(
      model.cluster_count());
  for (ClusterIndex c = 0; c < ClusterIndex(model.cluster_count()); ++c)
    absorbed[c] =
        std::make_unique<AbsorbedCluster>(base_cluster(model, c));
  for (ClusterIndex c : order) {
    std::vector<AbsorbedCluster> children;
    for (ClusterIndex child : model.children(c))
      children.push_back(std::move(*absorbed[child]));
    if (!children.empty())
      *absorbed[c] = absorb(model, std::move(*absorbed[c]),
                            std::move(children));
  }
  return std::move(*absorbed[model.root()]);
}

TreePlan plan_tree(const TroubleshootingModel& model) {
  AbsorbedCluster root = induce_absorption(model);
  std::vector<PlanEntry> units =
      units_by_priority(model, root.impl_->heap, root.impl_->units);

  TreePlan plan;
  plan.emissions.reserve(units.size());
  std::vector<ActionIndex> sequence;
  sequence.reserve(model.action_count());
  for (PlanEntry& top : units) {
    const int first = int(sequence.size());
    unfold(top, sequence);
    plan.emissions.push_back(
        {std::move(top), first, int(sequence.size()) - 1});
  }
  plan.result = evaluate_ecr(model, sequence);
  return plan;
}

Algorithm choose_algorithm(const TroubleshootingModel& model) {
  switch (model.tree_depth()) {
    case 0:
      return Algorithm::Basic;
    case 1:
      return Algorithm::Flat;
    default:
      return Algorithm::Tree;
  }
}

PlanResult plan_auto(const TroubleshootingModel& model) {
  switch (choose_algorithm(model)) {
    case Algorithm::Basic: {
      std::vector<ActionIndex> all(model.action_count());
      for (ActionIndex a = 0; a < ActionIndex(model.action_count()); ++a)
        all[a] = a;
      return evaluate_ecr(model, p_over_c(model, all));
    }
    case Algorithm::Flat:
      return plan_flat(model);
    case Algorithm::Tree:
      return plan_tree(model).result;
  }
  throw Error("unreachable");
}

}  // namespace tsplan
