#include "tsplan/evidence.hpp"

#include <algorithm>

namespace tsplan {

EvidenceState::EvidenceState(const TroubleshootingModel& model)
    : performed_mask_(model.action_count(), 0),
      open_(model.cluster_count(), 0) {
  open_[model.root()] = 1;
}

bool EvidenceState::is_free(const TroubleshootingModel& model,
                            ActionIndex a) const {
  return !is_performed(a) && is_open(model.action(a).cluster);
}

std::vector<ClusterIndex> EvidenceState::perform(
    const TroubleshootingModel& model, ActionIndex a) {
  if (a < 0 || a >= ActionIndex(model.action_count()))
    throw ValidationError("action index out of range");
  if (performed_mask_[a])
    throw ValidationError("action '" + model.action(a).id +
                          "' already performed; failed actions are not "
                          "repeated");
  performed_mask_[a] = 1;
  performed_.push_back(a);

  std::vector<ClusterIndex> newly;
  ClusterIndex c = model.action(a).cluster;
  while (!open_[c]) {
    newly.push_back(c);
    open_[c] = 1;
    c = *model.cluster(c).parent;  // root is open, so the walk terminates
  }
  std::reverse(newly.begin(), newly.end());
  return newly;
}

double conditional_cost(const TroubleshootingModel& model, ActionIndex a,
                        const EvidenceState& evidence) {
  if (a < 0 || a >= ActionIndex(model.action_count()))
    throw ValidationError("action index out of range");
  if (evidence.is_performed(a))
    throw ValidationError("action '" + model.action(a).id +
                          "' already performed");
  double cost = model.action(a).cost;
  ClusterIndex c = model.action(a).cluster;
  while (!evidence.is_open(c)) {
    cost += model.cluster(c).combined_cost();
    c = *model.cluster(c).parent;
  }
  return cost;
}

EvidenceState apply_action(const TroubleshootingModel& model,
                           const EvidenceState& evidence, ActionIndex a) {
  EvidenceState next = evidence;
  next.perform(model, a);
  return next;
}

EvidenceState evidence_after(const TroubleshootingModel& model,
                             std::span<const ActionIndex> prefix) {
  EvidenceState state(model);
  for (ActionIndex a : prefix) state.perform(model, a);
  return state;
}

}  // namespace tsplan
