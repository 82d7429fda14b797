#pragma once

#include <vector>

#include "tsplan/model.hpp"

namespace tsplan {

/// Troubleshooting evidence: the actions performed so far (all of which
/// failed) and the clusters opened so far. The root is always open and the
/// open set is ancestor-closed. Value-like and freely copyable.
class EvidenceState {
 public:
  explicit EvidenceState(const TroubleshootingModel& model);

  bool is_open(ClusterIndex c) const { return open_[c] != 0; }
  bool is_performed(ActionIndex a) const { return performed_mask_[a] != 0; }
  /// True iff the action is unperformed and its cluster is open.
  bool is_free(const TroubleshootingModel& model, ActionIndex a) const;
  const std::vector<ActionIndex>& performed() const { return performed_; }

  /// Marks the action performed and opens its cluster chain. Returns the
  /// clusters newly opened, ordered from the shallowest down. Throws if the
  /// action was already performed (failed actions are never repeated).
  std::vector<ClusterIndex> perform(const TroubleshootingModel& model,
                                    ActionIndex a);

 private:
  std::vector<ActionIndex> performed_;
  std::vector<char> performed_mask_;
  std::vector<char> open_;
};

/// Cost of performing the action under the given evidence: its own cost
/// plus the combined open+close cost of every currently closed cluster on
/// the path from the root to the action's cluster. Throws if the action was
/// already performed.
double conditional_cost(const TroubleshootingModel& model, ActionIndex a,
                        const EvidenceState& evidence);

/// Returns the evidence that results from performing the action: appended
/// to the performed set, with the action's closed ancestor chain opened.
EvidenceState apply_action(const TroubleshootingModel& model,
                           const EvidenceState& evidence, ActionIndex a);

/// Evidence after performing a prefix of actions in order.
EvidenceState evidence_after(const TroubleshootingModel& model,
                             std::span<const ActionIndex> prefix);

}  // namespace tsplan
