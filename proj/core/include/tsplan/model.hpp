#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsplan/error.hpp"

namespace tsplan {

using ActionIndex = std::int32_t;
using ClusterIndex = std::int32_t;

/// Absolute tolerance for probability bounds and normalization checks.
/// Values within the tolerance of a bound are clamped to it.
inline constexpr double kProbTolerance = 1e-9;

struct FaultSpec {
  std::string id;
  double prior = 0.0;
};

struct Action {
  std::string id;
  double cost = 0.0;         // resource units, > 0
  double repair_prob = 0.0;  // probability the action fixes the problem
  ClusterIndex cluster = -1;
};

struct ClusterNode {
  std::string id;
  std::optional<ClusterIndex> parent;  // absent only for the root
  double open_cost = 0.0;
  double close_cost = 0.0;

  bool is_root() const { return !parent.has_value(); }
  double combined_cost() const { return open_cost + close_cost; }
};

// Parsed form of a model file. The textual format is owned by the model_io
// layer; this is the structured document it produces. An action carries
// either a direct repair probability `p` or a `success` row (probability of
// fixing the problem per fault id), never both kinds in one document.
struct DocCluster {
  std::string id;
  std::optional<std::string> parent;
  double open_cost = 0.0;
  double close_cost = 0.0;
};

struct DocAction {
  std::string id;
  std::string cluster;
  double cost = 0.0;
  std::optional<double> p;
  std::optional<std::map<std::string, double>> success;
};

struct DocFault {
  std::string id;
  double prior = 0.0;
};

struct ModelDocument {
  std::vector<DocCluster> clusters;
  std::vector<DocAction> actions;
  std::vector<DocFault> faults;
};

/// Validated troubleshooting model: actions in a rooted tree of cost
/// clusters. Immutable after construction and safe to share across threads.
class TroubleshootingModel {
 public:
  std::size_t action_count() const { return actions_.size(); }
  std::size_t cluster_count() const { return clusters_.size(); }

  const Action& action(ActionIndex a) const { return actions_[a]; }
  const ClusterNode& cluster(ClusterIndex c) const { return clusters_[c]; }
  std::span<const Action> actions() const { return actions_; }
  std::span<const ClusterNode> clusters() const { return clusters_; }

  ClusterIndex root() const { return root_; }
  int cluster_depth(ClusterIndex c) const { return depth_[c]; }
  /// Longest root-to-cluster path length; 0 for a single-cluster model.
  int tree_depth() const { return tree_depth_; }
  std::span<const ClusterIndex> children(ClusterIndex c) const {
    return children_[c];
  }
  std::span<const ActionIndex> actions_in(ClusterIndex c) const {
    return cluster_actions_[c];
  }

  /// Position of the action's id in the lexicographic order of all action
  /// ids. Used as the deterministic tie-breaking key.
  int action_rank(ActionIndex a) const { return action_rank_[a]; }
  int cluster_rank(ClusterIndex c) const { return cluster_rank_[c]; }

  /// Throws ValidationError for unknown ids.
  ActionIndex action_index(const std::string& id) const;
  ClusterIndex cluster_index(const std::string& id) const;
  bool has_action(const std::string& id) const;

  /// True if `ancestor` lies on the path from the root to `c`, inclusive.
  bool is_ancestor_or_self(ClusterIndex ancestor, ClusterIndex c) const;

  bool has_fault_layer() const { return !faults_.empty(); }
  std::span<const FaultSpec> faults() const { return faults_; }
  /// success[f] = P(action fixes the problem | fault f present); only
  /// meaningful when the model carries a fault layer.
  std::span<const double> success_row(ActionIndex a) const {
    return success_[a];
  }

  friend TroubleshootingModel build_model(const ModelDocument& doc);

 private:
  std::vector<ClusterNode> clusters_;
  std::vector<Action> actions_;
  std::vector<FaultSpec> faults_;
  std::vector<std::vector<double>> success_;  // actions x faults
  ClusterIndex root_ = -1;
  int tree_depth_ = 0;
  std::vector<int> depth_;
  std::vector<std::vector<ClusterIndex>> children_;
  std::vector<std::vector<ActionIndex>> cluster_actions_;
  std::vector<int> action_rank_;
  std::vector<int> cluster_rank_;
  std::map<std::string, ActionIndex> action_by_id_;
  std::map<std::string, ClusterIndex> cluster_by_id_;
};

/// Computes the repair probability of every action from fault priors and
/// per-fault success probabilities: P(action fixes) = sum over faults of
/// P(fixes | fault) * P(fault). Requires priors summing to one and each
/// fault addressed by at most one action.
std::map<std::string, double> repair_probabilities(
    const std::vector<FaultSpec>& faults,
    const std::map<std::string, std::map<std::string, double>>& success);

/// Validates a document and builds the model. If the document carries a
/// fault layer, repair probabilities are derived from it; otherwise the
/// per-action `p` values are used directly. Every malformed document raises
/// ValidationError naming the offending id; a partially built model is
/// never returned.
TroubleshootingModel build_model(const ModelDocument& doc);

/// Inverse of build_model: emits a document that rebuilds this model
/// field-for-field (fault layer included when present).
ModelDocument serialize_model(const TroubleshootingModel& model);

}  // namespace tsplan
