#pragma once

#include <vector>

#include "tsplan/evidence.hpp"
#include "tsplan/model.hpp"

namespace tsplan {

/// Full evaluation of a troubleshooting sequence.
struct PlanResult {
  std::vector<ActionIndex> sequence;
  /// Positions (0-based) whose action opened at least one cluster. When a
  /// deeply nested action opens several ancestors at once the position
  /// enters once.
  std::vector<int> opening_indices;
  /// Clusters newly opened at each step, shallowest first; empty for free
  /// steps.
  std::vector<std::vector<ClusterIndex>> opened_at;
  std::vector<double> step_costs;     // conditional cost paid at each step
  std::vector<double> step_survival;  // probability the step is reached
  double ecr = 0.0;
};

/// Expected cost of repair of a sequence: sum over steps of the conditional
/// cost times the probability that all earlier actions failed. The sequence
/// may cover any subset of the model's actions; repeats are rejected.
PlanResult evaluate_ecr(const TroubleshootingModel& model,
                        std::span<const ActionIndex> sequence);
PlanResult evaluate_ecr(const TroubleshootingModel& model,
                        const std::vector<std::string>& action_ids);

/// Reusable buffers for ecr_value; avoids per-call allocation in tight
/// enumeration loops.
struct EcrScratch {
  std::vector<char> open;
  std::vector<char> performed;
};

/// ECR of the sequence without materializing per-step data.
double ecr_value(const TroubleshootingModel& model,
                 std::span<const ActionIndex> sequence, EcrScratch& scratch);
double ecr_value(const TroubleshootingModel& model,
                 std::span<const ActionIndex> sequence);

struct EcrDecomposition {
  double action_term = 0.0;   // sum of raw action costs weighted by survival
  double opening_term = 0.0;  // cluster opening charges weighted by survival
  double total() const { return action_term + opening_term; }
};

/// Splits the ECR into the action-cost term and the cluster-opening term.
/// The two sum to evaluate_ecr(...).ecr.
EcrDecomposition ecr_decomposed(const TroubleshootingModel& model,
                                std::span<const ActionIndex> sequence);

/// Efficiency of sequence[from..to] (inclusive) started under the given
/// evidence: summed repair probability over summed conditional cost.
double subsequence_efficiency(const TroubleshootingModel& model,
                              std::span<const ActionIndex> sequence, int from,
                              int to, const EvidenceState& evidence_at_from);

}  // namespace tsplan
