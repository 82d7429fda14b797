#include "tsplan/ecr.hpp"

#include <algorithm>

namespace tsplan {

namespace {

void check_indices(const TroubleshootingModel& model,
                   std::span<const ActionIndex> sequence) {
  for (ActionIndex a : sequence)
    if (a < 0 || a >= ActionIndex(model.action_count()))
      throw ValidationError("action index out of range");
}

}  // namespace

PlanResult evaluate_ecr(const TroubleshootingModel& model,
                        std::span<const ActionIndex> sequence) {
  check_indices(model, sequence);
  PlanResult r;
  r.sequence.assign(sequence.begin(), sequence.end());
  r.opened_at.resize(sequence.size());
  r.step_costs.resize(sequence.size());
  r.step_survival.resize(sequence.size());

  EvidenceState evidence(model);
  double survival = 1.0;
  double prob_used = 0.0;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const ActionIndex a = sequence[i];
    auto newly = evidence.perform(model, a);  // rejects repeats
    double cost = model.action(a).cost;
    for (ClusterIndex c : newly) cost += model.cluster(c).combined_cost();
    if (!newly.empty()) r.opening_indices.push_back(int(i));
    r.opened_at[i] = std::move(newly);
    r.step_costs[i] = cost;
    r.step_survival[i] = survival;
    r.ecr += survival * cost;
    prob_used += model.action(a).repair_prob;
    survival = std::max(0.0, 1.0 - prob_used);
  }
  return r;
}

PlanResult evaluate_ecr(const TroubleshootingModel& model,
                        const std::vector<std::string>& action_ids) {
  std::vector<ActionIndex> seq;
  seq.reserve(action_ids.size());
  for (const auto& id : action_ids) seq.push_back(model.action_index(id));
  return evaluate_ecr(model, seq);
}

double ecr_value(const TroubleshootingModel& model,
                 std::span<const ActionIndex> sequence, EcrScratch& scratch) {
  check_indices(model, sequence);
  scratch.open.assign(model.cluster_count(), 0);
  scratch.performed.assign(model.action_count(), 0);
  scratch.open[model.root()] = 1;

  double ecr = 0.0;
  double survival = 1.0;
  double prob_used = 0.0;
  for (ActionIndex a : sequence) {
    if (scratch.performed[a])
      throw ValidationError("action '" + model.action(a).id +
                            "' appears twice in the sequence");
    scratch.performed[a] = 1;
    double cost = model.action(a).cost;
    for (ClusterIndex c = model.action(a).cluster; !scratch.open[c];
         c = *model.cluster(c).parent) {
      cost += model.cluster(c).combined_cost();
      scratch.open[c] = 1;
    }
    ecr += survival * cost;
    prob_used += model.action(a).repair_prob;
    survival = std::max(0.0, 1.0 - prob_used);
  }
  return ecr;
}

double ecr_value(const TroubleshootingModel& model,
                 std::span<const ActionIndex> sequence) {
  EcrScratch scratch;
  return ecr_value(model, sequence, scratch);
}

EcrDecomposition ecr_decomposed(const TroubleshootingModel& model,
                                std::span<const ActionIndex> sequence) {
  PlanResult r = evaluate_ecr(model, sequence);
  EcrDecomposition d;
  for (std::size_t i = 0; i < r.sequence.size(); ++i) {
    d.action_term += r.step_survival[i] * model.action(r.sequence[i]).cost;
    double opening = 0.0;
    for (ClusterIndex c : r.opened_at[i])
      opening += model.cluster(c).combined_cost();
    d.opening_term += r.step_survival[i] * opening;
  }
  return d;
}

double subsequence_efficiency(const TroubleshootingModel& model,
                              std::span<const ActionIndex> sequence, int from,
                              int to, const EvidenceState& evidence_at_from) {
  if (from < 0 || to >= int(sequence.size()) || from > to)
    throw ValidationError("empty or out-of-range subsequence");
  EvidenceState evidence = evidence_at_from;
  double prob = 0.0;
  double cost = 0.0;
  for (int i = from; i <= to; ++i) {
    const ActionIndex a = sequence[i];
    cost += conditional_cost(model, a, evidence);
    prob += model.action(a).repair_prob;
    evidence.perform(model, a);
  }
  return prob == 0.0 ? 0.0 : prob / cost;
}

}  // namespace tsplan
