#include "tsplan/simulate.hpp"

#include <cmath>

#include "tsplan/evidence.hpp"

namespace tsplan {

TrialOutcome simulate_outcome(const TroubleshootingModel& model,
                              std::span<const ActionIndex> sequence,
                              double u) {
  EvidenceState evidence(model);
  TrialOutcome outcome;
  double cumulative = 0.0;
  for (ActionIndex a : sequence) {
    outcome.cost += conditional_cost(model, a, evidence);
    evidence.perform(model, a);
    cumulative += model.action(a).repair_prob;
    if (u < cumulative) {
      outcome.solved = true;
      break;
    }
  }
  return outcome;
}

TrialOutcome simulate_once(const TroubleshootingModel& model,
                           std::span<const ActionIndex> sequence,
                           SplitMix64& random_source) {
  return simulate_outcome(model, sequence, random_source.next_unit());
}

SimulationSummary estimate_ecr(const TroubleshootingModel& model,
                               std::span<const ActionIndex> sequence,
                               std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw ValidationError("estimate_ecr: trials must be >= 1");
  SimulationSummary summary;
  summary.trials = trials;
  summary.seed = seed;

  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t solved = 0;
  SplitMix64 master(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    // Per-trial substream keyed by the trial index.
    SplitMix64 stream(master.state + 0x632be59bd9b4e019ULL * (t + 1));
    TrialOutcome outcome = simulate_once(model, sequence, stream);
    sum += outcome.cost;
    sum_sq += outcome.cost * outcome.cost;
    solved += outcome.solved ? 1 : 0;
  }
  summary.mean_cost = sum / double(trials);
  summary.solve_rate = double(solved) / double(trials);
  if (trials > 1) {
    const double variance =
        std::max(0.0, (sum_sq - double(trials) * summary.mean_cost *
                                    summary.mean_cost) /
                          double(trials - 1));
    summary.std_error = std::sqrt(variance / double(trials));
  }
  return summary;
}

}  // namespace tsplan
