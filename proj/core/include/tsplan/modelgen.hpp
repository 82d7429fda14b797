#pragma once

#include <cstdint>

#include "tsplan/model.hpp"

namespace tsplan {

/// Parameters for the synthetic model generator used by tests and the
/// bench command. Action costs are uniform in [min_action_cost,
/// max_action_cost], combined cluster costs uniform in [0,
/// max_cluster_cost] (split at random between open and close), repair
/// probabilities drawn uniformly then scaled to a total mass in [0.5, 1],
/// and each non-root cluster picks a uniform parent among the earlier
/// clusters with depth below max_depth.
struct GeneratorParams {
  int actions = 10;
  int clusters = 2;  // non-root clusters
  int max_depth = 1;  // 1 = flat model
  std::uint64_t seed = 0;
  double min_action_cost = 0.5;
  double max_action_cost = 5.0;
  double max_cluster_cost = 5.0;
};

/// Seed-reproducible random model.
TroubleshootingModel random_model(const GeneratorParams& params);

}  // namespace tsplan
