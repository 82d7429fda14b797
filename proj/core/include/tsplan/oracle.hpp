#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tsplan/ecr.hpp"
#include "tsplan/model.hpp"
#include "tsplan/planner_flat.hpp"

namespace tsplan {

/// Tolerance for the optimality checkers; a violation must exceed it.
inline constexpr double kCheckTolerance = 1e-9;

struct OracleReport {
  std::vector<ActionIndex> best_sequence;
  double best_ecr = 0.0;
  std::uint64_t sequences_examined = 0;
  /// Permutations whose ECR lies within 1e-12 of the minimum.
  std::uint64_t ties = 0;
};

/// Exact minimum ECR over every full permutation of the model's actions.
/// best_sequence is the lexicographically (by action id) smallest
/// permutation attaining the minimum. Refuses models with more than
/// `limit` actions.
OracleReport brute_force_optimal(const TroubleshootingModel& model,
                                 int limit = 8);

enum class AdjacencyCase {
  FreeFree,  // neither step opened a cluster
  OpenFree,  // the first step opened, the second was already free
  FreeOpen,  // the first step was free, the second opened
  OpenOpen,  // both steps opened clusters
};

struct AdjacencyViolation {
  int index = 0;  // position of the first action of the offending pair
  AdjacencyCase kind = AdjacencyCase::FreeFree;
  ActionIndex first = -1;
  ActionIndex second = -1;
  double first_efficiency = 0.0;   // repair prob over cost actually paid
  double second_efficiency = 0.0;  // must not exceed first_efficiency
};

/// Checks every adjacent pair for the exchange inequalities an optimal
/// sequence must satisfy: the conditional efficiency (repair probability
/// over the cost actually paid, opening charges included) must be
/// non-increasing. Pairs where the earlier step opened an ancestor of the
/// later action's cluster are exempt (swapping them changes who pays the
/// opening, so no inequality is implied).
std::vector<AdjacencyViolation> check_adjacency(
    const TroubleshootingModel& model, std::span<const ActionIndex> sequence,
    double tolerance = kCheckTolerance);

enum class PartitionMode {
  Cluster,  // maximal runs of actions from the same cluster
  Subtree,  // maximal runs from the same top-level subtree (root on its own)
};

/// The unique partition of the sequence into maximal regular runs,
/// returned as inclusive 0-based (from, to) ranges.
std::vector<std::pair<int, int>> regular_partition(
    const TroubleshootingModel& model, std::span<const ActionIndex> sequence,
    PartitionMode mode = PartitionMode::Cluster);

struct BlockOrderViolation {
  std::pair<int, int> first_block;
  std::pair<int, int> second_block;
  double first_efficiency = 0.0;
  double second_efficiency = 0.0;
};

/// Checks that adjacent maximal regular runs appear in non-increasing
/// subsequence efficiency (summed probability over summed conditional
/// cost). Use Subtree mode for models deeper than one level: cluster-mode
/// blocks of a nested plan may legitimately violate the flat ordering when
/// an opening inside one block also pays for its neighbour's ancestors.
std::vector<BlockOrderViolation> check_block_efficiency_order(
    const TroubleshootingModel& model, std::span<const ActionIndex> sequence,
    PartitionMode mode = PartitionMode::Cluster,
    double tolerance = kCheckTolerance);

/// Exhaustive subset scan for the cluster-efficiency maximum; the oracle
/// for maximizing_set. Returns the largest maximizing subset as a
/// descending-efficiency sequence. Refuses clusters with more than 20
/// actions.
MaximizingSet brute_force_maximizing_set(const TroubleshootingModel& model,
                                         ClusterIndex cluster,
                                         std::span<const ActionIndex> actions);

}  // namespace tsplan
