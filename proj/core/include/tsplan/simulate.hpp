#pragma once

#include <cstdint>

#include "tsplan/ecr.hpp"
#include "tsplan/model.hpp"

namespace tsplan {

/// Small splittable PRNG. Each trial derives its own stream from the
/// master seed, so a serial run is bit-reproducible and the trials stay
/// independent if executed concurrently.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }
};

struct TrialOutcome {
  double cost = 0.0;
  bool solved = false;
};

/// Replays one session for a fixed outcome draw u in [0, 1): the solving
/// step is the first whose cumulative repair probability exceeds u (none if
/// u falls in the residual mass). Conditional costs, opening charges
/// included, are paid for every step walked.
TrialOutcome simulate_outcome(const TroubleshootingModel& model,
                              std::span<const ActionIndex> sequence,
                              double u);

/// One session with the draw taken from the random source.
TrialOutcome simulate_once(const TroubleshootingModel& model,
                           std::span<const ActionIndex> sequence,
                           SplitMix64& random_source);

struct SimulationSummary {
  std::uint64_t trials = 0;
  double mean_cost = 0.0;
  double std_error = 0.0;  // sample stddev / sqrt(trials); 0 for one trial
  double solve_rate = 0.0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the sequence's expected cost of repair over
/// independent trials. Deterministic for a fixed (trials, seed) pair.
SimulationSummary estimate_ecr(const TroubleshootingModel& model,
                               std::span<const ActionIndex> sequence,
                               std::uint64_t trials, std::uint64_t seed);

}  // namespace tsplan
