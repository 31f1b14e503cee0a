#pragma once

#include <array>
#include <cstdint>

#include "nzd/game_model.hpp"
#include "nzd/markov.hpp"

namespace nzd {

// Monte-Carlo ground truth for the analytic pipeline. Paid in realized
// stage payoffs, so it needs StagePayoffs (G, L), not expected ones.
struct SimConfig {
  MemoryOneStrategy x, y;
  StagePayoffs payoffs;
  std::uint64_t stages = 1'000'000;
  std::uint64_t seed = 1;
  int initial_profile = 0;  // CC; ignored if initial_coop is used
  bool use_initial_coop = false;
  double initial_coop_x = 1.0, initial_coop_y = 1.0;
};

struct SimResult {
  double mean_x = 0.0, mean_y = 0.0;
  double se_x = 0.0, se_y = 0.0;  // batch-means standard errors
  std::array<double, 4> occupancy{};  // action-profile frequencies
  std::uint64_t stages_counted = 0;   // after burn-in
  std::uint64_t burn_in = 0;
};

// Single-threaded and bit-reproducible for a given seed. Draw order per
// stage: signal profile, then X's action, then Y's. Burn-in is 1% of the
// requested stages; statistics use 100 batch means (fewer if the run is
// shorter than 100 stages after burn-in).
SimResult simulate(const SimConfig& config, const NoiseModel& noise);

}  // namespace nzd
