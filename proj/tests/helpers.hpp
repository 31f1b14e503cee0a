#pragma once

#include <random>

#include "nzd/game_model.hpp"
#include "nzd/markov.hpp"

namespace nzd::testing {

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

// interior strategies keep chains irreducible and both oracles well away
// from their singularity guards
inline MemoryOneStrategy random_strategy(std::mt19937_64& gen, double lo = 0.05,
                                         double hi = 0.95) {
  return {uniform(gen, lo, hi), uniform(gen, lo, hi), uniform(gen, lo, hi),
          uniform(gen, lo, hi)};
}

inline NoiseModel random_noise(std::mt19937_64& gen, double max_strength = 0.2) {
  const double s = uniform(gen, 0.0, max_strength);
  const double eps_share = uniform(gen, 0.0, 1.0);
  return NoiseModel::from_epsilon_r(s * eps_share, s * (1.0 - eps_share));
}

}  // namespace nzd::testing
