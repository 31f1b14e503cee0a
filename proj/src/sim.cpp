#include "nzd/sim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace nzd {

namespace {

// top 53 bits of the Mersenne stream; identical on every platform, unlike
// std::uniform_real_distribution
inline double unit_draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

struct BatchStats {
  double mean = 0.0, se = 0.0;
};

BatchStats batch_means(const std::vector<double>& sums,
                       const std::vector<std::uint64_t>& counts) {
  double total = 0.0;
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    total += sums[i];
    n += counts[i];
  }
  BatchStats st;
  st.mean = total / static_cast<double>(n);
  const std::size_t b = sums.size();
  if (b < 2) return st;
  double var = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    const double m = sums[i] / static_cast<double>(counts[i]);
    var += (m - st.mean) * (m - st.mean);
  }
  var /= static_cast<double>(b - 1);
  st.se = std::sqrt(var / static_cast<double>(b));
  return st;
}

}  // namespace

SimResult simulate(const SimConfig& config, const NoiseModel& noise) {
  if (config.stages < 1) throw std::invalid_argument("stages must be >= 1");
  config.x.validate();
  config.y.validate();
  if (config.initial_profile < 0 || config.initial_profile > 3)
    throw std::invalid_argument("initial profile must index CC, CD, DC or DD");

  const SignalDistribution dist(noise);
  std::mt19937_64 gen(config.seed);

  Action ax, ay;
  if (config.use_initial_coop) {
    ax = unit_draw(gen) < config.initial_coop_x ? Action::Cooperate
                                                : Action::Defect;
    ay = unit_draw(gen) < config.initial_coop_y ? Action::Cooperate
                                                : Action::Defect;
  } else {
    ax = static_cast<Action>(config.initial_profile >> 1);
    ay = static_cast<Action>(config.initial_profile & 1);
  }

  SimResult result;
  result.burn_in = config.stages / 100;
  result.stages_counted = config.stages - result.burn_in;

  const std::uint64_t batches =
      result.stages_counted < 100 ? result.stages_counted : 100;
  std::vector<double> sum_x(batches, 0.0), sum_y(batches, 0.0);
  std::vector<std::uint64_t> batch_n(batches, 0);
  std::array<std::uint64_t, 4> occupancy{};

  for (std::uint64_t stage = 0; stage < config.stages; ++stage) {
    const int profile = profile_index(ax, ay);

    // one draw for the joint signal profile, in fixed order gg, gb, bg, bb
    const double u = unit_draw(gen);
    int w = 3;
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) {
      acc += dist.pi(profile, c);
      if (u < acc) {
        w = c;
        break;
      }
    }
    const auto wx = static_cast<Signal>(w >> 1);
    const auto wy = static_cast<Signal>(w & 1);

    if (stage >= result.burn_in) {
      const std::uint64_t k = stage - result.burn_in;
      const std::uint64_t b = k * batches / result.stages_counted;
      sum_x[b] += config.payoffs.realized(ax, wx);
      sum_y[b] += config.payoffs.realized(ay, wy);
      ++batch_n[b];
      ++occupancy[profile];
    }

    // X draws the next action first, then Y
    const double coop_x = config.x.coop_prob(ax, wx);
    const double coop_y = config.y.coop_prob(ay, wy);
    ax = unit_draw(gen) < coop_x ? Action::Cooperate : Action::Defect;
    ay = unit_draw(gen) < coop_y ? Action::Cooperate : Action::Defect;
  }

  const BatchStats sx = batch_means(sum_x, batch_n);
  const BatchStats sy = batch_means(sum_y, batch_n);
  result.mean_x = sx.mean;
  result.se_x = sx.se;
  result.mean_y = sy.mean;
  result.se_y = sy.se;
  for (int i = 0; i < 4; ++i)
    result.occupancy[i] = static_cast<double>(occupancy[i]) /
                          static_cast<double>(result.stages_counted);
  return result;
}

}  // namespace nzd
