#include "nzd/game_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nzd {

namespace {
void check_prob(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0) || std::isnan(v))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(v));
}
}  // namespace

NoiseModel NoiseModel::from_epsilon_r(double epsilon, double r) {
  check_prob(epsilon, "epsilon");
  check_prob(r, "r");
  const double tau = 1.0 - 2.0 * epsilon - r;
  if (tau < 0.0)
    throw std::invalid_argument(
        "tau = 1 - 2 epsilon - r is negative: epsilon = " +
        std::to_string(epsilon) + ", r = " + std::to_string(r));
  if (tau - r <= 0.0)
    throw SingularNoiseError("tau - r = " + std::to_string(tau - r) +
                             " <= 0; signals carry no information");
  return NoiseModel(tau, epsilon, r);
}

NoiseModel NoiseModel::from_strength(double s) {
  if (!(s >= 0.0) || std::isnan(s))
    throw std::invalid_argument("noise strength must be >= 0, got " +
                                std::to_string(s));
  return from_epsilon_r(2.0 * s / 3.0, s / 3.0);
}

SignalDistribution::SignalDistribution(const NoiseModel& noise) {
  const double t = noise.tau(), e = noise.epsilon(), r = noise.r();
  // Under CC the diagonal carries tau and r: both right, both wrong.
  // Row = X's signal about Y, column = Y's signal about X.
  const std::array<std::array<double, 2>, 2> cc{{{t, e}, {e, r}}};
  for (int a = 0; a < kNumProfiles; ++a) {
    // X defecting flips what Y should see (swaps the columns of the CC
    // table); Y defecting flips what X should see (swaps the rows).
    const bool x_defects = a >= 2;
    const bool y_defects = a % 2 == 1;
    for (int sx = 0; sx < 2; ++sx) {
      for (int sy = 0; sy < 2; ++sy) {
        const int row = y_defects ? 1 - sx : sx;
        const int col = x_defects ? 1 - sy : sy;
        table_[a][2 * sx + sy] = cc[row][col];
      }
    }
  }
}

void ExpectedPayoffs::require_pd_ordering() const {
  if (!pd_ordering())
    throw std::invalid_argument(
        "expected payoffs lost the dilemma ordering T > R > P > S: R = " +
        std::to_string(R) + ", S = " + std::to_string(S) + ", T = " +
        std::to_string(T) + ", P = " + std::to_string(P));
}

ExpectedPayoffs expected_stage_payoffs(const StagePayoffs& payoffs,
                                       const NoiseModel& noise) {
  const double s = noise.error_prob();
  return ExpectedPayoffs{
      1.0 - (1.0 + payoffs.L) * s,        // R: mutual cooperation
      -payoffs.L + (1.0 + payoffs.L) * s, // S: cooperate against defector
      (1.0 + payoffs.G) * (1.0 - s),      // T: defect against cooperator
      (1.0 + payoffs.G) * s,              // P: mutual defection
  };
}

}  // namespace nzd
