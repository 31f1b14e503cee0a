#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "nzd/errors.hpp"

namespace nzd {

enum class Action : std::uint8_t { Cooperate = 0, Defect = 1 };
// Good: the opponent is perceived as having cooperated.
enum class Signal : std::uint8_t { Good = 0, Bad = 1 };

// Joint action profiles, row player X first: CC=0, CD=1, DC=2, DD=3.
// Signal profiles use the same packing: gg=0, gb=1, bg=2, bb=3, where the
// first letter is what X perceives about Y and the second what Y perceives
// about X. Private outcomes (own action, own signal): Cg=0, Cb=1, Dg=2, Db=3.
inline constexpr int kNumProfiles = 4;

inline int profile_index(Action x, Action y) {
  return 2 * static_cast<int>(x) + static_cast<int>(y);
}
inline int outcome_index(Action own, Signal seen) {
  return 2 * static_cast<int>(own) + static_cast<int>(seen);
}

// Perception-error model. With probability tau both players see the
// opponent's true action, with probability epsilon exactly one of them is
// wrong (each side equally likely), with probability r both are wrong.
// tau + 2 epsilon + r = 1 and tau - r > 0 are required throughout.
class NoiseModel {
 public:
  static NoiseModel from_epsilon_r(double epsilon, double r);
  // Default split of a single strength s = epsilon + r into epsilon = 2s/3,
  // r = s/3.
  static NoiseModel from_strength(double s);

  double tau() const { return tau_; }
  double epsilon() const { return epsilon_; }
  double r() const { return r_; }

  // s = epsilon + r, the per-player marginal probability of a wrong signal.
  double strength() const { return epsilon_ + r_; }
  // tau + epsilon: probability a given player's signal is correct.
  double correct_prob() const { return tau_ + epsilon_; }
  // epsilon + r: probability a given player's signal is wrong.
  double error_prob() const { return epsilon_ + r_; }
  double tau_minus_r() const { return tau_ - r_; }

  bool noise_free() const { return epsilon_ == 0.0 && r_ == 0.0; }

 private:
  NoiseModel(double tau, double epsilon, double r)
      : tau_(tau), epsilon_(epsilon), r_(r) {}
  double tau_, epsilon_, r_;
};

// pi(omega | a): distribution over signal profiles for each action profile.
class SignalDistribution {
 public:
  explicit SignalDistribution(const NoiseModel& noise);

  double pi(int action_profile, int signal_profile) const {
    return table_[action_profile][signal_profile];
  }
  double pi(Action x, Action y, Signal seen_by_x, Signal seen_by_y) const {
    return pi(profile_index(x, y),
              2 * static_cast<int>(seen_by_x) + static_cast<int>(seen_by_y));
  }

 private:
  std::array<std::array<double, 4>, 4> table_;
};

// Stage game paid on one's own perception of the opponent. A cooperator
// seeing good earns 1, seeing bad loses L; a defector seeing good earns
// 1 + G (temptation), seeing bad earns 0.
struct StagePayoffs {
  double G = 0.5;
  double L = 0.5;

  double realized(Action own, Signal own_signal) const {
    const bool good = own_signal == Signal::Good;
    if (own == Action::Cooperate) return good ? 1.0 : -L;
    return good ? 1.0 + G : 0.0;
  }
};

// Expected stage payoffs after averaging over perception errors. R/S/T/P keep
// their usual prisoner's dilemma roles for the row player.
struct ExpectedPayoffs {
  double R, S, T, P;

  // Row player's payoff vector over action profiles (CC, CD, DC, DD) and the
  // column player's (payoff matrix transposed).
  Eigen::Vector4d row_vector() const { return {R, S, T, P}; }
  Eigen::Vector4d col_vector() const { return {R, T, S, P}; }

  bool pd_ordering() const { return T > R && R > P && P > S; }
  void require_pd_ordering() const;
};

ExpectedPayoffs expected_stage_payoffs(const StagePayoffs& payoffs,
                                       const NoiseModel& noise);

}  // namespace nzd
