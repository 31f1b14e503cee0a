#pragma once

#include <array>
#include <utility>

#include <Eigen/Dense>

#include "nzd/game_model.hpp"
#include "nzd/numeric_policy.hpp"

namespace nzd {

// Memory-one behavioral strategy over private outcomes: probability of
// cooperating after (C, good), (C, bad), (D, good), (D, bad).
struct MemoryOneStrategy {
  std::array<double, 4> p{1.0, 1.0, 1.0, 1.0};

  MemoryOneStrategy() = default;
  MemoryOneStrategy(double p1, double p2, double p3, double p4)
      : p{p1, p2, p3, p4} {
    validate();
  }

  double operator[](int i) const { return p[i]; }
  double coop_prob(Action own_prev, Signal seen_prev) const {
    return p[outcome_index(own_prev, seen_prev)];
  }
  void validate() const;
};

inline const MemoryOneStrategy kAllC{1.0, 1.0, 1.0, 1.0};
inline const MemoryOneStrategy kAllD{0.0, 0.0, 0.0, 0.0};

// Row-stochastic 4x4 transition matrix over action profiles, marginalizing
// over the signal profile drawn each stage.
Eigen::Matrix4d transition_matrix(const MemoryOneStrategy& x,
                                  const MemoryOneStrategy& y,
                                  const NoiseModel& noise);

// Unique stationary distribution of a row-stochastic matrix, v^T M = v^T.
// Solved directly via least squares on the rank-augmented system; falls back
// to lazy power iteration if the residual is poor. Throws
// NonUniqueStationaryError when rank(M - I) < 3.
Eigen::Vector4d stationary_distribution(const Eigen::Matrix4d& m,
                                        const NumericPolicy& policy = {});

// Long-run expected payoffs (s_X, s_Y) through the stationary distribution.
std::pair<double, double> stationary_payoffs(const MemoryOneStrategy& x,
                                             const MemoryOneStrategy& y,
                                             const NoiseModel& noise,
                                             const ExpectedPayoffs& payoffs,
                                             const NumericPolicy& policy = {});

// 1 - |lambda_2|, the modulus gap below the Perron eigenvalue.
double spectral_gap(const Eigen::Matrix4d& m);

}  // namespace nzd
