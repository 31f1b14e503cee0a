#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nzd/game_model.hpp"
#include "nzd/markov.hpp"
#include "nzd/zd_core.hpp"

namespace nzd {

// Coefficients shared by the closed-form constructions below.
//   A = (tau+eps)(R-P) + (eps+r)(S-T)        pinning denominator core
//   F1 = (tau+eps)R - (eps+r)S + (r-tau)P    extortion, p1 row
//   F2 = (tau+eps)R - (eps+r)T + (r-tau)P
//   J1 = (eps+r)R - (tau+eps)S + (tau-r)P    extortion, p2 row
//   J2 = (eps+r)R - (tau+eps)T + (tau-r)P
struct DerivedCoefficients {
  double A, F1, F2, J1, J2;
};

DerivedCoefficients derived_coefficients(const NoiseModel& noise,
                                         const ExpectedPayoffs& payoffs);

// Candidate strategy with feasibility bookkeeping. raw holds the exact
// solution before clamping; strategy is the clamped version and is only
// meaningful when feasible. violations lists the out-of-range components.
struct StrategyCandidate {
  bool feasible = false;
  MemoryOneStrategy strategy;
  std::array<double, 4> raw{};
  std::vector<std::string> violations;
};

StrategyCandidate make_candidate(const std::array<double, 4>& raw,
                                 const NumericPolicy& policy);

// Invert the effective-column map: find p with effective_column_x(p) = target.
// The system splits into two 2x2 blocks with determinant tau - r.
StrategyCandidate solve_nzd(const Eigen::Vector4d& target,
                            const NoiseModel& noise,
                            const NumericPolicy& policy = {});

// Payoff-pinning strategy through the free corner probabilities (p1, p4).
struct PinningResult {
  StrategyCandidate candidate;
  LinearRelation relation;    // (0, beta, gamma): beta s_Y + gamma = 0
  double pinned_value = 0.0;  // -gamma / beta, the opponent's fixed payoff
};

// Throws DegeneratePinError when (p1, p4) = (1, 0). The pinned value is
// cross-checked against the determinant route with a fixed generic opponent;
// disagreement above 1e-7 throws ConsistencyError.
PinningResult pinning_strategy(double p1, double p4, const NoiseModel& noise,
                               const ExpectedPayoffs& payoffs,
                               const NumericPolicy& policy = {});

// chi: slope, l = P + delta: baseline, phi: step size of the enforced
// relation (s_X - l) = chi (s_Y - l).
struct ExtortionSpec {
  double chi = 2.0;
  double delta = 0.0;
  double phi = 0.0;  // <= 0 means "pick max_phi / 2"

  double baseline(const ExpectedPayoffs& payoffs) const {
    return payoffs.P + delta;
  }
};

struct ExtortionResult {
  StrategyCandidate candidate;
  double phi = 0.0;      // the phi actually used
  double max_phi = 0.0;  // largest feasible phi for this (chi, delta)
  LinearRelation relation;
};

// Weak extortion: baseline raised delta above P. chi >= 1 required.
ExtortionResult weak_extortion_strategy(double chi, double delta, double phi,
                                        const NoiseModel& noise,
                                        const ExpectedPayoffs& payoffs,
                                        const NumericPolicy& policy = {});
ExtortionResult weak_extortion_strategy(const ExtortionSpec& spec,
                                        const NoiseModel& noise,
                                        const ExpectedPayoffs& payoffs,
                                        const NumericPolicy& policy = {});

// Largest phi > 0 keeping all four probabilities in [0, 1]; 0 when the
// sign pattern already fails, i.e. the (chi, delta) pair is infeasible.
double max_phi(double chi, double delta, const NoiseModel& noise,
               const ExpectedPayoffs& payoffs);

// Strict extortion with baseline exactly P. Feasible only without noise.
struct StrongExtortionResult {
  bool feasible = false;
  MemoryOneStrategy strategy;  // at phi = max_phi / 2 when feasible
  double phi = 0.0;
  // infeasibility certificate
  double error_prob = 0.0;       // eps + r driving the obstruction
  double forced_p3 = 0.0, forced_p4 = 0.0;
  double row3_requirement = 0.0;  // (T-P) - chi (S-P), must be matched by 0
  std::vector<std::string> violated_constraints;
};

StrongExtortionResult strong_extortion_feasibility(
    double chi, const NoiseModel& noise, const ExpectedPayoffs& payoffs,
    const NumericPolicy& policy = {});

// Both players' payoffs when the extortioner faces a fully cooperative
// opponent; independent of phi and, given expected payoffs, of the noise.
struct FullCooperationPayoffs {
  double s_x = 0.0, s_y = 0.0;
  double x_star = 0.0;  // opponent cooperation weight solving the pin
};

FullCooperationPayoffs fullcoop_payoffs(double chi, double delta,
                                        const ExpectedPayoffs& payoffs);

}  // namespace nzd
