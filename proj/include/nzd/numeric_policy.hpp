#pragma once

namespace nzd {

// Central home for every tolerance used by the library. Tests pin these
// values; changing one is an interface change, not a tweak.
struct NumericPolicy {
  // max |alpha s_X + beta s_Y + gamma| for a relation to count as enforced
  double residual_tol = 1e-9;
  // allowed disagreement between the determinant and eigenvector payoff routes
  double oracle_tol = 1e-8;
  // |D(p, q, 1)| below this is a degenerate chain
  double singularity_tol = 1e-12;
  // second-smallest singular value of (M - I) below this: non-unique stationary
  double uniqueness_tol = 1e-9;
  // probabilities accepted within [-slack, 1 + slack], then clamped
  double feasibility_slack = 1e-9;
  // width at which delta-boundary bisection stops
  double bisection_tol = 1e-6;
};

inline double clamp01(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

}  // namespace nzd
