#include "nzd/synthesis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nzd/errors.hpp"

namespace nzd {

namespace {

constexpr double kCoefZero = 1e-13;  // treat affine coefficients below this as 0

std::string range_violation(int i, double v) {
  return "p" + std::to_string(i + 1) + " = " + std::to_string(v) +
         " outside [0, 1]";
}

Eigen::Vector4d raw_effective_column_x(const std::array<double, 4>& p,
                                       const NoiseModel& noise) {
  const double a = noise.correct_prob(), b = noise.error_prob();
  return {a * p[0] + b * p[1] - 1.0, b * p[0] + a * p[1] - 1.0,
          a * p[2] + b * p[3], b * p[2] + a * p[3]};
}

// exact-identity check on unclamped values, so boundary clamping can never
// trip it
void cross_check_relation(const std::array<double, 4>& raw,
                          const NoiseModel& noise,
                          const ExpectedPayoffs& payoffs,
                          const LinearRelation& rel, const char* what) {
  const Eigen::Vector4d want = rel.alpha * payoffs.row_vector() +
                               rel.beta * payoffs.col_vector() +
                               rel.gamma * Eigen::Vector4d::Ones();
  const double res =
      (raw_effective_column_x(raw, noise) - want).lpNorm<Eigen::Infinity>();
  if (res > 1e-9)
    throw ConsistencyError(std::string(what) +
                           ": closed form does not reproduce its own relation, "
                           "residual " + std::to_string(res));
}

}  // namespace

DerivedCoefficients derived_coefficients(const NoiseModel& noise,
                                         const ExpectedPayoffs& payoffs) {
  const double a = noise.correct_prob(), b = noise.error_prob();
  const double tr = noise.tau_minus_r();
  const double R = payoffs.R, S = payoffs.S, T = payoffs.T, P = payoffs.P;
  return {a * (R - P) + b * (S - T),
          a * R - b * S - tr * P,
          a * R - b * T - tr * P,
          b * R - a * S + tr * P,
          b * R - a * T + tr * P};
}

StrategyCandidate make_candidate(const std::array<double, 4>& raw,
                                 const NumericPolicy& policy) {
  StrategyCandidate c;
  c.raw = raw;
  c.feasible = true;
  std::array<double, 4> clamped{};
  for (int i = 0; i < 4; ++i) {
    if (raw[i] < -policy.feasibility_slack ||
        raw[i] > 1.0 + policy.feasibility_slack) {
      c.feasible = false;
      c.violations.push_back(range_violation(i, raw[i]));
    }
    clamped[i] = clamp01(raw[i]);
  }
  c.strategy = MemoryOneStrategy(clamped[0], clamped[1], clamped[2], clamped[3]);
  return c;
}

StrategyCandidate solve_nzd(const Eigen::Vector4d& target,
                            const NoiseModel& noise,
                            const NumericPolicy& policy) {
  const double a = noise.correct_prob(), b = noise.error_prob();
  const double tr = noise.tau_minus_r();  // determinant of both 2x2 blocks
  const double p1 = (a * (target(0) + 1.0) - b * (target(1) + 1.0)) / tr;
  const double p2 = (a * (target(1) + 1.0) - b * (target(0) + 1.0)) / tr;
  const double p3 = (a * target(2) - b * target(3)) / tr;
  const double p4 = (a * target(3) - b * target(2)) / tr;
  return make_candidate({p1, p2, p3, p4}, policy);
}

PinningResult pinning_strategy(double p1, double p4, const NoiseModel& noise,
                               const ExpectedPayoffs& payoffs,
                               const NumericPolicy& policy) {
  payoffs.require_pd_ordering();
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p4 >= 0.0 && p4 <= 1.0))
    throw std::invalid_argument("pinning corners (p1, p4) must lie in [0, 1]");
  const double h = 1.0 - p1 + p4;
  if (h == 0.0)
    throw DegeneratePinError(
        "(p1, p4) = (1, 0) pins nothing: the target value is 0/0");

  const double a = noise.correct_prob(), b = noise.error_prob();
  const double tr = noise.tau_minus_r();
  const double A = derived_coefficients(noise, payoffs).A;
  if (std::abs(A) < 1e-15)
    throw std::invalid_argument(
        "pinning denominator (tau+eps)(R-P) + (eps+r)(S-T) vanishes");

  const double R = payoffs.R, S = payoffs.S, T = payoffs.T, P = payoffs.P;
  const double p2 = p1 + (R - T) * h / A;
  const double p3 = p4 + (P - S) * h / A;

  PinningResult result;
  result.candidate = make_candidate({p1, p2, p3, p4}, policy);

  const double beta = tr * (p1 - p2) / (R - T);
  const double gamma = p1 - 1.0 + beta * (b * T - a * R) / tr;
  result.relation = {0.0, beta, gamma};
  result.pinned_value = -gamma / beta;

  cross_check_relation(result.candidate.raw, noise, payoffs, result.relation,
                       "pinning");
  // closed-form value of the pin, independent route
  const double direct =
      ((1.0 - p1) * (a * P - b * S) + p4 * (a * R - b * T)) / (h * tr);
  if (std::abs(direct - result.pinned_value) > 1e-7)
    throw ConsistencyError("pinning: relation value " +
                           std::to_string(result.pinned_value) +
                           " disagrees with closed form " +
                           std::to_string(direct));

  if (result.candidate.feasible) {
    // generic fixed opponent; degenerate pairings fall through to the backup
    static const MemoryOneStrategy kProbe{0.31, 0.76, 0.18, 0.64};
    static const MemoryOneStrategy kProbe2{0.47, 0.12, 0.83, 0.29};
    for (const auto* q : {&kProbe, &kProbe2}) {
      try {
        const double sy = determinant_score(result.candidate.strategy, *q,
                                            noise, payoffs.col_vector(), policy);
        if (std::abs(sy - result.pinned_value) > 1e-7)
          throw ConsistencyError(
              "pinning: determinant route gives " + std::to_string(sy) +
              ", closed form " + std::to_string(result.pinned_value));
        break;
      } catch (const DegenerateChainError&) {
        continue;
      }
    }
  }
  return result;
}

namespace {

// p_i = base_i + c_i phi with base = (1, 1, 0, 0)
struct AffineStrategy {
  std::array<double, 4> c{};
};

AffineStrategy extortion_coefficients(double chi, double delta,
                                      const NoiseModel& noise,
                                      const ExpectedPayoffs& payoffs) {
  const auto d = derived_coefficients(noise, payoffs);
  const double a = noise.correct_prob(), b = noise.error_prob();
  const double tr = noise.tau_minus_r();
  const double K =
      (payoffs.T - payoffs.P) - chi * (payoffs.S - payoffs.P);
  const double shift = (chi - 1.0) * delta;
  return {{(d.F1 - chi * d.F2) / tr + shift,
           -(d.J1 - chi * d.J2) / tr + shift,
           a * K / tr + shift,
           -b * K / tr + shift}};
}

double max_phi_from(const AffineStrategy& aff) {
  double bound = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    double c = aff.c[i];
    if (std::abs(c) < kCoefZero) c = 0.0;
    if (i < 2) {
      // p1, p2 start at 1 and must not rise
      if (c > 0.0) return 0.0;
      if (c < 0.0) bound = std::min(bound, -1.0 / c);
    } else {
      // p3, p4 start at 0 and must not fall
      if (c < 0.0) return 0.0;
      if (c > 0.0) bound = std::min(bound, 1.0 / c);
    }
  }
  return std::isfinite(bound) ? bound : 0.0;
}

std::vector<std::string> sign_violations(const AffineStrategy& aff) {
  std::vector<std::string> v;
  static const char* kNames[4] = {"p1 rises above 1", "p2 rises above 1",
                                  "p3 falls below 0", "p4 falls below 0"};
  for (int i = 0; i < 4; ++i) {
    const double c = aff.c[i];
    if (std::abs(c) < kCoefZero) continue;
    if ((i < 2 && c > 0.0) || (i >= 2 && c < 0.0))
      v.push_back(std::string(kNames[i]) + " for every phi > 0 (coefficient " +
                  std::to_string(c) + ")");
  }
  return v;
}

}  // namespace

double max_phi(double chi, double delta, const NoiseModel& noise,
               const ExpectedPayoffs& payoffs) {
  payoffs.require_pd_ordering();
  if (chi < 1.0) throw std::invalid_argument("chi must be >= 1");
  return max_phi_from(extortion_coefficients(chi, delta, noise, payoffs));
}

ExtortionResult weak_extortion_strategy(double chi, double delta, double phi,
                                        const NoiseModel& noise,
                                        const ExpectedPayoffs& payoffs,
                                        const NumericPolicy& policy) {
  payoffs.require_pd_ordering();
  if (chi < 1.0) throw std::invalid_argument("chi must be >= 1");
  if (delta < 0.0)
    throw std::invalid_argument("delta must be >= 0; the baseline cannot sit "
                                "below mutual defection");

  const AffineStrategy aff = extortion_coefficients(chi, delta, noise, payoffs);
  ExtortionResult result;
  result.max_phi = max_phi_from(aff);

  double use_phi = phi;
  if (phi <= 0.0) {
    if (result.max_phi == 0.0) {
      // no phi works; report the direction of failure at unit step
      result.phi = 0.0;
      std::array<double, 4> raw{1.0 + aff.c[0], 1.0 + aff.c[1], aff.c[2],
                                aff.c[3]};
      result.candidate = make_candidate(raw, policy);
      result.candidate.feasible = false;
      result.candidate.violations = sign_violations(aff);
      result.relation = {1.0, -chi, (chi - 1.0) * (payoffs.P + delta)};
      return result;
    }
    use_phi = result.max_phi / 2.0;
  }

  result.phi = use_phi;
  const std::array<double, 4> raw{
      1.0 + aff.c[0] * use_phi, 1.0 + aff.c[1] * use_phi, aff.c[2] * use_phi,
      aff.c[3] * use_phi};
  result.candidate = make_candidate(raw, policy);
  result.relation = {use_phi, -use_phi * chi,
                     use_phi * (chi - 1.0) * (payoffs.P + delta)};
  cross_check_relation(raw, noise, payoffs, result.relation, "extortion");
  return result;
}

ExtortionResult weak_extortion_strategy(const ExtortionSpec& spec,
                                        const NoiseModel& noise,
                                        const ExpectedPayoffs& payoffs,
                                        const NumericPolicy& policy) {
  return weak_extortion_strategy(spec.chi, spec.delta, spec.phi, noise,
                                 payoffs, policy);
}

StrongExtortionResult strong_extortion_feasibility(
    double chi, const NoiseModel& noise, const ExpectedPayoffs& payoffs,
    const NumericPolicy& policy) {
  payoffs.require_pd_ordering();
  if (chi < 1.0) throw std::invalid_argument("chi must be >= 1");

  StrongExtortionResult result;
  result.error_prob = noise.error_prob();
  result.row3_requirement =
      (payoffs.T - payoffs.P) - chi * (payoffs.S - payoffs.P);

  if (noise.error_prob() > 0.0) {
    // row DD reads (eps+r) p3 + (tau+eps) p4 = 0; with positive weights this
    // forces p3 = p4 = 0, and then row DC cannot reach its positive target
    result.feasible = false;
    result.forced_p3 = 0.0;
    result.forced_p4 = 0.0;
    result.violated_constraints = {
        "row DD: (eps+r) p3 + (tau+eps) p4 = 0 forces p3 = p4 = 0",
        "row DC: (tau+eps) p3 + (eps+r) p4 = phi [(T-P) - chi (S-P)] > 0 "
        "is unreachable with p3 = p4 = 0"};
    return result;
  }

  const ExtortionResult weak =
      weak_extortion_strategy(chi, 0.0, 0.0, noise, payoffs, policy);
  result.feasible = weak.candidate.feasible;
  if (result.feasible) {
    result.strategy = weak.candidate.strategy;
    result.phi = weak.phi;
  } else {
    result.violated_constraints = weak.candidate.violations;
  }
  return result;
}

FullCooperationPayoffs fullcoop_payoffs(double chi, double delta,
                                        const ExpectedPayoffs& payoffs) {
  payoffs.require_pd_ordering();
  if (chi < 1.0) throw std::invalid_argument("chi must be >= 1");
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");

  const double R = payoffs.R, S = payoffs.S, T = payoffs.T, P = payoffs.P;
  const double C = (T - R) + chi * (R - S);  // > 0 under the dilemma ordering
  const double l = P + delta;

  FullCooperationPayoffs out;
  out.s_x = (chi * (R * (T - S) - P * (T - R)) - (chi - 1.0) * (T - R) * delta +
             P * (T - R)) /
            C;
  out.s_y = l + (out.s_x - l) / chi;
  out.x_star = ((T - l) - chi * (S - l)) / C;
  return out;
}

}  // namespace nzd
