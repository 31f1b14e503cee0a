#include "nzd/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nzd/errors.hpp"

namespace nzd {

void MemoryOneStrategy::validate() const {
  for (int i = 0; i < 4; ++i)
    if (!(p[i] >= 0.0 && p[i] <= 1.0) || std::isnan(p[i]))
      throw std::invalid_argument("strategy component p" + std::to_string(i + 1) +
                                  " = " + std::to_string(p[i]) +
                                  " outside [0, 1]");
}

Eigen::Matrix4d transition_matrix(const MemoryOneStrategy& x,
                                  const MemoryOneStrategy& y,
                                  const NoiseModel& noise) {
  const SignalDistribution dist(noise);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int a = 0; a < kNumProfiles; ++a) {
    const auto ax = static_cast<Action>(a >> 1);
    const auto ay = static_cast<Action>(a & 1);
    for (int w = 0; w < kNumProfiles; ++w) {
      const double pw = dist.pi(a, w);
      if (pw == 0.0) continue;
      const auto wx = static_cast<Signal>(w >> 1);
      const auto wy = static_cast<Signal>(w & 1);
      const double cx = x.coop_prob(ax, wx);
      const double cy = y.coop_prob(ay, wy);
      for (int b = 0; b < kNumProfiles; ++b) {
        const double px = (b >> 1) == 0 ? cx : 1.0 - cx;
        const double py = (b & 1) == 0 ? cy : 1.0 - cy;
        m(a, b) += pw * px * py;
      }
    }
  }
  return m;
}

namespace {

double fixed_point_residual(const Eigen::Vector4d& v, const Eigen::Matrix4d& m) {
  return (m.transpose() * v - v).lpNorm<Eigen::Infinity>();
}

Eigen::Vector4d normalize_clamped(Eigen::Vector4d v) {
  for (int i = 0; i < 4; ++i) v(i) = std::max(v(i), 0.0);
  const double s = v.sum();
  if (s <= 0.0)
    throw NonUniqueStationaryError("null vector has no probability content");
  return v / s;
}

Eigen::Vector4d power_iteration(const Eigen::Matrix4d& m) {
  // lazy chain (M + I)/2 has the same fixed vector and converges even for
  // periodic chains
  const Eigen::Matrix4d lazy_t = 0.5 * (m + Eigen::Matrix4d::Identity()).transpose();
  Eigen::Vector4d v = Eigen::Vector4d::Constant(0.25);
  for (long k = 0; k < 1'000'000; ++k) {
    Eigen::Vector4d next = lazy_t * v;
    next /= next.sum();
    if ((next - v).lpNorm<1>() < 1e-12) return next;
    v = next;
  }
  return v;
}

}  // namespace

Eigen::Vector4d stationary_distribution(const Eigen::Matrix4d& m,
                                        const NumericPolicy& policy) {
  const Eigen::Matrix4d a = m.transpose() - Eigen::Matrix4d::Identity();
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(a, Eigen::ComputeFullV);
  const Eigen::Vector4d& sv = svd.singularValues();
  if (sv(2) < policy.uniqueness_tol)
    throw NonUniqueStationaryError(
        "second-smallest singular value of M - I is " + std::to_string(sv(2)) +
        "; stationary distribution is not unique");

  Eigen::Vector4d v = svd.matrixV().col(3);
  const double total = v.sum();
  if (std::abs(total) > 1e-12) {
    v = normalize_clamped(v / total);
    if (fixed_point_residual(v, m) <= 1e-10) return v;
  }
  v = normalize_clamped(power_iteration(m));
  const double res = fixed_point_residual(v, m);
  if (res > 1e-10)
    throw ConsistencyError("stationary fixed-point residual " +
                           std::to_string(res) + " exceeds 1e-10");
  return v;
}

std::pair<double, double> stationary_payoffs(const MemoryOneStrategy& x,
                                             const MemoryOneStrategy& y,
                                             const NoiseModel& noise,
                                             const ExpectedPayoffs& payoffs,
                                             const NumericPolicy& policy) {
  const Eigen::Vector4d v =
      stationary_distribution(transition_matrix(x, y, noise), policy);
  return {v.dot(payoffs.row_vector()), v.dot(payoffs.col_vector())};
}

double spectral_gap(const Eigen::Matrix4d& m) {
  const Eigen::EigenSolver<Eigen::Matrix4d> es(m, false);
  std::array<double, 4> mod;
  for (int i = 0; i < 4; ++i) mod[i] = std::abs(es.eigenvalues()(i));
  std::sort(mod.begin(), mod.end(), std::greater<>());
  return std::clamp(1.0 - mod[1], 0.0, 1.0);
}

}  // namespace nzd
