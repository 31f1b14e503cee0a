#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nzd/errors.hpp"
#include "nzd/markov.hpp"
#include "helpers.hpp"

using namespace nzd;

TEST_CASE("strategy components must be probabilities") {
  CHECK_THROWS_AS(MemoryOneStrategy(1.2, 0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MemoryOneStrategy(0.5, -0.1, 0.5, 0.5), std::invalid_argument);
  CHECK_NOTHROW(MemoryOneStrategy(0.0, 1.0, 0.3, 0.7));
}

TEST_CASE("transition entry mixing cooperation with a defecting response") {
  const NoiseModel n = NoiseModel::from_epsilon_r(0.04, 0.02);
  const MemoryOneStrategy x{0.5, 0.5, 0.5, 0.5};
  const MemoryOneStrategy y{1.0, 0.0, 1.0, 0.0};
  const Eigen::Matrix4d m = transition_matrix(x, y, n);
  // from CC: X keeps cooperating with 1/2 regardless of signal; Y defects
  // only after a bad signal about X, which happens with eps + r = 0.06
  CHECK(m(0, 1) == doctest::Approx(0.03).epsilon(1e-15));
  CHECK(m(0, 0) == doctest::Approx(0.47).epsilon(1e-15));
}

TEST_CASE("mutual defectors lock the chain in DD") {
  const NoiseModel n = NoiseModel::from_strength(0.14);
  const Eigen::Matrix4d m = transition_matrix(kAllD, kAllD, n);
  for (int a = 0; a < 4; ++a) {
    CHECK(m(a, 3) == doctest::Approx(1.0));
    for (int b = 0; b < 3; ++b) CHECK(m(a, b) == 0.0);
  }
  const Eigen::Vector4d v = stationary_distribution(m);
  CHECK(v(3) == doctest::Approx(1.0));
}

TEST_CASE("mutual cooperators lock the chain in CC") {
  const NoiseModel n = NoiseModel::from_strength(0.14);
  const Eigen::Vector4d v =
      stationary_distribution(transition_matrix(kAllC, kAllC, n));
  CHECK(v(0) == doctest::Approx(1.0));
}

TEST_CASE("rows are probability distributions for random inputs") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 300; ++trial) {
    const NoiseModel n = testing::random_noise(gen, 0.3);
    const Eigen::Matrix4d m = transition_matrix(
        testing::random_strategy(gen, 0.0, 1.0),
        testing::random_strategy(gen, 0.0, 1.0), n);
    for (int a = 0; a < 4; ++a) {
      CHECK(m.row(a).sum() == doctest::Approx(1.0).epsilon(1e-10));
      for (int b = 0; b < 4; ++b) {
        CHECK(m(a, b) >= 0.0);
        CHECK(m(a, b) <= 1.0);
      }
    }
  }
}

TEST_CASE("noise-free matrix reduces to the classic memory-one form") {
  // independent construction: with perfect signals each player reacts to the
  // opponent's actual action, so the matrix factors directly
  std::mt19937_64 gen(29);
  const NoiseModel clean = NoiseModel::from_strength(0.0);
  for (int trial = 0; trial < 50; ++trial) {
    const MemoryOneStrategy x = testing::random_strategy(gen, 0.0, 1.0);
    const MemoryOneStrategy y = testing::random_strategy(gen, 0.0, 1.0);
    const Eigen::Matrix4d m = transition_matrix(x, y, clean);
    for (int a = 0; a < 4; ++a) {
      const bool xc = a < 2, yc = a % 2 == 0;
      // X's outcome index depends on X's action and Y's action (the signal
      // is exact); same for Y
      const double px = x[(xc ? 0 : 2) + (yc ? 0 : 1)];
      const double py = y[(yc ? 0 : 2) + (xc ? 0 : 1)];
      CHECK(m(a, 0) == doctest::Approx(px * py).epsilon(1e-14));
      CHECK(m(a, 1) == doctest::Approx(px * (1 - py)).epsilon(1e-14));
      CHECK(m(a, 2) == doctest::Approx((1 - px) * py).epsilon(1e-14));
      CHECK(m(a, 3) == doctest::Approx((1 - px) * (1 - py)).epsilon(1e-14));
    }
  }
}

TEST_CASE("stationary vector is a fixed point with unit mass") {
  std::mt19937_64 gen(31);
  const NoiseModel n = NoiseModel::from_strength(0.06);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Matrix4d m = transition_matrix(
        testing::random_strategy(gen), testing::random_strategy(gen), n);
    const Eigen::Vector4d v = stationary_distribution(m);
    CHECK(v.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.minCoeff() >= 0.0);
    CHECK((m.transpose() * v - v).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("two absorbing states are reported as non-unique") {
  // grim pair: cooperate after good standing, never recover after bad; CC
  // and DD both absorb even under noise
  const MemoryOneStrategy grim{1.0, 1.0, 0.0, 0.0};
  const NoiseModel n = NoiseModel::from_strength(0.1);
  CHECK_THROWS_AS(stationary_distribution(transition_matrix(grim, grim, n)),
                  NonUniqueStationaryError);
}

TEST_CASE("stationary payoffs at the reference corners") {
  const NoiseModel n = NoiseModel::from_strength(0.14);
  const ExpectedPayoffs e = expected_stage_payoffs(StagePayoffs{0.5, 0.5}, n);

  const auto both_coop = stationary_payoffs(kAllC, kAllC, n, e);
  CHECK(both_coop.first == doctest::Approx(0.79).epsilon(1e-12));
  CHECK(both_coop.second == doctest::Approx(0.79).epsilon(1e-12));

  const auto both_defect = stationary_payoffs(kAllD, kAllD, n, e);
  CHECK(both_defect.first == doctest::Approx(0.21).epsilon(1e-12));
  CHECK(both_defect.second == doctest::Approx(0.21).epsilon(1e-12));
}

TEST_CASE("symmetric pairings earn identical payoffs") {
  std::mt19937_64 gen(37);
  for (int trial = 0; trial < 100; ++trial) {
    const NoiseModel n = testing::random_noise(gen, 0.2);
    const ExpectedPayoffs e = expected_stage_payoffs(StagePayoffs{0.5, 0.5}, n);
    const MemoryOneStrategy s = testing::random_strategy(gen);
    const auto [sx, sy] = stationary_payoffs(s, s, n, e);
    CHECK(sx == doctest::Approx(sy).epsilon(1e-12));
  }
}

TEST_CASE("spectral gap endpoints and range") {
  const NoiseModel n = NoiseModel::from_strength(0.06);
  CHECK(spectral_gap(transition_matrix(kAllD, kAllD, n)) == doctest::Approx(1.0));
  CHECK(spectral_gap(Eigen::Matrix4d::Identity()) == doctest::Approx(0.0));

  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 100; ++trial) {
    const double gap = spectral_gap(transition_matrix(
        testing::random_strategy(gen), testing::random_strategy(gen), n));
    CHECK(gap > 0.0);
    CHECK(gap <= 1.0);
  }
}

TEST_CASE("equal-strength splits may reshuffle the matrix but not payoffs") {
  const NoiseModel split_a = NoiseModel::from_epsilon_r(0.10, 0.00);
  const NoiseModel split_b = NoiseModel::from_epsilon_r(0.02, 0.08);
  const MemoryOneStrategy x{0.9, 0.2, 0.7, 0.1};
  const MemoryOneStrategy y{0.3, 0.8, 0.4, 0.6};
  const Eigen::Matrix4d ma = transition_matrix(x, y, split_a);
  const Eigen::Matrix4d mb = transition_matrix(x, y, split_b);
  // the CC->CD entry shifts by (p1-p2)(q1-q2) * dr
  CHECK(std::abs(ma(0, 1) - mb(0, 1)) > 1e-3);

  const ExpectedPayoffs ea = expected_stage_payoffs(StagePayoffs{0.5, 0.5}, split_a);
  const ExpectedPayoffs eb = expected_stage_payoffs(StagePayoffs{0.5, 0.5}, split_b);
  CHECK(ea.R == doctest::Approx(eb.R).epsilon(1e-15));
}
