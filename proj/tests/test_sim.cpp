#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nzd/sim.hpp"
#include "nzd/synthesis.hpp"
#include "helpers.hpp"

using namespace nzd;

namespace {
const StagePayoffs kEven{0.5, 0.5};
}

TEST_CASE("identical configurations reproduce bit-identical results") {
  const NoiseModel n = NoiseModel::from_strength(0.1);
  SimConfig cfg;
  cfg.x = MemoryOneStrategy{0.7, 0.3, 0.6, 0.2};
  cfg.y = MemoryOneStrategy{0.4, 0.9, 0.1, 0.5};
  cfg.payoffs = kEven;
  cfg.stages = 200'000;
  cfg.seed = 0xBADC0FFEE;
  const SimResult a = simulate(cfg, n);
  const SimResult b = simulate(cfg, n);
  CHECK(a.mean_x == b.mean_x);
  CHECK(a.mean_y == b.mean_y);
  CHECK(a.se_x == b.se_x);
  for (int i = 0; i < 4; ++i) CHECK(a.occupancy[i] == b.occupancy[i]);

  cfg.seed += 1;
  const SimResult c = simulate(cfg, n);
  CHECK(a.mean_x != c.mean_x);
}

TEST_CASE("results form proper statistics") {
  const NoiseModel n = NoiseModel::from_strength(0.06);
  SimConfig cfg;
  cfg.x = MemoryOneStrategy{0.5, 0.5, 0.5, 0.5};
  cfg.y = MemoryOneStrategy{0.8, 0.2, 0.6, 0.4};
  cfg.payoffs = kEven;
  cfg.stages = 100'000;
  cfg.seed = 7;
  const SimResult res = simulate(cfg, n);
  CHECK(res.occupancy[0] + res.occupancy[1] + res.occupancy[2] +
            res.occupancy[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.se_x >= 0.0);
  CHECK(res.se_y >= 0.0);
  CHECK(res.burn_in == 1000);
  CHECK(res.stages_counted == 99'000);
}

TEST_CASE("tiny runs still work") {
  const NoiseModel n = NoiseModel::from_strength(0.1);
  SimConfig cfg;
  cfg.payoffs = kEven;
  cfg.stages = 1;
  cfg.seed = 3;
  const SimResult res = simulate(cfg, n);
  CHECK(res.burn_in == 0);
  CHECK(res.stages_counted == 1);
  CHECK(res.se_x == 0.0);
  CHECK(res.occupancy[0] == 1.0);  // starts at mutual cooperation
}

TEST_CASE("mutual defectors with perfect monitoring earn exactly nothing") {
  const NoiseModel clean = NoiseModel::from_strength(0.0);
  SimConfig cfg;
  cfg.x = kAllD;
  cfg.y = kAllD;
  cfg.payoffs = kEven;
  cfg.stages = 10'000;
  cfg.seed = 11;
  const SimResult res = simulate(cfg, clean);
  // the cooperative opening stage is burned off, leaving pure DD
  CHECK(res.mean_x == 0.0);
  CHECK(res.mean_y == 0.0);
  CHECK(res.occupancy[3] == 1.0);
}

TEST_CASE("cooperators under noise average the expected mutual payoff") {
  const NoiseModel n = NoiseModel::from_strength(0.14);
  SimConfig cfg;
  cfg.x = kAllC;
  cfg.y = kAllC;
  cfg.payoffs = kEven;
  cfg.stages = 1'000'000;
  cfg.seed = 13;
  const SimResult res = simulate(cfg, n);
  CHECK(std::abs(res.mean_x - 0.79) <= 3.0 * res.se_x);
  CHECK(std::abs(res.mean_y - 0.79) <= 3.0 * res.se_y);
  CHECK(res.se_x < 0.005);
  CHECK(res.occupancy[0] == 1.0);
}

TEST_CASE("occupancy converges to the stationary distribution") {
  std::mt19937_64 gen(17);
  const NoiseModel n = NoiseModel::from_strength(0.06);
  for (int trial = 0; trial < 5; ++trial) {
    SimConfig cfg;
    cfg.x = testing::random_strategy(gen);
    cfg.y = testing::random_strategy(gen);
    cfg.payoffs = kEven;
    cfg.stages = 1'000'000;
    cfg.seed = 1000 + trial;
    const SimResult res = simulate(cfg, n);
    const Eigen::Vector4d v =
        stationary_distribution(transition_matrix(cfg.x, cfg.y, n));
    double tv = 0.0;
    for (int i = 0; i < 4; ++i) tv += std::abs(res.occupancy[i] - v(i));
    CHECK(tv / 2.0 <= 0.01);
  }
}

TEST_CASE("simulated payoffs match the analytic stationary payoffs") {
  std::mt19937_64 gen(19);
  const NoiseModel n = NoiseModel::from_strength(0.08);
  const ExpectedPayoffs e = expected_stage_payoffs(kEven, n);
  for (int trial = 0; trial < 3; ++trial) {
    SimConfig cfg;
    cfg.x = testing::random_strategy(gen);
    cfg.y = testing::random_strategy(gen);
    cfg.payoffs = kEven;
    cfg.stages = 1'000'000;
    cfg.seed = 2000 + trial;
    const SimResult res = simulate(cfg, n);
    const auto [sx, sy] = stationary_payoffs(cfg.x, cfg.y, n, e);
    CHECK(std::abs(res.mean_x - sx) <= 3.0 * res.se_x);
    CHECK(std::abs(res.mean_y - sy) <= 3.0 * res.se_y);
  }
}

TEST_CASE("an extortion ledger balances inside simulation error") {
  const NoiseModel n = NoiseModel::from_strength(0.05);
  const ExpectedPayoffs e = expected_stage_payoffs(kEven, n);
  const double chi = 3.0, delta = 0.2;
  const ExtortionResult ex = weak_extortion_strategy(chi, delta, 0.0, n, e);
  REQUIRE(ex.candidate.feasible);

  std::mt19937_64 gen(23);
  SimConfig cfg;
  cfg.x = ex.candidate.strategy;
  cfg.y = testing::random_strategy(gen);
  cfg.payoffs = kEven;
  cfg.stages = 1'000'000;
  cfg.seed = 31;
  const SimResult res = simulate(cfg, n);
  const double l = e.P + delta;
  const double gap = (res.mean_x - l) - chi * (res.mean_y - l);
  CHECK(std::abs(gap) <= 3.0 * (res.se_x + chi * res.se_y));
}

TEST_CASE("randomized opening state is reproducible too") {
  const NoiseModel n = NoiseModel::from_strength(0.1);
  SimConfig cfg;
  cfg.x = MemoryOneStrategy{0.6, 0.4, 0.3, 0.8};
  cfg.y = cfg.x;
  cfg.payoffs = kEven;
  cfg.stages = 10'000;
  cfg.seed = 37;
  cfg.use_initial_coop = true;
  cfg.initial_coop_x = 0.5;
  cfg.initial_coop_y = 0.5;
  const SimResult a = simulate(cfg, n);
  const SimResult b = simulate(cfg, n);
  CHECK(a.mean_x == b.mean_x);
  CHECK(a.occupancy == b.occupancy);
}
