"""Smoke tests for the nzd python package (compiled bindings)."""

import math

import pytest

import nzd


NOISE_FREE = nzd.NoiseModel.from_strength(0.0)
EVEN = nzd.StagePayoffs(G=0.5, L=0.5)


def test_noise_model():
    n = nzd.NoiseModel.from_strength(0.09)
    assert math.isclose(n.epsilon, 0.06)
    assert math.isclose(n.r, 0.03)
    assert math.isclose(n.tau + 2 * n.epsilon + n.r, 1.0)
    assert math.isclose(n.strength, 0.09)

    with pytest.raises(nzd.SingularNoiseError):
        nzd.NoiseModel.from_epsilon_r(0.2, 0.6)
    with pytest.raises(ValueError):
        nzd.NoiseModel.from_strength(-0.1)


def test_expected_payoffs():
    e = nzd.expected_stage_payoffs(EVEN, nzd.NoiseModel.from_strength(0.14))
    assert math.isclose(e.R, 0.79)
    assert math.isclose(e.S, -0.29)
    assert math.isclose(e.T, 1.29)
    assert math.isclose(e.P, 0.21)
    assert e.pd_ordering()


def test_signal_distribution_rows():
    dist = nzd.SignalDistribution(nzd.NoiseModel.from_epsilon_r(0.04, 0.02))
    for a in range(4):
        assert math.isclose(sum(dist.pi(a, w) for w in range(4)), 1.0)


def test_markov_roundtrip():
    n = nzd.NoiseModel.from_strength(0.06)
    e = nzd.expected_stage_payoffs(EVEN, n)
    x = [0.9, 0.2, 0.7, 0.1]
    y = [0.5, 0.5, 0.4, 0.6]

    m = nzd.transition_matrix(x, y, n)
    for row in m:
        assert math.isclose(sum(row), 1.0, abs_tol=1e-12)

    v = nzd.stationary_distribution(x, y, n)
    assert math.isclose(sum(v), 1.0, abs_tol=1e-10)

    s_x, s_y = nzd.stationary_payoffs(x, y, n, e)
    assert abs(s_x - nzd.determinant_score(x, y, n, e.row_vector())) < 1e-9
    assert abs(s_y - nzd.determinant_score(x, y, n, e.col_vector())) < 1e-9
    assert 0.0 < nzd.spectral_gap(x, y, n) <= 1.0


def test_degenerate_chain():
    grim = [1.0, 0.0, 0.0, 0.0]
    e = nzd.expected_stage_payoffs(EVEN, NOISE_FREE)
    with pytest.raises(nzd.DegenerateChainError):
        nzd.determinant_score(grim, grim, NOISE_FREE, e.row_vector())


def test_pinning():
    e = nzd.expected_stage_payoffs(EVEN, NOISE_FREE)
    pin = nzd.pinning_strategy(0.8, 0.1, NOISE_FREE, e)
    assert pin.candidate.feasible
    assert math.isclose(pin.candidate.strategy[1], 0.65)
    assert math.isclose(pin.candidate.strategy[2], 0.25)
    assert math.isclose(pin.pinned_value, 1.0 / 3.0)

    check = nzd.verify_linear_relation(pin.candidate.strategy, NOISE_FREE, e,
                                       pin.relation)
    assert check.enforced and check.residual < 1e-9

    for q in ([1, 1, 1, 1], [0.3, 0.9, 0.2, 0.6], [0, 0, 0, 0]):
        _, s_y = nzd.stationary_payoffs(pin.candidate.strategy, q, NOISE_FREE, e)
        assert abs(s_y - pin.pinned_value) < 1e-7

    with pytest.raises(nzd.DegeneratePinError):
        nzd.pinning_strategy(1.0, 0.0, NOISE_FREE, e)


def test_extortion():
    classic = nzd.ExpectedPayoffs(R=3, S=0, T=5, P=1)
    ex = nzd.weak_extortion_strategy(2.0, 0.0, 0.0, NOISE_FREE, classic)
    assert ex.candidate.feasible
    assert ex.max_phi > 0 and math.isclose(ex.phi, ex.max_phi / 2)

    fc = nzd.fullcoop_payoffs(2.0, 0.0, classic)
    assert math.isclose(fc.s_x, 3.5)
    assert math.isclose(fc.s_y, 2.25)

    s_x, s_y = nzd.stationary_payoffs(ex.candidate.strategy, [1, 1, 1, 1],
                                      NOISE_FREE, classic)
    assert abs(s_x - fc.s_x) < 1e-8
    assert abs(s_y - fc.s_y) < 1e-8

    n = nzd.NoiseModel.from_strength(0.06)
    e = nzd.expected_stage_payoffs(EVEN, n)
    assert nzd.max_phi(2.0, 0.0, n, e) == 0.0
    assert nzd.max_phi(2.0, 0.3, n, e) > 0.0


def test_strong_extortion():
    n = nzd.NoiseModel.from_strength(0.06)
    e = nzd.expected_stage_payoffs(EVEN, n)
    res = nzd.strong_extortion_feasibility(2.0, n, e)
    assert not res.feasible
    assert res.violated_constraints
    assert math.isclose(res.error_prob, 0.06)

    classic = nzd.ExpectedPayoffs(R=3, S=0, T=5, P=1)
    res = nzd.strong_extortion_feasibility(5.0, NOISE_FREE, classic)
    assert res.feasible
    assert all(0.0 <= p <= 1.0 for p in res.strategy)


def test_scans():
    e = nzd.expected_stage_payoffs(EVEN, NOISE_FREE)
    scan = nzd.scan_pinning(NOISE_FREE, e, resolution=15)
    assert scan.feasible_count > 0
    assert len(scan.cells) == 15 * 15
    assert scan.min_pinned >= e.P - 1e-9
    assert scan.max_pinned <= e.R + 1e-9

    steep = nzd.expected_stage_payoffs(nzd.StagePayoffs(G=1.0, L=0.5), NOISE_FREE)
    rows = nzd.scan_extortion(NOISE_FREE, steep, [2.0, 4.0],
                              delta_resolution=60).rows
    assert all(r.feasible for r in rows)
    assert all(abs(r.delta_min) <= 1e-6 for r in rows)
    assert all(abs(r.delta_max - 1.0) <= 1e-6 for r in rows)

    grid = nzd.log_spaced_grid(1.0, 20.0, 10)
    assert grid[0] == 1.0 and grid[-1] == 20.0


def test_simulate():
    n = nzd.NoiseModel.from_strength(0.14)
    res = nzd.simulate([1, 1, 1, 1], [1, 1, 1, 1], n, EVEN,
                       stages=200_000, seed=5)
    again = nzd.simulate([1, 1, 1, 1], [1, 1, 1, 1], n, EVEN,
                         stages=200_000, seed=5)
    assert res.mean_x == again.mean_x and res.se_x == again.se_x
    assert abs(res.mean_x - 0.79) < 4 * res.se_x
    assert math.isclose(sum(res.occupancy), 1.0, abs_tol=1e-12)
    assert res.burn_in == 2_000
    assert res.stages_counted == 198_000
