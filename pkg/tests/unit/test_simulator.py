"""Test Monte-Carlo request simulation"""

import math

import numpy as np
import pytest

from app.caching.cost import CostParams
from app.caching.optimizer import exhaustive_oracle
from app.caching.popularity import build_catalog
from app.caching.simulator import (
    SimConfig,
    pool_trials,
    run_trial,
    run_trials,
    sample_bs_count,
    sample_bs_positions,
    trial_rng,
    truncated_poisson_mean,
    validate_model,
)
from app.exceptions import InfeasibleLayoutException, SimulationException, ValidationException
from app.schemas.simulation import TrialResult


def test_expected_bs_count():
    cfg = SimConfig(radius=100.0, density=2e-4)
    assert cfg.expected_bs_count == pytest.approx(2 * math.pi)
    assert truncated_poisson_mean(cfg.expected_bs_count) == pytest.approx(6.2950, abs=1e-4)
    assert truncated_poisson_mean(100.0) == pytest.approx(100.0)


@pytest.mark.parametrize("kwargs", [
    {"radius": 0.0},
    {"density": -1.0},
    {"fixed_bs_count": 0},
    {"requests_per_trial": 0},
    {"trials": 0},
])
def test_sim_config_validation(kwargs):
    with pytest.raises(ValidationException):
        SimConfig(**kwargs)


def test_bs_counts_are_zero_truncated_poisson():
    cfg = SimConfig()
    rng = np.random.default_rng(5)
    counts = np.array([sample_bs_count(cfg, rng) for _ in range(100_000)])
    assert counts.min() >= 1
    assert counts.mean() == pytest.approx(truncated_poisson_mean(cfg.expected_bs_count), rel=0.01)
    assert sample_bs_count(SimConfig(fixed_bs_count=4), np.random.default_rng(0)) == 4


def test_small_disk_never_returns_zero_stations():
    cfg = SimConfig(radius=1.0, density=0.05)
    rng = np.random.default_rng(9)
    assert all(sample_bs_count(cfg, rng) >= 1 for _ in range(200))


def test_bs_positions_inside_disk():
    cfg = SimConfig(radius=50.0)
    positions = sample_bs_positions(1000, cfg, np.random.default_rng(1))
    assert positions.shape == (1000, 2)
    assert np.all(np.hypot(positions[:, 0], positions[:, 1]) <= 50.0)


def test_tiny_instance_matches_analytic(tiny_catalog, per_request_costs):
    result = run_trial(2, 2, 0, tiny_catalog, per_request_costs, 200_000, trial_rng(0, 0))
    assert result.analytic_cost_per_request == pytest.approx(2.25)
    assert abs(result.z_score) <= 3
    assert result.analytic_local_hit_fraction == pytest.approx(0.25)
    p = result.analytic_local_hit_fraction
    assert abs(result.local_hit_fraction - p) <= 3 * math.sqrt(p * (1 - p) / result.requests)


def test_fractions_and_cost_identity(default_catalog):
    c = CostParams(alpha=1.5, mu_br=4.0)
    result = run_trial(6, 50, 10, default_catalog, c, 50_000, trial_rng(1, 0))
    total = result.empirical_ran_fraction + result.empirical_backhaul_fraction + result.local_hit_fraction
    assert total == pytest.approx(1.0, abs=1e-12)
    expected = c.alpha * result.empirical_ran_fraction + c.beta * result.empirical_backhaul_fraction
    assert result.empirical_cost_per_request == pytest.approx(expected, rel=1e-9)


def test_optimal_layout_matches_analytic(default_catalog, per_request_costs):
    r_opt = exhaustive_oracle(6, 50, default_catalog, per_request_costs).r_opt
    result = run_trial(6, 50, r_opt, default_catalog, per_request_costs, 1_000_000, trial_rng(42, 0))
    gap = result.empirical_cost_per_request - result.analytic_cost_per_request
    assert abs(gap) <= 3 * result.std_error
    assert abs(gap) <= 0.01 * result.analytic_cost_per_request


def test_pooled_trials_within_three_standard_errors(default_catalog, per_request_costs):
    cfg = SimConfig(fixed_bs_count=6, requests_per_trial=200_000, trials=5, seed=42)
    pooled = pool_trials(run_trials(cfg, 50, 10, default_catalog, per_request_costs))
    assert abs(pooled["empirical"] - pooled["analytic"]) <= 3 * pooled["std_error"]


def test_trials_are_deterministic(default_catalog, per_request_costs):
    cfg = SimConfig(requests_per_trial=5_000, trials=3, seed=7)
    first = run_trials(cfg, 50, 40, default_catalog, per_request_costs)
    second = run_trials(cfg, 50, 40, default_catalog, per_request_costs)
    assert first == second


def test_literal_mode_is_rejected(tiny_catalog, literal_costs):
    with pytest.raises(SimulationException):
        run_trial(2, 2, 0, tiny_catalog, literal_costs, 100, trial_rng(0, 0))


def test_validate_model_grid(default_catalog, per_request_costs):
    cfg = SimConfig(fixed_bs_count=6, requests_per_trial=50_000, trials=4, seed=3)
    report = validate_model(cfg, 50, default_catalog, per_request_costs, [0, 10, 25, 40, 50], z_threshold=4.0)
    assert report.evaluated == 5
    assert report.infeasible == 0
    assert report.passed
    assert all(row.trials == 4 for row in report.rows)


def test_validate_model_flags_infeasible(per_request_costs):
    cfg = SimConfig(fixed_bs_count=3, requests_per_trial=1_000, trials=2)
    report = validate_model(cfg, 4, build_catalog(8, 0.8), per_request_costs, [0, 3])
    assert report.infeasible == 1
    assert report.evaluated == 1
    assert not report.rows[0].feasible
    assert "redundant_count" in report.rows[0].note
    assert report.rows[0].skipped_trials == 2
    assert report.rows[1].skipped_trials == 0 and report.rows[1].bs_counts == [3, 3]


def test_validate_model_empty_grid(default_catalog, per_request_costs):
    report = validate_model(SimConfig(trials=1), 50, default_catalog, per_request_costs, [])
    assert report.rows == []
    assert report.passed


def test_ppp_trials_skip_oversized_station_counts(default_catalog, per_request_costs):
    # R=0 with M=50, F=500 fits at most 10 BSs
    skipped = 0
    for seed in range(20):
        cfg = SimConfig(requests_per_trial=1_000, trials=20, seed=seed)
        row = validate_model(cfg, 50, default_catalog, per_request_costs, [0]).rows[0]
        assert row.feasible
        assert row.trials + row.skipped_trials == 20
        assert len(row.bs_counts) == row.trials
        assert all(1 <= n <= 10 for n in row.bs_counts)
        assert (row.note is None) == (row.skipped_trials == 0)
        skipped += row.skipped_trials
    assert skipped > 0


def test_run_trials_raises_when_no_trial_fits(per_request_costs):
    cfg = SimConfig(fixed_bs_count=3, requests_per_trial=100, trials=3)
    with pytest.raises(InfeasibleLayoutException):
        run_trials(cfg, 4, 0, build_catalog(8, 0.8), per_request_costs)


def test_recorded_positions_leave_requests_unchanged(default_catalog, per_request_costs):
    plain = SimConfig(requests_per_trial=2_000, trials=3, seed=4)
    recorded = SimConfig(requests_per_trial=2_000, trials=3, seed=4, record_positions=True)
    without = run_trials(plain, 50, 40, default_catalog, per_request_costs)
    with_positions = run_trials(recorded, 50, 40, default_catalog, per_request_costs)

    assert [r.empirical_cost_per_request for r in with_positions] == [
        r.empirical_cost_per_request for r in without
    ]
    for result in with_positions:
        assert len(result.bs_positions) == result.n_bs
        assert all(math.hypot(x, y) <= recorded.radius for x, y in result.bs_positions)
    assert all(r.bs_positions is None for r in without)


def test_validation_rows_carry_positions_on_request(default_catalog, per_request_costs):
    cfg = SimConfig(fixed_bs_count=6, requests_per_trial=1_000, trials=2, record_positions=True)
    row = validate_model(cfg, 50, default_catalog, per_request_costs, [10], z_threshold=10.0).rows[0]
    assert [len(positions) for positions in row.bs_positions] == [6, 6]
    assert validate_model(
        SimConfig(fixed_bs_count=6, requests_per_trial=1_000, trials=2), 50, default_catalog, per_request_costs, [10]
    ).rows[0].bs_positions is None


def _trial(empirical, analytic, std_error):
    return TrialResult(
        n_bs=2, redundant_count=0, requests=1,
        empirical_cost_per_request=empirical, empirical_ran_fraction=0.0, empirical_backhaul_fraction=0.0,
        local_hit_fraction=1.0, analytic_cost_per_request=analytic, analytic_local_hit_fraction=0.25,
        std_error=std_error,
    )


def test_pool_trials_zero_standard_error():
    assert pool_trials([_trial(0.0, 2.25, 0.0)])["z_score"] is None
    assert pool_trials([_trial(2.25, 2.25, 0.0)])["z_score"] == 0.0
    assert pool_trials([_trial(3.0, 2.0, 0.5), _trial(1.0, 2.0, 0.5)])["z_score"] == pytest.approx(0.0)


def test_single_request_rows_fail_without_z_score(tiny_catalog, per_request_costs):
    cfg = SimConfig(fixed_bs_count=2, requests_per_trial=1, trials=1)
    report = validate_model(cfg, 2, tiny_catalog, per_request_costs, [0])
    assert report.rows[0].z_score is None
    assert report.rows[0].std_error == 0.0
    assert not report.rows[0].passed
    assert report.failed == 1
