"""Pilot-resampling power estimates and target-prevalence reweighting."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aucpower.errors import DomainError, LengthMismatchError, PilotTooDegenerateError
from aucpower.mc import McConfig
from aucpower.pilot import (
    PilotDataset,
    min_n_for_power,
    power_curve_pilot,
    power_pilot,
    power_pilot_reweighted,
    resampling_weights,
)


def small_pilot(rng: np.random.Generator, n: int = 120) -> PilotDataset:
    y = (rng.random(n) < 0.4).astype(np.int8)
    y[:2] = [0, 1]  # both classes present
    sa = rng.normal(0, 1, n) + 1.1 * y
    sb = 0.7 * sa + 0.7 * rng.normal(0, 1, n) + 0.4 * y
    return PilotDataset(labels=y, scores_a=sa, scores_b=sb)


class TestWeights:
    @given(
        labels=st.lists(st.integers(0, 1), min_size=2, max_size=200).filter(
            lambda xs: 0 < sum(xs) < len(xs)
        ),
        phi=st.floats(0.01, 0.99),
    )
    @settings(max_examples=200, deadline=None)
    def test_weight_identities(self, labels, phi):
        y = np.asarray(labels, dtype=np.float64)
        w = resampling_weights(y, phi)
        assert w.shape == y.shape
        assert np.all(w > 0)
        assert abs(w.sum() - 1.0) < 1e-12
        assert abs(float(w @ y) - phi) < 1e-12

    def test_all_cases_share_one_weight(self):
        y = np.array([1, 0, 0, 1, 0, 0, 0, 1])
        w = resampling_weights(y, 0.25)
        assert len({w[i] for i in range(8) if y[i] == 1}) == 1
        assert len({w[i] for i in range(8) if y[i] == 0}) == 1

    def test_single_class_rejected(self):
        with pytest.raises(DomainError, match="case and one control"):
            resampling_weights(np.ones(5), 0.3)

    def test_phi_out_of_range_rejected(self):
        y = np.array([0, 1, 0, 1])
        for bad in (0.0, 1.0, -0.2, 1.7):
            with pytest.raises(DomainError):
                resampling_weights(y, bad)


class TestPilotDataset:
    def test_arrays_frozen_and_copied(self):
        y = np.array([0, 1, 0, 1], dtype=np.int8)
        sa = np.array([0.1, 0.9, 0.2, 0.8])
        sb = np.array([0.2, 0.7, 0.3, 0.6])
        pilot = PilotDataset(labels=y, scores_a=sa, scores_b=sb)
        with pytest.raises(ValueError):
            pilot.labels[0] = 1
        with pytest.raises(ValueError):
            pilot.scores_a[0] = 5.0
        sa[0] = 99.0  # caller mutation must not leak in
        assert pilot.scores_a[0] == 0.1

    def test_counts_and_prevalence(self):
        pilot = PilotDataset(
            labels=[0, 1, 1, 0, 0],
            scores_a=[0.1, 0.8, 0.9, 0.3, 0.2],
            scores_b=[0.2, 0.6, 0.7, 0.4, 0.1],
        )
        assert pilot.n_rows == 5
        assert pilot.n_cases == 2
        assert pilot.n_controls == 3
        assert pilot.prevalence == pytest.approx(0.4)

    def test_misaligned_lengths_rejected(self):
        with pytest.raises(LengthMismatchError):
            PilotDataset(labels=[0, 1], scores_a=[0.1], scores_b=[0.2, 0.3])


class TestPowerPilot:
    def test_deterministic_for_fixed_seed(self):
        pilot = small_pilot(np.random.default_rng(5))
        cfg = McConfig(seed=41, iterations=300)
        a = power_pilot(pilot, 150, cfg)
        b = power_pilot(pilot, 150, cfg)
        assert a == b

    def test_n_eval_may_exceed_pilot_size(self):
        pilot = small_pilot(np.random.default_rng(6), n=60)
        est = power_pilot(pilot, 500, McConfig(seed=2, iterations=100))
        assert est.n == 500
        assert 0.0 <= est.power <= 1.0

    def test_power_grows_with_n(self):
        pilot = small_pilot(np.random.default_rng(7))
        cfg = McConfig(seed=9, iterations=600)
        lo = power_pilot(pilot, 40, cfg)
        hi = power_pilot(pilot, 400, cfg)
        assert hi.power > lo.power + 0.1

    def test_n_eval_too_small_rejected(self):
        pilot = small_pilot(np.random.default_rng(8))
        with pytest.raises(DomainError, match="n_eval"):
            power_pilot(pilot, 1, McConfig(seed=1, iterations=10))

    def test_reweighting_changes_the_estimate(self):
        pilot = small_pilot(np.random.default_rng(9))
        cfg = McConfig(seed=13, iterations=600)
        plain = power_pilot(pilot, 200, cfg)
        shifted = power_pilot_reweighted(pilot, 200, 0.05, cfg)
        assert shifted != plain

    def test_reweighted_prevalence_tracks_phi(self):
        # mean case count over many weighted draws concentrates near phi * n
        pilot = small_pilot(np.random.default_rng(10), n=200)
        phi = 0.15
        w = resampling_weights(pilot.labels, phi)
        rng = np.random.default_rng(77)
        draws = 400
        n_eval = 120
        total = 0
        for _ in range(draws):
            idx = rng.choice(pilot.n_rows, size=n_eval, replace=True, p=w)
            total += int(pilot.labels[idx].sum())
        mean_prev = total / (draws * n_eval)
        se = np.sqrt(phi * (1 - phi) / (draws * n_eval))
        assert abs(mean_prev - phi) < 4 * se

    def test_identical_scores_exhaust_redraws(self):
        rng = np.random.default_rng(11)
        y = (rng.random(50) < 0.5).astype(np.int8)
        y[:2] = [0, 1]
        s = rng.normal(0, 1, 50)
        pilot = PilotDataset(labels=y, scores_a=s, scores_b=s.copy())
        cfg = McConfig(seed=3, iterations=20, max_redraws_per_iteration=5)
        with pytest.raises(PilotTooDegenerateError, match="redraws"):
            power_pilot(pilot, 30, cfg)


class TestCurveAndSearch:
    def test_curve_points_match_single_calls(self):
        pilot = small_pilot(np.random.default_rng(12))
        cfg = McConfig(seed=21, iterations=200)
        curve = power_curve_pilot(pilot, [50, 100, 200], cfg)
        assert [p.n for p in curve.points] == [50, 100, 200]
        assert curve.prevalence_override is None
        for point in curve.points:
            assert point == power_pilot(pilot, point.n, cfg)

    def test_curve_records_prevalence_override(self):
        pilot = small_pilot(np.random.default_rng(13))
        cfg = McConfig(seed=22, iterations=100)
        curve = power_curve_pilot(pilot, [60, 120], cfg, phi=0.2)
        assert curve.prevalence_override == pytest.approx(0.2)
        assert curve.points[0] == power_pilot_reweighted(pilot, 60, 0.2, cfg)

    def test_min_n_result_is_an_evaluated_point(self):
        pilot = small_pilot(np.random.default_rng(14))
        cfg = McConfig(seed=23, iterations=300)
        res = min_n_for_power(pilot, 0.5, cfg, n_min=20, n_max=2000)
        assert res.achieved.power >= 0.5
        assert res.achieved.n == res.n
        assert res.achieved in res.evaluated
        assert res.n == power_pilot(pilot, res.n, cfg).n
