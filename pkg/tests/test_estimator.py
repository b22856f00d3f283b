import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hellcorr.basis import basis_eval
from hellcorr.errors import ConfigError, DegenerateDataError, DomainError, SizeError
from hellcorr.estimator import (
    EstimateConfig,
    b_hat_raw,
    beta_hat_table,
    estimate,
    eta_from_B,
    gaussian_B,
    gaussian_H2,
    normalize_b,
    pearson,
)
from hellcorr.generators import gen_gaussian


class TestScaleMaps:
    def test_endpoints(self):
        assert eta_from_B(1.0) == 0.0
        assert eta_from_B(0.0) == 1.0
        assert gaussian_B(0.0) == 1.0
        assert gaussian_B(1.0) == 0.0
        assert gaussian_H2(0.0) == 0.0

    def test_roundtrip_recovers_absolute_correlation(self):
        for rho in np.linspace(-0.99, 0.99, 67):
            assert eta_from_B(gaussian_B(rho)) == pytest.approx(abs(rho), abs=1e-12)

    def test_monotone_decreasing_in_B(self):
        b = np.linspace(0.0, 1.0, 200)
        eta = np.array([eta_from_B(v) for v in b])
        assert np.all(np.diff(eta) < 0)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            eta_from_B(1.0001)
        with pytest.raises(DomainError):
            eta_from_B(-0.0001)
        with pytest.raises(DomainError):
            gaussian_B(1.5)

    def test_near_one_stability(self):
        # naive root extraction loses half the digits here
        assert eta_from_B(gaussian_B(1e-6)) == pytest.approx(1e-6, abs=1e-10)
        assert eta_from_B(gaussian_B(0.9999)) == pytest.approx(0.9999, abs=1e-12)


class TestCoefficients:
    def test_beta_table_matches_double_loop(self):
        rng = np.random.default_rng(31)
        pts = rng.random((40, 2))
        v = rng.random(40)
        w = rng.random(40) + 0.5
        table = beta_hat_table(pts, v, 3, 4, weights=w)
        cn = 2.0 * math.sqrt(39.0) / 40.0
        for k in range(4):
            for l in range(5):
                ref = cn * sum(
                    v[i] * w[i] * basis_eval(k, pts[i, 0]) * basis_eval(l, pts[i, 1])
                    for i in range(40)
                )
                assert table[k, l] == pytest.approx(ref, abs=1e-12)

    def test_constant_cell_equals_raw_sum(self):
        rng = np.random.default_rng(32)
        pts = rng.random((25, 2))
        v = rng.random(25)
        assert beta_hat_table(pts, v, 0, 0)[0, 0] == pytest.approx(b_hat_raw(v), abs=1e-15)

    def test_normalize_known_matrix(self):
        assert normalize_b(np.array([[3.0, 4.0]])) == pytest.approx(0.6)
        assert normalize_b(np.array([[2.0]])) == 1.0
        with pytest.raises(DegenerateDataError):
            normalize_b(np.zeros((2, 2)))

    def test_b_hat_raw_formula(self):
        v = np.array([0.1, 0.2, 0.3, 0.4])
        assert b_hat_raw(v) == pytest.approx(2.0 * math.sqrt(3.0) / 4.0 * v.sum())
        with pytest.raises(SizeError):
            b_hat_raw(np.array([0.5]))


class TestEstimate:
    def test_result_fields_and_range(self):
        res = estimate(gen_gaussian(400, 0.6, seed=1))
        assert 0.0 <= res.b_normalized <= 1.0
        assert 0.0 <= res.eta <= 1.0
        assert res.transform_used == "beta66"
        assert not res.raw_mode
        assert res.cutoffs == res.cv.best
        assert not res.tie_warning

    def test_invariance_under_monotone_maps(self):
        x = gen_gaussian(300, 0.5, seed=2)
        y = np.column_stack([np.exp(x[:, 0]), x[:, 1] ** 3])
        a, b = estimate(x), estimate(y)
        assert a.eta == b.eta
        assert a.b_normalized == b.b_normalized
        assert a.cutoffs == b.cutoffs

    def test_column_swap_symmetry(self):
        x = gen_gaussian(250, 0.7, seed=3)
        a = estimate(x)
        b = estimate(x[:, ::-1])
        assert a.eta == b.eta
        assert a.b_raw == b.b_raw
        assert a.cutoffs == b.cutoffs[::-1]

    def test_fixed_cutoffs_skip_cv(self):
        res = estimate(gen_gaussian(200, 0.4, seed=4), EstimateConfig(cutoffs=(2, 3)))
        assert res.cutoffs == (2, 3)
        assert res.cv is None

    def test_raw_mode_at_zero_cutoffs(self):
        res = estimate(gen_gaussian(200, 0.4, seed=5), EstimateConfig(cutoffs=(0, 0)))
        assert res.raw_mode
        assert res.b_normalized == min(res.b_raw, 1.0)

    def test_transform_none_runs(self):
        res = estimate(gen_gaussian(200, 0.6, seed=6), EstimateConfig(transform="none"))
        assert res.transform_used == "none"
        assert 0.0 <= res.eta <= 1.0

    def test_tie_warning_propagates(self):
        x = gen_gaussian(50, 0.3, seed=7)
        x[0, 0] = x[1, 0]
        assert estimate(x).tie_warning

    def test_small_sample_rejected(self):
        with pytest.raises(SizeError):
            estimate(np.array([[0.0, 1.0], [1.0, 0.0]]))

    def test_independent_data_smaller_than_dependent(self):
        indep = estimate(gen_gaussian(500, 0.0, seed=8)).eta
        dep = estimate(gen_gaussian(500, 0.8, seed=8)).eta
        assert dep > indep


class TestConfig:
    def test_validation(self):
        with pytest.raises(ConfigError):
            EstimateConfig(transform="logit")
        with pytest.raises(ConfigError):
            EstimateConfig(kmax=21)
        with pytest.raises(ConfigError):
            EstimateConfig(lmax=-1)
        with pytest.raises(ConfigError):
            EstimateConfig(cutoffs=(1, 21))
        with pytest.raises(ConfigError):
            EstimateConfig(cutoffs=(1.5, 2))

    def test_cutoffs_coerced_to_int_tuple(self):
        cfg = EstimateConfig(cutoffs=(np.int64(2), np.int64(3)))
        assert cfg.cutoffs == (2, 3)
        assert all(type(v) is int for v in cfg.cutoffs)


class TestPearson:
    def test_matches_numpy(self):
        rng = np.random.default_rng(33)
        x = rng.normal(size=(100, 2))
        assert pearson(x) == pytest.approx(np.corrcoef(x[:, 0], x[:, 1])[0, 1], abs=1e-13)

    def test_zero_variance(self):
        x = np.column_stack([np.ones(10), np.arange(10.0)])
        with pytest.raises(DegenerateDataError):
            pearson(x)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(10, 60))
def test_eta_always_in_unit_interval(seed, n):
    res = estimate(np.random.default_rng(seed).normal(size=(n, 2)))
    assert 0.0 <= res.eta <= 1.0
    assert 0.0 <= res.b_normalized <= 1.0
