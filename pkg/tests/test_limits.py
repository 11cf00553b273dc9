"""Limit-calculus tests.

Oracles: closed-form arithmetic for c_k, scale equivariance of the
indicator integrals, a low-discrepancy (Sobol) re-estimate, the algebraic
identity tying the component integral at lambda=0 to c_k, and the moment
structure of the simulated limit processes.
"""

import math

import numpy as np
import pytest
from scipy.stats import qmc

from barlab.estimates import LimitEstimate
from barlab.limits import (
    ProcessPath,
    c_k,
    hole_count_cap,
    indicator_integral,
    mu_integral,
    simulate_V,
    simulate_V_ensemble,
    simulate_V_pm,
    simulate_Y,
    simulate_Z,
    xi_integral,
    z_covariance,
    z_mean,
)


D, K_DEG, ALPHA = 2, 1, 4.0


class TestCk:
    def test_d2_k1(self):
        assert c_k(2, 1, 4.0) == pytest.approx(math.pi / 30.0, rel=1e-14)

    def test_d3_k1(self):
        # 4pi/(3! * (5*3-3)) = pi/18
        assert c_k(3, 1, 5.0) == pytest.approx(math.pi / 18.0, rel=1e-14)

    def test_divergent_rejected(self):
        with pytest.raises(ValueError):
            c_k(2, 1, 2.0 / 3.0)
        with pytest.raises(ValueError):
            c_k(9, 1, 2.0)


class TestIndicatorIntegral:
    def test_t_zero(self):
        est = indicator_integral("h", K_DEG, D, t=0.0)
        assert est.value == 0.0 and est.std_error == 0.0

    def test_decomposition(self):
        # shared seed: the three estimates satisfy h = h+ - h- exactly
        kw = dict(mc_samples=400_000, seed=606)
        hp = indicator_integral("h_plus", K_DEG, D, t=1.0, **kw)
        hm = indicator_integral("h_minus", K_DEG, D, t=1.0, **kw)
        hh = indicator_integral("h", K_DEG, D, t=1.0, **kw)
        assert hh.value == pytest.approx(hp.value - hm.value, abs=1e-12)

    def test_scaling_equivariance(self):
        e2 = indicator_integral("h", K_DEG, D, t=2.0, mc_samples=600_000, seed=61)
        e1 = indicator_integral("h", K_DEG, D, t=1.0, mc_samples=600_000, seed=62)
        ratio = e2.value / e1.value
        se = ratio * math.hypot(e2.std_error / e2.value, e1.std_error / e1.value)
        assert abs(ratio - 16.0) <= 3.0 * se

    def test_seed_reproducibility_and_consistency(self):
        a = indicator_integral("h", K_DEG, D, t=1.0, mc_samples=200_000, seed=9)
        b = indicator_integral("h", K_DEG, D, t=1.0, mc_samples=200_000, seed=9)
        c = indicator_integral("h", K_DEG, D, t=1.0, mc_samples=200_000, seed=10)
        assert a.value == b.value
        assert abs(a.value - c.value) <= 3.0 * math.hypot(a.std_error, c.std_error)

    def test_h_minus_sobol_oracle(self):
        # quasi-random re-estimate at 4x samples within 3 SE
        est = indicator_integral("h_minus", K_DEG, D, t=1.0, mc_samples=250_000, seed=63)
        sob = qmc.Sobol(d=4, scramble=True, seed=77)
        u = sob.random(2 ** 20)
        radius = 1.0
        # map the unit cube onto two disks of radius 1 (area element exact)
        r1 = radius * np.sqrt(u[:, 0])
        a1 = 2 * math.pi * u[:, 1]
        r2 = radius * np.sqrt(u[:, 2])
        a2 = 2 * math.pi * u[:, 3]
        y = np.stack(
            [
                np.zeros((u.shape[0], 2)),
                np.stack([r1 * np.cos(a1), r1 * np.sin(a1)], axis=1),
                np.stack([r2 * np.cos(a2), r2 * np.sin(a2)], axis=1),
            ],
            axis=1,
        )
        from barlab.indicators import h_pm_batch

        frac = float(h_pm_batch(y, 1.0)[1].mean())
        vol = (math.pi * radius ** 2) ** 2
        oracle = vol * frac
        assert abs(est.value - oracle) <= 3.0 * est.std_error + 0.01

    def test_pair_kind(self):
        est = indicator_integral("pair", K_DEG, D, t=1.0, s=0.8, mc_samples=300_000, seed=64)
        solo = indicator_integral("h", K_DEG, D, t=0.8, mc_samples=300_000, seed=65)
        # h_t h_s <= h_s pointwise
        assert est.value <= solo.value + 3.0 * math.hypot(est.std_error, solo.std_error)
        with pytest.raises(ValueError):
            indicator_integral("pair", K_DEG, D, t=1.0)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            indicator_integral("nope", K_DEG, D, t=1.0)


class TestMuIntegral:
    def test_lambda_zero_identity(self):
        # mu^{(k+2,1,1)}(t,t,0)/ (k+2)! = c_k int h_t
        mu = mu_integral(3, 1, 1, 1.0, 1.0, 0.0, k=K_DEG, d=D, alpha=ALPHA,
                         mc_samples=600_000, seed=71)
        ih = indicator_integral("h", K_DEG, D, t=1.0, mc_samples=600_000, seed=72)
        lhs = mu.value / math.factorial(3)
        rhs = c_k(D, K_DEG, ALPHA) * ih.value
        se = math.hypot(mu.std_error / 6.0, c_k(D, K_DEG, ALPHA) * ih.std_error)
        assert abs(lhs - rhs) <= 3.0 * se

    def test_K_one_vanishes(self):
        est = mu_integral(3, 1, 1, 1.0, 1.0, 0.5, K=1.0)
        assert est.value == 0.0 and est.method == "closed-form"

    def test_hole_cap_shortcut(self):
        assert hole_count_cap(3, 1) == 1
        est = mu_integral(3, 2, 1, 1.0, 1.0, 0.1)
        assert est.value == 0.0 and est.method == "closed-form"

    def test_monotone_in_lambda(self):
        kw = dict(k=K_DEG, d=D, alpha=ALPHA, mc_samples=300_000, seed=73)
        hi = mu_integral(3, 1, 1, 1.0, 1.0, 0.0, **kw)
        lo = mu_integral(3, 1, 1, 1.0, 1.0, 0.1, **kw)
        assert lo.value <= hi.value + 3.0 * math.hypot(lo.std_error, hi.std_error)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            mu_integral(2, 1, 1, 1.0, 1.0, 0.0, k=1)
        with pytest.raises(ValueError):
            mu_integral(3, 0, 1, 1.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            mu_integral(3, 1, 1, 1.0, 1.0, -0.5)


class TestXiIntegral:
    def test_symmetry(self):
        kw = dict(k=K_DEG, d=D, alpha=ALPHA, mc_samples=250_000, vol_samples=4_000)
        a = xi_integral(3, 1, 3, 1, 1.0, 0.7, 0.05, 10.0, seed=81, **kw)
        b = xi_integral(3, 1, 3, 1, 0.7, 1.0, 0.05, 10.0, seed=82, **kw)
        assert abs(a.value - b.value) <= 3.0 * math.hypot(a.std_error, b.std_error)

    def test_lambda_zero_sign(self):
        # integrand reduces to -1{half-radius overlap}: nonpositive value
        est = xi_integral(3, 1, 3, 1, 1.0, 1.0, 0.0, seed=83, mc_samples=200_000)
        assert est.value <= 0.0

    def test_trivial_zero(self):
        assert xi_integral(3, 1, 3, 1, 1.0, 1.0, 0.05, K=1.0).value == 0.0
        assert xi_integral(3, 2, 3, 1, 1.0, 1.0, 0.05).value == 0.0

    def test_two_seed_consistency(self):
        kw = dict(k=K_DEG, d=D, alpha=ALPHA, mc_samples=250_000, vol_samples=4_000)
        a = xi_integral(3, 1, 3, 1, 1.0, 1.0, 0.05, 10.0, seed=84, **kw)
        b = xi_integral(3, 1, 3, 1, 1.0, 1.0, 0.05, 10.0, seed=85, **kw)
        assert abs(a.value - b.value) <= 3.0 * math.hypot(a.std_error, b.std_error)

    def test_precision_at_million_samples(self):
        # finite value with SE/|value| <= 0.1 at 1e6 samples
        est = xi_integral(3, 1, 3, 1, 1.0, 1.0, 0.05, 10.0, k=K_DEG, d=D,
                          alpha=ALPHA, mc_samples=1_000_000, vol_samples=1_000,
                          seed=86)
        assert math.isfinite(est.value) and est.value != 0.0
        assert est.std_error / abs(est.value) <= 0.1

    def test_matches_uniform_reference(self):
        # conditional two-phase estimator vs the frozen long uniform run
        # (6e7 uniform samples gave -0.0945 +/- 0.028)
        est = xi_integral(3, 1, 3, 1, 1.0, 1.0, 0.05, 10.0, k=K_DEG, d=D,
                          alpha=ALPHA, mc_samples=600_000, vol_samples=1_000,
                          seed=87)
        assert abs(est.value - (-0.0945)) <= 3.0 * math.hypot(est.std_error, 0.028)


class TestZSeries:
    def test_lambda_zero_reduces_to_intermediate(self):
        z = z_covariance(1.0, 0.8, 0.0, 6, k=K_DEG, d=D, alpha=ALPHA,
                         mc_samples=400_000, seed=91)
        pair = indicator_integral("pair", K_DEG, D, t=1.0, s=0.8,
                                  mc_samples=400_000, seed=92)
        want = c_k(D, K_DEG, ALPHA) * pair.value
        se = math.hypot(z.estimate.std_error, c_k(D, K_DEG, ALPHA) * pair.std_error)
        assert abs(z.estimate.value - want) <= 3.0 * se
        assert z.truncation_bound == 0.0

    def test_variance_nonnegative(self):
        z = z_covariance(1.0, 1.0, 0.05, 4, 10.0, mc_samples=150_000, seed=93)
        assert z.estimate.value >= 0.0

    def test_tail_bound_decreasing_in_M(self):
        bounds = [
            z_covariance(1.0, 1.0, 0.05, M, 10.0, mc_samples=2_000, seed=94).truncation_bound
            for M in (3, 4, 5, 6)
        ]
        assert all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:]))
        assert all(b > 0 for b in bounds)

    def test_mean_series_positive(self):
        zm = z_mean(1.0, 0.05, 4, 10.0, mc_samples=150_000, seed=95)
        assert zm.estimate.value > 0
        assert zm.truncation_bound > 0

    def test_M_guard(self):
        with pytest.raises(ValueError):
            z_covariance(1.0, 1.0, 0.05, 2)


class TestSimulateV:
    def test_window_guard(self):
        with pytest.raises(ValueError):
            simulate_V([1.0], K_DEG, D, ALPHA, window_radius=3.0, seed=1)

    def test_path_structure(self):
        grid = np.array([0.5, 0.75, 1.0])
        vp, vm = simulate_V_pm(grid, K_DEG, D, ALPHA, 4.0, seed=2)
        v = simulate_V(grid, K_DEG, D, ALPHA, 4.0, seed=2)
        assert np.array_equal(v.values, vp.values - vm.values)
        assert (np.diff(vp.values) >= 0).all()
        assert (np.diff(vm.values) >= 0).all()

    def test_poisson_marginal(self):
        grid = np.array([1.0])
        V, _, _ = simulate_V_ensemble(grid, K_DEG, D, ALPHA, 4.0, 2000, seed=3)
        ih = indicator_integral("h", K_DEG, D, t=1.0, mc_samples=600_000, seed=4)
        target = c_k(D, K_DEG, ALPHA) * ih.value
        mean = V[:, 0].mean()
        se = math.hypot(
            math.sqrt(V[:, 0].var(ddof=1) / 2000), c_k(D, K_DEG, ALPHA) * ih.std_error
        )
        assert abs(mean - target) <= 3.0 * se
        disp = V[:, 0].var(ddof=1) / mean
        assert 0.85 <= disp <= 1.15


class TestSimulateY:
    def test_zero_time(self):
        paths = simulate_Y(np.array([0.0, 1.0]), K_DEG, D, ALPHA,
                           mc_samples=100_000, seed=5, n_paths=200)
        assert np.allclose(paths[:, 0], 0.0)

    def test_marginal_variance(self):
        paths = simulate_Y(np.array([1.0]), K_DEG, D, ALPHA,
                           mc_samples=400_000, seed=6, n_paths=4000)
        ih = indicator_integral("h", K_DEG, D, t=1.0, mc_samples=600_000, seed=7)
        target = c_k(D, K_DEG, ALPHA) * ih.value
        var = paths[:, 0].var(ddof=1)
        se = math.hypot(var * math.sqrt(2.0 / 3999), c_k(D, K_DEG, ALPHA) * ih.std_error)
        assert abs(var - target) <= 3.0 * se

    def test_pm_brownian_covariance(self):
        grid = np.array([0.6, 1.0])
        paths = simulate_Y(grid, K_DEG, D, ALPHA, mc_samples=300_000, seed=8,
                           which="Y+", n_paths=4000)
        ihp = indicator_integral("h_plus", K_DEG, D, t=1.0, mc_samples=600_000, seed=9)
        dplus = c_k(D, K_DEG, ALPHA) * ihp.value
        emp = float(np.cov(paths.T, ddof=1)[0, 1])
        target = dplus * 0.6 ** 4
        se = 3.0 * math.hypot(
            math.sqrt((emp ** 2 + paths[:, 0].var() * paths[:, 1].var()) / 3999),
            c_k(D, K_DEG, ALPHA) * ihp.std_error * 0.6 ** 4,
        )
        assert abs(emp - target) <= se

    def test_which_guard(self):
        with pytest.raises(ValueError):
            simulate_Y([1.0], K_DEG, D, ALPHA, which="W")


class TestSimulateZ:
    def test_paths_and_csv(self, tmp_path):
        grid = np.array([0.5, 1.0])
        path = simulate_Z(grid, 0.05, 3, 10.0, k=K_DEG, d=D, alpha=ALPHA,
                          mc_samples=60_000, seed=10)
        assert path.which == "Z"
        assert path.values.shape == (2,)
        f = tmp_path / "z.csv"
        path.to_csv(f)
        lines = f.read_text().splitlines()
        assert lines[0] == "t,value"
        assert len(lines) == 3
        row = lines[1].split(",")
        float(row[0]), float(row[1])  # parseable plain floats


class TestProcessPath:
    def test_validation(self):
        with pytest.raises(ValueError):
            ProcessPath(grid=np.array([1.0, 0.5]), values=np.array([0.0, 0.0]), which="V")
        with pytest.raises(ValueError):
            ProcessPath(grid=np.array([0.5, 1.0]), values=np.array([0.5, 1.0]), which="V")
        p = ProcessPath(grid=np.array([0.5, 1.0]), values=np.array([1.0, 2.0]), which="V")
        assert p.to_dict()["which"] == "V"


def test_limit_estimate_validation():
    with pytest.raises(ValueError):
        LimitEstimate(value=1.0, std_error=-0.1, method="closed-form")
    with pytest.raises(ValueError):
        LimitEstimate(value=1.0, std_error=0.1, method="voodoo")
    with pytest.raises(ValueError):
        LimitEstimate(value=1.0, std_error=0.1, method="monte-carlo", samples=0)
    est = LimitEstimate(value=2.0, std_error=0.5, method="monte-carlo", samples=10)
    other = LimitEstimate(value=2.5, std_error=0.0, method="closed-form")
    assert est.z_against(other) == pytest.approx(1.0)


def test_mu_two_seed_consistency():
    kw = dict(k=K_DEG, d=D, alpha=ALPHA, mc_samples=200_000, vol_samples=4_000)
    a = mu_integral(3, 1, 1, 1.0, 1.0, 0.05, 10.0, seed=141, **kw)
    b = mu_integral(3, 1, 1, 1.0, 1.0, 0.05, 10.0, seed=142, **kw)
    assert a.std_error > 0 and b.std_error > 0
    assert abs(a.value - b.value) <= 3.0 * math.hypot(a.std_error, b.std_error)


def test_union_volume_two_seed_consistency():
    import numpy as np

    pts = np.array([[0.0, 0.0], [0.9, 0.1], [0.4, 0.7]])
    from barlab.indicators import union_volume

    a = union_volume(pts, 1.0, mc_samples=100_000, seed=7)
    b = union_volume(pts, 1.0, mc_samples=100_000, seed=8)
    assert abs(a.value - b.value) <= 3.0 * math.hypot(a.std_error, b.std_error)
