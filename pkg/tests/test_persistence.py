"""Persistence engine tests.

Oracles: analytic barcodes of the square and triangle clouds, the
brute-force GF(2) rank computation, hand-integrated step functions, and
reorder-invariance of the reduction under tie shuffles.
"""

import math

import numpy as np
import pytest

from barlab.cech import FilteredComplex, build_filtered_complex
from barlab.indicators import static_betti
from barlab.persistence import (
    Barcode,
    BettiCurve,
    barcode,
    betti_curve,
    lifetime_sum,
    lifetime_sum_by_integration,
)
from barlab.sampling import make_rng

SQRT2 = math.sqrt(2.0)
SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
TRIANGLE = np.array([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])


def square_barcode(t_max=2.0):
    return barcode(build_filtered_complex(SQUARE, max_dim=2, t_max=t_max), 1)


class TestBarcode:
    def test_square(self):
        bc = square_barcode()
        assert len(bc.bars) == 1
        b, d = bc.bars[0]
        assert b == pytest.approx(1.0)
        assert d == pytest.approx(SQRT2)

    def test_triangle(self):
        bc = barcode(build_filtered_complex(TRIANGLE, max_dim=2, t_max=2.0), 1)
        assert len(bc.bars) == 1
        b, d = bc.bars[0]
        assert b == pytest.approx(1.0)
        assert d == pytest.approx(2.0 / math.sqrt(3.0))

    def test_too_few_points(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0]])
        bc = barcode(build_filtered_complex(pts, max_dim=2, t_max=3.0), 1)
        assert bc.bars == ()

    def test_max_dim_guard(self):
        cx = build_filtered_complex(SQUARE, max_dim=1, t_max=2.0)
        with pytest.raises(ValueError):
            barcode(cx, 1)

    def test_infinite_bar_at_horizon(self):
        # truncating before the diagonal enters leaves the cycle open
        bc = square_barcode(t_max=1.2)
        assert len(bc.bars) == 1
        assert bc.bars[0][0] == pytest.approx(1.0)
        assert math.isinf(bc.bars[0][1])

    def test_degree_zero(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [5.0, 0.0]])
        bc = barcode(build_filtered_complex(pts, max_dim=1, t_max=10.0), 0)
        deaths = sorted(d for _, d in bc.bars)
        assert len(bc.bars) == 3
        assert deaths[0] == pytest.approx(1.0)
        assert deaths[1] == pytest.approx(4.0)
        assert math.isinf(deaths[2])

    def test_tie_shuffle_invariance(self):
        rng = make_rng(99)
        for _ in range(20):
            pts = rng.random((7, 2))
            cx = build_filtered_complex(pts, max_dim=2, t_max=3.0)
            reference = barcode(cx, 1).bars
            groups: dict = {}
            for s in cx.simplices:
                groups.setdefault((s.value, s.dim), []).append(s)
            shuffled = []
            for key in sorted(groups):
                batch = groups[key][:]
                rng.shuffle(batch)
                shuffled.extend(batch)
            cx2 = FilteredComplex.__new__(FilteredComplex)
            cx2.simplices = shuffled
            cx2.max_dim = cx.max_dim
            cx2.t_max = cx.t_max
            cx2.n_vertices = cx.n_vertices
            assert sorted(barcode(cx2, 1).bars) == sorted(reference)

    def test_rank_oracle_random(self):
        rng = make_rng(42)
        for _ in range(30):
            m = int(rng.integers(4, 9))
            pts = rng.random((m, 2))
            cx = build_filtered_complex(pts, max_dim=2, t_max=3.0)
            curve = betti_curve(barcode(cx, 1))
            for v in sorted({s.value for s in cx.simplices}):
                assert int(curve.value_at(v)) == static_betti(pts, v, 1)

    def test_csv_roundtrip(self, tmp_path):
        bc = square_barcode(t_max=1.2)  # has an infinite bar
        path = tmp_path / "bars.csv"
        bc.to_csv(path)
        assert "inf" in path.read_text()
        back = Barcode.from_csv(path)
        assert back.k == 1
        assert back.bars == bc.bars


class TestBettiCurve:
    def test_empty(self):
        curve = betti_curve(Barcode(k=1, bars=()))
        assert int(curve.value_at(0.7)) == 0
        assert curve.integral(5.0) == 0.0

    def test_single_bar(self):
        curve = betti_curve(square_barcode())
        assert int(curve.value_at(0.5)) == 0
        assert int(curve.value_at(1.0)) == 1
        assert int(curve.value_at(1.3)) == 1
        assert int(curve.value_at(SQRT2)) == 0

    def test_two_bars_sweep(self):
        curve = betti_curve(Barcode(k=1, bars=((1.0, 3.0), (2.0, 4.0))))
        assert list(curve.breakpoints) == [1.0, 2.0, 3.0, 4.0]
        assert list(curve.values) == [1, 2, 1, 0]

    def test_validation(self):
        with pytest.raises(ValueError):
            BettiCurve(breakpoints=np.array([1.0, 1.0]), values=np.array([1, 2]))
        with pytest.raises(ValueError):
            BettiCurve(breakpoints=np.array([1.0]), values=np.array([-1]))

    def test_curve_csv(self, tmp_path):
        curve = betti_curve(Barcode(k=1, bars=((1.0, 3.0), (2.0, 4.0))))
        path = tmp_path / "curve.csv"
        curve.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "s,beta"
        assert len(lines) == 5


class TestLifetimeSum:
    def test_zero_horizon(self):
        assert lifetime_sum(square_barcode(), 0.0) == 0.0

    def test_square_value(self):
        assert lifetime_sum(square_barcode(), 2.0) == pytest.approx(SQRT2 - 1.0)

    def test_truncation_figure(self):
        # three finished bars plus two still alive at t
        bars = ((0.1, 0.4), (0.2, 0.5), (0.3, 0.6), (0.25, 2.0), (0.5, math.inf))
        t = 1.0
        want = (0.3 + 0.3 + 0.3) + (t - 0.25) + (t - 0.5)
        assert lifetime_sum(Barcode(k=1, bars=bars), t) == pytest.approx(want)

    def test_hand_integration(self):
        bc = Barcode(k=1, bars=((1.0, 3.0), (2.0, 4.0)))
        curve = betti_curve(bc)
        assert lifetime_sum_by_integration(curve, 4.0) == pytest.approx(4.0)
        assert lifetime_sum(bc, 4.0) == pytest.approx(4.0)

    def test_identity_on_random_clouds(self):
        rng = make_rng(4)
        for _ in range(50):
            pts = 4.0 * rng.random((int(rng.integers(5, 25)), 2))
            bc = barcode(build_filtered_complex(pts, max_dim=2, t_max=1.5), 1)
            curve = betti_curve(bc)
            for t in 2.0 * rng.random(10):
                assert abs(
                    lifetime_sum(bc, t) - lifetime_sum_by_integration(curve, t)
                ) <= 1e-9

    def test_monotone_lipschitz(self):
        rng = make_rng(5)
        bc = barcode(
            build_filtered_complex(3.0 * rng.random((20, 2)), max_dim=2, t_max=1.5), 1
        )
        grid = np.sort(rng.random(30) * 2.0)
        vals = [lifetime_sum(bc, t) for t in grid]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        alive = len(bc.bars)
        for (s, a), (t, b) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
            assert b - a <= alive * (t - s) + 1e-12

    def test_bar_validation(self):
        with pytest.raises(ValueError):
            Barcode(k=1, bars=((2.0, 1.0),))
        with pytest.raises(ValueError):
            Barcode(k=1, bars=((1.0, 1.0),))
