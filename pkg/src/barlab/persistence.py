"""Barcodes by mod-2 boundary reduction, Betti curves, lifetime sums.

Columns are Python integers used as GF(2) bit vectors over the filtration
order; reduction runs by decreasing dimension with the clearing shortcut.
The two lifetime-sum evaluations (bar lengths truncated at t, and the exact
integral of the Betti step function) are kept independent of each other:
their agreement is the cornerstone identity the test suite leans on.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .cech import FilteredComplex

__all__ = [
    "Barcode",
    "BettiCurve",
    "barcode",
    "betti_curve",
    "lifetime_sum",
    "lifetime_sum_by_integration",
]


@dataclass(frozen=True)
class Barcode:
    """Multiset of (birth, death) intervals for one homological degree."""

    k: int
    bars: tuple = field(default=())

    def __post_init__(self):
        bars = tuple((float(b), float(d)) for b, d in self.bars)
        for b, d in bars:
            if not b < d:
                raise ValueError(f"bar ({b}, {d}) must have birth < death")
        object.__setattr__(self, "bars", bars)

    def __len__(self) -> int:
        return len(self.bars)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "birth", "death"])
            for b, d in self.bars:
                w.writerow([self.k, repr(b), "inf" if math.isinf(d) else repr(d)])

    @classmethod
    def from_csv(cls, path) -> "Barcode":
        bars = []
        k = 0
        with open(path) as fh:
            for row in csv.DictReader(fh):
                k = int(row["k"])
                d = math.inf if row["death"] == "inf" else float(row["death"])
                bars.append((float(row["birth"]), d))
        return cls(k=k, bars=tuple(bars))


@dataclass(frozen=True)
class BettiCurve:
    """Right-continuous integer step function of the filtration parameter.

    values[i] holds on [breakpoints[i], breakpoints[i+1]); the curve is 0
    before the first breakpoint and values[-1] from the last one on.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        vals = np.asarray(self.values, dtype=np.int64)
        if bp.shape != vals.shape:
            raise ValueError("breakpoints and values must have equal length")
        if bp.size and not (np.diff(bp) > 0).all():
            raise ValueError("breakpoints must be strictly increasing")
        if (vals < 0).any():
            raise ValueError("Betti values must be nonnegative")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    def value_at(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        if self.breakpoints.size == 0:
            out = np.zeros(s.shape, dtype=np.int64)
            return out if out.ndim else int(out)
        idx = np.searchsorted(self.breakpoints, s, side="right") - 1
        out = np.where(idx >= 0, self.values[np.maximum(idx, 0)], 0)
        return out if out.ndim else int(out)

    def integral(self, t: float) -> float:
        """Exact integral of the step function over [0, t]."""
        if t < 0:
            raise ValueError("t must be nonnegative")
        total = 0.0
        bp, vals = self.breakpoints, self.values
        for i in range(bp.size):
            lo = bp[i]
            hi = bp[i + 1] if i + 1 < bp.size else math.inf
            if lo >= t:
                break
            total += vals[i] * (min(hi, t) - lo)
        return total

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["s", "beta"])
            for s, v in zip(self.breakpoints, self.values):
                w.writerow([repr(float(s)), int(v)])


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------


def _reduce(complex_: FilteredComplex):
    """Run the full mod-2 reduction; return (pivot, creators, order info)."""
    simplices = complex_.simplices
    index = {s.vertices: i for i, s in enumerate(simplices)}
    dims = [s.dim for s in simplices]
    cols = [0] * len(simplices)
    for i, s in enumerate(simplices):
        if s.dim == 0:
            continue
        mask = 0
        for f in s.facets():
            mask |= 1 << index[f]
        cols[i] = mask

    by_dim: dict = {}
    for i, d in enumerate(dims):
        by_dim.setdefault(d, []).append(i)

    pivot: dict = {}  # boundary row -> killing column
    reduced: dict = {}
    cleared: set = set()
    for d in range(complex_.max_dim, 0, -1):
        for j in by_dim.get(d, []):
            if j in cleared:
                reduced[j] = 0
                continue
            col = cols[j]
            while col:
                low = col.bit_length() - 1
                if low in pivot:
                    col ^= reduced[pivot[low]]
                else:
                    break
            reduced[j] = col
            if col:
                low = col.bit_length() - 1
                pivot[low] = j
                cleared.add(low)
    return pivot, reduced, cleared, dims


def barcode(complex_: FilteredComplex, k: int) -> Barcode:
    """Degree-k barcode of a filtered complex.

    Requires max_dim >= k+1: without the (k+1)-simplices the computed deaths
    (hence beta_k itself) would be wrong, not merely truncated.  Bars of
    zero length are dropped.
    """
    if k < 0:
        raise ValueError("degree k must be nonnegative")
    if complex_.max_dim < k + 1:
        raise ValueError(
            f"complex built up to dimension {complex_.max_dim} cannot support "
            f"degree-{k} persistence; need max_dim >= {k + 1}"
        )
    pivot, reduced, cleared, dims = _reduce(complex_)
    simplices = complex_.simplices
    bars = []
    for row, col in pivot.items():
        if dims[row] == k:
            b, d = simplices[row].value, simplices[col].value
            if b != d:
                bars.append((b, d))
    for i, s in enumerate(simplices):
        if dims[i] != k:
            continue
        is_creator = (i in cleared) or (k == 0) or (reduced.get(i, 0) == 0 and i in reduced)
        if is_creator and i not in pivot:
            bars.append((s.value, math.inf))
    bars.sort()
    return Barcode(k=k, bars=tuple(bars))


def betti_curve(bc: Barcode) -> BettiCurve:
    """Step function counting bars alive at each parameter value."""
    events: dict = {}
    for b, d in bc.bars:
        events[b] = events.get(b, 0) + 1
        if math.isfinite(d):
            events[d] = events.get(d, 0) - 1
    if not events:
        return BettiCurve(breakpoints=np.array([]), values=np.array([], dtype=np.int64))
    bps = sorted(events)
    running = 0
    vals = []
    for s in bps:
        running += events[s]
        vals.append(running)
    return BettiCurve(breakpoints=np.array(bps), values=np.array(vals, dtype=np.int64))


def lifetime_sum(bc: Barcode, t: float) -> float:
    """Total bar length with births and deaths truncated at t."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    total = 0.0
    for b, d in bc.bars:
        total += min(d, t) - min(b, t)
    return total


def lifetime_sum_by_integration(curve: BettiCurve, t: float) -> float:
    """The same quantity as the exact integral of the Betti curve on [0, t]."""
    return curve.integral(t)
