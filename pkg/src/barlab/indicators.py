"""Indicator functions on small point configurations.

These are the combinatorial kernels of every limit formula: whether k+2
balls form an empty simplex (one k-dimensional hole), whether a component
with a prescribed hole count is present, whether two clusters' ball unions
overlap.  All ball systems here use radius t/2 at parameter t, matching the
filtration convention, so the decomposition h = h+ - h- reproduces
beta_k(Čech) = 1 literally.

Also hosts the brute-force rank oracle for static Betti numbers; it shares
only the miniball primitive with the persistence reduction and is used to
cross-validate it.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .cech import meb_diameter, meb_diameter_batch3
from .estimates import LimitEstimate
from .sampling import ball_volume, make_rng

__all__ = [
    "h_plus",
    "h_minus",
    "h",
    "h_component",
    "h_ij",
    "d_overlap",
    "union_volume",
    "static_betti",
    "connected_at",
]


def _config(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("configuration must be an (m, d) array")
    if not np.isfinite(pts).all():
        raise ValueError("configuration coordinates must be finite")
    return pts


def _check_arity(pts: np.ndarray) -> int:
    m = pts.shape[0]
    if m < 3:
        raise ValueError(f"need k+2 >= 3 points for degree k >= 1, got {m}")
    return m - 2  # the degree k these points test


def h_minus(points, t: float) -> int:
    """1 iff all k+2 balls of radius t/2 share a point."""
    pts = _config(points)
    _check_arity(pts)
    if t < 0:
        raise ValueError("t must be nonnegative")
    return int(meb_diameter(pts) <= t)


def h_plus(points, t: float) -> int:
    """1 iff every (k+1)-subset's balls of radius t/2 share a point."""
    pts = _config(points)
    _check_arity(pts)
    if t < 0:
        raise ValueError("t must be nonnegative")
    m = pts.shape[0]
    for drop in range(m):
        keep = [i for i in range(m) if i != drop]
        if meb_diameter(pts[keep]) > t:
            return 0
    return 1


def h(points, t: float) -> int:
    """1 iff the k+2 points carry exactly one k-dimensional hole at t.

    Equals h_plus - h_minus: the balls form an empty (k+1)-simplex.
    """
    return h_plus(points, t) - h_minus(points, t)


def connected_at(points, t: float) -> bool:
    """Is the Čech complex at parameter t connected (edges at distance <= t)?"""
    pts = _config(points)
    m = pts.shape[0]
    if m <= 1:
        return True
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(m):
        for j in range(i + 1, m):
            if dist[i, j] <= t:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    root = find(0)
    return all(find(i) == root for i in range(m))


def h_component(points, t: float, k: int):
    """(connected, beta_k) of the configuration's Čech complex at t.

    beta_k comes from the dense rank oracle, not from the reduction, so the
    two pipelines stay independently checkable.  Rejects fewer than k+2
    points: the indicator would be identically zero there, and a caller
    asking for it is almost surely confused.
    """
    pts = _config(points)
    if pts.shape[0] < k + 2:
        raise ValueError(
            f"h_component needs at least k+2={k + 2} points, got {pts.shape[0]}"
        )
    conn = int(connected_at(pts, t))
    return conn, static_betti(pts, t, k)


def h_ij(points, t: float, k: int, j: int) -> int:
    """1 iff the complex at t is connected with beta_k exactly j."""
    if j < 1:
        raise ValueError("hole count j must be >= 1")
    conn, bk = h_component(points, t, k)
    return int(conn == 1 and bk == j)


def d_overlap(points_a, points_b, t: float, s: float) -> int:
    """1 iff the radius-t balls around A meet the radius-s balls around B.

    Two closed balls intersect iff their centers are within t+s, so this is
    a min-distance test; tangency counts.
    """
    if t < 0 or s < 0:
        raise ValueError("radii must be nonnegative")
    A = _config(points_a)
    B = _config(points_b)
    d2 = ((A[:, None, :] - B[None, :, :]) ** 2).sum(-1)
    return int(d2.min() <= (t + s) ** 2)


# ---------------------------------------------------------------------------
# Union-of-balls volume
# ---------------------------------------------------------------------------


def _two_disk_intersection(r1: float, r2: float, x: float) -> float:
    if x >= r1 + r2:
        return 0.0
    if x <= abs(r1 - r2):
        return math.pi * min(r1, r2) ** 2
    d1 = (x * x + r1 * r1 - r2 * r2) / (2 * x)
    d2 = x - d1
    a1 = max(min(d1 / r1, 1.0), -1.0)
    a2 = max(min(d2 / r2, 1.0), -1.0)
    return (
        r1 * r1 * math.acos(a1)
        - d1 * math.sqrt(max(r1 * r1 - d1 * d1, 0.0))
        + r2 * r2 * math.acos(a2)
        - d2 * math.sqrt(max(r2 * r2 - d2 * d2, 0.0))
    )


def _union_volume_mc(pts: np.ndarray, radii: np.ndarray, samples: int, rng) -> tuple:
    d = pts.shape[1]
    lo = (pts - radii[:, None]).min(axis=0)
    hi = (pts + radii[:, None]).max(axis=0)
    box = float(np.prod(hi - lo))
    draws = lo + (hi - lo) * rng.random((samples, d))
    d2 = ((draws[:, None, :] - pts[None, :, :]) ** 2).sum(-1)
    hit = (d2 <= radii[None, :] ** 2).any(axis=1)
    p = hit.mean()
    return box * p, box * math.sqrt(max(p * (1 - p), 0.0) / samples)


def _union_volume_value(pts: np.ndarray, radii: np.ndarray, samples: int, rng) -> float:
    """Internal: exact for <= 2 balls in the plane, MC otherwise."""
    m, d = pts.shape
    if m == 1:
        return ball_volume(d) * radii[0] ** d
    if m == 2 and d == 2:
        x = float(np.linalg.norm(pts[0] - pts[1]))
        return (
            math.pi * (radii[0] ** 2 + radii[1] ** 2)
            - _two_disk_intersection(radii[0], radii[1], x)
        )
    return _union_volume_mc(pts, radii, samples, rng)[0]


def _union_volume_batch(configs: np.ndarray, radii: np.ndarray, samples: int, rng,
                        chunk: int = 400) -> np.ndarray:
    """MC union volumes for a batch of center sets sharing one radius vector.

    configs: (P, m, d); radii: (m,).  Per-row bounding boxes, one hit-count
    pass per chunk.
    """
    p, m, d = configs.shape
    out = np.empty(p)
    r = radii[None, :, None]
    for lo_i in range(0, p, chunk):
        part = configs[lo_i:lo_i + chunk]
        n = part.shape[0]
        lo = (part - r).min(axis=1)
        hi = (part + r).max(axis=1)
        box = np.prod(hi - lo, axis=1)
        draws = lo[:, None, :] + (hi - lo)[:, None, :] * rng.random((n, samples, d))
        d2 = ((draws[:, :, None, :] - part[:, None, :, :]) ** 2).sum(-1)
        hits = (d2 <= (radii[None, None, :] ** 2)).any(axis=2)
        out[lo_i:lo_i + chunk] = box * hits.mean(axis=1)
    return out


def union_volume(points, radius: float, mc_samples: int = 100_000, seed=0) -> LimitEstimate:
    """Volume of the union of equal balls around the given centers.

    Exact where it is unconditionally safe (a single ball in any dimension,
    two disks in the plane); Monte Carlo hit counting over the bounding box
    otherwise, with the binomial standard error reported.
    """
    pts = _config(points)
    if not radius > 0:
        raise ValueError("radius must be positive")
    m, d = pts.shape
    if m == 1:
        return LimitEstimate(
            value=ball_volume(d) * radius ** d, std_error=0.0, method="closed-form"
        )
    if m == 2 and d == 2:
        x = float(np.linalg.norm(pts[0] - pts[1]))
        val = 2 * math.pi * radius ** 2 - _two_disk_intersection(radius, radius, x)
        return LimitEstimate(value=val, std_error=0.0, method="closed-form")
    if mc_samples < 1_000:
        raise ValueError("mc_samples below 1000 cannot give a usable estimate")
    rng = make_rng(seed)
    val, se = _union_volume_mc(pts, np.full(m, float(radius)), mc_samples, rng)
    seed_t = tuple(seed) if isinstance(seed, (list, tuple)) else (int(seed),)
    return LimitEstimate(
        value=val, std_error=se, method="monte-carlo", samples=mc_samples, seed=seed_t
    )


# ---------------------------------------------------------------------------
# Rank oracle
# ---------------------------------------------------------------------------


def _gf2_rank(columns) -> int:
    basis: dict = {}
    rank = 0
    for col in columns:
        cur = col
        while cur:
            lead = cur.bit_length() - 1
            if lead in basis:
                cur ^= basis[lead]
            else:
                basis[lead] = cur
                rank += 1
                break
    return rank


def _filtration_values(pts: np.ndarray, max_size: int) -> dict:
    """Filtration value of every subset up to max_size: meb diameter floored
    by facet values.  Bit-identical to the complex builder's convention, so
    oracle and reduction see exactly the same step locations."""
    m = pts.shape[0]
    values: dict = {(i,): 0.0 for i in range(m)}
    for size in range(2, max_size + 1):
        for verts in combinations(range(m), size):
            if size == 2:
                diff = pts[verts[0]] - pts[verts[1]]
                values[verts] = float(np.sqrt((diff ** 2).sum(-1)))
                continue
            floor = max(values[verts[:i] + verts[i + 1:]] for i in range(size))
            values[verts] = max(meb_diameter(pts[list(verts)]), floor)
    return values


def static_betti(points, t: float, k: int) -> int:
    """beta_k of the Čech complex at parameter t by dense GF(2) ranks.

    Enumerates every subset of size <= k+2 with filtration value <= t and
    returns dim ker(d_k) - rank(d_{k+1}).
    """
    pts = _config(points)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if k < 0:
        raise ValueError("k must be nonnegative")
    m = pts.shape[0]
    values = _filtration_values(pts, min(k + 2, m))

    def present(size):
        return {v for v, val in values.items() if len(v) == size and val <= t}

    if k == 0:
        edges = present(2)
        cols = [(1 << a) | (1 << b) for a, b in edges]
        return m - _gf2_rank(cols)

    up = present(k + 2)
    mid = present(k + 1)
    low = present(k)

    mid_list = sorted(mid)
    low_index = {f: i for i, f in enumerate(sorted(low))}
    mid_index = {f: i for i, f in enumerate(mid_list)}

    cols_k = []
    for s in mid_list:
        mask = 0
        for f in combinations(s, k):
            mask |= 1 << low_index[f]
        cols_k.append(mask)
    cols_k1 = []
    for s in sorted(up):
        mask = 0
        for f in combinations(s, k + 1):
            mask |= 1 << mid_index[f]
        cols_k1.append(mask)

    rank_k = _gf2_rank(cols_k)
    rank_k1 = _gf2_rank(cols_k1)
    return len(mid_list) - rank_k - rank_k1


# ---------------------------------------------------------------------------
# Batched evaluators (internal; used by the limit estimators)
# ---------------------------------------------------------------------------


def _meb_diameter_batch(subsets: np.ndarray) -> np.ndarray:
    """meb diameters over a batch of small vertex sets, shape (N, m, d)."""
    m = subsets.shape[1]
    if m == 1:
        return np.zeros(subsets.shape[0])
    if m == 2:
        return np.linalg.norm(subsets[:, 0] - subsets[:, 1], axis=-1)
    if m == 3:
        return meb_diameter_batch3(subsets)
    return np.array([meb_diameter(row) for row in subsets])


def h_pm_batch(configs: np.ndarray, t: float) -> tuple:
    """(h_plus, h_minus) over a batch of (k+2)-point configurations."""
    n, m, _ = configs.shape
    hminus = _meb_diameter_batch(configs) <= t
    hplus = np.ones(n, dtype=bool)
    for drop in range(m):
        keep = [i for i in range(m) if i != drop]
        hplus &= _meb_diameter_batch(configs[:, keep]) <= t
    return hplus, hminus


def h_batch(configs: np.ndarray, t: float) -> np.ndarray:
    hp, hm = h_pm_batch(configs, t)
    return hp & ~hm


def connected_batch(configs: np.ndarray, t: float) -> np.ndarray:
    """Connectivity of the distance-t graph for each configuration."""
    n, m, _ = configs.shape
    if m <= 1:
        return np.ones(n, dtype=bool)
    d2 = ((configs[:, :, None, :] - configs[:, None, :, :]) ** 2).sum(-1)
    adj = (d2 <= t * t).astype(np.float32)  # diagonal hits give self-loops
    reach = adj
    hops = 1
    while hops < m - 1:
        reach = np.minimum(np.matmul(reach, reach), 1.0)
        hops *= 2
    return (reach > 0).all(axis=(1, 2))
