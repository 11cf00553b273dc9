"""Limit-law constants, indicator integrals, covariance series, simulators.

Everything here evaluates quantities that the empirical persistence
statistics converge to: the closed-form constant c_k, Monte Carlo indicator
integrals over pinned configurations (first point at the origin), the
mu/xi integrals behind the weak-core covariance series, its truncation with
a computable geometric tail bound, and direct simulators for the limiting
processes (integer-valued V, Gaussian Y, truncated Gaussian Z).

All y-integrals are proper: the indicators vanish once any offset leaves
the ball of radius 2t(k+1) (or 2t(i-1) for i-point components), so uniform
sampling over those balls with the exact volume factor is unbiased.  The
outer radial integral int_1^K rho^{d-1-alpha*i} ... drho is transformed by
u = rho^-(alpha*i-d), which maps [1, K) onto a bounded interval and removes
the power-law decay exactly; 64-point Gauss-Legendre finishes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import indicators as ind
from .estimates import LimitEstimate
from .sampling import ball_volume, make_rng, split_seed, sphere_area

__all__ = [
    "c_k",
    "indicator_integral",
    "mu_integral",
    "xi_integral",
    "z_covariance",
    "z_mean",
    "ZSeriesResult",
    "ProcessPath",
    "simulate_V",
    "simulate_V_pm",
    "simulate_V_ensemble",
    "simulate_Y",
    "simulate_Y_ensemble",
    "simulate_Z",
    "hole_count_cap",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)
_CHUNK = 200_000


def c_k(d: int, k: int, alpha: float) -> float:
    """s_{d-1} / ((k+2)! (alpha(k+2) - d)); the intensity constant of the
    sparse-regime limit measure."""
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    if not alpha * (k + 2) > d:
        raise ValueError(
            f"alpha(k+2)={alpha * (k + 2)} must exceed d={d}; the radial "
            "integral diverges otherwise"
        )
    return sphere_area(d) / (math.factorial(k + 2) * (alpha * (k + 2) - d))


def hole_count_cap(i: int, k: int) -> int:
    """Largest feasible beta_k of a connected complex on i vertices: each of
    the C(i, k+2) minimal vertex sets contributes at most one hole."""
    return math.comb(i, k + 2)


def _seed_tuple(seed) -> tuple:
    return tuple(seed) if isinstance(seed, (list, tuple)) else (int(seed),)


def _ball_uniform(rng, n: int, d: int, radius: float) -> np.ndarray:
    g = rng.standard_normal((n, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = radius * rng.random(n) ** (1.0 / d)
    return g * r[:, None]


# ---------------------------------------------------------------------------
# Indicator integrals over (R^d)^{k+1}
# ---------------------------------------------------------------------------

_KINDS = ("h", "h_plus", "h_minus", "pair", "pair_plus", "pair_minus")


def _kind_values(configs: np.ndarray, kind: str, t: float, s: float | None):
    if kind == "h":
        return ind.h_batch(configs, t)
    if kind == "h_plus":
        return ind.h_pm_batch(configs, t)[0]
    if kind == "h_minus":
        return ind.h_pm_batch(configs, t)[1]
    if kind == "pair":
        return ind.h_batch(configs, t) & ind.h_batch(configs, s)
    if kind == "pair_plus":
        return ind.h_pm_batch(configs, t)[0] & ind.h_pm_batch(configs, s)[0]
    if kind == "pair_minus":
        return ind.h_pm_batch(configs, t)[1] & ind.h_pm_batch(configs, s)[1]
    raise ValueError(f"unknown kind {kind!r}; expected one of {_KINDS}")


def indicator_integral(
    kind: str,
    k: int,
    d: int,
    t: float,
    s: float | None = None,
    mc_samples: int = 1_000_000,
    seed=0,
) -> LimitEstimate:
    """Monte Carlo value of the pinned indicator integral over (R^d)^{k+1}.

    kind "h"/"h_plus"/"h_minus" integrate the single-parameter indicator at
    t; the "pair" kinds integrate the product at parameters (t, s), the
    building block of the Gaussian-limit covariances.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {_KINDS}")
    if k < 1:
        raise ValueError("degree k must be >= 1")
    if t < 0 or (s is not None and s < 0):
        raise ValueError("parameters must be nonnegative")
    if kind.startswith("pair") and s is None:
        raise ValueError("pair kinds need both t and s")
    if t == 0.0 or (kind.startswith("pair") and min(t, s) == 0.0):
        return LimitEstimate(value=0.0, std_error=0.0, method="closed-form")

    # Tight support: a nonzero indicator forces every pair of the k+2 balls
    # to meet, so all offsets lie within t (within min(t, s) for products).
    radius = min(t, s) if kind.startswith("pair") else t
    volume = (ball_volume(d) * radius ** d) ** (k + 1)
    rng = make_rng(seed)
    hits = 0
    done = 0
    while done < mc_samples:
        m = min(_CHUNK, mc_samples - done)
        y = _ball_uniform(rng, m * (k + 1), d, radius).reshape(m, k + 1, d)
        configs = np.concatenate([np.zeros((m, 1, d)), y], axis=1)
        hits += int(_kind_values(configs, kind, t, s).sum())
        done += m
    p = hits / mc_samples
    se = volume * math.sqrt(max(p * (1 - p), 0.0) / mc_samples)
    return LimitEstimate(
        value=volume * p,
        std_error=se,
        method="monte-carlo",
        samples=mc_samples,
        seed=_seed_tuple(seed),
    )


# ---------------------------------------------------------------------------
# Radial quadrature after the u-substitution
# ---------------------------------------------------------------------------


def _radial_nodes(beta: float, alpha: float, K: float):
    """Nodes for int_1^K rho^{-beta-1} g(rho) drho = (1/beta) int_uK^1 g du.

    Returns (weights summing to (1-uK)/beta, rho^-alpha at the nodes).
    """
    if K < 1:
        raise ValueError("K must be >= 1 (or infinity)")
    u_lo = 0.0 if math.isinf(K) else K ** (-beta)
    u = 0.5 * (_GL_NODES + 1.0) * (1.0 - u_lo) + u_lo
    w = 0.5 * _GL_WEIGHTS * (1.0 - u_lo) / beta
    rho_neg_alpha = u ** (alpha / beta)
    return w, rho_neg_alpha


# ---------------------------------------------------------------------------
# mu and xi integrals
# ---------------------------------------------------------------------------


def _component_weights(configs, t, s, k, powers):
    """Per-row products of connected-component hole counts.

    powers "both" gives beta_k(t)*beta_k(s) on rows connected at min(t, s);
    "first" gives beta_k(t) on rows connected at t.  Used to collapse the
    j-sums: sum_j j*h^{(i,j)} = beta_k * 1{connected}.
    """
    n = configs.shape[0]
    out = np.zeros(n)
    if powers == "both":
        conn = ind.connected_batch(configs, min(t, s))
    else:
        conn = ind.connected_batch(configs, t)
    idx = np.nonzero(conn)[0]
    for row in idx:
        bt = ind.static_betti(configs[row], t, k)
        if powers == "first":
            out[row] = bt
        else:
            bs = bt if s == t else ind.static_betti(configs[row], s, k)
            out[row] = bt * bs
    return out


def _mu_core(
    i: int,
    t: float,
    s: float,
    lam: float,
    K: float,
    *,
    k: int,
    d: int,
    alpha: float,
    mc_samples: int,
    vol_samples: int,
    seed,
    weight_mode: str,
    j: int | None = None,
    jp: int | None = None,
):
    """Shared engine for mu integrals.

    weight_mode "indicator" uses h^{(i,j)}_t h^{(i,j')}_s; "both"/"first"
    use the collapsed hole-count weights (for series sums).
    """
    beta = alpha * i - d
    if beta <= 0:
        raise ValueError("alpha*i must exceed d; the radial integral diverges")
    if min(t, s if weight_mode != "first" else t) == 0.0:
        return 0.0, 0.0
    # Connectivity at both parameters confines the offsets to radius
    # min(t,s)*(i-1) (graph diameter); the mean-mode integrand only needs
    # connectivity at t.
    radius = (t if weight_mode == "first" else min(t, s)) * (i - 1)
    volume = (ball_volume(d) * radius ** d) ** (i - 1)
    w_rho, rho_neg_alpha = _radial_nodes(beta, alpha, K)
    scale = max(s, t) ** d
    rng = make_rng(seed)

    total = 0.0
    total_sq = 0.0
    done = 0
    while done < mc_samples:
        m = min(_CHUNK if i == k + 2 else 50_000, mc_samples - done)
        y = _ball_uniform(rng, m * (i - 1), d, radius).reshape(m, i - 1, d)
        configs = np.concatenate([np.zeros((m, 1, d)), y], axis=1)

        if weight_mode == "indicator":
            if i == k + 2:
                # On k+2 vertices only j = 1 occurs and h^{(k+2,1)} == h.
                wt = (
                    ind.h_batch(configs, t) & ind.h_batch(configs, s)
                ).astype(float) if (j == 1 and jp == 1) else np.zeros(m)
            else:
                wt = np.zeros(m)
                conn = ind.connected_batch(configs, min(t, s))
                for row in np.nonzero(conn)[0]:
                    bt = ind.static_betti(configs[row], t, k)
                    if bt != j:
                        continue
                    bs = bt if s == t else ind.static_betti(configs[row], s, k)
                    wt[row] = 1.0 if bs == jp else 0.0
        elif weight_mode in ("both", "first"):
            if i == k + 2:
                if weight_mode == "first":
                    wt = ind.h_batch(configs, t).astype(float)
                else:
                    wt = (ind.h_batch(configs, t) & ind.h_batch(configs, s)).astype(float)
            else:
                wt = _component_weights(configs, t, s, k, weight_mode)
        else:  # pragma: no cover
            raise ValueError(weight_mode)

        vals = np.zeros(m)
        hit_rows = np.nonzero(wt)[0]
        if hit_rows.size:
            if lam == 0.0:
                outer = w_rho.sum()
                vals[hit_rows] = wt[hit_rows] * outer
            else:
                vols = np.array(
                    [
                        ind._union_volume_value(
                            configs[row], np.ones(i), vol_samples, rng
                        )
                        for row in hit_rows
                    ]
                )
                expw = np.exp(-lam * rho_neg_alpha[None, :] * scale * vols[:, None])
                vals[hit_rows] = wt[hit_rows] * (expw * w_rho[None, :]).sum(axis=1)
        total += float(vals.sum())
        total_sq += float((vals ** 2).sum())
        done += m

    pref = sphere_area(d) * volume
    mean = total / mc_samples
    var = max(total_sq / mc_samples - mean ** 2, 0.0)
    return pref * mean, pref * math.sqrt(var / mc_samples)


def mu_integral(
    i: int,
    j: int,
    jp: int,
    t: float,
    s: float,
    lam: float,
    K: float = math.inf,
    *,
    k: int = 1,
    d: int = 2,
    alpha: float = 4.0,
    mc_samples: int = 400_000,
    vol_samples: int = 20_000,
    seed=0,
) -> LimitEstimate:
    """The weak-core component integral mu_k^{(i,j,j')}(t, s, lambda; K).

    Outer radial part on [1, K) by the exact u-substitution plus
    Gauss-Legendre; inner y-part by uniform Monte Carlo with the
    exponential occupancy weight exp(-lambda rho^-alpha (s v t)^d
    vol(union of unit balls)).  lambda = 0 collapses the weight to 1.
    """
    if i < k + 2:
        raise ValueError(f"component size i={i} must be at least k+2={k + 2}")
    if j < 1 or jp < 1:
        raise ValueError("hole counts must be >= 1")
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if K == 1:
        return LimitEstimate(value=0.0, std_error=0.0, method="closed-form")
    cap = hole_count_cap(i, k)
    if j > cap or jp > cap:
        return LimitEstimate(value=0.0, std_error=0.0, method="closed-form")
    if i == k + 2 and (j != 1 or jp != 1):
        return LimitEstimate(value=0.0, std_error=0.0, method="closed-form")
    val, se = _mu_core(
        i, t, s, lam, K,
        k=k, d=d, alpha=alpha, mc_samples=mc_samples, vol_samples=vol_samples,
        seed=seed, weight_mode="indicator", j=j, jp=jp,
    )
    return LimitEstimate(
        value=val, std_error=se, method="monte-carlo",
        samples=mc_samples, seed=_seed_tuple(seed),
    )


def _cluster_shapes(rng, n_raw, size, d, radius, param, kcap, weighted, j, chunk=200_000):
    """Rejection phase: uniform shapes (first point pinned at 0, offsets in
    the radius ball), kept where the cluster weight is nonzero.

    Returns (kept configs, their weights, n_raw).  Weight = the (i,j)
    indicator for `weighted=False`, else beta_k * 1{connected}.
    """
    kept = []
    weights = []
    done = 0
    while done < n_raw:
        m = min(chunk, n_raw - done)
        y = _ball_uniform(rng, m * (size - 1), d, radius).reshape(m, size - 1, d)
        configs = np.concatenate([np.zeros((m, 1, d)), y], axis=1)
        if not weighted and size == kcap + 2 and j == 1:
            w = ind.h_batch(configs, param).astype(float)
        else:
            w = np.zeros(m)
            conn = ind.connected_batch(configs, param)
            for row in np.nonzero(conn)[0]:
                bk = ind.static_betti(configs[row], param, kcap)
                if weighted:
                    w[row] = bk
                elif bk == j:
                    w[row] = 1.0
        nz = np.nonzero(w)[0]
        if nz.size:
            kept.append(configs[nz])
            weights.append(w[nz])
        done += m
    if kept:
        return np.concatenate(kept), np.concatenate(weights), n_raw
    return np.zeros((0, size, d)), np.zeros(0), n_raw


def _xi_core(
    i: int,
    ip: int,
    t: float,
    s: float,
    lam: float,
    K: float,
    *,
    k: int,
    d: int,
    alpha: float,
    mc_samples: int,
    vol_samples: int,
    seed,
    weighted: bool,
    j: int | None = None,
    jp: int | None = None,
):
    """Two-phase conditional estimator.

    Phase 1 draws mc_samples uniform shapes per cluster and keeps those with
    nonzero weight; phase 2 pairs kept shapes (round-robin reuse) with fresh
    uniform anchors and evaluates the overlap bracket.  Unbiased because the
    integrand factors as wa(shape_a) wb(shape_b) Br(shape_a, shape_b, u)
    under the product of uniform laws; pairing reuse is handled in the SE by
    row/column variance terms.
    """
    beta = alpha * (i + ip) - d
    if beta <= 0:
        raise ValueError("alpha*(i+i') must exceed d")
    if min(t, s) == 0.0:
        return 0.0, 0.0
    # Tight supports: the t-connected first cluster stays within t(i-1) of
    # the origin, the overlap indicator forces some cross pair within t+s,
    # and the s-connected second cluster spreads at most s(i'-1).
    r_a = t * (i - 1)
    r_anchor = t * (i - 1) + (t + s) + s * (ip - 1)
    r_b = s * (ip - 1)
    volume = (
        (ball_volume(d) * r_a ** d) ** (i - 1)
        * (ball_volume(d) * r_anchor ** d)
        * (ball_volume(d) * r_b ** d) ** (ip - 1)
    )
    w_rho, rho_neg_alpha = _radial_nodes(beta, alpha, K)
    half = max(t, s)  # balls of radius (t v s)/2 meet iff centers within t v s
    pref = sphere_area(d) * volume
    rng = make_rng(seed)

    shapes_a, wa, n_a = _cluster_shapes(rng, mc_samples, i, d, r_a, t, k, weighted, j)
    shapes_b, wb, n_b = _cluster_shapes(rng, mc_samples, ip, d, r_b, s, k, weighted, jp)
    ka, kb = shapes_a.shape[0], shapes_b.shape[0]
    if ka == 0 or kb == 0:
        # resolution floor: one kept pair with a maximal bracket
        floor = pref * (1.0 / n_a) * (1.0 / n_b) * 2.0 * float(w_rho.sum())
        return 0.0, floor

    pairs = int(min(max(mc_samples // 20, 10_000), 200_000, 40 * ka * kb))
    ia = rng.integers(0, ka, size=pairs)
    ib = rng.integers(0, kb, size=pairs)
    anchors = _ball_uniform(rng, pairs, d, r_anchor)
    cl_a = shapes_a[ia]
    cl_b = shapes_b[ib] + anchors[:, None, :]

    cross = np.sqrt(
        ((cl_a[:, :, None, :] - cl_b[:, None, :, :]) ** 2).sum(-1)
    ).min(axis=(1, 2))
    d_ts = cross <= (t + s)
    d_half = cross <= half
    br = np.zeros(pairs)
    if lam == 0.0:
        br = -d_half.astype(float) * float(w_rho.sum())
    else:
        hit = np.nonzero(d_ts)[0]
        if hit.size:
            va = ind._union_volume_batch(cl_a[hit], np.full(i, float(t)), vol_samples, rng)
            vb = ind._union_volume_batch(cl_b[hit], np.full(ip, float(s)), vol_samples, rng)
            joint = np.concatenate([cl_a[hit], cl_b[hit]], axis=1)
            radii = np.concatenate([np.full(i, float(t)), np.full(ip, float(s))])
            vab = ind._union_volume_batch(joint, radii, vol_samples, rng)
            e_joint = np.exp(-lam * rho_neg_alpha[None, :] * vab[:, None])
            e_split = np.exp(-lam * rho_neg_alpha[None, :] * (va + vb)[:, None])
            first = (1.0 - d_half[hit].astype(float))[:, None] * e_joint
            br[hit] = ((first - e_split) * w_rho[None, :]).sum(axis=1)

    vals = wa[ia] * wb[ib] * br
    mean_p = float(vals.mean())
    scale = pref * (ka / n_a) * (kb / n_b)
    value = scale * mean_p

    # SE: keep-fraction binomials plus a shape-reuse-aware pair variance
    var_pairs = float(vals.var(ddof=1)) / pairs if pairs > 1 else 0.0
    row_var = _group_mean_variance(vals, ia, ka)
    col_var = _group_mean_variance(vals, ib, kb)
    var_mean = var_pairs + row_var + col_var
    rel_keep = (1.0 - ka / n_a) / ka + (1.0 - kb / n_b) / kb
    se = abs(scale) * math.sqrt(max(var_mean + mean_p ** 2 * rel_keep, 0.0))
    return value, se


def _group_mean_variance(vals: np.ndarray, idx: np.ndarray, n_groups: int) -> float:
    """Variance contribution of per-shape means (shape reuse across pairs)."""
    sums = np.bincount(idx, weights=vals, minlength=n_groups)
    counts = np.bincount(idx, minlength=n_groups)
    used = counts > 0
    if used.sum() < 2:
        return 0.0
    means = sums[used] / counts[used]
    return float(means.var(ddof=1)) / used.sum()


def xi_integral(
    i: int,
    j: int,
    ip: int,
    jp: int,
    t: float,
    s: float,
    lam: float,
    K: float = math.inf,
    *,
    k: int = 1,
    d: int = 2,
    alpha: float = 4.0,
    mc_samples: int = 400_000,
    vol_samples: int = 4_000,
    seed=0,
) -> LimitEstimate:
    """Cross-cluster integral xi_k^{(i,j,i',j')}(t, s, lambda; K).

    The integrand pairs a t-component on i points with an s-component on i'
    points and weighs their ball-union overlap: (1_{D(t,s)} - 1_{D((tvs)/2)})
    exp(-lam rho^-a vol(joint union)) - 1_{D(t,s)} exp(-lam rho^-a (vol A +
    vol B)).  The second cluster is anchored by its first point inside the
    region where the overlap indicator can be nonzero.
    """
    for name, val in (("i", i), ("i'", ip)):
        if val < k + 2:
            raise ValueError(f"{name} must be at least k+2={k + 2}")
    if j < 1 or jp < 1:
        raise ValueError("hole counts must be >= 1")
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if K == 1:
        return LimitEstimate(value=0.0, std_error=0.0, method="closed-form")
    if j > hole_count_cap(i, k) or jp > hole_count_cap(ip, k):
        return LimitEstimate(value=0.0, std_error=0.0, method="closed-form")
    val, se = _xi_core(
        i, ip, t, s, lam, K,
        k=k, d=d, alpha=alpha, mc_samples=mc_samples, vol_samples=vol_samples,
        seed=seed, weighted=False, j=j, jp=jp,
    )
    return LimitEstimate(
        value=val, std_error=se, method="monte-carlo",
        samples=mc_samples, seed=_seed_tuple(seed),
    )


# ---------------------------------------------------------------------------
# Covariance series and tail bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZSeriesResult:
    """A truncated covariance-series value with its discarded-tail bound."""

    estimate: LimitEstimate
    truncation_bound: float
    terms: dict = field(default_factory=dict)


def _mu_tail_bound(M, t, s, lam, K, k, d, alpha, pair: bool) -> float:
    """Geometric bound on the discarded i > M single-cluster terms.

    Spanning-tree bound: the weighted j-sums of the inner integral are at
    most C(i,k+2)^p i^{i-2} (L^d omega_d)^{i-1} with L = t v s (p = 2 for
    covariance terms, 1 for mean terms); the exponential weight is <= 1.
    """
    L = max(t, s)
    base = lam * (L ** d) * ball_volume(d)
    total = 0.0
    i = M + 1
    while i < M + 400:
        beta = alpha * i - d
        outer = (1.0 - (0.0 if math.isinf(K) else K ** (-beta))) / beta
        comb = math.comb(i, k + 2) ** (2 if pair else 1)
        try:
            term = (
                (lam ** i / math.factorial(i))
                * sphere_area(d)
                * outer
                * comb
                * i ** (i - 2)
                * (L ** d * ball_volume(d)) ** (i - 1)
            )
        except OverflowError:
            return math.inf
        total += term
        if term < 1e-20 * max(total, 1e-300) and i > M + 3:
            break
        if base * math.e >= 1.0 and i > M + 100:
            return math.inf
        i += 1
    return total


def _xi_tail_bound(M, t, s, lam, K, k, d, alpha, estimated=()) -> float:
    """Bound on the cross terms that are not estimated: every (i, i') pair
    outside `estimated` with i, i' <= M, plus everything with max(i,i') > M.
    |bracket| <= 2 on the overlap set, whose measure obeys the two-cluster
    spanning-tree bound."""
    L = max(t, s)
    omega = ball_volume(d)
    estimated = set(estimated)

    def single(i, ip):
        beta = alpha * (i + ip) - d
        outer = (1.0 - (0.0 if math.isinf(K) else K ** (-beta))) / beta
        try:
            return (
                2.0
                * (lam ** (i + ip) / (math.factorial(i) * math.factorial(ip)))
                * sphere_area(d)
                * outer
                * (2 ** d)
                * math.comb(i, k + 2)
                * math.comb(ip, k + 2)
                * i ** (i - 1)
                * ip ** (ip - 1)
                * (L ** d * omega) ** (i + ip - 1)
            )
        except OverflowError:
            return math.inf

    total = 0.0
    for i in range(k + 2, M + 200):
        row = 0.0
        for ip in range(k + 2, M + 200):
            if (i, ip) in estimated:
                continue
            term = single(i, ip)
            if math.isinf(term):
                return math.inf
            row += term
            if term < 1e-22 * max(total + row, 1e-300) and ip > M + 3:
                break
        total += row
        if row < 1e-22 * max(total, 1e-300) and i > M + 3:
            break
    return total


def z_mean(
    t: float,
    lam: float,
    M: int,
    K: float = math.inf,
    *,
    k: int = 1,
    d: int = 2,
    alpha: float = 4.0,
    mc_samples: int = 400_000,
    vol_samples: int = 20_000,
    seed=0,
) -> ZSeriesResult:
    """Limit of the R^-d-scaled mean Betti number in the weak-core regime:
    sum_{i,j} j (lam^i/i!) mu^{(i,j,j)}(t,t,lam;K), truncated at i <= M."""
    if M < k + 2:
        raise ValueError(f"M must be at least k+2={k + 2}")
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0.0:
        est = mu_integral(
            k + 2, 1, 1, t, t, 0.0, K, k=k, d=d, alpha=alpha,
            mc_samples=mc_samples, vol_samples=vol_samples, seed=seed,
        )
        scale = 1.0 / math.factorial(k + 2)
        return ZSeriesResult(
            estimate=LimitEstimate(
                value=est.value * scale, std_error=est.std_error * scale,
                method=est.method, samples=est.samples, seed=est.seed,
            ),
            truncation_bound=0.0,
        )
    value = 0.0
    var = 0.0
    terms = {}
    for i in range(k + 2, M + 1):
        v, se = _mu_core(
            i, t, t, lam, K, k=k, d=d, alpha=alpha,
            mc_samples=mc_samples, vol_samples=vol_samples,
            seed=split_seed(seed, i), weight_mode="first",
        )
        coef = lam ** i / math.factorial(i)
        terms[f"mu_i{i}"] = coef * v
        value += coef * v
        var += (coef * se) ** 2
    bound = _mu_tail_bound(M, t, t, lam, K, k, d, alpha, pair=False)
    return ZSeriesResult(
        estimate=LimitEstimate(
            value=value, std_error=math.sqrt(var), method="monte-carlo",
            samples=mc_samples, seed=_seed_tuple(seed),
        ),
        truncation_bound=bound,
        terms=terms,
    )


def z_covariance(
    t: float,
    s: float,
    lam: float,
    M: int,
    K: float = math.inf,
    *,
    k: int = 1,
    d: int = 2,
    alpha: float = 4.0,
    mc_samples: int = 400_000,
    vol_samples: int = 20_000,
    seed=0,
    xi_pairs: str = "minimal",
) -> ZSeriesResult:
    """Limit covariance of the scaled Betti numbers at parameters (t, s).

    lam > 0: the weak-core series sum_{i<=M} sum_{j,j'} j j' (lam^i/i!)
    mu^{(i,j,j')} + the xi cross-series, with the geometric bound on every
    non-estimated term (discarded i > M, and skipped cross pairs) reported
    alongside.  The j-sums are collapsed exactly via sum_j j h^{(i,j)} =
    beta_k 1{connected}.  xi_pairs: "minimal" estimates only the dominant
    (k+2, k+2) cross term (the others sit below MC resolution; their
    lam^{i+i'} coefficients put them orders of magnitude under the mu
    terms), "all" estimates every pair up to M, "none" bounds them all.

    lam = 0: the intermediate-regime covariance mu^{(k+2,1,1)}(t,s,0;K)
    divided by (k+2)!, the nonzero limit the lam^{k+2}-normalized series
    tends to (only the smallest components survive there).
    """
    if M < k + 2:
        raise ValueError(f"M must be at least k+2={k + 2}")
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0.0:
        est = mu_integral(
            k + 2, 1, 1, t, s, 0.0, K, k=k, d=d, alpha=alpha,
            mc_samples=mc_samples, vol_samples=vol_samples, seed=seed,
        )
        scale = 1.0 / math.factorial(k + 2)
        return ZSeriesResult(
            estimate=LimitEstimate(
                value=est.value * scale, std_error=est.std_error * scale,
                method=est.method, samples=est.samples, seed=est.seed,
            ),
            truncation_bound=0.0,
        )
    value = 0.0
    var = 0.0
    terms = {}
    for i in range(k + 2, M + 1):
        v, se = _mu_core(
            i, t, s, lam, K, k=k, d=d, alpha=alpha,
            mc_samples=mc_samples, vol_samples=vol_samples,
            seed=split_seed(seed, i), weight_mode="both",
        )
        coef = lam ** i / math.factorial(i)
        terms[f"mu_i{i}"] = coef * v
        value += coef * v
        var += (coef * se) ** 2
    if xi_pairs == "minimal":
        pair_list = [(k + 2, k + 2)]
    elif xi_pairs == "all":
        pair_list = [(i, ip) for i in range(k + 2, M + 1) for ip in range(k + 2, M + 1)]
    elif xi_pairs == "none":
        pair_list = []
    else:
        raise ValueError("xi_pairs must be 'minimal', 'all' or 'none'")
    for i, ip in pair_list:
        v, se = _xi_core(
            i, ip, t, s, lam, K, k=k, d=d, alpha=alpha,
            mc_samples=max(mc_samples // 4, 50_000),
            vol_samples=min(vol_samples, 2_000),
            seed=split_seed(seed, 1000 + 100 * i + ip),
            weighted=True,
        )
        coef = lam ** (i + ip) / (math.factorial(i) * math.factorial(ip))
        terms[f"xi_i{i}_ip{ip}"] = coef * v
        value += coef * v
        var += (coef * se) ** 2
    bound = _mu_tail_bound(M, t, s, lam, K, k, d, alpha, pair=True)
    bound += _xi_tail_bound(M, t, s, lam, K, k, d, alpha, estimated=pair_list)
    return ZSeriesResult(
        estimate=LimitEstimate(
            value=value, std_error=math.sqrt(var), method="monte-carlo",
            samples=mc_samples, seed=_seed_tuple(seed),
        ),
        truncation_bound=bound,
        terms=terms,
    )


# ---------------------------------------------------------------------------
# Limiting-process simulators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProcessPath:
    """One path of a limiting process on a fixed time grid."""

    grid: np.ndarray
    values: np.ndarray
    which: str  # V | V+ | V- | Y | Y+ | Y- | Z

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.ndim != 1 or g.shape != v.shape:
            raise ValueError("grid and values must be equal-length 1-D arrays")
        if g.size > 1 and not (np.diff(g) > 0).all():
            raise ValueError("grid must be strictly increasing")
        if self.which.startswith("V") and not np.allclose(v, np.round(v)):
            raise ValueError("V-paths must be integer-valued")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("t,value\n")
            for t, v in zip(self.grid, self.values):
                fh.write(f"{float(t)!r},{float(v)!r}\n")

    def to_dict(self) -> dict:
        return {"which": self.which, "grid": self.grid.tolist(), "values": self.values.tolist()}


def _v_window_check(t_grid, k, window_radius):
    t_max = float(np.max(t_grid))
    needed = 2.0 * t_max * (k + 1)
    if window_radius < needed:
        raise ValueError(
            f"window radius {window_radius} below the support bound "
            f"2*t_max*(k+1) = {needed}; counts would be silently biased"
        )


def _v_atoms(k: int, d: int, alpha: float, window_radius: float, rng):
    intensity = c_k(d, k, alpha) * (ball_volume(d) * window_radius ** d) ** (k + 1)
    count = int(rng.poisson(intensity))
    atoms = _ball_uniform(rng, count * (k + 1), d, window_radius).reshape(count, k + 1, d)
    return np.concatenate([np.zeros((count, 1, d)), atoms], axis=1)


def _v_values(configs, t_grid, kind: str) -> np.ndarray:
    out = np.zeros(len(t_grid))
    if configs.shape[0] == 0:
        return out
    for a, t in enumerate(t_grid):
        if t == 0:
            continue
        if kind == "V":
            out[a] = float(ind.h_batch(configs, t).sum())
        elif kind == "V+":
            out[a] = float(ind.h_pm_batch(configs, t)[0].sum())
        else:
            out[a] = float(ind.h_pm_batch(configs, t)[1].sum())
    return out


def simulate_V(t_grid, k: int, d: int, alpha: float, window_radius: float, seed=0) -> ProcessPath:
    """One path of the integer-valued sparse-regime limit process.

    Simulates the Poisson random measure restricted to the window (exact:
    the indicator support lies inside it) and sums the hole indicator over
    its atoms at each grid time.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    _v_window_check(t_grid, k, window_radius)
    configs = _v_atoms(k, d, alpha, window_radius, make_rng(seed))
    return ProcessPath(grid=t_grid, values=_v_values(configs, t_grid, "V"), which="V")


def simulate_V_pm(t_grid, k: int, d: int, alpha: float, window_radius: float, seed=0):
    """(V+, V-) paths built from one shared atom set, so V = V+ - V-
    pathwise and both components are nondecreasing."""
    t_grid = np.asarray(t_grid, dtype=float)
    _v_window_check(t_grid, k, window_radius)
    configs = _v_atoms(k, d, alpha, window_radius, make_rng(seed))
    return (
        ProcessPath(grid=t_grid, values=_v_values(configs, t_grid, "V+"), which="V+"),
        ProcessPath(grid=t_grid, values=_v_values(configs, t_grid, "V-"), which="V-"),
    )


def simulate_V_ensemble(t_grid, k, d, alpha, window_radius, n_paths, seed=0):
    """(V, V+, V-) arrays of shape (n_paths, len(t_grid)) from split seeds."""
    t_grid = np.asarray(t_grid, dtype=float)
    _v_window_check(t_grid, k, window_radius)
    V = np.zeros((n_paths, len(t_grid)))
    Vp = np.zeros_like(V)
    Vm = np.zeros_like(V)
    for p in range(n_paths):
        configs = _v_atoms(k, d, alpha, window_radius, make_rng(split_seed(seed, p)))
        Vp[p] = _v_values(configs, t_grid, "V+")
        Vm[p] = _v_values(configs, t_grid, "V-")
        V[p] = Vp[p] - Vm[p]
    return V, Vp, Vm


def _y_covariance(t_grid, k, d, alpha, kind, mc_samples, rng):
    """Gram-form MC estimate of C_k int phi_{t_a} phi_{t_b} dy; PSD by
    construction up to the final scaling."""
    t_max = float(np.max(t_grid))
    radius = t_max  # pairwise-ball support of every h_t, h_t^{+/-}, t <= t_max
    volume = (ball_volume(d) * radius ** d) ** (k + 1)
    T = len(t_grid)
    gram = np.zeros((T, T))
    done = 0
    while done < mc_samples:
        m = min(_CHUNK, mc_samples - done)
        y = _ball_uniform(rng, m * (k + 1), d, radius).reshape(m, k + 1, d)
        configs = np.concatenate([np.zeros((m, 1, d)), y], axis=1)
        H = np.zeros((m, T))
        for a, t in enumerate(t_grid):
            if t == 0:
                continue
            if kind == "Y":
                H[:, a] = ind.h_batch(configs, t)
            elif kind == "Y+":
                H[:, a] = ind.h_pm_batch(configs, t)[0]
            else:
                H[:, a] = ind.h_pm_batch(configs, t)[1]
        gram += H.T @ H
        done += m
    return c_k(d, k, alpha) * volume * gram / mc_samples


def simulate_Y(
    t_grid,
    k: int,
    d: int,
    alpha: float,
    mc_samples: int = 400_000,
    seed=0,
    which: str = "Y",
    n_paths: int = 1,
    clip_tol: float = 1e-10,
):
    """Gaussian limit paths with the indicator-integral covariance.

    The grid covariance is estimated in Gram form from shared samples (so it
    is PSD up to roundoff), symmetrically square-rooted with eigenvalue
    clipping at -clip_tol, and used to draw centered Gaussian paths.
    Returns one ProcessPath for n_paths=1, else the (n_paths, T) array.
    """
    if which not in ("Y", "Y+", "Y-"):
        raise ValueError("which must be Y, Y+ or Y-")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0:
        raise ValueError("t_grid must be nonempty")
    rng = make_rng(seed)
    cov = _y_covariance(t_grid, k, d, alpha, which, mc_samples, rng)
    paths = _gaussian_paths(cov, n_paths, rng, clip_tol)
    if n_paths == 1:
        return ProcessPath(grid=t_grid, values=paths[0], which=which)
    return paths


def simulate_Y_ensemble(t_grid, k, d, alpha, mc_samples, n_paths, seed=0, which="Y"):
    return simulate_Y(
        t_grid, k, d, alpha, mc_samples=mc_samples, seed=seed, which=which, n_paths=n_paths
    )


def _gaussian_paths(cov: np.ndarray, n_paths: int, rng, clip_tol: float) -> np.ndarray:
    evals, evecs = np.linalg.eigh(0.5 * (cov + cov.T))
    floor = -clip_tol * max(1.0, float(evals.max(initial=0.0)))
    if evals.min(initial=0.0) < floor:
        raise ValueError(
            f"covariance matrix indefinite beyond the clipping tolerance "
            f"(min eigenvalue {evals.min():.3e}); increase mc_samples"
        )
    root = evecs @ np.diag(np.sqrt(np.clip(evals, 0.0, None)))
    return rng.standard_normal((n_paths, cov.shape[0])) @ root.T


def simulate_Z(
    t_grid,
    lam: float,
    M: int,
    K: float = math.inf,
    *,
    k: int = 1,
    d: int = 2,
    alpha: float = 4.0,
    mc_samples: int = 200_000,
    vol_samples: int = 20_000,
    seed=0,
    n_paths: int = 1,
    clip_tol: float = 1e-10,
):
    """Truncated weak-core Gaussian limit: paths of the M-truncated hole
    process drawn from the pairwise z_covariance matrix over the grid."""
    t_grid = np.asarray(t_grid, dtype=float)
    T = t_grid.size
    cov = np.zeros((T, T))
    for a in range(T):
        for b in range(a, T):
            res = z_covariance(
                float(t_grid[a]), float(t_grid[b]), lam, M, K,
                k=k, d=d, alpha=alpha, mc_samples=mc_samples,
                vol_samples=vol_samples, seed=split_seed(seed, 7000 + a * T + b),
            )
            cov[a, b] = cov[b, a] = res.estimate.value
    rng = make_rng(split_seed(seed, 9999))
    paths = _gaussian_paths(cov, n_paths, rng, clip_tol)
    if n_paths == 1:
        return ProcessPath(grid=t_grid, values=paths[0], which="Z")
    return paths
