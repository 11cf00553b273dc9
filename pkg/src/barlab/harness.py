"""End-to-end replicated experiments and their statistical confrontation.

One replication is: sample the Poisson cloud restricted outside the regime
radius, build the Čech filtration up to dimension k+1 and horizon max(t),
reduce, and read off Betti and lifetime values on the t-grid (plus the
localized Betti number when an outer cutoff K is set, and the count of
smallest-above-minimal connected components in the sparse regime).
Replications are independent work units; aggregation is a fixed-order
reduction over the replication index, so reports are bit-identical for any
worker count.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from multiprocessing import get_context

import numpy as np
from scipy import stats as sps

from . import limits
from .cech import build_filtered_complex
from .indicators import static_betti
from .persistence import barcode, betti_curve, lifetime_sum
from .sampling import (
    DensitySpec,
    default_gamma,
    make_rng,
    radial_quantiler,
    regime_radius,
    restrict_outside,
    rho_n,
    sample_cloud,
    sample_restricted,
    split_seed,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "run_regime_experiment",
    "palm_identity_check",
    "distribution_tests",
    "DistributionTests",
    "localized_betti",
    "component_size_count",
]

_WORKER_ENV = "BARLAB_WORKERS"


# ---------------------------------------------------------------------------
# Per-cloud observables
# ---------------------------------------------------------------------------


def _sqdist(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _components(points: np.ndarray, t: float, d2: np.ndarray | None = None):
    m = points.shape[0]
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if m:
        if d2 is None:
            d2 = _sqdist(points)
        ii, jj = np.triu_indices(m, k=1)
        close = d2[ii, jj] <= t * t
        for i, j in zip(ii[close].tolist(), jj[close].tolist()):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[rj] = ri
    comps: dict = {}
    for i in range(m):
        comps.setdefault(find(i), []).append(i)
    return list(comps.values())


def localized_betti(
    points: np.ndarray, t: float, k: int, R: float, K: float,
    d2: np.ndarray | None = None,
) -> int:
    """Betti number restricted to components whose outermost point lies in
    the annulus [R, K*R] (ties broken toward the smallest index)."""
    total = 0
    for comp in _components(points, t, d2):
        if len(comp) < k + 2:
            continue
        pts = points[comp]
        norms = np.linalg.norm(pts, axis=1)
        far = float(norms[int(np.argmax(norms))])  # argmax takes the first maximum
        if not (R <= far <= K * R):
            continue
        total += static_betti(pts, t, k)
    return total


def component_size_count(points: np.ndarray, t: float, size: int) -> int:
    """Number of connected components with exactly `size` vertices at t."""
    return sum(1 for comp in _components(points, t) if len(comp) == size)


def connected_subset_count(
    points: np.ndarray, t: float, size: int, d2: np.ndarray | None = None
) -> int:
    """Number of `size`-point subsets whose distance-t graph is connected.

    This is the sparse-regime gap bound: the count of candidate clusters one
    vertex larger than minimal.  Subsets are enumerated inside components
    only (a connected subset cannot straddle two components).
    """
    from itertools import combinations

    total = 0
    tt = t * t
    if d2 is None and points.shape[0]:
        d2 = _sqdist(points)
    for comp in _components(points, t, d2):
        if len(comp) < size:
            continue
        sub_d2 = d2[np.ix_(comp, comp)]
        for sub in combinations(range(len(comp)), size):
            adj = sub_d2[np.ix_(sub, sub)] <= tt
            seen = {0}
            stack = [0]
            while stack:
                a = stack.pop()
                for b in range(size):
                    if adj[a, b] and b not in seen:
                        seen.add(b)
                        stack.append(b)
            if len(seen) == size:
                total += 1
    return total


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


class ConfigError(ValueError):
    """Malformed experiment configuration (maps to exit code 2)."""


@dataclass
class ExperimentConfig:
    density: DensitySpec
    regime: str
    k: int
    n_values: tuple
    t_grid: tuple
    replications: int
    seed: int = 0
    lam: float | None = None
    gamma: float | None = None
    K: float = math.inf
    M: int = 6
    workers: int | None = None
    out_dir: str | None = None
    exact_pipeline: bool = False
    compute_targets: bool = True
    target_mc_samples: int = 400_000
    simulate_paths: int = 0
    max_cliques: int = 2_000_000

    def __post_init__(self):
        self.regime = self.regime.upper()
        if self.regime not in ("I", "II", "III"):
            raise ConfigError(f"regime must be I, II or III, got {self.regime!r}")
        if self.replications < 2:
            raise ConfigError("replications must be >= 2")
        self.t_grid = tuple(float(t) for t in self.t_grid)
        if not self.t_grid or any(t <= 0 for t in self.t_grid):
            raise ConfigError("t_grid must be nonempty with positive entries")
        if any(b <= a for a, b in zip(self.t_grid, self.t_grid[1:])):
            raise ConfigError("t_grid must be strictly increasing")
        if self.regime == "III":
            if self.lam is None:
                raise ConfigError("regime III requires lambda")
            if max(self.t_grid) > 1.0:
                raise ConfigError(
                    "regime III experiments are stated on (0, 1]; t_grid exceeds 1"
                )
        if self.regime == "II" and self.gamma is None:
            self.gamma = default_gamma(self.density.d, self.density.alpha, self.k)
        self.n_values = tuple(float(n) for n in self.n_values)
        if not self.n_values:
            raise ConfigError("need at least one n value")

    @classmethod
    def from_dict(cls, cfg: dict) -> "ExperimentConfig":
        try:
            density = DensitySpec.from_config(cfg)
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad density block: {exc}") from exc
        n_raw = cfg.get("n")
        if n_raw is None:
            raise ConfigError("missing key 'n' (scalar or list)")
        n_values = tuple(n_raw) if isinstance(n_raw, (list, tuple)) else (n_raw,)
        known = {
            "regime", "k", "t_grid", "replications", "seed", "lambda", "gamma",
            "K", "M", "workers", "out_dir", "exact_pipeline", "compute_targets",
            "target_mc_samples", "simulate_paths", "max_cliques",
        }
        extra = set(cfg) - known - {"d", "alpha", "C", "n"}
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        try:
            return cls(
                density=density,
                regime=cfg["regime"],
                k=int(cfg.get("k", 1)),
                n_values=n_values,
                t_grid=tuple(cfg["t_grid"]),
                replications=int(cfg["replications"]),
                seed=cfg.get("seed", 0),
                lam=cfg.get("lambda"),
                gamma=cfg.get("gamma"),
                K=float(cfg["K"]) if cfg.get("K") not in (None, "inf") else math.inf,
                M=int(cfg.get("M", 6)),
                workers=cfg.get("workers"),
                out_dir=cfg.get("out_dir"),
                exact_pipeline=bool(cfg.get("exact_pipeline", False)),
                compute_targets=bool(cfg.get("compute_targets", True)),
                target_mc_samples=int(cfg.get("target_mc_samples", 400_000)),
                simulate_paths=int(cfg.get("simulate_paths", 0)),
                max_cliques=int(cfg.get("max_cliques", 2_000_000)),
            )
        except KeyError as exc:
            raise ConfigError(f"missing config key: {exc.args[0]}") from exc

    @classmethod
    def from_json_file(cls, path) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                cfg = json.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(cfg, dict):
            raise ConfigError(f"{path}: top-level JSON value must be an object")
        return cls.from_dict(cfg)

    def to_dict(self) -> dict:
        out = self.density.to_config()
        out.update(
            regime=self.regime, k=self.k, n=list(self.n_values),
            t_grid=list(self.t_grid), replications=self.replications,
            seed=self.seed if isinstance(self.seed, int) else list(self.seed),
            gamma=self.gamma, M=self.M,
            K="inf" if math.isinf(self.K) else self.K,
        )
        out["lambda"] = self.lam
        return out


# ---------------------------------------------------------------------------
# Replication worker
# ---------------------------------------------------------------------------


def _replicate(args):
    (density_cfg, R, k, t_grid, K, seed, exact, count_size, max_cliques) = args
    density = DensitySpec.from_config(density_cfg)
    n = density_cfg["_n"]
    if exact:
        cloud = restrict_outside(sample_cloud(density, n, seed), R)
    else:
        cloud = sample_restricted(density, n, R, seed)
    pts = cloud.points
    t_max = max(t_grid)
    cx = build_filtered_complex(pts, max_dim=k + 1, t_max=t_max, max_cliques=max_cliques)
    bc = barcode(cx, k)
    curve = betti_curve(bc)
    beta = [int(curve.value_at(t)) for t in t_grid]
    life = [lifetime_sum(bc, t) for t in t_grid]
    beta_loc = None
    d2 = _sqdist(pts) if (math.isfinite(K) or count_size) else None
    if math.isfinite(K):
        beta_loc = [localized_betti(pts, t, k, R, K, d2) for t in t_grid]
    gcount = None
    if count_size:
        gcount = connected_subset_count(pts, t_max, count_size, d2)
    return (pts.shape[0], beta, life, beta_loc, gcount)


def _run_replications(config: ExperimentConfig, n: float, R: float, n_index: int):
    base = split_seed(config.seed, n_index)
    density_cfg = config.density.to_config()
    density_cfg["_n"] = n
    count_size = (config.k + 3) if config.regime == "I" else 0
    args = [
        (
            density_cfg, R, config.k, config.t_grid, config.K,
            split_seed(base, rep), config.exact_pipeline, count_size,
            config.max_cliques,
        )
        for rep in range(config.replications)
    ]
    workers = config.workers
    if workers is None:
        workers = int(os.environ.get(_WORKER_ENV, "1"))
    if workers > 1:
        with get_context("spawn").Pool(workers) as pool:
            results = pool.map(_replicate, args, chunksize=max(1, len(args) // (workers * 8)))
    else:
        results = [_replicate(a) for a in args]
    return results


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


def _moment_block(samples: np.ndarray, scale: float) -> dict:
    """Per-column moments of a (reps, T) sample array plus scaled versions."""
    reps = samples.shape[0]
    mean = samples.mean(axis=0)
    var = samples.var(axis=0, ddof=1)
    cov = np.cov(samples.T, ddof=1) if samples.shape[1] > 1 else var.reshape(1, 1)
    cov = np.atleast_2d(cov)
    with np.errstate(invalid="ignore", divide="ignore"):
        dispersion = np.where(mean > 0, var / np.where(mean > 0, mean, 1.0), 0.0)
    skew = np.where(var > 0, sps.skew(samples, axis=0, bias=True), 0.0)
    kurt = np.where(var > 0, sps.kurtosis(samples, axis=0, bias=True), 0.0)
    mean_se = np.sqrt(var / reps)
    # SE of the sample variance from the empirical 4th central moment.
    m4 = ((samples - mean) ** 4).mean(axis=0)
    var_se = np.sqrt(np.maximum(m4 - (reps - 3) / (reps - 1) * var ** 2, 0.0) / reps)
    return {
        "mean": mean.tolist(),
        "mean_se": mean_se.tolist(),
        "var": var.tolist(),
        "var_se": var_se.tolist(),
        "cov": cov.tolist(),
        "dispersion": dispersion.tolist(),
        "skewness": np.asarray(skew).tolist(),
        "excess_kurtosis": np.asarray(kurt).tolist(),
        "scaled_mean": (mean / scale).tolist(),
        "scaled_mean_se": (mean_se / scale).tolist(),
        "scaled_var": (var / scale).tolist(),
        "scaled_var_se": (var_se / scale).tolist(),
        "scaled_cov": (cov / scale).tolist(),
    }


def _psd_gap(cov: np.ndarray) -> float:
    sym = 0.5 * (cov + cov.T)
    evals = np.linalg.eigvalsh(sym)
    return float(evals.min())


@dataclass
class ExperimentReport:
    config: dict
    per_n: list
    targets: dict
    determinism_token: str = ""

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "per_n": self.per_n,
            "targets": self.targets,
            "determinism_token": self.determinism_token,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def write(self, out_dir) -> None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "report.json"), "w") as fh:
            fh.write(self.to_json())
        self._write_stats_csv(os.path.join(out_dir, "betti_stats.csv"), "betti")
        self._write_stats_csv(os.path.join(out_dir, "lifetime_stats.csv"), "lifetime")

    def _write_stats_csv(self, path, block_name) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("n,t,mean,mean_se,var,var_se,scaled_mean,scaled_var,dispersion\n")
            for blk in self.per_n:
                stats = blk[block_name]
                for i, t in enumerate(blk["t_grid"]):
                    fh.write(
                        f"{blk['n']!r},{t!r},{stats['mean'][i]!r},{stats['mean_se'][i]!r},"
                        f"{stats['var'][i]!r},{stats['var_se'][i]!r},"
                        f"{stats['scaled_mean'][i]!r},{stats['scaled_var'][i]!r},"
                        f"{stats['dispersion'][i]!r}\n"
                    )


def _regime_targets(config: ExperimentConfig) -> dict:
    """Limit values the scaled statistics are confronted with."""
    d, k, alpha = config.density.d, config.k, config.density.alpha
    ck = limits.c_k(d, k, alpha)
    grid = config.t_grid
    out: dict = {"c_k": ck}
    if config.regime in ("I", "II"):
        base = limits.indicator_integral(
            "h", k, d, t=1.0, mc_samples=config.target_mc_samples, seed=split_seed(config.seed, 10_001)
        )
        power = d * (k + 1)
        out["indicator_integral_h"] = base.to_dict()
        out["mean"] = [
            {"value": ck * base.value * t ** power, "se": ck * base.std_error * t ** power}
            for t in grid
        ]
        out["var"] = out["mean"]
        out["lifetime_mean"] = [
            {
                "value": ck * base.value * t ** (power + 1) / (power + 1),
                "se": ck * base.std_error * t ** (power + 1) / (power + 1),
            }
            for t in grid
        ]
        if config.regime == "II":
            cov = []
            for a, ta in enumerate(grid):
                row = []
                for tb in grid:
                    pair = limits.indicator_integral(
                        "pair", k, d, t=ta, s=tb,
                        mc_samples=config.target_mc_samples,
                        seed=split_seed(config.seed, 10_100 + a),
                    )
                    row.append({"value": ck * pair.value, "se": ck * pair.std_error})
                cov.append(row)
            out["cov"] = cov
    else:
        lam = config.lam
        mean = []
        var = []
        for i, t in enumerate(grid):
            zm = limits.z_mean(
                t, lam, config.M, config.K, k=k, d=d, alpha=alpha,
                mc_samples=config.target_mc_samples,
                seed=split_seed(config.seed, 10_200 + i),
            )
            zv = limits.z_covariance(
                t, t, lam, config.M, config.K, k=k, d=d, alpha=alpha,
                mc_samples=config.target_mc_samples,
                seed=split_seed(config.seed, 10_300 + i),
            )
            mean.append(
                {
                    "value": zm.estimate.value,
                    "se": zm.estimate.std_error,
                    "truncation_bound": zm.truncation_bound,
                }
            )
            var.append(
                {
                    "value": zv.estimate.value,
                    "se": zv.estimate.std_error,
                    "truncation_bound": zv.truncation_bound,
                }
            )
        out["mean"] = mean
        out["var"] = var
    return out


def run_regime_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Replicated end-to-end run; deterministic given the master seed."""
    targets = _regime_targets(config) if config.compute_targets else {}
    per_n = []
    for n_index, n in enumerate(config.n_values):
        R = regime_radius(
            config.density, config.regime, n, config.k,
            lam=config.lam, gamma=config.gamma,
        )
        rho = rho_n(config.density, n, config.k, R)
        scale = R ** config.density.d if config.regime == "III" else rho
        results = _run_replications(config, n, R, n_index)
        counts = np.array([r[0] for r in results], dtype=float)
        beta = np.array([r[1] for r in results], dtype=float)
        life = np.array([r[2] for r in results], dtype=float)
        block = {
            "n": n,
            "radius": R,
            "rho_n": rho,
            "scale": scale,
            "t_grid": list(config.t_grid),
            "points_mean": float(counts.mean()),
            "betti": _moment_block(beta, scale),
            "lifetime": _moment_block(life, scale),
        }
        block["psd_min_eig"] = _psd_gap(np.array(block["betti"]["scaled_cov"]))
        if math.isfinite(config.K):
            beta_loc = np.array([r[3] for r in results], dtype=float)
            block["betti_localized"] = _moment_block(beta_loc, scale)
        if config.regime == "I":
            g = np.array([r[4] for r in results], dtype=float)
            block["gap_count_k3"] = {
                "mean": float(g.mean()),
                "se": float(g.std(ddof=1) / math.sqrt(len(g))) if len(g) > 1 else 0.0,
            }
        if targets and "mean" in targets:
            block["mean_gap_z"] = [
                _gap_z(block["betti"]["scaled_mean"][i], block["betti"]["scaled_mean_se"][i], targets["mean"][i])
                for i in range(len(config.t_grid))
            ]
        per_n.append(block)
    report = ExperimentReport(
        config=config.to_dict(),
        per_n=per_n,
        targets=targets,
        determinism_token=f"seed={config.seed!r}/reps={config.replications}",
    )
    if config.out_dir:
        report.write(config.out_dir)
        if config.simulate_paths > 0:
            _write_limit_paths(config, report)
    return report


def _gap_z(value: float, se: float, target: dict) -> float:
    denom = math.hypot(se, target["se"]) + target.get("truncation_bound", 0.0)
    if denom == 0.0:
        return 0.0 if value == target["value"] else math.inf
    return (value - target["value"]) / denom


def _write_limit_paths(config: ExperimentConfig, report: ExperimentReport) -> None:
    d, k, alpha = config.density.d, config.k, config.density.alpha
    paths_dir = os.path.join(config.out_dir, "paths")
    os.makedirs(paths_dir, exist_ok=True)
    grid = np.asarray(config.t_grid)
    for p in range(config.simulate_paths):
        seed = split_seed(config.seed, 20_000 + p)
        if config.regime == "I":
            path = limits.simulate_V(grid, k, d, alpha, 2.0 * grid.max() * (k + 1), seed)
        elif config.regime == "II":
            path = limits.simulate_Y(grid, k, d, alpha, mc_samples=200_000, seed=seed)
        else:
            path = limits.simulate_Z(
                grid, config.lam, config.M, config.K, k=k, d=d, alpha=alpha,
                mc_samples=100_000, seed=seed,
            )
        path.to_csv(os.path.join(paths_dir, f"{path.which.replace('+', 'plus').replace('-', 'minus')}_{p}.csv"))


# ---------------------------------------------------------------------------
# Palm identity checks
# ---------------------------------------------------------------------------

_PALM_FUNCTIONALS = ("ball_count", "close_pairs")


def palm_identity_check(
    functional: str,
    n: float,
    density: DensitySpec,
    reps: int,
    seed=0,
    r: float = 1.0,
):
    """Monte Carlo both sides of the Poisson subset-sum identity.

    ball_count (l=1): u(y) = 1{|y| <= r}; the left side is the expected
    count of cloud points in the ball, the right side n*P(|Y| <= r) with Y
    a fresh density draw; a quadrature value accompanies the pair.
    close_pairs (l=2): u = 1{|y1 - y2| <= r} over unordered cloud pairs
    against (n^2/2) P(|Y1 - Y2| <= r).
    """
    if functional not in _PALM_FUNCTIONALS:
        raise ValueError(f"functional must be one of {_PALM_FUNCTIONALS}")
    if reps < 2:
        raise ValueError("reps must be >= 2")
    rng_master = make_rng(seed)
    lhs_vals = np.zeros(reps)
    for rep in range(reps):
        cloud = sample_cloud(density, n, split_seed(seed, rep))
        pts = cloud.points
        if functional == "ball_count":
            lhs_vals[rep] = float((np.linalg.norm(pts, axis=1) <= r).sum())
        else:
            if pts.shape[0] >= 2:
                d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1)
                iu = np.triu_indices(pts.shape[0], k=1)
                lhs_vals[rep] = float((d2[iu] <= r * r).sum())
    lhs = limits.LimitEstimate(
        value=float(lhs_vals.mean()),
        std_error=float(lhs_vals.std(ddof=1) / math.sqrt(reps)),
        method="monte-carlo",
        samples=reps,
        seed=(0,),
    )

    q = radial_quantiler(density)
    m = max(200_000, 100 * reps)
    if functional == "ball_count":
        radii = q.quantile(rng_master.random(m))
        p = float((radii <= r).mean())
        rhs = limits.LimitEstimate(
            value=n * p,
            std_error=n * math.sqrt(max(p * (1 - p), 0.0) / m),
            method="monte-carlo",
            samples=m,
            seed=(1,),
        )
        quadrature = limits.LimitEstimate(
            value=n * q.cdf(r), std_error=0.0, method="quadrature"
        )
        return lhs, rhs, quadrature
    d = density.d
    r1 = q.quantile(rng_master.random(m))
    r2 = q.quantile(rng_master.random(m))
    g1 = rng_master.standard_normal((m, d))
    g1 /= np.linalg.norm(g1, axis=1, keepdims=True)
    g2 = rng_master.standard_normal((m, d))
    g2 /= np.linalg.norm(g2, axis=1, keepdims=True)
    dist = np.linalg.norm(r1[:, None] * g1 - r2[:, None] * g2, axis=1)
    p = float((dist <= r).mean())
    coef = n * n / 2.0
    rhs = limits.LimitEstimate(
        value=coef * p,
        std_error=coef * math.sqrt(max(p * (1 - p), 0.0) / m),
        method="monte-carlo",
        samples=m,
        seed=(1,),
    )
    return lhs, rhs, None


# ---------------------------------------------------------------------------
# Distribution diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistributionTests:
    dispersion: float
    skewness: float
    excess_kurtosis: float
    ks_vs_poisson: float
    ks_vs_normal: float
    degenerate: bool = False


def distribution_tests(samples) -> DistributionTests:
    """Moment statistics plus KS distances against moment-matched
    Poisson and normal references."""
    x = np.asarray(samples, dtype=float)
    if x.size < 30:
        raise ValueError("need at least 30 samples")
    mean = float(x.mean())
    var = float(x.var(ddof=1))
    degenerate = var == 0.0
    dispersion = 0.0 if (degenerate or mean == 0.0) else var / mean

    if degenerate:
        return DistributionTests(
            dispersion=0.0, skewness=0.0, excess_kurtosis=0.0,
            ks_vs_poisson=_ks_poisson(x, mean), ks_vs_normal=0.0, degenerate=True,
        )
    skew = float(sps.skew(x, bias=True))
    kurt = float(sps.kurtosis(x, bias=True))
    ks_n = float(sps.kstest(x, "norm", args=(mean, math.sqrt(var))).statistic)
    return DistributionTests(
        dispersion=dispersion, skewness=skew, excess_kurtosis=kurt,
        ks_vs_poisson=_ks_poisson(x, mean), ks_vs_normal=ks_n, degenerate=False,
    )


def _ks_poisson(x: np.ndarray, lam: float) -> float:
    if lam <= 0:
        return float((x != 0).mean())
    hi = int(max(x.max(), lam) + 10 * math.sqrt(lam + 1.0))
    grid = np.arange(0, hi + 1)
    ecdf = np.searchsorted(np.sort(x), grid, side="right") / x.size
    return float(np.abs(ecdf - sps.poisson.cdf(grid, lam)).max())
