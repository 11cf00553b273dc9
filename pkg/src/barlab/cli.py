"""Command-line interface.

Subcommands: sample, persist, indicators, limits, simulate, experiment,
verify.  Exit codes: 0 success, 1 acceptance failure, 2 malformed
configuration or arguments.
"""

from __future__ import annotations

import json
import math
import os
import sys

import click
import numpy as np

from . import limits
from .cech import build_filtered_complex
from .harness import ConfigError, ExperimentConfig, run_regime_experiment
from .indicators import h, h_component, h_minus, h_plus
from .persistence import barcode, betti_curve, lifetime_sum
from .sampling import DensitySpec, PointCloud, regime_radius, restrict_outside, sample_cloud

_DENSITY_OPTS = [
    click.option("--d", "dim", default=2, show_default=True, help="ambient dimension"),
    click.option("--alpha", default=4.0, show_default=True, help="tail exponent"),
    click.option("--k", default=1, show_default=True, help="homological degree"),
]


def _add_options(opts):
    def wrap(fn):
        for opt in reversed(opts):
            fn = opt(fn)
        return fn

    return wrap


@click.group()
def main():
    """Persistence barcodes of heavy-tailed extreme clouds: sampling,
    exact persistence, limit-law evaluation, statistical verification."""


@main.command()
@_add_options(_DENSITY_OPTS)
@click.option("--n", "intensity", type=float, required=True, help="Poisson intensity scale")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", type=click.Path(), required=True, help="cloud CSV path")
@click.option("--regime", type=click.Choice(["I", "II", "III"], case_sensitive=False), default=None)
@click.option("--lam", "--lambda", "lam", type=float, default=None, help="regime III lambda")
@click.option("--gamma", type=float, default=None, help="regime II exponent")
@click.option("--restrict", type=float, default=None, help="drop points with |x| < R")
def sample(dim, alpha, k, intensity, seed, out, regime, lam, gamma, restrict):
    """Sample one cloud realization and write it as CSV (columns x1..xd)."""
    spec = DensitySpec.power_law(dim, alpha)
    cloud = sample_cloud(spec, intensity, seed)
    if regime is not None:
        restrict = regime_radius(spec, regime, intensity, k, lam=lam, gamma=gamma)
        click.echo(f"regime {regime.upper()} radius: {restrict!r}")
    if restrict is not None:
        cloud = restrict_outside(cloud, restrict)
    cloud.to_csv(out)
    click.echo(f"wrote {cloud.size} points to {out}")


@main.command()
@click.option("--cloud", "cloud_path", type=click.Path(exists=True), required=True)
@click.option("--k", default=1, show_default=True)
@click.option("--max-dim", default=None, type=int, help="default k+1")
@click.option("--t-max", default=2.0, show_default=True, type=float)
@click.option("--out-prefix", required=True, help="prefix for barcode/betti/lifetime CSVs")
def persist(cloud_path, k, max_dim, t_max, out_prefix):
    """Compute the degree-k barcode of a cloud CSV; write barcode,
    Betti-curve and lifetime CSVs."""
    cloud = PointCloud.from_csv(cloud_path)
    md = k + 1 if max_dim is None else max_dim
    cx = build_filtered_complex(cloud, max_dim=md, t_max=t_max)
    bc = barcode(cx, k)
    curve = betti_curve(bc)
    bc.to_csv(out_prefix + "_barcode.csv")
    curve.to_csv(out_prefix + "_betti.csv")
    grid = sorted(set(list(curve.breakpoints) + [t_max]))
    with open(out_prefix + "_lifetime.csv", "w") as fh:
        fh.write("t,L\n")
        for t in grid:
            fh.write(f"{float(t)!r},{lifetime_sum(bc, float(t))!r}\n")
    click.echo(f"{len(bc)} bars; outputs at {out_prefix}_*.csv")


@main.command()
@click.option("--points", "points_path", type=click.Path(exists=True), required=True,
              help="configuration CSV (columns x1..xd)")
@click.option("--t", type=float, required=True)
@click.option("--k", default=1, show_default=True)
def indicators(points_path, t, k):
    """Evaluate the hole indicators on one configuration."""
    pts = PointCloud.from_csv(points_path).points
    out = {"t": t, "k": k, "points": pts.shape[0]}
    if pts.shape[0] == k + 2:
        out["h_plus"] = h_plus(pts, t)
        out["h_minus"] = h_minus(pts, t)
        out["h"] = h(pts, t)
    conn, bk = h_component(pts, t, k)
    out["connected"] = conn
    out["betti_k"] = bk
    click.echo(json.dumps(out, indent=2))


@main.command("limits")
@_add_options(_DENSITY_OPTS)
@click.option("--ck", is_flag=True, help="closed-form c_k")
@click.option("--indicator", "indicator_kind",
              type=click.Choice(["h", "h_plus", "h_minus", "pair"]), default=None)
@click.option("--mu", nargs=3, type=int, default=None, help="i j j' for the mu integral")
@click.option("--xi", nargs=4, type=int, default=None, help="i j i' j' for the xi integral")
@click.option("--zcov", is_flag=True, help="truncated covariance series")
@click.option("--zmean", is_flag=True, help="truncated mean series")
@click.option("--t", type=float, default=1.0, show_default=True)
@click.option("--s", type=float, default=None)
@click.option("--lam", "--lambda", "lam", type=float, default=0.0, show_default=True)
@click.option("--bigk", "--K", "bigk", type=float, default=None, help="localization cutoff (default inf)")
@click.option("--m", "trunc", type=int, default=6, show_default=True, help="series truncation M")
@click.option("--mc-samples", default=400_000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", type=click.Path(), default=None, help="write JSON here instead of stdout")
def limits_cmd(dim, alpha, k, ck, indicator_kind, mu, xi, zcov, zmean, t, s, lam, bigk,
               trunc, mc_samples, seed, out):
    """Evaluate limit-law quantities to JSON."""
    K = math.inf if bigk is None else bigk
    result: dict = {"d": dim, "alpha": alpha, "k": k}
    if ck:
        result["c_k"] = limits.c_k(dim, k, alpha)
    if indicator_kind:
        est = limits.indicator_integral(
            indicator_kind, k, dim, t=t, s=s, mc_samples=mc_samples, seed=seed
        )
        result[f"indicator_{indicator_kind}"] = est.to_dict()
    if mu:
        est = limits.mu_integral(
            mu[0], mu[1], mu[2], t, s if s is not None else t, lam, K,
            k=k, d=dim, alpha=alpha, mc_samples=mc_samples, seed=seed,
        )
        result["mu"] = est.to_dict()
    if xi:
        est = limits.xi_integral(
            xi[0], xi[1], xi[2], xi[3], t, s if s is not None else t, lam, K,
            k=k, d=dim, alpha=alpha, mc_samples=mc_samples, seed=seed,
        )
        result["xi"] = est.to_dict()
    if zmean:
        res = limits.z_mean(t, lam, trunc, K, k=k, d=dim, alpha=alpha,
                            mc_samples=mc_samples, seed=seed)
        result["z_mean"] = dict(res.estimate.to_dict(), truncation_bound=res.truncation_bound)
    if zcov:
        res = limits.z_covariance(t, s if s is not None else t, lam, trunc, K,
                                  k=k, d=dim, alpha=alpha, mc_samples=mc_samples, seed=seed)
        result["z_covariance"] = dict(res.estimate.to_dict(), truncation_bound=res.truncation_bound)
    text = json.dumps(result, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text)


@main.command()
@_add_options(_DENSITY_OPTS)
@click.option("--which", type=click.Choice(["V", "Vpm", "Y", "Y+", "Y-", "Z"]), default="V")
@click.option("--t-grid", default="0.25,0.5,0.75,1.0", show_default=True)
@click.option("--n-paths", default=1, show_default=True, type=int)
@click.option("--lam", "--lambda", "lam", type=float, default=0.05, show_default=True)
@click.option("--m", "trunc", type=int, default=4, show_default=True)
@click.option("--bigk", "--K", "bigk", type=float, default=None)
@click.option("--mc-samples", default=200_000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out-dir", type=click.Path(), required=True)
def simulate(dim, alpha, k, which, t_grid, n_paths, lam, trunc, bigk, mc_samples, seed, out_dir):
    """Simulate limiting-process paths; one CSV per path."""
    grid = np.array([float(x) for x in t_grid.split(",")])
    os.makedirs(out_dir, exist_ok=True)
    K = math.inf if bigk is None else bigk
    window = 2.0 * float(grid.max()) * (k + 1)
    written = []
    for p in range(n_paths):
        seed_p = (seed, p)
        if which == "V":
            paths = [limits.simulate_V(grid, k, dim, alpha, window, seed_p)]
        elif which == "Vpm":
            paths = list(limits.simulate_V_pm(grid, k, dim, alpha, window, seed_p))
        elif which in ("Y", "Y+", "Y-"):
            paths = [limits.simulate_Y(grid, k, dim, alpha, mc_samples=mc_samples,
                                       seed=seed_p, which=which)]
        else:
            paths = [limits.simulate_Z(grid, lam, trunc, K, k=k, d=dim, alpha=alpha,
                                       mc_samples=mc_samples, seed=seed_p)]
        for path in paths:
            name = path.which.replace("+", "plus").replace("-", "minus")
            fname = os.path.join(out_dir, f"{name}_{p}.csv")
            path.to_csv(fname)
            written.append(fname)
    click.echo("\n".join(written))


@main.command()
@click.option("--config", "config_path", type=click.Path(), required=True)
@click.option("--workers", type=int, default=None, help="override worker count")
@click.option("--out-dir", type=click.Path(), default=None)
def experiment(config_path, workers, out_dir):
    """Run a replicated regime experiment from a JSON config."""
    try:
        config = ExperimentConfig.from_json_file(config_path)
    except ConfigError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if workers is not None:
        config.workers = workers
    if out_dir is not None:
        config.out_dir = out_dir
    report = run_regime_experiment(config)
    if config.out_dir:
        click.echo(f"report written to {config.out_dir}/report.json")
    else:
        click.echo(report.to_json())


@main.command()
@click.option("--suite", default="all", show_default=True,
              help="criterion suite name or 'all'")
@click.option("--list", "list_suites", is_flag=True, help="list suite names")
def verify(suite, list_suites):
    """Run the acceptance suite; one pass/fail line per criterion;
    exit nonzero on failure."""
    from . import acceptance

    if list_suites:
        for name in acceptance.SUITES:
            click.echo(name)
        return
    try:
        results = acceptance.run(suite)
    except KeyError as exc:
        click.echo(f"error: unknown suite {exc.args[0]!r}", err=True)
        sys.exit(2)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        click.echo(f"[{status}] {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    if failed:
        click.echo(f"{failed} criterion(s) failed", err=True)
        sys.exit(1)
    click.echo(f"all {len(results)} criteria passed")


if __name__ == "__main__":
    main()
