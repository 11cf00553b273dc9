"""Heavy-tailed Poisson point clouds and the three cutoff-radius regimes.

The random model is an inhomogeneous Poisson process on R^d with intensity
n*f, where f is the spherically symmetric power-law density

    f(x) = C / (1 + |x|^alpha),        alpha > d,

the one concrete member of the regularly-varying family this lab supports.
Radii are drawn by inverting the radial CDF (dense quadrature table + Newton
polish, analytic inversion in the far tail); directions are uniform on the
sphere.  Cutoff radii R_n for the three growth regimes are obtained by
solving the defining equations exactly at the finite n at hand rather than
using their asymptotic simplifications.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate, optimize
from scipy.interpolate import PchipInterpolator
from scipy.special import gamma as gamma_fn

__all__ = [
    "DensitySpec",
    "RegimeSpec",
    "PointCloud",
    "sphere_area",
    "ball_volume",
    "make_rng",
    "split_seed",
    "gamma_upper_bound",
    "sample_cloud",
    "sample_restricted",
    "regime_radius",
    "restrict_outside",
]

# Quantile below which the radial CDF is inverted from its power series at 0,
# and tail mass below which the analytic asymptotic inversion takes over.
_SERIES_RADIUS = 0.05
_TAIL_MASS = 1e-6


def sphere_area(d: int) -> float:
    """Surface area s_{d-1} of the unit sphere in R^d."""
    return 2.0 * math.pi ** (d / 2.0) / gamma_fn(d / 2.0)


def ball_volume(d: int) -> float:
    """Volume omega_d of the unit ball in R^d."""
    return math.pi ** (d / 2.0) / gamma_fn(d / 2.0 + 1.0)


def make_rng(seed) -> np.random.Generator:
    """Deterministic generator from an int or a tuple of ints."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def split_seed(seed, index: int) -> tuple:
    """Derive the stream for replication `index` from a master seed.

    Streams for distinct indices are statistically independent and do not
    depend on how work is distributed across workers.
    """
    if isinstance(seed, (list, tuple)):
        return tuple(seed) + (int(index),)
    return (int(seed), int(index))


@dataclass(frozen=True)
class DensitySpec:
    """Power-law density f(x) = C/(1 + |x|^alpha) on R^d.

    C must normalize f; the constructor checks the radial integral
    s_{d-1} C r^{d-1}/(1+r^alpha) against 1 to 1e-8.
    """

    d: int
    alpha: float
    C: float

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("ambient dimension d must be >= 2")
        if not self.alpha > self.d:
            raise ValueError(
                f"tail exponent alpha={self.alpha} must exceed d={self.d} "
                "for integrability"
            )
        if not self.C > 0:
            raise ValueError("normalizer C must be positive")
        total, _ = integrate.quad(self.radial_pdf, 0.0, np.inf)
        if abs(total - 1.0) > 1e-8:
            raise ValueError(
                f"C={self.C} does not normalize the density "
                f"(radial integral {total!r})"
            )

    @classmethod
    def power_law(cls, d: int, alpha: float) -> "DensitySpec":
        """Spec with C chosen so the density integrates to one.

        Uses the closed form int_0^inf r^{d-1}/(1+r^alpha) dr
        = (pi/alpha)/sin(pi d/alpha).
        """
        if not alpha > d:
            raise ValueError(f"alpha={alpha} must exceed d={d}")
        radial = (math.pi / alpha) / math.sin(math.pi * d / alpha)
        return cls(d=d, alpha=alpha, C=1.0 / (sphere_area(d) * radial))

    def f(self, x: np.ndarray) -> np.ndarray:
        """Density value(s) at point(s) x (last axis is the coordinate)."""
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        return self.C / (1.0 + r ** self.alpha)

    def f_radial(self, r) -> np.ndarray:
        """Density at radius r (any direction)."""
        r = np.asarray(r, dtype=float)
        return self.C / (1.0 + r ** self.alpha)

    def radial_pdf(self, r) -> np.ndarray:
        """Density of the radius |X|: s_{d-1} C r^{d-1}/(1+r^alpha)."""
        r = np.asarray(r, dtype=float)
        return sphere_area(self.d) * self.C * r ** (self.d - 1) / (1.0 + r ** self.alpha)

    def radial_tail(self, r: float) -> float:
        """P(|X| > r), by adaptive quadrature."""
        val, _ = integrate.quad(self.radial_pdf, r, np.inf)
        return val

    def to_config(self) -> dict:
        return {"d": self.d, "alpha": self.alpha, "C": self.C}

    @classmethod
    def from_config(cls, cfg: dict) -> "DensitySpec":
        if "C" in cfg and cfg["C"] is not None:
            return cls(d=int(cfg["d"]), alpha=float(cfg["alpha"]), C=float(cfg["C"]))
        return cls.power_law(int(cfg["d"]), float(cfg["alpha"]))


# ---------------------------------------------------------------------------
# Radial inverse CDF
# ---------------------------------------------------------------------------


class _RadialQuantiler:
    """Inverse of the radial CDF for one density spec.

    Three branches:
      * r below _SERIES_RADIUS: Newton on the alternating power series of the
        CDF at 0 (exact to machine precision there);
      * body: monotone PCHIP table of the CDF from composite Gauss-Legendre
        panels, Newton-polished with the analytic pdf;
      * upper _TAIL_MASS of mass: analytic two-term asymptotic tail inversion
        plus Newton (the dropped term is O(r^{-3 alpha}) relative).
    """

    _GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)

    def __init__(self, spec: DensitySpec, body_knots: int = 16000):
        self.spec = spec
        d, alpha, C = spec.d, spec.alpha, spec.C
        s = sphere_area(d)
        self._coef = s * C

        # Cutoff radius holding the top _TAIL_MASS of probability.
        r_star = (s * C / ((alpha - d) * _TAIL_MASS)) ** (1.0 / (alpha - d))
        r_star = max(r_star, 4.0)
        self.r_star = r_star

        body_hi = min(8.0, r_star)
        grid = np.concatenate(
            [
                np.linspace(0.0, body_hi, body_knots // 2),
                np.geomspace(body_hi, r_star, body_knots // 2 + 1)[1:],
            ]
        )
        # Composite GL panels give CDF values at the knots to ~1e-15.
        a, b = grid[:-1], grid[1:]
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        pts = mid[:, None] + half[:, None] * self._GL_NODES[None, :]
        panel = (half[:, None] * self._GL_WEIGHTS[None, :] * spec.radial_pdf(pts)).sum(axis=1)
        cdf = np.concatenate([[0.0], np.cumsum(panel)])

        self.r_knots = grid
        self.cdf_knots = cdf
        self.u_cut = float(cdf[-1])
        self._fwd = PchipInterpolator(grid, cdf, extrapolate=False)
        self._inv = PchipInterpolator(cdf, grid, extrapolate=False)
        self.u_series = float(self._fwd(_SERIES_RADIUS)) if r_star > _SERIES_RADIUS else 0.0

    # -- series branch ------------------------------------------------------

    def _cdf_series(self, r):
        d, alpha = self.spec.d, self.spec.alpha
        out = np.zeros_like(r)
        for m in range(4):
            out += (-1.0) ** m * r ** (d + m * alpha) / (d + m * alpha)
        return self._coef * out

    def _pdf(self, r):
        return self.spec.radial_pdf(r)

    def _invert_series(self, u):
        d = self.spec.d
        r = (d * u / self._coef) ** (1.0 / d)
        for _ in range(4):
            r = r - (self._cdf_series(r) - u) / np.maximum(self._pdf(r), 1e-300)
        return r

    # -- tail branch --------------------------------------------------------

    def _tail_two_term(self, r):
        d, alpha = self.spec.d, self.spec.alpha
        return self._coef * (
            r ** (d - alpha) / (alpha - d) - r ** (d - 2 * alpha) / (2 * alpha - d)
        )

    def _tail_two_term_deriv(self, r):
        d, alpha = self.spec.d, self.spec.alpha
        return self._coef * (-(r ** (d - alpha - 1)) + r ** (d - 2 * alpha - 1))

    def _invert_tail(self, u):
        d, alpha = self.spec.d, self.spec.alpha
        tau = 1.0 - u
        r = (self._coef / ((alpha - d) * tau)) ** (1.0 / (alpha - d))
        for _ in range(3):
            r = r - (self._tail_two_term(r) - tau) / self._tail_two_term_deriv(r)
        return r

    # -- public -------------------------------------------------------------

    def quantile(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        out = np.empty_like(u)
        lo = u < self.u_series
        hi = u > self.u_cut
        mid = ~(lo | hi)
        if lo.any():
            out[lo] = self._invert_series(u[lo])
        if hi.any():
            out[hi] = self._invert_tail(u[hi])
        if mid.any():
            r = np.asarray(self._inv(u[mid]), dtype=float)
            for _ in range(3):
                r = r - (np.asarray(self._fwd(r)) - u[mid]) / np.maximum(self._pdf(r), 1e-300)
            out[mid] = r
        return out

    def cdf(self, r: float) -> float:
        if r <= 0:
            return 0.0
        if r <= _SERIES_RADIUS:
            return float(self._cdf_series(np.asarray(r, dtype=float)))
        if r >= self.r_star:
            return 1.0 - self.spec.radial_tail(r)
        return float(self._fwd(r))


@lru_cache(maxsize=32)
def _quantiler(d: int, alpha: float, C: float) -> _RadialQuantiler:
    return _RadialQuantiler(DensitySpec(d=d, alpha=alpha, C=C))


def radial_quantiler(spec: DensitySpec) -> _RadialQuantiler:
    return _quantiler(spec.d, spec.alpha, spec.C)


# ---------------------------------------------------------------------------
# Point clouds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointCloud:
    """Finite realization of the Poisson cloud with its provenance."""

    points: np.ndarray  # (m, d)
    n: float
    seed: tuple = field(default=())

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            raise ValueError("points must be an (m, d) array")
        if not np.isfinite(pts).all():
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([f"x{i + 1}" for i in range(self.d)])
            for row in self.points:
                w.writerow([repr(float(v)) for v in row])

    @classmethod
    def from_csv(cls, path, n: float = 0.0, seed: tuple = ()) -> "PointCloud":
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(points=data, n=n, seed=seed)


def _uniform_directions(rng: np.random.Generator, m: int, d: int) -> np.ndarray:
    g = rng.standard_normal((m, d))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # A zero Gaussian vector has probability 0; guard anyway.
    norms[norms == 0.0] = 1.0
    return g / norms


def sample_cloud(spec: DensitySpec, n: float, seed) -> PointCloud:
    """Draw one realization of the Poisson process with intensity n*f.

    Point count is Poisson(n); radii come from the radial inverse CDF and
    directions are uniform on the sphere.  Deterministic given the seed.
    """
    if not n > 0:
        raise ValueError("intensity n must be positive")
    rng = make_rng(seed)
    m = int(rng.poisson(n))
    q = radial_quantiler(spec)
    radii = q.quantile(rng.random(m))
    pts = radii[:, None] * _uniform_directions(rng, m, spec.d)
    return PointCloud(points=pts.reshape(m, spec.d), n=n, seed=_as_tuple(seed))


def sample_restricted(spec: DensitySpec, n: float, R: float, seed) -> PointCloud:
    """Realization of the process restricted to {|x| >= R}.

    Distributionally identical to sample_cloud followed by restrict_outside
    (a Poisson process restricted to a region is again Poisson), but only the
    surviving points are generated.
    """
    if not n > 0:
        raise ValueError("intensity n must be positive")
    if R < 0:
        raise ValueError("R must be nonnegative")
    rng = make_rng(seed)
    q = radial_quantiler(spec)
    u0 = q.cdf(R)
    m = int(rng.poisson(n * (1.0 - u0)))
    radii = q.quantile(u0 + (1.0 - u0) * rng.random(m))
    radii = np.maximum(radii, R)
    pts = radii[:, None] * _uniform_directions(rng, m, spec.d)
    return PointCloud(points=pts.reshape(m, spec.d), n=n, seed=_as_tuple(seed))


def _as_tuple(seed) -> tuple:
    if isinstance(seed, (list, tuple)):
        return tuple(seed)
    return (int(seed),)


def restrict_outside(cloud: PointCloud, R: float) -> PointCloud:
    """Points of the cloud with Euclidean norm >= R, order preserved."""
    if R < 0:
        raise ValueError("R must be nonnegative")
    if cloud.size == 0:
        return cloud
    keep = np.linalg.norm(cloud.points, axis=1) >= R
    return PointCloud(points=cloud.points[keep], n=cloud.n, seed=cloud.seed)


# ---------------------------------------------------------------------------
# Regime radii
# ---------------------------------------------------------------------------


def gamma_upper_bound(d: int, alpha: float, k: int) -> float:
    """Largest admissible interpolation exponent for the intermediate regime.

    n*f(R_n) = n^-gamma keeps n^{k+2} R_n^d f(R_n)^{k+2} -> infinity iff
    gamma < d/(alpha(k+2) - d).
    """
    return d / (alpha * (k + 2) - d)


def default_gamma(d: int, alpha: float, k: int) -> float:
    """Midpoint of the admissible interpolation range."""
    return 0.5 * gamma_upper_bound(d, alpha, k)


@dataclass(frozen=True)
class RegimeSpec:
    """A resolved cutoff radius with the parameters that produced it."""

    regime: str  # "I", "II", or "III"
    n: float
    k: int
    radius: float
    lam: float | None = None
    gamma: float | None = None

    def to_config(self) -> dict:
        cfg = {"regime": self.regime, "n": self.n, "k": self.k, "radius": self.radius}
        if self.lam is not None:
            cfg["lambda"] = self.lam
        if self.gamma is not None:
            cfg["gamma"] = self.gamma
        return cfg

    @classmethod
    def from_config(cls, cfg: dict, density: "DensitySpec") -> "RegimeSpec":
        """Resolve a JSON block (keys regime, n, k, lambda, gamma) against a
        density; a stored radius is verified rather than trusted."""
        spec = regime_spec(
            density,
            cfg["regime"],
            float(cfg["n"]),
            int(cfg.get("k", 1)),
            lam=cfg.get("lambda"),
            gamma=cfg.get("gamma"),
        )
        if "radius" in cfg and not math.isclose(
            float(cfg["radius"]), spec.radius, rel_tol=1e-9
        ):
            raise ValueError(
                f"stored radius {cfg['radius']} does not solve the {spec.regime} "
                f"equation (resolved {spec.radius})"
            )
        return spec


def _solve_level(spec: DensitySpec, n: float, level: float) -> float:
    """Solve n*f(R) = level for R > 0 (f is strictly decreasing in |x|)."""
    if not n * spec.C / 2.0 > level:
        raise ValueError(
            f"n*f at radius 1 is already below the target level {level}; "
            "n too small for a radius > 1"
        )
    hi = 2.0
    while n * float(spec.f_radial(hi)) > level:
        hi *= 2.0
        if hi > 1e30:  # pragma: no cover - parameters guarantee a root
            raise RuntimeError("failed to bracket the radius")
    root = optimize.brentq(
        lambda r: n * float(spec.f_radial(r)) - level, 1e-12, hi, xtol=1e-15, rtol=1e-15
    )
    return float(root)


def regime_radius(
    spec: DensitySpec,
    regime: str,
    n: float,
    k: int,
    lam: float | None = None,
    gamma: float | None = None,
) -> float:
    """Cutoff radius solving the defining equation of the given regime.

    Regime I:   n^{k+2} R^d f(R e1)^{k+2} = 1
    Regime II:  n f(R e1) = n^-gamma, gamma in (0, d/(alpha(k+2)-d))
    Regime III: n f(R e1) = lambda

    Solved exactly for the finite n at hand; the relative residual of the
    defining equation is at most 1e-10.
    """
    if not n > 0:
        raise ValueError("n must be positive")
    if k < 1:
        raise ValueError("homological degree k must be >= 1")
    regime = regime.upper()
    if regime == "I":
        kk = k + 2

        def logphi(r):
            return kk * math.log(n) + spec.d * math.log(r) + kk * math.log(
                float(spec.f_radial(r))
            )

        if logphi(1.0) < 0.0:
            raise ValueError(
                "no bracket: n too small for the sparse-regime equation to "
                "have a root above 1"
            )
        hi = 2.0
        while logphi(hi) > 0.0:
            hi *= 2.0
            if hi > 1e30:  # pragma: no cover
                raise RuntimeError("failed to bracket the radius")
        root = optimize.brentq(logphi, 1.0, hi, xtol=1e-15, rtol=1e-15)
        return float(root)
    if regime == "II":
        g = default_gamma(spec.d, spec.alpha, k) if gamma is None else float(gamma)
        g_max = gamma_upper_bound(spec.d, spec.alpha, k)
        if not 0.0 < g < g_max:
            raise ValueError(
                f"gamma={g} outside the admissible range (0, {g_max:.6g}) = "
                f"(0, d/(alpha(k+2)-d)) for d={spec.d}, alpha={spec.alpha}, k={k}"
            )
        return _solve_level(spec, n, n ** (-g))
    if regime == "III":
        if lam is None:
            raise ValueError("regime III requires lambda")
        if not lam > 0:
            raise ValueError("lambda must be positive")
        return _solve_level(spec, n, lam)
    raise ValueError(f"unknown regime {regime!r}")


def regime_spec(
    spec: DensitySpec,
    regime: str,
    n: float,
    k: int,
    lam: float | None = None,
    gamma: float | None = None,
) -> RegimeSpec:
    if regime.upper() == "II" and gamma is None:
        gamma = default_gamma(spec.d, spec.alpha, k)
    r = regime_radius(spec, regime, n, k, lam=lam, gamma=gamma)
    return RegimeSpec(regime=regime.upper(), n=n, k=k, radius=r, lam=lam, gamma=gamma)


def rho_n(spec: DensitySpec, n: float, k: int, radius: float) -> float:
    """Sparse-regime scale n^{k+2} R^d f(R e1)^{k+2} at a given radius."""
    return float(n ** (k + 2) * radius ** spec.d * spec.f_radial(radius) ** (k + 2))
