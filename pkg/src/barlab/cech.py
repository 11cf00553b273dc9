"""Čech filtrations from minimal enclosing balls.

A (p+1)-subset enters the complex at the smallest t for which its closed
balls of radius t/2 share a point; by Helly's theorem for Euclidean balls
that t equals the diameter (twice the radius) of the subset's smallest
enclosing ball.  Simplex filtration values are therefore meb *diameters*,
and the edge value degenerates to the Euclidean distance of the endpoints.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

__all__ = [
    "miniball",
    "simplex_value",
    "Simplex",
    "FilteredComplex",
    "build_filtered_complex",
    "ComplexityBudgetError",
    "meb_diameter",
    "meb_diameter_batch3",
]

_EPS = 1e-12


class ComplexityBudgetError(RuntimeError):
    """Raised when clique enumeration exceeds the configured budget."""

    def __init__(self, count: int, budget: int):
        super().__init__(
            f"clique enumeration exceeded the budget: {count} cliques examined, "
            f"budget {budget}"
        )
        self.count = count
        self.budget = budget


# ---------------------------------------------------------------------------
# Smallest enclosing ball (Welzl recursion with bounded support sets)
# ---------------------------------------------------------------------------


def _circumball(support: list[np.ndarray]) -> tuple[np.ndarray, float]:
    """Smallest ball with all support points on its boundary.

    The center lies in the affine hull of the support; the Gram system is
    solved by least squares with pivot tolerance 1e-12, which also covers
    affinely dependent (degenerate) supports.
    """
    p0 = support[0]
    if len(support) == 1:
        return p0.copy(), 0.0
    V = np.asarray(support[1:]) - p0  # rows span the affine hull
    gram = V @ V.T
    rhs = 0.5 * np.einsum("ij,ij->i", V, V)
    coef, *_ = np.linalg.lstsq(gram, rhs, rcond=_EPS)
    center = p0 + coef @ V
    radius = float(np.sqrt(((np.asarray(support) - center) ** 2).sum(axis=1).max()))
    return center, radius


def _welzl(pts: np.ndarray, order: list[int], boundary: list[np.ndarray], d: int):
    if not order or len(boundary) == d + 1:
        if not boundary:
            return pts[0] * 0.0, -1.0
        return _circumball(boundary)
    head, rest = order[0], order[1:]
    center, radius = _welzl(pts, rest, boundary, d)
    p = pts[head]
    if radius >= 0 and np.dot(p - center, p - center) <= (radius + _EPS * (1 + radius)) ** 2:
        return center, radius
    return _welzl(pts, rest, boundary + [p], d)


def _meb3(pts: np.ndarray) -> tuple[np.ndarray, float]:
    """Analytic 3-point ball; the radius matches meb_diameter_batch3 bit for
    bit (obtuse and degenerate sets take the longest-edge midpoint ball)."""
    a, b, c = pts
    ab2 = float(((a - b) ** 2).sum())
    bc2 = float(((b - c) ** 2).sum())
    ca2 = float(((c - a) ** 2).sum())
    sides2 = [ab2, bc2, ca2]
    pairs = [(a, b), (b, c), (c, a)]
    longest = max(range(3), key=lambda i: sides2[i])
    if 2.0 * sides2[longest] >= ab2 + bc2 + ca2:
        p, q = pairs[longest]
        return 0.5 * (p + q), 0.5 * math.sqrt(sides2[longest])
    u = b - a
    v = c - a
    uu = float((u * u).sum())
    vv = float((v * v).sum())
    uv = float((u * v).sum())
    area2sq = uu * vv - uv * uv
    x = vv * (uu - uv) / (2.0 * area2sq)
    y = uu * (vv - uv) / (2.0 * area2sq)
    center = a + x * u + y * v
    return center, 0.5 * math.sqrt(ab2 * bc2 * ca2 / area2sq)


def miniball(points) -> tuple[np.ndarray, float]:
    """Smallest enclosing ball (center, radius) of a finite point set."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.size == 0:
        raise ValueError("miniball of an empty point set is undefined")
    if not np.isfinite(pts).all():
        raise ValueError("miniball requires finite coordinates")
    m, d = pts.shape
    if m == 1:
        return pts[0].copy(), 0.0
    if m == 2:
        c = 0.5 * (pts[0] + pts[1])
        return c, float(np.linalg.norm(pts[0] - c))
    if m == 3:
        return _meb3(pts)
    order = list(range(m))
    random.Random(0xB17D).shuffle(order)
    center, radius = _welzl(pts, order, [], d)
    return center, max(radius, 0.0)


def meb_diameter(points) -> float:
    """Diameter of the smallest enclosing ball."""
    return 2.0 * miniball(points)[1]


def simplex_value(points) -> float:
    """Filtration value of a vertex set: the smallest t at which its
    radius-t/2 balls share a common point, i.e. the meb diameter."""
    return meb_diameter(points)


def meb_diameter_batch3(triples: np.ndarray) -> np.ndarray:
    """meb diameters for a batch of 3-point sets, shape (N, 3, d).

    Obtuse and right (and degenerate collinear) triangles have the midpoint
    ball of their longest side; acute ones the circumball.
    """
    a, b, c = triples[:, 0], triples[:, 1], triples[:, 2]
    ab2 = ((a - b) ** 2).sum(-1)
    bc2 = ((b - c) ** 2).sum(-1)
    ca2 = ((c - a) ** 2).sum(-1)
    sides2 = np.stack([ab2, bc2, ca2], axis=-1)
    longest2 = sides2.max(axis=-1)
    obtuse = 2.0 * longest2 >= sides2.sum(axis=-1)

    u = b - a
    v = c - a
    uu = (u * u).sum(-1)
    vv = (v * v).sum(-1)
    uv = (u * v).sum(-1)
    area2sq = np.maximum(uu * vv - uv * uv, 0.0)  # (2*Area)^2
    prod = ab2 * bc2 * ca2
    with np.errstate(divide="ignore", invalid="ignore"):
        circum_diam = np.sqrt(np.where(area2sq > 0, prod / np.maximum(area2sq, 1e-300), np.inf))
    return np.where(obtuse, np.sqrt(longest2), circum_diam)


# ---------------------------------------------------------------------------
# Filtered complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Simplex:
    vertices: tuple
    value: float

    def __post_init__(self):
        v = tuple(int(x) for x in self.vertices)
        if any(v[i] >= v[i + 1] for i in range(len(v) - 1)):
            raise ValueError("vertices must be strictly increasing")
        if self.value < 0:
            raise ValueError("filtration value must be nonnegative")
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def facets(self):
        if len(self.vertices) == 1:
            return []
        return [self.vertices[:i] + self.vertices[i + 1:] for i in range(len(self.vertices))]


@dataclass
class FilteredComplex:
    """Simplices up to max_dim with value <= t_max, in filtration order."""

    simplices: list
    max_dim: int
    t_max: float
    n_vertices: int

    def __post_init__(self):
        self.simplices = sorted(self.simplices, key=lambda s: (s.value, s.dim, s.vertices))

    def counts(self) -> dict:
        out: dict = {}
        for s in self.simplices:
            out[s.dim] = out.get(s.dim, 0) + 1
        return out

    def values_of_dim(self, dim: int) -> np.ndarray:
        return np.array([s.value for s in self.simplices if s.dim == dim])

    def to_text(self, path) -> None:
        """One simplex per line: `value dim v0 v1 ... vp`, filtration order."""
        with open(path, "w") as fh:
            for s in self.simplices:
                verts = " ".join(str(v) for v in s.vertices)
                fh.write(f"{s.value!r} {s.dim} {verts}\n")

    @classmethod
    def from_text(cls, path, max_dim: int | None = None, t_max: float = np.inf):
        simplices = []
        nv = 0
        with open(path) as fh:
            for line in fh:
                parts = line.split()
                if not parts:
                    continue
                value = float(parts[0])
                verts = tuple(int(x) for x in parts[2:])
                simplices.append(Simplex(vertices=verts, value=value))
                nv = max(nv, max(verts) + 1)
        md = max((s.dim for s in simplices), default=0) if max_dim is None else max_dim
        return cls(simplices=simplices, max_dim=md, t_max=t_max, n_vertices=nv)


def build_filtered_complex(
    cloud,
    max_dim: int,
    t_max: float,
    max_cliques: int = 2_000_000,
) -> FilteredComplex:
    """All simplices of dimension <= max_dim with filtration value <= t_max.

    Edges come from the pairwise distance threshold; higher simplices are
    cliques of the t_max-neighborhood graph, each valued by its meb diameter
    (floored by facet values so monotonicity holds exactly in floating
    point).  Refuses clouds whose clique count exceeds `max_cliques`.
    """
    pts = cloud.points if hasattr(cloud, "points") else np.asarray(cloud, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected an (m, d) point array")
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    m = pts.shape[0]

    simplices = [Simplex(vertices=(i,), value=0.0) for i in range(m)]
    if m == 0 or t_max == 0 or max_dim == 0:
        return FilteredComplex(simplices=simplices, max_dim=max_dim, t_max=t_max, n_vertices=m)

    diff = pts[:, None, :] - pts[None, :, :]
    # einsum keeps the same multiply-add order as the per-pair edge formula,
    # so edge values match the rank oracle's bit for bit
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    later = np.arange(m)
    adjacency = [np.nonzero((dist[i] <= t_max) & (later > i))[0] for i in range(m)]

    values: dict = {}
    examined = 0

    def neighbors_after(clique, last):
        nbrs = adjacency[last]
        mask = dist[np.ix_(list(clique), nbrs)].max(axis=0) <= t_max
        return nbrs[mask]

    # Breadth-by-dimension clique expansion keeps facet values available.
    frontier = []
    for i in range(m):
        for j in adjacency[i]:
            verts = (i, int(j))
            values[verts] = float(dist[i, j])
            frontier.append(verts)
            examined += 1
            if examined > max_cliques:
                raise ComplexityBudgetError(examined, max_cliques)

    dim = 1
    while dim < max_dim and frontier:
        nxt = []
        for verts in frontier:
            for j in neighbors_after(verts, verts[-1]):
                new = verts + (int(j),)
                examined += 1
                if examined > max_cliques:
                    raise ComplexityBudgetError(examined, max_cliques)
                diam = meb_diameter(pts[list(new)])
                facet_floor = max(
                    values[new[:i] + new[i + 1:]] for i in range(len(new))
                )
                values[new] = max(diam, facet_floor)
                nxt.append(new)
        frontier = nxt
        dim += 1

    for verts, value in values.items():
        if value <= t_max:
            simplices.append(Simplex(vertices=verts, value=value))
    return FilteredComplex(simplices=simplices, max_dim=max_dim, t_max=t_max, n_vertices=m)
