"""Finite models of the projection complex P_K and the quasi-tree of lines C_K.

Each member line is sampled at spacing at most ``h`` over the hull of the
projections it receives (plus any caller-supplied anchor coordinates).
Consecutive samples are joined by edges weighted by the coordinate gap, and
members adjacent in ``P_K`` are joined by a unit-weight bridge between the
samples nearest to the midpoints of their mutual projections.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from .projections import ProjectionSystem


class KTooSmall(ValueError):
    def __init__(self, K: float, bound: float, what: str = "4*xi"):
        super().__init__(f"K = {K:g} must exceed {what} = {bound:g}")
        self.K = K
        self.bound = bound
        self.what = what


class Disconnected(ValueError):
    pass


def truncate(t: float, K: float) -> float:
    if K < 0:
        raise ValueError("K must be >= 0")
    return t if t >= K else 0.0


def default_K(xi: float) -> int:
    return math.ceil(4 * xi) + 1


def _check_K(system: ProjectionSystem, K: float) -> None:
    bound = 4 * system.estimate_xi()
    if not K > bound:
        raise KTooSmall(K, bound)


def max_projection_distance(system: ProjectionSystem) -> np.ndarray:
    """``M[Y, Z] = max over W not in {Y, Z} of d_W(Y, Z)`` (0 with no third member)."""
    n = system.n
    out = np.zeros((n, n))
    for w in range(n):
        d = np.maximum(system.hi[w][:, None], system.hi[w][None, :]) - np.minimum(
            system.lo[w][:, None], system.lo[w][None, :]
        )
        d[w, :] = 0.0
        d[:, w] = 0.0
        np.fill_diagonal(d, 0.0)
        np.fmax(out, d, out=out)
    return out


def build_projection_complex(system: ProjectionSystem, K: float, check: bool = True) -> np.ndarray:
    """Boolean adjacency of ``P_K``: ``Y ~ Z`` iff no third member sees them more than ``K`` apart."""
    if check:
        _check_K(system, K)
    adj = max_projection_distance(system) <= K
    np.fill_diagonal(adj, False)
    return adj


def is_connected(adj: np.ndarray) -> bool:
    if len(adj) <= 1:
        return True
    return connected_components(csr_matrix(adj), directed=False)[0] == 1


@dataclass
class QuasiTreeGraph:
    system: ProjectionSystem = field(repr=False)
    K: float
    h: float
    member: np.ndarray = field(repr=False)
    coord: np.ndarray = field(repr=False)
    offsets: np.ndarray = field(repr=False)
    edges: list[tuple[int, int, float]] = field(repr=False)
    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = len(self.member)
        u, v, w = (np.array(x) for x in zip(*self.edges)) if self.edges else (np.zeros(0, int),) * 3
        mat = coo_matrix((np.asarray(w, float), (np.asarray(u, int), np.asarray(v, int))), shape=(n, n))
        self.matrix = (mat + mat.T).tocsr()
        self._rows: dict[int, np.ndarray] = {}

    @property
    def num_vertices(self) -> int:
        return len(self.member)

    @property
    def bridges(self) -> list[tuple[int, int, float]]:
        return [e for e in self.edges if self.member[e[0]] != self.member[e[1]]]

    def samples(self, y: int) -> np.ndarray:
        return self.coord[self.offsets[y] : self.offsets[y + 1]]

    def vertex(self, y: int, t: float) -> int:
        """Sample of member ``y`` nearest to coordinate ``t``; ties go to the lower one."""
        s = self.samples(y)
        i = int(np.searchsorted(s, t))
        if i == 0:
            j = 0
        elif i == len(s):
            j = len(s) - 1
        else:
            j = i - 1 if t - s[i - 1] <= s[i] - t else i
        return int(self.offsets[y] + j)

    def point(self, v: int) -> tuple[int, float]:
        return int(self.member[v]), float(self.coord[v])

    def distances_from(self, sources: Sequence[int]) -> np.ndarray:
        missing = [s for s in dict.fromkeys(sources) if s not in self._rows]
        if missing:
            rows = dijkstra(self.matrix, directed=False, indices=missing)
            for s, r in zip(missing, np.atleast_2d(rows)):
                self._rows[s] = r
        return np.array([self._rows[s] for s in sources])

    def is_connected(self) -> bool:
        return connected_components(self.matrix, directed=False)[0] == 1

    def member_subgraph_distance(self, y: int, i: int, j: int) -> float:
        """Distance along member ``y``'s own path between its samples ``i`` and ``j``."""
        s = self.samples(y)
        return float(abs(s[j] - s[i]))


def _sample_member(points: np.ndarray, h: float) -> np.ndarray:
    lo, hi = float(points.min()), float(points.max())
    k = max(1, math.ceil((hi - lo) / h)) if hi > lo else 0
    grid = np.linspace(lo, hi, k + 1) if k else np.array([lo])
    allp = np.unique(np.concatenate([grid, points]))
    # drop near-duplicates so that edge weights stay positive
    keep = np.concatenate([[True], np.diff(allp) > 1e-12])
    return allp[keep]


def build_quasi_tree(system: ProjectionSystem, K: float, h: float = 0.25,
                     anchors: Mapping[int, Sequence[float]] | None = None, check: bool = True) -> QuasiTreeGraph:
    if h <= 0:
        raise ValueError("spacing h must be positive")
    adj = build_projection_complex(system, K, check=check)
    n = system.n
    anchors = anchors or {}
    mids = 0.5 * (system.lo + system.hi)
    coords = []
    for y in range(n):
        pts = [system.lo[y], system.hi[y], mids[y]]
        pts = np.concatenate([p[np.arange(n) != y] for p in pts] + [np.asarray(anchors.get(y, []), float)])
        if pts.size == 0:
            pts = np.array([0.0])
        coords.append(_sample_member(pts, h))
    offsets = np.concatenate([[0], np.cumsum([len(c) for c in coords])]).astype(int)
    member = np.concatenate([np.full(len(c), y) for y, c in enumerate(coords)])
    coord = np.concatenate(coords)
    edges: list[tuple[int, int, float]] = []
    for y in range(n):
        a, b = offsets[y], offsets[y + 1]
        for i in range(a, b - 1):
            edges.append((i, i + 1, float(coord[i + 1] - coord[i])))
    g = QuasiTreeGraph(system, K, h, member, coord, offsets, [], adj)
    for y, z in zip(*np.nonzero(np.triu(adj, 1))):
        edges.append((g.vertex(int(y), float(mids[y, z])), g.vertex(int(z), float(mids[z, y])), 1.0))
    return QuasiTreeGraph(system, K, h, member, coord, offsets, edges, adj)


def graph_distance(g: QuasiTreeGraph, x: int, z: int) -> float:
    d = float(g.distances_from([x])[0][z])
    if math.isinf(d):
        raise Disconnected(f"vertices {x} and {z} are in different components")
    return d


def distance_formula_rhs(system: ProjectionSystem, p: tuple[int, float], q: tuple[int, float], K: float) -> float:
    d = system.d_points_all(p, q)
    return 6 * K + 4 * float(np.sum(np.where(d >= K, d, 0.0)))


@dataclass
class DistanceCheck:
    lhs: float
    rhs: float

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


def check_distance_formula(g: QuasiTreeGraph, system: ProjectionSystem, x: int, z: int, K: float) -> DistanceCheck:
    return DistanceCheck(graph_distance(g, x, z), distance_formula_rhs(system, g.point(x), g.point(z), K))


def random_pairs(g: QuasiTreeGraph, count: int, seed: int, cross_member: bool = True) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x, z = rng.randrange(g.num_vertices), rng.randrange(g.num_vertices)
        if cross_member and g.member[x] == g.member[z] and g.system.n > 1:
            continue
        out.append((x, z))
    return out


def check_pairs(g: QuasiTreeGraph, pairs: Sequence[tuple[int, int]]) -> list[DistanceCheck]:
    rows = g.distances_from([x for x, _ in pairs])
    out = []
    for (x, z), row in zip(pairs, rows):
        lhs = float(row[z])
        if math.isinf(lhs):
            raise Disconnected(f"vertices {x} and {z} are in different components")
        out.append(DistanceCheck(lhs, distance_formula_rhs(g.system, g.point(x), g.point(z), g.K)))
    return out


def delta_four_point(g: QuasiTreeGraph, n: int, seed: int = 0, pool: int = 256) -> float:
    """Largest Gromov four-point defect over ``n`` sampled quadruples.

    Quadruples are drawn from a fixed seeded pool of vertices, and the stream
    of quadruples for ``2n`` extends the one for ``n``.
    """
    if n < 4:
        raise ValueError("need at least 4 samples")
    rng = np.random.default_rng(seed)
    m = min(pool, g.num_vertices)
    verts = np.sort(rng.choice(g.num_vertices, size=m, replace=False))
    d = g.distances_from(list(map(int, verts)))[:, verts]
    if np.isinf(d).any():
        raise Disconnected("four-point probe needs a connected graph")
    quad_rng = np.random.default_rng([seed, 1])
    q = quad_rng.integers(0, m, size=(n, 4))
    x, y, z, w = q.T
    s = np.stack([d[x, y] + d[z, w], d[x, z] + d[y, w], d[x, w] + d[y, z]])
    s.sort(axis=0)
    return float(np.max(s[2] - s[1]) / 2)


def write_edge_list(g: QuasiTreeGraph, path: str | Path) -> None:
    """Whitespace-separated ``u v weight`` lines after a commented vertex table."""
    with open(path, "w") as fh:
        fh.write(f"# K {g.K!r} h {g.h!r} vertices {g.num_vertices} edges {len(g.edges)}\n")
        fh.write("# vertex member coordinate\n")
        for v in range(g.num_vertices):
            fh.write(f"# {v} {int(g.member[v])} {float(g.coord[v])!r}\n")
        for u, v, w in g.edges:
            fh.write(f"{u} {v} {w!r}\n")


def read_edge_list(path: str | Path) -> list[tuple[int, int, float]]:
    out = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        u, v, w = line.split()
        out.append((int(u), int(v), float(w)))
    return out
