"""Projection systems: families of lines with projections between them.

A :class:`ProjectionSystem` stores, for every ordered pair of distinct
members ``(Y, X)``, the interval ``pi_Y(X)`` in ``Y``'s coordinate.  All
derived quantities (projection distances, the constant xi, axiom checks)
are computed from the two ``n x n`` endpoint matrices.

Two kinds of families are provided:

* axes of conjugates of hyperbolic elements of a Schottky group, with
  closest-point projection in H^2;
* the lines ``L_v`` attached to vertices of a Bass-Serre tree of a flip
  graph of groups (:class:`CKLineFamily`), where the projection of ``L_v'``
  to ``L_v`` is read off the last two edges of the tree geodesic.
"""

from __future__ import annotations

import csv
import decimal
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from . import hplane
from .groups import bass_serre as bs
from .groups import words
from .groups.bass_serre import BassSerreBall, Vertex
from .groups.gog import AdmissibleGraph, GoGElement, flip_letter
from .groups.schottky import SchottkyRep
from .hplane import Geodesic, Interval, MobiusIsometry


class InvalidCombination(ValueError):
    pass


class NotHyperbolicSeed(ValueError):
    pass


class TooClose(ValueError):
    pass


Projector = Callable[[Hashable, Hashable], Interval]


@dataclass
class AxiomReport:
    xi: float
    axiom1_violations: list[tuple[int, int]]
    axiom2_violations: list[tuple[int, int, int]]
    axiom3_max_count: int

    @property
    def ok(self) -> bool:
        return not self.axiom1_violations and not self.axiom2_violations

    def as_dict(self) -> dict:
        return {
            "xi": self.xi,
            "axiom1_violations": len(self.axiom1_violations),
            "axiom2_violations": len(self.axiom2_violations),
            "axiom3_max_count": self.axiom3_max_count,
            "pass": self.ok,
        }


class ProjectionSystem:
    """Finite family of lines with precomputed pairwise projections."""

    def __init__(self, keys: Sequence[Hashable], projector: Projector, geometry: Sequence | None = None,
                 name: str = ""):
        self.keys = list(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        if len(self.index) != len(self.keys):
            raise ValueError("duplicate member keys")
        self.projector = projector
        self.geometry = list(geometry) if geometry is not None else None
        self.name = name
        n = len(self.keys)
        self.lo = np.full((n, n), np.nan)
        self.hi = np.full((n, n), np.nan)
        for y, ky in enumerate(self.keys):
            for x, kx in enumerate(self.keys):
                if x != y:
                    iv = projector(ky, kx)
                    self.lo[y, x] = iv.lo
                    self.hi[y, x] = iv.hi
        self._xi: float | None = None

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def n(self) -> int:
        return len(self.keys)

    def interval(self, y: int, x: int) -> Interval:
        if x == y:
            raise InvalidCombination("no projection of a member to itself")
        return Interval(float(self.lo[y, x]), float(self.hi[y, x]))

    def diameters(self) -> np.ndarray:
        return self.hi - self.lo

    def d(self, y: int, x: int, z: int) -> float:
        """Set-flavoured ``d_Y(X, Z)``."""
        if y in (x, z):
            raise InvalidCombination("d_Y(X, Z) needs Y distinct from X and Z")
        return float(max(self.hi[y, x], self.hi[y, z]) - min(self.lo[y, x], self.lo[y, z]))

    def d_points(self, y: int, p: tuple[int, float], q: tuple[int, float]) -> float:
        """Point-flavoured ``d_Y(x, z)`` for points ``x = (X, s)`` and ``z = (Z, t)``."""
        (x, s), (z, t) = p, q
        if y != x and y != z:
            return self.d(y, x, z)
        if y == x and y == z:
            return abs(s - t)
        if y == z:
            (x, s), (z, t) = (z, t), (x, s)
        # Y = X != Z: hull of the point and pi_Y(Z)
        return float(max(s, self.hi[y, z]) - min(s, self.lo[y, z]))

    def d_points_all(self, p: tuple[int, float], q: tuple[int, float]) -> np.ndarray:
        """Vector of ``d_Y(x, z)`` over all members ``Y``."""
        (x, s), (z, t) = p, q
        out = np.empty(self.n)
        if x == z:
            out[:] = self.hi[:, x] - self.lo[:, x]
            out[x] = abs(s - t)
            return out
        out[:] = np.maximum(self.hi[:, x], self.hi[:, z]) - np.minimum(self.lo[:, x], self.lo[:, z])
        out[x] = max(s, self.hi[x, z]) - min(s, self.lo[x, z])
        out[z] = max(t, self.hi[z, x]) - min(t, self.lo[z, x])
        return out

    def _triple_slices(self):
        """Yield ``(Y, D_Y, D_X(Y, Z))`` as ``(X, Z)`` matrices with NaN off-domain."""
        n = self.n
        for y in range(n):
            dy = np.maximum(self.hi[y][:, None], self.hi[y][None, :]) - np.minimum(
                self.lo[y][:, None], self.lo[y][None, :]
            )
            # d_X(Y, Z) for every X (rows) and Z (columns)
            dx = np.maximum(self.hi[:, y][:, None], self.hi) - np.minimum(self.lo[:, y][:, None], self.lo)
            np.fill_diagonal(dy, np.nan)
            np.fill_diagonal(dx, np.nan)
            dy[y, :] = np.nan
            dy[:, y] = np.nan
            dx[y, :] = np.nan
            dx[:, y] = np.nan
            yield y, dy, dx

    def axiom1_max(self) -> float:
        if self.n < 2:
            return 0.0
        return float(np.nanmax(self.diameters()))

    def estimate_xi(self) -> float:
        """Smallest xi for which axioms (1) and (2) hold on the family."""
        if self._xi is not None:
            return self._xi
        xi = self.axiom1_max()
        if self.n >= 3:
            for _, dy, dx in self._triple_slices():
                m = np.fmin(dy, dx)
                if not np.all(np.isnan(m)):
                    xi = max(xi, float(np.nanmax(m)))
        self._xi = xi
        return xi

    def verify_axioms(self, xi: float) -> AxiomReport:
        if xi < 0:
            raise ValueError("xi must be >= 0")
        diam = self.diameters()
        a1 = [(int(y), int(x)) for y, x in zip(*np.nonzero(diam > xi))]
        a2: list[tuple[int, int, int]] = []
        counts = np.zeros((self.n, self.n), dtype=int)
        if self.n >= 3:
            for y, dy, dx in self._triple_slices():
                with np.errstate(invalid="ignore"):
                    big_y = dy > xi
                    bad = big_y & (dx > xi)
                counts += big_y
                for x, z in zip(*np.nonzero(bad)):
                    a2.append((int(y), int(x), int(z)))
        return AxiomReport(xi, a1, a2, int(counts.max()) if self.n else 0)

    def restrict(self, members: Iterable[int]) -> "ProjectionSystem":
        idx = sorted(set(members))
        sub = ProjectionSystem.__new__(ProjectionSystem)
        sub.keys = [self.keys[i] for i in idx]
        sub.index = {k: i for i, k in enumerate(sub.keys)}
        sub.projector = self.projector
        sub.geometry = [self.geometry[i] for i in idx] if self.geometry is not None else None
        sub.name = self.name
        sub.lo = self.lo[np.ix_(idx, idx)]
        sub.hi = self.hi[np.ix_(idx, idx)]
        sub._xi = None
        return sub

    def dump_csv(self, path: str | Path) -> None:
        """Write every projection ``pi_Y(X)`` as ``target,source,lo,hi,diameter``."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["target", "source", "lo", "hi", "diameter"])
            for y in range(self.n):
                for x in range(self.n):
                    if x != y:
                        w.writerow([y, x, repr(float(self.lo[y, x])), repr(float(self.hi[y, x])),
                                    repr(float(self.hi[y, x] - self.lo[y, x]))])

    def dump_triples_csv(self, path: str | Path) -> None:
        """Write ``d_Y(X, Z)`` for all ``X < Z`` distinct from ``Y``."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["Y", "X", "Z", "d"])
            for y in range(self.n):
                for x in range(self.n):
                    for z in range(x + 1, self.n):
                        if y not in (x, z):
                            w.writerow([y, x, z, repr(self.d(y, x, z))])


def estimate_xi(system: ProjectionSystem) -> float:
    return system.estimate_xi()


def verify_axioms(system: ProjectionSystem, xi: float) -> AxiomReport:
    return system.verify_axioms(xi)


def d_Y(system: ProjectionSystem, y: int, x, z) -> float:
    """Projection distance; ``x`` and ``z`` are member indices or ``(index, coordinate)`` points."""
    if isinstance(x, tuple) or isinstance(z, tuple):
        if not (isinstance(x, tuple) and isinstance(z, tuple)):
            raise InvalidCombination("mix of point and member arguments")
        return system.d_points(y, x, z)
    return system.d(y, x, z)


# --------------------------------------------------------------------------
# axes in H^2


def axes_family(rep: SchottkyRep, seeds: Sequence[Sequence[int]], radius: int) -> ProjectionSystem:
    """Axes of ``w s w^-1`` for ``w`` in the radius ball, duplicates merged.

    Each axis carries the parameterization transported from ``axis(s)`` by
    ``w``, so the coordinates are equivariant.
    """
    base_axes = []
    for s in seeds:
        m = rep.evaluate(s)
        if hplane.classify_isometry(m) != "hyperbolic":
            raise NotHyperbolicSeed(f"seed {words.fmt(s)} is not hyperbolic")
        base_axes.append(hplane.axis(m)[0])
    keys: list[tuple] = []
    geos: list[Geodesic] = []
    for w in words.ball(rep.rank, radius):
        g = rep.evaluate(w)
        for s, ax in zip(seeds, base_axes):
            moved = g.apply_geodesic(ax)
            if any(moved.same_line(other) for other in geos):
                continue
            keys.append((tuple(w), tuple(s)))
            geos.append(moved)
    table = dict(zip(keys, geos))

    def projector(ky, kx) -> Interval:
        return hplane.project_geodesic(table[ky], table[kx])

    return ProjectionSystem(keys, projector, geos, name="axes")


# --------------------------------------------------------------------------
# lines of a flip graph manifold


def _axis_data(rep: SchottkyRep, c: words.Word) -> tuple[Geodesic, float, float]:
    ax, length = hplane.axis(rep.evaluate(c))
    return ax, length, ax.coordinate(hplane.HPoint(0.0, 1.0))


@dataclass(frozen=True)
class LineChart:
    """Boundary line at ``u`` facing a neighbour, with its chart to that neighbour's line."""

    axis: Geodesic
    c: words.Word
    t: words.Word
    slope: float
    origin: float
    move: MobiusIsometry = field(repr=False)

    @property
    def line(self) -> Geodesic:
        """``rho(t) axis(c)``; raises for long ``t`` whose translate is below float resolution."""
        return self.move.apply_geodesic(self.axis)

    def __call__(self, s: float) -> float:
        return (s - self.origin) * self.slope


class CKLineFamily:
    """Lines ``L_v`` over a Bass-Serre ball with boundary lines and charts.

    ``L_v`` is a copy of R on which the fiber of ``v``'s vertex group acts
    by translation by ``tau[label(v)]``.  A group element ``g`` maps
    ``(v, y)`` to ``(g v, y + tau * n)`` where ``g g_v = g_{gv} k`` and
    ``n`` is the fiber exponent of ``k``.

    At a vertex ``u`` the neighbour reached through the coset ``t A_e`` has
    boundary line ``rho(t) axis(c_e)`` in the plane of ``u``.  Arclength on
    it is identified with ``L`` of the neighbour affinely: one period of
    ``c_e`` corresponds to one fiber translation.
    """

    def __init__(self, graph: AdmissibleGraph, ball: BassSerreBall, tau: dict[str, float] | None = None):
        self.graph = graph
        self.ball = ball
        self._axes: dict[tuple[str, words.Word], tuple[Geodesic, float, float]] = {}
        self.tau = dict(tau) if tau else default_fiber_lengths(graph)
        self._charts: dict[tuple[Vertex, Vertex], LineChart] = {}
        self._proj: dict[tuple[Vertex, Vertex, Vertex], Interval] = {}

    def axis_data(self, label: str, c: words.Word):
        key = (label, c)
        if key not in self._axes:
            self._axes[key] = _axis_data(self.graph.rep(label), c)
        return self._axes[key]

    def chart(self, u: Vertex, n: Vertex) -> LineChart:
        """Boundary line of the neighbour ``n`` in the plane of ``u``."""
        key = (u, n)
        if key in self._charts:
            return self._charts[key]
        if len(n) == len(u) + 1 and n[:-1] == u:
            (t, _), e = n[-1]
        elif len(u) == len(n) + 1 and u[:-1] == n:
            t, e = (), flip_letter(u[-1][1])
        else:
            raise ValueError("vertices are not adjacent")
        lab = bs.label(self.graph, u)
        c = self.graph.c_from(e)
        ax, length, s0 = self.axis_data(lab, c)
        slope = self.tau[bs.label(self.graph, n)] / length
        ch = LineChart(ax, c, tuple(t), slope, s0, self.graph.rep(lab).evaluate(t))
        self._charts[key] = ch
        return ch

    def projection(self, v: Vertex, vp: Vertex) -> Interval:
        """``Pi_{L_v}(L_vp)`` in the coordinate of ``L_v``."""
        path = bs.geodesic(vp, v)
        if len(path) < 3:
            raise TooClose(f"tree distance {len(path) - 1} < 2")
        u, w = path[-2], path[-3]
        return self.projection_via(v, u, w)

    def projection_via(self, v: Vertex, u: Vertex, w: Vertex) -> Interval:
        key = (v, u, w)
        if key not in self._proj:
            target = self.chart(u, v)
            source = self.chart(u, w)
            # pull both lines back by rho(t_target): the source becomes
            # rho(t_target^-1 t_source) axis(c_source), whose endpoints stay
            # accurate even when the translate itself is too thin to store
            rep = self.graph.rep(bs.label(self.graph, u))
            rel_word = words.mul(words.inv(target.t), source.t)
            if _log_norm(rep, rel_word) > _HP_LOG_NORM:
                ends = _precise_ends(rep, rel_word, source, target)
            else:
                rel = rep.evaluate(rel_word)
                ends = [target.axis.ideal_coordinate(rel.apply_ideal(x)) for x in source.axis.endpoints]
            a, b = target(min(ends)), target(max(ends))
            self._proj[key] = Interval(min(a, b), max(a, b))
        return self._proj[key]

    def act(self, g: GoGElement, v: Vertex, y: float = 0.0) -> tuple[Vertex, float]:
        gv, k = bs.act(g, v)
        return gv, y + self.tau[bs.label(self.graph, v)] * k[1]

    def act_interval(self, g: GoGElement, v: Vertex, iv: Interval) -> tuple[Vertex, Interval]:
        gv, k = bs.act(g, v)
        shift = self.tau[bs.label(self.graph, v)] * k[1]
        return gv, Interval(iv.lo + shift, iv.hi + shift)

    def slopes(self) -> list[float]:
        out = []
        for u in self.ball:
            for n in self.ball.neighbors(u):
                out.append(self.chart(u, n).slope)
        return out


# Above this log-norm a float product leaves fewer than ~9 digits to separate
# a translated endpoint from the target's own endpoints.
_HP_LOG_NORM = 6.0


def _log_norm(rep: SchottkyRep, w: words.Word) -> float:
    return sum(math.log(max(abs(e) for e in rep.generators[abs(x) - 1].entries())) for x in w)


def _dec_matrix(rep: SchottkyRep, w: words.Word) -> tuple:
    D = decimal.Decimal
    a, b, c, d = D(1), D(0), D(0), D(1)
    for x in w:
        p, q, r, s = (D(e) for e in rep.generators[abs(x) - 1].entries())
        if x < 0:
            p, q, r, s = s, -q, -r, p
        a, b, c, d = a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s
    return a, b, c, d


def _dec_fixed_points(rep: SchottkyRep, c_word: words.Word, axis: Geodesic) -> list:
    """Endpoints of ``axis`` (the axis of ``c_word``) refined to the context precision, in order."""
    a, b, c, d = _dec_matrix(rep, c_word)
    if c == 0:
        roots = [b / (d - a)]
    else:
        disc = ((a - d) ** 2 + 4 * b * c).sqrt()
        roots = [(a - d + disc) / (2 * c), (a - d - disc) / (2 * c)]
    out = []
    for x in axis.endpoints:
        if math.isinf(x):
            out.append(None)
        else:
            out.append(min(roots, key=lambda r: abs(r - decimal.Decimal(x))))
    return out


def _precise_ends(rep: SchottkyRep, rel_word: words.Word, source: "LineChart", target: "LineChart") -> list[float]:
    """Coordinates on the target axis of the translated source endpoints, in extended precision."""
    digits = 30 + math.ceil(2 * _log_norm(rep, rel_word) / math.log(10))
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        a, b, c, d = _dec_matrix(rep, rel_word)
        s_t, e_t = _dec_fixed_points(rep, target.c, target.axis)
        out = []
        for x in _dec_fixed_points(rep, source.c, source.axis):
            if x is None:
                img = None if c == 0 else a / c
            else:
                den = c * x + d
                img = None if den == 0 else (a * x + b) / den
            if img is None:
                out.append(-target.axis.offset if s_t is not None and e_t is not None else
                           (math.inf if s_t is not None else -math.inf))
                continue
            if (s_t is not None and img == s_t) or (e_t is not None and img == e_t):
                out.append(-math.inf if img == s_t else math.inf)
                continue
            t = decimal.Decimal(0)
            if s_t is not None:
                t += abs(img - s_t).ln()
            if e_t is not None:
                t -= abs(img - e_t).ln()
            out.append(float(t) - target.axis.offset)
        return out


def default_fiber_lengths(graph: AdmissibleGraph) -> dict[str, float]:
    """Fiber length of each vertex: the length of the boundary word its fiber is glued to."""
    out = {}
    for v in graph.vertices:
        e = graph.out_letters(v)[0]
        out[v] = hplane.translation_length(graph.rep(graph.target(e)).evaluate(graph.c_to(e)))
    return out


def ck_projection(fam: CKLineFamily, v: Vertex, vp: Vertex) -> Interval:
    return fam.projection(v, vp)


def ck_projection_distance(fam: CKLineFamily, w: Vertex, u: Vertex, v: Vertex) -> float:
    if w in (u, v):
        raise InvalidCombination("w must differ from u and v")
    return fam.projection(w, u).hull(fam.projection(w, v)).diameter


def ck_members(fam: CKLineFamily, mode: str = "class", cls: str = bs.V1, label: str | None = None) -> list[Vertex]:
    """Members of ``L_1``/``L_2`` (``class``), ``W_mu`` (``label``) or ``Q`` (``class-label``)."""
    out = []
    for v in fam.ball:
        if mode in ("class", "class-label") and bs.parity_class(v) != cls:
            continue
        if mode in ("label", "class-label") and bs.label(fam.graph, v) != label:
            continue
        if mode not in ("class", "label", "class-label"):
            raise ValueError(f"unknown mode {mode!r}")
        out.append(v)
    return out


def ck_system(fam: CKLineFamily, mode: str = "class", cls: str = bs.V1, label: str | None = None) -> ProjectionSystem:
    members = ck_members(fam, mode, cls, label)
    name = {"class": cls, "label": f"W_{label}", "class-label": f"Q_{cls}_{label}"}[mode]
    return ProjectionSystem(members, fam.projection, name=name)


def easy3_lambda(fam: CKLineFamily) -> float:
    """Smallest lambda with ``d_L / lambda - lambda <= d_L <= lambda d_l + lambda`` for the charts.

    Charts are affine with slope ``tau / l(c)``, so the comparison holds with
    ``max(slope, 1 / slope)``.
    """
    return max(max(s, 1.0 / s) for s in fam.slopes())


def easy1_lambda(fam: CKLineFamily, vertices: Iterable[Vertex] | None = None) -> float:
    """Largest diameter of ``Pi_{L_v}(L_v')`` over pairs at tree distance >= 2."""
    vs = list(vertices) if vertices is not None else list(fam.ball)
    best = 0.0
    for v in vs:
        for vp in vs:
            if bs.tree_distance(v, vp) >= 2:
                best = max(best, fam.projection(v, vp).diameter)
    return best
