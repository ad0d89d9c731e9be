"""Loxodromic/elliptic classification from orbit growth, the commuting-pair
witness check, and the named scenarios.

An action is anything with a base point, an ``act(g, p)`` map and a
``distance(p, q)``.  Orbits ``g^k x0`` are generated by iterating ``act``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from . import hplane, projections, quasimorph, quasitree
from .groups import bass_serre as bs
from .groups import gog, words
from .groups.bass_serre import BassSerreBall, Vertex
from .groups.gog import AdmissibleGraph, GoGElement
from .groups.schottky import SchottkyRep, default_rep, pants_pair

N_ORB = 16
N_STL = 12


class OrbitEscapedTruncation(RuntimeError):
    pass


class UnknownScenario(KeyError):
    pass


class NotPeripheral(ValueError):
    pass


# --------------------------------------------------------------------------
# actions


class ActionHandle:
    label = "action"
    unit = 1.0  # calibrated translation length of the designated fiber
    xi = 0.0  # projection constant behind the space (0 for lines and trees)

    @property
    def base(self):
        raise NotImplementedError

    def act(self, g, p):
        raise NotImplementedError

    def distance(self, p, q) -> float:
        raise NotImplementedError

    def prepare(self, elements: Sequence[Any], n: int = N_ORB) -> None:
        """Hook for truncated spaces to make room for the orbits about to be queried."""

    def orbit(self, g, n: int, start=None) -> list:
        p = self.base if start is None else start
        out = [p]
        for _ in range(n):
            p = self.act(g, p)
            out.append(p)
        return out

    def displacements(self, g, n: int) -> list[float]:
        pts = self.orbit(g, n)
        return [self.distance(pts[0], p) for p in pts]


class LineAction(ActionHandle):
    """The real line with ``g`` acting by translation by ``shift(g)``."""

    def __init__(self, label: str, shift: Callable[[Any], float], unit: float = 1.0):
        self.label = label
        self.shift = shift
        self.unit = unit

    @property
    def base(self) -> float:
        return 0.0

    def act(self, g, p: float) -> float:
        return p + float(self.shift(g))

    def distance(self, p: float, q: float) -> float:
        return abs(q - p)


class CayleyAction(ActionHandle):
    """Left multiplication on the Cayley graph of a free group.

    Elements may be plain words or ``(word, fiber)`` pairs of ``F_k x Z``,
    whose fiber is ignored.
    """

    def __init__(self, label: str = "cayley"):
        self.label = label

    @property
    def base(self) -> words.Word:
        return ()

    def act(self, g, p: words.Word) -> words.Word:
        w = g[0] if g and isinstance(g[0], tuple) else g
        return words.mul(w, p)

    def distance(self, p, q) -> float:
        return float(len(words.mul(words.inv(p), q)))


class QuasiTreeAction(ActionHandle):
    """Action of a flip graph-of-groups on the quasi-tree of lines of a CK family.

    Points are ``(tree vertex, coordinate on its line)``.  Orbit points are
    added to the sampling as anchors; vertices outside the ball trigger one
    extension of the ball by the missing vertices and their ancestors.
    """

    def __init__(self, graph: AdmissibleGraph, radius: int, mode: str = "class", cls: str = bs.V1,
                 label: str | None = None, base: tuple[Vertex, float] = (bs.ROOT, 0.0), K: float | None = None,
                 h: float = 0.25, rep_length: int = 1, name: str | None = None, check_K: bool = True):
        self.graph = graph
        self.mode, self.cls, self.label_filter = mode, cls, label
        self.ball = bs.bass_serre_ball(graph, radius, rep_length)
        self.ball.extend([base[0]])
        self._base = base
        self.K_override = K
        self.h = h
        self.check_K = check_K
        self.anchors: dict[Vertex, set[float]] = {base[0]: {base[1]}}
        self.label = name or f"C_K({mode}:{cls if mode != 'label' else label})"
        self.rebuilds = 0
        self._build()

    def _build(self) -> None:
        self.family = projections.CKLineFamily(self.graph, self.ball)
        self.system = projections.ck_system(self.family, self.mode, self.cls, self.label_filter)
        self.xi = self.system.estimate_xi()
        self.K = self.K_override if self.K_override is not None else quasitree.default_K(self.xi)
        anchors = {}
        for v, ys in self.anchors.items():
            if v in self.system.index:
                anchors[self.system.index[v]] = sorted(ys)
        self.qt = quasitree.build_quasi_tree(self.system, self.K, self.h, anchors, check=self.check_K)
        self.unit = min(self.family.tau.values())

    @property
    def base(self) -> tuple[Vertex, float]:
        return self._base

    def act(self, g: GoGElement, p: tuple[Vertex, float]) -> tuple[Vertex, float]:
        return self.family.act(g, p[0], p[1])

    def locate(self, p: tuple[Vertex, float]) -> int:
        v, y = p
        if v not in self.system.index:
            raise OrbitEscapedTruncation(f"line of vertex at depth {len(v)} is not in the truncation")
        return self.qt.vertex(self.system.index[v], y)

    def distance(self, p, q) -> float:
        a, b = self.locate(p), self.locate(q)
        d = float(self.qt.distances_from([a])[0][b])
        if math.isinf(d):
            raise quasitree.Disconnected("orbit points lie in different components")
        return d

    def _covered(self, p) -> bool:
        v, y = p
        if v not in self.system.index:
            return False
        s = self.qt.samples(self.system.index[v])
        return s[0] - 1e-9 <= y <= s[-1] + 1e-9

    def prepare(self, elements: Sequence[Any], n: int = N_ORB, starts: Sequence | None = None) -> None:
        pts = []
        for st in (starts or [self.base]):
            for g in elements:
                pts.extend(self.orbit(g, n, start=st))
        for v, y in pts:
            self.anchors.setdefault(v, set()).add(y)
        if all(self._covered(p) for p in pts):
            return
        missing = [v for v, _ in pts if v not in self.ball]
        if missing:
            if self.rebuilds >= 1:
                raise OrbitEscapedTruncation(f"{len(missing)} orbit vertices outside the extended ball")
            self.ball.extend(missing)
            self.rebuilds += 1
        self._build()
        if not all(self._covered(p) for p in pts):
            raise OrbitEscapedTruncation("orbit points not covered after rebuilding")


# --------------------------------------------------------------------------
# classification


@dataclass
class Classification:
    kind: str
    stable_translation_length: float
    orbit_diameter: float
    monotone: bool
    displacements: list[float] = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "stable_translation_length": self.stable_translation_length,
            "orbit_diameter": self.orbit_diameter,
            "monotone": self.monotone,
        }


@dataclass(frozen=True)
class Thresholds:
    eps_lox: float
    b_ell: float
    n_orb: int = N_ORB
    n_stl: int = N_STL
    slack: float = 0.5  # twice the default sample spacing

    def as_dict(self) -> dict:
        return {"eps_lox": self.eps_lox, "b_ell": self.b_ell, "n_orb": self.n_orb, "n_stl": self.n_stl}


def thresholds_for(actions: Sequence[ActionHandle]) -> Thresholds:
    unit = min(a.unit for a in actions)
    xi = max(a.xi for a in actions)
    return Thresholds(eps_lox=0.05 * unit, b_ell=3 * xi + 2)


def stable_translation_length(A: ActionHandle, g, N: int = N_STL) -> float:
    if N < 2:
        raise ValueError("N must be >= 2")
    A.prepare([g], N)
    pts = A.orbit(g, N)
    return A.distance(pts[0], pts[-1]) / N


def classify_element(A: ActionHandle, g, th: Thresholds | None = None) -> Classification:
    """Loxodromic, elliptic or undetermined from a finite orbit.

    Loxodromic needs ``d(x0, g^N x0)/N > eps_lox``, displacements that never
    drop by more than the sampling slack, and an orbit leaving the elliptic
    ball.  Elliptic needs the orbit to stay within ``B_ell`` of the base point.
    """
    th = th or thresholds_for([A])
    n = max(th.n_orb, th.n_stl)
    A.prepare([g], n)
    disp = A.displacements(g, n)
    stl = disp[th.n_stl] / th.n_stl
    diam = max(disp[: th.n_orb + 1])
    mono = all(disp[k + 1] >= disp[k] - th.slack for k in range(th.n_orb))
    if diam <= th.b_ell:
        kind = "elliptic"
    elif stl > th.eps_lox and mono:
        kind = "loxodromic"
    else:
        kind = "undetermined"
    return Classification(kind, stl, diam, mono, disp)


@dataclass
class GroupOps:
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    is_identity: Callable[[Any], bool]
    fmt: Callable[[Any], str] = str

    def commutator(self, a, b):
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def commute(self, a, b) -> bool:
        return self.is_identity(self.commutator(a, b))


@dataclass
class WitnessReport:
    a: str
    b: str
    commute: bool
    a_in_X: Classification
    b_in_X: Classification
    a_in_Y: Classification
    b_in_Y: Classification
    X: str
    Y: str

    @property
    def verdict(self) -> str:
        ok = (
            self.commute
            and self.a_in_X.kind == "loxodromic"
            and self.b_in_X.kind == "elliptic"
            and self.b_in_Y.kind == "loxodromic"
        )
        return "witness" if ok else "not-witness"

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "X": self.X,
            "Y": self.Y,
            "commute": self.commute,
            "a_in_X": self.a_in_X.as_dict(),
            "b_in_X": self.b_in_X.as_dict(),
            "a_in_Y": self.a_in_Y.as_dict(),
            "b_in_Y": self.b_in_Y.as_dict(),
            "verdict": self.verdict,
            "pass": self.verdict == "witness",
        }


def lemma_key_witness(a, b, X: ActionHandle, Y: ActionHandle, ops: GroupOps,
                      th: Thresholds | None = None) -> WitnessReport:
    th = th or thresholds_for([X, Y])
    return WitnessReport(
        a=ops.fmt(a),
        b=ops.fmt(b),
        commute=ops.commute(a, b),
        a_in_X=classify_element(X, a, th),
        b_in_X=classify_element(X, b, th),
        a_in_Y=classify_element(Y, a, th),
        b_in_Y=classify_element(Y, b, th),
        X=X.label,
        Y=Y.label,
    )


def projection_recurrence(A: QuasiTreeAction, g, n: int = N_ORB) -> dict:
    """Largest ``d_Y(x0, g^k x0)`` over ``k <= n`` and members ``Y`` off the orbit.

    A bounded value is the finite symptom of the orbit not recurring in
    projections.  It is evidence for the weak proper discontinuity of ``g``,
    not a proof of it.
    """
    A.prepare([g], n)
    pts = A.orbit(g, n)
    on_orbit = {A.system.index[v] for v, _ in pts}
    p0 = (A.system.index[pts[0][0]], pts[0][1])
    best = 0.0
    for v, y in pts[1:]:
        d = A.system.d_points_all(p0, (A.system.index[v], y))
        mask = np.ones(A.system.n, bool)
        mask[list(on_orbit)] = False
        if mask.any():
            best = max(best, float(d[mask].max()))
    return {"max_off_orbit_projection": best, "K": A.K, "bounded": best < A.K}


# --------------------------------------------------------------------------
# boundary lines of a surface


@dataclass
class ImportantReport:
    xi: float
    lambda_bound: float
    d1: float
    d2: float
    case1_max: float
    case2_max: float
    max_observed: float
    members: int
    axis_values: list[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_observed <= self.lambda_bound

    def as_dict(self) -> dict:
        return {
            "xi": self.xi,
            "lambda_bound": self.lambda_bound,
            "d_alpha_gamma_alpha": self.d1,
            "d_alpha_gamma2_alpha": self.d2,
            "case1_max": self.case1_max,
            "case2_max": self.case2_max,
            "max_observed": self.max_observed,
            "members": self.members,
            "axis_of_gamma_max": max(self.axis_values, default=0.0),
            "pass": self.passed,
        }


def peripheral_family(rep: SchottkyRep, boundary: Sequence[Sequence[int]], radius: int) -> projections.ProjectionSystem:
    return projections.axes_family(rep, boundary, radius)


def lemma_important_check(rep: SchottkyRep, alpha: hplane.Geodesic | None = None,
                          gamma: Sequence[int] | None = None, n_max: int = 8, radius: int = 3,
                          boundary: Sequence[Sequence[int]] | None = None) -> ImportantReport:
    """Scan ``d_beta(alpha, gamma^n alpha)`` over the boundary lines of the ball.

    Defaults: the one-holed torus with boundary ``[a, b]``, ``gamma = [a, b]``
    and ``alpha = a . axis([a, b])``.
    """
    boundary = [tuple(c) for c in (boundary or [words.parse("abAB")])]
    fam = peripheral_family(rep, boundary, radius)
    xi = fam.estimate_xi()
    gamma = tuple(gamma) if gamma is not None else boundary[0]
    gm = rep.evaluate(gamma)
    if hplane.classify_isometry(gm) != "hyperbolic":
        raise NotPeripheral("gamma is not hyperbolic")
    if alpha is None:
        alpha = rep.evaluate(words.parse("a")).apply_geodesic(hplane.axis(rep.evaluate(boundary[0]))[0])
    lines = fam.geometry
    if not any(alpha.same_line(m) for m in lines):
        raise NotPeripheral("alpha is not a boundary line in the family")
    gax = hplane.axis(gm)[0]
    if not any(gax.same_line(m) for m in lines):
        raise NotPeripheral("the axis of gamma is not a boundary line in the family")
    ell = hplane.translation_length(gm)
    span = 2 * n_max + 2
    # Two frames put the axis of gamma at (0, inf), one with gamma expanding
    # and one with gamma^-1 expanding.  Translates gamma^j alpha are built in
    # the frame where they run off to infinity, which keeps far translates
    # resolvable in floating point.  Both frames carry the same
    # parameterization, so intervals from either can be compared.
    frames = {1: hplane.standard_frame(gax), -1: hplane.standard_frame(gax.reversed())}
    moved = {sg: [f.apply_geodesic(m) for m in lines] for sg, f in frames.items()}
    alphas = {sg: f.apply_geodesic(alpha) for sg, f in frames.items()}

    def sign(j):
        return 1 if j >= 0 else -1

    translates = {
        j: hplane.MobiusIsometry.diagonal(math.exp(abs(j) * ell / 2)).apply_geodesic(alphas[sign(j)])
        for j in range(-span, span + 1)
    }

    def proj(beta_idx, j):
        return hplane.project_geodesic(moved[sign(j)][beta_idx], translates[j])

    def proj_alpha(j):
        return hplane.project_geodesic(alphas[sign(j)], translates[j])

    d1 = hplane.geodesic_distance(translates[0], translates[1])
    d2 = hplane.geodesic_distance(translates[0], translates[2])
    lam = max(xi, d1 + 2 * xi, d2 + 2 * xi)
    if gax.same_line(alpha):
        # every translate is alpha itself
        vals = [hplane.project_geodesic(beta, alpha).diameter for beta in lines if not beta.same_line(alpha)]
        m = max(vals, default=0.0)
        return ImportantReport(xi, lam, d1, d2, m, 0.0, m, len(lines), [])

    def is_translate(i):
        return any(moved[sign(k)][i].same_line(translates[k]) for k in range(-span, span + 1))

    # The axis of gamma is not squeezed between two consecutive translates of
    # alpha: projections to it move by l(gamma) per step, so it is reported
    # on its own and left out of the bounded scan.
    case1 = 0.0
    axis_growth = []
    for i in range(len(lines)):
        if is_translate(i):
            continue
        vals = [proj(i, 0).hull(proj(i, n)).diameter for n in range(-n_max, n_max + 1)]
        if lines[i].same_line(gax):
            axis_growth = vals
            continue
        case1 = max(case1, max(vals))
    # beta = gamma^k alpha: by equivariance d_beta(alpha, gamma^n alpha)
    # equals d_alpha(gamma^-k alpha, gamma^(n-k) alpha)
    case2 = 0.0
    for k in range(-n_max - 2, n_max + 3):
        for n in range(-n_max, n_max + 1):
            if k in (0, n):
                continue
            case2 = max(case2, proj_alpha(-k).hull(proj_alpha(n - k)).diameter)
    return ImportantReport(xi, lam, d1, d2, case1, case2, max(case1, case2), len(lines), axis_growth)


# --------------------------------------------------------------------------
# the loop case


@dataclass
class InproofReport:
    K: float
    xi: float
    lam: float
    lam_parts: dict
    case_max: dict
    case_bound: dict
    orbit_distances: dict
    rhs_max: float
    rho: dict
    members: int

    @property
    def cases_ok(self) -> bool:
        return all(self.case_max[c] <= self.case_bound[c] and self.case_max[c] < self.K for c in self.case_max)

    @property
    def orbit_ok(self) -> bool:
        return max(self.orbit_distances.values()) <= 6 * self.K and self.rhs_max <= 6 * self.K

    @property
    def rho_ok(self) -> bool:
        return self.rho["z_omega_zero"] and self.rho["z_mu_nonzero"]

    @property
    def passed(self) -> bool:
        return self.cases_ok and self.orbit_ok and self.rho_ok

    def as_dict(self) -> dict:
        return {
            "K": self.K,
            "xi": self.xi,
            "lambda": self.lam,
            "lambda_parts": self.lam_parts,
            "case_max": self.case_max,
            "case_bound": self.case_bound,
            "orbit_distance_max": max(self.orbit_distances.values()),
            "orbit_bound": 6 * self.K,
            "distance_formula_rhs_max": self.rhs_max,
            "rho": self.rho,
            "members": self.members,
            "cases_pass": self.cases_ok,
            "orbit_pass": self.orbit_ok,
            "rho_pass": self.rho_ok,
            "pass": self.passed,
        }


def inproof_K(xi: float, lam: float) -> int:
    return math.floor(4 * xi + 4 + 2 * lam + lam**2) + 1


def rho_check(graph: AdmissibleGraph, n_defect: int = 30, seed: int = 0, N: int = quasimorph.N_DEFAULT) -> dict:
    """Evaluate rho on the two fibers; the defect is measured on seeded samples of G'."""
    h = bs.odd_element(graph)
    q = quasimorph.vertex_fiber_qm(graph)
    rng = random.Random(seed)
    gens = gog.generators(graph)
    sample = []
    while len(sample) < n_defect:
        x = gog.random_element(graph, 4, rng, gens)
        if quasimorph.is_even(x):
            sample.append(x)
    defect = q.measure_defect((x, y) for x in sample for y in sample)
    z_mu = graph.z()
    z_omega = z_omega_element(graph)
    r_mu = quasimorph.extend_rho(q, h, z_mu)
    r_om = quasimorph.extend_rho(q, h, z_omega)
    tail = defect / 2**N
    return {
        "rho_z_mu": r_mu,
        "rho_z_omega": r_om,
        "defect": defect,
        "tail": tail,
        "threshold": 10 * tail,
        "z_mu_nonzero": quasimorph.nonzero(r_mu, defect, N),
        "z_omega_zero": abs(r_om) <= 10 * tail,
        "margin": abs(r_mu) / (10 * tail) if tail > 0 else math.inf,
    }


def z_omega_element(graph: AdmissibleGraph) -> GoGElement:
    e = next(l for l in graph.out_letters(graph.base) if graph.target(l) == "omega")
    return graph.path([gog.ONE, ((), 1), gog.ONE], [e, gog.flip_letter(e)])


def lemma_inproof_check(graph: AdmissibleGraph | None = None, K: float | None = None, n_max: int = 8,
                        radius: int = 3, h: float = 0.25, lemma_radius: int = 3, seed: int = 0) -> InproofReport:
    graph = graph or gog.flip_preset({"loop": True})[0]
    hel = bs.odd_element(graph)
    if hel is None:
        raise ValueError("the loop case needs a loop at the base vertex")
    z_om = z_omega_element(graph)
    gamma = z_om.conj(hel)
    hv = bs.move(hel, bs.ROOT)
    v0 = bs.ROOT
    ball = bs.bass_serre_ball(graph, radius)
    orbit_vs = [bs.move(gamma**n, v0) for n in range(-n_max, n_max + 1)]
    ball.extend(orbit_vs)
    fam = projections.CKLineFamily(graph, ball)
    q1 = projections.ck_system(fam, "class-label", bs.V1, graph.base)
    q2 = projections.ck_system(fam, "class-label", bs.V2, graph.base)
    xi = max(q1.estimate_xi(), q2.estimate_xi())

    # gamma acts on the plane of hv by k, where gamma g_hv = g_hv k
    _, k = bs.act(gamma, hv)
    lab = bs.label(graph, hv)
    rep = graph.rep(lab)
    l_line = fam.chart(hv, v0).line
    boundary = sorted({graph.c_from(e) for e in graph.out_letters(lab)}, key=words.word_key)
    imp = lemma_important_check(rep, alpha=l_line, gamma=k[0], n_max=n_max, radius=lemma_radius,
                                boundary=boundary)
    parts = {
        "lemma_important": imp.lambda_bound,
        "easy1": projections.easy1_lambda(fam, ball.vertices),
        "easy3": projections.easy3_lambda(fam),
    }
    lam = max(parts.values())
    bound = 4 * xi + 4 + 2 * lam + lam**2
    if K is None:
        K = inproof_K(xi, lam)
    if not K > bound:
        raise quasitree.KTooSmall(K, bound, "4*xi + 4 + 2*lambda + lambda^2")

    y0 = fam.projection(v0, bs.move(gamma, v0)).midpoint
    link = set(ball.neighbors(hv)) | {bs.move(gamma**n, v0) for n in range(-n_max, n_max + 1)}
    case_max = {"case1": 0.0, "case2": 0.0, "case3": 0.0}
    for n in range(-n_max, n_max + 1):
        vn, yn = fam.act(gamma**n, v0, y0)
        for u in q1.keys:
            if u in (v0, vn):
                c = "case1"
                if v0 == vn:
                    val = abs(yn - y0)
                else:
                    other = (vn, yn) if u == v0 else (v0, y0)
                    y = y0 if u == v0 else yn
                    iv = fam.projection(u, other[0])
                    val = max(y, iv.hi) - min(y, iv.lo)
            else:
                c = "case2" if u in link else "case3"
                val = fam.projection(u, v0).hull(fam.projection(u, vn)).diameter
            case_max[c] = max(case_max[c], val)
    case_bound = {"case1": lam**2 + lam + 2 * xi, "case2": lam**2 + lam, "case3": lam}

    action = QuasiTreeAction(graph, radius, "class-label", bs.V1, graph.base, base=(v0, y0), K=K, h=h,
                             name="C_K(Q_1)", check_K=False)
    action.ball.extend(orbit_vs)
    action._build()
    action.prepare([gamma, gamma.inverse()], n_max)
    fwd = action.displacements(gamma, n_max)
    bwd = action.displacements(gamma.inverse(), n_max)
    dists = {n: fwd[n] for n in range(n_max + 1)}
    dists.update({-n: bwd[n] for n in range(1, n_max + 1)})
    rhs = 0.0
    sysq = action.system
    p0 = (sysq.index[v0], y0)
    for n in range(-n_max, n_max + 1):
        vn, yn = fam.act(gamma**n, v0, y0)
        rhs = max(rhs, quasitree.distance_formula_rhs(sysq, p0, (sysq.index[vn], yn), K))
    rho = rho_check(graph, seed=seed)
    return InproofReport(K, xi, lam, parts, case_max, case_bound, dists, rhs, rho, len(q1))


# --------------------------------------------------------------------------
# scenarios


@dataclass
class Scenario:
    name: str
    a: Any
    b: Any
    X: ActionHandle
    Y: ActionHandle
    ops: GroupOps
    extras: dict = field(default_factory=dict)

    def witness(self, th: Thresholds | None = None) -> WitnessReport:
        return lemma_key_witness(self.a, self.b, self.X, self.Y, self.ops, th)


def _pair_ops() -> GroupOps:
    return GroupOps(
        mul=lambda x, y: (x[0] + y[0], x[1] + y[1]),
        inv=lambda x: (-x[0], -x[1]),
        is_identity=lambda x: x == (0, 0),
        fmt=lambda x: f"({x[0]}, {x[1]})",
    )


def _fxz_ops() -> GroupOps:
    return GroupOps(
        mul=lambda x, y: (words.mul(x[0], y[0]), x[1] + y[1]),
        inv=lambda x: (words.inv(x[0]), -x[1]),
        is_identity=lambda x: x == ((), 0),
        fmt=gog.vfmt,
    )


def _gog_ops() -> GroupOps:
    return GroupOps(mul=lambda x, y: x * y, inv=lambda x: x.inverse(), is_identity=lambda x: x.is_identity)


SCENARIOS = ("z2-torus", "seifert-f2xz", "flip-loopless", "flip-with-loop")


def scenario(name: str, radius: int | None = None, K: float | None = None, h: float = 0.25) -> Scenario:
    if name == "z2-torus":
        X = LineAction("line(x)", lambda g: g[0])
        Y = LineAction("line(y)", lambda g: g[1])
        return Scenario(name, (1, 0), (0, 1), X, Y, _pair_ops())
    if name == "seifert-f2xz":
        X = LineAction("fiber line", lambda g: g[1])
        Y = CayleyAction("base Cayley graph")
        return Scenario(name, ((), 1), (words.parse("a"), 0), X, Y, _fxz_ops())
    if name == "flip-loopless":
        graph, _ = gog.flip_preset()
        R = radius if radius is not None else 4
        w0 = ((((), 0), ("alpha", 1)),)
        X = QuasiTreeAction(graph, R, "class", bs.V1, K=K, h=h, name="C_K(L_1)")
        Y = QuasiTreeAction(graph, R, "class", bs.V2, base=(w0, 0.0), K=K, h=h, name="C_K(L_2)")
        return Scenario(name, graph.z(), z_omega_element(graph), X, Y, _gog_ops(), {"graph": graph})
    if name == "flip-with-loop":
        graph, _ = gog.flip_preset({"loop": True})
        R = radius if radius is not None else 3
        hel = bs.odd_element(graph)
        q = quasimorph.vertex_fiber_qm(graph)
        X = LineAction("rho quasi-line", lambda g: quasimorph.extend_rho(q, hel, g))
        w0 = ((((), 0), ("alpha", 1)),)
        Y = QuasiTreeAction(graph, R, "label", label="omega", base=(w0, 0.0), K=K, h=h, name="C_K(W_omega)")
        return Scenario(name, graph.z(), z_omega_element(graph), X, Y, _gog_ops(), {"graph": graph, "h": hel})
    raise UnknownScenario(name)
