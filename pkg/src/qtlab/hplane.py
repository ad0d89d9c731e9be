"""Geometry of the upper half-plane model of H^2.

Points are :class:`HPoint`, ideal points are plain floats with ``math.inf``
standing for the point at infinity, geodesics are oriented pairs of ideal
points carrying an arclength parameterization, and isometries are real
unit-determinant 2x2 matrices acting by Mobius transformations.

Every geodesic ``(a, b)`` is parameterized by the signed coordinate

    t(z) = log|z - a| - log|z - b| - offset

(terms with an infinite endpoint dropped).  ``t`` is constant along the
geodesics perpendicular to ``(a, b)``, so closest-point projection of a
point, or of an ideal point, is just evaluation of ``t``.  Vertical
geodesics are handled by the same formula rather than a change of model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

EPS_GEOM = 1e-9
EPS_VAR = 1e-6

INF = math.inf


class NotHyperbolic(ValueError):
    pass


class SameGeodesic(ValueError):
    pass


@dataclass(frozen=True)
class HPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")
        if self.y <= EPS_GEOM:
            raise ValueError(f"point below the boundary: y={self.y}")

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


def _is_inf(p: float) -> bool:
    return math.isinf(p)


def ideal_close(p: float, q: float, tol: float = EPS_GEOM) -> bool:
    if _is_inf(p) or _is_inf(q):
        return _is_inf(p) and _is_inf(q)
    return abs(p - q) <= tol * max(1.0, abs(p), abs(q))


def dist(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance, in the cancellation-free ``2 asinh`` form."""
    chord = math.hypot(p.x - q.x, p.y - q.y)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(p.y * q.y)))


# --------------------------------------------------------------------------
# isometries


@dataclass(frozen=True)
class MobiusIsometry:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > EPS_GEOM * max(1.0, abs(self.a * self.d), abs(self.b * self.c)):
            raise ValueError(f"determinant {det!r} is not 1")

    @classmethod
    def from_matrix(cls, a, b, c, d) -> "MobiusIsometry":
        """Normalize an arbitrary positive-determinant matrix to det 1."""
        det = a * d - b * c
        if det <= 0:
            raise ValueError("matrix must have positive determinant")
        s = math.sqrt(det)
        return cls(a / s, b / s, c / s, d / s)

    @classmethod
    def identity(cls) -> "MobiusIsometry":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def diagonal(cls, s: float) -> "MobiusIsometry":
        return cls(s, 0.0, 0.0, 1.0 / s)

    @classmethod
    def rotation(cls, angle: float) -> "MobiusIsometry":
        """Rotation by ``angle`` radians about the point i."""
        h = angle / 2.0
        return cls(math.cos(h), math.sin(h), -math.sin(h), math.cos(h))

    def __matmul__(self, other: "MobiusIsometry") -> "MobiusIsometry":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MobiusIsometry._renorm(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    @staticmethod
    def _renorm(a, b, c, d) -> "MobiusIsometry":
        # long products drift off det 1; rescale instead of failing validation,
        # unless the computed det is only cancellation noise on large entries
        det = a * d - b * c
        scale = max(1.0, abs(a * d), abs(b * c))
        if abs(det - 1.0) <= EPS_GEOM * scale or det <= 0:
            return MobiusIsometry(a, b, c, d)
        s = math.sqrt(det)
        return MobiusIsometry(a / s, b / s, c / s, d / s)

    def inverse(self) -> "MobiusIsometry":
        return MobiusIsometry(self.d, -self.b, -self.c, self.a)

    def power(self, n: int) -> "MobiusIsometry":
        base = self if n >= 0 else self.inverse()
        out = MobiusIsometry.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    @property
    def trace(self) -> float:
        return self.a + self.d

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def sign_normalized(self) -> tuple[float, float, float, float]:
        """Entries up to the global sign ambiguity of PSL(2, R)."""
        e = self.entries()
        for v in e:
            if abs(v) > EPS_GEOM:
                return e if v > 0 else tuple(-x for x in e)
        return e

    def is_identity(self, tol: float = EPS_GEOM) -> bool:
        a, b, c, d = self.sign_normalized()
        return abs(a - 1) <= tol and abs(b) <= tol and abs(c) <= tol and abs(d - 1) <= tol

    def close_to(self, other: "MobiusIsometry", tol: float = EPS_GEOM) -> bool:
        return all(abs(x - y) <= tol for x, y in zip(self.sign_normalized(), other.sign_normalized()))

    def apply(self, p: HPoint) -> HPoint:
        z = p.z
        w = (self.a * z + self.b) / (self.c * z + self.d)
        return HPoint(w.real, w.imag)

    def apply_ideal(self, p: float) -> float:
        if _is_inf(p):
            return self.a / self.c if self.c != 0 else INF
        den = self.c * p + self.d
        if den == 0:
            return INF
        return (self.a * p + self.b) / den

    def apply_geodesic(self, g: "Geodesic") -> "Geodesic":
        moved = Geodesic(self.apply_ideal(g.start), self.apply_ideal(g.end))
        # carry the parameterization along so that m is an isometry of charts
        shift = moved.coordinate(self.apply(g.origin))
        return Geodesic(moved.start, moved.end, offset=shift)


def classify_isometry(m: MobiusIsometry, eps: float = EPS_GEOM) -> str:
    if m.is_identity(eps):
        return "elliptic"
    tr = abs(m.trace)
    if tr > 2.0 + eps:
        return "hyperbolic"
    if abs(tr - 2.0) <= eps:
        return "parabolic"
    return "elliptic"


def fixed_points(m: MobiusIsometry) -> tuple[float, float]:
    """Return (repelling, attracting) fixed points of a hyperbolic ``m``."""
    if classify_isometry(m) != "hyperbolic":
        raise NotHyperbolic(f"trace {m.trace:.6g} is not hyperbolic")
    a, b, c, d = m.entries()
    if abs(c) <= EPS_GEOM * max(1.0, abs(a), abs(d)):
        finite = b / (d - a)
        # z -> (a/d) z + b/d expands away from the finite point when |a| > |d|
        return (finite, INF) if abs(a) > abs(d) else (INF, finite)
    disc = math.sqrt((d - a) ** 2 + 4 * b * c)
    r1 = (a - d - disc) / (2 * c)
    r2 = (a - d + disc) / (2 * c)
    # attracting fixed point has |m'(r)| = 1/|c r + d|^2 < 1
    if abs(c * r1 + d) > abs(c * r2 + d):
        return r2, r1
    return r1, r2


def translation_length(m: MobiusIsometry) -> float:
    if classify_isometry(m) != "hyperbolic":
        raise NotHyperbolic(f"trace {m.trace:.6g} is not hyperbolic")
    return 2.0 * math.acosh(abs(m.trace) / 2.0)


def axis(m: MobiusIsometry) -> tuple["Geodesic", float]:
    """Axis of a hyperbolic isometry oriented toward its attracting point."""
    rep, att = fixed_points(m)
    return Geodesic(rep, att), translation_length(m)


# --------------------------------------------------------------------------
# geodesics


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    host: "Geodesic | None" = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def diameter(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi), self.host)

    def contains(self, t: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= t <= self.hi + tol


@dataclass(frozen=True)
class Geodesic:
    start: float
    end: float
    offset: float = 0.0

    def __post_init__(self):
        if _is_inf(self.start) and _is_inf(self.end):
            raise ValueError("both endpoints at infinity")
        if ideal_close(self.start, self.end):
            raise ValueError(f"degenerate geodesic ({self.start}, {self.end})")
        # a single point at infinity: normalize -inf to +inf
        if self.start == -INF:
            object.__setattr__(self, "start", INF)
        if self.end == -INF:
            object.__setattr__(self, "end", INF)

    @property
    def endpoints(self) -> tuple[float, float]:
        return (self.start, self.end)

    @property
    def is_vertical(self) -> bool:
        return _is_inf(self.start) or _is_inf(self.end)

    def same_line(self, other: "Geodesic", tol: float = EPS_GEOM) -> bool:
        """Equality of endpoint sets, ignoring orientation and offset."""
        s, e = self.endpoints
        p, q = other.endpoints
        return (ideal_close(s, p, tol) and ideal_close(e, q, tol)) or (
            ideal_close(s, q, tol) and ideal_close(e, p, tol)
        )

    def reversed(self) -> "Geodesic":
        return Geodesic(self.end, self.start, offset=-self.offset)

    def coordinate(self, p: HPoint) -> float:
        """Arclength coordinate of the closest-point projection of ``p``."""
        z = p.z
        t = 0.0
        if not _is_inf(self.start):
            t += math.log(abs(z - self.start))
        if not _is_inf(self.end):
            t -= math.log(abs(z - self.end))
        return t - self.offset

    def ideal_coordinate(self, xi: float) -> float:
        """Coordinate of the projection of an ideal point (+-inf at the ends)."""
        if ideal_close(xi, self.start):
            return -INF
        if ideal_close(xi, self.end):
            return INF
        if _is_inf(xi):
            # log|z - s| - log|z - e| -> 0 as z -> infinity
            return -self.offset
        t = 0.0
        if not _is_inf(self.start):
            t += math.log(abs(xi - self.start))
        if not _is_inf(self.end):
            t -= math.log(abs(xi - self.end))
        return t - self.offset

    def point_at(self, t: float) -> HPoint:
        u = math.exp(t + self.offset)
        s, e = self.start, self.end
        if _is_inf(e):
            return HPoint(s, u)
        if _is_inf(s):
            return HPoint(e, 1.0 / u)
        # invert w = (z - s)/(e - z) on the ray w = +-i u
        w = complex(0.0, u if e > s else -u)
        z = (e * w + s) / (w + 1)
        return HPoint(z.real, abs(z.imag))

    @property
    def origin(self) -> HPoint:
        return self.point_at(0.0)

    def perpendicular_feet(self, t: float) -> tuple[float, float]:
        """Ideal endpoints of the geodesic perpendicular to this one at ``t``."""
        u = math.exp(t + self.offset)
        s, e = self.start, self.end
        if _is_inf(e):
            return (s - u, s + u)
        if _is_inf(s):
            return (e - 1.0 / u, e + 1.0 / u)
        out = []
        for w in (u, -u):
            # real w solves |xi - s| / |xi - e| = u on the boundary
            out.append((e * w + s) / (w + 1) if w != -1 else INF)
        return tuple(out)


def project_point(beta: Geodesic, p: HPoint) -> HPoint:
    return beta.point_at(beta.coordinate(p))


def project_geodesic(beta: Geodesic, alpha: Geodesic) -> Interval:
    """Closest-point projection of ``alpha`` onto ``beta`` as a coordinate interval.

    The image is the segment between the projections of alpha's two ideal
    endpoints.  Asymptotic lines give a half-infinite interval.
    """
    if beta.same_line(alpha):
        raise SameGeodesic("cannot project a geodesic onto itself")
    t1 = beta.ideal_coordinate(alpha.start)
    t2 = beta.ideal_coordinate(alpha.end)
    return Interval(min(t1, t2), max(t1, t2), beta)


def proj_distance(beta: Geodesic, alpha1: Geodesic, alpha2: Geodesic) -> float:
    i1 = project_geodesic(beta, alpha1)
    i2 = project_geodesic(beta, alpha2)
    return i1.hull(i2).diameter


def geodesic_distance(g1: Geodesic, g2: Geodesic) -> float:
    """Distance between two complete geodesics (0 if they meet or are asymptotic)."""
    if g1.same_line(g2):
        return 0.0
    ends = [g1.ideal_coordinate(x) for x in g2.endpoints]
    if any(math.isinf(t) for t in ends):
        return 0.0
    # move g1 to (0, inf); g2 becomes the semicircle over (u1, u2)
    u1, u2 = (_frame_value(g1, x) for x in g2.endpoints)
    if u1 * u2 <= 0:
        return 0.0
    lo, hi = sorted((abs(u1), abs(u2)))
    return math.acosh((hi + lo) / (hi - lo))


def _frame_value(g: Geodesic, xi: float) -> float:
    # real image of xi under a Mobius map sending g.start -> 0, g.end -> inf
    s, e = g.start, g.end
    if _is_inf(xi):
        return -1.0 if not (_is_inf(s) or _is_inf(e)) else (INF if _is_inf(e) else 0.0)
    if _is_inf(e):
        return xi - s
    if _is_inf(s):
        return -1.0 / (xi - e)
    return (xi - s) / (e - xi)


def standard_frame(g: Geodesic) -> MobiusIsometry:
    """Orientation-preserving isometry sending ``g.start`` to 0 and ``g.end`` to infinity."""
    s, e = g.start, g.end
    if _is_inf(e):
        return MobiusIsometry(1.0, -s, 0.0, 1.0)
    if _is_inf(s):
        return MobiusIsometry(0.0, -1.0, 1.0, -e)
    if e > s:
        return MobiusIsometry.from_matrix(1.0, -s, -1.0, e)
    return MobiusIsometry.from_matrix(-1.0, s, -1.0, e)


def disk_angle(xi: float) -> float:
    """Angle in [0, 2pi) of the ideal point under the Cayley map to the disc."""
    if _is_inf(xi):
        return 0.0
    w = complex(xi, -1.0) / complex(xi, 1.0)
    return math.atan2(w.imag, w.real) % (2 * math.pi)
