"""Schottky representations of free groups into PSL(2, R) and ping-pong."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .. import hplane
from ..hplane import MobiusIsometry
from . import words


class NotHyperbolicGenerator(ValueError):
    pass


@dataclass(frozen=True)
class SchottkyRep:
    generators: tuple[MobiusIsometry, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def evaluate(self, w: Sequence[int]) -> MobiusIsometry:
        out = MobiusIsometry.identity()
        for x in w:
            g = self.generators[abs(x) - 1]
            out = out @ (g if x > 0 else g.inverse())
        return out

    @property
    def margin(self) -> float:
        return verify_ping_pong(self)

    def to_params(self) -> dict:
        return {"type": "matrices", "matrices": [list(g.entries()) for g in self.generators]}


def evaluate(rep: SchottkyRep, w: Sequence[int]) -> MobiusIsometry:
    return rep.evaluate(w)


def rotated_pair(stretch: float = 3.0, angle_deg: float = 90.0) -> SchottkyRep:
    """a = diag(s, 1/s), b = r a r^-1 with r the rotation about i.

    At 90 degrees the two axes cross orthogonally and the quotient is a
    one-holed torus whose boundary word is the commutator.
    """
    a = MobiusIsometry.diagonal(stretch)
    r = MobiusIsometry.rotation(math.radians(angle_deg))
    return SchottkyRep((a, r @ a @ r.inverse()))


def pants_pair(stretch: float = 6.0, lo: float = 1.0, hi: float = 2.0) -> SchottkyRep:
    """a = diag(s, 1/s); b has the same stretch with axis over (lo, hi).

    Both of b's ping-pong domains sit in one gap of a's, so the quotient is a
    pair of pants with boundary words a, b and aB.
    """
    a = MobiusIsometry.diagonal(stretch)
    m = MobiusIsometry.from_matrix(hi, lo, 1.0, 1.0)
    return SchottkyRep((a, m @ a @ m.inverse()))


def rep_from_params(params: Mapping) -> SchottkyRep:
    kind = params.get("type", "rotated-pair")
    if kind == "rotated-pair":
        return rotated_pair(float(params.get("stretch", 3.0)), float(params.get("angle_deg", 90.0)))
    if kind == "pants-pair":
        return pants_pair(float(params.get("stretch", 6.0)), float(params.get("lo", 1.0)), float(params.get("hi", 2.0)))
    if kind == "matrices":
        return SchottkyRep(tuple(_matrix(m) for m in params["matrices"]))
    raise ValueError(f"unknown representation type {kind!r}")


def _matrix(entries) -> MobiusIsometry:
    a, b, c, d = map(float, entries)
    try:
        # keep the exact floats when they already have det 1
        return MobiusIsometry(a, b, c, d)
    except ValueError:
        return MobiusIsometry.from_matrix(a, b, c, d)


def _arc(points: tuple[float, float], inside: float) -> tuple[float, float]:
    """CCW disc arc (start, length) bounded by two ideal points, containing ``inside``."""
    p, q = (hplane.disk_angle(x) for x in points)
    m = hplane.disk_angle(inside)
    tau = 2 * math.pi
    length = (q - p) % tau
    if (m - p) % tau <= length:
        return p, length
    return q, (p - q) % tau


def domains(g: MobiusIsometry) -> tuple[tuple[float, float], tuple[float, float]]:
    """Boundary arcs (D^-, D^+) of the ping-pong half-planes of ``g``.

    The half-planes are bounded by the perpendiculars to the axis at
    distance l/2 on either side of the projection of i, so ``g`` maps the
    complement of D^- onto D^+.
    """
    if hplane.classify_isometry(g) != "hyperbolic":
        raise NotHyperbolicGenerator(f"trace {g.trace:.6g}")
    ax, length = hplane.axis(g)
    centre = ax.coordinate(hplane.HPoint(0.0, 1.0))
    lo = ax.perpendicular_feet(centre - length / 2)
    hi = ax.perpendicular_feet(centre + length / 2)
    return _arc(lo, ax.start), _arc(hi, ax.end)


def verify_ping_pong(rep: SchottkyRep) -> float:
    """Smallest angular gap between the 2k ping-pong arcs; > 0 certifies freeness."""
    arcs = []
    for g in rep.generators:
        arcs.extend(domains(g))
    arcs = sorted((start % (2 * math.pi), length) for start, length in arcs)
    tau = 2 * math.pi
    gaps = []
    for i, (start, length) in enumerate(arcs):
        nxt = arcs[i + 1][0] if i + 1 < len(arcs) else arcs[0][0] + tau
        gaps.append(nxt - (start + length))
    # a single arc swallowing another shows up as total length > 2 pi
    return min(min(gaps), tau - sum(length for _, length in arcs))


def default_rep() -> SchottkyRep:
    rep = rotated_pair()
    if verify_ping_pong(rep) <= 0:
        raise AssertionError("default representation fails ping-pong")
    if hplane.classify_isometry(rep.evaluate(words.parse("abAB"))) != "hyperbolic":
        raise AssertionError("default commutator is not hyperbolic")
    return rep
