"""Quasimorphisms: counting quasimorphisms on free groups, fiber homomorphisms,
homogenization, and the symmetrized extension ``rho`` across an index-2
subgroup.

Group elements are either reduced words (tuples of ints) or
:class:`~qtlab.groups.gog.GoGElement` paths; products use whichever
operation fits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .groups import bass_serre as bs
from .groups import words
from .groups.gog import AdmissibleGraph, GoGElement, flip_letter
from .groups.words import EmptyWord

N_DEFAULT = 10


class NotInSubgroupSquare(ValueError):
    pass


def _mul(x, y):
    if isinstance(x, GoGElement):
        return x * y
    return words.mul(x, y)


def _inv(x):
    if isinstance(x, GoGElement):
        return x.inverse()
    return words.inv(x)


def _square_n(g, n: int):
    for _ in range(n):
        g = _mul(g, g)
    return g


def _power(g, n: int):
    if isinstance(g, GoGElement):
        return g**n
    return words.power(g, n)


@dataclass
class Quasimorphism:
    evaluator: Callable[[Any], float] = field(repr=False)
    name: str = "q"
    defect: float = math.nan
    homogeneous: bool = False

    def __call__(self, g) -> float:
        return float(self.evaluator(g))

    def measure_defect(self, pairs: Iterable[tuple[Any, Any]]) -> float:
        d = 0.0
        for g, h in pairs:
            d = max(d, abs(self(_mul(g, h)) - self(g) - self(h)))
        self.defect = d
        return d

    def homogenized(self, N: int = N_DEFAULT) -> "Quasimorphism":
        hq = Quasimorphism(lambda g: homogenize(self, g, N), f"hom({self.name})", homogeneous=True)
        # homogenizing at most doubles the defect
        hq.defect = 2 * self.defect if not math.isnan(self.defect) else math.nan
        return hq

    def tail(self, N: int = N_DEFAULT) -> float:
        """Homogenization tail bound ``D / 2^N``."""
        return self.defect / 2**N


def homogenize(q: Quasimorphism, g, N: int = N_DEFAULT) -> float:
    """``q(g^(2^N)) / 2^N``, computed by repeated squaring."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return q(_square_n(g, N)) / 2**N


def brooks(w: Sequence[int]) -> Quasimorphism:
    """Counting quasimorphism: occurrences of ``w`` minus occurrences of ``w^-1``."""
    w = words.reduce(w)
    if not w:
        raise EmptyWord("the counting word must be nonempty")
    wi = words.inv(w)

    def ev(g) -> float:
        g = words.reduce(g)
        return words.count_occurrences(g, w) - words.count_occurrences(g, wi)

    return Quasimorphism(ev, f"brooks({words.fmt(w)})")


def ball_pairs(rank: int, radius: int) -> Iterable[tuple[words.Word, words.Word]]:
    b = words.ball(rank, radius)
    return itertools.product(b, b)


def fiber_qm(graph: AdmissibleGraph | None = None, vertex: str | None = None) -> Quasimorphism:
    """Fiber exponent on ``F_k x Z``: a homomorphism, so exactly homogeneous."""

    def ev(g) -> float:
        if isinstance(g, GoGElement):
            part = g.vertex_part()
            if part is None:
                raise ValueError("element is not in the base vertex group")
            return part[1]
        return g[1]

    q = Quasimorphism(ev, f"fiber({vertex or ''})", defect=0.0, homogeneous=True)
    return q


# --------------------------------------------------------------------------
# tree-based quasimorphism on the parity-preserving subgroup


def is_even(x: GoGElement) -> bool:
    """Membership in the index-<=2 subgroup preserving the depth parity classes."""
    return bs.tree_distance(bs.ROOT, bs.move(x, bs.ROOT)) % 2 == 0


def _fixed_neighbors(graph: AdmissibleGraph, x: GoGElement, v: bs.Vertex, k) -> list[bs.Vertex]:
    cands = [v[:-1]] if v else []
    back = flip_letter(v[-1][1]) if v else None
    for e in graph.out_letters(bs.label(graph, v)):
        c = graph.c_from(e)
        if not k[0]:
            ts = [()]
        else:
            t = words.conjugator_into_cyclic(k[0], c)
            ts = [] if t is None else [words.coset_canonical(t, c)[0]]
        for t in ts:
            if not t and e == back:
                continue
            cands.append(v + (((t, 0), e),))
    return [u for u in cands if bs.move(x, u) == u]


def fixed_vertex_fiber(graph: AdmissibleGraph, x: GoGElement, label: str, cls: str = bs.V1,
                       depth: int = 4) -> float:
    """Fiber of ``g_u^-1 x g_u`` at a vertex ``u`` of the given label and class fixed by ``x``.

    Returns 0 when ``x`` is loxodromic on the tree or fixes no such vertex
    near the midpoint of ``[root, x root]``.  Distinct admissible choices of
    ``u`` give the same value, because two such vertices are joined through
    an intersection of edge groups, which is central there and so carries
    fiber 0 on both sides.
    """
    if bs.translation_length(x) > 0:
        return 0.0
    xr = bs.move(x, bs.ROOT)
    path = bs.geodesic(bs.ROOT, xr)
    m = path[(len(path) - 1) // 2]
    seen = {m}
    frontier = [m]
    for _ in range(depth + 1):
        nxt = []
        for v in frontier:
            v2, k = bs.act(x, v)
            if v2 != v:
                continue
            if bs.label(graph, v) == label and bs.parity_class(v) == cls:
                return float(k[1])
            for u in _fixed_neighbors(graph, x, v, k):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return 0.0


def vertex_fiber_qm(graph: AdmissibleGraph, label: str = "mu", cls: str = bs.V1) -> Quasimorphism:
    """Stand-in for the quasimorphism of the line system on the subgroup ``G'``.

    It is a class function on ``G'``, homogeneous, equal to the fiber
    exponent on elements fixing a ``cls``-vertex labelled ``label`` and zero
    on all other elements.
    """

    def ev(x: GoGElement) -> float:
        if not is_even(x):
            raise NotInSubgroupSquare("argument must lie in the parity-preserving subgroup")
        return fixed_vertex_fiber(graph, x, label, cls)

    return Quasimorphism(ev, f"fiber@{label}/{cls}", homogeneous=True)


def extend_rho(q: Quasimorphism, h: GoGElement | None, x: GoGElement) -> float:
    """``rho(x) = (q(x^2) + q(h x^2 h^-1)) / 2``; with ``h`` None the subgroup is everything."""
    x2 = x * x
    if not is_even(x2):
        raise NotInSubgroupSquare("x^2 is not in the parity-preserving subgroup")
    if h is None:
        return q(x2) / 2
    return (q(x2) + q(h * x2 * h.inverse())) / 2


def rho_qm(q: Quasimorphism, h: GoGElement | None) -> Quasimorphism:
    out = Quasimorphism(lambda x: extend_rho(q, h, x), f"rho({q.name})", homogeneous=q.homogeneous)
    out.defect = q.defect
    return out


def translation_number(q: Quasimorphism, g, N: int = N_DEFAULT) -> float:
    if not q.homogeneous:
        raise ValueError("translation numbers need a homogeneous quasimorphism")
    return homogenize(q, g, N)


def nonzero(value: float, defect: float, N: int = N_DEFAULT) -> bool:
    """Declare a homogenized value nonzero when it clears ten homogenization tails."""
    return abs(value) > 10 * defect / 2**N
