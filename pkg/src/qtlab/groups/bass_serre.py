"""Finite balls in the Bass-Serre tree of an admissible graph of groups.

A tree vertex is the coset ``g G_v`` of a path ``g`` ending at ``v``.  In
normal form the last syllable of ``g`` can be absorbed into ``G_v``, so a
vertex is addressed by the tuple of ``(coset rep, edge letter)`` pairs that
precede it.  The root ``()`` is the base vertex group itself, and the parent
of a vertex drops the last pair, so tree distance is read off common
prefixes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import words
from .gog import ONE, AdmissibleGraph, GoGElement, Letter, VElt, flip_letter, normal_form

Vertex = tuple[tuple[VElt, Letter], ...]

ROOT: Vertex = ()

V1, V2 = "V1", "V2"


def label(graph: AdmissibleGraph, v: Vertex) -> str:
    return graph.target(v[-1][1]) if v else graph.base


def vertex_path(graph: AdmissibleGraph, v: Vertex) -> GoGElement:
    sylls = [t for t, _ in v] + [ONE]
    lets = [e for _, e in v]
    return GoGElement(graph, tuple(sylls), tuple(lets))


def act(g: GoGElement, v: Vertex) -> tuple[Vertex, VElt]:
    """Return ``(g v, k)`` where ``g * path(v) = path(g v) * k``."""
    nf = g * vertex_path(g.graph, v)
    return tuple(zip(nf.syllables[:-1], nf.letters)), nf.syllables[-1]


def move(g: GoGElement, v: Vertex) -> Vertex:
    return act(g, v)[0]


def common_prefix(u: Vertex, v: Vertex) -> int:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def tree_distance(u: Vertex, v: Vertex) -> int:
    return len(u) + len(v) - 2 * common_prefix(u, v)


def geodesic(u: Vertex, v: Vertex) -> list[Vertex]:
    """Vertices of the tree geodesic from ``u`` to ``v``, inclusive."""
    k = common_prefix(u, v)
    up = [u[:i] for i in range(len(u), k - 1, -1)]
    down = [v[:i] for i in range(k + 1, len(v) + 1)]
    return up + down


def parity_class(v: Vertex) -> str:
    return V1 if len(v) % 2 == 0 else V2


def coset_reps(rank: int, c: words.Word, max_length: int) -> list[words.Word]:
    """Shortlex-minimal representatives of ``F / <c>`` of length <= max_length."""
    return [w for w in words.ball(rank, max_length) if words.coset_canonical(w, c)[0] == w]


def children(graph: AdmissibleGraph, v: Vertex, rep_length: int = 1) -> list[Vertex]:
    here = label(graph, v)
    rank = graph.vertices[here].rank
    back = flip_letter(v[-1][1]) if v else None
    out = []
    for e in graph.out_letters(here):
        for t in coset_reps(rank, graph.c_from(e), rep_length):
            if not t and e == back:
                continue
            out.append(v + (((t, 0), e),))
    return out


def translation_length(g: GoGElement, base: Vertex = ROOT) -> int:
    """Translation length of ``g`` on the tree; 0 iff ``g`` fixes a vertex."""
    gv = move(g, base)
    g2v = move(g, gv)
    return max(0, tree_distance(base, g2v) - tree_distance(base, gv))


def fixes(g: GoGElement, v: Vertex) -> bool:
    return move(g, v) == v


@dataclass
class BassSerreBall:
    graph: AdmissibleGraph = field(repr=False)
    radius: int
    rep_length: int = 1
    vertices: list[Vertex] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._index: dict[Vertex, int] = {}
        if not self.vertices:
            self._grow()
        else:
            for v in list(self.vertices):
                self._index.setdefault(v, len(self._index))

    def _grow(self):
        queue = deque([ROOT])
        self._add(ROOT)
        while queue:
            v = queue.popleft()
            if len(v) >= self.radius:
                continue
            for c in children(self.graph, v, self.rep_length):
                self._add(c)
                queue.append(c)

    def _add(self, v: Vertex) -> bool:
        if v in self._index:
            return False
        self._index[v] = len(self.vertices)
        self.vertices.append(v)
        return True

    def extend(self, vs: Iterable[Vertex]) -> int:
        """Add vertices together with their ancestors; returns the count added."""
        added = 0
        for v in vs:
            for i in range(len(v) + 1):
                added += self._add(v[:i])
        return added

    def __contains__(self, v: Vertex) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.vertices)

    def index(self, v: Vertex) -> int:
        return self._index[v]

    def label(self, v: Vertex) -> str:
        return label(self.graph, v)

    def neighbors(self, v: Vertex) -> list[Vertex]:
        out = [v[:-1]] if v else []
        out += [u for u in self.vertices if len(u) == len(v) + 1 and u[:-1] == v]
        return out

    def edges(self) -> list[tuple[Vertex, Vertex, Letter]]:
        return [(v[:-1], v, v[-1][1]) for v in self.vertices if v]

    def bipartition(self) -> dict[Vertex, str]:
        return {v: parity_class(v) for v in self.vertices}

    def link(self, v: Vertex) -> list[Vertex]:
        return self.neighbors(v)


def bass_serre_ball(graph: AdmissibleGraph, radius: int, rep_length: int = 1) -> BassSerreBall:
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return BassSerreBall(graph, radius, rep_length)


def bipartition(ball: BassSerreBall) -> dict[Vertex, str]:
    return ball.bipartition()


def odd_element(graph: AdmissibleGraph) -> GoGElement | None:
    """Shortest closed path moving the root to odd depth, or None if bipartite.

    Candidates are single loop letters at the base, tried in a fixed order.
    """
    for e in sorted(graph.out_letters(graph.base), key=lambda e: (e[0], -e[1])):
        if graph.target(e) == graph.base:
            return normal_form(graph, [ONE, ONE], [e])
    return None
