"""Graphs of groups with F_k x Z vertex groups and Z^2 flip edges.

Elements of the fundamental group are closed edge paths

    g0 e1 g1 e2 ... en gn

based at a fixed vertex, where each ``gi`` is a vertex-group element
``(word, fiber)`` in ``F_k x <z>`` and each ``ei`` is an oriented edge
``(name, +-1)``.  Every oriented edge ``e`` has a local boundary word
``c_from`` at its source and ``c_to`` at its target; the edge group
``<c_from> x <z>`` is carried across by the flip

    phi_e(c_from^p z^n) = c_to^n z^p

with the relation ``a e = e phi_e(a)``.  Loops (HNN edges) need no special
treatment.

Normal forms choose shortlex coset representatives of ``<c>`` in F_k, so two
paths are equal in the group iff their normal forms are equal tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import words
from .schottky import SchottkyRep, pants_pair, rep_from_params, rotated_pair
from .words import Word

VElt = tuple[Word, int]
Letter = tuple[str, int]

ONE: VElt = ((), 0)


class InvalidParams(ValueError):
    pass


class NotClosed(ValueError):
    pass


def vmul(x: VElt, y: VElt) -> VElt:
    return (words.mul(x[0], y[0]), x[1] + y[1])


def vinv(x: VElt) -> VElt:
    return (words.inv(x[0]), -x[1])


def vfmt(x: VElt) -> str:
    w, n = x
    if n == 0:
        return words.fmt(w)
    z = f"z^{n}" if n != 1 else "z"
    return z if not w else f"{words.fmt(w)}{z}"


@dataclass(frozen=True)
class VertexGroup:
    name: str
    rank: int
    rep: SchottkyRep


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    target: str
    source_word: Word
    target_word: Word


def flip_letter(e: Letter) -> Letter:
    return (e[0], -e[1])


@dataclass(frozen=True)
class AdmissibleGraph:
    vertices: Mapping[str, VertexGroup]
    edges: tuple[Edge, ...]
    base: str

    def __post_init__(self):
        if not self.edges:
            raise InvalidParams("an admissible graph needs at least one edge")
        if self.base not in self.vertices:
            raise InvalidParams(f"unknown base vertex {self.base!r}")
        names = set()
        for e in self.edges:
            if e.name in names:
                raise InvalidParams(f"duplicate edge {e.name!r}")
            names.add(e.name)
            for v, c in ((e.source, e.source_word), (e.target, e.target_word)):
                if v not in self.vertices:
                    raise InvalidParams(f"edge {e.name!r} uses unknown vertex {v!r}")
                if not c or not words.is_cyclically_reduced(c):
                    raise InvalidParams(f"edge {e.name!r}: boundary word must be cyclically reduced")
                if max(abs(x) for x in c) > self.vertices[v].rank:
                    raise InvalidParams(f"edge {e.name!r}: word uses letters beyond the rank")

    @cached_property
    def _edge(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    def edge(self, name: str) -> Edge:
        return self._edge[name]

    def source(self, e: Letter) -> str:
        ed = self._edge[e[0]]
        return ed.source if e[1] > 0 else ed.target

    def target(self, e: Letter) -> str:
        ed = self._edge[e[0]]
        return ed.target if e[1] > 0 else ed.source

    def c_from(self, e: Letter) -> Word:
        ed = self._edge[e[0]]
        return ed.source_word if e[1] > 0 else ed.target_word

    def c_to(self, e: Letter) -> Word:
        return self.c_from(flip_letter(e))

    def out_letters(self, v: str) -> list[Letter]:
        out = []
        for ed in self.edges:
            if ed.source == v:
                out.append((ed.name, 1))
            if ed.target == v:
                out.append((ed.name, -1))
        return out

    def in_edge_group(self, e: Letter, g: VElt) -> int | None:
        """Exponent ``p`` if ``g = c_from^p z^n``, else None."""
        return words.root_power(g[0], self.c_from(e))

    def phi(self, e: Letter, g: VElt) -> VElt:
        p = self.in_edge_group(e, g)
        if p is None:
            raise ValueError(f"{vfmt(g)} is not in the edge group of {e}")
        return (words.power(self.c_to(e), g[1]), p)

    def split(self, e: Letter, g: VElt) -> tuple[VElt, VElt]:
        """Write ``g = t a`` with ``t`` the canonical coset rep and ``a`` in A_e."""
        c = self.c_from(e)
        t, m = words.coset_canonical(g[0], c)
        return (t, 0), (words.power(c, -m), g[1])

    def rep(self, v: str) -> SchottkyRep:
        return self.vertices[v].rep

    # -- elements ---------------------------------------------------------

    def identity(self) -> "GoGElement":
        return GoGElement(self, (ONE,), ())

    def vertex_element(self, g: VElt | str, fiber: int = 0) -> "GoGElement":
        if isinstance(g, str):
            g = (words.parse(g), fiber)
        elif not (len(g) == 2 and isinstance(g[0], tuple)):
            # a bare word rather than a (word, fiber) pair
            g = (words.reduce(g), fiber)
        elif fiber:
            raise ValueError("pass the fiber either inside the pair or as an argument, not both")
        return GoGElement(self, (g,), ())

    def z(self, n: int = 1) -> "GoGElement":
        return self.vertex_element(((), n))

    def path(self, syllables: Sequence[VElt], letters: Sequence[Letter], start: str | None = None) -> "GoGElement":
        return normal_form(self, syllables, letters, start)

    def parse_path(self, text: str) -> "GoGElement":
        """Parse ``"a z . alpha . b . alpha' . "`` style paths.

        Tokens separated by ``.`` alternate syllable / edge letter.  A syllable
        is a word optionally followed by ``z^n``; an edge is a name, with a
        trailing ``'`` for the reverse orientation.
        """
        parts = [p.strip() for p in text.split(".")]
        sylls = []
        lets = []
        for i, tok in enumerate(parts):
            if i % 2 == 0:
                sylls.append(_parse_syllable(tok))
            else:
                rev = tok.endswith("'")
                lets.append((tok.rstrip("'"), -1 if rev else 1))
        if len(sylls) == len(lets):
            sylls.append(ONE)
        return normal_form(self, sylls, lets)


def _parse_syllable(tok: str) -> VElt:
    tok = tok.replace(" ", "")
    if tok in ("", "1"):
        return ONE
    if "z" in tok:
        w, _, e = tok.partition("z")
        n = int(e[1:]) if e.startswith("^") else 1
        return (words.parse(w), n)
    return (words.parse(tok), 0)


@dataclass(frozen=True)
class GoGElement:
    """A normalized edge path starting at the base vertex.

    Closed paths are group elements; open paths are used to address tree
    vertices.
    """

    graph: AdmissibleGraph = field(compare=False, repr=False, hash=False)
    syllables: tuple[VElt, ...]
    letters: tuple[Letter, ...]

    @property
    def end(self) -> str:
        return self.graph.target(self.letters[-1]) if self.letters else self.graph.base

    @property
    def is_closed(self) -> bool:
        return self.end == self.graph.base

    def __mul__(self, other: "GoGElement") -> "GoGElement":
        if self.end != other.graph.base:
            raise NotClosed("left factor must end at the base vertex")
        sylls = self.syllables[:-1] + (vmul(self.syllables[-1], other.syllables[0]),) + other.syllables[1:]
        return normal_form(self.graph, sylls, self.letters + other.letters)

    def inverse(self) -> "GoGElement":
        if not self.is_closed:
            raise NotClosed("only closed paths have inverses")
        sylls = tuple(vinv(g) for g in reversed(self.syllables))
        lets = tuple(flip_letter(e) for e in reversed(self.letters))
        return normal_form(self.graph, sylls, lets)

    def __pow__(self, n: int) -> "GoGElement":
        base = self if n >= 0 else self.inverse()
        out = self.graph.identity()
        sq = base
        n = abs(n)
        while n:
            if n & 1:
                out = out * sq
            n >>= 1
            if n:
                sq = sq * sq
        return out

    def conj(self, h: "GoGElement") -> "GoGElement":
        """``h self h^-1``."""
        return h * self * h.inverse()

    @property
    def is_identity(self) -> bool:
        return not self.letters and self.syllables[0] == ONE

    @property
    def length(self) -> int:
        return len(self.letters)

    def vertex_part(self) -> VElt | None:
        return self.syllables[0] if not self.letters else None

    def __str__(self) -> str:
        out = [vfmt(self.syllables[0])]
        for e, g in zip(self.letters, self.syllables[1:]):
            out.append(e[0] + ("'" if e[1] < 0 else ""))
            out.append(vfmt(g))
        return " . ".join(out)


def _backtrack_reduce(graph: AdmissibleGraph, sylls: list[VElt], lets: list[Letter]):
    out_s: list[VElt] = [sylls[0]]
    out_l: list[Letter] = []
    for e, g in zip(lets, sylls[1:]):
        # e_last . s . e with e = reverse(e_last) and s in B_{e_last} collapses
        if out_l and e == flip_letter(out_l[-1]):
            mid = out_s[-1]
            if graph.in_edge_group(e, mid) is not None:
                out_l.pop()
                out_s.pop()
                merged = vmul(vmul(out_s[-1], graph.phi(e, mid)), g)
                out_s[-1] = merged
                continue
        out_l.append(e)
        out_s.append(g)
    return out_s, out_l


def normal_form(graph: AdmissibleGraph, syllables: Sequence[VElt], letters: Sequence[Letter],
                start: str | None = None) -> GoGElement:
    sylls = [(words.reduce(w), int(n)) for w, n in syllables]
    lets = [(str(name), int(s)) for name, s in letters]
    if len(sylls) != len(lets) + 1:
        raise ValueError("need exactly one more syllable than edge letters")
    here = start or graph.base
    if here != graph.base:
        raise NotClosed("paths start at the base vertex")
    for e in lets:
        if graph.source(e) != here:
            raise ValueError(f"edge {e} does not start at {here!r}")
        here = graph.target(e)
    sylls, lets = _backtrack_reduce(graph, sylls, lets)
    for i, e in enumerate(lets):
        t, a = graph.split(e, sylls[i])
        sylls[i] = t
        sylls[i + 1] = vmul(graph.phi(e, a), sylls[i + 1])
    return GoGElement(graph, tuple(sylls), tuple(lets))


# --------------------------------------------------------------------------
# presets


def flip_preset(params: Mapping | None = None) -> tuple[AdmissibleGraph, dict[str, SchottkyRep]]:
    """Two F_2 x Z pieces glued by the flip, optionally with a loop at mu.

    Without a loop both pieces are one-holed tori with boundary word
    ``[a, b]``.  With ``loop: true`` the piece mu is a pair of pants with
    boundary words ``aB`` (glued to omega along alpha) and ``a``, ``b``
    (glued to each other along the loop beta).
    """
    params = dict(params or {})
    known = {"loop", "rep_mu", "rep_omega"}
    extra = set(params) - known
    if extra:
        raise InvalidParams(f"unknown flip parameters: {sorted(extra)}")
    loop = bool(params.get("loop", False))
    try:
        rep_o = rep_from_params(params["rep_omega"]) if "rep_omega" in params else rotated_pair()
        if loop:
            rep_m = rep_from_params(params["rep_mu"]) if "rep_mu" in params else pants_pair()
        else:
            rep_m = rep_from_params(params["rep_mu"]) if "rep_mu" in params else rotated_pair()
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParams(str(exc)) from exc
    verts = {
        "mu": VertexGroup("mu", 2, rep_m),
        "omega": VertexGroup("omega", 2, rep_o),
    }
    comm = words.parse("abAB")
    if loop:
        edges = (
            Edge("alpha", "mu", "omega", words.parse("aB"), comm),
            Edge("beta", "mu", "mu", words.parse("a"), words.parse("b")),
        )
    else:
        edges = (Edge("alpha", "mu", "omega", comm, comm),)
    g = AdmissibleGraph(verts, edges, "mu")
    return g, {k: v.rep for k, v in verts.items()}


def noncommensurability_violations(graph: AdmissibleGraph, vertex: str, radius: int = 3,
                                   exponent_bound: int = 8) -> list[tuple]:
    """Spot-check that conjugates of distinct edge images meet only in the centre.

    For edge images ``K_i = <c_i> x <z>`` at ``vertex`` and ``g`` in the ball,
    ``g K_i g^-1`` meets ``K_j`` in ``<z>`` exactly when no ``g c_i^p g^-1``
    with ``0 < |p| <= E`` is a power of ``c_j``.  For ``i == j`` only ``g``
    outside ``K_i`` is tested.  Returns the offending ``(i, j, g, p)``.
    """
    cs = [graph.c_from(e) for e in graph.out_letters(vertex)]
    bad = []
    for g in words.ball(graph.vertices[vertex].rank, radius):
        for (i, ci), (j, cj) in itertools.product(enumerate(cs), repeat=2):
            if i == j and words.root_power(g, ci) is not None:
                continue
            for p in range(1, exponent_bound + 1):
                conj = words.mul(g, words.power(ci, p), words.inv(g))
                if words.root_power(conj, cj) is not None:
                    bad.append((i, j, g, p))
                    break
    return bad


def finite_index_certificate(graph: AdmissibleGraph) -> dict[str, bool]:
    """The two centre preimages in each edge group generate all of Z^2.

    Under the flip, the fibre of the far side lands on ``c`` and the near
    fibre is ``z``, so the images are the basis ``{c, z}``: index one.
    """
    out = {}
    for ed in graph.edges:
        e = (ed.name, 1)
        far_fiber = graph.phi(flip_letter(e), ((), 1))
        out[ed.name] = far_fiber == (ed.source_word, 0)
    return out


def generators(graph: AdmissibleGraph) -> list[GoGElement]:
    """A generating set of the fundamental group based at ``graph.base``.

    Vertex generators are transported along a BFS spanning tree of the
    underlying graph; each edge outside the tree contributes one stable
    letter ``p e q^-1`` with ``p``, ``q`` the tree paths to its ends.
    """
    paths: dict[str, tuple[list[VElt], list[Letter]]] = {graph.base: ([ONE], [])}
    order = [graph.base]
    tree: set[str] = set()
    for v in order:
        for e in graph.out_letters(v):
            w = graph.target(e)
            if w not in paths:
                s, l = paths[v]
                paths[w] = (s + [ONE], l + [e])
                tree.add(e[0])
                order.append(w)

    def conjugate_in(v: str, g: VElt) -> GoGElement:
        s, l = paths[v]
        sylls = s[:-1] + [g] + [ONE] * len(l)
        lets = l + [flip_letter(e) for e in reversed(l)]
        return normal_form(graph, sylls, lets)

    out = []
    for v in order:
        for k in range(1, graph.vertices[v].rank + 1):
            out.append(conjugate_in(v, ((k,), 0)))
        out.append(conjugate_in(v, ((), 1)))
    for ed in graph.edges:
        if ed.name in tree:
            continue
        s1, l1 = paths[ed.source]
        s2, l2 = paths[ed.target]
        sylls = s1 + [ONE] * (len(l2) + 1)
        lets = l1 + [(ed.name, 1)] + [flip_letter(e) for e in reversed(l2)]
        out.append(normal_form(graph, sylls, lets))
    return out


def random_element(graph: AdmissibleGraph, length: int, rng, gens: Sequence[GoGElement] | None = None) -> GoGElement:
    gens = list(gens) if gens is not None else generators(graph)
    x = graph.identity()
    for _ in range(length):
        g = rng.choice(gens)
        x = x * (g if rng.random() < 0.5 else g.inverse())
    return x
