"""YAML scenario files describing admissible graphs.

Floats are written with ``repr`` precision by PyYAML, so a graph written
and read back has bit-identical matrices.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

from . import words
from .gog import AdmissibleGraph, Edge, InvalidParams, VertexGroup
from .schottky import rep_from_params


def graph_to_dict(graph: AdmissibleGraph) -> dict[str, Any]:
    return {
        "base": graph.base,
        "vertices": {
            name: {"rank": vg.rank, "rep": vg.rep.to_params()} for name, vg in graph.vertices.items()
        },
        "edges": [
            {
                "name": e.name,
                "source": e.source,
                "target": e.target,
                "source_word": words.fmt(e.source_word),
                "target_word": words.fmt(e.target_word),
            }
            for e in graph.edges
        ],
    }


def graph_from_dict(data: dict[str, Any]) -> AdmissibleGraph:
    extra = set(data) - {"base", "vertices", "edges"}
    if extra:
        raise InvalidParams(f"unknown scenario keys: {sorted(extra)}")
    try:
        verts = {}
        for name, spec in data["vertices"].items():
            rep = rep_from_params(spec["rep"])
            rank = int(spec.get("rank", rep.rank))
            if rank != rep.rank:
                raise InvalidParams(f"vertex {name!r}: rank {rank} but {rep.rank} matrices")
            verts[name] = VertexGroup(name, rank, rep)
        edges = tuple(
            Edge(e["name"], e["source"], e["target"], words.parse(e["source_word"]), words.parse(e["target_word"]))
            for e in data["edges"]
        )
        return AdmissibleGraph(verts, edges, data.get("base", next(iter(verts))))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidParams(f"malformed scenario: {exc!r}") from exc


def dumps(graph: AdmissibleGraph) -> str:
    return yaml.safe_dump(graph_to_dict(graph), sort_keys=False)


def loads(text: str) -> AdmissibleGraph:
    return graph_from_dict(yaml.safe_load(text))


def write_scenario(graph: AdmissibleGraph, path: str | Path) -> None:
    Path(path).write_text(dumps(graph))


def read_scenario(path: str | Path) -> AdmissibleGraph:
    return loads(Path(path).read_text())
