from .words import ball, count_occurrences, reduce
from .schottky import SchottkyRep, default_rep, evaluate, verify_ping_pong
from .gog import AdmissibleGraph, GoGElement, InvalidParams, flip_preset
from .bass_serre import BassSerreBall, bass_serre_ball, bipartition

__all__ = [
    "AdmissibleGraph",
    "BassSerreBall",
    "GoGElement",
    "InvalidParams",
    "SchottkyRep",
    "ball",
    "bass_serre_ball",
    "bipartition",
    "count_occurrences",
    "default_rep",
    "evaluate",
    "flip_preset",
    "reduce",
    "verify_ping_pong",
]
