"""Desk-scale experiments with projection complexes, quasi-trees of lines and
Bass-Serre trees of graph-manifold groups."""

__version__ = "0.1.0"
