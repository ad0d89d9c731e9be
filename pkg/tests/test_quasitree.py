import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qtlab import hplane, projections, quasitree
from qtlab.groups import words
from qtlab.groups.schottky import default_rep
from qtlab.hplane import Geodesic
from qtlab.projections import ProjectionSystem

P = words.parse


def line_system(lines):
    return ProjectionSystem(list(range(len(lines))), lambda y, x: hplane.project_geodesic(lines[y], lines[x]), lines)


@pytest.fixture(scope="module")
def schottky():
    return projections.axes_family(default_rep(), [P("a"), P("b")], 3)


@pytest.fixture(scope="module")
def schottky_graph(schottky):
    return quasitree.build_quasi_tree(schottky, quasitree.default_K(schottky.estimate_xi()))


def test_truncate_values():
    assert quasitree.truncate(3, 5) == 0
    assert quasitree.truncate(7, 5) == 7
    assert quasitree.truncate(5, 5) == 5
    with pytest.raises(ValueError):
        quasitree.truncate(1, -1)


@given(st.floats(0, 100), st.floats(0, 100))
def test_truncate_is_zero_or_identity(t, K):
    v = quasitree.truncate(t, K)
    assert v in (0.0, t)
    assert (v == t) == (t >= K) or t == 0


def test_projection_complex_two_members():
    sys2 = line_system([Geodesic(1.0, 2.0), Geodesic(-3.0, -1.0)])
    adj = quasitree.build_projection_complex(sys2, 1.0)
    assert adj.sum() == 2 and adj[0, 1]


def test_projection_complex_connected_and_saturates(schottky):
    xi = schottky.estimate_xi()
    adj = quasitree.build_projection_complex(schottky, quasitree.default_K(xi))
    assert quasitree.is_connected(adj)
    huge = quasitree.build_projection_complex(schottky, 1e9)
    assert huge.sum() == schottky.n * (schottky.n - 1)


def test_K_too_small(schottky):
    xi = schottky.estimate_xi()
    with pytest.raises(quasitree.KTooSmall) as exc:
        quasitree.build_projection_complex(schottky, 4 * xi)
    assert exc.value.bound == pytest.approx(4 * xi)


def test_single_member_is_a_path():
    g = quasitree.build_quasi_tree(line_system([Geodesic(0.0, math.inf)]), 1.0)
    assert g.num_vertices == 1 and not g.edges
    g = quasitree.build_quasi_tree(line_system([Geodesic(0.0, math.inf)]), 1.0, anchors={0: [-2.0, 3.0]})
    assert len(g.edges) == g.num_vertices - 1
    assert not g.bridges
    assert np.all(np.diff(g.samples(0)) <= 0.25 + 1e-12)


def test_two_members_two_paths_one_bridge():
    sys2 = line_system([Geodesic(1.0, 2.0), Geodesic(-3.0, -1.0)])
    g = quasitree.build_quasi_tree(sys2, 1.0, anchors={0: [-3.0, 3.0], 1: [-3.0, 3.0]})
    assert len(g.bridges) == 1
    assert len(g.edges) == g.num_vertices - 2 + 1
    assert g.is_connected()
    gx = nx.Graph()
    gx.add_weighted_edges_from(g.edges)
    assert nx.is_tree(gx)


def test_within_member_distance_is_coordinate_distance(schottky_graph):
    g = schottky_graph
    for y in range(0, g.system.n, 5):
        s = g.samples(y)
        i, j = 0, len(s) - 1
        d = quasitree.graph_distance(g, g.offsets[y] + i, g.offsets[y] + j)
        coord = g.member_subgraph_distance(y, i, j)
        # a path through a bridge can only shorten, and a bridge costs 1
        assert d <= coord + 1e-12
        assert d >= min(coord, 1.0) - 1e-12
        assert np.all(np.diff(s) <= g.h + 1e-12)


def test_member_embeddings_isometric_up_to_2h(schottky_graph):
    g = schottky_graph
    worst = 0.0
    for y in range(g.system.n):
        idx = np.arange(g.offsets[y], g.offsets[y + 1])
        graph_d = g.distances_from(list(idx))[:, idx]
        c = g.coord[idx]
        worst = max(worst, float(np.max(np.abs(c[:, None] - c[None, :]) - graph_d)))
    assert worst <= 2 * g.h


def test_graph_connected_by_bfs(schottky_graph):
    gx = nx.Graph()
    gx.add_nodes_from(range(schottky_graph.num_vertices))
    gx.add_edges_from((u, v) for u, v, _ in schottky_graph.edges)
    assert nx.is_connected(gx)
    assert schottky_graph.is_connected()


def test_dijkstra_matches_networkx(schottky_graph):
    g = schottky_graph
    gx = nx.Graph()
    gx.add_nodes_from(range(g.num_vertices))
    gx.add_weighted_edges_from(g.edges)
    src = [0, g.num_vertices // 2, g.num_vertices - 1]
    rows = g.distances_from(src)
    for s, row in zip(src, rows):
        ref = nx.single_source_dijkstra_path_length(gx, s)
        for v in range(0, g.num_vertices, 7):
            assert row[v] == pytest.approx(ref[v], abs=1e-9)


@pytest.mark.parametrize("which", ["default", "double"])
def test_distance_formula_upper_bound(schottky, which):
    xi = schottky.estimate_xi()
    K = quasitree.default_K(xi) if which == "default" else 2 * math.ceil(4 * xi)
    g = quasitree.build_quasi_tree(schottky, K)
    checks = quasitree.check_pairs(g, quasitree.random_pairs(g, 200, seed=1))
    assert len(checks) == 200
    assert all(c.passed for c in checks), max(c.lhs / c.rhs for c in checks)


def test_distance_monotone_in_K(schottky):
    # larger K adds bridges to the same vertex set, so distances can only drop
    xi = schottky.estimate_xi()
    g1 = quasitree.build_quasi_tree(schottky, quasitree.default_K(xi))
    g2 = quasitree.build_quasi_tree(schottky, 2 * quasitree.default_K(xi))
    assert g1.num_vertices == g2.num_vertices
    assert len(g2.bridges) >= len(g1.bridges)
    src = list(range(0, g1.num_vertices, 40))
    assert np.all(g2.distances_from(src) <= g1.distances_from(src) + 1e-9)


def test_delta_small_graphs():
    path = quasitree.build_quasi_tree(line_system([Geodesic(0.0, math.inf)]), 1.0, anchors={0: [-3.0, 3.0]})
    assert quasitree.delta_four_point(path, 500) <= 2 * path.h
    star = line_system([Geodesic(-1.0, 1.0), Geodesic(2.0, 3.0), Geodesic(-3.0, -2.0), Geodesic(5.0, math.inf)])
    g = quasitree.build_quasi_tree(star, quasitree.default_K(star.estimate_xi()))
    assert quasitree.delta_four_point(g, 2000) <= 2 * g.h + 1.0


def test_delta_stable_when_doubled(schottky_graph):
    d1 = quasitree.delta_four_point(schottky_graph, 10_000)
    d2 = quasitree.delta_four_point(schottky_graph, 20_000)
    assert d1 <= d2 <= 1.2 * d1 + 1e-12


def test_delta_disconnected_raises():
    sys2 = line_system([Geodesic(1.0, 2.0), Geodesic(-3.0, -1.0)])
    full = quasitree.build_quasi_tree(sys2, 1.0, anchors={0: [0.0, 1.0], 1: [0.0, 1.0]})
    g = quasitree.QuasiTreeGraph(sys2, 1.0, full.h, full.member, full.coord, full.offsets,
                                 [e for e in full.edges if e not in full.bridges], full.adjacency)
    assert not g.is_connected()
    with pytest.raises(quasitree.Disconnected):
        quasitree.delta_four_point(g, 10)
    with pytest.raises(ValueError):
        quasitree.delta_four_point(g, 3)


def test_edge_list_round_trip(tmp_path, schottky_graph):
    path = tmp_path / "edges.txt"
    quasitree.write_edge_list(schottky_graph, path)
    assert quasitree.read_edge_list(path) == schottky_graph.edges


def test_group_action_is_compatible(schottky):
    # left multiplication by a permutes the axes it keeps inside the ball;
    # the projection distances, hence the P_K edges, move with it
    rep = default_rep()
    g = rep.evaluate(P("a"))

    def key(geo):
        return tuple(round(x, 7) if math.isfinite(x) else x for x in sorted(geo.endpoints))

    index = {key(e): i for i, e in enumerate(schottky.geometry)}
    image = {i: index.get(key(g.apply_geodesic(e))) for i, e in enumerate(schottky.geometry)}
    inside = [i for i, j in image.items() if j is not None]
    assert len(inside) >= schottky.n // 3
    for w in inside[:12]:
        for y in inside[:12]:
            for z in inside[:12]:
                if len({w, y, z}) == 3:
                    assert schottky.d(image[w], image[y], image[z]) == pytest.approx(schottky.d(w, y, z), abs=1e-7)
    K = quasitree.default_K(schottky.estimate_xi())
    sub = schottky.restrict(inside)
    moved = schottky.restrict([image[i] for i in inside])
    a1 = quasitree.build_projection_complex(sub, K, check=False)
    a2 = quasitree.build_projection_complex(moved, K, check=False)
    # restrict() sorts its members, so reorder the image complex to match
    order = np.argsort(np.argsort([image[i] for i in inside]))
    assert np.array_equal(a1, a2[np.ix_(order, order)])
