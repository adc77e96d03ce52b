import random

import pytest

from linkedgrass import multidegree as md


def test_graph_validation():
    with pytest.raises(ValueError):
        md.DualGraph(2, ((0, 0),))
    with pytest.raises(ValueError):
        md.DualGraph(3, ((0, 1),))  # disconnected
    with pytest.raises(ValueError):
        md.DualGraph(2, ((0, 1), (1, 0)))  # parallel edge
    graph = md.DualGraph(1, ())
    assert graph.degree(0) == 0


def test_twist_single_vertex_identity():
    graph = md.DualGraph(1, ())
    assert md.twist_at(graph, (5,), 0) == (5,)


def test_twist_k4_example():
    graph = md.complete_graph(4)
    w0 = (3, 2, 1, 0)
    assert md.twist_at(graph, w0, 0) == (0, 3, 2, 1)


def test_twist_inverse_and_commutativity():
    graph = md.complete_graph(4)
    rng = random.Random(0)
    for _ in range(100):
        w = tuple(rng.randint(-3, 3) for _ in range(4))
        v = rng.randrange(4)
        assert md.negative_twist_at(graph, md.twist_at(graph, w, v), v) == w
        u = rng.randrange(4)
        assert md.twist_at(graph, md.twist_at(graph, w, v), u) == md.twist_at(
            graph, md.twist_at(graph, w, u), v
        )
        assert sum(md.twist_at(graph, w, v)) == sum(w)


def test_twisting_every_vertex_is_identity():
    for graph in (md.complete_graph(3), md.DualGraph(3, ((0, 1), (1, 2)))):
        w = (4, -1, 2)
        out = w
        for v in range(3):
            out = md.twist_at(graph, out, v)
        assert out == w


def test_solve_twist_basics():
    graph = md.complete_graph(4)
    w0 = (3, 2, 1, 0)
    assert md.solve_twist(graph, w0, w0, 3) == (0, 0, 0, 0)
    w2 = md.twist_at(graph, md.twist_at(graph, w0, 0), 1)
    assert md.solve_twist(graph, w0, w2, 3) == (1, 1, 0, 0)
    assert md.solve_twist(graph, w0, (9, 9, 9, 9), 0) is None  # wrong total
    # unreachable without twisting the forbidden vertex
    w1 = md.twist_at(graph, w0, 3)
    assert md.solve_twist(graph, w0, w1, 3) is None


def test_solve_twist_applies():
    graph = md.DualGraph(3, ((0, 1), (1, 2)))
    rng = random.Random(1)
    for _ in range(100):
        w = tuple(rng.randint(0, 4) for _ in range(3))
        counts = tuple(rng.randint(0, 2) for _ in range(3))
        target = md.apply_twists(graph, w, counts)
        forbidden = min(range(3), key=lambda v: counts[v])
        normalized = tuple(c - counts[forbidden] for c in counts)
        if all(c >= 0 for c in normalized):
            assert md.solve_twist(graph, w, target, forbidden) == normalized


def test_is_concentrated_examples():
    single = md.DualGraph(1, ())
    assert md.is_concentrated(single, (7,), 0)[0]
    edge = md.DualGraph(2, ((0, 1),))
    # all-zero degree: the one negative twist sends the other vertex negative
    assert md.is_concentrated(edge, (0, 0), 0)[0]
    # balanced positive degree is not concentrated anywhere
    assert not md.is_concentrated(edge, (5, 5), 0)[0]
    assert not md.is_concentrated(edge, (5, 5), 1)[0]
    graph = md.complete_graph(4)
    w0 = (3, 2, 1, 0)
    ok, order = md.is_concentrated(graph, w0, 0)
    assert ok and order[0] == 0 and set(order) == set(range(4))


def test_vbar_single_vertex():
    single = md.DualGraph(1, ())
    assert md.vbar_set(single, (3,), {0: (3,)}) == [(3,)]


def test_vbar_rejects_unconcentrated():
    edge = md.DualGraph(2, ((0, 1),))
    with pytest.raises(ValueError):
        md.vbar_set(edge, (5, 5), {0: (5, 5), 1: (5, 5)})


def test_vbar_path_graph_matches_widened_scan():
    graph = md.DualGraph(3, ((0, 1), (1, 2)))
    w0 = (2, 2, 2)
    concentrated = {0: (6, 0, 0), 1: (0, 6, 0), 2: (0, 0, 6)}
    for v, w in concentrated.items():
        assert md.is_concentrated(graph, w, v)[0]
    base = md.vbar_set(graph, w0, concentrated)
    widened = md.vbar_set(graph, w0, concentrated, widen=2)
    assert base == widened
    assert w0 in base


def test_kn_instances():
    for n in range(2, 9):
        rep = md.kn_instance(n)
        assert rep.formulas_match
        assert rep.nested_chain
        if n <= 6:
            assert rep.ok
    two = md.kn_instance(2)
    assert two.multidegrees == [(1, 0), (0, 1)]
    assert len(set(two.multidegrees)) == 2


def test_kn_figure_degrees_n4():
    rep = md.kn_instance(4)
    assert rep.multidegrees == [(3, 2, 1, 0), (0, 3, 2, 1), (1, 0, 3, 2), (2, 1, 0, 3)]
    assert rep.twist_vectors == [(1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0)]


def test_graph_json_roundtrip():
    graph = md.complete_graph(4)
    assert md.DualGraph.from_json(graph.to_json()) == graph
