import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from corpus import brute_cut_condition, oracle_distances
from planemb.errors import NonPlanarRotation
from planemb.harness import gen_k23_golden, gen_random_planar
from planemb.planar import (Demand, build_planar_graph, central_cuts, check_cut_condition, dual,
                            integerize, preprocess_biconnect, shortest_path_metric, split_dual_vertex)
from shapes import cycle, path, two_triangles


def test_triangle_faces():
    G = cycle(3).G
    assert G.num_faces == 2
    assert G.n - G.m + G.num_faces == 2


def test_k23_faces_are_four_cycles():
    G = gen_k23_golden().G
    assert G.num_faces == 3
    assert all(len(G.faces[f]) == 4 for f in range(3))
    assert sorted(G.face_vertices(G.outer_face)) == [0, 1, 2, 4]


def test_bad_rotation_fails_euler():
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    with pytest.raises(NonPlanarRotation):
        build_planar_graph(4, edges, [(0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5)])


def test_unknown_edge_in_rotation():
    with pytest.raises(NonPlanarRotation):
        build_planar_graph(2, [(0, 1)], [[0], [7]])


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 14), st.integers(0, 10**6))
def test_euler_on_random(n, seed):
    G = gen_random_planar(n, seed=seed).G
    assert G.n - G.m + G.num_faces == 2
    # every dart sits on exactly one face
    assert sorted(d for f in G.faces for d in f) == list(range(2 * G.m))


def test_distances_cycle_and_k23():
    d = shortest_path_metric(cycle(4).G, [1] * 4)
    assert d(0, 2) == 2
    k = gen_k23_golden()
    d = shortest_path_metric(k.G, k.lengths)
    assert d(0, 1) == 2 and d(2, 3) == 2


def test_distances_match_simple_path_enumeration():
    inst = gen_random_planar(10, seed=7)
    G, l = inst.G, inst.lengths
    H = nx.MultiGraph()
    for e, (u, v) in enumerate(G.edges):
        H.add_edge(u, v, key=e)
    d = shortest_path_metric(G, l)
    for s in range(G.n):
        for t in range(s + 1, G.n):
            best = None
            for p in nx.all_simple_edge_paths(H, s, t):
                x = sum(l[k] for _, _, k in p)
                best = x if best is None else min(best, x)
            assert d(s, t) == best


def test_distances_rational():
    inst = gen_random_planar(9, seed=2)
    D = oracle_distances(inst.G, inst.lengths)
    d = shortest_path_metric(inst.G, inst.lengths)
    assert all(d(u, v) == D[u][v] for u in range(9) for v in range(9))


def test_integerize():
    ints, scale = integerize([Fraction(1, 2), Fraction(2, 3), 3])
    assert scale == 6 and ints == [3, 4, 18]


def test_dual_shapes():
    D = dual(cycle(3).G)
    assert D.num_vertices == 2 and len(D.edges) == 3
    D = dual(cycle(4).G)
    assert D.num_vertices == 2 and len(D.edges) == 4
    D = dual(gen_k23_golden().G)
    assert D.num_vertices == 3 and len(D.edges) == 6
    shared = {}
    for a, b in D.edges:
        shared[frozenset((a, b))] = shared.get(frozenset((a, b)), 0) + 1
    assert sorted(shared.values()) == [2, 2, 2]


def test_split_dual_vertex():
    G = cycle(4).G
    D = dual(G)
    f = G.outer_face
    D2, new = split_dual_vertex(D, f, list(G.face_edges(f)))
    assert len(new) == 4
    deg = {x: 0 for x in new}
    for a, b in D2.edges:
        for x in (a, b):
            if x in deg:
                deg[x] += 1
    assert set(deg.values()) == {1}
    k = gen_k23_golden().G
    D2, new = split_dual_vertex(dual(k), k.outer_face, list(k.face_edges(k.outer_face)))
    assert len(new) == 4 and D2.num_vertices == 3 + 4


def test_split_single_edge_boundary():
    G = path(1).G
    D2, new = split_dual_vertex(dual(G), 0, [0])
    assert len(new) == 1 and len(D2.edges) == 1


def _brute_central(G):
    H = nx.Graph(list(G.edges))
    out = set()
    for r in range(1, G.n):
        for S in itertools.combinations(range(1, G.n), r):
            rest = set(range(G.n)) - set(S)
            if nx.is_connected(H.subgraph(S)) and nx.is_connected(H.subgraph(rest)):
                out.add(frozenset(S))
    return out


@pytest.mark.parametrize("make", [lambda: gen_k23_golden().G, lambda: cycle(5).G,
                                  lambda: gen_random_planar(8, seed=1).G, lambda: path(3).G,
                                  lambda: two_triangles().G])
def test_central_cuts_match_brute_force(make):
    G = make()
    assert set(central_cuts(G).sides()) == _brute_central(G)


def test_cut_condition_examples():
    k = gen_k23_golden()
    assert check_cut_condition(k.G, k.lengths, k.demands).holds
    bad = [Demand(0, 1, Fraction(4))]
    chk = check_cut_condition(k.G, k.lengths, bad)
    assert not chk.holds and chk.capacity == 3 and chk.demand == 4
    assert chk.witness in ({0}, {1, 2, 3, 4})
    assert not brute_cut_condition(k.G, k.lengths, bad)
    assert check_cut_condition(k.G, k.lengths, []).holds


def test_preprocess_two_triangles():
    G = two_triangles().G
    blocks = preprocess_biconnect(G, [Demand(0, 4, Fraction(1))])
    assert len(blocks) == 2
    for b in blocks:
        (d,) = b.demands
        ends = {b.sub.vmap[d.u], b.sub.vmap[d.v]}
        assert 2 in ends


def test_preprocess_identity_on_biconnected():
    G = cycle(5).G
    (b,) = preprocess_biconnect(G, [Demand(0, 2, Fraction(1))])
    assert b.sub.graph.edges == G.edges


def test_preprocess_path():
    G = path(2).G
    blocks = preprocess_biconnect(G, [Demand(0, 2, Fraction(1))])
    got = sorted(tuple(sorted((b.sub.vmap[d.u], b.sub.vmap[d.v]))) for b in blocks for d in b.demands)
    assert got == [(0, 1), (1, 2)]
