from fractions import Fraction

import pytest

from planemb.errors import ParamsInvalid
from planemb.harness import _from_drawing, gen_grid, gen_k23_golden, gen_nested_shortcut, gen_random_planar
from planemb.supports import (AlphaGoodTrace, FaceSupport, classify_faces, face_supports,
                              interior_ratio, is_alpha_good, is_alpha_loose, laminar_check,
                              make_alpha_good, support_cycle, tighten_lengths)
from shapes import cycle, square_with_chord

F = Fraction


def test_cycle_faces_geodesic():
    G = cycle(6).G
    geo, non = classify_faces(G, [1] * 6)
    assert geo == [0, 1] and non == []


def test_short_chord_makes_outer_non_geodesic():
    inst = square_with_chord(F(1, 2))
    geo, non = classify_faces(inst.G, inst.lengths)
    assert non == [inst.G.outer_face]


def test_k23_all_geodesic():
    k = gen_k23_golden()
    assert classify_faces(k.G, k.lengths)[1] == []


def test_geodesic_face_supports_itself():
    k = gen_k23_golden()
    for f in range(k.G.num_faces):
        S = support_cycle(k.G, k.lengths, f)
        assert sorted(S.cycle) == sorted(k.G.face_vertices(f))
        if f != k.G.outer_face:
            assert S.region == {f}


def test_outer_support_spans_the_chord():
    inst = square_with_chord(F(1, 2))
    G = inst.G
    S = support_cycle(G, inst.lengths, G.outer_face)
    assert sorted(S.cycle) == [0, 1, 2, 3]
    assert S.region == frozenset(f for f in range(G.num_faces) if f != G.outer_face)


def test_laminar_forests():
    assert laminar_check({}).roots == []
    inst = gen_nested_shortcut(1)
    tree = laminar_check(face_supports(inst.G, inst.lengths))
    assert len(tree.roots) == 1 and tree.depth() == 1


def _two_pockets():
    g = gen_grid(3, 6)
    l = list(g.lengths)
    for e in [(1, 7), (0, 6), (4, 10), (5, 11)]:
        l[g.G.edges.index(e)] = F(5)
    return g.G, l


def test_two_disjoint_regions_two_roots():
    G, l = _two_pockets()
    tree = laminar_check(face_supports(G, l))
    assert len(tree.roots) == 2 and tree.depth() == 1


def test_nested_depth_two():
    inst = gen_nested_shortcut(2)
    tree = laminar_check(face_supports(inst.G, inst.lengths))
    assert tree.depth() == 2
    inst = gen_nested_shortcut(3)
    assert laminar_check(face_supports(inst.G, inst.lengths)).depth() == 3


def _diamond(a, b):
    """Unit square 0-1-2-3 with an interior vertex 4 on a path 0-4-2."""
    pos = [(-1, 0), (0, 1), (1, 0), (0, -1), (0, 0)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)]
    l = [1, 1, 1, 1, a, b]
    G = _from_drawing(5, edges, pos, l, [], "diamond").G
    S = FaceSupport(G.outer_face, tuple(G.face_vertices(G.outer_face)),
                    frozenset(f for f in range(G.num_faces) if f != G.outer_face), frozenset({4}))
    return G, [F(x) for x in l], S


def test_alpha_loose_boundary():
    G, l, S = _diamond(3, 3)  # interior path 6 = 3 * d(0, 2)
    assert interior_ratio(G, l, S)[0] == 3
    assert is_alpha_loose(G, l, S, 3)
    G, l, S = _diamond(F(299, 100), 3)
    assert not is_alpha_loose(G, l, S, 3)


def test_alpha_loose_empty_interior():
    G = cycle(5).G
    S = FaceSupport(0, tuple(G.face_vertices(0)), frozenset({0}), frozenset())
    assert is_alpha_loose(G, [1] * 5, S, 10**6)


def test_make_alpha_good_identity_when_geodesic():
    g = gen_grid(4, 4)
    assert make_alpha_good(g.G, g.lengths, 7) == tuple(g.lengths)


def test_make_alpha_good_rejects_small_alpha():
    g = gen_grid(2, 2)
    with pytest.raises(ParamsInvalid):
        make_alpha_good(g.G, g.lengths, 1)


@pytest.mark.parametrize("inst", [gen_nested_shortcut(2), gen_nested_shortcut(3),
                                  gen_random_planar(12, seed=9), gen_random_planar(14, seed=3)],
                         ids=lambda i: i.name)
def test_make_alpha_good_properties(inst):
    G, l = inst.G, inst.lengths
    alpha = F(5)
    tr = AlphaGoodTrace([], [])
    lp = make_alpha_good(G, l, alpha, trace=tr)
    assert all(x / alpha <= y <= x for x, y in zip(l, lp))
    for e in G.face_edges(G.outer_face):
        assert lp[e] == l[e]
    assert is_alpha_good(G, lp, alpha)
    assert make_alpha_good(G, lp, alpha) == lp
    # each edge is divided by the product of the ratios of paths through it
    for e in range(G.m):
        x = l[e]
        for beta, es in tr.splits:
            if e in es:
                x /= beta
        assert x == lp[e]


def test_nested_levels_loose_after_transform():
    inst = gen_nested_shortcut(2)
    alpha = F(50)
    lp = make_alpha_good(inst.G, inst.lengths, alpha)
    sup = face_supports(inst.G, lp)
    for f in laminar_check(sup).innermost():
        assert is_alpha_loose(inst.G, lp, sup[f], alpha)


def test_tighten_lengths():
    inst = square_with_chord(F(1, 2))
    l = list(inst.lengths)
    l[inst.G.edges.index((0, 2))] = F(9)
    t = tighten_lengths(inst.G, l)
    assert t[inst.G.edges.index((0, 2))] == 2
