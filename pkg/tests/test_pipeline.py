from fractions import Fraction

import pytest

from corpus import oracle_delta, oracle_distances, pocket, same_face_pairs, star
from planemb.cuts import CutCollection, distortion_report
from planemb.errors import CutConditionViolated, NotAlphaLoose, ParamsInvalid, SubdivisionOverflow
from planemb.exact import os_embed
from planemb.harness import _from_drawing, gen_grid, gen_k23_golden, gen_random_planar
from planemb.pipeline import (PipelineTrace, constrained_extend, contraction_bound, embed_geodesic_pairs,
                              embed_same_face_cuts, embed_same_face_pairs, extend_cut_metric,
                              geodesic_face_embed_diagonal, geodesic_pairs, partition_geodesic_pairs)
from planemb.scales import KprConfig
from planemb.supports import tighten_lengths
from shapes import cycle, path, two_triangles, wheel

F = Fraction


def _hexagon_shortcut():
    """Unit hexagon 0..5 with an inner path 0-6-3 of two edges of length 1/4."""
    import math
    pos = [(math.cos(math.pi * i / 3), math.sin(math.pi * i / 3)) for i in range(6)] + [(0, 0)]
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (6, 3)]
    return _from_drawing(7, edges, pos, [1] * 6 + [F(1, 4)] * 2, [], "hex-shortcut")


def test_geodesic_pairs_cycle():
    assert geodesic_pairs(cycle(5).G, [1] * 5) == [(a, b) for a in range(5) for b in range(a + 1, 5)]


def test_geodesic_pairs_excludes_shortcut_pair():
    h = _hexagon_shortcut()
    got = set(geodesic_pairs(h.G, h.lengths))
    assert (1, 4) not in got and (0, 3) in got


def test_adjacent_pairs_are_geodesic():
    inst = gen_random_planar(12, seed=6)
    l = tighten_lengths(inst.G, inst.lengths)
    got = set(geodesic_pairs(inst.G, l))
    assert all((min(e), max(e)) in got for e in inst.G.edges)


def test_single_segment_face():
    P = partition_geodesic_pairs(cycle(3, [1, 1, 2]).G, [1, 1, 2])
    assert P.planar == [(0, 2)]
    assert set(P.within) == {(0, 1), (0, 2), (1, 2)}
    assert all(not c for c in P.classes)


@pytest.mark.parametrize("inst", [gen_grid(4, 4), gen_random_planar(14, seed=3), cycle(12)],
                         ids=lambda i: i.name)
def test_partition_covers_geodesic_pairs(inst):
    G, l = inst.G, inst.lengths
    P = partition_geodesic_pairs(G, l)
    covered = set(P.planar) | set(P.within) | {p for c in P.classes for p in c}
    assert covered == set(geodesic_pairs(G, l))
    for c in P.classes:
        for p in c:
            assert P.class_of(p) is not None


def test_twelve_cycle_classes():
    # a unit 12-cycle: three segments per face, every cross pair lands in a class
    G = cycle(12).G
    P = partition_geodesic_pairs(G, [1] * 12)
    assert P.standard_classes
    assert sum(len(c) for c in P.classes) > 0


@pytest.mark.parametrize("inst", [cycle(7), gen_grid(4, 4), gen_k23_golden()], ids=lambda i: i.name)
def test_geodesic_embedding_within_21(inst):
    G, l = inst.G, inst.lengths
    C = embed_geodesic_pairs(G, l)
    r = distortion_report(C, G, l, geodesic_pairs(G, l))
    assert r.expansion <= 1 and r.contraction <= 21


def test_diagonal_square():
    G = cycle(4).G
    C = geodesic_face_embed_diagonal(G, [1] * 4)
    # each diagonal is exact in one of the two averaged embeddings
    assert C.delta(0, 2) >= 1 and C.delta(1, 3) >= 1
    r = distortion_report(C, G, [1] * 4)
    assert r.expansion <= 1 and r.contraction <= 2


def test_diagonal_grid_faces():
    g = gen_grid(3, 4)
    C = geodesic_face_embed_diagonal(g.G, g.lengths)
    r = distortion_report(C, g.G, g.lengths)
    assert r.expansion <= 1 and r.contraction <= 2


def test_diagonal_skips_non_geodesic():
    h = _hexagon_shortcut()
    C = geodesic_face_embed_diagonal(h.G, [x * 4 for x in h.lengths])
    assert distortion_report(C, h.G, [x * 4 for x in h.lengths]).expansion <= 1


def test_diagonal_guards():
    with pytest.raises(ParamsInvalid):
        geodesic_face_embed_diagonal(two_triangles().G, [1] * 6)
    with pytest.raises(SubdivisionOverflow):
        geodesic_face_embed_diagonal(cycle(5).G, [1] * 5, cap=0)


def test_extend_empty_and_single_arc():
    G = cycle(4).G
    assert len(extend_cut_metric(G, [1] * 4, CutCollection.empty(range(4)))) == 0
    C = CutCollection.build(range(4), [({0, 1}, 1)])
    D = extend_cut_metric(G, [1] * 4, C)
    assert all(D.delta(u, v) == C.delta(u, v) for u in range(4) for v in range(4))


def test_extend_wheel():
    w = wheel(6)
    G, l = w.G, w.lengths
    rim = list(range(6))
    C = os_embed(G, l).restrict(rim)
    D = extend_cut_metric(G, l, C)
    d = oracle_delta(D)
    assert all(d(a, b) <= x for (a, b), x in zip(G.edges, l))
    assert all(d(a, b) == C.delta(a, b) for a in rim for b in rim)


def test_extend_rejects_stretching_input():
    G = wheel(6).G
    C = CutCollection.build(range(6), [({0, 1, 2}, 5)])
    with pytest.raises(CutConditionViolated):
        extend_cut_metric(G, [1] * 12, C)


def _loose_wheel(alpha, k=4):
    w = wheel(k, spoke=alpha)
    return w.G, [F(x) for x in w.lengths]


def test_constrained_extend_wheel():
    cfg = KprConfig()
    beta = cfg.beta
    alpha = 12 * beta
    G, l = _loose_wheel(alpha)
    C = os_embed(G, l).restrict(range(4))
    inner = [f for f in range(G.num_faces) if f != G.outer_face]
    Z = constrained_extend(G, l, inner[0], C, alpha, beta, cfg)
    d = oracle_delta(Z)
    D = oracle_distances(G, l)
    assert all(d(a, b) <= x for (a, b), x in zip(G.edges, l))
    for f in inner:
        vs = set(G.face_vertices(f))
        assert all(d(a, b) * alpha >= D[a][b] for a in vs for b in vs)


def test_constrained_extend_alpha_boundary():
    cfg = KprConfig()
    beta = cfg.beta
    G, l = _loose_wheel(12 * beta)
    C = os_embed(G, l).restrict(range(4))
    f = next(f for f in range(G.num_faces) if f != G.outer_face)
    constrained_extend(G, l, f, C, 12 * beta, beta, cfg)
    with pytest.raises(ParamsInvalid):
        constrained_extend(G, l, f, C, 12 * beta - F(1, 10**6), beta, cfg)


def test_constrained_extend_needs_loose_cycle():
    cfg = KprConfig()
    G, l = _loose_wheel(F(1, 2) + 1)
    f = next(f for f in range(G.num_faces) if f != G.outer_face)
    with pytest.raises(NotAlphaLoose):
        constrained_extend(G, l, f, CutCollection.empty(range(G.n)), 12 * cfg.beta, cfg.beta, cfg)


def test_pocket_goes_through_extension():
    p = pocket()
    tr = PipelineTrace()
    C = embed_same_face_cuts(p.G, p.lengths, trace=tr)
    assert tr.count("extend") == 1
    r = distortion_report(C, p.G, p.lengths)
    assert r.expansion <= 1 and r.contraction <= contraction_bound()


def test_k23_all_geodesic_trace():
    k = gen_k23_golden()
    tr = PipelineTrace()
    embed_same_face_cuts(k.G, k.lengths, trace=tr)
    assert [e["kind"] for e in tr.events] == ["geodesic"]


@pytest.mark.parametrize("inst", [star(5), two_triangles(), path(4), cycle(3)], ids=lambda i: i.name)
def test_non_biconnected_and_tiny(inst):
    C = embed_same_face_cuts(inst.G, inst.lengths)
    r = distortion_report(C, inst.G, inst.lengths)
    assert r.expansion <= 1 and r.contraction <= 21


def test_coordinates_match_cuts():
    g = gen_grid(3, 3)
    C = embed_same_face_cuts(g.G, g.lengths)
    X = embed_same_face_pairs(g.G, g.lengths)
    assert all(X.l1(u, v) == C.delta(u, v) for u, v in same_face_pairs(g.G))


def test_deterministic():
    inst = gen_random_planar(12, seed=8)
    a = embed_same_face_cuts(inst.G, inst.lengths)
    b = embed_same_face_cuts(inst.G, inst.lengths)
    assert a.to_json() == b.to_json()
