"""The main constructions: geodesic pairs, extension across a cycle, and the
recursive same-face embedding.

Every routine returns a :class:`CutCollection` whose metric is checked
exactly; floats never decide a bound.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cuts import CutCollection, centralize, combine
from .errors import (BlockStructureInvalid, CutConditionViolated, CutNotContiguous, Infeasible,
                     InvariantBreach, NotAlphaLoose, ParamsInvalid, RecursionDepthExceeded,
                     SpanTooFar, SubdivisionOverflow)
from .exact import _arc_positions, os_embed, route_demands, separable_embed, seymour_embed
from .planar import (Demand, PlanarGraph, _blocks, as_fraction, build_planar_graph,
                     integerize, shortest_path_metric, split_dual_vertex, dual)
from .scales import KprConfig, single_source_embed
from .supports import (FaceSupport, _region_graph, classify_faces, face_pair_arcs,
                       face_supports, interior_ratio, is_alpha_loose, laminar_check,
                       make_alpha_good, region_boundary, region_edges, tighten_lengths)

log = logging.getLogger(__name__)


# -- helpers ------------------------------------------------------------------------------

def _check_expansion(C: CutCollection, G: PlanarGraph, lengths, what: str):
    M = C.delta_matrix()
    for e, (a, b) in enumerate(G.edges):
        if M(a, b) > lengths[e]:
            raise InvariantBreach(f"{what}: edge {e} stretched to {M(a, b)} > {lengths[e]}")


def _projection(G: PlanarGraph, block_edges) -> dict:
    """Map every vertex to the block vertex it hangs from (itself if inside)."""
    bset = set(block_edges)
    bverts = {x for e in bset for x in G.edges[e]}
    proj = {x: x for x in bverts}
    for s in sorted(bverts):
        stack = [s]
        while stack:
            x = stack.pop()
            for y, e in G.adjacency[x]:
                if e not in bset and y not in proj:
                    proj[y] = s
                    stack.append(y)
    return proj


def _per_block(G: PlanarGraph, lengths, fn) -> CutCollection:
    """Direct sum of ``fn`` over the 2-connected blocks of G.

    A vertex outside a block joins the side of the block vertex it hangs
    from, so each block's cuts separate no edge of another block."""
    blocks = _blocks(G)
    if len(blocks) == 1 and len(blocks[0]) == G.m and G.m > 1:
        return fn(G, lengths)
    items = []
    for b in blocks:
        if len(b) == 1:
            e = b[0]
            u = G.edges[e][0]
            sub_items = [({u}, lengths[e])]
            proj = _projection(G, b)
        else:
            outer = next((d for e in b for d in (2 * e, 2 * e + 1)
                          if G.dart_face[d] == G.outer_face), 2 * b[0])
            sub = G.subgraph(b, outer_dart=outer)
            C = fn(sub.graph, sub.lift_lengths(lengths))
            sub_items = [({sub.vmap[y] for y in c}, w) for c, w in C]
            proj = _projection(G, b)
        for c, w in sub_items:
            items.append(({x for x in range(G.n) if proj.get(x) in c}, w))
    return CutCollection.build(range(G.n), items)


# -- geodesic pairs -------------------------------------------------------------------------

def geodesic_pairs(G: PlanarGraph, lengths) -> list[tuple[int, int]]:
    """Same-face pairs joined by a shortest path along one of their faces."""
    dist = shortest_path_metric(G, lengths)
    out = set()
    for f in range(G.num_faces):
        for u, v, a, b in face_pair_arcs(G, dist.w, f):
            if u != v and min(a, b) == dist.raw[u][v]:
                out.add((min(u, v), max(u, v)))
    return sorted(out)


@dataclass
class GeodesicPairPartition:
    segments: dict        # face -> list of vertex tuples (contiguous runs)
    planar: list          # T_p: first/last vertex of each segment
    within: list          # T': pairs inside one segment
    classes: list         # six lists of pairs
    blocks: list          # per class: {face: [(X, Y)]}
    start: dict = field(default_factory=dict)  # face -> first vertex of the walk
    standard_classes: bool = True

    def class_of(self, pair) -> int | None:
        p = (min(pair), max(pair))
        for i, T in enumerate(self.classes):
            if p in T:
                return i
        return None


def _segments(cyc, pref, raw, w_total, start):
    """Greedy runs along the cycle: each run's forward arc is a shortest path."""
    k = len(cyc)
    order = [(start + t) % k for t in range(k)]

    def arc(i, j):  # forward arc length between cycle positions
        d = pref[j] - pref[i]
        return d if d >= 0 else d + w_total

    segs = []
    t = 0
    while t < k:
        s = order[t]
        j = t
        while j + 1 < k and arc(s, order[j + 1]) == raw[cyc[s]][cyc[order[j + 1]]]:
            j += 1
        segs.append([order[x] for x in range(t, j + 1)])
        t = j + 1
    return segs


def _class_ok(spans, nseg):
    """Spans (i, j) of one class on one face: disjoint segments, and each
    span's two segments adjacent among the used ones."""
    used = [s for sp in spans for s in sp]
    if len(used) != len(set(used)):
        return False
    ring = sorted(used)
    owner = {s: sp for sp in spans for s in sp}
    m = len(ring)
    for t, s in enumerate(ring):
        nb = (owner[ring[(t + 1) % m]], owner[ring[(t - 1) % m]])
        if owner[s] not in nb and m > 1:
            return False
    return True


def _color_spans(spans, nseg, colors=6):
    """Assign spans to at most ``colors`` valid classes (backtracking)."""
    spans = sorted(spans)
    assign: dict = {}
    groups = [[] for _ in range(colors)]

    def rec(t):
        if t == len(spans):
            return True
        sp = spans[t]
        for c in range(colors):
            groups[c].append(sp)
            if _class_ok(groups[c], nseg) and rec(t + 1):
                assign[sp] = c
                return True
            groups[c].pop()
        return False

    return assign if rec(0) else None


def _partition_face(G, f, dist, start_pos):
    cyc = list(G.face_vertices(f))
    pref = [0]
    for d in G.faces[f]:
        pref.append(pref[-1] + dist.w[d >> 1])
    total = pref[-1]
    segs = _segments(cyc, pref, dist.raw, total, start_pos)
    seg_of = {}
    for i, s in enumerate(segs):
        for p in s:
            seg_of[p] = i
    return cyc, segs, seg_of


def partition_geodesic_pairs(G: PlanarGraph, lengths) -> GeodesicPairPartition:
    dist = shortest_path_metric(G, lengths)
    segments, planar, within = {}, set(), set()
    residual: dict = {}   # pair -> (face, span)
    seg_info = {}
    starts = {}
    for f in range(G.num_faces):
        cyc = list(G.face_vertices(f))
        if len(set(cyc)) != len(cyc):
            raise BlockStructureInvalid(f"face {f} is not a simple cycle; split into blocks first")
        start = cyc.index(min(cyc))
        cyc, segs, seg_of = _partition_face(G, f, dist, start)
        starts[f] = cyc[start]
        seg_info[f] = (cyc, segs, seg_of)
        segments[f] = [tuple(cyc[p] for p in s) for s in segs]
        for s in segs:
            if len(s) > 1 and dist.raw[cyc[s[0]]][cyc[s[-1]]] > 0:
                a, b = cyc[s[0]], cyc[s[-1]]
                planar.add((min(a, b), max(a, b)))
            for i, p in enumerate(s):
                for q in s[i + 1:]:
                    within.add((min(cyc[p], cyc[q]), max(cyc[p], cyc[q])))
    for f in range(G.num_faces):
        cyc, segs, seg_of = seg_info[f]
        pos = {x: i for i, x in enumerate(cyc)}
        for u, v, a, b in face_pair_arcs(G, dist.w, f):
            pair = (min(u, v), max(u, v))
            if min(a, b) != dist.raw[u][v] or dist.raw[u][v] == 0:
                continue
            if pair in within or pair in residual:
                continue
            i, j = sorted((seg_of[pos[u]], seg_of[pos[v]]))
            residual[pair] = (f, (i, j))
    # default classes: type (cyclic gap 1 or 2) x (min index mod 3)
    by_face: dict = {}
    for pair, (f, sp) in residual.items():
        by_face.setdefault(f, {}).setdefault(sp, []).append(pair)
    span_class: dict = {}
    standard = True
    for f, spans in by_face.items():
        k = len(seg_info[f][1])
        trial = {}
        for (i, j) in spans:
            gap = min(j - i, k - (j - i))
            if gap > 2:
                trial = None
                break
            trial[(i, j)] = 3 * (gap - 1) + (min(i, j) % 3)
        ok = trial is not None and all(
            _class_ok([sp for sp, c in trial.items() if c == cls], k) for cls in range(6))
        if not ok:
            standard = False
            trial = _color_spans(list(spans), k)
            if trial is None:
                raise SpanTooFar(f"residual geodesic pairs on face {f} do not fit six separable classes")
        for sp, c in trial.items():
            span_class[(f, sp)] = c
    classes = [[] for _ in range(6)]
    blocks = [dict() for _ in range(6)]
    for f, spans in by_face.items():
        cyc, segs, _ = seg_info[f]
        for sp, pairs in spans.items():
            c = span_class[(f, sp)]
            classes[c].extend(pairs)
            X = frozenset(cyc[p] for p in segs[sp[0]])
            Y = frozenset(cyc[p] for p in segs[sp[1]])
            blocks[c].setdefault(f, []).append((X, Y))
    for c in range(6):
        classes[c].sort()
        for f in blocks[c]:
            blocks[c][f].sort(key=lambda xy: (min(xy[0]), min(xy[1])))
    return GeodesicPairPartition(segments, sorted(planar), sorted(within), classes, blocks,
                                 starts, standard)


def _embed_geodesic_block(G: PlanarGraph, lengths) -> CutCollection:
    part = partition_geodesic_pairs(G, lengths)
    parts = []
    if part.planar:
        parts.append(seymour_embed(G, lengths, part.planar))
    else:
        parts.append(CutCollection.empty(range(G.n)))
    for T, bl in zip(part.classes, part.blocks):
        if T:
            parts.append(separable_embed(G, lengths, T, bl))
    k = len(parts)
    return combine([(Fraction(1, k), C) for C in parts], range(G.n))


def embed_geodesic_pairs(G: PlanarGraph, lengths) -> CutCollection:
    """Expansion <= 1 on edges, contraction <= 21 on every geodesic pair.

    The average runs over the exact embedding of the segment chords and one
    separable embedding per nonempty class, so the factor is 3 times the
    number of parts."""
    lengths = tuple(as_fraction(x) for x in lengths)
    if G.m == 0:
        return CutCollection.empty(range(G.n))
    C = _per_block(G, lengths, _embed_geodesic_block)
    _check_expansion(C, G, lengths, "geodesic-pair embedding")
    return C


# -- the diagonal construction on geodesic faces ----------------------------------------------

def _subdivide(G: PlanarGraph, lengths, points: dict):
    """Insert vertices at positions along edges.

    ``points[e]`` lists distances from ``G.edges[e][0]``.  Returns
    ``(H, lengths, where)`` with ``where[(e, t)]`` the new vertex id; the
    original vertices keep their ids and the outer face is preserved."""
    edges = list(G.edges)
    lens = list(lengths)
    rotation = [list(r) for r in G.rotation]
    n = G.n
    where = {}
    last_piece = {}
    for e in sorted(points):
        ts = sorted(set(points[e]))
        a, b = G.edges[e]
        chain = [a]
        for t in ts:
            where[(e, t)] = n
            rotation.append([])
            chain.append(n)
            n += 1
        chain.append(b)
        cuts = [Fraction(0)] + ts + [lengths[e]]
        ids = [e] + [len(edges) + i for i in range(len(ts))]
        edges[e] = (chain[0], chain[1])
        lens[e] = cuts[1] - cuts[0]
        for i in range(1, len(ts) + 1):
            edges.append((chain[i], chain[i + 1]))
            lens.append(cuts[i + 1] - cuts[i])
        for i in range(1, len(chain) - 1):
            rotation[chain[i]] = [ids[i - 1], ids[i]]
        rb = rotation[b]
        rb[rb.index(e)] = ids[-1]
        last_piece[e] = ids[-1]
    H = build_planar_graph(n, edges, rotation)
    d = G.faces[G.outer_face][0]
    e = d >> 1
    nd = d if (d & 1) == 0 or e not in last_piece else 2 * last_piece[e] + 1
    H = H.with_outer_face(H.dart_face[nd])
    return H, tuple(lens), where


def geodesic_face_embed_diagonal(G: PlanarGraph, lengths, cap: int = 64) -> CutCollection:
    """Average of two exact embeddings, one per family of face diagonals.

    On every geodesic face the quarter points u_0, u_m, u_2m, u_3m of its
    cycle (u_0 its smallest vertex, m a quarter of the perimeter) are made
    vertices; one embedding is exact on (u_0, u_2m), the other on
    (u_m, u_3m).  Contraction is at most 2 on pairs of geodesic faces."""
    lengths = tuple(as_fraction(x) for x in lengths)
    if any(x <= 0 for x in lengths):
        raise ParamsInvalid("the diagonal construction needs positive lengths")
    if not G.is_biconnected():
        raise ParamsInvalid("the diagonal construction needs a 2-connected graph")
    geo, _ = classify_faces(G, lengths)
    points: dict = {}
    want = []   # per face: the four quarter points as (edge, t) or vertex
    for f in geo:
        darts = G.faces[f]
        vs = G.face_vertices(f)
        s = vs.index(min(vs))
        darts = darts[s:] + darts[:s]
        pref = [Fraction(0)]
        for d in darts:
            pref.append(pref[-1] + lengths[d >> 1])
        L = pref[-1]
        quarter = []
        for q in range(4):
            x = L * q / 4
            i = max(j for j in range(len(darts)) if pref[j] <= x)
            if x == pref[i]:
                quarter.append(("v", G.tail(darts[i])))
                continue
            d = darts[i]
            e = d >> 1
            off = x - pref[i]
            t = off if (d & 1) == 0 else lengths[e] - off
            points.setdefault(e, []).append(t)
            quarter.append(("p", (e, t)))
        want.append(quarter)
    if sum(len(set(v)) for v in points.values()) > cap:
        raise SubdivisionOverflow(f"more than {cap} subdivision vertices needed")
    H, lh, where = _subdivide(G, lengths, points)

    def vid(q):
        return q[1] if q[0] == "v" else where[q[1]]

    F1 = [(vid(q[0]), vid(q[2])) for q in want]
    F2 = [(vid(q[1]), vid(q[3])) for q in want]
    C1 = seymour_embed(H, lh, [p for p in F1 if p[0] != p[1]])
    C2 = seymour_embed(H, lh, [p for p in F2 if p[0] != p[1]])
    C = combine([(Fraction(1, 2), C1), (Fraction(1, 2), C2)], range(H.n))
    return C.restrict(range(G.n))


# -- extension across the outer cycle -------------------------------------------------------------

def _outer_cycle(G: PlanarGraph):
    cyc = list(G.face_vertices(G.outer_face))
    if len(set(cyc)) != len(cyc):
        raise BlockStructureInvalid("the outer face is not a simple cycle")
    return cyc, list(G.face_edges(G.outer_face))


def _extend(G: PlanarGraph, lengths, sources: Sequence[tuple]):
    """Extend arc cuts of the outer cycle to all of G.

    ``sources`` holds ``(arc, weight)``; returns ``[(source index, cut, weight)]``
    with the weights of each source summing to its own weight."""
    lengths = [as_fraction(x) for x in lengths]
    cyc, cedges = _outer_cycle(G)
    k = len(cyc)
    sources = [(frozenset(a), as_fraction(w)) for a, w in sources if w > 0]
    if not sources:
        return []
    dist = shortest_path_metric(G, lengths)
    arcs = []
    for a, _ in sources:
        p = _arc_positions(cyc, a)
        if p is None:
            raise CutNotContiguous(f"cut {sorted(a)} is not a contiguous arc of the outer cycle")
        arcs.append(p)
    # precondition: delta_C <= d on the cycle
    for i in range(k):
        for j in range(i + 1, k):
            u, v = cyc[i], cyc[j]
            dl = sum((w for a, w in sources if (u in a) != (v in a)), Fraction(0))
            if dl > dist(u, v):
                raise CutConditionViolated(
                    f"arc cuts give delta({u},{v}) = {dl} above the distance {dist(u, v)}",
                    witness=(u, v), capacity=dist(u, v), demand=dl)
    D, pend = split_dual_vertex(dual(G), G.outer_face, cedges)
    dems = []
    for p, (_, w) in zip(arcs, sources):
        e_in = (p[0] - 1) % k
        e_out = p[-1]
        dems.append(Demand(pend[e_in], pend[e_out], w))
    routing = route_demands(D.num_vertices, D.edges, lengths, dems, integral=False)
    out = []
    for i, ((a, _), paths) in enumerate(zip(sources, routing.paths)):
        anchor = min(a)
        for path, x in paths:
            bond = set(path)
            side = {anchor}
            stack = [anchor]
            while stack:
                y = stack.pop()
                for z, e in G.adjacency[y]:
                    if e not in bond and z not in side:
                        side.add(z)
                        stack.append(z)
            if side & set(cyc) != set(a):
                raise Infeasible(f"flow path for arc {sorted(a)} does not cut it off")
            out.append((i, frozenset(side), x))
    return out


def extend_cut_metric(G: PlanarGraph, lengths, C: CutCollection) -> CutCollection:
    """Extend a cut metric on the outer cycle of G (arc cuts) to every vertex.

    The result agrees with C on the cycle and has expansion <= 1 on G."""
    parts = _extend(G, lengths, list(C))
    return CutCollection.build(range(G.n), [(c, w) for _, c, w in parts])


# -- constrained extension ---------------------------------------------------------------------

def _disk_support(G: PlanarGraph, f2: int) -> FaceSupport:
    cyc, _ = _outer_cycle(G)
    finite = frozenset(x for x in range(G.num_faces) if x != G.outer_face)
    return FaceSupport(f2, tuple(cyc), finite, frozenset(range(G.n)) - set(cyc))


def _constrained_parts(G, lengths, f2, sources, alpha, beta, config):
    alpha = as_fraction(alpha)
    beta = as_fraction(beta)
    if alpha < 12 * beta:
        raise ParamsInvalid(f"alpha = {alpha} is below 12 * beta = {12 * beta}")
    S = _disk_support(G, f2)
    if not is_alpha_loose(G, lengths, S, alpha):
        raise NotAlphaLoose(f"the outer cycle is not {alpha}-loose")
    on = set(S.cycle)
    s_edges = set(_outer_cycle(G)[1])
    l1 = tuple(lengths[e] if e in s_edges else lengths[e] / alpha for e in range(G.m))
    l2 = tuple(Fraction(0) if e in s_edges else lengths[e] for e in range(G.m))
    h = _extend(G, l1, sources)
    if not S.interior:
        return h, CutCollection.empty(range(G.n))
    g1, _ = single_source_embed(G, l2, min(on), config)
    g2 = embed_geodesic_pairs(G, l2)
    g3 = os_embed(G, l2, f2)
    g = combine([(Fraction(1, 3), g1), (Fraction(1, 3), g2), (Fraction(1, 3), g3)], range(G.n))
    for c, _ in g:
        if 0 < len(c & on) < len(on):
            raise InvariantBreach("an H2 cut separates the contracted cycle")
    return h, g.scale((alpha - 1) / alpha)


def constrained_extend(G: PlanarGraph, lengths, f2: int, C: CutCollection, alpha, beta,
                       config: KprConfig | None = None) -> CutCollection:
    """Extend arc cuts on the (alpha-loose) outer cycle of G into its disk.

    ``z = h + (alpha-1)/alpha * g`` with h the extension of C under lengths
    shrunk by alpha off the cycle, and g the average of the single-source,
    geodesic-pair and face embeddings of G with the cycle contracted."""
    config = config or KprConfig()
    lengths = tuple(as_fraction(x) for x in lengths)
    h, g = _constrained_parts(G, lengths, f2, list(C), alpha, beta, config)
    Z = CutCollection.build(range(G.n), [(c, w) for _, c, w in h] + list(g))
    _check_expansion(Z, G, lengths, "constrained extension")
    return Z


# -- the recursion ----------------------------------------------------------------------------

@dataclass
class PipelineTrace:
    events: list = field(default_factory=list)

    def count(self, kind: str) -> int:
        return sum(1 for e in self.events if e["kind"] == kind)


@dataclass
class _Ctx:
    alpha: Fraction
    beta: Fraction
    config: KprConfig
    trace: PipelineTrace | None
    limit: int

    def note(self, **ev):
        if self.trace is not None:
            self.trace.events.append(ev)


def _pick(H: PlanarGraph, l, alpha):
    sup = face_supports(H, l, include_outer=True)
    if not sup:
        return None
    tree = laminar_check(sup)
    for f in tree.innermost():
        S = sup[f]
        if S.interior and is_alpha_loose(H, l, S, alpha):
            return S
    return None


def _fallback(H, l, non, ctx, depth):
    parts = [embed_geodesic_pairs(H, l)] + [os_embed(H, l, f) for f in non]
    k = len(parts)
    ctx.note(kind="fallback", depth=depth, n=H.n, faces=list(non))
    return combine([(Fraction(1, k), C) for C in parts], range(H.n))


def _recurse(H: PlanarGraph, l: tuple, ctx: _Ctx, depth: int) -> CutCollection:
    if depth > ctx.limit:
        raise RecursionDepthExceeded(f"same-face recursion deeper than {ctx.limit}")
    if H.m == 0:
        return CutCollection.empty(range(H.n))
    blocks = _blocks(H)
    if len(blocks) != 1 or len(blocks[0]) != H.m or H.m == 1:
        return _per_block(H, l, lambda B, lb: _recurse(B, tuple(lb), ctx, depth + 1))
    _, non = classify_faces(H, l)
    if not non:
        ctx.note(kind="geodesic", depth=depth, n=H.n)
        return embed_geodesic_pairs(H, l)
    S = _pick(H, l, ctx.alpha)
    if S is None:
        return _fallback(H, l, non, ctx, depth)
    inner_e = region_edges(H, S.region)
    rim = set(region_boundary(H, S.region))
    keep = [e for e in range(H.m) if e not in inner_e or e in rim]
    od = next(d for d in H.faces[H.outer_face] if (d >> 1) in keep)
    sub1 = H.subgraph(keep, outer_dart=od)
    Z1 = _recurse(sub1.graph, sub1.lift_lengths(l), ctx, depth + 1)
    Z1 = centralize(Z1, sub1.graph).relabel(sub1.vmap)

    R = _region_graph(H, S.region)
    lR = R.lift_lengths(l)
    if S.face == H.outer_face:
        f2 = R.graph.outer_face
    else:
        d = H.faces[S.face][0]
        f2 = R.graph.dart_face[2 * R.eindex[d >> 1] + (d & 1)]
    on = frozenset(S.cycle)
    groups: dict = {}
    fixed = []
    for X, w in Z1:
        A = X & on
        if not A or A == on:
            fixed.append((X | S.interior if A else X, w))
        else:
            groups.setdefault(A, []).append((X, w))
    arcs = sorted(groups, key=lambda a: sorted(a))
    sources = [(frozenset(R.vindex[x] for x in a), sum(w for _, w in groups[a])) for a in arcs]
    h, g = _constrained_parts(R.graph, lR, f2, sources, ctx.alpha, ctx.beta, ctx.config)
    ctx.note(kind="extend", depth=depth, face=S.face, cycle=list(S.cycle),
             interior=sorted(S.interior), n=H.n)
    items = list(fixed)
    for i, D, x in h:
        DH = {R.vmap[y] for y in D} & S.interior
        members = groups[arcs[i]]
        W = sources[i][1]
        for X, w in members:
            items.append((X | DH, x * w / W))
    outside = frozenset(range(H.n)) - set(R.vmap)
    for Y, w in g:
        YH = frozenset(R.vmap[y] for y in Y)
        items.append((YH | outside if on <= YH else YH, w))
    Z = CutCollection.build(range(H.n), items)
    _check_expansion(Z, H, l, "splice")
    return Z


def embed_same_face_cuts(G: PlanarGraph, lengths, config: KprConfig | None = None,
                         trace: PipelineTrace | None = None) -> CutCollection:
    """Cut metric with expansion <= 1 and contraction <= 144 beta^2 on same-face pairs."""
    config = config or KprConfig()
    lengths = tuple(as_fraction(x) for x in lengths)
    if G.m == 0:
        return CutCollection.empty(range(G.n))
    beta = config.beta
    alpha = 12 * beta
    ctx = _Ctx(alpha, beta, config, trace, G.n + 8)
    tight = tighten_lengths(G, lengths)

    def run(B, lb):
        good = make_alpha_good(B, lb, alpha)
        return _recurse(B, tuple(good), ctx, 0)

    C = _per_block(G, tight, run).normalized()
    _check_expansion(C, G, lengths, "same-face embedding")
    return C


def embed_same_face_pairs(G: PlanarGraph, lengths, config: KprConfig | None = None,
                          trace: PipelineTrace | None = None):
    """The final artifact: L1 coordinates of every vertex."""
    return embed_same_face_cuts(G, lengths, config, trace).to_coordinates()


def contraction_bound(config: KprConfig | None = None) -> Fraction:
    config = config or KprConfig()
    return 144 * config.beta ** 2
