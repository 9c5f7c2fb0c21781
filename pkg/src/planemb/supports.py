"""Geodesic faces, support cycles and the alpha-good length transform.

A region is a set of finite faces whose union is a closed disk; its boundary
is a simple cycle.  The support cycle of a face f bounds a minimal region
whose edges keep every distance between vertices of f.  Minimal regions are
found by peeling boundary faces (lowest id first) for as long as the region
stays a disk that still supports f.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import LaminarityViolated, ParamsInvalid, RecursionDepthExceeded
from .planar import PlanarGraph, as_fraction, dijkstra, integerize, shortest_path_metric

log = logging.getLogger(__name__)


# -- face classification ---------------------------------------------------------

def face_arc_lengths(G: PlanarGraph, w: Sequence[int], f: int):
    """Prefix sums of (integer) lengths along face f, plus the total."""
    darts = G.faces[f]
    pref = [0]
    for d in darts:
        pref.append(pref[-1] + w[d >> 1])
    return pref, pref[-1]


def face_pair_arcs(G: PlanarGraph, w, f: int):
    """Yield (u, v, forward, backward) integer arc lengths for vertex pairs of f."""
    vs = G.face_vertices(f)
    pref, tot = face_arc_lengths(G, w, f)
    k = len(vs)
    for i in range(k):
        for j in range(i + 1, k):
            fw = pref[j] - pref[i]
            yield vs[i], vs[j], fw, tot - fw


def is_geodesic_face(G: PlanarGraph, lengths, f: int, dist=None) -> bool:
    dist = dist or shortest_path_metric(G, lengths)
    return all(min(a, b) == dist.raw[u][v] for u, v, a, b in face_pair_arcs(G, dist.w, f))


def classify_faces(G: PlanarGraph, lengths, include_outer: bool = True):
    """Split faces into geodesic and non-geodesic ones (two sorted lists)."""
    dist = shortest_path_metric(G, lengths)
    geo, non = [], []
    for f in range(G.num_faces):
        if not include_outer and f == G.outer_face:
            continue
        (geo if is_geodesic_face(G, lengths, f, dist) else non).append(f)
    return geo, non


def tighten_lengths(G: PlanarGraph, lengths) -> tuple:
    """Replace every edge length by the distance between its endpoints."""
    dist = shortest_path_metric(G, lengths)
    return tuple(dist(u, v) for u, v in G.edges)


# -- regions ------------------------------------------------------------------------

def region_boundary(G: PlanarGraph, region) -> list[int]:
    return [e for e in range(G.m) if (G.dart_face[2 * e] in region) != (G.dart_face[2 * e + 1] in region)]


def region_edges(G: PlanarGraph, region) -> set:
    return {e for e in range(G.m) if G.dart_face[2 * e] in region or G.dart_face[2 * e + 1] in region}


def boundary_cycle(G: PlanarGraph, region) -> list[int] | None:
    """Vertex cycle bounding the region, or None if it is not a simple cycle.

    The cycle follows the region's darts, so it runs in the same rotational
    sense as the faces of G."""
    darts = [d for d in range(2 * G.m)
             if G.dart_face[d] in region and G.dart_face[d ^ 1] not in region]
    if not darts:
        return None
    out_of = {}
    for d in darts:
        t = G.tail(d)
        if t in out_of:
            return None
        out_of[t] = d
    cyc = []
    d = darts[0]
    for _ in range(len(darts)):
        cyc.append(G.tail(d))
        d = out_of.get(G.head(d))
        if d is None:
            return None
    if d != darts[0] or len(set(cyc)) != len(darts):
        return None
    return cyc


def _supports(G, w, region_e, targets, want) -> bool:
    ok = region_e.__contains__
    for i, u in enumerate(targets):
        dist, _ = dijkstra(G.n, G.adjacency, w, u, edge_ok=ok)
        for v in targets[i + 1:]:
            if dist[v] is None or dist[v] != want[u][v]:
                return False
    return True


@dataclass(frozen=True)
class FaceSupport:
    face: int
    cycle: tuple          # vertex cycle S_f
    region: frozenset     # faces inside the closed region
    interior: frozenset   # I(S_f)

    def to_json(self) -> dict:
        return {"face": self.face, "cycle": list(self.cycle), "region": sorted(self.region),
                "interior": sorted(self.interior)}


def _make_support(G: PlanarGraph, f: int, region) -> FaceSupport:
    cyc = boundary_cycle(G, region)
    on = set(cyc)
    verts = {x for e in region_edges(G, region) for x in G.edges[e]}
    return FaceSupport(f, tuple(cyc), frozenset(region), frozenset(verts - on))


def support_cycle(G: PlanarGraph, lengths, f: int) -> FaceSupport:
    """Support cycle of face ``f``.  The outer face is supported by the whole disk."""
    dist = shortest_path_metric(G, lengths)
    finite = frozenset(x for x in range(G.num_faces) if x != G.outer_face)
    if f == G.outer_face:
        return _make_support(G, f, finite)
    if is_geodesic_face(G, lengths, f, dist):
        return _make_support(G, f, frozenset([f]))
    targets = sorted(set(G.face_vertices(f)))
    region = set(finite)
    changed = True
    while changed:
        changed = False
        for g in sorted(region):
            if g == f:
                continue
            trial = region - {g}
            if not any(G.dart_face[d ^ 1] not in region for d in G.faces[g]):
                continue  # not on the boundary
            if boundary_cycle(G, trial) is None:
                continue
            if _supports(G, dist.w, region_edges(G, trial), targets, dist.raw):
                region = trial
                changed = True
    return _make_support(G, f, frozenset(region))


def face_supports(G: PlanarGraph, lengths, include_outer: bool = False) -> dict:
    _, non = classify_faces(G, lengths)
    return {f: support_cycle(G, lengths, f) for f in non if include_outer or f != G.outer_face}


# -- laminar structure ------------------------------------------------------------------

@dataclass(frozen=True)
class SupportTree:
    supports: dict        # face -> FaceSupport
    parent: dict          # face -> parent face or None
    children: dict        # face -> list of faces

    @property
    def roots(self) -> list:
        return sorted(f for f, p in self.parent.items() if p is None)

    def innermost(self) -> list:
        return sorted(f for f in self.supports if not self.children[f])

    def depth(self) -> int:
        def d(f):
            return 1 + max((d(c) for c in self.children[f]), default=0)
        return max((d(r) for r in self.roots), default=0)

    def to_json(self) -> list:
        def node(f):
            s = self.supports[f]
            return {"face": f, "cycle": list(s.cycle), "children": [node(c) for c in self.children[f]]}
        return [node(r) for r in self.roots]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def laminar_check(supports: dict) -> SupportTree:
    """Nest support regions into a forest; crossing regions raise LaminarityViolated."""
    faces = sorted(supports, key=lambda f: (-len(supports[f].region), f))
    for i, a in enumerate(faces):
        ra = supports[a].region
        for b in faces[i + 1:]:
            rb = supports[b].region
            if ra & rb and not (ra <= rb or rb <= ra):
                raise LaminarityViolated(f"support regions of faces {a} and {b} cross", (a, b))
    parent = {}
    for i, a in enumerate(faces):
        ra = supports[a].region
        best = None
        for b in faces[:i]:
            if ra <= supports[b].region:
                best = b  # later entries are smaller, so the last hit is tightest
        parent[a] = best
    children = {f: [] for f in faces}
    for f, p in parent.items():
        if p is not None:
            children[p].append(f)
    for f in children:
        children[f].sort()
    return SupportTree(dict(supports), parent, children)


# -- looseness ------------------------------------------------------------------------------

def interior_ratio(G: PlanarGraph, lengths, S: FaceSupport, dist=None):
    """Smallest (interior path length) / d over pairs on the cycle S.

    Interior paths use edges of the closed region that are not on S and
    visit only interior vertices between their ends.  Returns
    ``(ratio, u, v, edge path)`` or ``None`` when no pair has such a path."""
    dist = dist or shortest_path_metric(G, lengths)
    w = dist.w
    cyc = list(S.cycle)
    on = set(cyc)
    s_edges = {e for e in range(G.m) if G.edges[e][0] in on and G.edges[e][1] in on
               and _consecutive(cyc, *G.edges[e])}
    allowed = region_edges(G, S.region) - s_edges
    inside = S.interior
    best = None
    for i, u in enumerate(cyc):
        rd, par = dijkstra(G.n, G.adjacency, w, u, vertex_ok=lambda y: y in inside or y in on,
                           edge_ok=allowed.__contains__, through=inside.__contains__)
        for v in cyc:
            if v == u or rd[v] is None:
                continue
            d = dist.raw[u][v]
            if d == 0:
                continue
            r = Fraction(rd[v], d)
            if best is None or r < best[0] or (r == best[0] and (u, v) < (best[1], best[2])):
                path = []
                x = v
                while x != u:
                    e = par[x]
                    path.append(e)
                    a, b = G.edges[e]
                    x = a if b == x else b
                best = (r, u, v, path[::-1])
    return best


def _consecutive(cyc, a, b) -> bool:
    k = len(cyc)
    i = cyc.index(a)
    return cyc[(i + 1) % k] == b or cyc[(i - 1) % k] == b


def is_alpha_loose(G: PlanarGraph, lengths, S: FaceSupport, alpha) -> bool:
    alpha = as_fraction(alpha)
    got = interior_ratio(G, lengths, S)
    return got is None or got[0] >= alpha


# -- the alpha-good transform ---------------------------------------------------------------

@dataclass
class AlphaGoodTrace:
    splits: list          # (beta, edge ids in G) of every rescaled path
    loose: list           # outer cycles found alpha-loose, as vertex tuples of G


def _region_graph(G: PlanarGraph, region):
    """Closed-region subgraph with its boundary as outer face."""
    es = sorted(region_edges(G, region))
    outer = next(d for d in range(2 * G.m)
                 if G.dart_face[d] in region and G.dart_face[d ^ 1] not in region)
    # the outer face of the subgraph is on the far side of a boundary dart
    return G.subgraph(es, outer_dart=outer ^ 1)


def make_alpha_good(G: PlanarGraph, lengths, alpha, max_depth: int | None = None,
                    trace: AlphaGoodTrace | None = None) -> tuple:
    """Shrink lengths inside non-loose regions so the result is alpha-good.

    Edges on the outer face keep their length, and every length changes by a
    factor of at most alpha."""
    alpha = as_fraction(alpha)
    if alpha <= 1:
        raise ParamsInvalid("alpha must exceed 1")
    lengths = [as_fraction(x) for x in lengths]
    out = list(lengths)
    limit = max_depth if max_depth is not None else 4 * G.num_faces + 8

    def rec(H: PlanarGraph, emap: tuple, depth: int):
        if depth > limit:
            raise RecursionDepthExceeded(f"alpha-good recursion deeper than {limit}")
        if H.num_faces <= 2:
            return
        lh = [out[e] for e in emap]
        sup = face_supports(H, lh, include_outer=True)
        if not sup:
            return
        finite = frozenset(x for x in range(H.num_faces) if x != H.outer_face)
        whole = sorted(f for f, s in sup.items() if s.region == finite)
        if whole:
            # every support of the whole disk has the outer boundary as its cycle
            S = sup[whole[0]]
            got = interior_ratio(H, lh, S)
            if got is not None and got[0] < alpha:
                beta, u, v, path = got
                for e in path:
                    out[emap[e]] = out[emap[e]] / beta
                if trace is not None:
                    trace.splits.append((beta, tuple(emap[e] for e in path)))
                for side in _split_region(H, set(path)):
                    sub = _region_graph(H, side)
                    rec(sub.graph, tuple(emap[e] for e in sub.emap), depth + 1)
                return
            if trace is not None:
                trace.loose.append(tuple(S.cycle))
            inner = {f: s for f, s in sup.items() if s.region != finite}
        else:
            inner = sup
        if not inner:
            return
        tree = laminar_check(inner)
        for r in tree.roots:
            sub = _region_graph(H, inner[r].region)
            if sub.graph.num_faces >= H.num_faces and sub.graph.m >= H.m:
                continue
            rec(sub.graph, tuple(emap[e] for e in sub.emap), depth + 1)

    rec(G, tuple(range(G.m)), 0)
    return tuple(out)


def _split_region(H: PlanarGraph, path_edges: set) -> list:
    """Finite faces of H on either side of an interior path."""
    finite = [f for f in range(H.num_faces) if f != H.outer_face]
    left = set(finite)
    comps = []
    while left:
        s = min(left)
        comp = {s}
        stack = [s]
        left.discard(s)
        while stack:
            g = stack.pop()
            for d in H.faces[g]:
                if (d >> 1) in path_edges:
                    continue
                h = H.dart_face[d ^ 1]
                if h in left:
                    left.discard(h)
                    comp.add(h)
                    stack.append(h)
        comps.append(frozenset(comp))
    return comps


def is_alpha_good(G: PlanarGraph, lengths, alpha) -> bool:
    """Audit: every innermost finite non-geodesic face has an alpha-loose support."""
    sup = face_supports(G, lengths)
    if not sup:
        return True
    tree = laminar_check(sup)
    return all(is_alpha_loose(G, lengths, sup[f], alpha) for f in tree.innermost())
