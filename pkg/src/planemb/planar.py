"""Plane graphs given by a rotation system.

A graph is stored as an edge list plus, for every vertex, the clockwise
cyclic order of its incident edge ids.  Each edge ``e = (u, v)`` yields two
darts: ``2e`` runs u -> v and ``2e + 1`` runs v -> u.  Faces are the orbits of
the permutation "reverse the dart, then step to the next edge in the rotation
at its tail", which is the usual next-dart traversal.

Lengths, capacities and distances are exact :class:`fractions.Fraction`
values.  Shortest paths run on integers after clearing denominators.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import Disconnected, InstanceTooLarge, NonPlanarRotation

CENTRAL_CUT_CAP = 10**6


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (tuple, list)):
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


def integerize(values: Iterable[Fraction]) -> tuple[list[int], int]:
    """Scale rationals by the lcm of their denominators.

    Returns the scaled integers and the common scale."""
    vals = [as_fraction(v) for v in values]
    scale = 1
    for v in vals:
        scale = math.lcm(scale, v.denominator)
    return [v.numerator * (scale // v.denominator) for v in vals], scale


@dataclass(frozen=True, eq=False)
class PlanarGraph:
    """A connected plane graph.  Build instances with :func:`build_planar_graph`."""

    n: int
    edges: tuple
    rotation: tuple
    outer_face: int
    faces: tuple
    dart_face: tuple

    # -- darts --------------------------------------------------------------
    def tail(self, d: int) -> int:
        u, v = self.edges[d >> 1]
        return v if d & 1 else u

    def head(self, d: int) -> int:
        u, v = self.edges[d >> 1]
        return u if d & 1 else v

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def face_vertices(self, f: int) -> tuple:
        return tuple(self.tail(d) for d in self.faces[f])

    def face_edges(self, f: int) -> tuple:
        return tuple(d >> 1 for d in self.faces[f])

    def edge_faces(self, e: int) -> tuple[int, int]:
        return self.dart_face[2 * e], self.dart_face[2 * e + 1]

    @property
    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj = self.__dict__.get("_adj")
        if adj is None:
            adj = [[] for _ in range(self.n)]
            for e, (u, v) in enumerate(self.edges):
                adj[u].append((v, e))
                adj[v].append((u, e))
            object.__setattr__(self, "_adj", adj)
        return adj

    def faces_with(self, u: int, v: int) -> list[int]:
        return [f for f in range(self.num_faces)
                if u in self.face_vertices(f) and v in self.face_vertices(f)]

    def same_face_pairs(self, faces: Iterable[int] | None = None) -> list[tuple[int, int]]:
        pairs = set()
        for f in (range(self.num_faces) if faces is None else faces):
            vs = sorted(set(self.face_vertices(f)))
            for i, a in enumerate(vs):
                for b in vs[i + 1:]:
                    pairs.add((a, b))
        return sorted(pairs)

    def is_biconnected(self) -> bool:
        if self.n <= 2:
            return self.m >= 1
        if any(len(set(self.face_vertices(f))) != len(self.faces[f])
               for f in range(self.num_faces)):
            return False
        return all(a != b for a, b in (self.edge_faces(e) for e in range(self.m)))

    def subgraph(self, edge_ids: Iterable[int], outer_dart: int | None = None,
                 extra_vertices: Iterable[int] = ()) -> "Subgraph":
        """Restrict to a set of edges, keeping the induced rotation.

        ``outer_dart`` is a dart of this graph (on a kept edge) whose face in
        the restricted graph becomes the outer face."""
        keep = sorted(set(edge_ids))
        verts = sorted({x for e in keep for x in self.edges[e]} | set(extra_vertices))
        vidx = {v: i for i, v in enumerate(verts)}
        eidx = {e: i for i, e in enumerate(keep)}
        edges = [(vidx[self.edges[e][0]], vidx[self.edges[e][1]]) for e in keep]
        rotation = [[eidx[e] for e in self.rotation[v] if e in eidx] for v in verts]
        H = build_planar_graph(len(verts), edges, rotation)
        if outer_dart is not None:
            nd = 2 * eidx[outer_dart >> 1] + (outer_dart & 1)
            H = H.with_outer_face(H.dart_face[nd])
        return Subgraph(H, tuple(verts), tuple(keep), vidx, eidx)

    def with_outer_face(self, f: int) -> "PlanarGraph":
        return PlanarGraph(self.n, self.edges, self.rotation, f, self.faces, self.dart_face)

    def dual(self) -> "DualGraph":
        return dual(self)


@dataclass(frozen=True)
class Subgraph:
    graph: PlanarGraph
    vmap: tuple  # new vertex id -> old vertex id
    emap: tuple  # new edge id -> old edge id
    vindex: dict
    eindex: dict

    def lift_lengths(self, lengths: Sequence[Fraction]) -> tuple:
        return tuple(lengths[e] for e in self.emap)


def _trace_faces(n, edges, rotation):
    m = len(edges)
    pos = {}
    for v, rot in enumerate(rotation):
        for i, e in enumerate(rot):
            d = 2 * e if edges[e][0] == v else 2 * e + 1
            pos[d] = (v, i)
    dart_face = [-1] * (2 * m)
    faces = []
    for start in range(2 * m):
        if dart_face[start] != -1:
            continue
        fid = len(faces)
        cyc = []
        d = start
        while dart_face[d] == -1:
            dart_face[d] = fid
            cyc.append(d)
            v, i = pos[d ^ 1]
            rot = rotation[v]
            e = rot[(i + 1) % len(rot)]
            d = 2 * e if edges[e][0] == v else 2 * e + 1
        if d != start:
            raise NonPlanarRotation("dart orbit does not close")
        faces.append(tuple(cyc))
    return tuple(faces), tuple(dart_face)


def build_planar_graph(n: int, edges, rotation, outer_face: int | None = None,
                       outer_witness: Sequence[int] | None = None) -> PlanarGraph:
    """Trace faces of a rotation system and validate Euler's formula.

    ``outer_witness`` is a vertex cycle; the face with that boundary (in
    either direction) becomes the outer face.  Without a witness, the face
    with the most darts is used."""
    edges = tuple((int(u), int(v)) for u, v in edges)
    rotation = tuple(tuple(int(e) for e in rot) for rot in rotation)
    if len(rotation) != n:
        raise NonPlanarRotation(f"rotation lists {len(rotation)} vertices, expected {n}")
    seen = [0] * (2 * len(edges))
    for v, rot in enumerate(rotation):
        for e in rot:
            if not 0 <= e < len(edges):
                raise NonPlanarRotation(f"unknown edge id {e} at vertex {v}")
            a, b = edges[e]
            if a == b:
                raise NonPlanarRotation(f"self-loop on edge {e}")
            if v not in (a, b):
                raise NonPlanarRotation(f"edge {e} listed at non-endpoint {v}")
            seen[2 * e + (v == b)] += 1
    if any(c != 1 for c in seen):
        raise NonPlanarRotation("every edge end must appear exactly once in the rotation")
    # connectivity
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if n:
        mark = [False] * n
        stack = [0]
        mark[0] = True
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not mark[y]:
                    mark[y] = True
                    stack.append(y)
        if not all(mark):
            raise Disconnected("graph is not connected")
    if not edges:
        faces, dart_face = ((),), ()
    else:
        faces, dart_face = _trace_faces(n, edges, rotation)
    if n - len(edges) + len(faces) != 2:
        raise NonPlanarRotation(
            f"Euler check failed: V - E + F = {n} - {len(edges)} + {len(faces)} != 2")
    G = PlanarGraph(n, edges, rotation, 0, faces, dart_face)
    if outer_witness is not None:
        outer_face = find_face(G, outer_witness)
    elif outer_face is None:
        outer_face = max(range(len(faces)), key=lambda f: (len(faces[f]), -f))
    return G.with_outer_face(outer_face)


def find_face(G: PlanarGraph, cycle: Sequence[int]) -> int:
    cyc = list(cycle)
    k = len(cyc)
    for f in range(G.num_faces):
        fv = list(G.face_vertices(f))
        if len(fv) != k:
            continue
        for seq in (fv, fv[::-1]):
            for s in range(k):
                if seq[s:] + seq[:s] == cyc:
                    return f
    raise NonPlanarRotation(f"no face has boundary {cyc}")


def rotation_from_coordinates(n: int, edges, pos) -> list[list[int]]:
    """Clockwise rotation system of a straight-line drawing."""
    rot = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        rot[u].append(e)
        rot[v].append(e)
    out = []
    for v in range(n):
        x0, y0 = pos[v]

        def angle(e, v=v):
            a, b = edges[e]
            w = b if a == v else a
            return math.atan2(pos[w][1] - y0, pos[w][0] - x0)

        out.append(sorted(rot[v], key=lambda e: -angle(e)))
    return out


# -- shortest paths ---------------------------------------------------------

def dijkstra(n, adj, weights, src, vertex_ok=None, edge_ok=None, through=None):
    """Integer-weight Dijkstra.

    ``vertex_ok`` limits which vertices may be entered, ``through`` limits
    which vertices may be left (besides ``src``).  Returns (dist, parent edge)
    with ``None`` for unreachable vertices."""
    dist = [None] * n
    par = [-1] * n
    dist[src] = 0
    heap = [(0, src)]
    done = [False] * n
    while heap:
        dx, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        if x != src and through is not None and not through(x):
            continue
        for y, e in adj[x]:
            if edge_ok is not None and not edge_ok(e):
                continue
            if vertex_ok is not None and not vertex_ok(y):
                continue
            nd = dx + weights[e]
            if dist[y] is None or nd < dist[y]:
                dist[y] = nd
                par[y] = e
                heapq.heappush(heap, (nd, y))
    return dist, par


class DistanceTable:
    """All-pairs exact shortest-path distances with path reconstruction."""

    def __init__(self, G: PlanarGraph, lengths: Sequence[Fraction]):
        self.G = G
        self.lengths = tuple(as_fraction(x) for x in lengths)
        if any(x < 0 for x in self.lengths):
            raise ValueError("lengths must be nonnegative")
        self.w, self.scale = integerize(self.lengths)
        adj = G.adjacency
        self.raw = []
        self.parent = []
        for s in range(G.n):
            dist, par = dijkstra(G.n, adj, self.w, s)
            self.raw.append(dist)
            self.parent.append(par)

    def __call__(self, u: int, v: int) -> Fraction:
        return Fraction(self.raw[u][v], self.scale)

    def matrix(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.scale) for x in row] for row in self.raw]

    def path_edges(self, u: int, v: int) -> list[int]:
        out = []
        par = self.parent[u]
        x = v
        while x != u:
            e = par[x]
            out.append(e)
            a, b = self.G.edges[e]
            x = a if b == x else b
        return out[::-1]

    def path_vertices(self, u: int, v: int) -> list[int]:
        vs = [u]
        for e in self.path_edges(u, v):
            a, b = self.G.edges[e]
            vs.append(b if a == vs[-1] else a)
        return vs


@lru_cache(maxsize=128)
def _cached_table(G, lengths):
    return DistanceTable(G, lengths)


def shortest_path_metric(G: PlanarGraph, lengths) -> DistanceTable:
    return _cached_table(G, tuple(as_fraction(x) for x in lengths))


# -- dual ---------------------------------------------------------------------

@dataclass(frozen=True)
class DualGraph:
    """One vertex per face, one (possibly parallel) edge per primal edge."""

    num_vertices: int
    edges: tuple  # dual edge e joins the two faces of primal edge e

    def adjacency(self):
        adj = [[] for _ in range(self.num_vertices)]
        for e, (a, b) in enumerate(self.edges):
            adj[a].append((b, e))
            if a != b:
                adj[b].append((a, e))
        return adj

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.num_vertices


def dual(G: PlanarGraph) -> DualGraph:
    return DualGraph(G.num_faces, tuple(G.edge_faces(e) for e in range(G.m)))


def split_dual_vertex(D: DualGraph, f: int, boundary_edges: Sequence[int]):
    """Replace dual vertex ``f`` by one pendant vertex per boundary edge.

    Returns the new dual graph and the list of new vertex ids, in the order
    of ``boundary_edges``."""
    edges = list(D.edges)
    nxt = D.num_vertices
    new = []
    for e in boundary_edges:
        a, b = edges[e]
        if a == f:
            a = nxt
        elif b == f:
            b = nxt
        else:
            raise ValueError(f"dual edge {e} is not incident to {f}")
        edges[e] = (a, b)
        new.append(nxt)
        nxt += 1
    return DualGraph(nxt, tuple(edges)), new


# -- central cuts -------------------------------------------------------------

@dataclass(frozen=True)
class CentralCuts:
    """Vertex and edge bitmasks of every central cut of a graph.

    The vertex side is the one not containing vertex 0."""

    n: int
    m: int
    vertex_masks: tuple
    edge_masks: tuple

    def __len__(self):
        return len(self.vertex_masks)

    def vertex_matrix(self) -> np.ndarray:
        return bit_matrix(self.vertex_masks, self.n)

    def edge_matrix(self) -> np.ndarray:
        return bit_matrix(self.edge_masks, self.m)

    def sides(self) -> list[frozenset]:
        return [mask_to_set(m) for m in self.vertex_masks]


def bit_matrix(masks: Sequence[int], width: int) -> np.ndarray:
    nb = max(1, (width + 7) // 8)
    if not masks:
        return np.zeros((0, width), dtype=np.uint8)
    raw = b"".join(int(m).to_bytes(nb, "little") for m in masks)
    arr = np.frombuffer(raw, dtype=np.uint8).reshape(len(masks), nb)
    return np.unpackbits(arr, axis=1, bitorder="little")[:, :width]


def mask_to_set(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def dual_cycles(num_vertices: int, dual_edges, cap: int = CENTRAL_CUT_CAP) -> set[int]:
    """Edge bitmasks of all simple cycles of a multigraph (loops included:
    the dual loop of a bridge is the bridge's own cut)."""
    adj = [[] for _ in range(num_vertices)]
    out: set[int] = set()
    for e, (a, b) in enumerate(dual_edges):
        if a == b:
            out.add(1 << e)
            continue
        adj[a].append((b, e))
        adj[b].append((a, e))
    onpath = [False] * num_vertices

    def rec(s, v, emask):
        for w, e in adj[v]:
            if (emask >> e) & 1:
                continue
            if w == s:
                out.add(emask | (1 << e))
                if len(out) > cap:
                    raise InstanceTooLarge(f"more than {cap} central cuts")
            elif w > s and not onpath[w]:
                onpath[w] = True
                rec(s, w, emask | (1 << e))
                onpath[w] = False

    for s in range(num_vertices):
        onpath[s] = True
        rec(s, s, 0)
        onpath[s] = False
    return out


def _side_of(G: PlanarGraph, emask: int) -> int:
    """Vertex mask of the component of G minus the cut edges avoiding vertex 0."""
    adj = G.adjacency
    seen = 1
    stack = [0]
    while stack:
        x = stack.pop()
        for y, e in adj[x]:
            if (emask >> e) & 1 or (seen >> y) & 1:
                continue
            seen |= 1 << y
            stack.append(y)
    return ((1 << G.n) - 1) & ~seen


_central_cache: dict = {}


def central_cuts(G: PlanarGraph, cap: int = CENTRAL_CUT_CAP) -> CentralCuts:
    """Enumerate central cuts as simple circuits of the dual."""
    hit = _central_cache.get(id(G))
    if hit is not None and hit[0] is G:
        return hit[1]
    D = dual(G)
    cycles = sorted(dual_cycles(D.num_vertices, D.edges, cap))
    vm = tuple(_side_of(G, c) for c in cycles)
    cc = CentralCuts(G.n, G.m, vm, tuple(cycles))
    if len(_central_cache) > 64:
        _central_cache.clear()
    _central_cache[id(G)] = (G, cc)
    return cc


def is_central(G: PlanarGraph, side) -> bool:
    side = set(side)
    if not side or len(side) == G.n:
        return False
    return _connected_within(G, side) and _connected_within(G, set(range(G.n)) - side)


def _connected_within(G, verts) -> bool:
    verts = set(verts)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, _ in G.adjacency[x]:
            if y in verts and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


# -- demands and the cut condition -------------------------------------------

@dataclass(frozen=True)
class Demand:
    u: int
    v: int
    value: Fraction
    face: int | None = None


def attribute_faces(G: PlanarGraph, demands) -> tuple:
    """Attach to every demand the lowest-id face containing both endpoints."""
    out = []
    for d in demands:
        if not isinstance(d, Demand):
            u, v, val = d[0], d[1], d[2]
            d = Demand(int(u), int(v), as_fraction(val))
        faces = G.faces_with(d.u, d.v)
        out.append(Demand(d.u, d.v, d.value, faces[0] if faces else None))
    return tuple(out)


@dataclass(frozen=True)
class CutCheck:
    holds: bool
    witness: frozenset | None = None
    capacity: Fraction | None = None
    demand: Fraction | None = None
    checked: int = 0


def check_cut_condition(G: PlanarGraph, capacities, demands, cap: int = CENTRAL_CUT_CAP) -> CutCheck:
    """Check capacity >= separated demand on every central cut.

    Central cuts suffice (a cut condition on all sets is implied by the
    central ones), and they are enumerated as simple dual circuits."""
    demands = [d if isinstance(d, Demand) else Demand(int(d[0]), int(d[1]), as_fraction(d[2]))
               for d in demands]
    demands = [d for d in demands if d.value > 0 and d.u != d.v]
    if not demands:
        return CutCheck(True)
    cc = central_cuts(G, cap)
    ints, scale = integerize(list(capacities) + [d.value for d in demands])
    cint = np.array(ints[:G.m], dtype=object)
    dint = np.array(ints[G.m:], dtype=object)
    E = cc.edge_matrix().astype(object)
    V = cc.vertex_matrix()
    sep = np.stack([V[:, d.u] ^ V[:, d.v] for d in demands], axis=1).astype(object)
    capv = E.dot(cint)
    demv = sep.dot(dint)
    bad = np.nonzero(capv < demv)[0]
    if len(bad):
        i = int(bad[0])
        return CutCheck(False, mask_to_set(cc.vertex_masks[i]), Fraction(capv[i], scale),
                        Fraction(demv[i], scale), len(cc))
    return CutCheck(True, checked=len(cc))


# -- blocks ---------------------------------------------------------------------

def _blocks(G: PlanarGraph):
    """Biconnected components as lists of edge ids (iterative Tarjan)."""
    n = G.n
    adj = G.adjacency
    disc = [-1] * n
    low = [0] * n
    blocks = []
    estack = []
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            x, pe, it = stack[-1]
            advanced = False
            for y, e in it:
                if e == pe:
                    continue
                if disc[y] == -1:
                    estack.append(e)
                    disc[y] = low[y] = t
                    t += 1
                    stack.append((y, e, iter(adj[y])))
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    estack.append(e)
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    comp = []
                    while True:
                        e = estack.pop()
                        comp.append(e)
                        if e == pe:
                            break
                    blocks.append(sorted(comp))
    return blocks


@dataclass(frozen=True)
class Block:
    sub: Subgraph
    demands: tuple  # Demand objects in the block's own vertex ids


def preprocess_biconnect(G: PlanarGraph, demands=()) -> list[Block]:
    """Split G into 2-connected blocks and route demands through cut vertices.

    A demand (a, b) whose endpoints lie in different blocks is replaced by
    the chain a - c1 - ... - ck - b along the block-cut tree."""
    demands = [d if isinstance(d, Demand) else Demand(int(d[0]), int(d[1]), as_fraction(d[2]))
               for d in demands]
    blocks = _blocks(G)
    if len(blocks) <= 1:
        sub = G.subgraph(range(G.m), outer_dart=G.faces[G.outer_face][0] if G.m else None)
        return [Block(sub, attribute_faces(sub.graph, demands) if G.m else ())]
    bverts = [sorted({x for e in b for x in G.edges[e]}) for b in blocks]
    # block-cut tree: nodes ("b", i) and ("v", x) for cut vertices
    member = {}
    for i, vs in enumerate(bverts):
        for x in vs:
            member.setdefault(x, []).append(i)
    cutv = {x for x, bs in member.items() if len(bs) > 1}
    tree = {}
    for i, vs in enumerate(bverts):
        for x in vs:
            if x in cutv:
                tree.setdefault(("b", i), []).append(("v", x))
                tree.setdefault(("v", x), []).append(("b", i))

    def node_of(x):
        return ("v", x) if x in cutv else ("b", member[x][0])

    def tree_path(a, b):
        prev = {a: None}
        queue = [a]
        for cur in queue:
            if cur == b:
                break
            for nb in tree.get(cur, []):
                if nb not in prev:
                    prev[nb] = cur
                    queue.append(nb)
        out = []
        cur = b
        while cur is not None:
            out.append(cur)
            cur = prev[cur]
        return out[::-1]

    per_block = [[] for _ in blocks]
    for d in demands:
        if d.u == d.v or d.value == 0:
            continue
        path = tree_path(node_of(d.u), node_of(d.v))
        # walk the blocks on the path, entering and leaving through cut vertices
        cur = d.u
        bl = [node for node in path if node[0] == "b"]
        if not bl:
            # both endpoints are cut vertices of a common block
            common = set(member[d.u]) & set(member[d.v])
            bl = [("b", min(common))]
        for j, (_, bi) in enumerate(bl):
            if j + 1 < len(bl):
                nxt = next(x for x in bverts[bi] if x in cutv and bl[j + 1][1] in member[x])
            else:
                nxt = d.v
            if cur != nxt:
                per_block[bi].append(Demand(cur, nxt, d.value))
            cur = nxt
    out = []
    for i, b in enumerate(blocks):
        # pick a dart of the block on G's outer face if there is one
        outer = None
        for e in b:
            for dd in (2 * e, 2 * e + 1):
                if G.dart_face[dd] == G.outer_face:
                    outer = dd
                    break
            if outer is not None:
                break
        sub = G.subgraph(b, outer_dart=outer if outer is not None else 2 * b[0])
        ds = [Demand(sub.vindex[d.u], sub.vindex[d.v], d.value) for d in per_block[i]]
        out.append(Block(sub, attribute_faces(sub.graph, ds)))
    return out
