"""Exact cut-metric oracles and demand routing at desk scale.

The embedding theorems used by the pipeline (isometric embedding of one
face, exact embedding of demand pairs whose union with G is planar, and the
factor-3 embedding of separable instances) are realised here by an exact
feasibility problem over all central cuts of G:

    sum_{C sep e} w_C <= l(e)            for every edge e
    sum_{C sep (u,v)} w_C >= d(u,v)/gamma  for every target pair

The upper bound d(u, v) on targets follows from the edge rows.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog, milp, LinearConstraint, Bounds
from scipy.sparse import coo_matrix

from .cuts import CutCollection
from .errors import (BlockStructureInvalid, CutConditionViolated, Infeasible,
                     NotPlanarUnion, ParamsInvalid)
from .linexact import LPInfeasible, Problem
from .planar import (CENTRAL_CUT_CAP, Demand, PlanarGraph, as_fraction, central_cuts,
                     check_cut_condition, dijkstra, integerize, mask_to_set,
                     shortest_path_metric)

log = logging.getLogger(__name__)


# -- the central-cut oracle ---------------------------------------------------------

def _normalize_targets(targets, gamma):
    out = {}
    for t in targets:
        if len(t) == 3:
            u, v, g = t
        else:
            (u, v), g = t, gamma
        u, v, g = int(u), int(v), as_fraction(g)
        if g < 1:
            raise ParamsInvalid("gamma must be at least 1")
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        # the strongest requirement wins
        out[key] = min(out.get(key, g), g)
    return out


def central_cut_lp_embed(G: PlanarGraph, lengths, targets: Iterable, gamma=1,
                         cap: int = CENTRAL_CUT_CAP) -> CutCollection:
    """Nonnegative weights on central cuts, edge-feasible and target-faithful.

    ``targets`` holds pairs ``(u, v)`` (using ``gamma``) or triples
    ``(u, v, gamma_uv)``.  The result satisfies, exactly,
    ``delta <= l`` on edges and ``delta >= d / gamma`` on targets."""
    lengths = [as_fraction(x) for x in lengths]
    tg = _normalize_targets(targets, gamma)
    dist = shortest_path_metric(G, lengths)
    want = {k: g for k, g in tg.items() if dist.raw[k[0]][k[1]] > 0}
    if not want:
        return CutCollection.empty(range(G.n))
    cc = central_cuts(G, cap)
    E = cc.edge_matrix()
    V = cc.vertex_matrix()
    zero = [e for e in range(G.m) if dist.w[e] == 0]
    cols = np.ones(len(cc), dtype=bool)
    if zero:
        cols &= E[:, zero].sum(axis=1) == 0
    idx = np.nonzero(cols)[0]
    if len(idx) == 0:
        raise Infeasible("every central cut crosses a zero-length edge")
    E = E[idx].astype(np.int64)
    V = V[idx]
    K = 1
    for g in want.values():
        K = math.lcm(K, g.numerator)
    live = [e for e in range(G.m) if dist.w[e] > 0]
    A_ub = E[:, live].T
    b_ub = [dist.w[e] * K for e in live]
    keys = sorted(want)
    A_lb = np.stack([(V[:, u] ^ V[:, v]) for u, v in keys]).astype(np.int64)
    b_lb = []
    for u, v in keys:
        g = want[(u, v)]
        b_lb.append(dist.raw[u][v] * K * g.denominator // g.numerator)
    P = Problem(len(idx), A_ub=A_ub, b_ub=b_ub, A_lb=A_lb, b_lb=b_lb)
    try:
        sol = P.solve()
    except LPInfeasible as exc:
        raise Infeasible(f"no central-cut embedding meets the targets ({exc})") from None
    unit = dist.scale * K
    items = [(mask_to_set(cc.vertex_masks[int(idx[j])]), x / unit) for j, x in sol.items()]
    return CutCollection.build(range(G.n), items)


def os_embed(G: PlanarGraph, lengths, face: int | None = None, **kw) -> CutCollection:
    """Cut metric exact on every pair of vertices of ``face`` (default: outer face)."""
    f = G.outer_face if face is None else face
    vs = sorted(set(G.face_vertices(f)))
    pairs = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
    return central_cut_lp_embed(G, lengths, pairs, 1, **kw)


# -- planar union of demand pairs -----------------------------------------------------

def _chords_cross(pos, p, q) -> bool:
    a, b = sorted((pos[p[0]], pos[p[1]]))
    c, d = pos[q[0]], pos[q[1]]
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def assign_pairs_to_faces(G: PlanarGraph, pairs) -> dict:
    """Place each pair on a face so that pairs on a face do not cross.

    Returns ``{face: [pairs]}``; raises NotPlanarUnion if impossible."""
    pairs = sorted({(min(u, v), max(u, v)) for u, v in pairs if u != v})
    positions = []
    for f in range(G.num_faces):
        pos = {}
        for i, x in enumerate(G.face_vertices(f)):
            pos.setdefault(x, i)
        positions.append(pos)
    cands = []
    for p in pairs:
        fs = [f for f in range(G.num_faces) if p[0] in positions[f] and p[1] in positions[f]]
        if not fs:
            raise NotPlanarUnion(f"pair {p} does not lie on a common face")
        cands.append(fs)
    order = sorted(range(len(pairs)), key=lambda i: (len(cands[i]), pairs[i]))
    placed: dict = {}

    def ok(f, p):
        pos = positions[f]
        return not any(_chords_cross(pos, p, q) for q in placed.get(f, ()))

    def rec(k):
        if k == len(order):
            return True
        i = order[k]
        for f in cands[i]:
            if ok(f, pairs[i]):
                placed.setdefault(f, []).append(pairs[i])
                if rec(k + 1):
                    return True
                placed[f].pop()
        return False

    if not rec(0):
        raise NotPlanarUnion("demand pairs cannot be drawn without crossings inside faces")
    return {f: ps for f, ps in placed.items() if ps}


def seymour_embed(G: PlanarGraph, lengths, pairs, **kw) -> CutCollection:
    """Cut metric exact on ``pairs``, which must form a planar union with G."""
    pairs = list(pairs)
    assign_pairs_to_faces(G, pairs)
    return central_cut_lp_embed(G, lengths, pairs, 1, **kw)


# -- separable instances --------------------------------------------------------------

def _arc_positions(cycle: Sequence[int], block) -> list[int]:
    """Positions of ``block`` on the cycle if it is a contiguous arc, else None."""
    k = len(cycle)
    pos = {x: i for i, x in enumerate(cycle)}
    if not block or any(x not in pos for x in block):
        return None
    idx = sorted(pos[x] for x in block)
    if len(idx) == k:
        return None
    # contiguous iff exactly one gap in the cyclic order
    members = set(idx)
    starts = [i for i in idx if (i - 1) % k not in members]
    if len(starts) != 1:
        return None
    s = starts[0]
    return [(s + t) % k for t in range(len(idx))]


def validate_blocks(G: PlanarGraph, face: int, blocks) -> None:
    """Blocks (X_j, Y_j) on a face: disjoint contiguous arcs, each X_j next to its Y_j."""
    cyc = list(G.face_vertices(face))
    arcs = []
    used = set()
    for j, (X, Y) in enumerate(blocks):
        for side in (X, Y):
            p = _arc_positions(cyc, side)
            if p is None:
                raise BlockStructureInvalid(f"block {sorted(side)} is not a contiguous arc of face {face}")
            if used & set(p):
                raise BlockStructureInvalid(f"blocks overlap on face {face}")
            used |= set(p)
            arcs.append((p[0], j))
    arcs.sort()
    k = len(arcs)
    for t in range(0, k):
        # each block's two arcs must be cyclically consecutive
        a, b = arcs[t][1], arcs[(t + 1) % k][1]
        prev = arcs[(t - 1) % k][1]
        if a != b and a != prev:
            raise BlockStructureInvalid(f"blocks interleave on face {face}")


def separable_embed(G: PlanarGraph, lengths, pairs, blocks: dict, **kw) -> CutCollection:
    """Embedding with delta >= d/3 on pairs of a separable instance.

    ``blocks`` maps a face id to a list of ``(X_j, Y_j)`` vertex sets; every
    pair must have one end in some X_j and the other in the matching Y_j."""
    spans = []
    for f, bl in blocks.items():
        validate_blocks(G, f, bl)
        for X, Y in bl:
            spans.append((set(X), set(Y)))
    for u, v in pairs:
        if not any((u in X and v in Y) or (u in Y and v in X) for X, Y in spans):
            raise BlockStructureInvalid(f"pair {(u, v)} does not span a block pair")
    return central_cut_lp_embed(G, lengths, list(pairs), 3, **kw)


# -- routing ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Routing:
    demands: tuple  # Demand objects
    paths: tuple    # per demand: tuple of (edge-id tuple, Fraction)

    def load(self, m: int) -> list[Fraction]:
        out = [Fraction(0)] * m
        for ps in self.paths:
            for p, x in ps:
                for e in p:
                    out[e] += x
        return out

    def to_json(self) -> list:
        return [{"u": d.u, "v": d.v,
                 "paths": [{"edges": list(p), "value": [x.numerator, x.denominator]} for p, x in ps]}
                for d, ps in zip(self.demands, self.paths)]


def _adj(n, edges):
    adj = [[] for _ in range(n)]
    for e, (a, b) in enumerate(edges):
        adj[a].append((b, e))
        if a != b:
            adj[b].append((a, e))
    return adj


def _walk(edges, par, s, t):
    out = []
    x = t
    while x != s:
        e = par[x]
        out.append(e)
        a, b = edges[e]
        x = a if b == x else b
    return tuple(out[::-1])


def _column_generation(n, edges, caps, comms, max_rounds=500):
    """Float path-LP for ``sum paths = demand`` under capacities.

    Returns (columns, shortfall) where columns is a list of (commodity, path)."""
    adj = _adj(n, edges)
    ok = [c > 0 for c in caps]
    cols: list = []
    seen = set()
    for i, (s, t, _) in enumerate(comms):
        _, par = dijkstra(n, adj, [1] * len(edges), s, edge_ok=ok.__getitem__)
        if par[t] == -1 and s != t:
            raise Infeasible(f"no positive-capacity path between {s} and {t}")
        p = _walk(edges, par, s, t)
        cols.append((i, p))
        seen.add((i, p))
    k = len(comms)
    m = len(edges)
    scale = max([1] + list(caps) + [d for _, _, d in comms])
    for _ in range(max_rounds):
        nc = len(cols)
        rows, cidx = [], []
        for j, (_, p) in enumerate(cols):
            for e in p:
                rows.append(e)
                cidx.append(j)
        A_ub = coo_matrix((np.ones(len(rows)), (rows, cidx)), shape=(m, nc + k)).tocsr()
        eq_r = [i for i, _ in cols] + list(range(k))
        eq_c = list(range(nc)) + [nc + i for i in range(k)]
        A_eq = coo_matrix((np.ones(len(eq_r)), (eq_r, eq_c)), shape=(k, nc + k)).tocsr()
        cost = np.concatenate([np.zeros(nc), np.ones(k)])
        res = linprog(cost, A_ub=A_ub, b_ub=np.array(caps, dtype=float), A_eq=A_eq,
                      b_eq=np.array([d for _, _, d in comms], dtype=float),
                      bounds=(0, None), method="highs-ds")
        if res.status != 0:
            raise Infeasible(f"path LP failed: {res.message}")
        pi = res.eqlin.marginals
        y = -res.ineqlin.marginals
        lens = [max(0.0, float(v)) for v in y]
        added = 0
        for i, (s, t, _) in enumerate(comms):
            dist, par = dijkstra(n, adj, lens, s, edge_ok=ok.__getitem__)
            if dist[t] is not None and dist[t] < pi[i] - 1e-9 * max(1.0, abs(pi[i])):
                p = _walk(edges, par, s, t)
                if (i, p) not in seen:
                    seen.add((i, p))
                    cols.append((i, p))
                    added += 1
        if not added:
            return cols, res.fun / scale
    raise Infeasible("column generation did not converge")


def _exact_paths(edges, caps, comms, cols):
    k = len(comms)
    m = len(edges)
    nc = len(cols)
    A_ub = np.zeros((m, nc), dtype=np.int64)
    A_eq = np.zeros((k, nc), dtype=np.int64)
    for j, (i, p) in enumerate(cols):
        A_eq[i, j] = 1
        for e in p:
            A_ub[e, j] += 1
    P = Problem(nc, A_ub=A_ub, b_ub=list(caps), A_eq=A_eq, b_eq=[d for _, _, d in comms],
                cost=np.array([len(p) for _, p in cols], dtype=float))
    return P.solve()


def _integral_arc_flow(n, edges, caps, comms, time_limit=20.0):
    """Integer arc flows (HiGHS MILP); returns per-commodity path lists or None."""
    m = len(edges)
    k = len(comms)
    nv = 2 * m * k
    rows, cols, vals = [], [], []
    lo, hi = [], []
    r = 0
    for i, (s, t, d) in enumerate(comms):
        for x in range(n):
            want = d if x == s else (-d if x == t else 0)
            lo.append(want)
            hi.append(want)
        for e, (a, b) in enumerate(edges):
            base = i * 2 * m + 2 * e
            # arc a->b leaves a, enters b
            rows += [r + a, r + b, r + b, r + a]
            cols += [base, base, base + 1, base + 1]
            vals += [1, -1, 1, -1]
        r += n
    for e in range(m):
        for i in range(k):
            base = i * 2 * m + 2 * e
            rows += [r, r]
            cols += [base, base + 1]
            vals += [1, 1]
        lo.append(0)
        hi.append(caps[e])
        r += 1
    A = coo_matrix((vals, (rows, cols)), shape=(r, nv)).tocsr()
    res = milp(np.ones(nv), constraints=LinearConstraint(A, lo, hi),
               integrality=np.ones(nv), bounds=Bounds(0, np.inf),
               options={"time_limit": time_limit})
    if res.status != 0 or res.x is None:
        return None
    x = np.rint(res.x).astype(np.int64)
    out = []
    for i, (s, t, d) in enumerate(comms):
        flow = {}
        for e, (a, b) in enumerate(edges):
            base = i * 2 * m + 2 * e
            if x[base]:
                flow[(e, a, b)] = int(x[base])
            if x[base + 1]:
                flow[(e, b, a)] = int(x[base + 1])
        paths = []
        left = d
        while left > 0:
            p = _bfs_arcs(flow, s, t)
            if p is None:
                return None
            amt = min([left] + [flow[a] for a in p])
            for a in p:
                flow[a] -= amt
            paths.append((tuple(a[0] for a in p), amt))
            left -= amt
        out.append(paths)
    return out


def _bfs_arcs(flow, s, t):
    """A simple s-t path over arcs with positive flow, as a list of arc keys."""
    out_arcs = {}
    for arc, f in flow.items():
        if f > 0:
            out_arcs.setdefault(arc[1], []).append(arc)
    prev = {s: None}
    queue = [s]
    for x in queue:
        if x == t:
            break
        for arc in out_arcs.get(x, ()):
            if arc[2] not in prev:
                prev[arc[2]] = arc
                queue.append(arc[2])
    if t not in prev:
        return None
    path = []
    x = t
    while prev[x] is not None:
        path.append(prev[x])
        x = prev[x][1]
    return path[::-1]


def route_demands(n: int, edges, capacities, demands, integral: bool = True) -> Routing:
    """Route ``demands`` (triples u, v, value) within ``capacities`` on any multigraph.

    With integral inputs of moderate size, an integer arc-flow program on
    doubled values is tried first, giving a half-integral routing."""
    caps = [as_fraction(c) for c in capacities]
    dems = [d if isinstance(d, Demand) else Demand(int(d[0]), int(d[1]), as_fraction(d[2]))
            for d in demands]
    live = [j for j, d in enumerate(dems) if d.value > 0 and d.u != d.v]
    ints, scale = integerize(caps + [dems[j].value for j in live])
    cint = ints[:len(caps)]
    comms = [(dems[j].u, dems[j].v, ints[len(caps) + t]) for t, j in enumerate(live)]
    paths: list = [() for _ in dems]
    if not comms:
        return Routing(tuple(dems), tuple(paths))
    if integral and scale == 1 and max(ints) <= 10**6:
        got = _integral_arc_flow(n, edges, [2 * c for c in cint],
                                 [(s, t, 2 * d) for s, t, d in comms])
        if got is not None:
            for j, ps in zip(live, got):
                paths[j] = tuple((p, Fraction(a, 2)) for p, a in ps)
            return Routing(tuple(dems), tuple(paths))
        log.info("integral routing unavailable; falling back to the path LP")
    cols, short = _column_generation(n, edges, cint, comms)
    if short > 1e-9:
        raise CutConditionViolated("demands cannot be routed within capacities")
    try:
        sol = _exact_paths(edges, cint, comms, cols)
    except LPInfeasible:
        raise Infeasible("exact path flow repair failed") from None
    per = [[] for _ in comms]
    for j, x in sol.items():
        i, p = cols[j]
        per[i].append((p, x / scale))
    for j, ps in zip(live, per):
        paths[j] = tuple(ps)
    return Routing(tuple(dems), tuple(paths))


def demands_face(G: PlanarGraph, demands) -> int:
    """A face holding every demand endpoint (outer face preferred)."""
    ends = {x for d in demands for x in (d.u, d.v)}
    order = [G.outer_face] + [f for f in range(G.num_faces) if f != G.outer_face]
    for f in order:
        if ends <= set(G.face_vertices(f)):
            return f
    raise ParamsInvalid("demand endpoints do not lie on a single face")


def os_route(G: PlanarGraph, capacities, demands, face: int | None = None) -> Routing:
    """Route demands whose endpoints all lie on one face.

    The cut condition is checked first (exactly, over central cuts)."""
    dems = [d if isinstance(d, Demand) else Demand(int(d[0]), int(d[1]), as_fraction(d[2]))
            for d in demands]
    dems = [d for d in dems if d.value > 0 and d.u != d.v]
    if not dems:
        return Routing((), ())
    f = demands_face(G, dems) if face is None else face
    ends = {x for d in dems for x in (d.u, d.v)}
    if not ends <= set(G.face_vertices(f)):
        raise ParamsInvalid(f"demand endpoints are not all on face {f}")
    chk = check_cut_condition(G, capacities, dems)
    if not chk.holds:
        raise CutConditionViolated(
            f"cut {sorted(chk.witness)} has capacity {chk.capacity} < demand {chk.demand}",
            chk.witness, chk.capacity, chk.demand)
    return route_demands(G.n, G.edges, capacities, [Demand(d.u, d.v, d.value, f) for d in dems])
