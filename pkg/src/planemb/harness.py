"""Instances, generators, flow-side checks and the verification report."""

from __future__ import annotations

import json
import logging
import math
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NoDemands, ParamsInvalid, ParseError, PlanembError
from .planar import (Demand, PlanarGraph, as_fraction, attribute_faces, build_planar_graph,
                     check_cut_condition, dijkstra, rotation_from_coordinates)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Instance:
    G: PlanarGraph
    lengths: tuple
    demands: tuple
    name: str = "instance"
    coords: tuple | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        G = self.G
        out = {
            "n": G.n,
            "edges": [[u, v, l.numerator, l.denominator] for (u, v), l in zip(G.edges, self.lengths)],
            "rotation": [list(r) for r in G.rotation],
            "outer_face_witness": list(G.face_vertices(G.outer_face)),
            "demands": [[d.u, d.v, d.value.numerator, d.value.denominator] for d in self.demands],
        }
        if self.name != "instance":
            out["name"] = self.name
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True) + "\n"


def parse_instance(data, name: str = "instance") -> Instance:
    try:
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        n = int(data["n"])
        edges, lengths = [], []
        for row in data["edges"]:
            u, v, a, b = (int(x) for x in row)
            if b <= 0 or a < 0:
                raise ValueError(f"bad length {a}/{b}")
            edges.append((u, v))
            lengths.append(Fraction(a, b))
        rotation = [[int(e) for e in r] for r in data["rotation"]]
        witness = data.get("outer_face_witness")
        dem = []
        for row in data.get("demands", []):
            u, v, a, b = (int(x) for x in row)
            dem.append(Demand(u, v, Fraction(a, b)))
        name = data.get("name", name)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot parse instance: {exc}") from None
    G = build_planar_graph(n, edges, rotation, outer_witness=witness)
    return Instance(G, tuple(lengths), attribute_faces(G, dem), name)


def load_instance(path: str) -> Instance:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(str(exc)) from None
    return parse_instance(text, os.path.basename(path))


# -- generators -------------------------------------------------------------------

def _from_drawing(n, edges, pos, lengths, demands, name, outer=None):
    G = build_planar_graph(n, edges, rotation_from_coordinates(n, edges, pos), outer_witness=outer)
    if outer is None:
        # the unbounded face of a straight-line drawing: it contains the
        # leftmost vertex and is traversed so that its signed area is largest
        G = G.with_outer_face(_unbounded_face(G, pos))
    return Instance(G, tuple(as_fraction(x) for x in lengths), attribute_faces(G, demands), name,
                    tuple(tuple(p) for p in pos))


def _unbounded_face(G, pos):
    def area(f):
        vs = G.face_vertices(f)
        s = 0.0
        for i, a in enumerate(vs):
            b = vs[(i + 1) % len(vs)]
            s += pos[a][0] * pos[b][1] - pos[b][0] * pos[a][1]
        return s
    # with clockwise rotations, bounded faces are traced one way and the
    # unbounded face the other
    areas = [area(f) for f in range(G.num_faces)]
    signs = [a > 0 for a in areas]
    odd = [f for f in range(G.num_faces) if signs[f] != (sum(signs) > len(signs) / 2)]
    if len(odd) == 1:
        return odd[0]
    return max(range(G.num_faces), key=lambda f: abs(areas[f]))


def _random_same_face_demands(G, rng, k, values=(1,)):
    pairs = [p for p in G.same_face_pairs() if not any(set(p) == set(e) for e in G.edges)]
    if not pairs:
        pairs = G.same_face_pairs()
    rng.shuffle(pairs)
    return [Demand(u, v, Fraction(rng.choice(values))) for u, v in sorted(pairs[:k])]


def gen_grid(rows: int = 3, cols: int = 3, demands: int = 2, seed: int = 0, **_) -> Instance:
    if rows < 2 or cols < 2:
        raise ParamsInvalid("grid needs at least 2 rows and 2 columns")
    rng = random.Random(seed)
    pos = [(i, j) for j in range(rows) for i in range(cols)]
    edges = []
    for j in range(rows):
        for i in range(cols):
            v = j * cols + i
            if i + 1 < cols:
                edges.append((v, v + 1))
            if j + 1 < rows:
                edges.append((v, v + cols))
    inst = _from_drawing(rows * cols, edges, pos, [1] * len(edges), [], f"grid-{rows}x{cols}")
    G = inst.G
    # boundary demands: random pairs on the outer face
    outer = sorted(set(G.face_vertices(G.outer_face)))
    cand = [(a, b) for i, a in enumerate(outer) for b in outer[i + 1:]
            if not any({a, b} == set(e) for e in G.edges)]
    rng.shuffle(cand)
    dem = [Demand(a, b, Fraction(1)) for a, b in sorted(cand[:demands])]
    return Instance(G, inst.lengths, attribute_faces(G, dem), inst.name, inst.coords)


def gen_k23_golden(**_) -> Instance:
    # a=0, b=1, x=2, y=3, z=4
    pos = [(0, 2), (0, -2), (-1, 0), (0, 0), (1, 0)]
    edges = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
    dem = [Demand(0, 1, Fraction(1)), Demand(2, 3, Fraction(1)),
           Demand(3, 4, Fraction(1)), Demand(2, 4, Fraction(1))]
    return _from_drawing(5, edges, pos, [1] * 6, dem, "k23-golden", outer=[0, 2, 1, 4])


def _biconnected(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for x in range(n):
        # removing x must leave the rest connected
        start = 0 if x else 1
        seen = {start, x}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != n:
            return False
    return True


def gen_random_planar(n: int = 10, seed: int = 0, keep: float = 0.75, demands: int = 3,
                      max_len: int = 6, **_) -> Instance:
    """Delaunay triangulation of random points, thinned while staying 2-connected."""
    from scipy.spatial import Delaunay

    if n < 3:
        raise ParamsInvalid("random-planar needs n >= 3")
    rng = random.Random(seed)
    pts = set()
    while len(pts) < n:
        pts.add((rng.randint(0, 1000), rng.randint(0, 1000)))
    pos = sorted(pts)
    tri = Delaunay(np.array(pos, dtype=float))
    es = set()
    for simplex in tri.simplices:
        a, b, c = (int(x) for x in simplex)
        for u, v in ((a, b), (b, c), (a, c)):
            es.add((min(u, v), max(u, v)))
    edges = sorted(es)
    target = max(n, int(round(keep * len(edges))))
    order = edges[:]
    rng.shuffle(order)
    for e in order:
        if len(edges) <= target:
            break
        trial = [x for x in edges if x != e]
        if _biconnected(n, trial):
            edges = trial
    lengths = [Fraction(rng.randint(1, max_len), rng.randint(1, 2)) for _ in edges]
    inst = _from_drawing(n, edges, pos, lengths, [], f"random-planar-{n}-{seed}")
    G = inst.G
    dem = _random_same_face_demands(G, rng, demands)
    return Instance(G, inst.lengths, attribute_faces(G, dem), inst.name, inst.coords)


def gen_nested_shortcut(depth: int = 2, k: int = 4, seed: int = 0, demands: int = 3, **_) -> Instance:
    """A 2k-gon with a stack of ``depth`` ears, each shortcutting the previous one.

    The polygon's lower half is the outer boundary; ear 1 joins its two
    extreme vertices over the top, and ear j+1 joins the second and
    second-to-last vertices of ear j.  Every ear is shorter than what it
    spans, so the support regions nest ``depth`` levels deep."""
    if depth < 1 or k < 2:
        raise ParamsInvalid("nested-shortcut needs depth >= 1 and k >= 2")
    rng = random.Random(seed)
    pos = []
    edges = []
    lengths = []
    N = 2 * k
    for i in range(N):
        ang = math.pi - math.pi * i / k  # p0 at angle pi, pk at 0, upper arc first
        pos.append((math.cos(ang), math.sin(ang)))
    for i in range(N):
        edges.append((i, (i + 1) % N))
        lengths.append(Fraction(1))
    left, right = 0, k
    lo_ang, hi_ang = math.pi, 0.0
    radius = 1.0
    L = Fraction(1, 2)
    inner = 4
    for level in range(depth):
        radius += 0.6
        a0 = pos[left]
        a1 = pos[right]
        ang0 = math.atan2(a0[1], a0[0])
        ang1 = math.atan2(a1[1], a1[0])
        ids = []
        for t in range(1, inner + 1):
            ang = ang0 + (ang1 - ang0) * t / (inner + 1)
            ids.append(len(pos))
            pos.append((radius * math.cos(ang), radius * math.sin(ang)))
        chain = [left] + ids + [right]
        for a, b in zip(chain, chain[1:]):
            edges.append((a, b))
            lengths.append(L)
        left, right = ids[0], ids[-1]
        L = L / 4
    n = len(pos)
    inst = _from_drawing(n, edges, pos, lengths, [], f"nested-shortcut-{depth}")
    G = inst.G
    dem = _random_same_face_demands(G, rng, demands)
    return Instance(G, inst.lengths, attribute_faces(G, dem), inst.name, inst.coords)


GENERATORS = {
    "grid": gen_grid,
    "random-planar": gen_random_planar,
    "k23-golden": gen_k23_golden,
    "nested-shortcut": gen_nested_shortcut,
}


def generate(kind: str, params: dict | None = None, seed: int = 0) -> Instance:
    if kind not in GENERATORS:
        raise ParamsInvalid(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}")
    params = dict(params or {})
    try:
        return GENERATORS[kind](seed=seed, **params)
    except TypeError as exc:
        raise ParamsInvalid(str(exc)) from None


# -- configuration --------------------------------------------------------------------

def load_config(path: str | None = None, env=None) -> "KprConfig":
    """Read ``kpr.c_impl``, ``kpr.samples`` and ``kpr.seed`` from a JSON file.

    Keys may be nested (``{"kpr": {"seed": 3}}``) or dotted
    (``{"kpr.seed": 3}``).  ``PLANEMB_SEED`` in the environment wins over
    the file."""
    from .scales import KprConfig

    env = os.environ if env is None else env
    kw = {}
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read config {path}: {exc}") from None
        flat = {}
        for k, v in data.items():
            if isinstance(v, dict):
                flat.update({f"{k}.{kk}": vv for kk, vv in v.items()})
            else:
                flat[k] = v
        for key in ("c_impl", "samples", "seed"):
            if f"kpr.{key}" in flat:
                kw[key] = flat[f"kpr.{key}"]
    if env.get("PLANEMB_SEED"):
        kw["seed"] = env["PLANEMB_SEED"]
    try:
        if "c_impl" in kw:
            kw["c_impl"] = Fraction(str(kw["c_impl"]))
        if "samples" in kw:
            kw["samples"] = int(kw["samples"])
        if "seed" in kw:
            kw["seed"] = int(kw["seed"])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad config value: {exc}") from None
    return KprConfig(**kw)


# -- maximum concurrent flow -----------------------------------------------------------

@dataclass(frozen=True)
class ConcurrentFlow:
    lam: Fraction          # value of the witness routing (a certified lower bound)
    upper: Fraction        # certified upper bound from dual lengths
    routing: object        # exact.Routing scaled to value lam
    eps: float
    method: str = "lp"

    @property
    def gap(self) -> float:
        return float(self.upper - self.lam) / float(self.upper) if self.upper else 0.0


def _commodities(G, capacities, demands):
    dems = [d if isinstance(d, Demand) else Demand(int(d[0]), int(d[1]), as_fraction(d[2]))
            for d in demands]
    dems = [d for d in dems if d.value > 0 and d.u != d.v]
    if not dems:
        raise NoDemands("no positive demand between distinct vertices")
    caps = [as_fraction(c) for c in capacities]
    return dems, caps


def _dual_bound(G, caps, dems, y) -> Fraction:
    """Sum c_e y_e / sum d_i dist_y(s_i, t_i): an upper bound on lambda for any y >= 0."""
    yf = [max(Fraction(0), Fraction(float(v)).limit_denominator(10**9)) for v in y]
    num = sum((c * v for c, v in zip(caps, yf)), Fraction(0))
    den = Fraction(0)
    for d in dems:
        dist, _ = dijkstra(G.n, G.adjacency, yf, d.u)
        den += d.value * dist[d.v]
    return num / den if den > 0 else Fraction(10**18)


def _witness(G, caps, dems, flows):
    """Exact routing from float path flows: round, then shrink onto the capacities."""
    from .exact import Routing

    per = [dict() for _ in dems]
    for (i, p), x in flows.items():
        if x > 0:
            per[i][p] = per[i].get(p, Fraction(0)) + Fraction(float(x)).limit_denominator(10**9)
    load = [Fraction(0)] * G.m
    for ps in per:
        for p, x in ps.items():
            for e in p:
                load[e] += x
    shrink = Fraction(1)
    for e in range(G.m):
        if load[e] > caps[e]:
            shrink = min(shrink, caps[e] / load[e])
    paths = tuple(tuple((p, x * shrink) for p, x in sorted(ps.items())) for ps in per)
    lam = min(sum((x for _, x in ps), Fraction(0)) / d.value for ps, d in zip(paths, dems))
    return lam, Routing(tuple(dems), paths)


def _cg_concurrent(G, caps, dems, max_rounds=2000):
    from scipy.optimize import linprog
    from scipy.sparse import coo_matrix

    from .exact import _walk

    n, m, k = G.n, G.m, len(dems)
    adj = G.adjacency
    ok = [c > 0 for c in caps]
    cf = np.array([float(c) for c in caps])
    top = max(1.0, float(cf.max()) if m else 1.0)
    cols: list = []
    seen = set()
    for i, d in enumerate(dems):
        dist, par = dijkstra(n, adj, [1] * m, d.u, edge_ok=ok.__getitem__)
        if dist[d.v] is None:
            return Fraction(0), Fraction(0), {}
        p = _walk(G.edges, par, d.u, d.v)
        cols.append((i, p))
        seen.add((i, p))
    dv = np.array([float(d.value) for d in dems])
    res = None
    for _ in range(max_rounds):
        nc = len(cols)
        rows, cidx, vals = [], [], []
        for j, (i, p) in enumerate(cols):
            for e in p:
                rows.append(e)
                cidx.append(j)
                vals.append(1.0)
            rows.append(m + i)
            cidx.append(j)
            vals.append(-1.0)
        for i in range(k):
            rows.append(m + i)
            cidx.append(nc)
            vals.append(dv[i])
        A = coo_matrix((vals, (rows, cidx)), shape=(m + k, nc + 1)).tocsr()
        b = np.concatenate([cf / top, np.zeros(k)])
        cost = np.zeros(nc + 1)
        cost[-1] = -1.0
        res = linprog(cost, A_ub=A, b_ub=b, bounds=(0, None), method="highs-ds")
        if res.status != 0:
            raise PlanembError(f"concurrent-flow LP failed: {res.message}")
        y = np.maximum(0.0, -res.ineqlin.marginals[:m])
        z = np.maximum(0.0, -res.ineqlin.marginals[m:])
        added = 0
        for i, d in enumerate(dems):
            dist, par = dijkstra(n, adj, list(y), d.u, edge_ok=ok.__getitem__)
            if dist[d.v] is not None and dist[d.v] < z[i] - 1e-12 * max(1.0, z[i]):
                p = _walk(G.edges, par, d.u, d.v)
                if (i, p) not in seen:
                    seen.add((i, p))
                    cols.append((i, p))
                    added += 1
        if not added:
            break
    flows = {cols[j]: res.x[j] * top for j in range(len(cols))}
    lam, routing = _witness(G, caps, dems, flows)
    return lam, _dual_bound(G, caps, dems, y), routing


def _mw_concurrent(G, caps, dems, eps):
    """Garg-Koenemann style multiplicative weights (phases over commodities)."""
    from .exact import _walk

    # the guarantee is (1 - step)^-3, so a third of eps keeps the gap under eps
    eps = eps / 3
    m = G.m
    adj = G.adjacency
    cf = [float(c) for c in caps]
    # rescale demands so the optimum is at most 1 (capacity around each source)
    cap_at = [sum(cf[e] for _, e in adj[x]) for x in range(G.n)]
    est = min(min(cap_at[d.u], cap_at[d.v]) / float(d.value) for d in dems)
    dv = [float(d.value) * est for d in dems]
    delta = (m / (1 - eps)) ** (-1 / eps)
    y = [delta / c if c > 0 else float("inf") for c in cf]
    flows: dict = {}
    D = sum(c * v for c, v in zip(cf, y) if c > 0)
    while D < 1:
        for i, d in enumerate(dems):
            rem = dv[i]
            while rem > 1e-15 and D < 1:
                dist, par = dijkstra(G.n, adj, y, d.u, edge_ok=lambda e: cf[e] > 0)
                if dist[d.v] is None:
                    return Fraction(0), Fraction(0), _witness(G, caps, dems, {})[1]
                p = _walk(G.edges, par, d.u, d.v)
                f = min([rem] + [cf[e] for e in p])
                rem -= f
                for e in p:
                    y[e] *= 1 + eps * f / cf[e]
                flows[(i, p)] = flows.get((i, p), 0.0) + f
                D = sum(c * v for c, v in zip(cf, y) if c > 0)
    scale = math.log(1 / delta) / math.log(1 + eps)
    flows = {k: v / scale for k, v in flows.items()}
    lam, routing = _witness(G, caps, dems, flows)
    return lam, _dual_bound(G, caps, dems, y), routing


def max_concurrent_flow(G: PlanarGraph, capacities, demands, eps: float = 1e-3,
                        method: str = "lp") -> ConcurrentFlow:
    """Largest lambda such that lambda * every demand routes within capacities.

    ``method="lp"`` runs path column generation to optimality; ``"mw"``
    runs multiplicative weights.  Either way the returned routing is exactly
    feasible and an exact dual bound certifies ``upper - lam <= eps * upper``."""
    if not 0 < eps < 0.5:
        raise ParamsInvalid("eps must lie in (0, 1/2)")
    dems, caps = _commodities(G, capacities, demands)
    if method == "lp":
        lam, upper, routing = _cg_concurrent(G, caps, dems)
    elif method == "mw":
        lam, upper, routing = _mw_concurrent(G, caps, dems, eps)
    else:
        raise ParamsInvalid(f"unknown method {method!r}")
    if upper and float(upper - lam) > eps * float(upper):
        log.warning("concurrent flow gap %.3g exceeds eps %.3g", float(upper - lam) / float(upper), eps)
    return ConcurrentFlow(lam, max(upper, lam), routing, eps, method)


def sparsest_central_cut(G: PlanarGraph, capacities, demands):
    """(capacity / demand, side) minimised over central cuts separating some demand."""
    from .planar import central_cuts, integerize, mask_to_set

    dems, caps = _commodities(G, capacities, demands)
    cc = central_cuts(G)
    ints, scale = integerize(caps + [d.value for d in dems])
    E = cc.edge_matrix().astype(object)
    V = cc.vertex_matrix()
    cap = E.dot(np.array(ints[:G.m], dtype=object))
    sep = np.stack([V[:, d.u] ^ V[:, d.v] for d in dems], axis=1).astype(object)
    dem = sep.dot(np.array(ints[G.m:], dtype=object))
    best = None
    for i in np.nonzero(dem > 0)[0]:
        r = Fraction(int(cap[i]), int(dem[i]))
        if best is None or r < best[0]:
            best = (r, mask_to_set(cc.vertex_masks[int(i)]))
    return best


# -- verification ----------------------------------------------------------------------------

@dataclass
class GapReport:
    instance: str
    cut_condition: bool
    witness: list | None = None
    lam: Fraction | None = None
    lam_upper: Fraction | None = None
    eps: float = 1e-3
    min_cut_ratio: Fraction | None = None
    expansion: Fraction | None = None
    contraction: Fraction | None = None
    contraction_bound: Fraction | None = None
    duality_ratio: Fraction | None = None
    gap_lower: Fraction | None = None
    worst_pairs: list = field(default_factory=list)
    seconds: float = 0.0
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cut_condition and not self.problems

    @property
    def exit_code(self) -> int:
        if not self.cut_condition:
            return 2
        return 3 if self.problems else 0

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return {"value": float(x), "exact": str(x)}
            return x
        return {
            "instance": self.instance,
            "cut_condition": "holds" if self.cut_condition else "violated",
            "witness": self.witness,
            "lambda": enc(self.lam),
            "lambda_upper": enc(self.lam_upper),
            "eps": self.eps,
            "min_cut_ratio": enc(self.min_cut_ratio),
            "expansion": enc(self.expansion),
            "contraction": enc(self.contraction),
            "contraction_bound": enc(self.contraction_bound),
            "duality_ratio": enc(self.duality_ratio),
            "gap_lower": enc(self.gap_lower),
            "worst_pairs": self.worst_pairs,
            "seconds": round(self.seconds, 3),
            "problems": self.problems,
            "exit_code": self.exit_code,
        }


def duality_ratio(G: PlanarGraph, capacities, demands, C) -> Fraction | None:
    """(sum c_e delta_e) / (sum d_i delta(s_i, t_i)); None if no demand is separated."""
    M = C.delta_matrix()
    num = sum((as_fraction(c) * M(a, b) for c, (a, b) in zip(capacities, G.edges)), Fraction(0))
    den = sum((d.value * M(d.u, d.v) for d in demands), Fraction(0))
    return num / den if den > 0 else None


def verify(inst: Instance, config=None, eps: float = 1e-3, flow_method: str = "lp") -> GapReport:
    """Cut condition, same-face embedding and concurrent flow, cross-checked."""
    from .cuts import distortion_report
    from .pipeline import contraction_bound, embed_same_face_cuts
    from .scales import KprConfig

    t0 = time.time()
    config = config or KprConfig()
    G, lengths, dems = inst.G, inst.lengths, list(inst.demands)
    rep = GapReport(inst.name, True, eps=eps)
    if dems:
        chk = check_cut_condition(G, lengths, dems)
        if not chk.holds:
            rep.cut_condition = False
            rep.witness = sorted(chk.witness)
            rep.problems.append(f"cut {sorted(chk.witness)}: capacity {chk.capacity} < demand {chk.demand}")
    C = embed_same_face_cuts(G, lengths, config)
    dr = distortion_report(C, G, lengths)
    rep.expansion, rep.contraction = dr.expansion, dr.contraction
    rep.worst_pairs = [[u, v, str(r)] for u, v, r in dr.worst_pairs]
    rep.contraction_bound = contraction_bound(config)
    if dr.expansion > 1:
        rep.problems.append(f"expansion {dr.expansion} > 1")
    if dr.contraction > rep.contraction_bound:
        rep.problems.append(f"contraction {dr.contraction} above {rep.contraction_bound}")
    if dems:
        flow = max_concurrent_flow(G, lengths, dems, eps, method=flow_method)
        rep.lam, rep.lam_upper = flow.lam, flow.upper
        best = sparsest_central_cut(G, lengths, dems)
        if best is not None:
            rep.min_cut_ratio = best[0]
            if flow.lam > best[0]:
                rep.problems.append(f"lambda {flow.lam} above the cut ratio {best[0]}")
            rep.gap_lower = best[0] / flow.upper if flow.upper else None
        ratio = duality_ratio(G, lengths, dems, C)
        rep.duality_ratio = ratio
        if ratio is not None and float(flow.lam) > float(ratio) * (1 + eps):
            rep.problems.append(f"lambda {flow.lam} above the metric ratio {ratio}")
    rep.seconds = time.time() - t0
    return rep


def _verify_path(args):
    path, config, eps = args
    try:
        return verify(load_instance(path), config, eps).to_json()
    except PlanembError as exc:
        return {"instance": os.path.basename(path), "error": type(exc).__name__,
                "message": str(exc), "exit_code": exc.exit_code}


def verify_many(paths, config=None, eps: float = 1e-3, workers: int = 1) -> list[dict]:
    """Verify several instance files; with ``workers > 1`` they run in a process pool.
    Reports come back in input order."""
    jobs = [(p, config, eps) for p in paths]
    if workers <= 1 or len(jobs) <= 1:
        return [_verify_path(j) for j in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_path, jobs))
