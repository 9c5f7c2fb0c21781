"""Weighted cut collections and the cut metric they induce.

A :class:`CutCollection` is a list of (vertex subset, nonnegative weight)
pairs over a ground set of integers.  Its metric is
``delta(u, v) = sum of weights of cuts containing exactly one of u, v``,
which is the same thing as an L1 embedding (one coordinate per cut).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .planar import PlanarGraph, as_fraction, integerize, shortest_path_metric


@dataclass(frozen=True, eq=False)
class CutCollection:
    """Immutable weighted family of proper subsets of ``ground``."""

    ground: tuple
    cuts: tuple
    weights: tuple
    _index: dict = field(default=None, repr=False, compare=False)

    @classmethod
    def build(cls, ground: Iterable[int], items: Iterable, keep_trivial: bool = False) -> "CutCollection":
        ground = tuple(sorted(set(ground)))
        gset = set(ground)
        cuts, weights = [], []
        for cut, w in items:
            w = as_fraction(w)
            if w < 0:
                raise ValueError("cut weights must be nonnegative")
            cut = frozenset(cut)
            if not cut <= gset:
                raise ValueError(f"cut {sorted(cut)} leaves the ground set")
            if w == 0 or (not keep_trivial and (not cut or len(cut) == len(ground))):
                continue
            cuts.append(cut)
            weights.append(w)
        return cls(ground, tuple(cuts), tuple(weights))

    @classmethod
    def empty(cls, ground) -> "CutCollection":
        return cls(tuple(sorted(set(ground))), (), ())

    def __len__(self):
        return len(self.cuts)

    def __iter__(self):
        return iter(zip(self.cuts, self.weights))

    @property
    def index(self) -> dict:
        if self._index is None:
            object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.ground)})
        return self._index

    def masks(self) -> list[int]:
        idx = self.index
        out = []
        for c in self.cuts:
            m = 0
            for v in c:
                m |= 1 << idx[v]
            out.append(m)
        return out

    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    # -- metric ----------------------------------------------------------------
    def delta(self, u, v) -> Fraction:
        return sum((w for c, w in self if (u in c) != (v in c)), Fraction(0))

    def delta_matrix(self) -> "DeltaMatrix":
        """All pairwise distances, computed once with integer arithmetic."""
        n = len(self.ground)
        merged = self.normalized()
        if not merged.cuts:
            return DeltaMatrix(self.ground, np.zeros((n, n), dtype=np.int64), 1)
        ints, scale = integerize(merged.weights)
        M = np.zeros((len(merged.cuts), n), dtype=np.int64)
        idx = self.index
        for i, c in enumerate(merged.cuts):
            M[i, [idx[v] for v in c]] = 1
        if sum(ints) < 2**62:
            w = np.array(ints, dtype=np.int64)
            inside = (M * w[:, None]).T @ (1 - M)
        else:
            w = np.array(ints, dtype=object)
            inside = (M.astype(object) * w[:, None]).T.dot((1 - M).astype(object))
        return DeltaMatrix(self.ground, inside + inside.T, scale)

    # -- algebra -----------------------------------------------------------------
    def scale(self, alpha) -> "CutCollection":
        alpha = as_fraction(alpha)
        if alpha < 0:
            raise ValueError("scale factor must be nonnegative")
        if alpha == 0:
            return CutCollection.empty(self.ground)
        return CutCollection(self.ground, self.cuts, tuple(w * alpha for w in self.weights))

    def union(self, other: "CutCollection") -> "CutCollection":
        if set(other.ground) != set(self.ground):
            raise ValueError("ground sets differ")
        return CutCollection(self.ground, self.cuts + other.cuts, self.weights + other.weights)

    __add__ = union

    def restrict(self, subset: Iterable[int]) -> "CutCollection":
        sub = frozenset(subset)
        return CutCollection.build(sub, ((c & sub, w) for c, w in self))

    def relabel(self, mapping: Sequence[int] | dict, ground: Iterable[int] | None = None) -> "CutCollection":
        """Rename ground elements (``mapping[old] = new``)."""
        get = mapping.__getitem__
        g = [get(v) for v in self.ground] if ground is None else ground
        return CutCollection.build(g, ((frozenset(get(v) for v in c), w) for c, w in self))

    def extend(self, ground: Iterable[int], assign=None) -> "CutCollection":
        """Grow the ground set.  ``assign(new_vertex)`` names an old vertex
        whose side the new vertex joins; by default new vertices join no cut."""
        ground = set(ground)
        new = ground - set(self.ground)
        if assign is None:
            return CutCollection.build(ground, self)
        items = []
        for c, w in self:
            items.append((c | {x for x in new if assign(x) in c}, w))
        return CutCollection.build(ground, items)

    def normalized(self, root=None) -> "CutCollection":
        """Canonical sides (avoiding ``root``), duplicates merged, sorted."""
        if not self.ground:
            return self
        root = self.ground[0] if root is None else root
        full = frozenset(self.ground)
        acc: dict = {}
        for c, w in self:
            if root in c:
                c = full - c
            if not c or c == full:
                continue
            acc[c] = acc.get(c, Fraction(0)) + w
        items = sorted(acc.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        return CutCollection(self.ground, tuple(k for k, _ in items), tuple(v for _, v in items))

    # -- coordinates -------------------------------------------------------------
    def to_coordinates(self) -> "EmbeddingCoordinates":
        rows = []
        for v in self.ground:
            rows.append(tuple(w if v in c else Fraction(0) for c, w in self))
        return EmbeddingCoordinates(self.ground, tuple(rows))

    # -- serialization -----------------------------------------------------------
    def to_json(self) -> list:
        return [{"cut": sorted(c), "w": [w.numerator, w.denominator]} for c, w in self]

    def dumps(self) -> str:
        return json.dumps({"ground": list(self.ground), "cuts": self.to_json()})

    @classmethod
    def from_json(cls, data, ground=None) -> "CutCollection":
        if isinstance(data, dict):
            ground = data.get("ground", ground)
            data = data["cuts"]
        items = [(frozenset(d["cut"]), Fraction(d["w"][0], d["w"][1])) for d in data]
        if ground is None:
            ground = sorted({v for c, _ in items for v in c})
        return cls.build(ground, items)


@dataclass(frozen=True)
class DeltaMatrix:
    """Integer matrix of a cut metric, scaled by ``scale``."""

    ground: tuple
    raw: np.ndarray
    scale: int

    def __call__(self, u, v) -> Fraction:
        return self.at(self.ground.index(u), self.ground.index(v))

    def at(self, i: int, j: int) -> Fraction:
        """Lookup by ground positions rather than labels."""
        return Fraction(int(self.raw[i, j]), self.scale)


@dataclass(frozen=True)
class EmbeddingCoordinates:
    """One coordinate vector per ground element."""

    ground: tuple
    rows: tuple

    @property
    def dim(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def l1(self, u, v) -> Fraction:
        a = self.rows[self.ground.index(u)]
        b = self.rows[self.ground.index(v)]
        return sum((abs(x - y) for x, y in zip(a, b)), Fraction(0))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["vertex"] + [f"x{i}" for i in range(self.dim)])
        for v, row in zip(self.ground, self.rows):
            w.writerow([v] + [str(x) for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "EmbeddingCoordinates":
        rows = list(csv.reader(io.StringIO(text)))
        ground, data = [], []
        for r in rows[1:]:
            if not r:
                continue
            ground.append(int(r[0]))
            data.append(tuple(Fraction(x) for x in r[1:]))
        return cls(tuple(ground), tuple(data))


def delta(C: CutCollection, u, v) -> Fraction:
    return C.delta(u, v)


def to_coordinates(C: CutCollection) -> EmbeddingCoordinates:
    return C.to_coordinates()


def from_coordinates(X: EmbeddingCoordinates) -> CutCollection:
    """Threshold decomposition: per dimension, one cut per gap between
    consecutive distinct values, weighted by the gap."""
    items = []
    dim = X.dim
    for k in range(dim):
        col = [as_fraction(r[k]) for r in X.rows]
        vals = sorted(set(col))
        for lo, hi in zip(vals, vals[1:]):
            items.append((frozenset(v for v, x in zip(X.ground, col) if x >= hi), hi - lo))
    return CutCollection.build(X.ground, items)


def scale(C, alpha):
    return C.scale(alpha)


def union(C1, C2):
    return C1.union(C2)


def restrict(C, subset):
    return C.restrict(subset)


def combine(parts: Sequence[tuple], ground) -> CutCollection:
    """Weighted sum ``sum(coef * C)`` of collections over a shared ground set."""
    items = []
    for coef, C in parts:
        coef = as_fraction(coef)
        items.extend((c, w * coef) for c, w in C)
    return CutCollection.build(ground, items)


# -- centralization ---------------------------------------------------------------

def _components(G: PlanarGraph, verts: set) -> list[frozenset]:
    out = []
    left = set(verts)
    while left:
        s = left.pop()
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y, _ in G.adjacency[x]:
                if y in left:
                    left.discard(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return sorted(out, key=lambda c: min(c))


def centralize(C: CutCollection, G: PlanarGraph) -> CutCollection:
    """Replace every cut by central cuts with the same edge separation.

    A cut X whose complement splits into components V_1..V_p becomes the cuts
    V_1..V_p (each with X's weight); if instead X itself is disconnected its
    components are used.  Edge distances are unchanged and every other
    distance can only grow."""
    if set(C.ground) != set(range(G.n)):
        raise ValueError("ground set must be the vertex set of G")
    full = frozenset(range(G.n))
    items = []

    def process(X, w, depth=0):
        comp_out = _components(G, set(full - X))
        if len(comp_out) > 1:
            for Y in comp_out:
                process(Y, w, depth + 1)
            return
        comp_in = _components(G, set(X))
        if len(comp_in) > 1:
            for Y in comp_in:
                process(Y, w, depth + 1)
            return
        items.append((X, w))

    for c, w in C:
        process(frozenset(c), w)
    return CutCollection.build(C.ground, items)


# -- uncrossing ---------------------------------------------------------------------

def crosses(a: int, b: int, full: int) -> bool:
    """Bipartitions cross when all four corners are nonempty."""
    return bool(a & b) and bool(a & ~b) and bool(b & ~a) and bool(full & ~(a | b))


def is_laminar(C: CutCollection) -> bool:
    """True if no two cuts cross (as bipartitions of the ground set)."""
    ms = C.masks()
    full = (1 << len(C.ground)) - 1
    return not any(crosses(ms[i], ms[j], full)
                   for i in range(len(ms)) for j in range(i + 1, len(ms)))


@dataclass(frozen=True)
class UncrossResult:
    collection: CutCollection
    iterations: int


def uncross(C: CutCollection, budget: int | None = None, with_stats: bool = False):
    """Uncross pairs until the family is cross-free.

    The lowest-index crossing pair (A, wA), (B, wB) with wA >= wB is replaced
    by (A & B, wB), (A | B, wB) and (A, wA - wB).  Identical cuts are merged
    as they appear.  Each step strictly lowers sum(w * |X| * |V - X|), so the
    loop terminates; ``budget`` caps the number of steps."""
    ground = C.ground
    full = (1 << len(ground)) - 1
    masks: list[int] = []
    weights: list[Fraction] = []
    where: dict = {}

    def push(m, w):
        if w == 0:
            return
        if m in where:
            weights[where[m]] += w
        else:
            where[m] = len(masks)
            masks.append(m)
            weights.append(w)

    for m, w in zip(C.masks(), C.weights):
        push(m, w)
    k0 = max(2, len(masks))
    budget = k0 ** 4 if budget is None else budget
    steps = 0
    i = 0
    while True:
        pair = None
        for i in range(len(masks)):
            if weights[i] == 0:
                continue
            for j in range(i + 1, len(masks)):
                if weights[j] and crosses(masks[i], masks[j], full):
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break
        steps += 1
        if steps > budget:
            raise RuntimeError(f"uncrossing exceeded its budget of {budget} steps")
        i, j = pair
        if weights[i] < weights[j]:
            i, j = j, i
        a, b = masks[i], masks[j]
        wa, wb = weights[i], weights[j]
        weights[i] = wa - wb
        weights[j] = Fraction(0)
        push(a & b, wb)
        push(a | b, wb)
        # compact zero-weight slots now and then
        if steps % 64 == 0:
            keep = [(m, w) for m, w in zip(masks, weights) if w]
            masks = [m for m, _ in keep]
            weights = [w for _, w in keep]
            where = {m: t for t, m in enumerate(masks)}
    items = [(frozenset(ground[t] for t in range(len(ground)) if (m >> t) & 1), w)
             for m, w in zip(masks, weights) if w]
    out = CutCollection.build(ground, items)
    return UncrossResult(out, steps) if with_stats else out


# -- distortion ---------------------------------------------------------------------

INF = float("inf")


@dataclass(frozen=True)
class DistortionReport:
    expansion: Fraction | float
    contraction: Fraction | float
    worst_edges: tuple = ()
    worst_pairs: tuple = ()

    def as_dict(self) -> dict:
        def enc(x):
            return "inf" if x == INF else str(x)
        return {
            "expansion": enc(self.expansion),
            "contraction": enc(self.contraction),
            "worst_edges": [[e, enc(r)] for e, r in self.worst_edges],
            "worst_pairs": [[u, v, enc(r)] for u, v, r in self.worst_pairs],
        }


def distortion_report(C: CutCollection, G: PlanarGraph, lengths, pairs=None,
                      top: int = 5) -> DistortionReport:
    """Expansion over edges (delta / l) and contraction over ``pairs`` (d / delta).

    Pairs at distance zero are ignored; a pair with positive distance and
    zero delta gives infinite contraction."""
    lengths = [as_fraction(x) for x in lengths]
    if set(C.ground) != set(range(G.n)):
        C = C.extend(range(G.n))
    D = C.delta_matrix()
    pos = {v: i for i, v in enumerate(D.ground)}
    dist = shortest_path_metric(G, lengths)
    edge_ratios = []
    for e, (u, v) in enumerate(G.edges):
        dv = D.at(pos[u], pos[v])
        if lengths[e] == 0:
            r = INF if dv > 0 else Fraction(0)
        else:
            r = dv / lengths[e]
        edge_ratios.append((e, r))
    if pairs is None:
        pairs = G.same_face_pairs()
    pair_ratios = []
    for u, v in pairs:
        d = dist(u, v)
        if d == 0:
            continue
        dv = D.at(pos[u], pos[v])
        pair_ratios.append((u, v, INF if dv == 0 else d / dv))
    edge_ratios.sort(key=lambda t: t[1], reverse=True)
    pair_ratios.sort(key=lambda t: t[2], reverse=True)
    expansion = edge_ratios[0][1] if edge_ratios else Fraction(0)
    contraction = pair_ratios[0][2] if pair_ratios else Fraction(1)
    return DistortionReport(expansion, contraction, tuple(edge_ratios[:top]), tuple(pair_ratios[:top]))
