"""Low-diameter decompositions and the single-source embedding.

Partitions come from three nested rounds of annulus chopping (band width
Delta/6, random offset, distances measured inside the current piece), the
scheme of Klein, Plotkin and Rao.  Chopping alone bounds block diameter only
up to a constant, so any block whose weak diameter still exceeds Delta is
carved into balls of radius in [Delta/4, Delta/2).

The single-source embedding stacks one cut family per distance scale around
the source and adds ring cuts that telescope along shortest paths from it.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cuts import CutCollection
from .errors import ParamsInvalid
from .planar import PlanarGraph, as_fraction, dijkstra, integerize, shortest_path_metric

log = logging.getLogger(__name__)

# calibrated once with calibrate_c_impl (grids up to 8x8, random planar n=14,
# nested shortcuts; 200 samples, Delta from diam down to diam/8): the worst
# ratio seen was 19.2
DEFAULT_C_IMPL = Fraction(24)


@dataclass(frozen=True)
class KprConfig:
    c_impl: Fraction = DEFAULT_C_IMPL
    samples: int = 64
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c_impl", as_fraction(self.c_impl))
        if self.c_impl <= 0:
            raise ParamsInvalid("c_impl must be positive")
        if self.samples < 1:
            raise ParamsInvalid("need at least one sample")

    @property
    def beta(self) -> Fraction:
        return 96 * self.c_impl


@dataclass(frozen=True)
class LipschitzPartitionSample:
    blocks: tuple  # frozensets covering the vertex set
    mu: Fraction
    delta: Fraction

    def block_of(self) -> dict:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def separates(self, u, v) -> bool:
        idx = self.block_of()
        return idx[u] != idx[v]


# -- partitions ------------------------------------------------------------------

def _chop(n, adj, w, pieces, band, rng):
    """One round: every piece is cut into annuli around a random root."""
    out = []
    for piece in pieces:
        if len(piece) == 1:
            out.append(piece)
            continue
        root = rng.choice(sorted(piece))
        dist, _ = dijkstra(n, adj, w, root, vertex_ok=piece.__contains__)
        off = Fraction(rng.randrange(1024), 1024) * band
        rings: dict = {}
        for x in piece:
            rings.setdefault(math.floor((dist[x] + off) / band), set()).add(x)
        for ring in rings.values():
            out.extend(_split_components(adj, ring))
    return out


def _split_components(adj, verts):
    left = set(verts)
    comps = []
    while left:
        s = left.pop()
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if y in left:
                    left.discard(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def _weak_diameter(D: np.ndarray, block) -> int:
    idx = sorted(block)
    return int(D[np.ix_(idx, idx)].max()) if len(idx) > 1 else 0


def _carve(D, block, delta, rng):
    """Cut a block into balls of radius in [delta/4, delta/2) (ambient metric)."""
    left = set(block)
    out = []
    while left:
        c = min(left)
        r = delta / 4 + Fraction(rng.randrange(1024), 4096) * delta
        ball = frozenset(x for x in left if D[c, x] <= r)
        out.append(ball)
        left -= ball
    return out


def _partitions(G: PlanarGraph, w, D: np.ndarray, delta: Fraction, samples: int, rng):
    """Yield lists of blocks (frozensets of vertex ids); all in integer units."""
    n = G.n
    adj = G.adjacency
    band = delta / 6
    comps = _split_components(adj, range(n))
    # a component that is already small enough stays whole
    whole = [c for c in comps if _weak_diameter(D, c) <= delta]
    rest = [c for c in comps if _weak_diameter(D, c) > delta]
    for _ in range(samples):
        pieces = list(rest)
        for _ in range(3):
            pieces = _chop(n, adj, w, pieces, band, rng)
        blocks = list(whole)
        for b in pieces:
            if _weak_diameter(D, b) > delta:
                blocks.extend(_carve(D, b, delta, rng))
            else:
                blocks.append(b)
        yield blocks


def _int_matrix(dist) -> np.ndarray:
    big = max(max(x for x in row if x is not None) for row in dist.raw)
    return np.array(dist.raw, dtype=np.int64 if big < 2**62 else object)


def kpr_partition(G: PlanarGraph, lengths, delta, config: KprConfig | None = None,
                  samples: int | None = None) -> list[LipschitzPartitionSample]:
    """Sample partitions whose blocks have weak diameter at most ``delta``."""
    config = config or KprConfig()
    delta = as_fraction(delta)
    if delta <= 0:
        raise ParamsInvalid("delta must be positive")
    k = samples or config.samples
    dist = shortest_path_metric(G, lengths)
    D = _int_matrix(dist)
    rng = random.Random(f"kpr:{config.seed}")
    mu = Fraction(1, k)
    return [LipschitzPartitionSample(tuple(sorted(bs, key=min)), mu, delta)
            for bs in _partitions(G, dist.w, D, delta * dist.scale, k, rng)]


def separation_profile(samples: Sequence[LipschitzPartitionSample], G: PlanarGraph, lengths):
    """Worst ratio (empirical separation frequency) / (d/Delta) over vertex pairs."""
    dist = shortest_path_metric(G, lengths)
    freq = np.zeros((G.n, G.n))
    for s in samples:
        lab = np.zeros(G.n, dtype=np.int64)
        for i, b in enumerate(s.blocks):
            lab[list(b)] = i
        freq += float(s.mu) * (lab[:, None] != lab[None, :])
    worst = 0.0
    for u in range(G.n):
        for v in range(u + 1, G.n):
            d = dist(u, v)
            if d > 0 and freq[u, v] > 0:
                worst = max(worst, freq[u, v] * float(samples[0].delta / d))
    return freq, worst


def calibrate_c_impl(instances, samples: int = 200, seed: int = 0) -> float:
    """Largest separation ratio over a suite of (G, lengths) at several scales."""
    worst = 0.0
    for G, lengths in instances:
        diam = max(max(r) for r in shortest_path_metric(G, lengths).matrix())
        for k in range(0, 4):
            delta = Fraction(diam) / 2**k
            if delta <= 0:
                continue
            S = kpr_partition(G, lengths, delta, KprConfig(seed=seed), samples)
            worst = max(worst, separation_profile(S, G, lengths)[1])
    return worst


# -- single source ---------------------------------------------------------------------

@dataclass
class ScaleInfo:
    """Diagnostics for one scale i (Delta = 2^(i-1))."""

    i: int
    delta: Fraction
    live_edges: tuple
    claim_range: tuple | None  # (min, max) of d_Gi/d_G over the scale's pairs
    cuts: int = 0


@dataclass
class SingleSourceAudit:
    scales: list = field(default_factory=list)
    ring_factor: Fraction = Fraction(3)


def through_pairs(G: PlanarGraph, lengths, v: int) -> list[tuple[int, int]]:
    """Pairs (s, t), s < t, with a shortest path through v."""
    dist = shortest_path_metric(G, lengths)
    R = dist.raw
    return [(s, t) for s in range(G.n) for t in range(s + 1, G.n) if R[s][t] == R[v][s] + R[v][t]]


def _band(x: Fraction) -> int:
    """The i with 2^i <= x < 2^(i+1), for x > 0."""
    i = x.numerator.bit_length() - x.denominator.bit_length()
    while Fraction(2) ** i > x:
        i -= 1
    while Fraction(2) ** (i + 1) <= x:
        i += 1
    return i


def _scale_range(dv):
    pos = [x for x in dv if x > 0]
    if not pos:
        return range(0)
    return range(_band(min(pos)), _band(max(pos)) + 1)


def single_source_embed(G: PlanarGraph, lengths, v: int, config: KprConfig | None = None,
                        audit: SingleSourceAudit | None = None):
    """Cut collection with expansion <= 1 on edges that keeps every through-``v``
    pair within ``beta = 96 * c_impl``.  Returns ``(C, beta)``."""
    config = config or KprConfig()
    lengths = tuple(as_fraction(x) for x in lengths)
    dist = shortest_path_metric(G, lengths)
    n = G.n
    ground = range(n)
    dv = [dist(v, x) for x in range(n)]
    if n <= 1:
        return CutCollection.empty(ground), config.beta
    items = []
    scale_infos = []
    pairs_by_scale: dict = {}
    for s, t in through_pairs(G, lengths, v):
        if dv[s] == dv[t] and dv[s] > 0:
            i = _band(dv[s])
            pairs_by_scale.setdefault(i, []).append((s, t))
            if dv[s] == Fraction(2) ** i:
                # on the boundary of two bands: it belongs to both
                pairs_by_scale.setdefault(i - 1, []).append((s, t))
    for i in _scale_range(dv):
        delta = Fraction(2) ** (i - 1)
        P = {x for x in ground if dv[x] <= Fraction(2) ** (i - 1)}
        Q = {x for x in ground if dv[x] > Fraction(2) ** (i + 3)}
        li = tuple(Fraction(0) if (a in P and b in P) or (a in Q and b in Q) else lengths[e]
                   for e, (a, b) in enumerate(G.edges))
        live = tuple(e for e in range(G.m) if li[e] != 0)
        di = shortest_path_metric(G, li)
        claim = None
        tp = pairs_by_scale.get(i, [])
        if tp:
            ratios = [di(s, t) / dist(s, t) for s, t in tp]
            claim = (min(ratios), max(ratios))
        D = _int_matrix(di)
        rng = random.Random(f"scale:{config.seed}:{i}")
        w_cut = delta / (config.samples * config.c_impl)
        k = 0
        for blocks in _partitions(G, di.w, D, delta * di.scale, config.samples, rng):
            if len(blocks) > 1:
                items.extend((b, w_cut) for b in blocks)
                k += len(blocks)
        scale_infos.append(ScaleInfo(i, delta, live, claim, k))
    C = CutCollection.build(ground, items).normalized()
    # ring factor r: 3 in the ideal analysis; raised if the sampled families
    # stretch some edge by more than that
    r = Fraction(3)
    if C.cuts:
        M = C.delta_matrix()
        for e, (a, b) in enumerate(G.edges):
            if lengths[e] == 0:
                continue
            r = max(r, M(a, b) / lengths[e])
    order = sorted(ground, key=lambda x: (dv[x], x))
    rings = []
    for k in range(1, n):
        gap = dv[order[k]] - dv[order[k - 1]]
        if gap:
            rings.append((frozenset(order[:k]), r * gap))
    out = CutCollection.build(ground, list(C) + rings).scale(Fraction(1) / (2 * r))
    if audit is not None:
        audit.scales = scale_infos
        audit.ring_factor = r
    return out, config.beta
