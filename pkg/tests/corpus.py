"""Shared instances and independent oracles for the test-suite.

The oracles deliberately avoid the package's own metric code: shortest paths
come from networkx, cut distances are summed cut by cut.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx

from planemb.harness import (_from_drawing, gen_grid, gen_k23_golden, gen_nested_shortcut,
                             gen_random_planar)
from planemb.planar import Demand


def pocket():
    """Unit square a,b,c,d with two long a-c detours x, y drawn inside it.

    The face between the detours is far from geodesic and its support is a
    small disk, which sends the pipeline through its extension branch."""
    L = 10**5
    pos = [(-2, 0), (0, 2), (2, 0), (0, -2), (0, 1), (0, -1)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2), (0, 5), (5, 2)]
    lengths = [1, 1, 1, 1, L, L, L, L]
    dem = [Demand(0, 2, Fraction(1)), Demand(1, 3, Fraction(1))]
    return _from_drawing(6, edges, pos, lengths, dem, "pocket", outer=[0, 1, 2, 3])


def star(k: int):
    import math
    pos = [(0.0, 0.0)] + [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)]
    edges = [(0, i + 1) for i in range(k)]
    return _from_drawing(k + 1, edges, pos, [1 + (i % 3) for i in range(k)], [], f"star-{k}")


def suite():
    """The end-to-end instance suite."""
    out = [gen_k23_golden()]
    out += [gen_grid(r, r, seed=r) for r in (3, 4, 5)]
    out += [gen_random_planar(n, seed=s) for n, s in ((8, 0), (10, 1), (12, 2), (14, 3), (14, 4), (14, 5))]
    out += [gen_nested_shortcut(d, seed=d) for d in (1, 2, 3)]
    out.append(pocket())
    return out


# -- oracles ----------------------------------------------------------------------

def nx_graph(G, lengths) -> nx.Graph:
    H = nx.MultiGraph()
    H.add_nodes_from(range(G.n))
    for (u, v), l in zip(G.edges, lengths):
        H.add_edge(u, v, weight=Fraction(l))
    return H


def oracle_distances(G, lengths) -> dict:
    """All-pairs distances, exact, from networkx Dijkstra over Fractions."""
    H = nx_graph(G, lengths)
    return {u: dict(d) for u, d in nx.all_pairs_dijkstra_path_length(H, weight="weight")}


def oracle_delta(C):
    """delta(u, v) summed cut by cut (no matrices)."""
    cuts = [(frozenset(X), w) for X, w in C]

    def delta(u, v):
        return sum((w for X, w in cuts if (u in X) != (v in X)), Fraction(0))
    return delta


def same_face_pairs(G):
    pairs = set()
    for f in range(G.num_faces):
        vs = sorted(set(G.face_vertices(f)))
        pairs.update(itertools.combinations(vs, 2))
    return sorted(pairs)


def brute_cut_condition(G, capacities, demands) -> bool:
    """Every vertex subset (not just central ones): capacity >= demand."""
    n = G.n
    for mask in range(1, 2 ** (n - 1)):
        S = {x for x in range(n) if mask >> x & 1}
        cap = sum((Fraction(c) for c, (a, b) in zip(capacities, G.edges) if (a in S) != (b in S)), Fraction(0))
        dem = sum((d.value for d in demands if (d.u in S) != (d.v in S)), Fraction(0))
        if cap < dem:
            return False
    return True
