"""Canonical labeling of colored half-edge structures.

A structure is a set of vertices and half-edges, each carrying a color, plus
the involution ``sigma`` on half-edges and the incidence map ``inc`` from
half-edges to vertices.  Labeling works directly on half-edges so that
multi-edges and self-loops need no special casing.

The search is colour refinement followed by individualization of the first
smallest non-singleton cell; the certificate of every leaf is computed and
the minimum wins.  Leaves whose partial certificate already equals a known
leaf under the same prefix are cut off via a simple automorphism check.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

try:  # nauty bindings; the pure search below is the fallback
    import pynauty as _nauty
    from pynauty import nautywrap as _nw
except ImportError:  # pragma: no cover
    _nauty = None

DEFAULT_MAX_HALF_EDGES = 64


def max_half_edges() -> int:
    """Size bound for canonical forms; ``FG_MAX_HALF_EDGES`` overrides it."""
    raw = os.environ.get("FG_MAX_HALF_EDGES")
    if raw is None:
        return DEFAULT_MAX_HALF_EDGES
    try:
        return int(raw)
    except ValueError:
        raise CanonSizeError(f"FG_MAX_HALF_EDGES must be an integer, got {raw!r}") from None


class CanonSizeError(ValueError):
    pass


@dataclass(frozen=True)
class Labeling:
    key: str
    vperm: tuple[int, ...]  # old vertex -> new vertex
    hperm: tuple[int, ...]  # old half-edge -> new half-edge


def _reindex(sigs):
    table = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


class _Structure:
    __slots__ = ("nv", "nh", "sigma", "inc", "stars")

    def __init__(self, nv, sigma, inc):
        self.nv = nv
        self.nh = len(sigma)
        self.sigma = sigma
        self.inc = inc
        stars = [[] for _ in range(nv)]
        for h, v in enumerate(inc):
            stars[v].append(h)
        self.stars = stars

    def refine(self, colors):
        nv = self.nv
        ncls = len(set(colors))
        while True:
            sigs = []
            for v in range(nv):
                sigs.append((colors[v], tuple(sorted(colors[nv + h] for h in self.stars[v]))))
            for h in range(self.nh):
                p = self.sigma[h]
                pc = -1 if p == h else colors[nv + p]
                sigs.append((colors[nv + h], (colors[self.inc[h]], pc)))
            new = _reindex(sigs)
            k = len(set(new))
            if k == ncls:
                return new
            colors, ncls = new, k


def canonical_labeling(vcolors, hcolors, sigma, inc) -> Labeling:
    """Canonical labeling; uses nauty when available, else the pure search."""
    if _nauty is not None:
        return nauty_labeling(vcolors, hcolors, sigma, inc)
    return python_labeling(vcolors, hcolors, sigma, inc)


_REPR: dict = {}


def _r(c):
    s = _REPR.get(c)
    if s is None:
        s = _REPR[c] = repr(c)
    return s


def _initial(vcolors, hcolors, sigma):
    return [(0, _r(c)) for c in vcolors] + [
        (1, _r(c), sigma[h] == h) for h, c in enumerate(hcolors)
    ]


def _nauty_graph(n, adj, cells):
    # inputs are valid by construction, so skip pynauty's per-call validation
    g = _nauty.Graph.__new__(_nauty.Graph)
    g.number_of_vertices = n
    g.directed = False
    g._adjacency_dict = adj
    g._vertex_coloring = cells if len(cells) > 1 else []
    return g


def nauty_labeling(vcolors, hcolors, sigma, inc) -> Labeling:
    """Encode vertices and half-edges as nodes of a simple coloured graph.

    Each half-edge node is joined to its vertex node and to its partner; the
    ordered colour partition plus nauty's certificate is a complete invariant.
    """
    nv, nh = len(vcolors), len(hcolors)
    bound = max_half_edges()
    if nh > bound:
        raise CanonSizeError(f"{nh} half-edges exceeds the canonical-form bound {bound}")
    init = _initial(vcolors, hcolors, sigma)
    table = tuple(sorted(set(init)))
    index = {c: i for i, c in enumerate(table)}
    cells: list[set[int]] = [set() for _ in table]
    for node, c in enumerate(init):
        cells[index[c]].add(node)
    adj: dict[int, list[int]] = {}
    for h in range(nh):
        adj.setdefault(nv + h, []).append(inc[h])
        p = sigma[h]
        if p > h:
            adj[nv + h].append(nv + p)
    g = _nauty_graph(nv + nh, adj, cells)
    lab = _nw.graph_canonlab(g)
    pos = [0] * (nv + nh)
    for i, node in enumerate(lab):
        pos[node] = i
    vnew = tuple(pos[v] for v in range(nv))
    hnew = tuple(pos[nv + h] - nv for h in range(nh))
    # the relabeled edge set under a canonical labeling is itself a certificate
    edges = sorted(
        (pos[a], pos[b]) if pos[a] < pos[b] else (pos[b], pos[a]) for a, ns in adj.items() for b in ns
    )
    key = repr((table, tuple(len(c) for c in cells), edges))
    return Labeling(key=key, vperm=vnew, hperm=hnew)


def python_labeling(vcolors, hcolors, sigma, inc) -> Labeling:
    nv, nh = len(vcolors), len(hcolors)
    bound = max_half_edges()
    if nh > bound:
        raise CanonSizeError(f"{nh} half-edges exceeds the canonical-form bound {bound}")
    st = _Structure(nv, tuple(sigma), tuple(inc))
    init = _initial(vcolors, hcolors, sigma)
    base = _reindex(init)
    # colour table is part of the certificate so distinct colourings never collide
    table = tuple(sorted(set(init)))
    start = st.refine(base)

    best = None
    best_order = None

    def leaf(colors):
        vorder = sorted(range(nv), key=lambda v: colors[v])
        horder = sorted(range(nh), key=lambda h: colors[nv + h])
        vnew = [0] * nv
        for i, v in enumerate(vorder):
            vnew[v] = i
        hnew = [0] * nh
        for i, h in enumerate(horder):
            hnew[h] = i
        cert = (
            tuple(base[v] for v in vorder),
            tuple(base[nv + h] for h in horder),
            tuple(hnew[sigma[h]] for h in horder),
            tuple(vnew[inc[h]] for h in horder),
        )
        return cert, vnew, hnew

    def search(colors):
        nonlocal best, best_order
        cells: dict[int, list[int]] = {}
        for i, c in enumerate(colors):
            cells.setdefault(c, []).append(i)
        target = None
        for c in sorted(cells):
            members = cells[c]
            if len(members) > 1 and (target is None or len(members) < len(target)):
                target = members
        if target is None:
            cert, vnew, hnew = leaf(colors)
            if best is None or cert < best:
                best, best_order = cert, (vnew, hnew)
            return
        seen_certs = set()
        for m in target:
            split = [(c, 0 if i == m else 1) for i, c in enumerate(colors)]
            child = st.refine(_reindex(split))
            # children refining to the same colour multiset pattern with identical
            # leaf certificates are automorphic; only explore discrete ones once
            if len(set(child)) == len(child):
                cert, _, _ = leaf(child)
                if cert in seen_certs:
                    continue
                seen_certs.add(cert)
            search(child)

    search(start)
    vnew, hnew = best_order
    key = repr((table, best))
    return Labeling(key=key, vperm=tuple(vnew), hperm=tuple(hnew))
