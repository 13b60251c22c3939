"""Half-edge graphs: connectivity, loop number, 1PI tests, covering subgraphs,
contraction and canonical forms.

A graph is the data ``(V, E, sigma, incidence)``.  Vertices carry only their
specification index; the vertex *type* is read off the multiset of half-edge
types in the star through the theory.  Fixed points of ``sigma`` are external
legs.  A covering subgraph is identified by the set of internal pairs it keeps;
a pair is named by its smaller half-edge index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Any, Iterable, Mapping

from .canon import Labeling, canonical_labeling
from .theory import Signature, Theory, signature_of

MAX_INTERNAL_EDGES = 20


class GraphError(ValueError):
    pass


class NotInTheory(GraphError):
    """A contraction produced a vertex whose star the theory does not admit."""


@dataclass(frozen=True)
class Graph:
    vspec: tuple[int, ...]
    types: tuple[str, ...]
    sigma: tuple[int, ...]
    incidence: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vspec)

    @property
    def n_half_edges(self) -> int:
        return len(self.types)

    @cached_property
    def stars(self) -> tuple[tuple[int, ...], ...]:
        st = [[] for _ in self.vspec]
        for h, v in enumerate(self.incidence):
            st[v].append(h)
        return tuple(tuple(s) for s in st)

    def star(self, v: int) -> tuple[int, ...]:
        return self.stars[v]

    def signature(self, v: int) -> Signature:
        return signature_of(self.types[h] for h in self.stars[v])

    def kind(self, v: int) -> tuple[Signature, int]:
        return self.signature(v), self.vspec[v]

    @cached_property
    def internal_pairs(self) -> tuple[int, ...]:
        """Internal edges, each named by its smaller half-edge."""
        return tuple(h for h, p in enumerate(self.sigma) if h < p)

    @cached_property
    def external(self) -> tuple[int, ...]:
        return tuple(h for h, p in enumerate(self.sigma) if h == p)

    def ext_signature(self) -> Signature:
        return signature_of(self.types[h] for h in self.external)

    def components(self, kept: Iterable[int] | None = None) -> list[list[int]]:
        """Vertex sets of the connected components, ordered by smallest vertex.

        With ``kept`` given, only those internal pairs count as edges.
        """
        pairs = self.internal_pairs if kept is None else kept
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h in pairs:
            a, b = find(self.incidence[h]), find(self.incidence[self.sigma[h]])
            if a != b:
                parent[max(a, b)] = min(a, b)
        comps: dict[int, list[int]] = {}
        for v in range(self.n_vertices):
            comps.setdefault(find(v), []).append(v)
        return sorted(comps.values(), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def loop_number(self) -> int:
        return len(self.internal_pairs) - self.n_vertices + len(self.components())

    def is_1pi(self) -> bool:
        if not self.is_connected():
            return False
        return _bridgeless(self, self.internal_pairs)

    def is_locally_1pi(self) -> bool:
        return _bridgeless(self, self.internal_pairs)

    def covering(self, kept: Iterable[int]) -> "Graph":
        """Realize the covering subgraph keeping the given internal pairs."""
        kept = set(kept)
        sigma = list(range(self.n_half_edges))
        for h in kept:
            p = self.sigma[h]
            sigma[h], sigma[p] = p, h
        return Graph(self.vspec, self.types, tuple(sigma), self.incidence)

    def relabel(self, vperm, hperm) -> "Graph":
        nv, nh = self.n_vertices, self.n_half_edges
        vspec = [0] * nv
        for v, nvx in enumerate(vperm):
            vspec[nvx] = self.vspec[v]
        types = [""] * nh
        sigma = [0] * nh
        inc = [0] * nh
        for h, nhx in enumerate(hperm):
            types[nhx] = self.types[h]
            sigma[nhx] = hperm[self.sigma[h]]
            inc[nhx] = vperm[self.incidence[h]]
        return Graph(tuple(vspec), tuple(types), tuple(sigma), tuple(inc))

    def disjoint_union(self, other: "Graph") -> "Graph":
        nv, nh = self.n_vertices, self.n_half_edges
        return Graph(
            self.vspec + other.vspec,
            self.types + other.types,
            self.sigma + tuple(p + nh for p in other.sigma),
            self.incidence + tuple(v + nv for v in other.incidence),
        )

    def subgraph_on(self, vertices: Iterable[int]) -> tuple["Graph", list[int], list[int]]:
        """Induced piece on a vertex set; edges leaving the set become external.

        Returns the graph and the old indices of its vertices and half-edges.
        """
        vs = sorted(vertices)
        vmap = {v: i for i, v in enumerate(vs)}
        hs = [h for h in range(self.n_half_edges) if self.incidence[h] in vmap]
        hmap = {h: i for i, h in enumerate(hs)}
        sigma = tuple(hmap.get(self.sigma[h], hmap[h]) for h in hs)
        g = Graph(
            tuple(self.vspec[v] for v in vs),
            tuple(self.types[h] for h in hs),
            sigma,
            tuple(vmap[self.incidence[h]] for h in hs),
        )
        return g, vs, hs

    def to_json(self) -> dict[str, Any]:
        return {
            "vertices": self.n_vertices,
            "vertex_specs": list(self.vspec),
            "half_edges": [{"type": t} for t in self.types],
            "sigma": list(self.sigma),
            "incidence": list(self.incidence),
        }


def _bridgeless(g: Graph, pairs) -> bool:
    base = len(g.components(pairs))
    for h in pairs:
        rest = [p for p in pairs if p != h]
        if len(g.components(rest)) != base:
            return False
    return True


def validate(raw: Mapping[str, Any] | Graph, theory: Theory) -> Graph:
    """Check a graph description against the half-edge model and the theory."""
    if isinstance(raw, Graph):
        g = raw
    else:
        try:
            n = int(raw["vertices"])
            types = tuple(str(h["type"]) for h in raw["half_edges"])
            sigma = tuple(int(x) for x in raw["sigma"])
            inc = tuple(int(x) for x in raw["incidence"])
            specs = raw.get("vertex_specs")
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph description: {exc!r}") from exc
        if len(sigma) != len(types) or len(inc) != len(types):
            raise GraphError("half_edges, sigma and incidence differ in length")
        if any(not 0 <= v < n for v in inc):
            raise GraphError("incidence refers to a missing vertex")
        if any(not 0 <= p < len(types) for p in sigma):
            raise GraphError("sigma refers to a missing half-edge")
        if specs is None:
            stars = [[] for _ in range(n)]
            for h, v in enumerate(inc):
                stars[v].append(types[h])
            specs = []
            for s in stars:
                allowed = theory.allowed_specs(s)
                specs.append(allowed[0] if allowed else 0)
        if len(specs) != n:
            raise GraphError("vertex_specs length differs from vertex count")
        g = Graph(tuple(int(k) for k in specs), types, sigma, inc)
    for h, p in enumerate(g.sigma):
        if g.sigma[p] != h:
            raise GraphError(f"sigma is not an involution at half-edge {h}")
        if p != h and not theory.can_pair(g.types[h], g.types[p]):
            raise GraphError(
                f"sigma joins half-edges of types {g.types[h]!r} and {g.types[p]!r}"
            )
    for v in range(g.n_vertices):
        if not theory.admits(g.signature(v), g.vspec[v]):
            raise GraphError(
                f"vertex {v} with star {g.signature(v)} and spec {g.vspec[v]} is not in theory {theory.name}"
            )
    return g


def connected_components(g: Graph) -> list[list[int]]:
    return g.components()


def loop_number(g: Graph) -> int:
    return g.loop_number()


def is_1PI(g: Graph) -> bool:
    return g.is_1pi()


def is_locally_1PI(g: Graph) -> bool:
    return g.is_locally_1pi()


@dataclass(frozen=True)
class CoveringSubgraph:
    parent: Graph
    kept: frozenset[int]

    def as_graph(self) -> Graph:
        return self.parent.covering(self.kept)

    def components(self) -> list[list[int]]:
        return self.parent.components(self.kept)

    def loop_number(self) -> int:
        return len(self.kept) - self.parent.n_vertices + len(self.components())


def covering_subgraphs(g: Graph, bound: int = MAX_INTERNAL_EDGES) -> list[CoveringSubgraph]:
    pairs = g.internal_pairs
    if len(pairs) > bound:
        raise GraphError(f"{len(pairs)} internal edges exceeds the enumeration bound {bound}")
    out = []
    for r in range(len(pairs) + 1):
        for kept in combinations(pairs, r):
            out.append(CoveringSubgraph(g, frozenset(kept)))
    return out


def full_covering(g: Graph) -> CoveringSubgraph:
    return CoveringSubgraph(g, frozenset(g.internal_pairs))


@dataclass(frozen=True)
class Contraction:
    graph: Graph
    vmap: tuple[int, ...]  # old vertex -> new vertex
    hmap: tuple[int | None, ...]  # old half-edge -> new half-edge (None if contracted)
    comps: tuple[tuple[int, ...], ...]  # subgraph components, indexed like new vertices


def contract_map(
    g: Graph,
    kept: Iterable[int],
    theory: Theory | None = None,
    specs: Mapping[int, int] | None = None,
) -> Contraction:
    """Shrink each component of the covering subgraph to one vertex.

    ``specs`` maps component index (in ``g.components(kept)`` order) to the
    specification of the resulting vertex; single-vertex components keep
    their own.  Unspecified non-trivial components get the smallest spec the
    theory allows.
    """
    kept = frozenset(kept)
    comps = g.components(kept)
    vmap = [0] * g.n_vertices
    for i, c in enumerate(comps):
        for v in c:
            vmap[v] = i
    dropped = set()
    for h in kept:
        dropped.add(h)
        dropped.add(g.sigma[h])
    survivors = [h for h in range(g.n_half_edges) if h not in dropped]
    hmap: list[int | None] = [None] * g.n_half_edges
    for i, h in enumerate(survivors):
        hmap[h] = i
    types = tuple(g.types[h] for h in survivors)
    sigma = tuple(hmap[g.sigma[h]] for h in survivors)
    inc = tuple(vmap[g.incidence[h]] for h in survivors)
    vspec = []
    for i, c in enumerate(comps):
        sig = signature_of(types[j] for j in range(len(survivors)) if inc[j] == i)
        if len(c) == 1 and not any(g.incidence[h] == c[0] for h in kept):
            k = g.vspec[c[0]]
        elif specs is not None and i in specs:
            k = specs[i]
        elif theory is not None:
            allowed = theory.allowed_specs(sig)
            if not allowed:
                raise NotInTheory(f"contracted star {sig} is not a vertex of {theory.name}")
            k = allowed[0]
        else:
            k = 0
        if theory is not None and not theory.admits(sig, k):
            raise NotInTheory(f"contracted vertex {sig} with spec {k} is not in {theory.name}")
        vspec.append(k)
    new = Graph(tuple(vspec), types, sigma, inc)
    return Contraction(new, tuple(vmap), tuple(hmap), tuple(tuple(c) for c in comps))


def contract(g: Graph, sub: CoveringSubgraph, theory: Theory | None = None, specs=None) -> Graph:
    if sub.parent != g:
        raise GraphError("covering subgraph belongs to another graph")
    return contract_map(g, sub.kept, theory, specs).graph


def residue(g: Graph, theory: Theory | None = None, specs=None) -> Graph:
    return contract(g, full_covering(g), theory, specs)


def skeleton(g: Graph) -> Graph:
    return g.covering(())


@lru_cache(maxsize=200_000)
def _labeling(g: Graph, vextra, hextra) -> Labeling:
    vcol = [(k,) if vextra is None else (k, vextra[v]) for v, k in enumerate(g.vspec)]
    hcol = [(t,) if hextra is None else (t, hextra[h]) for h, t in enumerate(g.types)]
    return canonical_labeling(vcol, hcol, g.sigma, g.incidence)


def labeling(g: Graph, vextra=None, hextra=None) -> Labeling:
    """Canonical labeling, optionally with extra per-vertex / per-half-edge colours."""
    return _labeling(
        g,
        None if vextra is None else tuple(vextra),
        None if hextra is None else tuple(hextra),
    )


def canon(g: Graph) -> str:
    """Isomorphism-invariant key of a (possibly disconnected) graph."""
    comps = g.components()
    if len(comps) == 1 or not comps:
        return labeling(g).key
    keys = sorted(labeling(g.subgraph_on(c)[0]).key for c in comps)
    return "+".join(keys)


def canonical_form(g: Graph) -> Graph:
    lab = labeling(g)
    return g.relabel(lab.vperm, lab.hperm)


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    return canon(g1) == canon(g2)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(g.n_vertices):
        lines.append(f'  v{v} [label="{g.vspec[v]}"];')
    for h in g.internal_pairs:
        p = g.sigma[h]
        style = ' [style=dashed]' if g.types[h] != g.types[0] else ""
        lines.append(f"  v{g.incidence[h]} -- v{g.incidence[p]}{style};")
    for h in g.external:
        lines.append(f'  e{h} [shape=point, label=""];')
        lines.append(f'  v{g.incidence[h]} -- e{h} [label="{g.types[h]}"];')
    lines.append("}")
    return "\n".join(lines)


def from_edges(vspec, edges, legs) -> Graph:
    """Build a graph from ``edges`` = [(u, v, type) or (u, v, type_u, type_v)]
    and external ``legs`` = [(v, type)]."""
    types: list[str] = []
    sigma: list[int] = []
    inc: list[int] = []
    for e in edges:
        u, w = e[0], e[1]
        tu = e[2]
        tw = e[3] if len(e) > 3 else tu
        h = len(types)
        types += [tu, tw]
        sigma += [h + 1, h]
        inc += [u, w]
    for v, t in legs:
        h = len(types)
        types.append(t)
        sigma.append(h)
        inc.append(v)
    return Graph(tuple(vspec), tuple(types), tuple(sigma), tuple(inc))
