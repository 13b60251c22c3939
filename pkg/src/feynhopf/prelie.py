"""Insertion of specified graphs at vertices, with its bracket and law checks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .algebra import LinComb
from .graph import Graph
from .specified import SpecifiedGraph, specified


@dataclass(frozen=True)
class Gluing:
    """Result of replacing vertex ``v`` of the target by the inserted graph.

    ``xv``/``xh`` map vertices/half-edges of the inserted graph into the
    result; ``yv``/``yh`` do the same for the target (``None`` for ``v`` and
    its star).
    """

    graph: Graph
    xv: tuple[int, ...]
    xh: tuple[int, ...]
    yv: tuple[int | None, ...]
    yh: tuple[int | None, ...]
    bijection: tuple[tuple[int, int], ...]  # (ext half-edge of x, star half-edge of v)


def bijections(x: Graph, y: Graph, v: int):
    """Type-preserving bijections Ext(x) -> st(v), as tuples of pairs."""
    ext = x.external
    star = y.star(v)
    if len(ext) != len(star):
        return []
    by_type_x: dict[str, list[int]] = {}
    by_type_s: dict[str, list[int]] = {}
    for e in ext:
        by_type_x.setdefault(x.types[e], []).append(e)
    for h in star:
        by_type_s.setdefault(y.types[h], []).append(h)
    if {t: len(l) for t, l in by_type_x.items()} != {t: len(l) for t, l in by_type_s.items()}:
        return []
    per_type = []
    for t in sorted(by_type_x):
        xs = by_type_x[t]
        per_type.append([tuple(zip(xs, perm)) for perm in permutations(by_type_s[t])])
    return [tuple(p for block in combo for p in block) for combo in product(*per_type)]


def glue(x: Graph, y: Graph, v: int, bij) -> Gluing:
    nx, nhx = x.n_vertices, x.n_half_edges
    f = dict(bij)
    finv = {h: e for e, h in bij}
    star = set(y.star(v))
    yv: list[int | None] = []
    k = nx
    for w in range(y.n_vertices):
        if w == v:
            yv.append(None)
        else:
            yv.append(k)
            k += 1
    yh: list[int | None] = []
    k = nhx
    for h in range(y.n_half_edges):
        if h in star:
            yh.append(None)
        else:
            yh.append(k)
            k += 1
    total = k
    sigma = [0] * total
    types = [""] * total
    inc = [0] * total
    for e in range(nhx):
        types[e] = x.types[e]
        inc[e] = x.incidence[e]
        p = x.sigma[e]
        if p != e:
            sigma[e] = p
            continue
        h = f[e]
        hp = y.sigma[h]
        if hp == h:
            sigma[e] = e
        elif hp in star:
            sigma[e] = finv[hp]
        else:
            sigma[e] = yh[hp]
    for h in range(y.n_half_edges):
        nh = yh[h]
        if nh is None:
            continue
        types[nh] = y.types[h]
        inc[nh] = yv[y.incidence[h]]
        hp = y.sigma[h]
        if hp in star:
            sigma[nh] = finv[hp]
        else:
            sigma[nh] = yh[hp]
    vspec = x.vspec + tuple(y.vspec[w] for w in range(y.n_vertices) if w != v)
    g = Graph(vspec, tuple(types), tuple(sigma), tuple(inc))
    return Gluing(g, tuple(range(nx)), tuple(range(nhx)), tuple(yv), tuple(yh), tuple(bij))


def matches(x: SpecifiedGraph, y: Graph, v: int) -> bool:
    """Whether vertex ``v`` is of the type obtained by contracting ``x``."""
    return y.kind(v) == x.residue_kind()


def gluings_at(x: SpecifiedGraph, y: Graph, v: int):
    if not matches(x, y, v):
        return []
    return [glue(x.graph, y, v, b) for b in bijections(x.graph, y, v)]


@lru_cache(maxsize=200_000)
def _insert_at(x: SpecifiedGraph, v: int, yg: Graph, yspec: int) -> LinComb:
    # keyed on the raw target graph since ``v`` indexes its vertices
    return LinComb.from_pairs(
        (specified(gl.graph, yspec), 1) for gl in gluings_at(x, yg, v)
    )


def insert_at(x: SpecifiedGraph, v: int, y: SpecifiedGraph) -> LinComb:
    """Insert ``x`` at vertex ``v`` of ``y``; zero unless v's type is res x."""
    return _insert_at(x, v, y.graph, y.spec[0])


@lru_cache(maxsize=200_000)
def _insert(x: SpecifiedGraph, y: SpecifiedGraph) -> LinComb:
    return LinComb.sum(insert_at(x, v, y) for v in range(y.graph.n_vertices))


def insert(x, y) -> LinComb:
    """The insertion product, bilinear in both arguments."""
    xs = x if isinstance(x, LinComb) else LinComb.of(x)
    ys = y if isinstance(y, LinComb) else LinComb.of(y)
    return xs.bimap(ys, _insert)


def bracket(a, b) -> LinComb:
    return insert(a, b) - insert(b, a)


def associator(product, x, y, z) -> LinComb:
    return product(product(x, y), z) - product(x, product(y, z))


def check_prelie(a, b, c, product=insert) -> bool:
    return associator(product, a, b, c) == associator(product, b, a, c)


def check_jacobi(a, b, c) -> bool:
    total = (
        bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    )
    return not total
