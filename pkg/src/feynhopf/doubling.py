"""Pairs ``(Γ̄, γ̄)``: the doubling bialgebra, the product ⊙, the action →
and the projection P₂.

A pair stores its outer connected specified graph, the set of internal pairs
kept by the inner covering subgraph, and one inner specification value per
vertex (the spec of the inner component holding the vertex).  Storing the
inner spec per vertex makes it a vertex colour, so pairs canonicalize through
the same labeling machinery as graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Iterable, Mapping

from .algebra import UNIT, LinComb, Monomial, Tensor, flatten, tensor_map, tensor_product
from .graph import NotInTheory, contract_map, labeling, validate
from .hopf import as_element, coproduct_full, reduce_mod_J
from .prelie import bijections, glue, insert
from .specified import (
    SpecificationError,
    SpecifiedGraph,
    SubgraphChoice,
    check_relation,
    from_json as sg_from_json,
    specified,
    specified_subgraphs,
)
from .theory import Theory


class PairError(SpecificationError):
    pass


@dataclass(frozen=True, eq=False)
class Pair:
    outer: SpecifiedGraph
    kept: frozenset[int]
    ispec: tuple[int, ...]

    @cached_property
    def _flags(self) -> tuple[int, ...]:
        g = self.outer.graph
        return tuple(int(h in self.kept or g.sigma[h] in self.kept) for h in range(g.n_half_edges))

    @cached_property
    def key(self) -> str:
        lab = labeling(self.outer.graph, self.ispec, self._flags)
        return f"P{self.outer.spec[0]}|{lab.key}"

    def __eq__(self, other):
        return isinstance(other, Pair) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        g = self.outer.graph
        return (
            f"Pair(V={g.n_vertices},I={len(g.internal_pairs)},i={self.outer.spec[0]},"
            f"kept={len(self.kept)},j={self.inner_specs})"
        )

    @property
    def degree(self) -> int:
        return self.outer.degree

    @property
    def inner_degree(self) -> int:
        g = self.outer.graph
        return len(self.kept) - g.n_vertices + len(self.inner_comps)

    @cached_property
    def inner_comps(self) -> list[list[int]]:
        return self.outer.graph.components(self.kept)

    @property
    def inner_specs(self) -> tuple[int, ...]:
        return tuple(self.ispec[c[0]] for c in self.inner_comps)

    def inner(self) -> SpecifiedGraph:
        return SpecifiedGraph(self.outer.graph.covering(self.kept), self.inner_specs)

    def inner_factors(self) -> tuple[SpecifiedGraph, ...]:
        g = self.outer.graph.covering(self.kept)
        return tuple(specified(g.subgraph_on(c)[0], self.ispec[c[0]]) for c in self.inner_comps)

    @cached_property
    def inner_vertices(self) -> frozenset[int]:
        """Vertices touched by a kept internal edge."""
        g = self.outer.graph
        return frozenset(g.incidence[h] for h in self.kept) | frozenset(
            g.incidence[g.sigma[h]] for h in self.kept
        )

    @cached_property
    def free_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.outer.graph.n_vertices) if v not in self.inner_vertices)

    def choice(self) -> SubgraphChoice:
        comps = self.inner_comps
        return SubgraphChoice(self.kept, tuple(tuple(c) for c in comps), self.inner_specs)

    def to_json(self) -> dict[str, Any]:
        return {
            "outer": self.outer.to_json(),
            "inner_kept_edges": sorted(self.kept),
            "inner_spec": list(self.inner_specs),
        }


@lru_cache(maxsize=200_000)
def _canonical_pair(g, spec: tuple, kept: frozenset, ispec: tuple) -> Pair:
    # keyed on the raw graph: kept and ispec refer to this labeling
    outer = SpecifiedGraph(g, spec)
    raw = Pair(outer, kept, ispec)
    lab = labeling(g, ispec, raw._flags)
    ng = g.relabel(lab.vperm, lab.hperm)
    nkept = frozenset(min(lab.hperm[h], lab.hperm[g.sigma[h]]) for h in kept)
    nis = [0] * len(ispec)
    for v, k in enumerate(ispec):
        nis[lab.vperm[v]] = k
    return Pair(SpecifiedGraph(ng, outer.spec), nkept, tuple(nis))


def pair(outer: SpecifiedGraph, kept: Iterable[int], ispec: Iterable[int]) -> Pair:
    """Canonical representative (no theory validation)."""
    return _canonical_pair(outer.graph, outer.spec, frozenset(kept), tuple(ispec))


def vertex_specs_of(outer: SpecifiedGraph, choice: SubgraphChoice) -> tuple[int, ...]:
    ispec = [0] * outer.graph.n_vertices
    for c, k in zip(choice.comps, choice.specs):
        for v in c:
            ispec[v] = k
    return tuple(ispec)


def pair_from_choice(outer: SpecifiedGraph, choice: SubgraphChoice) -> Pair:
    return pair(outer, choice.kept, vertex_specs_of(outer, choice))


def make_pair(outer: SpecifiedGraph, kept, inner_spec, theory: Theory, require_F: bool = True) -> Pair:
    """Validated pair; with ``require_F`` the quotient must lie in the theory too."""
    if len(outer.spec) != 1:
        raise PairError("the outer graph of a pair must be connected")
    kept = frozenset(int(h) for h in kept)
    g = outer.graph
    if not kept <= set(g.internal_pairs):
        raise PairError("inner_kept_edges must name internal edges by their smaller half-edge")
    specs = tuple(int(k) for k in inner_spec)
    rel = check_relation(outer, kept, specs, theory)
    if not rel.holds:
        raise PairError(rel.reason)
    if require_F:
        try:
            contract_map(g, kept, theory, dict(enumerate(specs)))
        except NotInTheory as exc:
            raise PairError(f"quotient leaves the theory: {exc}") from exc
    comps = g.components(kept)
    return pair_from_choice(outer, SubgraphChoice(kept, tuple(tuple(c) for c in comps), specs))


def pair_from_json(doc: Mapping[str, Any], theory: Theory) -> Pair:
    try:
        odoc = doc["outer"]
        kept = doc.get("inner_kept_edges", [])
        ispec = doc["inner_spec"]
    except (KeyError, TypeError) as exc:
        raise PairError(f"pair description lacks field {exc}") from exc
    sg = sg_from_json(odoc, theory)  # validates; relabels, so only its spec is reused
    # kept edges name half-edges of the given labeling, so keep it
    outer = SpecifiedGraph(validate(odoc, theory), sg.spec)
    return make_pair(outer, kept, ispec, theory)


def pairs_of(sg: SpecifiedGraph, theory: Theory) -> list[Pair]:
    """Every basis pair with outer graph ``sg``."""
    out = {}
    for ch in specified_subgraphs(sg, theory):
        try:
            contract_map(sg.graph, ch.kept, theory, dict(enumerate(ch.specs)))
        except NotInTheory:
            continue
        p = pair_from_choice(sg, ch)
        out[p.key] = p
    return [out[k] for k in sorted(out)]


def skeleton_pair(sg: SpecifiedGraph) -> Pair:
    return pair(sg, (), sg.graph.vspec)


def full_pair(sg: SpecifiedGraph) -> Pair:
    return pair(sg, sg.graph.internal_pairs, (sg.spec[0],) * sg.graph.n_vertices)


# ---------------------------------------------------------------- bialgebra


def as_pair_element(x) -> LinComb:
    if isinstance(x, LinComb):
        return x
    if isinstance(x, Pair):
        return LinComb.of(Monomial((x,)))
    if isinstance(x, Monomial):
        return LinComb.of(x)
    raise TypeError(f"cannot promote {type(x).__name__}")


def pair_product(a, b) -> LinComb:
    """Juxtaposition of pairs, extended bilinearly."""
    return as_pair_element(a).bimap(as_pair_element(b), lambda x, y: LinComb.of(x * y))


@lru_cache(maxsize=100_000)
def _dcoproduct_generator(p: Pair, theory: Theory) -> LinComb:
    outer = p.outer
    g = outer.graph
    gam = SpecifiedGraph(g.covering(p.kept), p.inner_specs)
    terms = []
    for d in specified_subgraphs(gam, theory):
        try:
            con = contract_map(g, d.kept, theory, dict(enumerate(d.specs)))
        except NotInTheory:
            continue
        left = pair_from_choice(outer, d)
        rest = p.kept - d.kept
        nkept = [min(con.hmap[h], con.hmap[g.sigma[h]]) for h in rest]
        nis = [0] * con.graph.n_vertices
        for v in range(g.n_vertices):
            nis[con.vmap[v]] = p.ispec[v]
        right = pair(SpecifiedGraph(con.graph, outer.spec), nkept, nis)
        terms.append((Tensor((Monomial((left,)), Monomial((right,)))), 1))
    return LinComb.from_pairs(terms)


def dcoproduct_monomial(mon: Monomial, theory: Theory) -> LinComb:
    acc = LinComb.of(Tensor((UNIT, UNIT)))
    for f in mon.factors:
        acc = tensor_product(acc, _dcoproduct_generator(f, theory))
    return acc


def doubling_coproduct(x, theory: Theory) -> LinComb:
    return as_pair_element(x).map(lambda mon: dcoproduct_monomial(mon, theory))


def dcounit(x) -> Any:
    """1 on pairs whose inner graph is the skeleton, 0 otherwise."""
    total = 0
    for mon, c in as_pair_element(x):
        if all(not f.kept for f in mon.factors):
            total += c
    return total


def P2(x) -> LinComb:
    """Projection onto the inner component, as an element of H̃."""

    def proj(mon: Monomial) -> LinComb:
        fs = []
        for f in mon.factors:
            fs.extend(f.inner_factors())
        return LinComb.of(Monomial(fs))

    return as_pair_element(x).map(proj)


def P2_tensor(t: LinComb) -> LinComb:
    return tensor_map(t, (P2, P2))


def free_vertices(p: Pair) -> tuple[int, ...]:
    return p.free_vertices


# ---------------------------------------------------------------- ⊙ and →


@lru_cache(maxsize=200_000)
def _odot(p: Pair, q: Pair) -> LinComb:
    x = p.outer
    y = q.outer.graph
    out = []
    for v in q.free_vertices:
        if y.kind(v) != x.residue_kind():
            continue
        for b in bijections(x.graph, y, v):
            gl = glue(x.graph, y, v, b)
            kept = {gl.xh[h] for h in p.kept}
            kept |= {min(gl.yh[h], gl.yh[y.sigma[h]]) for h in q.kept}
            ispec = p.ispec + tuple(q.ispec[w] for w in range(y.n_vertices) if w != v)
            out.append((pair(SpecifiedGraph(gl.graph, q.outer.spec), kept, ispec), 1))
    return LinComb.from_pairs(out)


def _lift(x, kind):
    if isinstance(x, LinComb):
        return x
    if isinstance(x, kind):
        return LinComb.of(x)
    raise TypeError(f"expected {kind.__name__} or LinComb, got {type(x).__name__}")


def odot(p, q) -> LinComb:
    """The doubling pre-Lie product: insert ``p.outer`` at free vertices of ``q``."""
    return _lift(p, Pair).bimap(_lift(q, Pair), _odot)


@lru_cache(maxsize=200_000)
def _act(x: SpecifiedGraph, q: Pair) -> LinComb:
    y = q.outer.graph
    marked_q = set(q.kept) | {y.sigma[h] for h in q.kept}
    out = []
    for v in sorted(q.inner_vertices):
        if y.kind(v) != x.residue_kind():
            continue
        star = set(y.star(v))
        for b in bijections(x.graph, y, v):
            gl = glue(x.graph, y, v, b)
            finv = {h: e for e, h in b}
            marked = {h for h in x.graph.internal_pairs}
            marked |= {x.graph.sigma[h] for h in x.graph.internal_pairs}
            for h in marked_q:
                marked.add(finv[h] if h in star else gl.yh[h])
            s = gl.graph.sigma
            kept = {h for h in marked if h < s[h]}
            ispec = (q.ispec[v],) * x.graph.n_vertices + tuple(
                q.ispec[w] for w in range(y.n_vertices) if w != v
            )
            out.append((pair(SpecifiedGraph(gl.graph, q.outer.spec), kept, ispec), 1))
    return LinComb.from_pairs(out)


def act(x, q) -> LinComb:
    """The action →: insert ``x`` at inner vertices, in outer and inner at once."""
    return _lift(x, SpecifiedGraph).bimap(_lift(q, Pair), _act)


@lru_cache(maxsize=200_000)
def _tri_g(x: SpecifiedGraph, q: Pair) -> LinComb:
    """Insertion into ``q.outer`` restricted to inner vertices."""
    return LinComb.from_pairs((p.outer, c) for p, c in _act(x, q))


@lru_cache(maxsize=200_000)
def _tri_free(x: SpecifiedGraph, q: Pair) -> LinComb:
    """Insertion into ``q.outer`` restricted to free vertices."""
    from .prelie import insert_at

    return LinComb.sum(insert_at(x, v, q.outer) for v in q.free_vertices)


def insert_derivation(x: SpecifiedGraph, mon: Monomial) -> LinComb:
    """``x ▷ mon`` for a generator ``x``: insertion as a derivation of the product."""
    acc = []
    for i, f in enumerate(mon.factors):
        rest = mon.without(i)
        acc.append(insert(x, f).map(lambda g, rest=rest: LinComb.of(rest * Monomial((g,)))))
    return LinComb.sum(acc)


# ---------------------------------------------------------------- checkers


def check_odot_prelie(a: Pair, b: Pair, c: Pair) -> bool:
    lhs = odot(odot(a, b), c) - odot(a, odot(b, c))
    rhs = odot(odot(b, a), c) - odot(b, odot(a, c))
    return lhs == rhs


def check_module(x: SpecifiedGraph, y: SpecifiedGraph, q: Pair) -> bool:
    lhs = act(x, act(y, q)) - act(insert(x, y), q)
    rhs = act(y, act(x, q)) - act(insert(y, x), q)
    return lhs == rhs


def check_derivation(x: SpecifiedGraph, p: Pair, q: Pair) -> bool:
    return act(x, odot(p, q)) == odot(act(x, p), q) + odot(p, act(x, q))


def check_P2_diagram(x: SpecifiedGraph, q: Pair) -> bool:
    """Compare in the quotient H: residue factors of the inner become 1."""
    lhs = reduce_mod_J(P2(act(x, q).map(lambda p: LinComb.of(Monomial((p,))))))
    rhs = reduce_mod_J(P2(q)).map(lambda mon: insert_derivation(x, mon))
    return lhs == reduce_mod_J(rhs)


def check_dcoassoc(x, theory: Theory) -> bool:
    delta = lambda mon: dcoproduct_monomial(mon, theory)  # noqa: E731
    d = as_pair_element(x).map(delta)
    return flatten(tensor_map(d, (delta, None))) == flatten(tensor_map(d, (None, delta)))


def check_dcounit(x, theory: Theory) -> bool:
    x = as_pair_element(x)
    d = doubling_coproduct(x, theory)
    lsum = []
    rsum = []
    for t, c in d:
        a, b = t.parts
        lsum.append(c * dcounit(LinComb.of(a)) * LinComb.of(b))
        rsum.append(c * dcounit(LinComb.of(b)) * LinComb.of(a))
    return LinComb.sum(lsum) == x and LinComb.sum(rsum) == x


def check_dmultiplicative(a, b, theory: Theory) -> bool:
    lhs = doubling_coproduct(pair_product(a, b), theory)
    rhs = tensor_product(doubling_coproduct(a, theory), doubling_coproduct(b, theory))
    return lhs == rhs


def check_P2_coalgebra(x, theory: Theory) -> bool:
    return P2_tensor(doubling_coproduct(x, theory)) == coproduct_full(P2(x), theory)


def check_P2_algebra(a, b) -> bool:
    from .algebra import m

    return P2(pair_product(a, b)) == m(P2(a), P2(b))


def check_restriction_split(x: SpecifiedGraph, q: Pair) -> bool:
    """Insertion into ``q.outer`` = inner-site part + free-site part, no overlap."""
    total = insert(x, q.outer)
    return total == _tri_g(x, q) + _tri_free(x, q)


__all__ = [
    "Pair",
    "PairError",
    "P2",
    "act",
    "check_P2_coalgebra",
    "check_P2_diagram",
    "check_dcoassoc",
    "check_derivation",
    "check_module",
    "check_odot_prelie",
    "doubling_coproduct",
    "free_vertices",
    "make_pair",
    "odot",
    "pair",
    "pair_from_json",
    "pair_product",
    "pairs_of",
]
