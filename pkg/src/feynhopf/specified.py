"""Specified graphs ``(Γ, i)`` and specified covering subgraphs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Iterable, Mapping

from .graph import (
    Graph,
    GraphError,
    NotInTheory,
    _bridgeless,
    contract_map,
    covering_subgraphs,
    labeling,
    validate,
)
from .theory import Theory


class SpecificationError(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class SpecifiedGraph:
    """A graph plus one specification index per connected component.

    Components are ordered by smallest vertex index.  Connected specified
    graphs are the generators of the symmetric algebras; use ``factors`` to
    split a disconnected one.
    """

    graph: Graph
    spec: tuple[int, ...]

    @cached_property
    def key(self) -> str:
        if len(self.spec) == 1:
            return f"{self.spec[0]}|{labeling(self.graph).key}"
        return "*".join(sorted(f.key for f in self.factors()))

    def __eq__(self, other):
        return isinstance(other, SpecifiedGraph) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def degree(self) -> int:
        return self.graph.loop_number()

    @property
    def is_residue(self) -> bool:
        """True for degree-zero generators: a single vertex."""
        return self.graph.n_vertices == 1 and not self.graph.internal_pairs

    def components(self) -> list[list[int]]:
        return self.graph.components()

    def factors(self) -> tuple["SpecifiedGraph", ...]:
        comps = self.components()
        if len(comps) == 1:
            return (self,)
        out = []
        for c, k in zip(comps, self.spec):
            g, _, _ = self.graph.subgraph_on(c)
            out.append(SpecifiedGraph(g, (k,)))
        return tuple(out)

    def residue_kind(self):
        """``(signature, spec)`` of the vertex this connected graph contracts to."""
        return self.graph.ext_signature(), self.spec[0]

    def canonical(self) -> "SpecifiedGraph":
        if len(self.spec) != 1:
            raise SpecificationError("canonical representative needs a connected graph")
        return _canonical(self.graph, self.spec[0])

    def __repr__(self):
        g = self.graph
        return f"SG(V={g.n_vertices},I={len(g.internal_pairs)},E={g.ext_signature()},i={self.spec})"

    def to_json(self) -> dict[str, Any]:
        d = self.graph.to_json()
        d["spec"] = list(self.spec)
        return d


@lru_cache(maxsize=200_000)
def _canonical(g: Graph, spec: int) -> SpecifiedGraph:
    lab = labeling(g)
    return SpecifiedGraph(g.relabel(lab.vperm, lab.hperm), (spec,))


def specified(g: Graph, spec: int) -> SpecifiedGraph:
    """Connected specified graph in canonical representative form (no validation)."""
    return _canonical(g, spec)


def make_specified(g: Graph, spec, theory: Theory) -> SpecifiedGraph:
    g = validate(g, theory)
    comps = g.components()
    if isinstance(spec, int):
        spec = (spec,)
    spec = tuple(int(k) for k in spec)
    if len(spec) != len(comps):
        raise SpecificationError(
            f"{len(comps)} components but {len(spec)} specification values"
        )
    if not g.is_locally_1pi():
        raise SpecificationError("graph is not locally 1PI")
    for c, k in zip(comps, spec):
        piece, _, _ = g.subgraph_on(c)
        sig = piece.ext_signature()
        if theory.vertex_type(sig) is None:
            raise SpecificationError(f"component residue {sig} is not a vertex of {theory.name}")
        if not theory.admits(sig, k):
            raise SpecificationError(
                f"spec {k} not in allowed specs {theory.allowed_specs(sig)} for residue {sig}"
            )
        if len(c) == 1 and not piece.internal_pairs and piece.vspec[0] != k:
            raise SpecificationError("a single-vertex component must carry its own vertex spec")
    if len(comps) == 1:
        return specified(g, spec[0])
    return SpecifiedGraph(g, spec)


def from_json(doc: Mapping[str, Any], theory: Theory) -> SpecifiedGraph:
    g = validate(doc, theory)
    spec = doc.get("spec")
    if spec is None:
        raise SpecificationError("specified graph needs a 'spec' field")
    return make_specified(g, spec, theory)


@dataclass(frozen=True)
class SubgraphChoice:
    """A specified covering subgraph ``(γ, j)`` of a specified graph.

    ``comps`` lists the vertex sets of γ's components; ``specs`` gives j on
    each of them (single vertices carry their own spec).
    """

    kept: frozenset[int]
    comps: tuple[tuple[int, ...], ...]
    specs: tuple[int, ...]
    reason: str = "ok"

    def is_trivial_comp(self, i: int, g: Graph) -> bool:
        c = self.comps[i]
        return len(c) == 1 and not any(g.incidence[h] == c[0] for h in self.kept)


@dataclass(frozen=True)
class Relation:
    holds: bool
    reason: str


def _comp_is_1pi(g: Graph, comp, kept) -> bool:
    cset = set(comp)
    pairs = [h for h in kept if g.incidence[h] in cset]
    sub, _, _ = g.covering(pairs).subgraph_on(comp)
    return sub.is_connected() and _bridgeless(sub, sub.internal_pairs)


def _comp_ext_signature(g: Graph, comp, kept) -> tuple[str, ...]:
    cset = set(comp)
    keptall = set(kept) | {g.sigma[h] for h in kept}
    return tuple(
        sorted(g.types[h] for h in range(g.n_half_edges) if g.incidence[h] in cset and h not in keptall)
    )


def check_relation(sg: SpecifiedGraph, kept, specs, theory: Theory) -> Relation:
    """Test whether ``(kept, specs)`` is a specified covering subgraph of ``sg``."""
    g = sg.graph
    kept = frozenset(kept)
    if not kept <= set(g.internal_pairs):
        return Relation(False, "clause 1: kept edges are not internal edges of the graph")
    comps = g.components(kept)
    if len(specs) != len(comps):
        return Relation(False, "specification length differs from component count")
    full = _full_components(g, kept, comps, sg)
    for i, c in enumerate(comps):
        trivial = len(c) == 1 and not any(g.incidence[h] == c[0] for h in kept)
        if trivial:
            if specs[i] != g.vspec[c[0]]:
                return Relation(False, "single-vertex component must keep its own spec")
            continue
        if not _comp_is_1pi(g, c, kept):
            return Relation(False, "subgraph is not locally 1PI")
        sig = _comp_ext_signature(g, c, kept)
        if not theory.admits(sig, specs[i]):
            return Relation(False, f"component residue {sig} with spec {specs[i]} not in theory")
        if i in full and specs[i] != full[i]:
            return Relation(False, "clause 2: full component must keep the outer specification")
    return Relation(True, "ok")


def _full_components(g: Graph, kept, comps, sg: SpecifiedGraph) -> dict[int, int]:
    """Map γ-component index -> outer spec, for components that are whole Γ-components."""
    outer = g.components()
    outer_idx = {}
    for j, c in enumerate(outer):
        for v in c:
            outer_idx[v] = j
    out = {}
    for i, c in enumerate(comps):
        j = outer_idx[c[0]]
        if len(c) == len(outer[j]):
            cset = set(c)
            internal_here = [h for h in g.internal_pairs if g.incidence[h] in cset]
            if all(h in kept for h in internal_here) and internal_here:
                out[i] = sg.spec[j]
    return out


def specified_subgraphs(sg: SpecifiedGraph, theory: Theory) -> list[SubgraphChoice]:
    return list(_specified_subgraphs(sg.graph, sg.spec, theory))


@lru_cache(maxsize=100_000)
def _specified_subgraphs(g: Graph, spec: tuple, theory: Theory) -> tuple[SubgraphChoice, ...]:
    # keyed on the raw graph since choices name its edges and vertices
    sg = SpecifiedGraph(g, spec)
    out = []
    for cov in covering_subgraphs(g):
        kept = cov.kept
        comps = g.components(kept)
        full = _full_components(g, kept, comps, sg)
        options: list[tuple[int, ...]] = []
        ok = True
        for i, c in enumerate(comps):
            trivial = len(c) == 1 and not any(g.incidence[h] == c[0] for h in kept)
            if trivial:
                options.append((g.vspec[c[0]],))
                continue
            if not _comp_is_1pi(g, c, kept):
                ok = False
                break
            sig = _comp_ext_signature(g, c, kept)
            allowed = theory.allowed_specs(sig)
            if not allowed:
                ok = False
                break
            if i in full:
                if full[i] not in allowed:
                    ok = False
                    break
                options.append((full[i],))
            else:
                options.append(allowed)
        if not ok:
            continue
        tc = tuple(tuple(c) for c in comps)
        for choice in product(*options):
            out.append(SubgraphChoice(kept, tc, tuple(choice)))
    return tuple(out)


def subgraph_as_specified(sg: SpecifiedGraph, choice: SubgraphChoice) -> SpecifiedGraph:
    g = sg.graph.covering(choice.kept)
    return SpecifiedGraph(g, choice.specs)


def subgraph_factors(sg: SpecifiedGraph, choice: SubgraphChoice) -> list[SpecifiedGraph]:
    """Connected components of γ̄ as canonical connected specified graphs."""
    g = sg.graph.covering(choice.kept)
    out = []
    for c, k in zip(choice.comps, choice.specs):
        piece, _, _ = g.subgraph_on(c)
        out.append(specified(piece, k))
    return out


def contract_specified_map(sg: SpecifiedGraph, choice: SubgraphChoice, theory: Theory):
    """Contract Γ̄ by γ̄; returns the specified quotient plus the contraction maps."""
    specs = {i: k for i, k in enumerate(choice.specs)}
    con = contract_map(sg.graph, choice.kept, theory, specs)
    # outer components survive contraction one-to-one
    old_comps = sg.graph.components()
    owner = {}
    for j, c in enumerate(old_comps):
        for v in c:
            owner[v] = j
    new_comps = con.graph.components()
    new_spec = []
    for c in new_comps:
        old_v = next(v for v in range(sg.graph.n_vertices) if con.vmap[v] == c[0])
        new_spec.append(sg.spec[owner[old_v]])
    return SpecifiedGraph(con.graph, tuple(new_spec)), con


def contract_specified(sg: SpecifiedGraph, choice: SubgraphChoice, theory: Theory) -> SpecifiedGraph:
    res, _ = contract_specified_map(sg, choice, theory)
    if len(res.spec) == 1:
        return res.canonical()
    return res


def canon_specified(sg: SpecifiedGraph) -> str:
    return sg.key


def skeleton_choice(sg: SpecifiedGraph) -> SubgraphChoice:
    g = sg.graph
    return SubgraphChoice(
        frozenset(), tuple((v,) for v in range(g.n_vertices)), tuple(g.vspec)
    )


def full_choice(sg: SpecifiedGraph) -> SubgraphChoice:
    g = sg.graph
    return SubgraphChoice(
        frozenset(g.internal_pairs), tuple(tuple(c) for c in g.components()), tuple(sg.spec)
    )


__all__ = [
    "NotInTheory",
    "SpecificationError",
    "SpecifiedGraph",
    "SubgraphChoice",
    "check_relation",
    "contract_specified",
    "contract_specified_map",
    "canon_specified",
    "from_json",
    "make_specified",
    "specified",
    "specified_subgraphs",
    "subgraph_as_specified",
    "subgraph_factors",
]
