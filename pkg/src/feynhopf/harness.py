"""Corpus generation and exhaustive or sampled law verification."""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable

from .algebra import Monomial
from .graph import Graph, from_edges
from .specified import SpecifiedGraph, specified
from .theory import Theory


@dataclass(frozen=True)
class Bounds:
    max_loops: int = 2
    max_vertices: int = 6
    max_half_edges: int = 16


@dataclass
class Corpus:
    theory: Theory
    bounds: Bounds
    graphs: list[SpecifiedGraph]
    pairs: list = field(default_factory=list)
    seed: int = 0

    def by_degree(self, d: int) -> list[SpecifiedGraph]:
        return [g for g in self.graphs if g.degree == d]

    def summary(self) -> dict[str, Any]:
        return {
            "theory": self.theory.name,
            "max_loops": self.bounds.max_loops,
            "graphs": len(self.graphs),
            "pairs": len(self.pairs),
            "graphs_by_degree": dict(sorted(Counter(g.degree for g in self.graphs).items())),
        }


def _distributions(need: Counter, partners: list[tuple[int, Counter]], theory: Theory):
    """Ways to send the half-edges ``need`` of one vertex to later vertices
    (with remaining capacities) or to external legs.

    Yields ``(edges, ext)`` where ``edges`` is a list of (w, t_here, t_there).
    """
    items = sorted(need.elements())

    def rec(i: int, caps: list[Counter], edges: list, ext: list, last):
        if i == len(items):
            yield list(edges), list(ext)
            return
        t = items[i]
        # canonical order among equal half-edge types: choices non-decreasing
        options = [("ext", None, None)]
        for j, (w, _) in enumerate(partners):
            for t2 in sorted(caps[j]):
                if caps[j][t2] > 0 and theory.can_pair(t, t2):
                    options.append(("edge", j, t2))
        for opt in options:
            key = (t, opt[0], -1 if opt[1] is None else opt[1], opt[2] or "")
            if last is not None and last[0] == t and key < last:
                continue
            if opt[0] == "ext":
                ext.append(t)
                yield from rec(i + 1, caps, edges, ext, key)
                ext.pop()
            else:
                j, t2 = opt[1], opt[2]
                caps[j][t2] -= 1
                edges.append((partners[j][0], t, t2))
                yield from rec(i + 1, caps, edges, ext, key)
                edges.pop()
                caps[j][t2] += 1

    caps = [Counter(c) for _, c in partners]
    yield from rec(0, caps, [], [], None)


def _graph_shapes(theory: Theory, bounds: Bounds) -> Iterable[Graph]:
    """Connected half-edge graphs over the theory's vertex signatures (spec 0)."""
    sigs = sorted({vt.signature for vt in theory.vertex_types})
    max_ext = max(len(s) for s in sigs)
    for n in range(1, bounds.max_vertices + 1):
        for combo in _multisets(sigs, n):
            H = sum(len(s) for s in combo)
            if H > bounds.max_half_edges:
                continue
            min_ext = H - 2 * (bounds.max_loops + n - 1)
            if min_ext > max_ext:
                continue
            yield from _wire(list(combo), theory, max_ext, min_ext)


def _multisets(items, n):
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, len(items)):
            for rest in rec(i, left - 1):
                yield (items[i],) + rest

    yield from rec(0, n)


def _wire(combo, theory: Theory, max_ext: int, min_ext: int):
    n = len(combo)
    remaining = [Counter(s) for s in combo]

    def rec(u: int, edges: list, legs: list):
        if len(legs) > max_ext:
            return
        if u == n:
            if len(legs) >= min_ext:
                yield from_edges([0] * n, edges, legs)
            return
        need = remaining[u]
        partners = [(w, remaining[w]) for w in range(u + 1, n)]
        for es, ext in _distributions(need, partners, theory):
            if len(legs) + len(ext) > max_ext:
                continue
            saved = [Counter(remaining[w]) for w in range(u + 1, n)]
            for w, t, t2 in es:
                remaining[w][t2] -= 1
            remaining[u] = Counter()
            yield from rec(
                u + 1,
                edges + [(u, w, t, t2) for w, t, t2 in es],
                legs + [(u, t) for t in ext],
            )
            remaining[u] = need
            for k, w in enumerate(range(u + 1, n)):
                remaining[w] = saved[k]

    yield from rec(0, [], [])


def gen_graphs(theory: Theory, bounds: Bounds = Bounds()) -> list[SpecifiedGraph]:
    """All connected 1PI specified graphs within the bounds, deduplicated by canon."""
    seen: dict[str, SpecifiedGraph] = {}
    for g in _graph_shapes(theory, bounds):
        if not g.is_connected() or g.loop_number() > bounds.max_loops:
            continue
        if g.n_vertices > 1 or g.internal_pairs:
            if not g.is_1pi():
                continue
        res = g.ext_signature()
        res_specs = theory.allowed_specs(res)
        if not res_specs:
            continue
        vopts = [theory.allowed_specs(g.signature(v)) for v in range(g.n_vertices)]
        for vspec in product(*vopts):
            h = Graph(tuple(vspec), g.types, g.sigma, g.incidence)
            single = h.n_vertices == 1 and not h.internal_pairs
            for k in res_specs:
                if single and k != h.vspec[0]:
                    continue
                sg = specified(h, k)
                seen.setdefault(sg.key, sg)
    return [seen[k] for k in sorted(seen, key=lambda k: (seen[k].degree, seen[k].graph.n_half_edges, k))]


def gen_corpus(theory: Theory, max_loops: int = 2, bounds: Bounds | None = None, seed: int = 0,
               with_pairs: bool = True) -> Corpus:
    from .doubling import pairs_of

    b = bounds or Bounds(max_loops=max_loops)
    if b.max_loops != max_loops:
        b = Bounds(max_loops, b.max_vertices, b.max_half_edges)
    graphs = gen_graphs(theory, b)
    pairs = []
    if with_pairs:
        for g in graphs:
            pairs.extend(pairs_of(g, theory))
    return Corpus(theory, b, graphs, pairs, seed)


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class Policy:
    """Which tuples a law is checked on.

    Single-argument laws run over the whole corpus.  Laws of two or more
    arguments run over every tuple drawn from the tuple base (corpus
    elements with at most ``base_vertices`` vertices) whose total degree
    is at most ``max_degree``.  Symmetric-algebra arguments are monomials of
    length at most ``mono_length`` over elements with at most
    ``env_vertices`` vertices.  Tuples of three or more arguments also keep
    their total vertex count within ``tuple_vertices``, or within
    ``env_tuple_vertices`` when some argument is a monomial.
    """

    base_vertices: int = 4
    env_vertices: int = 2
    mono_length: int = 2
    max_degree: int = 3
    tuple_vertices: int = 9
    env_tuple_vertices: int = 7
    samples: int = 300


def _size(x) -> tuple:
    if isinstance(x, Monomial):
        return (sum(_size(f)[0] for f in x.factors), len(x), x.key)
    g = x.outer.graph if hasattr(x, "outer") else x.graph
    return (x.degree, g.n_half_edges + g.n_vertices, x.key)


def _nv(x) -> int:
    return (x.outer.graph if hasattr(x, "outer") else x.graph).n_vertices


def _nv_all(x) -> int:
    if isinstance(x, Monomial):
        return sum(_nv(f) for f in x.factors)
    return _nv(x)


def _deg(x) -> int:
    if isinstance(x, Monomial):
        return sum(f.degree for f in x.factors)
    return x.degree


def _monomials(gens, length: int, max_degree: int) -> list[Monomial]:
    out = []
    for n in range(1, length + 1):
        for combo in _multisets(gens, n):
            if sum(f.degree for f in combo) <= max_degree:
                out.append(Monomial(combo))
    return out


class Domains:
    """Argument pools for one corpus under one policy (built lazily)."""

    def __init__(self, corpus: Corpus, policy: Policy):
        self.corpus = corpus
        self.policy = policy
        self._cache: dict[tuple[str, bool], list] = {}

    def get(self, name: str, full: bool) -> list:
        k = (name, full)
        if k not in self._cache:
            self._cache[k] = self._build(name, full)
        return self._cache[k]

    def _build(self, name: str, full: bool) -> list:
        c, pol = self.corpus, self.policy
        if name == "G":
            return list(c.graphs) if full else [g for g in c.graphs if _nv(g) <= pol.base_vertices]
        if name == "P":
            return list(c.pairs) if full else [p for p in c.pairs if _nv(p) <= pol.base_vertices]
        if name in ("M", "N"):
            pool = c.graphs if name == "M" else c.pairs
            small = [x for x in pool if _nv(x) <= pol.env_vertices]
            mons = _monomials(small, pol.mono_length, pol.max_degree)
            if full:
                seen = set(mons)
                mons = mons + [Monomial((x,)) for x in pool if Monomial((x,)) not in seen]
            return mons
        if name == "A":
            # H elements of degree at most max_degree: generators and products
            small = [g for g in c.graphs if _nv(g) <= pol.base_vertices and g.degree > 0]
            prods = [m for m in _monomials(small, 3, pol.max_degree) if len(m) > 1]
            return [Monomial((g,)) for g in c.graphs] + prods
        raise KeyError(name)


@dataclass(frozen=True)
class Part:
    name: str
    domains: tuple[str, ...]
    check: Callable[..., bool]


@dataclass(frozen=True)
class Law:
    name: str
    summary: str
    parts: tuple[Part, ...]


@dataclass
class LawReport:
    law: str
    theory: str
    mode: str
    seed: int
    instances: int
    failures: list[dict]
    parts: dict[str, int]
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict[str, Any]:
        # wall time is kept out so that reports are byte-stable across runs
        return {
            "law": self.law,
            "theory": self.theory,
            "mode": self.mode,
            "seed": self.seed,
            "instances": self.instances,
            "parts": self.parts,
            "failures": self.failures,
            "ok": self.ok,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def text(self) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.failures)} failing instances)"
        parts = ", ".join(f"{k}={v}" for k, v in self.parts.items())
        return f"{self.law} [{self.theory}, {self.mode}, seed {self.seed}]: {status}; {self.instances} instances ({parts})"


def _tuples(part: Part, dom: Domains, mode: str, rng: random.Random, samples: int):
    arity = len(part.domains)
    if mode == "sampled":
        pools = [dom.get(d, True) for d in part.domains]
        for _ in range(samples):
            yield tuple(rng.choice(p) for p in pools)
        return
    if arity == 1:
        for x in dom.get(part.domains[0], True):
            yield (x,)
        return
    pools = [dom.get(d, False) for d in part.domains]
    pol = dom.policy
    env = any(d in ("M", "N", "A") for d in part.domains)
    vcap = pol.env_tuple_vertices if env else pol.tuple_vertices
    for t in product(*pools):
        if sum(_deg(x) for x in t) <= pol.max_degree and (arity < 3 or sum(_nv_all(x) for x in t) <= vcap):
            yield t


def _to_json(x):
    if isinstance(x, Monomial):
        return {"monomial": [f.to_json() for f in x.factors]}
    return x.to_json()


def minimize(part: Part, args: tuple, pools: list[list], theory: Theory) -> tuple:
    """Greedy shrink: swap each argument for the smallest pool element that
    keeps the instance failing, until nothing changes."""
    args = list(args)
    changed = True
    while changed:
        changed = False
        for i, pool in enumerate(pools):
            for cand in sorted(pool, key=_size):
                if _size(cand) >= _size(args[i]):
                    break
                trial = args[:i] + [cand] + args[i + 1:]
                if _run_check(part, theory, trial) is not True:
                    args = trial
                    changed = True
                    break
    return tuple(args)


def _run_check(part: Part, theory: Theory, args) -> bool | str:
    """True on success, False on a violated identity, or the error text."""
    try:
        return bool(part.check(theory, *args))
    except Exception as exc:  # a crash on a law instance is a failure of that instance
        return f"{type(exc).__name__}: {exc}"


def verify(law: str | Law, corpus: Corpus, mode: str = "exhaustive", seed: int | None = None,
           policy: Policy | None = None, max_failures: int = 5, minimize_failures: bool = True) -> LawReport:
    """Run a law over its tuples; failures carry replayable JSON arguments."""
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    spec = LAWS[law] if isinstance(law, str) else law
    pol = policy or Policy()
    seed = corpus.seed if seed is None else seed
    rng = random.Random(seed)
    dom = Domains(corpus, pol)
    t0 = time.perf_counter()
    total = 0
    counts: dict[str, int] = {}
    failures: list[dict] = []
    for part in spec.parts:
        n = 0
        for args in _tuples(part, dom, mode, rng, pol.samples):
            n += 1
            res = _run_check(part, corpus.theory, args)
            if res is True:
                continue
            if len(failures) >= max_failures:
                continue
            small = args
            if minimize_failures:
                full = mode == "sampled" or len(args) == 1
                small = minimize(part, args, [dom.get(d, full) for d in part.domains], corpus.theory)
            failures.append({
                "part": part.name,
                "error": None if res is False else res,
                "args": [_to_json(a) for a in small],
                "original": [_to_json(a) for a in args] if small != args else None,
            })
        counts[part.name] = n
        total += n
    return LawReport(spec.name, corpus.theory.name, mode, seed, total, failures, counts,
                     time.perf_counter() - t0)


# ---------------------------------------------------------------- law registry


def _law_table() -> dict[str, Law]:
    from . import doubling as D
    from . import envelope as E
    from . import hopf as Hf
    from . import prelie as P
    from .algebra import UNIT, LinComb
    from .algebra import degree as mdeg
    from .graph import NotInTheory
    from .specified import specified_subgraphs, subgraph_factors, contract_specified_map

    def counit_H(T, x):
        d = Hf.coproduct_reduced(x, T)
        red = Hf.reduce_mod_J(x)
        left = LinComb.sum(c * Hf.counit_reduced(LinComb.of(t.parts[0])) * LinComb.of(t.parts[1]) for t, c in d)
        right = LinComb.sum(c * Hf.counit_reduced(LinComb.of(t.parts[1])) * LinComb.of(t.parts[0]) for t, c in d)
        return left == red and right == red

    def antipode(T, x):
        target = LinComb.of(UNIT, Hf.counit_reduced(x)) if Hf.counit_reduced(x) else LinComb()
        return Hf.convolution(x, T, True) == target and Hf.convolution(x, T, False) == target

    def inner(p):
        return p.inner_degree

    def graded(lc, d, weight=None):
        return all(mdeg(mon, weight) == d for mon, _ in lc)

    def graded_tensor(lc, d):
        return all(sum(mdeg(part) for part in t.parts) == d for t, _ in lc)

    def pair_terms_graded(lc, p, q):
        return all(r.degree == p.degree + q.degree and r.inner_degree == p.inner_degree + q.inner_degree
                   for r, _ in lc)

    def loops_contraction(T, x):
        for ch in specified_subgraphs(x, T):
            try:
                q, _ = contract_specified_map(x, ch, T)
            except NotInTheory:
                continue
            inner = sum(f.graph.loop_number() for f in subgraph_factors(x, ch))
            if inner + q.graph.loop_number() != x.graph.loop_number():
                return False
        return True

    def loops_product(T, x, y):
        return x.graph.disjoint_union(y.graph).loop_number() == x.graph.loop_number() + y.graph.loop_number()

    def two(f):
        return lambda T, *a: f(*a)

    def part(name, doms, fn):
        return Part(name, doms, fn)

    laws = [
        Law("coassoc", "coassociativity of the coproduct", (
            part("coassoc", ("G",), lambda T, x: Hf.check_coassoc(x, T)),
        )),
        Law("counit", "counit laws in the quotient by the residue ideal", (
            part("counit", ("G",), counit_H),
        )),
        Law("antipode", "m(S⊗I)Δ = uε = m(I⊗S)Δ in degree at most 3", (
            part("antipode", ("A",), antipode),
        )),
        Law("prelie", "pre-Lie identity for insertion", (
            part("prelie", ("G", "G", "G"), two(P.check_prelie)),
        )),
        Law("jacobi", "Jacobi identity for the insertion bracket", (
            part("jacobi", ("G", "G", "G"), two(P.check_jacobi)),
        )),
        Law("dbialgebra", "bialgebra axioms of the pair algebra", (
            part("dcoassoc", ("P",), lambda T, p: D.check_dcoassoc(p, T)),
            part("dcounit", ("P",), lambda T, p: D.check_dcounit(p, T)),
            part("dmultiplicative", ("P", "P"), lambda T, p, q: D.check_dmultiplicative(p, q, T)),
        )),
        Law("p2-morphism", "projection to the inner graph is a bialgebra morphism", (
            part("p2-coalgebra", ("P",), lambda T, p: D.check_P2_coalgebra(p, T)),
            part("p2-algebra", ("P", "P"), two(D.check_P2_algebra)),
        )),
        Law("odot-prelie", "pre-Lie identity for ⊙", (
            part("odot-prelie", ("P", "P", "P"), two(D.check_odot_prelie)),
        )),
        Law("module", "pre-Lie module axiom for →", (
            part("module", ("G", "G", "P"), two(D.check_module)),
        )),
        Law("derivation", "→ is a derivation of ⊙", (
            part("derivation", ("G", "P", "P"), two(D.check_derivation)),
        )),
        Law("p2-diagram", "P₂ intertwines → with insertion", (
            part("p2-diagram", ("G", "P"), two(D.check_P2_diagram)),
        )),
        Law("restriction-split", "insertion splits into inner-site and free-site parts", (
            part("restriction-split", ("G", "P"), two(D.check_restriction_split)),
        )),
        Law("star-assoc", "associativity and unit of ★ and ⋆", (
            part("star-unit", ("M",), lambda T, a: E.check_star_unit(a)),
            part("star-assoc", ("M", "M", "M"), two(E.check_star_assoc)),
            part("bigstar-unit", ("N",), lambda T, a: E.check_star_unit(a, E.D_OG)),
            part("bigstar-assoc", ("N", "N", "N"), lambda T, a, b, c: E.check_star_assoc(a, b, c, E.D_OG)),
        )),
        Law("hopf-compat", "Ψ and Φ are morphisms for ★ and ⋆, with antipodes", (
            part("psi-star", ("M", "M"), two(E.check_hopf_compat)),
            part("phi-bigstar", ("N", "N"), lambda T, a, b: E.check_hopf_compat(a, b, E.D_OG)),
            part("star-antipode", ("M",), lambda T, a: E.check_star_antipode(a)),
            part("bigstar-antipode", ("N",), lambda T, a: E.check_star_antipode(a, E.D_OG)),
        )),
        Law("ext-welldefined", "extended products do not depend on peeling order; top degree is the product", (
            part("tri-peel", ("M", "M"), two(E.check_tri_peel)),
            part("odot-peel", ("N", "N"), lambda T, a, b: E.check_tri_peel(a, b, E.D_OG)),
            part("top-degree", ("M", "M"), two(E.check_top_degree)),
        )),
        Law("comodule-H", "graph level comodule-coalgebra diagram", (
            part("comodule-H", ("M",), lambda T, a: E.check_comodule_coalgebra_H(a, T)),
        )),
        Law("comodule-D", "pair level comodule-coalgebra diagram", (
            part("comodule-D", ("N",), lambda T, a: E.check_comodule_coalgebra_D(a, T)),
        )),
        Law("module-bialgebra", "the three module-bialgebra diagrams for α", (
            part("action", ("N", "M", "M"), lambda T, p, a, b: E.check_action(p, a, b)),
            part("action-product", ("N", "N", "M"), lambda T, p, q, a: E.check_action_product(p, q, a)),
            part("action-coproduct", ("N", "M"), lambda T, p, a: E.check_action_coproduct(p, a)),
        )),
        Law("grading", "Δ, ▷, ⊙, ★ and ⋆ preserve the loop grading", (
            part("coproduct", ("G",), lambda T, x: graded_tensor(Hf.coproduct_full(x, T), x.degree)),
            # pairs are graded by the inner loop number for the coproduct
            part("dcoproduct", ("P",), lambda T, p: all(
                sum(mdeg(m_, inner) for m_ in t.parts) == p.inner_degree
                for t, _ in D.doubling_coproduct(p, T))),
            part("insert", ("G", "G"), lambda T, x, y: all(
                z.degree == x.degree + y.degree for z, _ in P.insert(x, y))),
            part("odot", ("P", "P"), lambda T, p, q: pair_terms_graded(D.odot(p, q), p, q)),
            part("star", ("M", "M"), lambda T, a, b: graded(E.star(a, b), mdeg(a) + mdeg(b))),
            part("bigstar", ("N", "N"), lambda T, a, b: graded(E.bigstar(a, b), mdeg(a) + mdeg(b))
                 and graded(E.bigstar(a, b), mdeg(a, inner) + mdeg(b, inner), inner)),
        )),
        Law("loops", "loop number is additive under contraction and products", (
            part("contraction", ("G",), loops_contraction),
            part("product", ("G", "G"), loops_product),
        )),
    ]
    return {law.name: law for law in laws}


class _Registry(dict):
    def _load(self):
        if not dict.__len__(self):
            self.update(_law_table())

    def __getitem__(self, k):
        self._load()
        try:
            return dict.__getitem__(self, k)
        except KeyError:
            raise KeyError(f"unknown law {k!r}; known: {', '.join(sorted(self))}") from None

    def __iter__(self):
        self._load()
        return dict.__iter__(self)

    def __len__(self):
        self._load()
        return dict.__len__(self)

    def __contains__(self, k):
        self._load()
        return dict.__contains__(self, k)

    def keys(self):
        self._load()
        return dict.keys(self)


LAWS = _Registry()

# the laws that the acceptance gate runs for each theory
SUITE = (
    "coassoc", "counit", "prelie", "jacobi", "dbialgebra", "p2-morphism", "odot-prelie", "module",
    "derivation", "p2-diagram", "star-assoc", "hopf-compat", "comodule-H", "comodule-D",
    "module-bialgebra",
)


def run_suite(corpus: Corpus, laws: Iterable[str] = SUITE, mode: str = "exhaustive",
              seed: int | None = None, policy: Policy | None = None) -> list[LawReport]:
    return [verify(name, corpus, mode, seed, policy) for name in laws]
