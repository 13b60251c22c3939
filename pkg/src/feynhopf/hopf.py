"""Coproducts on the Hopf algebra of specified graphs, the quotient by the
residue ideal, and the antipode of the quotient."""

from __future__ import annotations

from functools import lru_cache

from .algebra import UNIT, LinComb, Monomial, Tensor, flatten, tensor_map, tensor_product
from .graph import NotInTheory
from .specified import (
    SpecifiedGraph,
    contract_specified,
    specified_subgraphs,
    subgraph_factors,
)
from .theory import Theory


def as_element(x) -> LinComb:
    """Promote a specified graph or monomial to a combination of monomials."""
    if isinstance(x, LinComb):
        return x
    if isinstance(x, Monomial):
        return LinComb.of(x)
    if isinstance(x, SpecifiedGraph):
        return LinComb.of(Monomial(x.factors()))
    raise TypeError(f"cannot promote {type(x).__name__}")


@lru_cache(maxsize=100_000)
def _coproduct_generator(sg: SpecifiedGraph, theory: Theory) -> LinComb:
    pairs = []
    for choice in specified_subgraphs(sg, theory):
        try:
            quotient = contract_specified(sg, choice, theory)
        except NotInTheory:
            continue
        left = Monomial(subgraph_factors(sg, choice))
        pairs.append((Tensor((left, Monomial((quotient,)))), 1))
    return LinComb.from_pairs(pairs)


def coproduct_monomial(mon: Monomial, theory: Theory) -> LinComb:
    acc = LinComb.of(Tensor((UNIT, UNIT)))
    for f in mon.factors:
        acc = tensor_product(acc, _coproduct_generator(f, theory))
    return acc


def coproduct_full(x, theory: Theory) -> LinComb:
    """Coproduct of the unreduced algebra, extended multiplicatively."""
    return as_element(x).map(lambda mon: coproduct_monomial(mon, theory))


def _delta_mon(theory):
    return lambda mon: coproduct_monomial(mon, theory)


def check_coassoc(x, theory: Theory, coproduct=None) -> bool:
    delta = coproduct or _delta_mon(theory)
    d = as_element(x).map(delta)
    left = flatten(tensor_map(d, (delta, None)))
    right = flatten(tensor_map(d, (None, delta)))
    return left == right


def reduce_monomial(mon: Monomial) -> Monomial:
    return Monomial(f for f in mon.factors if not f.is_residue)


def reduce_mod_J(x) -> LinComb:
    """Normal form in the quotient: residue factors become the unit."""
    x = as_element(x)

    def red(obj):
        if isinstance(obj, Tensor):
            return LinComb.of(Tensor(reduce_monomial(p) for p in obj.parts))
        return LinComb.of(reduce_monomial(obj))

    return x.map(red)


def proper_terms(sg: SpecifiedGraph, theory: Theory) -> LinComb:
    """Middle terms γ̄ ⊗ Γ̄/γ̄ of the reduced coproduct of a connected generator."""
    if sg.is_residue:
        return LinComb()
    mid = []
    for choice in specified_subgraphs(sg, theory):
        if not choice.kept:
            continue  # skeleton: reduces to 1 ⊗ Γ̄
        if len(choice.kept) == len(sg.graph.internal_pairs) and choice.specs == sg.spec:
            continue  # Γ̄ itself: reduces to Γ̄ ⊗ 1
        try:
            quotient = contract_specified(sg, choice, theory)
        except NotInTheory:
            continue
        left = reduce_monomial(Monomial(subgraph_factors(sg, choice)))
        mid.append((Tensor((left, Monomial((quotient,)))), 1))
    return LinComb.from_pairs(mid)


@lru_cache(maxsize=100_000)
def _reduced_generator(sg: SpecifiedGraph, theory: Theory) -> LinComb:
    if sg.is_residue:
        return LinComb.of(Tensor((UNIT, UNIT)))
    me = Monomial((sg,))
    return (
        LinComb.of(Tensor((UNIT, me)))
        + LinComb.of(Tensor((me, UNIT)))
        + proper_terms(sg, theory)
    )


def coproduct_reduced_monomial(mon: Monomial, theory: Theory) -> LinComb:
    acc = LinComb.of(Tensor((UNIT, UNIT)))
    for f in mon.factors:
        acc = tensor_product(acc, _reduced_generator(f, theory))
    return acc


def coproduct_reduced(x, theory: Theory) -> LinComb:
    """Coproduct of the quotient algebra, written as 1⊗Γ̄ + Γ̄⊗1 + proper terms."""
    return reduce_mod_J(x).map(lambda mon: coproduct_reduced_monomial(mon, theory))


@lru_cache(maxsize=100_000)
def _antipode_generator(sg: SpecifiedGraph, theory: Theory) -> LinComb:
    if sg.is_residue:
        return LinComb.of(UNIT)
    out = -LinComb.of(Monomial((sg,)))
    for t, c in proper_terms(sg, theory):
        left, right = t.parts
        out = out - c * _antipode_monomial(left, theory).map(lambda mm: LinComb.of(mm * right))
    return out


def _antipode_monomial(mon: Monomial, theory: Theory) -> LinComb:
    acc = LinComb.of(UNIT)
    for f in mon.factors:
        s = _antipode_generator(f, theory)
        acc = acc.bimap(s, lambda a, b: LinComb.of(a * b))
    return acc


def antipode(x, theory: Theory) -> LinComb:
    return reduce_mod_J(x).map(lambda mon: _antipode_monomial(mon, theory))


def convolution(x, theory: Theory, left_antipode: bool = True) -> LinComb:
    """m(S ⊗ I)Δ(x), or m(I ⊗ S)Δ(x) when ``left_antipode`` is false."""
    d = coproduct_reduced(x, theory)

    def apply(t: Tensor):
        a, b = t.parts
        if left_antipode:
            return _antipode_monomial(a, theory).map(lambda u: LinComb.of(u * b))
        return _antipode_monomial(b, theory).map(lambda u: LinComb.of(a * u))

    return d.map(apply)


def counit_reduced(x) -> object:
    return reduce_mod_J(x).coeff(UNIT)
