from dataclasses import dataclass
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from feynhopf.algebra import (
    UNIT,
    LinComb,
    Monomial,
    Tensor,
    counit,
    degree,
    flatten,
    m,
    mono,
    one,
    tensor,
    tensor_map,
    unshuffle,
)


@dataclass(frozen=True)
class Atom:
    name: str
    degree: int = 1

    @property
    def key(self):
        return self.name

    def to_json(self):
        return self.name


X, Y, Z = Atom("x"), Atom("y", 2), Atom("z")
atoms = st.sampled_from([X, Y, Z])
combos = st.lists(st.tuples(st.lists(atoms, max_size=3), st.integers(-3, 3)), max_size=4).map(
    lambda ts: LinComb.from_pairs((Monomial(fs), c) for fs, c in ts)
)


def test_monomial_is_commutative():
    assert Monomial((X, Y)) == Monomial((Y, X))
    assert Monomial((X, X)) != Monomial((X,))
    assert len(UNIT) == 0 and repr(UNIT) == "1"


def test_cancellation_and_coefficients():
    a = mono(X) + mono(Y)
    assert (a - mono(X)) == mono(Y)
    assert not (a - a)
    half = Fraction(1, 2) * a
    assert half.coeff(Monomial((X,))) == Fraction(1, 2)
    assert (2 * half) == a
    assert isinstance((2 * half).coeff(Monomial((X,))), int)


def test_iteration_is_sorted():
    a = mono(Z) + mono(X) + mono(Y)
    keys = [mm.key for mm, _ in a]
    assert keys == sorted(keys)


def test_unshuffle():
    # Ψ(x²) = x²⊗1 + 2 x⊗x + 1⊗x²
    d = unshuffle(Monomial((X, X)))
    assert d.coeff(Tensor((Monomial((X,)), Monomial((X,))))) == 2
    assert len(d) == 3
    assert sum(c for _, c in unshuffle(Monomial((X, Y, Z)))) == 8


def test_counit_and_degree():
    assert counit(one() + mono(X)) == 1
    assert degree(Monomial((X, Y))) == 3


def test_tensor_helpers():
    t = tensor(mono(X), mono(Y))
    assert len(t) == 1
    swapped = tensor_map(t, (lambda a: LinComb.of(a), lambda b: LinComb.of(b)))
    assert swapped == t
    nested = tensor_map(t, (lambda a: tensor(LinComb.of(a), one()), None))
    assert all(len(tt.parts) == 3 for tt, _ in flatten(nested))


@given(combos, combos, combos)
def test_product_laws(a, b, c):
    assert m(a, b) == m(b, a)
    assert m(m(a, b), c) == m(a, m(b, c))
    assert m(a, b + c) == m(a, b) + m(a, c)
    assert m(one(), a) == a


@given(combos)
def test_unshuffle_counit(a):
    # (ε⊗I)Ψ = I
    d = a.map(unshuffle)
    back = LinComb.sum(c * LinComb.of(t.parts[1]) for t, c in d if not t.parts[0].factors)
    assert back == a


@given(combos, combos)
def test_unshuffle_is_multiplicative(a, b):
    from feynhopf.algebra import tensor_product

    lhs = m(a, b).map(unshuffle)
    rhs = tensor_product(a.map(unshuffle), b.map(unshuffle))
    assert lhs == rhs
