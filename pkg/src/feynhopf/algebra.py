"""Exact formal linear combinations over the rationals.

Basis objects are anything with a hashable, totally ordered ``key``; equal
keys mean equal basis elements.  Coefficients stay ``int`` until a division
forces ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Any, Callable, Iterable, Iterator


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LinComb:
    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        # key -> [coeff, representative]
        self._terms = terms if terms is not None else {}

    @classmethod
    def of(cls, obj, coeff=1) -> "LinComb":
        if coeff == 0:
            return cls()
        return cls({obj.key: (_norm(coeff), obj)})

    @classmethod
    def sum(cls, items: Iterable["LinComb"]) -> "LinComb":
        acc: dict = {}
        for lc in items:
            _accumulate(acc, lc._terms.values())
        return cls(_prune(acc))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Any, Any]]) -> "LinComb":
        """Build from ``(obj, coeff)`` pairs, merging equal keys."""
        acc: dict = {}
        for obj, c in pairs:
            k = obj.key
            if k in acc:
                acc[k] = (acc[k][0] + c, acc[k][1])
            else:
                acc[k] = (c, obj)
        return cls(_prune(acc))

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Any, Any]]:
        """Yield ``(obj, coeff)`` in key order."""
        for k in sorted(self._terms):
            c, obj = self._terms[k]
            yield obj, c

    def items(self):
        return list(self)

    def keys(self):
        return sorted(self._terms)

    def coeff(self, obj_or_key) -> Any:
        k = getattr(obj_or_key, "key", obj_or_key)
        t = self._terms.get(k)
        return t[0] if t else 0

    def __add__(self, other: "LinComb") -> "LinComb":
        acc = dict(self._terms)
        _accumulate(acc, other._terms.values())
        return LinComb(_prune(acc))

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar) -> "LinComb":
        if scalar == 0:
            return LinComb()
        return LinComb({k: (_norm(c * scalar), o) for k, (c, o) in self._terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        if self._terms.keys() != other._terms.keys():
            return False
        return all(self._terms[k][0] == other._terms[k][0] for k in self._terms)

    def __hash__(self):
        return hash(tuple(sorted((k, c) for k, (c, _) in self._terms.items())))

    def map(self, fn: Callable[[Any], "LinComb"]) -> "LinComb":
        """Linear extension of ``fn`` from basis objects."""
        acc: dict = {}
        for c, obj in self._terms.values():
            _accumulate(acc, ((c * c2, o2) for c2, o2 in fn(obj)._terms.values()))
        return LinComb(_prune(acc))

    def bimap(self, other: "LinComb", fn: Callable[[Any, Any], "LinComb"]) -> "LinComb":
        """Bilinear extension of ``fn``."""
        acc: dict = {}
        for c1, o1 in self._terms.values():
            for c2, o2 in other._terms.values():
                _accumulate(acc, ((c1 * c2 * c3, o3) for c3, o3 in fn(o1, o2)._terms.values()))
        return LinComb(_prune(acc))

    def filter(self, pred) -> "LinComb":
        return LinComb({k: t for k, t in self._terms.items() if pred(t[1])})

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{o!r}" for o, c in self)

    def to_json(self, render=lambda o: o.to_json()) -> list[dict]:
        return [{"coeff": str(Fraction(c)), "object": render(o)} for o, c in self]


def _accumulate(acc, terms):
    for c, obj in terms:
        k = obj.key
        t = acc.get(k)
        acc[k] = (c, obj) if t is None else (t[0] + c, t[1])


def _prune(acc):
    return {k: (_norm(c), o) for k, (c, o) in acc.items() if c != 0}


class Monomial:
    """A commutative word of basis objects; the empty word is the unit."""

    __slots__ = ("factors", "key")

    def __init__(self, factors: Iterable = ()):
        fs = tuple(sorted(factors, key=lambda f: f.key))
        self.factors = fs
        self.key = tuple(f.key for f in fs)

    def __len__(self):
        return len(self.factors)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.factors + other.factors)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if not self.factors:
            return "1"
        return "·".join(repr(f) for f in self.factors)

    def without(self, i: int) -> "Monomial":
        return Monomial(self.factors[:i] + self.factors[i + 1 :])

    def to_json(self):
        return [f.to_json() for f in self.factors]


UNIT = Monomial()


class Tensor:
    """Elementary tensor of monomials (or other basis objects)."""

    __slots__ = ("parts", "key")

    def __init__(self, parts: Iterable):
        self.parts = tuple(parts)
        self.key = tuple(p.key for p in self.parts)

    def __repr__(self):
        return " ⊗ ".join(repr(p) for p in self.parts)

    def to_json(self):
        return [p.to_json() for p in self.parts]


def one() -> LinComb:
    return LinComb.of(UNIT)


def mono(*factors) -> LinComb:
    return LinComb.of(Monomial(factors))


def m(a: LinComb, b: LinComb) -> LinComb:
    """Commutative product of monomial combinations."""
    return a.bimap(b, lambda x, y: LinComb.of(x * y))


def counit(a: LinComb) -> Any:
    return a.coeff(UNIT)


def degree(b, weight=None) -> int:
    """Total grading of a monomial; ``weight`` defaults to each factor's ``degree``."""
    if isinstance(b, Monomial):
        return sum((weight or (lambda f: f.degree))(f) for f in b.factors)
    return (weight or (lambda f: f.degree))(b)


def tensor(a: LinComb, b: LinComb) -> LinComb:
    return a.bimap(b, lambda x, y: LinComb.of(Tensor((x, y))))


def tensor_product(t1: LinComb, t2: LinComb) -> LinComb:
    """Componentwise product of two tensor combinations of monomials."""

    def mul(x: Tensor, y: Tensor):
        return LinComb.of(Tensor(p * q for p, q in zip(x.parts, y.parts)))

    return t1.bimap(t2, mul)


def tensor_map(t: LinComb, fns) -> LinComb:
    """Apply one linear map per tensor slot (``None`` = identity)."""

    def apply(x: Tensor):
        acc = LinComb.of(Tensor(()))
        for part, fn in zip(x.parts, fns):
            img = LinComb.of(part) if fn is None else fn(part)
            acc = acc.bimap(img, lambda u, w: LinComb.of(Tensor(u.parts + (w,))))
        return acc

    return t.map(apply)


def flatten(t: LinComb) -> LinComb:
    """Flatten nested tensors into one level."""

    def flat(x):
        if isinstance(x, Tensor):
            out = []
            for p in x.parts:
                if isinstance(p, Tensor):
                    out.extend(_flat_parts(p))
                else:
                    out.append(p)
            return LinComb.of(Tensor(out))
        return LinComb.of(x)

    return t.map(flat)


def _flat_parts(p):
    out = []
    for q in p.parts:
        out.extend(_flat_parts(q) if isinstance(q, Tensor) else [q])
    return out


def unshuffle(mon: Monomial) -> LinComb:
    """Coproduct of the symmetric algebra: ordered splittings of the multiset."""
    groups: list[tuple[Any, int]] = []
    for f in mon.factors:
        if groups and groups[-1][0].key == f.key:
            groups[-1] = (groups[-1][0], groups[-1][1] + 1)
        else:
            groups.append((f, 1))
    splits = [((), (), 1)]
    for f, k in groups:
        splits = [
            (left + (f,) * i, right + (f,) * (k - i), c * comb(k, i))
            for left, right, c in splits
            for i in range(k + 1)
        ]
    return LinComb.from_pairs(
        (Tensor((Monomial(left), Monomial(right))), c) for left, right, c in splits
    )


def unshuffle_terms(mon: Monomial) -> list[tuple[Monomial, Monomial, int]]:
    return [(t.parts[0], t.parts[1], c) for t, c in unshuffle(mon)]
