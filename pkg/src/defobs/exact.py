"""Exact rationals, residues in Q/Z, and finite abelian groups.

Rationals are :class:`fractions.Fraction`; every invariant in the package
is carried exactly and no floating point value ever enters a verdict.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterator, Union

Rational = Fraction

RationalLike = Union[Fraction, int]


def rat(p: int, q: int = 1) -> Fraction:
    """Reduced fraction p/q with positive denominator."""
    if q == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(p, q)


def render(x: RationalLike) -> str:
    """``"p/q"``, or ``"n"`` for integers."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True, order=True)
class ModOne:
    """An element of Q/Z, stored by its representative in [0, 1)."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - (v.numerator // v.denominator))

    def __add__(self, other: ModOne | RationalLike) -> ModOne:
        return ModOne(self.value + _lift(other))

    __radd__ = __add__

    def __sub__(self, other: ModOne | RationalLike) -> ModOne:
        return ModOne(self.value - _lift(other))

    def __rsub__(self, other: RationalLike) -> ModOne:
        return ModOne(Fraction(other) - self.value)

    def __neg__(self) -> ModOne:
        return ModOne(-self.value)

    def __mul__(self, n: int) -> ModOne:
        if not isinstance(n, int):
            return NotImplemented
        return ModOne(self.value * n)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value == 0

    def min_positive_lift(self) -> Fraction:
        """Smallest positive rational in this class (1 for the zero class)."""
        return self.value if self.value else Fraction(1)

    def __str__(self) -> str:
        return render(self.value)

    def __repr__(self) -> str:
        return f"ModOne({self})"


def _lift(x: ModOne | RationalLike) -> Fraction:
    return x.value if isinstance(x, ModOne) else Fraction(x)


def mod_one(x: RationalLike) -> ModOne:
    return ModOne(Fraction(x))


def _normal_form(orders) -> tuple[int, ...]:
    # Smith-style merging: Z/a + Z/b = Z/gcd(a,b) + Z/lcm(a,b).
    factors = sorted(int(n) for n in orders)
    if any(n <= 0 for n in factors):
        raise ValueError(f"cyclic factor orders must be positive, got {list(orders)}")
    changed = True
    while changed:
        changed = False
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                if b % a:
                    g = gcd(a, b)
                    factors[i], factors[j] = g, a * b // g
                    changed = True
        factors.sort()
    return tuple(n for n in factors if n > 1)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group in invariant-factor normal form.

    Any list of cyclic orders is accepted and normalized, so
    ``FiniteAbelianGroup((6, 4))`` is stored as ``(2, 12)``.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", _normal_form(self.invariant_factors))

    @classmethod
    def trivial(cls) -> FiniteAbelianGroup:
        return cls(())

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_two_torsion(self) -> bool:
        return all(n == 2 for n in self.invariant_factors)

    def __mul__(self, other: FiniteAbelianGroup) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.invariant_factors + other.invariant_factors)

    def elements(self) -> Iterator[tuple[int, ...]]:
        """Elements as residue tuples, one residue per invariant factor."""
        return itertools.product(*(range(n) for n in self.invariant_factors))

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{n}" for n in self.invariant_factors)


def hom_counts(group: FiniteAbelianGroup) -> tuple[int, int]:
    """Number of homomorphisms from ``group`` to the circle and to {+1, -1}.

    Characters of Z/n are n in number; exactly two of them are real when n
    is even and one otherwise.
    """
    to_circle = group.order
    to_pm1 = 2 ** sum(1 for n in group.invariant_factors if n % 2 == 0)
    return to_circle, to_pm1


def abelian_groups(order: int) -> Iterator[FiniteAbelianGroup]:
    """Every abelian group of the given order, each exactly once."""
    if order < 1:
        raise ValueError("group order must be positive")

    def chains(remaining, step):
        if remaining == 1:
            yield ()
            return
        for f in range(step, remaining + 1, step):
            if f >= 2 and remaining % f == 0:
                for rest in chains(remaining // f, f):
                    yield (f,) + rest

    for factors in chains(order, 1):
        yield FiniteAbelianGroup(factors)
