"""Alexander polynomials of torus knots and their torsion coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping

Poly = dict  # exponent -> integer coefficient, zero terms omitted


def _clean(poly: Mapping[int, int]) -> Poly:
    return {e: c for e, c in poly.items() if c}


def poly_mul(f: Mapping[int, int], g: Mapping[int, int]) -> Poly:
    out: Poly = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return _clean(out)


def poly_divexact(f: Mapping[int, int], g: Mapping[int, int]) -> Poly:
    """Quotient f / g over the integers; the division must be exact.

    ``g`` must have leading coefficient +1 or -1 so that long division stays
    integral.
    """
    g = _clean(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = g[max(g)]
    if lead not in (1, -1):
        raise ValueError("divisor must have unit leading coefficient")
    rem = _clean(dict(f))
    if not rem:
        return {}
    # Laurent case: shift both to start at exponent 0, divide, shift back
    fmin, gmin = min(rem), min(g)
    if fmin or gmin:
        f0 = {e - fmin: c for e, c in rem.items()}
        g0 = {e - gmin: c for e, c in g.items()}
        return {e + fmin - gmin: c for e, c in poly_divexact(f0, g0).items()}
    gdeg = max(g)
    quot: Poly = {}
    while rem and max(rem) >= gdeg:
        d = max(rem)
        c = rem[d] * lead
        quot[d - gdeg] = c
        for e, ce in g.items():
            rem[e + d - gdeg] = rem.get(e + d - gdeg, 0) - c * ce
        rem = _clean(rem)
    if rem:
        raise ArithmeticError(f"inexact polynomial division, remainder {rem}")
    return quot


def _binomial(n: int) -> Poly:
    # t^n - 1
    return _clean({n: 1, 0: -1}) if n else {}


@dataclass(frozen=True)
class SymmetrizedAlexander:
    """Symmetric Laurent polynomial normalized so that Delta(1) = 1."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        terms = tuple(sorted((e, c) for e, c in dict(self.terms).items() if c))
        object.__setattr__(self, "terms", terms)
        coeffs = dict(terms)
        if any(coeffs.get(-e, 0) != c for e, c in coeffs.items()):
            raise ValueError(f"Alexander polynomial is not symmetric: {coeffs}")
        if sum(coeffs.values()) != 1:
            raise ValueError(f"Alexander polynomial does not evaluate to 1 at t=1: {coeffs}")

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, int]) -> SymmetrizedAlexander:
        return cls(tuple(coeffs.items()))

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self.terms)

    def __getitem__(self, k: int) -> int:
        return self.coefficients.get(k, 0)

    @property
    def degree(self) -> int:
        return max((e for e, _ in self.terms), default=0)

    def __str__(self) -> str:
        return render_poly(self.coefficients)


def render_poly(coeffs: Mapping[int, int], var: str = "t") -> str:
    """Human form such as ``t^-1 - 1 + t``."""
    parts = []
    for e in sorted(coeffs):
        c = coeffs[e]
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            mono = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if mag != 1:
                mono = f"{mag}*{mono}"
        if not parts:
            parts.append(mono if c > 0 else f"-{mono}")
        else:
            parts.append(("+ " if c > 0 else "- ") + mono)
    return " ".join(parts) if parts else "0"


def torus_knot_alexander(p: int, q: int) -> SymmetrizedAlexander:
    """Symmetrized Alexander polynomial of the (p, q) torus knot.

    Computed as (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)) by exact division,
    then shifted to be centred at exponent 0. T(1, q) is the unknot.
    """
    if p < 1 or q < 1:
        raise ValueError(f"torus knot parameters must be positive, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"torus knot parameters must be coprime, got ({p}, {q})")
    num = poly_mul(_binomial(p * q), _binomial(1))
    den = poly_mul(_binomial(p), _binomial(q))
    quot = poly_divexact(num, den)
    shift = (p - 1) * (q - 1) // 2
    return SymmetrizedAlexander.from_coefficients({e - shift: c for e, c in quot.items()})


def torsion_coefficient(delta: SymmetrizedAlexander, i: int) -> int:
    """t_i = sum over j >= 1 of j * a_{|i| + j}."""
    coeffs = delta.coefficients
    i = abs(i)
    return sum(j * coeffs.get(i + j, 0) for j in range(1, delta.degree - i + 1))


def torsion_coefficients(delta: SymmetrizedAlexander) -> list[int]:
    """t_0, t_1, ... up to the last nonzero one (empty for the unknot)."""
    ts = [torsion_coefficient(delta, i) for i in range(delta.degree)]
    while ts and ts[-1] == 0:
        ts.pop()
    return ts
