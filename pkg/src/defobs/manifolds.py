"""Registry of 3-manifold atoms and the connected-sum descriptor language.

Descriptor grammar (whitespace is insignificant)::

    manifold := term { "#" term } | "S3"
    term     := [ "-" ] [ integer "*" ] atom
    atom     := [ "-" ] base
    base     := NAME | "sigma(" int "," int "," int ")"
              | "surgery(T(" int "," int ")," int ")"

NAME is any registered atom, by default ``P`` (the Poincare sphere,
oriented as the boundary of the negative definite E8 plumbing) and ``O``
(the octahedral manifold with Seifert invariants (-2; 1/2, 2/3, 3/4),
oriented as the boundary of the negative definite E7 plumbing). Each minus
sign reverses orientation, so ``-25*O`` and ``25*-O`` are the same term.

Atoms are canonicalized on construction: ``sigma(2,3,5)`` is ``P`` and
``surgery(T(2,3),2)`` is ``-O``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

from .errors import DescriptorError, UnknownAtomError, UnsupportedAtomError
from .exact import FiniteAbelianGroup


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    pi1_order: Optional[int]
    h1: tuple[int, ...]
    d_values: tuple[tuple[tuple[int, ...], Fraction], ...]
    brieskorn: Optional[tuple[int, int, int]] = None
    description: str = ""


_REGISTRY: dict[str, RegistryEntry] = {}


def register_atom(
    name: str,
    pi1_order: Optional[int],
    h1: Iterable[int],
    d_values: dict,
    brieskorn: Optional[tuple[int, int, int]] = None,
    description: str = "",
) -> RegistryEntry:
    """Add a named atom. Meant to be called at import/setup time only."""
    if not re.fullmatch(r"[A-Z][A-Za-z0-9_]*", name) or name == "S3":
        raise ValueError(f"invalid atom name {name!r}")
    group = FiniteAbelianGroup(tuple(h1))
    labels = set(group.elements())
    d = tuple(sorted((tuple(k), Fraction(v)) for k, v in d_values.items()))
    if {k for k, _ in d} != labels:
        raise ValueError(f"d-invariant labels for {name} must be exactly the elements of {group}")
    if pi1_order is not None and pi1_order % group.order:
        raise ValueError(f"|H1| must divide |pi1| for {name}")
    entry = RegistryEntry(name, pi1_order, group.invariant_factors, d, brieskorn, description)
    _REGISTRY[name] = entry
    lookup.cache_clear()
    return entry


def registry() -> dict[str, RegistryEntry]:
    return dict(_REGISTRY)


# ------------------------------------------------------------------- atoms

_KIND_RANK = {"sigma": 1, "surgery": 2}


@dataclass(frozen=True)
class Atom:
    """One prime summand with orientation +1 or -1.

    ``kind`` is a registered name, ``"sigma"`` (params p < q < r) or
    ``"surgery"`` (params (p, q, n): n-surgery on the torus knot T(p, q)).
    Build atoms with :func:`named`, :func:`brieskorn`, :func:`surgery` or
    the parser so that equal manifolds get equal atoms.
    """

    kind: str
    params: tuple[int, ...] = ()
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def reverse(self) -> Atom:
        return Atom(self.kind, self.params, -self.orientation)

    def positive(self) -> Atom:
        return Atom(self.kind, self.params, 1)

    def sort_key(self):
        return (_KIND_RANK.get(self.kind, 0), self.kind, self.params, -self.orientation)

    def base_text(self) -> str:
        if self.kind == "sigma":
            return "sigma({},{},{})".format(*self.params)
        if self.kind == "surgery":
            p, q, n = self.params
            return f"surgery(T({p},{q}),{n})"
        return self.kind

    def __str__(self) -> str:
        return ("-" if self.orientation < 0 else "") + self.base_text()


def brieskorn(p: int, q: int, r: int, orientation: int = 1) -> Atom:
    p, q, r = sorted((p, q, r))
    if p < 2:
        raise ValueError(f"Brieskorn parameters must be at least 2, got {(p, q, r)}")
    if gcd(p, q) != 1 or gcd(p, r) != 1 or gcd(q, r) != 1:
        raise ValueError(f"Brieskorn parameters must be pairwise coprime, got {(p, q, r)}")
    for name, entry in _REGISTRY.items():
        if entry.brieskorn == (p, q, r):
            return Atom(name, (), orientation)
    return Atom("sigma", (p, q, r), orientation)


def surgery(p: int, q: int, n: int = 2, orientation: int = 1) -> Atom:
    if n != 2:
        raise ValueError(f"only +2-surgery is supported, got coefficient {n}")
    if p < 1 or q < 1:
        raise ValueError(f"torus knot parameters must be positive, got T({p},{q})")
    if gcd(p, q) != 1:
        raise ValueError(f"torus knot parameters must be coprime, got T({p},{q})")
    p, q = sorted((p, q))
    if p == 1:
        q = 1
    if (p, q) == (2, 3) and "O" in _REGISTRY:
        return Atom("O", (), -orientation)
    return Atom("surgery", (p, q, n), orientation)


def named(name: str, orientation: int = 1) -> Atom:
    if name not in _REGISTRY:
        raise UnknownAtomError(f"unknown atom {name!r}")
    return Atom(name, (), orientation)


# -------------------------------------------------------------- manifolds


@dataclass(frozen=True)
class Manifold:
    """Oriented connected sum; ``summands`` is a canonical tuple of
    (atom, multiplicity) pairs, empty for S^3."""

    summands: tuple[tuple[Atom, int], ...] = ()

    def __post_init__(self):
        counts: Counter = Counter()
        for atom, mult in self.summands:
            if not isinstance(mult, int) or mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
            counts[atom] += mult
        object.__setattr__(
            self, "summands", tuple(sorted(counts.items(), key=lambda am: am[0].sort_key()))
        )

    @classmethod
    def of(cls, *atoms: Atom) -> Manifold:
        return cls(tuple((a, 1) for a in atoms))

    def atoms(self) -> list[Atom]:
        """Summands expanded by multiplicity."""
        return [a for a, mult in self.summands for _ in range(mult)]

    def multiplicity(self, atom: Atom) -> int:
        return dict(self.summands).get(atom, 0)

    def reverse(self) -> Manifold:
        return Manifold(tuple((a.reverse(), m) for a, m in self.summands))

    def __add__(self, other: Manifold) -> Manifold:
        return Manifold(self.summands + other.summands)

    def is_s3(self) -> bool:
        return not self.summands

    def render(self) -> str:
        if not self.summands:
            return "S3"
        terms = []
        for atom, mult in self.summands:
            if mult == 1:
                terms.append(str(atom))
            else:
                sign = "-" if atom.orientation < 0 else ""
                terms.append(f"{sign}{mult}*{atom.base_text()}")
        return " # ".join(terms)

    __str__ = render


def family(m: int, k: int) -> Manifold:
    """The manifold m P # -k O (k may be negative, giving |k| copies of O)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    terms = []
    if m:
        terms.append((P, m))
    if k > 0:
        terms.append((O.reverse(), k))
    elif k < 0:
        terms.append((O, -k))
    return Manifold(tuple(terms))


def family_parameters(manifold: Manifold) -> Optional[tuple[int, int]]:
    """(m, k) if the manifold is literally m P # -k O with m, k >= 1."""
    summands = dict(manifold.summands)
    if set(summands) != {P, O.reverse()}:
        return None
    return summands[P], summands[O.reverse()]


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<punct>[()#*,\-]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise DescriptorError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return DescriptorError(message, tok[2], self.text)

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def integer(self):
        tok = self.take()
        if tok[0] != "int":
            raise self.error(f"expected an integer, found {tok[1] or 'end of input'!r}", tok)
        return int(tok[1]), tok

    def manifold(self) -> Manifold:
        if self.peek()[:2] == ("name", "S3"):
            self.take()
            self.finish()
            return Manifold()
        terms = [self.term()]
        while self.peek()[1] == "#":
            self.take()
            terms.append(self.term())
        self.finish()
        return Manifold(tuple(terms))

    def finish(self):
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}", tok)

    def term(self) -> tuple[Atom, int]:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -sign
        mult = 1
        if self.peek()[0] == "int":
            mult, tok = self.integer()
            if mult < 1:
                raise self.error("multiplicity must be positive", tok)
            self.expect("*")
        if self.peek()[1] == "-":
            self.take()
            sign = -sign
        atom = self.base()
        return (atom if sign > 0 else atom.reverse()), mult

    def base(self) -> Atom:
        tok = self.take()
        if tok[0] != "name":
            raise self.error(f"expected an atom, found {tok[1] or 'end of input'!r}", tok)
        name = tok[1]
        if name == "sigma":
            self.expect("(")
            params = [self.integer()[0]]
            for _ in range(2):
                self.expect(",")
                params.append(self.integer()[0])
            self.expect(")")
            try:
                return brieskorn(*params)
            except ValueError as exc:
                raise self.error(str(exc), tok) from None
        if name == "surgery":
            self.expect("(")
            knot = self.take()
            if knot[1] != "T":
                raise self.error("expected a torus knot T(p,q)", knot)
            self.expect("(")
            p = self.integer()[0]
            self.expect(",")
            q = self.integer()[0]
            self.expect(")")
            self.expect(",")
            n = self.integer()[0]
            self.expect(")")
            try:
                return surgery(p, q, n)
            except ValueError as exc:
                raise self.error(str(exc), tok) from None
        if name in _REGISTRY:
            return Atom(name)
        raise UnknownAtomError(f"unknown atom {name!r}", tok[2], self.text)


def parse_descriptor(text: str) -> Manifold:
    """Parse a connected-sum descriptor such as ``"3*P # -25*O"``."""
    return _Parser(text).manifold()


# ----------------------------------------------------------------- records


@dataclass(frozen=True)
class AtomRecord:
    """Invariants of an oriented atom. ``pi1_order`` is None when infinite;
    ``d_table`` and ``cs_spectrum`` are None when not computable here."""

    atom: Atom
    pi1_order: Optional[int]
    h1: FiniteAbelianGroup
    d_table: Optional["DInvariantTable"]  # noqa: F821
    flat_data: Optional[tuple[int, int, int]] = None
    cs_spectrum: Optional[tuple] = field(default=None, repr=False)

    @property
    def spherical(self) -> bool:
        return self.pi1_order is not None


def spherical_pi1_order(cone_orders: tuple[int, int, int], euler: Fraction) -> Optional[int]:
    """|pi1| of a Seifert manifold over S^2 with three cone points.

    Finite exactly when the base orbifold is spherical, and then equal to
    4|e| / chi^2 with chi the orbifold Euler characteristic. None when
    infinite.
    """
    a, b, c = cone_orders
    chi = Fraction(1, a) + Fraction(1, b) + Fraction(1, c) - 1
    if chi <= 0 or euler == 0:
        return None
    order = 4 * abs(euler) / chi**2
    if order.denominator != 1:
        raise ArithmeticError(f"non-integral |pi1| {order} for cone orders {cone_orders}")
    return int(order)


@lru_cache(maxsize=None)
def lookup(atom: Atom) -> AtomRecord:
    """Invariant record of an oriented atom.

    Reversing orientation negates every d-invariant and every Chern-Simons
    value mod 1.
    """
    from .correction_terms import DInvariantTable, surgery2_d_table
    from .flat import cs_spectrum

    if atom.kind in _REGISTRY:
        entry = _REGISTRY[atom.kind]
        table = DInvariantTable(entry.d_values)
        record = AtomRecord(
            atom.positive(),
            entry.pi1_order,
            FiniteAbelianGroup(entry.h1),
            table,
            entry.brieskorn,
            cs_spectrum(*entry.brieskorn) if entry.brieskorn else None,
        )
    elif atom.kind == "sigma":
        p, q, r = atom.params
        record = AtomRecord(
            atom.positive(),
            spherical_pi1_order((p, q, r), Fraction(1, p * q * r)),
            FiniteAbelianGroup(),
            None,
            (p, q, r),
            cs_spectrum(p, q, r),
        )
    elif atom.kind == "surgery":
        p, q, n = atom.params
        if p == 1:
            order = n  # lens space L(n, 1)
        else:
            order = spherical_pi1_order((p, q, abs(p * q - n)), Fraction(n, p * q * abs(p * q - n)))
        record = AtomRecord(
            atom.positive(), order, FiniteAbelianGroup((n,)), surgery2_d_table(p, q), None, None
        )
    else:
        raise UnsupportedAtomError(f"unregistered atom kind {atom.kind!r}")
    if atom.orientation < 0:
        record = _reversed(record)
    return record


def _reversed(record: AtomRecord) -> AtomRecord:
    return AtomRecord(
        record.atom.reverse(),
        record.pi1_order,
        record.h1,
        record.d_table.negate() if record.d_table is not None else None,
        record.flat_data,
        tuple(c.reverse() for c in record.cs_spectrum) if record.cs_spectrum is not None else None,
    )


# ------------------------------------------------------- built-in atoms

register_atom(
    "P",
    pi1_order=120,
    h1=(),
    d_values={(): 2},
    brieskorn=(2, 3, 5),
    description="Poincare sphere Sigma(2,3,5), boundary of the negative definite E8 plumbing",
)
# H1(O) = Z/2 as for -2-surgery on the left-handed trefoil; d-values are the
# negatives of those of S^3_2(T(2,3)) = -O.
register_atom(
    "O",
    pi1_order=48,
    h1=(2,),
    d_values={(0,): Fraction(7, 4), (1,): Fraction(1, 4)},
    description="octahedral manifold (-2; 1/2, 2/3, 3/4), boundary of the negative definite E7 plumbing",
)

P = named("P")
O = named("O")
