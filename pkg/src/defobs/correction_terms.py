"""Heegaard Floer correction terms and the negative-definite obstruction.

A d-invariant table maps spin-c labels (elements of H_1, written as residue
tuples) to rationals. Tables add under connected sum and negate under
orientation reversal. Products of many tables are never materialized for
the obstruction: the maximum of a sum table is the sum of the maxima.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .alexander import torsion_coefficient, torus_knot_alexander
from .errors import UnsupportedAtomError
from .manifolds import Manifold, family_parameters, lookup

MAX_MATERIALIZED = 2**20

OBSTRUCTED = "obstructed"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DInvariantTable:
    entries: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __init__(self, entries: Mapping | Iterable):
        items = entries.items() if isinstance(entries, Mapping) else entries
        object.__setattr__(
            self, "entries", tuple(sorted((tuple(k), Fraction(v)) for k, v in items))
        )

    def __getitem__(self, label) -> Fraction:
        return dict(self.entries)[tuple(label)]

    def __len__(self) -> int:
        return len(self.entries)

    def labels(self) -> list[tuple[int, ...]]:
        return [k for k, _ in self.entries]

    def values(self) -> list[Fraction]:
        """Values as a sorted multiset (labels dropped)."""
        return sorted(v for _, v in self.entries)

    def max(self) -> Fraction:
        return max(v for _, v in self.entries)

    def negate(self) -> DInvariantTable:
        return DInvariantTable((k, -v) for k, v in self.entries)

    def as_dict(self) -> dict:
        return dict(self.entries)


S3_TABLE = DInvariantTable({(): 0})


def surgery2_d_table(p: int, q: int, coefficient: int = 2) -> DInvariantTable:
    """Correction terms of +2-surgery on the torus knot T(p, q).

    With t_i the torsion coefficients, the two spin-c structures carry
    1/4 - 2 t_0 and -1/4 - 2 t_1 (Owens-Strle labelling).
    """
    if coefficient != 2:
        raise ValueError(f"only +2-surgery is supported, got coefficient {coefficient}")
    delta = torus_knot_alexander(p, q)
    return DInvariantTable({
        (0,): Fraction(1, 4) - 2 * torsion_coefficient(delta, 0),
        (1,): Fraction(-1, 4) - 2 * torsion_coefficient(delta, 1),
    })


def iter_connected_sum(tables: list[DInvariantTable]) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Stream (label, d) over the product of label sets."""
    def rec(i):
        if i == len(tables):
            yield (), Fraction(0)
            return
        for label, value in tables[i].entries:
            for rest, total in rec(i + 1):
                yield label + rest, value + total
    return rec(0)


def connected_sum_d(tables: list[DInvariantTable]) -> DInvariantTable:
    """Materialized table of a connected sum; labels are concatenated."""
    size = 1
    for t in tables:
        size *= len(t)
    if size > MAX_MATERIALIZED:
        raise ValueError(
            f"connected-sum table has {size} entries; use d_value_counts or max_correction_term"
        )
    return DInvariantTable(iter_connected_sum(tables))


def d_value_counts(tables: list[DInvariantTable]) -> Counter:
    """Multiset of values of the connected-sum table, by convolution."""
    counts = Counter({Fraction(0): 1})
    for t in tables:
        step = Counter(t.values())
        new: Counter = Counter()
        for a, ca in counts.items():
            for b, cb in step.items():
                new[a + b] += ca * cb
        counts = new
    return counts


def d_tables(manifold: Manifold) -> list[DInvariantTable]:
    """One table per prime summand (repeated by multiplicity)."""
    tables = []
    for atom, mult in manifold.summands:
        table = lookup(atom).d_table
        if table is None:
            raise UnsupportedAtomError(f"no d-invariant data for {atom}")
        tables.extend([table] * mult)
    return tables


def max_correction_term(manifold: Manifold) -> Fraction:
    total = Fraction(0)
    for atom, mult in manifold.summands:
        table = lookup(atom).d_table
        if table is None:
            raise UnsupportedAtomError(f"no d-invariant data for {atom}")
        total += mult * table.max()
    return total


@dataclass(frozen=True)
class NegativeDefiniteVerdict:
    verdict: str
    witness: Fraction
    threshold: Fraction
    family: tuple[int, int] | None = None

    @property
    def obstructed(self) -> bool:
        return self.verdict == OBSTRUCTED


def negative_definite_threshold(manifold: Manifold) -> Fraction:
    """Lower bound on max d for a manifold bounding a negative definite
    4-manifold: 1/4 for m P # -k O with k odd, else 0."""
    params = family_parameters(manifold)
    if params is not None and params[1] % 2 == 1:
        return Fraction(1, 4)
    return Fraction(0)


def negative_definite_obstruction(manifold: Manifold) -> NegativeDefiniteVerdict:
    """Obstructed (no negative definite filling) iff max d < threshold."""
    witness = max_correction_term(manifold)
    threshold = negative_definite_threshold(manifold)
    verdict = OBSTRUCTED if witness < threshold else INCONCLUSIVE
    return NegativeDefiniteVerdict(verdict, witness, threshold, family_parameters(manifold))
