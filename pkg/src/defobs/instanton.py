"""Bookkeeping for the instanton argument against positive definite fillings.

Nothing here solves an equation. Given the homological data of a
cobordism W : P -> (outgoing spherical pieces) with b1 = b+ = 0, this
module redoes the arithmetic that decides the ends of a one-dimensional
moduli space on W:

* the index count that makes the moduli space one dimensional,
* the enumeration of broken-trajectory shapes allowed by the index
  identity,
* the energy comparison that discards every shape except gluing the
  minimal cylinder on P to a reducible flat connection on W,
* the count of those ends, z + 2a = |H_1(W) / H_1(dW)|, which is never 0.

The analytic facts used as inputs (the index -3 of a flat reducible, one
end per central and two per abelian reducible, the minimal cylinder on P
being a single point of index 1) are fixed constants below.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .correction_terms import OBSTRUCTED, negative_definite_obstruction
from .errors import PreconditionError, UnsupportedAtomError
from .exact import FiniteAbelianGroup, hom_counts, mod_one
from .flat import IRREDUCIBLE, TRIVIAL, min_cylinder_energy
from .manifolds import P, Atom, Manifold, family, lookup

REDUCIBLE_FLAT_INDEX = -3
STABILIZER_DIM = 3  # dimension of the stabilizer of a central intermediate limit
MINIMAL_CYLINDER_INDEX = 1
MINIMAL_CYLINDER_POINTS = 1
ENDS_PER_CENTRAL = 1
ENDS_PER_ABELIAN = 2
MAX_TOTAL_INDEX = 8

CONTRADICTION = "contradiction"
INCONCLUSIVE = "inconclusive"

PRUNED = "pruned-by-energy"
SURVIVES = "survives"


def reducible_counts(group: FiniteAbelianGroup) -> tuple[int, int]:
    """(z, a): central and abelian flat reducibles on W, trivial on the
    ends, for H = H_1(W) / H_1(dW).

    Central ones are the characters into {+-1}; the remaining characters
    pair up under complex conjugation into abelian ones.
    """
    to_circle, to_pm1 = hom_counts(group)
    z = to_pm1
    a, rem = divmod(to_circle - z, 2)
    if rem:
        raise ArithmeticError(f"non-real characters of {group} do not pair up")
    return z, a


def reducible_end_count(group: FiniteAbelianGroup) -> int:
    z, a = reducible_counts(group)
    return ENDS_PER_CENTRAL * z + ENDS_PER_ABELIAN * a


# ---------------------------------------------------------------- profiles


@dataclass(frozen=True)
class CobordismProfile:
    """Homological shadow of W : incoming -> outgoing.

    ``quotient_group`` is H_1(W) / i_* H_1(dW) when known; None means
    unspecified, and end counts are then reported symbolically.
    """

    incoming: tuple[Atom, ...]
    outgoing: tuple[Atom, ...]
    b1: int = 0
    b_plus: int = 0
    quotient_group: Optional[FiniteAbelianGroup] = None

    def validate(self) -> None:
        if self.b1 != 0 or self.b_plus != 0:
            raise PreconditionError(
                f"need b1(W) = b+(W) = 0, got b1 = {self.b1}, b+ = {self.b_plus}"
            )
        for atom in self.incoming + self.outgoing:
            if not lookup(atom).h1.is_two_torsion():
                raise PreconditionError(f"boundary piece {atom} is not a two-torsion homology sphere")
        if tuple(self.incoming) != (P,):
            raise PreconditionError(
                "only a single incoming P is supported, got "
                + (", ".join(map(str, self.incoming)) or "nothing")
            )


def profile_from_filling(manifold: Manifold, quotient_group=None) -> CobordismProfile:
    """Cobordism obtained from a positive definite X with boundary
    ``manifold``: reverse X, split the boundary along the summing spheres
    and read one copy of P as the incoming end."""
    if manifold.multiplicity(P) == 0:
        raise PreconditionError("no incoming P; argument inapplicable")
    outgoing = [a.reverse() for a in manifold.atoms()]
    outgoing.remove(P.reverse())
    return CobordismProfile((P,), tuple(outgoing), quotient_group=quotient_group)


def moduli_dimension(profile: CobordismProfile,
                     cylinder_index: int = MINIMAL_CYLINDER_INDEX) -> int:
    """Dimension of the moduli space on W from the minimal P-instanton to
    the trivial connection: the glued configuration (cylinder, trivial
    connection on W) gives ind(B) + 3 + ind(Theta)."""
    profile.validate()
    return cylinder_index + STABILIZER_DIM + REDUCIBLE_FLAT_INDEX


# --------------------------------------------------------------- end shapes


@dataclass(frozen=True)
class RuleSet:
    """Constraints on broken trajectories beyond the index identity.

    reducible_intermediate: a reducible limit on W is not the irreducible
        incoming connection, so ind_A = -3 forces r >= 1 and n >= 1.
    min_cylinder_index: lower bound on each cylinder index (nonempty
        manifolds with a free R-action); must be at least 1.
    r_at_most_n: optional extra constraint r <= n.
    """

    reducible_intermediate: bool = True
    min_cylinder_index: int = 1
    r_at_most_n: bool = False

    def __post_init__(self):
        if self.min_cylinder_index < 1:
            raise ValueError("min_cylinder_index must be at least 1 to keep the search finite")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> RuleSet:
        return cls(**data)


DEFAULT_RULES = RuleSet()


@dataclass(frozen=True)
class EndPattern:
    """Shape (B_1..B_n, A, C_1..C_m) of a broken limit; ``r`` counts the
    reducible intermediate limits."""

    n: int
    m: int
    r: int
    ind_a: int
    b_indices: tuple[int, ...] = ()
    c_indices: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.b_indices) != self.n or len(self.c_indices) != self.m:
            raise ValueError("factor index lists must have lengths n and m")
        if self.ind_a != REDUCIBLE_FLAT_INDEX and self.ind_a < 0:
            raise ValueError(f"ind_A must be -3 or non-negative, got {self.ind_a}")
        if not 0 <= self.r <= self.n + self.m or (self.n, self.m, self.r) == (0, 0, 0):
            raise ValueError(f"invalid (n, m, r) = {(self.n, self.m, self.r)}")

    @property
    def total_index(self) -> int:
        return sum(self.b_indices) + self.ind_a + STABILIZER_DIM * self.r + sum(self.c_indices)

    @property
    def signature(self) -> tuple:
        return (self.n, self.m, self.r, self.ind_a, self.b_indices, self.c_indices)

    @property
    def kind(self) -> Optional[str]:
        """"i", "ii" or "iii" for the three end types, else None."""
        if self.ind_a >= 0 and self.r == 0:
            if (self.n, self.m) == (1, 0):
                return "i"
            if (self.n, self.m) == (0, 1):
                return "ii"
        if self.ind_a == REDUCIBLE_FLAT_INDEX and (self.n, self.m, self.r) == (1, 0, 1):
            return "iii"
        return None

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "r": self.r, "ind_A": self.ind_a,
            "ind_B": list(self.b_indices), "ind_C": list(self.c_indices), "type": self.kind,
        }


def _compositions(total: int, parts: int, lowest: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(lowest, total - lowest * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, lowest):
            yield (first,) + rest


def classify_end_patterns(total_index: int, rules: RuleSet = DEFAULT_RULES) -> list[EndPattern]:
    """All end shapes with the given total index, sorted by signature."""
    if total_index > MAX_TOTAL_INDEX:
        raise ValueError(f"total index {total_index} exceeds {MAX_TOTAL_INDEX}")
    lo = rules.min_cylinder_index
    found = []
    for ind_a in [REDUCIBLE_FLAT_INDEX] + list(range(0, total_index + 1)):
        budget = total_index - ind_a
        for r in range(0, budget // STABILIZER_DIM + 1):
            cyl = budget - STABILIZER_DIM * r
            for parts in range(1, cyl // lo + 1):
                if r > parts:
                    continue
                for n in range(parts + 1):
                    m = parts - n
                    if rules.r_at_most_n and r > n:
                        continue
                    if rules.reducible_intermediate and ind_a == REDUCIBLE_FLAT_INDEX and (r < 1 or n < 1):
                        continue
                    for comp in _compositions(cyl, parts, lo):
                        found.append(EndPattern(n, m, r, ind_a, comp[:n], comp[n:]))
    return sorted(found, key=lambda pat: pat.signature)


# ----------------------------------------------------------- energy pruning


@dataclass(frozen=True)
class PatternFate:
    pattern: EndPattern
    fate: str
    reason: str
    energies: tuple[tuple[str, Fraction], ...] = ()

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_dict(),
            "fate": self.fate,
            "reason": self.reason,
            "energies": {k: str(v) for k, v in self.energies},
        }


def minimal_energy(profile: CobordismProfile) -> Fraction:
    """Energy of the minimal cylinder from an irreducible to the trivial
    connection on the incoming end (1/120 for P)."""
    return min_cylinder_energy(lookup(profile.incoming[0]), IRREDUCIBLE, TRIVIAL)


def _outgoing_gap(atom: Atom) -> tuple[Optional[Fraction], str]:
    record = lookup(atom)
    if not record.spherical:
        return None, f"{atom} is not spherical (infinite pi_1); no energy gap available"
    try:
        return min_cylinder_energy(record, IRREDUCIBLE, TRIVIAL), ""
    except ValueError:
        # Known spectrum without irreducibles: no cylinder of type (ii) at all.
        return None, ""


def energy_prune(patterns: Iterable[EndPattern], profile: CobordismProfile,
                 kappa: Fraction) -> list[PatternFate]:
    """Decide which end shapes can occur in the moduli space of energy
    ``kappa``. Energy is non-negative and additive and flat reducibles on
    W have energy 0, so a shape survives only if each cylinder factor can
    carry energy at most ``kappa``."""
    kappa = Fraction(kappa)
    if not 0 < kappa < Fraction(1, 2):
        raise PreconditionError(f"energy {kappa} outside (0, 1/2)")
    incoming = lookup(profile.incoming[0])
    fates = []
    for pat in patterns:
        kind = pat.kind
        if kind == "i":
            gap = min_cylinder_energy(incoming, IRREDUCIBLE, IRREDUCIBLE)
            if gap > kappa:
                fates.append(PatternFate(pat, PRUNED, f"irreducible-to-irreducible cylinders on "
                                         f"{incoming.atom} need energy >= {gap} > {kappa}"))
            else:
                fates.append(PatternFate(pat, SURVIVES, f"cylinder gap {gap} <= {kappa} on {incoming.atom}"))
        elif kind == "ii":
            blockers = []
            for atom in sorted(set(profile.outgoing), key=Atom.sort_key):
                gap, why = _outgoing_gap(atom)
                if why:
                    blockers.append(why)
                elif gap is not None and gap <= kappa:
                    blockers.append(f"cylinder gap {gap} <= {kappa} on {atom}")
            if blockers:
                fates.append(PatternFate(pat, SURVIVES, "; ".join(blockers)))
            else:
                fates.append(PatternFate(pat, PRUNED, f"every outgoing cylinder needs energy > {kappa}"))
        elif kind == "iii":
            realizable = any(
                rec.kind == IRREDUCIBLE and (rec.cs - theta.cs) == mod_one(kappa)
                for rec in incoming.cs_spectrum or ()
                for theta in incoming.cs_spectrum if theta.kind == TRIVIAL
            )
            if realizable:
                fates.append(PatternFate(pat, SURVIVES, "cylinder of energy kappa glued to a flat reducible",
                                         (("B", kappa), ("A", Fraction(0)))))
            else:
                fates.append(PatternFate(pat, PRUNED, f"no irreducible-to-trivial class of energy {kappa}"))
        else:
            fates.append(PatternFate(pat, SURVIVES, "shape outside the three end types"))
    return fates


# ------------------------------------------------------------------ audits


@dataclass(frozen=True)
class AuditReport:
    manifold: str
    profile: CobordismProfile
    moduli_dimension: int
    kappa: Fraction
    fates: tuple[PatternFate, ...]
    end_count: Union[int, str]
    verdict: str
    reasons: tuple[str, ...] = field(default=())

    @property
    def surviving(self) -> list[PatternFate]:
        return [f for f in self.fates if f.fate == SURVIVES]

    def to_dict(self) -> dict:
        return {
            "manifold": self.manifold,
            "incoming": [str(a) for a in self.profile.incoming],
            "outgoing": [str(a) for a in self.profile.outgoing],
            "quotient_group": (str(self.profile.quotient_group)
                               if self.profile.quotient_group is not None else "unspecified"),
            "moduli_dimension": self.moduli_dimension,
            "kappa": str(self.kappa),
            "patterns": [f.to_dict() for f in self.fates],
            "end_count": self.end_count if isinstance(self.end_count, str) else str(self.end_count),
            "verdict": self.verdict,
            "reasons": list(self.reasons),
        }


def audit_profile(profile: CobordismProfile, rules: RuleSet = DEFAULT_RULES,
                  manifold: str = "") -> AuditReport:
    dim = moduli_dimension(profile)
    kappa = minimal_energy(profile)
    fates = tuple(energy_prune(classify_end_patterns(dim, rules), profile, kappa))
    surviving = [f for f in fates if f.fate == SURVIVES]
    if profile.quotient_group is None:
        end_count: Union[int, str] = "±|H|"
        nonzero = True  # |H| >= 1 for every finite H
    else:
        end_count = MINIMAL_CYLINDER_POINTS * reducible_end_count(profile.quotient_group)
        nonzero = end_count != 0
    reasons = tuple(f"type {f.pattern.kind or '?'} {f.pattern.signature}: {f.reason}"
                    for f in surviving if f.pattern.kind != "iii")
    ok = bool(surviving) and all(f.pattern.kind == "iii" for f in surviving) and nonzero
    return AuditReport(manifold, profile, dim, kappa, fates, end_count,
                       CONTRADICTION if ok else INCONCLUSIVE, reasons)


def positive_definite_audit(manifold: Manifold, quotient_group: FiniteAbelianGroup | None = None,
                            rules: RuleSet = DEFAULT_RULES) -> AuditReport:
    """Audit the claim that ``manifold`` bounds no positive definite
    4-manifold. Requires at least one P summand."""
    profile = profile_from_filling(manifold, quotient_group)
    return audit_profile(profile, rules, manifold.render())


# ----------------------------------------------------------------- theorem

SYMPLECTIC_CITATION = (
    "an L-space embedded in a closed symplectic 4-manifold bounds a definite "
    "4-manifold (Mukherjee)"
)


@dataclass(frozen=True)
class TheoremReport:
    m: int
    k: int
    manifold: str
    l_space: bool
    negative: object
    positive: Optional[AuditReport]
    positive_error: str
    symplectic: bool
    lines: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "manifold": self.manifold,
            "l_space": self.l_space,
            "negative_definite": {
                "verdict": self.negative.verdict,
                "max_d": str(self.negative.witness),
                "threshold": str(self.negative.threshold),
            },
            "positive_definite": (self.positive.to_dict() if self.positive is not None
                                  else {"verdict": INCONCLUSIVE, "error": self.positive_error}),
            "symplectic_non_embedding": self.symplectic,
            "conclusion": list(self.lines),
        }


def main_theorem_audit(m: int, k: int) -> TheoremReport:
    """Both obstructions for m P # -k O and the combined conclusion."""
    manifold = family(m, k)
    text = manifold.render()
    l_space = all(lookup(a).spherical for a in manifold.atoms())
    negative = negative_definite_obstruction(manifold)
    try:
        positive = positive_definite_audit(manifold)
        positive_error = ""
    except (PreconditionError, UnsupportedAtomError) as exc:
        positive, positive_error = None, str(exc)
    pos_ok = positive is not None and positive.verdict == CONTRADICTION
    neg_ok = negative.verdict == OBSTRUCTED

    lines = [
        f"{text}: max d = {negative.witness}, threshold {negative.threshold}: "
        + ("no negative definite filling" if neg_ok else "negative definite filling not excluded"),
        f"{text}: " + ("no positive definite filling" if pos_ok else
                       "positive definite filling not excluded"
                       + (f" ({positive_error})" if positive_error else "")),
    ]
    symplectic = neg_ok and pos_ok and l_space
    if symplectic:
        lines.append(f"since {SYMPLECTIC_CITATION}:")
        lines.append(f"{text} is an L-space with no definite filling of either sign; "
                     "does not embed in any closed symplectic 4-manifold")
    return TheoremReport(m, k, text, l_space, negative, positive, positive_error, symplectic, tuple(lines))
