"""Flat SU(2) connections on Brieskorn spheres and their Chern-Simons values.

pi_1 Sigma(p, q, r) is presented as

    < x1, x2, x3, h | h central, x_i^{a_i} = h^{-b_i}, x1 x2 x3 = 1 >

with (a1, a2, a3) = (p, q, r) and b1 qr + b2 pr + b3 pq = 1, where the b_i
are chosen all odd. An irreducible representation sends h to eps = +-1 and
x_i to an element of rotation angle pi l_i / a_i with 0 < l_i < a_i; the
triple (l1, l2, l3) labels the flat connection. With odd b_i the relation
x_i^{a_i} = eps forces every l_i to have the parity of eps, and
x1 x2 x3 = 1 with x1, x2 not commuting is the strict spherical triangle
inequality on the three angles.

Admissibility has two independent routes: an exact rational test
(:func:`admissible`) and a floating point solver that builds the matrices
and checks every relator (:func:`su2_oracle`). Within the oracle's range
the oracle decides and the exact test must agree with it.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import InvariantViolation, OracleUndecided, UnsupportedAtomError
from .exact import ModOne, mod_one

DEFAULT_TOLERANCE = 1e-9
SNAP_TOLERANCE = 1e-6
REJECT_RESIDUAL = 1e-3
ORACLE_BOUND = 2 * 3 * 13

TRIVIAL = "trivial"
CENTRAL = "central"
IRREDUCIBLE = "irreducible"

KINDS = ("any", TRIVIAL, CENTRAL, "reducible", IRREDUCIBLE)


def oracle_tolerance() -> float:
    return float(os.environ.get("DEFOBS_ORACLE_TOL", DEFAULT_TOLERANCE))


def check_brieskorn(p: int, q: int, r: int) -> None:
    if not (2 <= p < q < r):
        raise ValueError(f"need 2 <= p < q < r, got {(p, q, r)}")
    if math.gcd(p, q) != 1 or math.gcd(p, r) != 1 or math.gcd(q, r) != 1:
        raise ValueError(f"Brieskorn parameters must be pairwise coprime, got {(p, q, r)}")


@dataclass(frozen=True, order=True)
class RotationTriple:
    k: int
    l: int  # noqa: E741
    m: int

    def check(self, p: int, q: int, r: int) -> None:
        if not (0 < self.k < p and 0 < self.l < q and 0 < self.m < r):
            raise ValueError(f"rotation triple {self} out of bounds for Sigma{(p, q, r)}")

    def __iter__(self):
        return iter((self.k, self.l, self.m))

    def __str__(self) -> str:
        return f"({self.k},{self.l},{self.m})"


@dataclass(frozen=True)
class FlatConnectionRecord:
    """A flat connection with its Chern-Simons value in R/Z."""

    kind: str
    cs: ModOne
    label: str
    triple: Optional[RotationTriple] = None

    def reverse(self) -> FlatConnectionRecord:
        return FlatConnectionRecord(self.kind, -self.cs, self.label, self.triple)

    def is_reducible(self) -> bool:
        return self.kind != IRREDUCIBLE


def chern_simons(p: int, q: int, r: int, triple: RotationTriple | tuple) -> ModOne:
    """CS of the flat connection with rotation triple (k, l, m):
    (kqr + lpr + mpq)^2 / (4pqr) mod 1."""
    triple = RotationTriple(*triple)
    triple.check(p, q, r)
    k, l, m = triple  # noqa: E741
    e = k * q * r + l * p * r + m * p * q
    return mod_one(Fraction(e * e, 4 * p * q * r))


def seifert_b(p: int, q: int, r: int) -> tuple[int, int, int]:
    """The all-odd solution of b1 qr + b2 pr + b3 pq = 1 nearest the origin."""
    best = None
    for b1 in range(-2 * p, 2 * p + 1):
        for b2 in range(-2 * q, 2 * q + 1):
            rest = 1 - b1 * q * r - b2 * p * r
            if rest % (p * q):
                continue
            b = (b1, b2, rest // (p * q))
            if all(x % 2 for x in b):
                key = (sum(abs(x) for x in b), b)
                if best is None or key < best:
                    best = key
    if best is None:
        raise ArithmeticError(f"no odd Seifert invariants found for Sigma{(p, q, r)}")
    return best[1]


def admissible(p: int, q: int, r: int, triple: RotationTriple | tuple) -> bool:
    """Exact test: equal parities and the strict spherical triangle inequality."""
    k, l, m = triple  # noqa: E741
    if len({k % 2, l % 2, m % 2}) != 1:
        return False
    t1, t2, t3 = Fraction(k, p), Fraction(l, q), Fraction(m, r)
    return abs(t1 - t2) < t3 < min(t1 + t2, 2 - t1 - t2)


def candidate_triples(p: int, q: int, r: int):
    for k, l, m in itertools.product(range(1, p), range(1, q), range(1, r)):  # noqa: E741
        yield RotationTriple(k, l, m)


# ------------------------------------------------------------ numeric oracle

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_I2 = np.eye(2, dtype=complex)


def su2_element(angle: float, axis) -> np.ndarray:
    """cos(angle) + sin(angle) * (unit imaginary quaternion along ``axis``)."""
    ux, uy, uz = np.asarray(axis, dtype=float) / np.linalg.norm(axis)
    return math.cos(angle) * _I2 + 1j * math.sin(angle) * (
        ux * _SIGMA[0] + uy * _SIGMA[1] + uz * _SIGMA[2]
    )


def rotation_angle(x: np.ndarray) -> float:
    return math.acos(max(-1.0, min(1.0, 0.5 * np.trace(x).real)))


@dataclass(frozen=True)
class OracleResult:
    triple: RotationTriple
    status: str  # "accepted", "rejected" or "undecided"
    reason: str
    angles: tuple[float, float, float] = (math.nan, math.nan, math.nan)
    residual: float = math.nan
    central_sign: int = 0
    cs_approx: float = math.nan
    cs: Optional[ModOne] = None


def _solve_triple(p, q, r, triple, b, tol) -> OracleResult:
    a = (p, q, r)
    thetas = tuple(math.pi * li / ai for li, ai in zip(triple, a))
    t1, t2, t3 = thetas
    lo, hi = abs(t1 - t2), min(t1 + t2, 2 * math.pi - t1 - t2)
    margin = min(t3 - lo, hi - t3)
    if abs(margin) < 1e-12:
        return OracleResult(triple, "undecided", "on the reducible boundary", thetas)
    if margin < 0:
        return OracleResult(triple, "rejected", "angles not composable", thetas)

    def trace_gap(phi):
        x2 = su2_element(t2, (math.sin(phi), 0.0, math.cos(phi)))
        return 0.5 * np.trace(su2_element(t1, (0, 0, 1)) @ x2).real - math.cos(t3)

    try:
        phi = brentq(trace_gap, 0.0, math.pi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    except (ValueError, RuntimeError) as exc:
        return OracleResult(triple, "undecided", f"axis solve failed: {exc}", thetas)

    x1 = su2_element(t1, (0, 0, 1))
    x2 = su2_element(t2, (math.sin(phi), 0.0, math.cos(phi)))
    x3 = np.linalg.inv(x1 @ x2)
    xs = (x1, x2, x3)
    commutator = np.linalg.norm(x1 @ x2 - x2 @ x1)
    if commutator < REJECT_RESIDUAL:
        return OracleResult(triple, "rejected", "generators commute (reducible)", thetas)

    base = max(
        np.linalg.norm(x1 @ x2 @ x3 - _I2),
        abs(rotation_angle(x3) - t3),
    )
    best_eps, best = 0, math.inf
    for eps in (1, -1):
        res = max(
            np.linalg.norm(np.linalg.matrix_power(x, ai) - (eps ** (bi % 2)) * _I2)
            for x, ai, bi in zip(xs, a, b)
        )
        if res < best:
            best_eps, best = eps, res
    residual = max(base, best)
    if residual > REJECT_RESIDUAL:
        return OracleResult(triple, "rejected", "central element inconsistent", thetas, residual)
    if residual >= tol:
        return OracleResult(triple, "undecided", "residual above tolerance", thetas, residual, best_eps)

    # CS from the solved matrices: recover the rotation numbers numerically.
    n = p * q * r
    e = sum(rotation_angle(x) / math.pi * n for x in xs)
    approx = (e * e / (4 * n)) % 1.0
    num = round(approx * 4 * n)
    if abs(approx - num / (4 * n)) >= SNAP_TOLERANCE:
        return OracleResult(triple, "undecided", "CS value does not snap to the lattice",
                            thetas, residual, best_eps, approx)
    return OracleResult(triple, "accepted", "", thetas, residual, best_eps, approx,
                        mod_one(Fraction(num, 4 * n)))


def su2_oracle(p: int, q: int, r: int, tol: float | None = None,
               bound: int = ORACLE_BOUND) -> list[OracleResult]:
    """Decide every in-bounds rotation triple numerically.

    For each triple the two first generators are built as explicit SU(2)
    matrices, the angle between their axes is solved for so that the
    product has the third rotation angle, and every relator of the
    presentation is checked to ``tol`` (default 1e-9, or the
    DEFOBS_ORACLE_TOL environment variable). Accepted triples carry a CS
    value computed from the solved matrices and snapped to the lattice
    (1/4pqr) Z.
    """
    check_brieskorn(p, q, r)
    if p * q * r > bound:
        raise ValueError(f"pqr = {p * q * r} exceeds the oracle bound {bound}")
    tol = oracle_tolerance() if tol is None else tol
    b = seifert_b(p, q, r)
    return [_solve_triple(p, q, r, t, b, tol) for t in candidate_triples(p, q, r)]


def oracle_solutions(p: int, q: int, r: int, **kwargs) -> list[OracleResult]:
    return [res for res in su2_oracle(p, q, r, **kwargs) if res.status == "accepted"]


# -------------------------------------------------------------- enumeration


def enumerate_flat(p: int, q: int, r: int, use_oracle: bool | None = None,
                   tol: float | None = None) -> list[FlatConnectionRecord]:
    """Trivial connection plus every irreducible flat connection, by triple.

    When ``use_oracle`` is None the oracle runs whenever pqr is within its
    bound. It is authoritative: undecided triples raise
    :class:`OracleUndecided` and any disagreement with the exact route
    raises :class:`InvariantViolation`.
    """
    check_brieskorn(p, q, r)
    if use_oracle is None:
        use_oracle = p * q * r <= ORACLE_BOUND
    exact = [t for t in candidate_triples(p, q, r) if admissible(p, q, r, t)]
    triples = exact
    if use_oracle:
        results = su2_oracle(p, q, r, tol=tol, bound=max(ORACLE_BOUND, p * q * r))
        undecided = [res for res in results if res.status == "undecided"]
        if undecided:
            raise OracleUndecided(
                "oracle could not decide triples "
                + ", ".join(f"{res.triple} ({res.reason})" for res in undecided)
            )
        accepted = [res for res in results if res.status == "accepted"]
        triples = [res.triple for res in accepted]
        if triples != exact:
            raise InvariantViolation(
                f"oracle accepted {[str(t) for t in triples]} but the exact test "
                f"gives {[str(t) for t in exact]} for Sigma{(p, q, r)}"
            )
        for res in accepted:
            if res.cs != chern_simons(p, q, r, res.triple):
                raise InvariantViolation(
                    f"numeric CS {res.cs} disagrees with the formula for {res.triple}"
                )
    records = [FlatConnectionRecord(TRIVIAL, mod_one(0), "theta")]
    for i, t in enumerate(triples, start=1):
        records.append(FlatConnectionRecord(IRREDUCIBLE, chern_simons(p, q, r, t), f"alpha_{i}", t))
    return records


@lru_cache(maxsize=None)
def cs_spectrum(p: int, q: int, r: int) -> tuple[FlatConnectionRecord, ...]:
    return tuple(enumerate_flat(p, q, r))


def spectrum_values(records) -> list[ModOne]:
    return sorted(rec.cs for rec in records)


# ----------------------------------------------------------------- energies


def _matches(record: FlatConnectionRecord, kind: str) -> bool:
    if kind not in KINDS:
        raise ValueError(f"unknown connection kind {kind!r}; expected one of {KINDS}")
    if kind == "any":
        return True
    if kind == "reducible":
        return record.is_reducible()
    if kind == CENTRAL:
        return record.kind in (CENTRAL, TRIVIAL)
    return record.kind == kind


@dataclass(frozen=True, order=True)
class EnergyInstance:
    """A cylinder class from ``source`` to ``target`` with energy kappa."""

    kappa: Fraction
    source: str
    target: str


def energy_instances(records, from_kind: str = "any", to_kind: str = "any",
                     levels: int = 1) -> list[EnergyInstance]:
    """Positive energies kappa = CS(source) - CS(target) mod 1, lowest
    ``levels`` lifts per ordered pair, sorted."""
    out = []
    for a in records:
        if not _matches(a, from_kind):
            continue
        for b in records:
            if not _matches(b, to_kind):
                continue
            lowest = (a.cs - b.cs).min_positive_lift()
            out.extend(EnergyInstance(lowest + j, a.label, b.label) for j in range(levels))
    return sorted(out)


def min_cylinder_energy(record, from_kind: str = "any", to_kind: str = "any",
                        exclude_minimal: bool = False, exclude=()) -> Fraction:
    """Least positive energy of a cylinder between flat connections of the
    requested kinds.

    ``record`` is an :class:`~defobs.manifolds.AtomRecord` (orientation
    already applied). With a known CS spectrum the minimum is exact; with
    only a finite |pi_1| = n the bound 1/n is returned, since CS values of
    a manifold covered n-fold by S^3 lie in (1/n) Z. ``exclude_minimal``
    drops the single lowest instance over all pairs, ``exclude`` drops
    given ``EnergyInstance`` values.
    """
    if record.cs_spectrum is not None:
        removed = set(exclude)
        if exclude_minimal:
            removed.add(energy_instances(record.cs_spectrum, levels=1)[0])
        candidates = [
            inst for inst in energy_instances(record.cs_spectrum, from_kind, to_kind, levels=2)
            if inst not in removed
        ]
        if not candidates:
            raise ValueError(f"no flat connections of kinds {from_kind} -> {to_kind}")
        return candidates[0].kappa
    if record.pi1_order is not None:
        return Fraction(1, record.pi1_order)
    raise UnsupportedAtomError(f"no flat-connection data and infinite pi_1 for {record.atom}")
