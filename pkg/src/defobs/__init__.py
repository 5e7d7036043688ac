"""Exact invariants and audits for definite-filling obstructions of
connected sums of spherical 3-manifolds."""
from __future__ import annotations

from .correction_terms import (
    max_correction_term,
    negative_definite_obstruction,
    surgery2_d_table,
)
from .exact import FiniteAbelianGroup, ModOne, mod_one, rat
from .flat import chern_simons, enumerate_flat, min_cylinder_energy
from .instanton import (
    DEFAULT_RULES,
    RuleSet,
    classify_end_patterns,
    main_theorem_audit,
    moduli_dimension,
    positive_definite_audit,
    reducible_counts,
)
from .manifolds import O, P, Manifold, family, lookup, parse_descriptor

__all__ = [
    "FiniteAbelianGroup", "Manifold", "ModOne", "O", "P", "DEFAULT_RULES", "RuleSet",
    "chern_simons", "classify_end_patterns", "enumerate_flat", "family", "lookup",
    "main_theorem_audit", "max_correction_term", "min_cylinder_energy", "mod_one",
    "moduli_dimension", "negative_definite_obstruction", "parse_descriptor",
    "positive_definite_audit", "rat", "reducible_counts", "surgery2_d_table",
]
