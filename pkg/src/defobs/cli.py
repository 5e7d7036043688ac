"""Command-line front end.

    defobs dinv "surgery(T(2,3),2)"
    defobs obstruct-neg "P # -9*O"
    defobs cs "sigma(2,3,5)" --oracle --json
    defobs gap P --from irreducible --to irreducible --exclude-minimal
    defobs ends --index 1 [--no-reducible-rule]
    defobs audit-pos "P # -9*O" --group 2,2
    defobs theorem --m 1 --k 9

A descriptor that begins with "-" must follow "--" so argparse does not
read it as an option, e.g. ``defobs dinv -- "-O"``.

Exit status: 0 on success, 2 for usage, parse and precondition errors,
3 for internal invariant violations.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import correction_terms as ct
from . import flat
from . import instanton
from .errors import InvariantViolation, UnsupportedAtomError
from .exact import FiniteAbelianGroup, ModOne
from .manifolds import AtomRecord, Manifold, lookup, parse_descriptor

LIST_LIMIT = 256  # longest d-value list printed in text mode


def _jsonable(obj: Any) -> Any:
    """Rationals and residues become strings; containers recurse."""
    if isinstance(obj, (Fraction, ModOne)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def envelope(command: str, text: str, results: dict, provenance: list[str]) -> str:
    payload = {"command": command, "input": text, "results": results, "provenance": provenance}
    return json.dumps(_jsonable(payload), sort_keys=True, indent=2)


def _single_record(manifold: Manifold) -> AtomRecord:
    atoms = manifold.atoms()
    if len(atoms) != 1:
        raise UnsupportedAtomError(
            f"expected a single prime summand, got {manifold.render()!r}"
        )
    return lookup(atoms[0])


def _braces(values) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


# ---------------------------------------------------------------- commands


def cmd_dinv(args) -> tuple[str, dict, list[str]]:
    manifold = parse_descriptor(args.descriptor)
    tables = ct.d_tables(manifold)
    counts = ct.d_value_counts(tables)
    size = sum(counts.values())
    top = ct.max_correction_term(manifold)
    results = {
        "manifold": manifold.render(),
        "spin_c_count": size,
        "max": top,
        "values": {str(v): counts[v] for v in sorted(counts)},
    }
    if size <= LIST_LIMIT:
        values = sorted(v for v, c in counts.items() for _ in range(c))
        text = _braces(values)
    else:
        text = f"{size} spin-c structures; max d = {top}; distinct values {_braces(sorted(counts))}"
    return text, results, ["surgery-formula:torsion-coefficients", "connected-sum:additive"]


def cmd_obstruct_neg(args):
    manifold = parse_descriptor(args.descriptor)
    v = ct.negative_definite_obstruction(manifold)
    results = {
        "manifold": manifold.render(),
        "verdict": v.verdict,
        "max_d": v.witness,
        "threshold": v.threshold,
        "family": list(v.family) if v.family else None,
    }
    text = f"{v.verdict}: max d = {v.witness}, threshold {v.threshold}"
    return text, results, ["max-d:sum-of-maxima", "threshold:definite-lattice-bound"]


def cmd_cs(args):
    manifold = parse_descriptor(args.descriptor)
    record = _single_record(manifold)
    if record.flat_data is None or record.cs_spectrum is None:
        raise UnsupportedAtomError(f"no Chern-Simons spectrum for {record.atom}")
    provenance = ["rotation-triples:exact", "cs:quadratic-formula"]
    records = record.cs_spectrum
    if args.oracle:
        p, q, r = record.flat_data
        checked = flat.enumerate_flat(p, q, r, use_oracle=True)
        if record.atom.orientation < 0:
            checked = [c.reverse() for c in checked]
        if list(checked) != list(records):
            raise InvariantViolation("numeric oracle and exact enumeration disagree")
        provenance.append("su2-oracle:numeric")
    rows = [{"label": c.label, "kind": c.kind, "cs": c.cs,
             "triple": list(c.triple) if c.triple else None} for c in records]
    results = {
        "manifold": manifold.render(),
        "spectrum": flat.spectrum_values(records),
        "connections": rows,
    }
    lines = [f"{c.label:<8} {c.kind:<11} {str(c.triple or ''):<10} CS = {c.cs}" for c in records]
    return "\n".join(lines), results, provenance


def cmd_gap(args):
    manifold = parse_descriptor(args.descriptor)
    record = _single_record(manifold)
    kappa = flat.min_cylinder_energy(record, args.from_kind, args.to_kind,
                                     exclude_minimal=args.exclude_minimal)
    method = "cs-spectrum:exact" if record.cs_spectrum is not None else "pi1-order:bound"
    results = {
        "manifold": manifold.render(),
        "from": args.from_kind,
        "to": args.to_kind,
        "exclude_minimal": args.exclude_minimal,
        "kappa": kappa,
    }
    return str(kappa), results, [method]


def _rules(args) -> instanton.RuleSet:
    return instanton.RuleSet(
        reducible_intermediate=not args.no_reducible_rule,
        min_cylinder_index=args.min_cylinder_index,
        r_at_most_n=args.r_at_most_n,
    )


def cmd_ends(args):
    rules = _rules(args)
    patterns = instanton.classify_end_patterns(args.index, rules)
    results = {
        "total_index": args.index,
        "rules": rules.to_dict(),
        "patterns": [p.to_dict() for p in patterns],
    }
    lines = [f"{len(patterns)} pattern(s)"]
    for p in patterns:
        lines.append(f"  (n,m,r,ind_A) = {(p.n, p.m, p.r, p.ind_a)}  B={list(p.b_indices)} "
                     f"C={list(p.c_indices)}  type {p.kind or '-'}")
    return "\n".join(lines), results, ["index-identity:exhaustive-search"]


def _parse_group(text: Optional[str]) -> Optional[FiniteAbelianGroup]:
    if text is None:
        return None
    try:
        orders = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"--group expects comma-separated positive integers, got {text!r}")
    if any(o < 1 for o in orders):
        raise ValueError(f"--group orders must be positive, got {text!r}")
    return FiniteAbelianGroup(tuple(orders))


def _audit_lines(report: instanton.AuditReport) -> list[str]:
    lines = [
        f"manifold: {report.manifold}",
        "cobordism: " + " ".join(map(str, report.profile.incoming)) + " -> "
        + (" + ".join(map(str, report.profile.outgoing)) or "(empty)"),
        f"moduli dimension: {report.moduli_dimension}",
        f"kappa: {report.kappa}",
    ]
    for f in report.fates:
        lines.append(f"  type {f.pattern.kind or '-'} {f.pattern.signature}: {f.fate} ({f.reason})")
    lines.append(f"end count: {report.end_count}")
    lines.append(f"verdict: {report.verdict}")
    return lines


def cmd_audit_pos(args):
    manifold = parse_descriptor(args.descriptor)
    report = instanton.positive_definite_audit(manifold, _parse_group(args.group), _rules(args))
    return "\n".join(_audit_lines(report)), report.to_dict(), [
        "index-identity:exhaustive-search", "energy:cs-differences", "reducibles:character-count",
    ]


def cmd_theorem(args):
    report = instanton.main_theorem_audit(args.m, args.k)
    return "\n".join(report.lines), report.to_dict(), [
        "max-d:sum-of-maxima", "index-identity:exhaustive-search",
        "energy:cs-differences", "symplectic:cited",
    ]


# ------------------------------------------------------------------ parser


def _add_rule_flags(sp):
    sp.add_argument("--no-reducible-rule", action="store_true",
                    help="drop the rule that a reducible A forces r >= 1 and n >= 1")
    sp.add_argument("--min-cylinder-index", type=int, default=1)
    sp.add_argument("--r-at-most-n", action="store_true", help="also require r <= n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defobs",
        description="Definite-filling obstructions for connected sums of spherical 3-manifolds.",
        epilog='Descriptors starting with "-" must follow "--", e.g. defobs dinv -- "-O".',
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, descriptor=True):
        sp = sub.add_parser(name, help=help_text)
        if descriptor:
            sp.add_argument("descriptor", help='manifold descriptor, e.g. "P # -9*O"')
        sp.add_argument("--json", action="store_true", help="emit the JSON envelope")
        sp.set_defaults(func=func)
        return sp

    command("dinv", cmd_dinv, "correction terms of a manifold")
    command("obstruct-neg", cmd_obstruct_neg, "negative definite obstruction")
    sp = command("cs", cmd_cs, "Chern-Simons spectrum of a Brieskorn sphere")
    sp.add_argument("--oracle", action="store_true",
                    help="cross-check with the numeric SU(2) solver; fail on disagreement")
    sp = command("gap", cmd_gap, "least cylinder energy between flat connections")
    sp.add_argument("--from", dest="from_kind", choices=flat.KINDS, default="any")
    sp.add_argument("--to", dest="to_kind", choices=flat.KINDS, default="any")
    sp.add_argument("--exclude-minimal", action="store_true")
    sp = command("ends", cmd_ends, "enumerate end patterns of a moduli space", descriptor=False)
    sp.add_argument("--index", type=int, required=True)
    _add_rule_flags(sp)
    sp = command("audit-pos", cmd_audit_pos, "positive definite audit")
    sp.add_argument("--group", help="H_1(W)/H_1(dW) as invariant factors, e.g. 2,2")
    _add_rule_flags(sp)
    sp = command("theorem", cmd_theorem, "both obstructions for m P # -k O", descriptor=False)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    return parser


def _input_text(args) -> str:
    if getattr(args, "descriptor", None) is not None:
        return args.descriptor
    if args.command == "theorem":
        return f"m={args.m} k={args.k}"
    return f"index={args.index}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, results, provenance = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    if args.json:
        print(envelope(args.command, _input_text(args), results, provenance))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
