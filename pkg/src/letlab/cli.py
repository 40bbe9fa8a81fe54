"""The ``letlab`` command line.

Exit status is 0 for a valid sequent or a successful check, 1 for an invalid
sequent or a failed check, and 2 for usage or engine errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formula as fm
from .bival import ClauseSet, check_clauses, parse_rho
from .boolean_algebra import FiniteBooleanAlgebra
from .cpl_reduction import coord_terms, cpl_entails, reduce_sequent, term_to_text
from .errors import LetlabError, ProofError
from .isa import degree_entails
from .logics import Logic
from .matrix6 import TABLES, entails6
from .nd_proof import check_proof, load_proof, soundness_harness
from .nmatrix import nmatrix_entails, nmatrix_table
from .selftest import format_report, run_selftest
from .snapshots import VALUES, Value6
from .twist import twist_entails, verify_lattice

EXIT_OK, EXIT_INVALID, EXIT_ERROR = 0, 1, 2

METHODS = ("matrix", "nmatrix", "twist", "cpl", "degree")
LOGICS = tuple(str(lg) for lg in Logic)


class UsageError(LetlabError):
    pass


def _emit(args, text: str, data: dict):
    if getattr(args, "json", False):
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print(text)


def _read_sequent(args) -> fm.Sequent:
    if args.file:
        formulas = fm.parse_lines(Path(args.file).read_text(encoding="utf-8"))
        if not formulas:
            raise UsageError(f"{args.file}: no formulas")
        return fm.Sequent(formulas[:-1], formulas[-1])
    if args.sequent is None:
        raise UsageError("give a sequent or --file")
    return fm.parse_sequent(args.sequent)


def _default_method(logic: Logic) -> str:
    return "matrix" if logic.has_propagation else "nmatrix"


def _check_compatible(method: str, logic: Logic):
    if method == "nmatrix" and logic.has_propagation:
        raise UsageError(f"method nmatrix applies to letk and letf-, not {logic}")
    if method != "nmatrix" and not logic.has_propagation:
        raise UsageError(f"method {method} applies to letk+ and letf+, not {logic}")


# --- subcommands ------------------------------------------------------------------

def cmd_entails(args) -> int:
    logic = Logic.parse(args.logic)
    method = args.method or _default_method(logic)
    _check_compatible(method, logic)
    s = _read_sequent(args)
    fragment = logic.fragment
    if method == "matrix":
        verdict = entails6(s, fragment)
    elif method == "nmatrix":
        verdict = nmatrix_entails(s, logic)
    elif method == "twist":
        verdict = twist_entails(FiniteBooleanAlgebra(args.atoms), s, fragment)
    elif method == "cpl":
        verdict = cpl_entails(s, fragment)
    else:
        verdict = degree_entails(s, fragment)
    data = verdict.to_json()
    data["stats"]["logic"] = str(logic)
    _emit(args, verdict.describe(), data)
    return EXIT_OK if verdict.valid else EXIT_INVALID


def _cell(x) -> str:
    if isinstance(x, frozenset):
        return "{" + ",".join(v.name for v in sorted(x)) + "}"
    return Value6(int(x)).name


def _render_table(name: str, rows: dict, unary: bool) -> str:
    cells = {z: ([_cell(rows[z])] if unary else [_cell(rows[z][w]) for w in VALUES]) for z in VALUES}
    header = [name] + ([""] if unary else [v.name for v in VALUES])
    body = [[z.name] + cells[z] for z in VALUES]
    width = max(len(c) for row in [header] + body for c in row)
    return "\n".join(" ".join(c.ljust(width) for c in row).rstrip() for row in [header] + body)


def cmd_table(args) -> int:
    logic = Logic.parse(args.logic)
    name = args.connective
    unary = name in ("not", "circ")
    if logic.has_propagation:
        if name == "imp" and logic is Logic.LETFP:
            raise UsageError("letf+ has no implication")
        table = TABLES[name]
        rows = {z: table[z] if unary else {w: table[z, w] for w in VALUES} for z in VALUES}
    else:
        tables = nmatrix_table(logic)
        if name not in tables:
            raise UsageError(f"{logic} has no connective {name}")
        rows = tables[name]
    text = _render_table(name, rows, unary)
    data = {
        "logic": str(logic),
        "connective": name,
        "table": {z.name: (_cell(rows[z]) if unary else {w.name: _cell(rows[z][w]) for w in VALUES})
                  for z in VALUES},
    }
    _emit(args, text, data)
    return EXIT_OK


def cmd_reduce(args) -> int:
    logic = Logic.parse(args.logic)
    s = _read_sequent(args)
    lines = []
    if args.terms:
        index = {name: i for i, name in enumerate(fm.sequent_variables(s), start=1)}
        for f in s.formulas():
            t1, t2, t3 = coord_terms(f, index, logic.fragment)
            lines.append(fm.to_text(f, unicode=args.unicode))
            for k, t in enumerate((t1, t2, t3), start=1):
                lines.append(f"  t{k} = {term_to_text(t, unicode=args.unicode)}")
    term = reduce_sequent(s, logic.fragment)
    lines.append(term_to_text(term, unicode=args.unicode))
    print("\n".join(lines))
    return EXIT_OK


def cmd_lattice_check(args) -> int:
    report = verify_lattice(FiniteBooleanAlgebra(args.atoms))
    lines = [f"atoms={report.atoms} snapshots={report.size}"]
    for law in report.laws:
        status = "ok" if law.passed else "FAIL"
        lines.append(f"{status:4} {law.name} ({law.checked} checked)")
        if not law.passed:
            lines.append(f"     counterexample: {law.counterexample}")
    data = {
        "verdict": "valid" if report.passed else "invalid",
        "stats": {"atoms": report.atoms, "size": report.size},
        "laws": [{"name": law.name, "passed": law.passed, "checked": law.checked} for law in report.laws],
    }
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_bival_check(args) -> int:
    rho = parse_rho(Path(args.file).read_text(encoding="utf-8"))
    report = check_clauses(rho, ClauseSet.parse(args.clauses))
    lines = [
        f"clauses={report.clause_set.value} formulas={len(rho)} "
        f"checked={report.checked} not-applicable={len(report.not_applicable)}"
    ]
    lines += [f"violated {v.describe()}" for v in report.violations]
    lines.append("ok" if report.ok else f"{len(report.violations)} violation(s)")
    data = {
        "verdict": "valid" if report.ok else "invalid",
        "stats": {"checked": report.checked, "not_applicable": len(report.not_applicable)},
        "violations": [v.describe() for v in report.violations],
    }
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_check_proof(args) -> int:
    root, meta = load_proof(Path(args.file).read_text(encoding="utf-8"))
    logic = Logic.parse(args.logic or meta.get("logic", "letk+"))
    allow = args.allow_derived or bool(meta.get("allow_derived", False))
    try:
        result = check_proof(root, logic, allow)
    except ProofError as e:
        _emit(args, f"rejected: {e}", {"verdict": "invalid", "error": str(e), "stats": {"logic": str(logic)}})
        return EXIT_INVALID
    semantic = soundness_harness(root, logic, allow)
    claimed = meta.get("sequent")
    lines = [f"proof ok ({logic}): {result.sequent}"]
    lines.append(f"rules: {', '.join(result.rules_used)}")
    lines.append(f"semantic check: {semantic.label}")
    ok = semantic.valid
    if claimed is not None:
        matches = _same_sequent(fm.parse_sequent(claimed), result.sequent)
        lines.append(f"declared sequent: {'matches' if matches else 'DIFFERS'}")
        ok = ok and matches
    data = {
        "verdict": "valid" if ok else "invalid",
        "sequent": str(result.sequent),
        "stats": {"logic": str(logic), "rules": list(result.rules_used), "semantic": semantic.label},
    }
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if ok else EXIT_INVALID


def _same_sequent(declared: fm.Sequent, derived: fm.Sequent) -> bool:
    # the derivation may use fewer hypotheses than declared
    return declared.conclusion == derived.conclusion and set(derived.premises) <= set(declared.premises)


def cmd_selftest(args) -> int:
    results = run_selftest(args.seed, args.trials)
    data = {
        "verdict": "valid" if all(r.ok for r in results) else "invalid",
        "stats": {"seed": args.seed, "trials": args.trials},
        "suites": [{"name": r.name, "passed": r.passed, "total": r.total, "mismatches": r.failures[:5]}
                   for r in results],
    }
    _emit(args, format_report(results, args.seed, args.trials), data)
    return EXIT_OK if all(r.ok for r in results) else EXIT_INVALID


# --- argument parsing ---------------------------------------------------------------

def _sequent_args(p):
    p.add_argument("sequent", nargs="?", help='e.g. "o p, p, ~p |- q"')
    p.add_argument("-f", "--file", help="read formulas from a file; the last one is the conclusion")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="letlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entails", help="decide a sequent")
    _sequent_args(p)
    p.add_argument("--logic", default="letk+", choices=LOGICS)
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--atoms", type=int, default=1, help="atoms of the Boolean algebra (twist only)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_entails)

    p = sub.add_parser("table", help="print a connective table")
    p.add_argument("--logic", default="letk+", choices=LOGICS)
    p.add_argument("--connective", required=True, choices=("and", "or", "imp", "not", "circ"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("reduce", help="print the classical reduction of a sequent")
    _sequent_args(p)
    p.add_argument("--logic", default="letk+", choices=("letk+", "letf+"))
    p.add_argument("--unicode", action="store_true")
    p.add_argument("--terms", action="store_true", help="also print the coordinate terms of each formula")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("lattice-check", help="check the lattice laws of a twist algebra")
    p.add_argument("--atoms", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice_check)

    p = sub.add_parser("bival-check", help="check a bivaluation file against a clause set")
    p.add_argument("file")
    p.add_argument("--clauses", default="letk")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bival_check)

    p = sub.add_parser("check-proof", help="check a natural deduction proof file")
    p.add_argument("file")
    p.add_argument("--logic", choices=LOGICS)
    p.add_argument("--allow-derived", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("selftest", help="cross-check the decision procedures")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LetlabError, ValueError, OSError) as e:
        print(f"letlab: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
