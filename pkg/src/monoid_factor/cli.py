"""``monoid-factor`` command line.

Every command echoes the resolved spec before its result.  With ``--json``
each command prints one JSON object carrying ``"schema": 1``.

Exit codes: 0 success, 1 domain error (element outside the monoid, budget
exhausted, ...), 2 bad arguments or unparsable input, 3 undecided, or
incomplete while ``--require-complete`` is set.  ``reproduce`` exits 1 when
any case fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import golden
from .exact import UndecidedError, format_poly, parse_poly
from .factorize import canonicalize, enumerate_factorizations, length_set
from .invariants import (
    ap_aap_analyze,
    betti_graph,
    betti_scan,
    catenary_element,
    catenary_monoid_scan,
    furcus_witness,
)
from .monoid import atoms_up_to, spec_from_min_poly, spec_from_q, spec_from_root

SCHEMA = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _caps(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"caps must be comma-separated integers: {text!r}") from exc


def _add_spec_flags(p):
    g = p.add_argument_group("monoid (exactly one of --q, --root, --min-poly)")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--q", type=_fraction, help="N0[q] for a positive rational q")
    src.add_argument("--root", type=_fraction, metavar="Q", help="N0[Q^(1/n)]; needs --n")
    src.add_argument("--min-poly", metavar="POLY", help='minimal polynomial, e.g. "x^2 - x - 1"')
    g.add_argument("--n", type=int, help="root degree for --root")
    g.add_argument("--root-index", type=int, help="which positive root (ascending, default the largest)")


def _add_output_flags(p):
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.add_argument("--require-complete", action="store_true", help="exit 3 when the answer is not certified complete")


def _add_bounds(p):
    p.add_argument("--D", type=int, help="largest exponent used (required when alpha <= 1)")
    p.add_argument("--caps", type=_caps, help="per-exponent count limits, comma separated")
    p.add_argument("--budget", type=int, help="search node budget (default $MONOID_FACTOR_BUDGET or 10^7)")


def _add_element(p, required=True):
    p.add_argument("--element", required=required, help='element expression, e.g. "x^5 + 6x^2" or "9/2"')


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monoid-factor", description="Factorization invariants of N0[alpha].")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spec", help="resolve and classify a monoid")
    _add_spec_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("atoms", help="atom verdicts for alpha^0 .. alpha^K")
    _add_spec_flags(p)
    _add_output_flags(p)
    p.add_argument("--K", type=int, default=8)
    p.add_argument("--budget", type=int, default=10**6)

    p = sub.add_parser("factorize", help="list the factorizations of an element")
    _add_spec_flags(p)
    _add_output_flags(p)
    _add_element(p)
    _add_bounds(p)
    p.add_argument("--limit", type=int, help="stop after this many factorizations")

    p = sub.add_parser("lengths", help="set of lengths with AP / AAP analysis")
    _add_spec_flags(p)
    _add_output_flags(p)
    _add_element(p)
    _add_bounds(p)
    p.add_argument("--d", type=int, help="AAP difference to test")
    p.add_argument("--N", type=int, help="AAP bound to test")

    p = sub.add_parser("betti", help="Betti graph of an element, or a Betti scan with --scan")
    _add_spec_flags(p)
    _add_output_flags(p)
    _add_element(p, required=False)
    _add_bounds(p)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--support", type=int, default=4)
    p.add_argument("--coeff-max", type=int, default=4)

    p = sub.add_parser("catenary", help="catenary degree of an element, or a scan with --scan")
    _add_spec_flags(p)
    _add_output_flags(p)
    _add_element(p, required=False)
    _add_bounds(p)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--support", type=int, default=4)
    p.add_argument("--coeff-max", type=int, default=4)

    p = sub.add_parser("furcus", help="search an element whose factorizations all have length > k")
    _add_spec_flags(p)
    _add_output_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--search-budget", type=int, default=2000)

    p = sub.add_parser("reproduce", help="replay the reference cases")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--case", action="append", choices=sorted(golden.CASES))
    p.add_argument("--json", action="store_true")
    return ap


def resolve_spec(args):
    if args.q is not None:
        if args.n is not None or args.root_index is not None:
            raise UsageError("--n and --root-index do not apply to --q")
        return spec_from_q(args.q)
    if args.root is not None:
        if args.n is None:
            raise UsageError("--root needs --n")
        return spec_from_root(args.root, args.n)
    if args.n is not None:
        raise UsageError("--n only applies to --root")
    try:
        f = parse_poly(args.min_poly)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return spec_from_min_poly(f, args.root_index)


def _element(args, spec=None):
    if args.element is None:
        raise UsageError("--element is required unless --scan is given")
    if spec is not None and not spec.alpha_gt_one and args.D is None:
        raise UsageError("alpha <= 1: pass an exponent bound with --D")
    try:
        return parse_poly(args.element)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _value_json(key) -> list:
    return [str(c) for c in key]


def _poly(p) -> str:
    return format_poly(p, "a")


# --- commands: each returns (result dict, text lines, complete) -----------


def cmd_spec(spec, args):
    return {}, [], True


def cmd_atoms(spec, args):
    verdicts = atoms_up_to(spec, args.K, budget=args.budget)
    rows, lines = [], []
    for v in verdicts:
        rows.append({
            "exponent": v.exponent,
            "is_atom": v.is_atom,
            "definitive": v.definitive,
            "refutation": v.refutation.to_json() if v.refutation is not None else None,
        })
        tag = "atom" if v.is_atom else f"not an atom: a^{v.exponent} = {v.refutation}"
        lines.append(f"a^{v.exponent}: {tag}" + ("" if v.definitive else " (within search bound)"))
    return {"atoms": rows}, lines, all(v.definitive for v in verdicts)


def cmd_factorize(spec, args):
    x = _element(args, spec)
    r = enumerate_factorizations(x, spec, D=args.D, caps=args.caps, budget=args.budget, limit=args.limit)
    lines = [f"{len(r)} factorization(s), complete: {str(r.complete).lower()}"]
    lines += [f"  [{z.length}] {z}" for z in r]
    out = {
        "element": _value_json(canonicalize(x, spec)),
        "factorizations": [z.to_json() for z in r],
        "count": len(r),
        "D": r.D,
        "complete": r.complete,
        "budget_exhausted": r.budget_exhausted,
    }
    return out, lines, r.complete


def cmd_lengths(spec, args):
    x = _element(args, spec)
    r = length_set(x, spec, D=args.D, caps=args.caps, budget=args.budget)
    if r.budget_exhausted:
        raise RuntimeError("node budget exhausted")
    if not r.lengths:
        raise ValueError("element has no factorization within the bounds")
    rep = ap_aap_analyze(r.lengths, args.d, args.N, complete=r.complete)
    lines = [
        "lengths: {" + ", ".join(map(str, r.lengths)) + "}",
        f"complete: {str(r.complete).lower()}",
        f"AP: {'yes, difference ' + str(rep.difference) if rep.is_ap else 'no'}",
    ]
    if rep.aap is not None:
        a = rep.aap
        lines.append(f"AAP: c={a['c']} d={a['d']} N={a['N']} head={a['head']} core={a['core']} tail={a['tail']}")
    else:
        lines.append("AAP: none found")
    out = {"element": _value_json(canonicalize(x, spec)), "D": r.D, **rep.to_json()}
    return out, lines, r.complete


def cmd_betti(spec, args):
    if args.scan:
        rep = betti_scan(spec, args.support, args.coeff_max, D=args.D, budget=args.budget)
        betti = [str(v) if not isinstance(v, tuple) else _value_json(v) for v in rep.betti]
        out = {
            "betti": betti,
            "scanned": rep.scanned,
            "method": rep.method,
            "formula": [str(v) for v in rep.formula] if rep.formula is not None else None,
            "matches_formula": rep.matches_formula(),
            "complete": rep.complete,
        }
        lines = [f"scanned {rep.scanned} elements ({rep.method})", f"Betti: {betti}"]
        if rep.formula is not None:
            lines.append(f"formula family in range: {out['formula']} (match: {str(rep.matches_formula()).lower()})")
        return out, lines, rep.complete
    x = _element(args, spec)
    rep = betti_graph(x, spec, D=args.D, caps=args.caps, budget=args.budget)
    lines = [f"{'Betti' if rep.is_betti else 'not Betti'}, components {len(rep.components)}"]
    for comp in rep.components:
        lines.append("  {" + "; ".join(str(z) for z in comp) + "}")
    return rep.to_json(), lines, rep.complete


def cmd_catenary(spec, args):
    if args.scan:
        rep = catenary_monoid_scan(spec, args.support, args.coeff_max, D=args.D, budget=args.budget)
        out = {
            "observed": rep.observed,
            "witness": _poly(rep.witness) if rep.witness is not None else None,
            "scanned": rep.scanned,
            "formula": rep.formula,
            "exceeds_formula": [_value_json(k) for k in rep.exceeds_formula()],
            "complete": rep.complete,
        }
        lines = [f"scanned {rep.scanned} elements", f"observed sup c(x): {rep.observed} at {out['witness']}"]
        if rep.formula is not None:
            lines.append(f"formula max(n, d): {rep.formula}")
        return out, lines, rep.complete
    x = _element(args, spec)
    r = catenary_element(x, spec, D=args.D, caps=args.caps, budget=args.budget)
    out = {"element": _value_json(canonicalize(x, spec)), "catenary": r.value, "factorizations": r.count,
           "complete": r.complete}
    lines = [f"c(x) = {r.value} over {r.count} factorization(s), complete: {str(r.complete).lower()}"]
    return out, lines, r.complete


def cmd_furcus(spec, args):
    w = furcus_witness(spec, args.k, budget=args.search_budget)
    if w is None:
        return {"found": False}, [f"no witness within the search budget for k = {args.k}"], False
    out = {"found": True, "element": _poly(w.element), "min_length": w.min_length,
           "lengths": list(w.lengths), "tried": w.tried}
    lines = [f"witness {out['element']}: min length {w.min_length} > {args.k}",
             "lengths: {" + ", ".join(map(str, w.lengths)) + "}"]
    return out, lines, True


COMMANDS = {
    "spec": cmd_spec,
    "atoms": cmd_atoms,
    "factorize": cmd_factorize,
    "lengths": cmd_lengths,
    "betti": cmd_betti,
    "catenary": cmd_catenary,
    "furcus": cmd_furcus,
}


def _reproduce(args, out) -> int:
    names = list(golden.CASES) if args.all else args.case
    results = [golden.run_case(n) for n in names]
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": "reproduce",
                          "cases": [r.to_json() for r in results],
                          "passed": all(r.passed for r in results)}), file=out)
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.case:<20} {r.seconds:6.1f}s", file=out)
        print(f"{sum(r.passed for r in results)}/{len(results)} passed", file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "reproduce":
        return _reproduce(args, out)
    try:
        spec = resolve_spec(args)
        result, lines, complete = COMMANDS[args.command](spec, args)
    except UsageError as exc:
        print(f"monoid-factor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndecidedError as exc:
        print(f"monoid-factor: undecided: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (ValueError, RuntimeError) as exc:
        print(f"monoid-factor: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": args.command, "spec": spec.to_json(),
                          "result": result, "complete": complete}), file=out)
    else:
        print(spec.describe(), file=out)
        if lines:
            print("--", file=out)
            for line in lines:
                print(line, file=out)
    if args.require_complete and not complete:
        print("monoid-factor: result is not certified complete", file=sys.stderr)
        return EXIT_INCOMPLETE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
