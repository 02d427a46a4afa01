"""Exact characteristic polynomials and energies of bicyclic graph families.

Exit codes: 0 all checks pass, 1 a mathematical violation was found,
2 usage or parameter error, 3 quadrature failed to converge.

Tabular output is CSV (header row, LF line endings) unless ``--json`` is
given, in which case a single object with a ``records`` array is printed.
Energies are written with 12 significant digits; polynomial coefficients
are exact.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Dict, List, Optional, Sequence

from .charpoly import charpoly_by_recursion, charpoly_direct, edge_deletion_recursion
from .closedform import DEFAULT_DIGITS
from .energy import ComparisonRecord, compare_families, energy_coulson_explicit, energy_eigen
from .errors import CapacityError, ConvergenceError, NonSymmetricSpectrumError, ParameterDomainError, UsageError
from .graphs import P66, R, Cycle, EdgeListParseError, Path, PyloneCycle, build, parse_edge_list
from .harness import QUANTITIES, HarnessConfig, run_extremal, run_scan, run_signgrid, run_verify, scan_passed

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3

COMPARISON_COLUMNS = ["a", "b", "n", "t", "E_p66", "E_R", "difference", "integral_difference", "methods_agree"]
SIGNGRID_COLUMNS = ["kind", "check", "t", "n", "x", "value"]
EXTREMAL_COLUMNS = ["rank", "energy", "error_bound", "certified", "is_p66", "canonical"]
VERIFY_COLUMNS = ["check", "passed", "seconds", "detail"]
ENERGY_COLUMNS = ["graph", "n", "m", "method", "energy", "error_bound"]


def fmt_energy(v: float) -> str:
    return f"{v:.12g}"


def fmt_bool(v: bool) -> str:
    return "true" if v else "false"


def emit(records: List[Dict], columns: Sequence[str], as_json: bool, extra: Optional[Dict] = None,
         out=None) -> None:
    out = out or sys.stdout
    if as_json:
        doc = dict(extra or {})
        doc["records"] = records
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for rec in records:
        w.writerow({k: (fmt_bool(v) if isinstance(v, bool) else v) for k, v in rec.items()})
    out.write(buf.getvalue())


def note(msg: str) -> None:
    print(msg, file=sys.stderr)


def comparison_row(r: ComparisonRecord) -> Dict:
    return {
        "a": r.a, "b": r.b, "n": r.n, "t": r.t,
        "E_p66": fmt_energy(r.E_p66), "E_R": fmt_energy(r.E_R),
        "difference": fmt_energy(r.difference),
        "integral_difference": fmt_energy(r.integral_difference),
        "methods_agree": r.methods_agree,
    }


# -- graph selection ----------------------------------------------------------------

FAMILIES = ("path", "cycle", "pylone", "p66", "r")


def family_spec(args):
    fam = args.family
    need = {"path": ["n"], "cycle": ["n"], "pylone": ["n", "ell"], "p66": ["n"], "r": ["a", "b"]}[fam]
    missing = [f"--{k}" for k in need if getattr(args, k) is None]
    if missing:
        raise UsageError(f"--family {fam} needs {' '.join(missing)}")
    if fam == "path":
        return Path(args.n)
    if fam == "cycle":
        return Cycle(args.n)
    if fam == "pylone":
        return PyloneCycle(args.n, args.ell)
    if fam == "p66":
        return P66(args.n)
    return R(args.a, args.b)


def load_graph(args):
    """``(label, graph, spec or None)`` from ``--family ...`` or ``--file``."""
    if (args.family is None) == (args.file is None):
        raise UsageError("give exactly one of --family or --file")
    if args.file is not None:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        return args.file, parse_edge_list(text), None
    spec = family_spec(args)
    return str(spec), build(spec), spec


def polynomial_of(args):
    label, g, spec = load_graph(args)
    method = args.method
    if method == "auto":
        method = "recursion" if spec is not None else "direct"
    if method == "recursion":
        if spec is None:
            raise UsageError("--method recursion needs --family")
        return label, g, charpoly_by_recursion(spec)
    if method == "deletion":
        if not g.m:
            return label, g, charpoly_direct(g)
        return label, g, edge_deletion_recursion(g, g.sorted_edges()[0])
    return label, g, charpoly_direct(g)


# -- subcommands ---------------------------------------------------------------------

def cmd_charpoly(args, config) -> int:
    label, g, p = polynomial_of(args)
    if args.json:
        emit([{"graph": label, "n": g.n, "m": g.m, "polynomial": p.to_text(),
               "coefficients": [p.graph_coeff(i) for i in range(p.degree + 1)]}], [], True)
    else:
        print(p.to_text())
    return EXIT_OK


def cmd_energy(args, config) -> int:
    label, g, p = polynomial_of(args)
    results = []
    if args.energy_method in ("eigen", "both"):
        results.append(energy_eigen(p))
    if args.energy_method in ("coulson", "both"):
        results.append(energy_coulson_explicit(p))
    rows = [{"graph": label, "n": g.n, "m": g.m, "method": r.method,
             "energy": fmt_energy(r.value), "error_bound": f"{r.error_bound:.3e}"} for r in results]
    emit(rows, ENERGY_COLUMNS, args.json)
    if len(results) == 2 and abs(results[0].value - results[1].value) >= 1e-8:
        note("eigenvalue and Coulson energies differ by more than 1e-8")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_compare(args, config) -> int:
    rec = compare_families(args.n, args.t)
    emit([comparison_row(rec)], COMPARISON_COLUMNS, args.json)
    return EXIT_OK if scan_passed([rec]) else EXIT_VIOLATION


def cmd_scan(args, config) -> int:
    records = run_scan(args.max_sum, config)
    ok = scan_passed(records)
    emit([comparison_row(r) for r in records], COMPARISON_COLUMNS, args.json,
         {"command": "scan", "max_sum": args.max_sum, "passed": ok})
    note(f"scan a+b <= {args.max_sum}: {len(records)} pairs, "
         f"{sum(r.difference > 0 for r in records)} positive, "
         f"{sum(r.methods_agree for r in records)} with agreeing methods")
    return EXIT_OK if ok else EXIT_VIOLATION


def int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_signgrid(args, config) -> int:
    rep = run_signgrid(args.quantity, args.t, args.n, config)
    rows = [dict(kind="violation", **vars(v)) for v in rep.violations]
    rows += [dict(kind="mismatch", **vars(v)) for v in rep.mismatches]
    extra = {"command": "signgrid", "quantity": rep.quantity, "points": rep.points,
             "evaluations": rep.evaluations, "passed": rep.passed, "max_f10_gap": rep.max_f10_gap}
    emit(rows, SIGNGRID_COLUMNS, args.json, extra)
    msg = (f"signgrid {rep.quantity}: {rep.points} points, {rep.evaluations} evaluations, "
           f"{len(rep.violations)} sign violations, {len(rep.mismatches)} formula mismatches")
    if rep.max_f10_gap is not None:
        msg += f", max printed-f(10) relative gap {rep.max_f10_gap:.3e}"
    note(msg)
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_extremal(args, config) -> int:
    rep = run_extremal(args.n, config)
    rows = [{"rank": r.rank, "energy": fmt_energy(r.energy), "error_bound": f"{r.error_bound:.3e}",
             "certified": r.certified, "is_p66": r.is_p66, "canonical": r.canonical} for r in rep.ranking]
    extra = {"command": "extremal", "n": rep.n, "total": rep.total, "winner_unique": rep.winner_unique,
             "winner_is_p66": rep.winner_is_p66, "margin": fmt_energy(rep.margin), "passed": rep.passed}
    emit(rows, EXTREMAL_COLUMNS, args.json, extra)
    note(f"extremal n={rep.n}: {rep.total} graphs; winner is P66: {rep.winner_is_p66}; "
         f"unique: {rep.winner_unique}; margin {rep.margin:.6g}")
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_verify(args, config) -> int:
    results = run_verify(config, args.only)
    rows = [{"check": r.name, "passed": r.passed, "seconds": f"{r.seconds:.2f}", "detail": r.detail}
            for r in results]
    ok = all(r.passed for r in results)
    emit(rows, VERIFY_COLUMNS, args.json, {"command": "verify", "passed": ok})
    note(f"verify: {sum(r.passed for r in results)} of {len(results)} checks pass")
    return EXIT_OK if ok else EXIT_VIOLATION


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    common.add_argument("--precision-digits", type=int, default=DEFAULT_DIGITS,
                        help="working digits for closed forms (default %(default)s)")
    common.add_argument("--grid-density", type=int, default=60,
                        help="grid points per decade of |x| (default %(default)s)")
    common.add_argument("--max-n", type=int, default=100,
                        help="largest a + b accepted by scan (default %(default)s)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default %(default)s)")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--family", choices=FAMILIES)
    graph.add_argument("--n", type=int)
    graph.add_argument("--ell", type=int, help="cycle length for --family pylone")
    graph.add_argument("--a", type=int)
    graph.add_argument("--b", type=int)
    graph.add_argument("--file", help="edge-list file ('n m' header, then 'u v' lines)")
    graph.add_argument("--method", choices=("auto", "direct", "recursion", "deletion"), default="auto",
                       help="characteristic polynomial route")

    parser = argparse.ArgumentParser(prog="bicyclic-energy", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", parents=[common, graph], help="exact characteristic polynomial")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("energy", parents=[common, graph], help="graph energy")
    p.add_argument("--energy-method", choices=("eigen", "coulson", "both"), default="eigen")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("compare", parents=[common], help="E(P66_n) - E(R_{n-t,t})")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("scan", parents=[common], help="compare all valid (a, b) with a + b <= max_sum")
    p.add_argument("max_sum", type=int)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("signgrid", parents=[common], help="sign checks of K, f and f(10) on the grid")
    p.add_argument("--quantity", choices=QUANTITIES, default="chain")
    p.add_argument("--t", type=int_list, default=[10, 14, 18, 22], help="comma-separated t values")
    p.add_argument("--n", type=int_list, default=None, help="comma-separated n values (default 2t..60)")
    p.set_defaults(func=cmd_signgrid)

    p = sub.add_parser("extremal", parents=[common], help="rank bipartite bicyclic graphs by energy")
    p.add_argument("n", type=int)
    p.add_argument("--allow-large", action="store_true", help="permit n = 14")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("verify", parents=[common], help="run the identity and invariant checks")
    p.add_argument("--only", action="append", help="run checks whose name contains this text (repeatable)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_digits < 50 or args.grid_density < 1 or args.jobs < 1:
        note("error: need --precision-digits >= 50, --grid-density >= 1 and --jobs >= 1")
        return EXIT_USAGE
    config = HarnessConfig(
        precision_digits=args.precision_digits,
        grid_density=args.grid_density,
        max_sum=args.max_n,
        allow_large=getattr(args, "allow_large", False),
        jobs=args.jobs,
    )
    try:
        return args.func(args, config)
    except ConvergenceError as exc:
        note(f"convergence failure: {exc}")
        return EXIT_CONVERGENCE
    except (ParameterDomainError, CapacityError, UsageError, EdgeListParseError, NonSymmetricSpectrumError) as exc:
        note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
