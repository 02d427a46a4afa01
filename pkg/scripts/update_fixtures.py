"""Regenerate the computed regression fixtures under tests/fixtures.

Run explicitly after an intentional change in numerical output:

    python scripts/update_fixtures.py

The hand-typed coefficient file (printed_charpolys.txt) is never rewritten.
"""
from __future__ import annotations

import argparse
import io
import json
from pathlib import Path

from bicyclic_energy.charpoly import charpoly_by_recursion
from bicyclic_energy.checks import base_case
from bicyclic_energy.cli import COMPARISON_COLUMNS, comparison_row, emit
from bicyclic_energy.energy import energy_eigen
from bicyclic_energy.graphs import P66
from bicyclic_energy.harness import HarnessConfig, run_extremal, run_scan, run_signgrid

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def scan_csv(max_sum: int) -> str:
    buf = io.StringIO()
    emit([comparison_row(r) for r in run_scan(max_sum)], COMPARISON_COLUMNS, False, out=buf)
    return buf.getvalue()


def regression() -> dict:
    p12 = energy_eigen(charpoly_by_recursion(P66(12)))
    base = base_case()
    ext = run_extremal(12)
    return {
        "P66_12_energy": repr(p12.value),
        "P66_12_error_bound": repr(p12.error_bound),
        "E_R10_10": repr(base.E_R10_10),
        "E_P66_20": repr(base.E_P66_20),
        "extremal_12_total": ext.total,
        "extremal_12_top": [[r.energy, r.canonical] for r in ext.ranking[:3]],
    }


def signgrid_summary() -> dict:
    out = {}
    for q in ("chain", "K", "f"):
        rep = run_signgrid(q, config=HarnessConfig())
        out[q] = {"points": rep.points, "evaluations": rep.evaluations, "violations": len(rep.violations)}
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--dry-run", action="store_true", help="print instead of writing")
    args = ap.parse_args()
    files = {
        "scan_50.csv": scan_csv(50),
        "regression.json": json.dumps(regression(), indent=2) + "\n",
        "signgrid_default.json": json.dumps(signgrid_summary(), indent=2) + "\n",
    }
    for name, text in files.items():
        if args.dry_run:
            print(f"== {name}\n{text}")
        else:
            (FIXTURES / name).write_text(text)
            print(f"wrote {FIXTURES / name}")


if __name__ == "__main__":
    main()
