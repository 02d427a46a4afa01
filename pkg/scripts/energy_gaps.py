"""Tabulate E(P66_n) - E(R_{n-t,t}) for fixed t as n grows.

The gap should stay positive and settle towards a limit for each t:

    python scripts/energy_gaps.py --t 10 14 18 --n-max 80
    python scripts/energy_gaps.py --t 10 --n-max 60 --integral
"""
from __future__ import annotations

import argparse

from bicyclic_energy.charpoly import charpoly_by_recursion
from bicyclic_energy.energy import energy_difference, energy_eigen
from bicyclic_energy.graphs import P66, R


def gap_row(n: int, t: int, integral: bool):
    p = charpoly_by_recursion(P66(n))
    r = charpoly_by_recursion(R(n - t, t))
    diff = energy_eigen(p).value - energy_eigen(r).value
    return diff, (energy_difference(p, r) if integral else None)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", type=int, nargs="+", default=[10, 14, 18, 22])
    ap.add_argument("--n-max", type=int, default=80)
    ap.add_argument("--integral", action="store_true", help="also evaluate the difference by quadrature")
    args = ap.parse_args(argv)

    for t in args.t:
        if t < 10 or t % 4 != 2:
            ap.error(f"t must be >= 10 and 2 mod 4, got {t}")
        print(f"t = {t}")
        print(f"{'n':>5} {'E(P66) - E(R)':>18} {'change':>12}" + (f" {'integral':>18}" if args.integral else ""))
        prev = None
        for n in range(2 * t, args.n_max + 1, 4):
            diff, integ = gap_row(n, t, args.integral)
            change = "" if prev is None else f"{diff - prev:12.3e}"
            tail = f" {integ:18.12f}" if integ is not None else ""
            print(f"{n:>5} {diff:18.12f} {change:>12}{tail}")
            prev = diff
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
