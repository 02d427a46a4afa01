"""Compare the printed polynomial for f(10, x) with K(20, 10, x) computed exactly.

Both sides are built as integer polynomials, so the comparison involves no
floating point at all:

    python scripts/f10_discrepancy.py
    python scripts/f10_discrepancy.py --points 0.3 1 2.5 10
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from bicyclic_energy.charpoly import charpoly_by_recursion
from bicyclic_energy.graphs import P66, R
from bicyclic_energy.polynomial import IntPoly, bipartite_positive_form

X2 = IntPoly.monomial(2)


def even(coeffs_high) -> IntPoly:
    """``sum c_k x^(2(d - k))`` from coefficients listed highest power first."""
    d = len(coeffs_high) - 1
    out = IntPoly()
    for k, c in enumerate(coeffs_high):
        out = out + IntPoly.monomial(2 * (d - k), c)
    return out


def printed_f10() -> IntPoly:
    p18 = even((1, 23, 224, 1203, 3887, 7731, 9285, 6301, 2077, 224))
    p10 = even((1, 13, 62, 131, 109, 16))
    one = IntPoly.constant(1)
    q1 = X2 + one
    return (-4 * X2 * q1 ** 2 * p18
            - p10 * X2 * (X2 ** 2 + 5 * X2 + 6) * (X2 ** 2 + 3 * X2 + 1) * q1 ** 2)


def exact_k(n: int, t: int) -> IntPoly:
    b = lambda spec: bipartite_positive_form(charpoly_by_recursion(spec))
    return b(R(n + 4 - t, t)) * b(P66(n)) - b(P66(n + 4)) * b(R(n - t, t))


def strip_common(p: IntPoly, factors):
    """Divide out each factor as often as it divides exactly; return multiplicities and the cofactor."""
    mult = []
    for f in factors:
        k = 0
        while True:
            q, r = p.divmod_exact(f)
            if not r.is_zero():
                break
            p, k = q, k + 1
        mult.append(k)
    return mult, p


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", nargs="*", default=["0.1", "0.3", "1", "2.5", "10", "100"])
    args = ap.parse_args(argv)

    shown = printed_f10()
    exact = exact_k(20, 10)
    one = IntPoly.constant(1)
    factors = [IntPoly.monomial(1), X2 + one, X2 ** 2 + 3 * X2 + one]
    names = ["x", "x^2+1", "x^4+3x^2+1"]
    for label, p in (("printed", shown), ("exact K(20,10)", exact)):
        mult, rest = strip_common(p, factors)
        fac = " ".join(f"({n})^{m}" for n, m in zip(names, mult) if m)
        print(f"{label}: degree {p.degree}, leading {p.leading}")
        print(f"  = {fac} * [{rest.pretty()}]")
    print(f"identical: {shown == exact}")
    print()
    print(f"{'x':>8} {'printed':>26} {'exact':>26} {'relative gap':>14}")
    for s in args.points:
        x = Fraction(s)
        a, b = shown(x), exact(x)
        gap = abs(a - b) / abs(b)
        print(f"{s:>8} {float(a):>26.12g} {float(b):>26.12g} {float(gap):>14.6g}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
