"""Certified real-root isolation for integer polynomials.

Square-free parts come from Yun's decomposition; each square-free factor is
isolated by Descartes' rule of signs with bisection (Vincent-Collins-Akritas)
and the isolating intervals are refined by exact sign evaluation at dyadic
rationals. No floating-point root finder is involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .polynomial import IntPoly, squarefree_decomposition


@dataclass(frozen=True)
class RootInterval:
    """A closed interval ``[lo, hi]`` holding exactly one root (``lo == hi`` for an exact root)."""

    lo: Fraction
    hi: Fraction
    multiplicity: int

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def sign_variations(coeffs: Sequence[int]) -> int:
    count = 0
    last = 0
    for c in coeffs:
        if c:
            if last and (c > 0) != (last > 0):
                count += 1
            last = c
    return count


def taylor_shift_1(c: List[int]) -> List[int]:
    """Coefficients of ``p(x + 1)`` (low degree first)."""
    a = list(c)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _descartes_01(c: List[int]) -> int:
    """Upper bound (exact when 0 or 1) on roots of ``c`` in (0, 1)."""
    # roots in (0,1) of p  <->  positive roots of (x+1)^d p(1/(x+1))
    return sign_variations(taylor_shift_1(c[::-1]))


def _isolate_01(c: List[int]) -> List[Tuple[Fraction, Fraction]]:
    """Isolating intervals inside (0, 1) for square-free ``c``; exact roots as degenerate intervals."""
    out: List[Tuple[Fraction, Fraction]] = []
    # stack entries: (coeffs on (0,1), left end a, scale 2^-k) meaning x = a + y / 2^k
    stack = [(c, Fraction(0), 0)]
    while stack:
        q, a, k = stack.pop()
        v = _descartes_01(q)
        w = Fraction(1, 1 << k)
        if v == 0:
            continue
        if v == 1:
            out.append((a, a + w))
            continue
        d = len(q) - 1
        # left half: 2^d q(y/2)
        left = [ci << (d - i) for i, ci in enumerate(q)]
        right = taylor_shift_1(left)
        mid = a + w / 2
        if right[0] == 0:
            # root exactly at the midpoint; divide it out of the right piece
            out.append((mid, mid))
            right = right[1:]
        stack.append((left, a, k + 1))
        stack.append((right, mid, k + 1))
    return out


def _positive_roots(c: List[int]) -> List[Tuple[Fraction, Fraction]]:
    """Isolating intervals for the positive roots of square-free ``c`` with ``c[0] != 0``."""
    d = len(c) - 1
    if d <= 0 or sign_variations(c) == 0:
        return []
    # Cauchy-type bound 2^e > 1 + max |c_i / c_d|
    lead = abs(c[-1])
    big = max(abs(x) for x in c[:-1])
    e = 0
    while (1 << e) * lead <= lead + big:
        e += 1
    scaled = [ci << (e * i) for i, ci in enumerate(c)]   # p(2^e y), roots now in (0, 1)
    bound = 1 << e
    return [(lo * bound, hi * bound) for lo, hi in _isolate_01(scaled)]


def _sign_at(p: IntPoly, r: Fraction) -> int:
    v = p.eval_fraction(r.numerator, r.denominator)
    return (v > 0) - (v < 0)


def refine(p: IntPoly, lo: Fraction, hi: Fraction, tol: Fraction) -> Tuple[Fraction, Fraction]:
    """Shrink ``[lo, hi]`` to width ``<= tol``.

    ``(lo, hi)`` is an open interval holding exactly one root of the
    square-free ``p``. An endpoint may itself be a (different) root; the
    sign just inside it is then the sign of ``p'`` there.
    """
    if lo == hi:
        return lo, hi
    dp = None
    s_lo = _sign_at(p, lo)
    if s_lo == 0:
        dp = p.derivative()
        s_lo = _sign_at(dp, lo)
    s_hi = _sign_at(p, hi)
    if s_hi == 0:
        dp = dp or p.derivative()
        s_hi = -_sign_at(dp, hi)
    if s_lo == s_hi or s_lo == 0 or s_hi == 0:
        raise ArithmeticError("interval does not bracket a sign change")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = _sign_at(p, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def isolate_squarefree(f: IntPoly) -> List[Tuple[Fraction, Fraction]]:
    """All real roots of square-free ``f`` as sorted isolating intervals."""
    c = list(f.coeffs)
    out: List[Tuple[Fraction, Fraction]] = []
    zero_mult = 0
    while c and c[0] == 0:
        c.pop(0)
        zero_mult += 1
    if zero_mult:
        out.append((Fraction(0), Fraction(0)))
    out += _positive_roots(c)
    neg = [ci if i % 2 == 0 else -ci for i, ci in enumerate(c)]
    out += [(-hi, -lo) for lo, hi in _positive_roots(neg)]
    return sorted(out)


def real_roots(p: IntPoly, tol: Fraction = Fraction(1, 10 ** 15)) -> List[RootInterval]:
    """Every real root of ``p`` with multiplicity, each enclosed in an interval of width ``<= tol``."""
    out: List[RootInterval] = []
    for f, k in squarefree_decomposition(p):
        for lo, hi in isolate_squarefree(f):
            lo, hi = refine(f, lo, hi, tol)
            out.append(RootInterval(lo, hi, k))
    out.sort(key=lambda r: r.lo)
    return out


def count_real_roots(p: IntPoly) -> int:
    """Number of real roots counted with multiplicity."""
    return sum(k * len(isolate_squarefree(f)) for f, k in squarefree_decomposition(p))
