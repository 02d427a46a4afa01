"""Graph energy by eigenvalues and by Coulson-type integrals."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .charpoly import charpoly_by_recursion
from .closedform import mp_context
from .errors import ConvergenceError, NonSymmetricSpectrumError, ParameterDomainError
from .graphs import P66, R
from .polynomial import IntPoly, ix_split, phi_ix_normalized
from .roots import RootInterval, real_roots

ROOT_WIDTH = Fraction(1, 10 ** 15)
QUAD_DIGITS = 30
HALF_LINE_TOL = 1e-9


@dataclass(frozen=True)
class EnergyResult:
    value: float
    method: str
    eigenvalues: Optional[Tuple[float, ...]] = None
    error_bound: float = 0.0
    roots: Optional[Tuple[RootInterval, ...]] = field(default=None, repr=False, compare=False)

    def trace_residuals(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        """``(s1, b1, s2, b2)``: power sums of the interval midpoints and certified bounds.

        The true ``sum λ`` lies within ``b1`` of ``s1`` and the true
        ``sum λ²`` within ``b2`` of ``s2``; all values are exact fractions.
        """
        if self.roots is None:
            raise ValueError("no root intervals stored for this result")
        s1 = s2 = Fraction(0)
        b1 = b2 = Fraction(0)
        for r in self.roots:
            m, h, k = r.mid, r.width / 2, r.multiplicity
            s1 += k * m
            s2 += k * m * m
            b1 += k * h
            b2 += k * (2 * abs(m) * h + h * h)
        return s1, b1, s2, b2


def energy_eigen(p: IntPoly) -> EnergyResult:
    """Sum of |roots| of a characteristic polynomial, roots certified to width 1e-15."""
    roots = real_roots(p, ROOT_WIDTH)
    count = sum(r.multiplicity for r in roots)
    if count != p.degree:
        raise NonSymmetricSpectrumError(
            f"found {count} real roots (with multiplicity) for a degree-{p.degree} polynomial"
        )
    total = Fraction(0)
    bound = Fraction(0)
    eig: List[float] = []
    for r in roots:
        # |mid| is within width/2 of |root|, also when the interval straddles 0
        total += r.multiplicity * abs(r.mid)
        bound += r.multiplicity * r.width / 2
        eig.extend([float(r.mid)] * r.multiplicity)
    value = float(total)
    # float conversion adds at most one ulp
    err = float(bound) + abs(value) * 2.0 ** -52
    return EnergyResult(value, "eigenvalue", tuple(sorted(eig)), err, tuple(roots))


# -- quadrature -----------------------------------------------------------------

def adaptive_quad(f: Callable, a, b, tol: float, ctx, max_depth: int = 14):
    """Integrate ``f`` on ``[a, b]`` by tanh-sinh panels, bisecting panels whose error estimate is too big.

    Returns ``(value, error_estimate)``; raises :class:`ConvergenceError`
    when ``max_depth`` bisections cannot meet ``tol``.
    """
    total = ctx.zero
    err_total = 0.0
    stack = [(ctx.mpf(a), ctx.mpf(b), 0)]
    full = float(b - a)
    while stack:
        lo, hi, depth = stack.pop()
        val, err = ctx.quad(f, [lo, hi], error=True, maxdegree=6)
        share = tol * float(hi - lo) / full
        if float(err) <= share or depth >= max_depth:
            if float(err) > share and depth >= max_depth:
                raise ConvergenceError("quadrature did not converge", float(err_total + err))
            total += val
            err_total += float(err)
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return total, err_total


def energy_coulson_explicit(p: IntPoly, tol: float = HALF_LINE_TOL) -> EnergyResult:
    """``(1/2π) ∫ x⁻² log[(Σ(-1)^i a_2i x^2i)² + (Σ(-1)^i a_2i+1 x^2i+1)²] dx`` over the real line.

    The integrand is even, so this is ``(1/π) ∫_0^∞``; the half-line is
    mapped to ``(0, π/2)`` by ``x = tan θ``.
    """
    if not any(p.graph_coeff(i) for i in range(1, p.degree + 1)):
        return EnergyResult(0.0, "coulson-explicit", None, 0.0)
    ctx = mp_context(QUAD_DIGITS)

    def integrand(theta):
        x = ctx.tan(theta)
        e, o = ix_split(p, x, ctx)
        s = ctx.sin(theta)
        return ctx.log(e * e + o * o) / (s * s)

    val, err = adaptive_quad(integrand, 0, ctx.pi / 2, tol, ctx)
    return EnergyResult(float(val / ctx.pi), "coulson-explicit", None, float(err / ctx.pi))


def energy_difference(p1: IntPoly, p2: IntPoly, tol: float = HALF_LINE_TOL) -> float:
    """``E(G1) - E(G2) = (1/π) ∫ log|φ(G1; ix) / φ(G2; ix)| dx`` for graphs of equal order."""
    if p1.degree != p2.degree:
        raise ParameterDomainError(f"graphs must have the same order, got degrees {p1.degree} and {p2.degree}")
    if p1 == p2:
        return 0.0
    ctx = mp_context(QUAD_DIGITS)

    def integrand(theta):
        x = ctx.tan(theta)
        r1, i1 = phi_ix_normalized(p1, x, ctx)
        r2, i2 = phi_ix_normalized(p2, x, ctx)
        c = ctx.cos(theta)
        return ctx.log((r1 * r1 + i1 * i1) / (r2 * r2 + i2 * i2)) / (2 * c * c)

    # |φ(ix)| is even in x for real coefficients
    val, _ = adaptive_quad(integrand, 0, ctx.pi / 2, tol, ctx)
    return float(2 * val / ctx.pi)


# -- family comparison ------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRecord:
    n: int
    t: int
    E_p66: float
    E_R: float
    difference: float
    methods_agree: bool
    integral_difference: float = float("nan")

    @property
    def a(self) -> int:
        return self.n - self.t

    @property
    def b(self) -> int:
        return self.t


def check_comparison_domain(n: int, t: int):
    a = n - t
    if a < 10 or t < 10:
        raise ParameterDomainError(f"need n - t >= 10 and t >= 10, got n={n}, t={t}")
    if a % 4 != 2 or t % 4 != 2:
        raise ParameterDomainError(f"need n - t = t = 2 (mod 4), got n - t={a}, t={t}")


def compare_families(n: int, t: int, agree_tol: float = 1e-6) -> ComparisonRecord:
    """Energies of P66_n and R_{n-t,t}, with the difference cross-checked by the integral."""
    check_comparison_domain(n, t)
    p_p66 = charpoly_by_recursion(P66(n))
    p_r = charpoly_by_recursion(R(n - t, t))
    e_p = energy_eigen(p_p66).value
    e_r = energy_eigen(p_r).value
    diff = e_p - e_r
    integral = energy_difference(p_p66, p_r)
    return ComparisonRecord(n, t, e_p, e_r, diff, abs(integral - diff) < agree_tol, integral)
