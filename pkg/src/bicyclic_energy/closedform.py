"""High-precision closed forms on the imaginary axis.

Everything here evaluates ``i**(-n) * phi(G, i*x)`` for real ``x`` through

    Z1 = (x + sqrt(x^2 + 4)) / 2,    Z2 = (x - sqrt(x^2 + 4)) / 2,

so that ``Z1 * Z2 = -1`` and ``Z1 + Z2 = x``. For bipartite graphs that
normalised value is real and equals ``sum b_2k x^(n-2k)`` (see
:func:`bicyclic_energy.polynomial.phi_ix_normalized`), which is the
convention every function in this module follows.

Working precision is held by the context itself (an ``mpmath.MPContext``
per digit count), so nothing here touches ``mpmath.mp``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence

import mpmath

from .errors import ParameterDomainError, UsageError

DEFAULT_DIGITS = 150

# b-form (all coefficients non-negative) of phi(P66_12) and phi(P66_13)
G12_COEFFS = (1, 13, 62, 138, 153, 81, 16)          # x^12, x^10, ..., x^0
G13_COEFFS = (1, 14, 74, 188, 245, 158, 40)         # x^13, x^11, ..., x^1


@lru_cache(maxsize=None)
def mp_context(digits: int) -> mpmath.ctx_mp.MPContext:
    """A private mpmath context at ``digits`` significant digits (never mutated after creation)."""
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


def _even_poly(coeffs: Sequence[int], x, ctx):
    x2 = x * x
    acc = ctx.zero
    for c in coeffs:
        acc = acc * x2 + c
    return acc


def g12(x, ctx):
    return _even_poly(G12_COEFFS, x, ctx)


def g13(x, ctx):
    return _even_poly(G13_COEFFS, x, ctx) * x


def _ipow(k: int, ctx):
    """``i**k`` as an exact real (+-1) or an mpc (+-i)."""
    r = k % 4
    if r == 0:
        return 1
    if r == 2:
        return -1
    return ctx.mpc(0, 1) if r == 1 else ctx.mpc(0, -1)


@dataclass(frozen=True)
class ClosedFormContext:
    x: object
    Z1: object
    Z2: object
    A1: object
    A2: object
    B1: object
    B2: object
    g12: object
    g13: object
    t: Optional[int]
    C1: object
    C2: object
    ctx: mpmath.ctx_mp.MPContext

    @property
    def digits(self) -> int:
        return self.ctx.dps

    def require_t(self) -> int:
        if self.t is None:
            raise UsageError("this quantity needs the cycle parameter t; pass t to make_context")
        return self.t

    def C_simplified(self):
        """``(C1(ix), C2(ix))`` in the reduced form valid for ``t = 2 (mod 4)``."""
        t = self.require_t()
        if t % 4 != 2:
            raise ParameterDomainError(f"reduced C_j forms need t = 2 (mod 4), got t={t}")
        return _c_simplified(self, t)


def _c_simplified(c: ClosedFormContext, t: int):
    x2 = c.x * c.x
    q = (x2 + 3) / (x2 + 4)
    Z1, Z2 = c.Z1, c.Z2
    w1 = Z1 * Z1
    w2 = Z2 * Z2
    C1 = 1 + q * Z2 ** (2 * t) + 2 * Z2 ** t + w1 / (w1 + 1) ** 2
    C2 = 1 + q * Z1 ** (2 * t) + 2 * Z1 ** t + w2 / (w2 + 1) ** 2
    return C1, C2


def make_context(x, t: Optional[int] = None, digits: int = DEFAULT_DIGITS) -> ClosedFormContext:
    """Evaluate the Z, A, B (and, with ``t``, C) functions at the real point ``x``.

    ``C1``/``C2`` are obtained from the B-functions,
    ``C1(ix) = 1 + i^2t Z2^2t - 2 i^t Z2^t + B1^2 Z2^2 - B1 B2 i^2t Z2^2t``,
    which is real for even ``t``; odd ``t`` is rejected since ``R`` is then
    not bipartite.
    """
    ctx = mp_context(digits)
    x = ctx.mpf(x)
    s = ctx.sqrt(x * x + 4)
    Z1 = (x + s) / 2
    Z2 = (x - s) / 2
    G12 = g12(x, ctx)
    G13 = g13(x, ctx)
    w1, w2 = Z1 * Z1, Z2 * Z2
    A1 = (Z1 * G13 + G12) / (w1 + 1) * Z2 ** 12
    A2 = (Z2 * G13 + G12) / (w2 + 1) * Z1 ** 12
    x2p1 = x * x + 1
    B1 = (Z1 * x2p1 + x) / (Z1 * (w1 + 1))
    B2 = (Z2 * x2p1 + x) / (Z2 * (w2 + 1))
    C1 = C2 = None
    if t is not None:
        if t < 3:
            raise ParameterDomainError(f"cycle parameter needs t >= 3, got t={t}")
        if t % 2:
            raise ParameterDomainError(f"cycle parameter must be even for a real-valued R closed form, got t={t}")
        it = 1 if t % 4 == 0 else -1          # i^t
        # i^(2t) = 1 for even t
        C1 = 1 + Z2 ** (2 * t) - 2 * it * Z2 ** t + B1 * B1 * w2 - B1 * B2 * Z2 ** (2 * t)
        C2 = 1 + Z1 ** (2 * t) - 2 * it * Z1 ** t + B2 * B2 * w1 - B1 * B2 * Z1 ** (2 * t)
    return ClosedFormContext(
        x=x, Z1=Z1, Z2=Z2, A1=A1, A2=A2, B1=B1, B2=B2,
        g12=G12, g13=G13, t=t, C1=C1, C2=C2, ctx=ctx,
    )


def observation_product(x, ctx):
    """``(x^6 + 8x^4 + 19x^2 + 16)^2 (x^2 + 1)^4 / (x^2 + 4)``, the closed form of ``A1 * A2``."""
    x2 = x * x
    return (x2 ** 3 + 8 * x2 ** 2 + 19 * x2 + 16) ** 2 * (x2 + 1) ** 4 / (x2 + 4)


# -- closed forms of the four families ------------------------------------------

def phi_path_closed(n: int, c: ClosedFormContext):
    if n < 4:
        raise ParameterDomainError(f"path closed form needs n >= 4, got n={n}")
    return c.B1 * c.Z1 ** n + c.B2 * c.Z2 ** n


def phi_cycle_closed(n: int, c: ClosedFormContext):
    """Real for even ``n``; an ``mpc`` for odd ``n`` (odd cycles are not bipartite)."""
    if n < 4:
        raise ParameterDomainError(f"cycle closed form needs n >= 4, got n={n}")
    return c.Z1 ** n + c.Z2 ** n - 2 * _ipow(-n, c.ctx)


def phi_p66_closed(n: int, c: ClosedFormContext):
    if n < 12:
        raise ParameterDomainError(f"P66 closed form needs n >= 12, got n={n}")
    return c.A1 * c.Z1 ** n + c.A2 * c.Z2 ** n


def phi_R_closed(n: int, c: ClosedFormContext):
    """``i^-n phi(R_{n-t,t}, ix)`` with ``t`` taken from the context; ``n`` must be even."""
    t = c.require_t()
    if n < 6 or n - t < 3:
        raise ParameterDomainError(f"R closed form needs n >= 6 and n - t >= 3, got n={n}, t={t}")
    if n % 2:
        raise ParameterDomainError(f"R closed form needs even n (bipartite), got n={n}")
    s = c.Z1 ** t + c.Z2 ** t
    sign_tn = 1 if (t - n) % 4 == 0 else -1     # i^(t-n)
    sign_n = 1 if n % 4 == 0 else -1            # i^(-n)
    return c.C1 * c.Z1 ** n + c.C2 * c.Z2 ** n - 2 * sign_tn * s + 4 * sign_n


# -- the inequality chain ------------------------------------------------------

def _check_parities(n: Optional[int], t: int):
    if t % 4 != 2 or t < 10:
        raise ParameterDomainError(f"need t = 2 (mod 4) and t >= 10, got t={t}")
    if n is not None:
        if n % 4 != 0:
            raise ParameterDomainError(f"need n = 0 (mod 4), got n={n}")
        if n < 2 * t:
            raise ParameterDomainError(f"need n >= 2t, got n={n}, t={t}")


def _context_for(t: int, c: ClosedFormContext) -> ClosedFormContext:
    if c.t == t:
        return c
    return make_context(c.x, t=t, digits=c.digits)


GUARD_KEEP = 60      # digits that must survive cancellation in the product form


def K_product_form(n: int, t: int, c: ClosedFormContext):
    """``phi(R_{n+4-t,t}) phi(P66_n) - phi(P66_{n+4}) phi(R_{n-t,t})`` from the closed forms.

    The two products agree in their leading digits (by ``log10`` of
    ``H / K``, which reaches 150 at ``|x| = 1000``, ``n = 60``), so the
    difference is recomputed with enough guard digits to keep
    ``GUARD_KEEP`` correct ones. The result is returned at ``c``'s precision.
    """
    _check_parities(n, t)
    digits = c.digits
    x = c.x
    while True:
        ct = make_context(x, t=t, digits=digits)
        ctx = ct.ctx
        left = phi_R_closed(n + 4, ct) * phi_p66_closed(n, ct)
        k = left - phi_p66_closed(n + 4, ct) * phi_R_closed(n, ct)
        lost = digits if k == 0 else int(ctx.log10(abs(left) / abs(k))) + 1
        if digits - lost >= GUARD_KEEP or digits >= 8 * c.digits:
            return c.ctx.mpf(k)
        digits = lost + GUARD_KEEP + 20


def K_z_form(n: int, t: int, c: ClosedFormContext):
    """The expanded form in Z1, Z2 with the reduced ``C_j``."""
    _check_parities(n, t)
    c = _context_for(t, c)
    Z1, Z2, A1, A2 = c.Z1, c.Z2, c.A1, c.A2
    C1, C2 = c.C_simplified()
    z14, z24 = Z1 ** 4, Z2 ** 4
    return ((z14 - z24) * (A2 * C1 - A1 * C2)
            + (2 * Z1 ** t + 2 * Z2 ** t + 4) * (A1 * Z1 ** n * (1 - z14) + A2 * Z2 ** n * (1 - z24)))


@dataclass(frozen=True)
class KValue:
    value: object
    product_form: object

    @property
    def relative_gap(self):
        den = abs(self.value)
        return abs(self.value - self.product_form) / den if den else abs(self.product_form)


def K_value(n: int, t: int, c: ClosedFormContext, *, cross_check: bool = False):
    """Z-form value of K(n, t, x); with ``cross_check`` also return the product form."""
    z = K_z_form(n, t, c)
    if not cross_check:
        return z
    return KValue(z, K_product_form(n, t, c))


def H_value(n: int, t: int, c: ClosedFormContext):
    """``phi(P66_{n+4}) phi(R_{n-t,t})`` (positive)."""
    _check_parities(n, t)
    c = _context_for(t, c)
    return phi_p66_closed(n + 4, c) * phi_R_closed(n, c)


@dataclass(frozen=True)
class FCoefficients:
    alpha0: object
    alpha1: object
    beta0: object
    beta1: object
    gamma0: object
    gamma1: object
    a0: object

    def as_dict(self):
        return {k: getattr(self, k) for k in ("alpha0", "alpha1", "beta0", "beta1", "gamma0", "gamma1", "a0")}


def f_coeffs(c: ClosedFormContext) -> FCoefficients:
    Z1, Z2, A1, A2, x = c.Z1, c.Z2, c.A1, c.A2, c.x
    z14, z24 = Z1 ** 4, Z2 ** 4
    d = z14 - z24
    q = (x * x + 3) / (x * x + 4)
    w1, w2 = Z1 * Z1, Z2 * Z2
    return FCoefficients(
        alpha0=2 * A1 * (1 - z14),
        alpha1=2 * A2 * (1 - z24),
        beta0=A1 * (4 * (1 - z14) - d * q),
        beta1=A2 * (4 * (1 - z24) + d * q),
        gamma0=2 * A1 * ((1 - z14) - d),
        gamma1=2 * A2 * ((1 - z24) + d),
        a0=d * (A2 * (1 + w1 / (w1 + 1) ** 2) - A1 * (1 + w2 / (w2 + 1) ** 2)),
    )


def f_value(t: int, c: ClosedFormContext, coeffs: Optional[FCoefficients] = None):
    """``f(t, x) = K(2t, t, x)`` assembled from its seven coefficients."""
    _check_parities(None, t)
    k = coeffs or f_coeffs(c)
    u = c.Z1 ** t
    ui = 1 / u
    return (k.alpha0 * u ** 3 + k.alpha1 * ui ** 3 + k.beta0 * u ** 2 + k.beta1 * ui ** 2
            + k.gamma0 * u + k.gamma1 * ui + k.a0)


def f10_explicit(x, digits: int = DEFAULT_DIGITS):
    """The factored degree-24 polynomial displayed for ``f(10, x)``."""
    ctx = mp_context(digits)
    x = ctx.mpf(x)
    x2 = x * x
    p18 = _even_poly((1, 23, 224, 1203, 3887, 7731, 9285, 6301, 2077, 224), x, ctx)
    p10 = _even_poly((1, 13, 62, 131, 109, 16), x, ctx)
    return (-4 * x2 * (x2 + 1) ** 2 * p18
            - p10 * x2 * (x2 ** 2 + 5 * x2 + 6) * (x2 ** 2 + 3 * x2 + 1) * (x2 + 1) ** 2)


# -- sampling grid ---------------------------------------------------------------

def default_grid(per_decade: int = 60, lo_exp: int = -3, hi_exp: int = 3,
                 digits: int = DEFAULT_DIGITS, extras: Sequence[str] = ("0.5", "1", "2", "3")) -> List:
    """Log-spaced ``|x|`` in ``[10^lo, 10^hi]`` with both signs, plus the listed extras; sorted, no zero."""
    ctx = mp_context(digits)
    pts = {}
    steps = (hi_exp - lo_exp) * per_decade
    for k in range(steps + 1):
        v = ctx.power(10, ctx.mpf(lo_exp) + ctx.mpf(k) / per_decade)
        pts[ctx.nstr(v, 30)] = v
    for e in extras:
        pts[ctx.nstr(ctx.mpf(e), 30)] = ctx.mpf(e)
    pos = sorted(pts.values())
    return [-v for v in reversed(pos)] + pos


def log_bounds_hold(X) -> bool:
    """``X/(1+X) <= log(1+X) <= X`` for ``X > -1``."""
    ctx = mp_context(50)
    X = ctx.mpf(X)
    if X <= -1:
        raise ParameterDomainError("need X > -1")
    lg = ctx.log1p(X)
    return X / (1 + X) <= lg <= X
