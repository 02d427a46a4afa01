"""Dense univariate polynomials with arbitrary-precision integer coefficients."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple

import mpmath


def _trim(coeffs: Iterable[int]) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(coeffs)
        for a in c:
            if not isinstance(a, int):
                raise TypeError(f"coefficients must be int, got {type(a).__name__}")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @classmethod
    def from_high(cls, coeffs: Sequence[int]) -> "IntPoly":
        """Build from coefficients listed highest degree first."""
        return cls(tuple(reversed(list(coeffs))))

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def graph_coeff(self, i: int) -> int:
        """Coefficient ``a_i`` in the ``sum a_i x^(n-i)`` convention, n = degree."""
        return self[self.degree - i]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.to_text()

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly.constant(other)
        raise TypeError(f"cannot combine IntPoly with {type(other).__name__}")

    def __add__(self, other) -> "IntPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "IntPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "IntPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "IntPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise ValueError("negative power")
        result, base = IntPoly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "IntPoly":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Divide by the content; leading coefficient made positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def divmod_exact(self, other: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Quotient and remainder over the rationals; raises if either is non-integral."""
        q, r = _divmod_fraction(self.coeffs, other.coeffs)
        if any(c.denominator != 1 for c in q + r):
            raise ValueError("division is not exact over the integers")
        return IntPoly(int(c) for c in q), IntPoly(int(c) for c in r)

    def __floordiv__(self, other: "IntPoly") -> "IntPoly":
        q, r = self.divmod_exact(other)
        if not r.is_zero():
            raise ValueError("polynomial division leaves a remainder")
        return q

    # -- evaluation ---------------------------------------------------------
    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, num: int, den: int) -> int:
        """Return ``den**deg * p(num/den)`` as an exact integer (same sign as p(num/den))."""
        d = self.degree
        if d < 0:
            return 0
        acc = 0
        dpow = 1
        for c in reversed(self.coeffs):
            acc = acc * num + c * dpow
            dpow *= den
        return acc

    def is_even_or_odd(self) -> bool:
        """True when all nonzero coefficients share the parity of the degree."""
        d = self.degree
        return all(c == 0 for i, c in enumerate(self.coeffs) if (d - i) % 2)

    # -- text format --------------------------------------------------------
    def to_text(self) -> str:
        """``"deg c_deg ... c_0"``; the zero polynomial is written as ``"0 0"``."""
        if not self.coeffs:
            return "0 0"
        return " ".join(str(v) for v in (self.degree, *reversed(self.coeffs)))

    @classmethod
    def from_text(cls, text: str) -> "IntPoly":
        fields = text.split()
        if not fields:
            raise ValueError("empty polynomial text")
        try:
            values = [int(f) for f in fields]
        except ValueError as exc:
            raise ValueError(f"non-integer field in polynomial text: {exc}") from None
        deg, coeffs = values[0], values[1:]
        if len(coeffs) != deg + 1:
            raise ValueError(f"degree {deg} needs {deg + 1} coefficients, got {len(coeffs)}")
        return cls.from_high(coeffs)

    def pretty(self, var: str = "x") -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}{mono}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _divmod_fraction(a: Sequence[int], b: Sequence[int]):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    db = len(b) - 1
    lead = Fraction(b[-1])
    if len(r) - 1 < db:
        return [], r
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        coef = r[k + db] / lead
        q[k] = coef
        if coef:
            for j, bj in enumerate(b):
                r[k + j] -= coef * bj
    while r and r[-1] == 0:
        r.pop()
    return q, r


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Z[x] via a primitive remainder sequence."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        _, r = _divmod_fraction(a.coeffs, b.coeffs)
        if not r:
            a, b = b, IntPoly()
            break
        # clear denominators then take primitive part
        den = 1
        for c in r:
            den = den * c.denominator // gcd(den, c.denominator)
        a, b = b, IntPoly(int(c * den) for c in r).primitive()
    return a.primitive()


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: ``[(f_k, k)]`` with p = c * prod f_k**k, each f_k square-free and primitive."""
    if p.degree < 1:
        return []
    f = [Fraction(c) for c in p.coeffs]
    df = _qderiv(f)
    a0 = _qgcd(f, df)
    b = _qdiv(f, a0)
    c = _qdiv(df, a0)
    d = _qsub(c, _qderiv(b))
    out = []
    k = 1
    while len(b) > 1:
        a = _qgcd(b, d)
        if len(a) > 1:
            out.append((_to_primitive(a), k))
        b = _qdiv(b, a)
        c = _qdiv(d, a)
        d = _qsub(c, _qderiv(b))
        k += 1
    return out


def _qtrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qderiv(a):
    return _qtrim([i * c for i, c in enumerate(a)][1:])


def _qsub(a, b):
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _qdiv(a, b):
    q, r = _divmod_fraction(a, b)
    if r:
        raise ValueError("expected exact division")
    return _qtrim(q)


def _qgcd(a, b):
    """Monic gcd over Q."""
    a, b = _qtrim(a), _qtrim(b)
    while b:
        _, r = _divmod_fraction(a, b)
        a, b = b, _qtrim(r)
    lead = a[-1]
    return [c / lead for c in a]


def _to_primitive(a) -> IntPoly:
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPoly(int(c * den) for c in a).primitive()


def ix_split(p: IntPoly, x, ctx=mpmath.mp):
    """Return ``(even, odd)`` with even = sum (-1)^i a_{2i} x^{2i}, odd = sum (-1)^i a_{2i+1} x^{2i+1}.

    ``a_j`` are graph-convention coefficients (``p = sum a_j x^(n-j)``), so
    ``even**2 + odd**2 == |x**n * p(i/x)|**2``.
    """
    x = ctx.convert(x)
    n = p.degree
    x2 = x * x
    even = ctx.zero
    odd = ctx.zero
    # Horner in x^2 from the highest index down
    top = n // 2
    for i in range(top, -1, -1):
        a = p.graph_coeff(2 * i)
        even = even * x2 + (a if i % 2 == 0 else -a)
    for i in range((n - 1) // 2, -1, -1):
        a = p.graph_coeff(2 * i + 1)
        odd = odd * x2 + (a if i % 2 == 0 else -a)
    return even, odd * x


def phi_ix_normalized(p: IntPoly, x, ctx=mpmath.mp):
    """Return ``(re, im)`` of ``i**(-n) * p(i*x)``.

    re = sum (-1)^k a_{2k} x^(n-2k) and im = -sum (-1)^k a_{2k+1} x^(n-2k-1);
    for bipartite graphs im vanishes and re is the positive polynomial
    ``sum b_{2k} x^(n-2k)``.
    """
    x = ctx.convert(x)
    return _phi_ix_horner(p, x, ctx)


def _phi_ix_horner(p: IntPoly, x, ctx):
    n = p.degree
    x2 = x * x
    re = ctx.zero
    for k in range(0, n // 2 + 1):
        a = p.graph_coeff(2 * k)
        re = re * x2 + (a if k % 2 == 0 else -a)
    if n % 2:
        re = re * x
    im = ctx.zero
    if n >= 1:
        for k in range(0, (n - 1) // 2 + 1):
            a = p.graph_coeff(2 * k + 1)
            im = im * x2 + (a if k % 2 == 0 else -a)
        if (n - 1) % 2:
            im = im * x
        im = -im
    return re, im


def bipartite_positive_form(p: IntPoly) -> IntPoly:
    """For a bipartite charpoly return ``sum b_{2k} x^(n-2k)`` with ``b_{2k} = (-1)^k a_{2k}``."""
    n = p.degree
    out = [0] * (n + 1)
    for j in range(n + 1):
        a = p.graph_coeff(j)
        if j % 2:
            if a:
                raise ValueError("polynomial has odd-index coefficients; not bipartite")
            continue
        out[n - j] = a if (j // 2) % 2 == 0 else -a
    return IntPoly(out)
