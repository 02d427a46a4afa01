"""Named identity and invariant checks shared by ``verify`` and the acceptance suite.

Every check returns a :class:`CheckResult`. Checks never raise on a
mathematical failure; they report it, so a full run always completes.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .canon import canonical_form
from .charpoly import (
    charpoly_by_recursion,
    charpoly_direct,
    component_product,
    edge_deletion_recursion,
    matching_numbers,
)
from .closedform import (
    DEFAULT_DIGITS,
    K_product_form,
    K_z_form,
    f10_explicit,
    f_coeffs,
    f_value,
    log_bounds_hold,
    make_context,
    mp_context,
    observation_product,
    phi_cycle_closed,
    phi_p66_closed,
    phi_path_closed,
    phi_R_closed,
)
from .energy import energy_coulson_explicit, energy_difference, energy_eigen
from .enumerate import _attach, enumerate_bipartite_bicyclic, rooted_trees
from .graphs import P66, R, Cycle, FamilySpec, Graph, Path, PyloneCycle, build, is_bipartite
from .polynomial import IntPoly, phi_ix_normalized

# coefficient lists as printed for the two smallest P66 graphs (highest degree first)
PRINTED_P66_12 = IntPoly.from_high([1, 0, -13, 0, 62, 0, -138, 0, 153, 0, -81, 0, 16])
PRINTED_P66_13 = IntPoly.from_high([1, 0, -14, 0, 74, 0, -188, 0, 245, 0, -158, 0, 40, 0])

OBSERVATION_TOL = 1e-40
CLOSED_FORM_TOL = 1e-30
K_FORMS_TOL = 1e-40
F10_TOL = 1e-30
CROSS_METHOD_TOL = 1e-8
DIFFERENCE_TOL = 1e-6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def timed(name: str, fn: Callable[[], Tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    ok, detail = fn()
    return CheckResult(name, bool(ok), detail, time.perf_counter() - start)


def relative_gap(a, b, ctx) -> float:
    den = abs(b)
    if den == 0:
        return float(abs(a))
    return float(abs(a - b) / den)


# -- family corpora ---------------------------------------------------------------

def family_instances(n_max: int, pylone_ells: Optional[Iterable[int]] = None) -> List[FamilySpec]:
    """Every Path, Cycle, P66 and R instance of order ``<= n_max`` (``R(a, b)`` with ``a <= b``),
    plus ``PyloneCycle(n, l)`` for each ``l`` in ``pylone_ells`` (all ``l`` when ``None``)."""
    out: List[FamilySpec] = [Path(n) for n in range(1, n_max + 1)]
    out += [Cycle(n) for n in range(3, n_max + 1)]
    for n in range(3, n_max + 1):
        ells = range(3, n + 1) if pylone_ells is None else [e for e in pylone_ells if 3 <= e <= n]
        out += [PyloneCycle(n, e) for e in ells]
    out += [P66(n) for n in range(12, n_max + 1)]
    out += [R(a, b) for a in range(3, n_max + 1) for b in range(a, n_max + 1 - a)]
    return out


def enumerated_corpus(n_max: int) -> List[Graph]:
    out: List[Graph] = []
    for n in range(4, n_max + 1):
        out.extend(enumerate_bipartite_bicyclic(n, cap=max(n, 14)))
    return out


def free_trees(n: int) -> List[Graph]:
    """Every tree on ``n`` vertices up to isomorphism (one per class)."""
    seen = set()
    out = []
    for t in rooted_trees(n):
        g = _attach(Graph(1, frozenset()), [t], n)
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


# -- polynomial checks ------------------------------------------------------------

def check_golden() -> Tuple[bool, str]:
    bad = []
    for n, want in ((12, PRINTED_P66_12), (13, PRINTED_P66_13)):
        for label, got in (("recursion", charpoly_by_recursion(P66(n))),
                           ("direct", charpoly_direct(build(P66(n))))):
            if got != want:
                bad.append(f"P66({n}) {label}: {got.to_text()}")
    return not bad, "; ".join(bad) or "P66(12) and P66(13) match the printed coefficients"


def _routes(g: Graph) -> List[Tuple[str, IntPoly]]:
    e = g.sorted_edges()[0] if g.m else None
    routes = [("direct", charpoly_direct(g)), ("components", component_product(g))]
    if e is not None:
        routes.append(("edge-deletion", edge_deletion_recursion(g, e)))
    return routes


def check_family_routes(n_max: int = 30) -> Tuple[bool, str]:
    bad = []
    specs = family_instances(n_max)
    for spec in specs:
        g = build(spec)
        ref = charpoly_by_recursion(spec)
        for label, p in _routes(g):
            if p != ref:
                bad.append(f"{spec} via {label}")
    return not bad, f"{len(specs)} family instances; mismatches: {bad[:5] or 'none'}"


def check_enumerated_routes(n_max: int = 10) -> Tuple[bool, str]:
    bad = []
    corpus = enumerated_corpus(n_max)
    for g in corpus:
        polys = _routes(g)
        if any(p != polys[0][1] for _, p in polys):
            bad.append(g.sorted_edges())
    return not bad, f"{len(corpus)} enumerated graphs; mismatches: {len(bad)}"


def coefficient_problems(g: Graph, p: IntPoly) -> List[str]:
    """Violations of the degree, trace, edge-count and bipartite sign rules for ``p = phi(g)``."""
    out = []
    if p.degree != g.n or p.leading != 1:
        out.append("not monic of degree n")
    if g.n >= 1 and p.graph_coeff(1) != 0:
        out.append("a_1 != 0")
    if g.n >= 2 and p.graph_coeff(2) != -g.m:
        out.append("a_2 != -m")
    if is_bipartite(g):
        for i in range(1, g.n + 1, 2):
            if p.graph_coeff(i):
                out.append(f"odd coefficient a_{i} != 0")
        for k in range(g.n // 2 + 1):
            if (-1) ** k * p.graph_coeff(2 * k) < 0:
                out.append(f"b_{2 * k} < 0")
    return out


def check_coefficient_rules(n_max_enum: int = 10, n_max_family: int = 30) -> Tuple[bool, str]:
    bad = []
    graphs = enumerated_corpus(n_max_enum) + [build(s) for s in family_instances(n_max_family)]
    for g in graphs:
        probs = coefficient_problems(g, charpoly_direct(g))
        if probs:
            bad.append((g.n, probs))
    return not bad, f"{len(graphs)} graphs; problems: {bad[:3] or 'none'}"


def check_tree_matchings(n_max: int = 10) -> Tuple[bool, str]:
    bad = 0
    count = 0
    for n in range(1, n_max + 1):
        for g in free_trees(n):
            count += 1
            p = charpoly_direct(g)
            m = matching_numbers(g)
            for k in range(n // 2 + 1):
                mk = m[k] if k < len(m) else 0
                if p.graph_coeff(2 * k) != (-1) ** k * mk:
                    bad += 1
                    break
    return bad == 0, f"{count} trees; failures: {bad}"


# -- closed-form checks -----------------------------------------------------------

def check_z_identities(grid: Sequence, digits: int = DEFAULT_DIGITS) -> Tuple[bool, str]:
    ctx = mp_context(digits)
    eps = ctx.mpf(10) ** (-(digits - 10))
    worst = ctx.zero
    bad = []
    for x in grid:
        c = make_context(x, digits=digits)
        scale = 1 + abs(c.x)
        worst = max(worst, abs(c.Z1 * c.Z2 + 1) / scale, abs(c.Z1 + c.Z2 - c.x) / scale)
        if c.x > 0 and not (c.Z1 > 1 and -1 < c.Z2 < 0):
            bad.append(c.x)
        if c.x < 0 and not (0 < c.Z1 < 1 and c.Z2 < -1):
            bad.append(c.x)
    ok = worst < eps and not bad
    return ok, f"{len(grid)} points; max residual {ctx.nstr(worst, 3)}; range violations {len(bad)}"


def observation_points(grid: Sequence, count: int = 20) -> List:
    step = max(1, len(grid) // count)
    return list(grid)[::step][:count]


def check_observation(grid: Sequence, digits: int = DEFAULT_DIGITS, tol: float = OBSERVATION_TOL,
                      points: int = 20) -> Tuple[bool, str]:
    ctx = mp_context(digits)
    worst = 0.0
    for x in observation_points(grid, points):
        c = make_context(x, digits=digits)
        worst = max(worst, relative_gap(c.A1 * c.A2, observation_product(c.x, ctx), ctx))
    negative = 0
    for x in grid:
        c = make_context(x, digits=digits)
        if not (c.A1 > 0 and c.A2 > 0):
            negative += 1
    ok = worst < tol and negative == 0
    return ok, (f"A1*A2 max relative error {worst:.3e} on {points} points (tol {tol:g}); "
                f"points with A_j <= 0: {negative} of {len(grid)}")


@lru_cache(maxsize=None)
def _exact_poly(spec: FamilySpec) -> IntPoly:
    return charpoly_by_recursion(spec)


def closed_form_gap_at(x, n_max: int = 40, digits: int = DEFAULT_DIGITS) -> Tuple[float, str]:
    """Largest relative gap between a family closed form and the exact polynomial at ``ix``."""
    ctx = mp_context(digits)
    base = make_context(x, digits=digits)
    worst_gap, worst_spec = 0.0, ""

    def note(val, spec):
        nonlocal worst_gap, worst_spec
        re, im = phi_ix_normalized(_exact_poly(spec), base.x, ctx)
        gap = relative_gap(val, ctx.mpc(re, im), ctx)
        if gap >= worst_gap:
            worst_gap, worst_spec = gap, str(spec)

    for n in range(4, n_max + 1):
        note(phi_path_closed(n, base), Path(n))
        note(phi_cycle_closed(n, base), Cycle(n))
    for n in range(12, n_max + 1):
        note(phi_p66_closed(n, base), P66(n))
    for t in range(4, n_max - 3, 2):
        ct = make_context(x, t=t, digits=digits)
        for n in range(t + 4, n_max + 1, 2):
            note(phi_R_closed(n, ct), R(n - t, t))
    return worst_gap, worst_spec


def check_closed_forms(grid: Sequence, n_max: int = 40, digits: int = DEFAULT_DIGITS,
                       tol: float = CLOSED_FORM_TOL, mapper=map) -> Tuple[bool, str]:
    results = list(mapper(_closed_form_task, [(str(x), n_max, digits) for x in grid]))
    worst, where = max(results, key=lambda r: r[0])
    return worst < tol, f"{len(grid)} points, n <= {n_max}; max relative gap {worst:.3e} ({where})"


def _closed_form_task(args):
    x, n_max, digits = args
    return closed_form_gap_at(x, n_max, digits)


def check_cycle_convention(digits: int = DEFAULT_DIGITS) -> Tuple[bool, str]:
    c = make_context(0, digits=digits)
    closed = phi_cycle_closed(6, c)
    re, im = phi_ix_normalized(charpoly_direct(build(Cycle(6))), c.x, c.ctx)
    ok = closed == re == 4 and im == 0
    return ok, f"i^-6 phi(C6, 0): closed {closed}, exact {re}"


def check_f_coefficient_signs(grid: Sequence, digits: int = DEFAULT_DIGITS) -> Tuple[bool, str]:
    bad = 0
    for x in grid:
        c = make_context(x, digits=digits)
        k = f_coeffs(c)
        s = 1 if c.x > 0 else -1
        neg = (k.alpha0, k.beta0, k.gamma0)
        pos = (k.alpha1, k.beta1, k.gamma1)
        if not (all(s * v < 0 for v in neg) and all(s * v > 0 for v in pos)):
            bad += 1
    return bad == 0, f"sign pattern violated at {bad} of {len(grid)} points"


def k_grid_pairs(t_values: Iterable[int], n_top: int = 60) -> List[Tuple[int, int]]:
    """``(n, t)`` with ``n = 2t, 2t + 4, ..., <= n_top``."""
    return [(n, t) for t in t_values for n in range(2 * t, n_top + 1, 4)]


def check_k_forms(grid: Sequence, pairs: Sequence[Tuple[int, int]], digits: int = DEFAULT_DIGITS,
                  tol: float = K_FORMS_TOL) -> Tuple[bool, str]:
    ctx = mp_context(digits)
    worst = 0.0
    for x in grid:
        for t in sorted({t for _, t in pairs}):
            c = make_context(x, t=t, digits=digits)
            for n, tt in pairs:
                if tt == t:
                    worst = max(worst, relative_gap(K_product_form(n, t, c), K_z_form(n, t, c), ctx))
            worst = max(worst, relative_gap(f_value(t, c), K_z_form(2 * t, t, c), ctx))
    return worst < tol, f"product form vs Z-form and f(t) vs K(2t, t): max relative gap {worst:.3e}"


def check_f10_display(grid: Sequence, digits: int = DEFAULT_DIGITS, tol: float = F10_TOL) -> Tuple[bool, str]:
    ctx = mp_context(digits)
    worst = 0.0
    where = None
    for x in grid:
        c = make_context(x, t=10, digits=digits)
        gap = relative_gap(f10_explicit(x, digits), f_value(10, c), ctx)
        if gap > worst:
            worst, where = gap, x
    detail = f"printed f(10, x) vs f_value(10, x): max relative gap {worst:.3e}"
    if where is not None:
        detail += f" at x={ctx.nstr(where, 6)}"
    return worst < tol, detail


def check_f10_display_sign(grid: Sequence, digits: int = DEFAULT_DIGITS) -> Tuple[bool, str]:
    bad = sum(1 for x in grid if not f10_explicit(x, digits) < 0)
    zero = f10_explicit(0, digits) == 0
    return bad == 0 and zero, f"printed f(10, x) >= 0 at {bad} grid points; vanishes at 0: {zero}"


def check_log_bounds(samples: Optional[Sequence] = None) -> Tuple[bool, str]:
    if samples is None:
        ctx = mp_context(50)
        samples = [ctx.mpf(-1) + ctx.mpf(10) ** -k for k in range(1, 30)]
        samples += [ctx.mpf(k) / 7 for k in range(-6, 200)]
        samples += [ctx.mpf(10) ** k for k in range(-20, 20)]
    bad = [X for X in samples if not log_bounds_hold(X)]
    return not bad, f"{len(samples)} samples; failures {len(bad)}"


# -- energy checks ----------------------------------------------------------------

def trace_problems(g: Graph, p: IntPoly) -> List[str]:
    res = energy_eigen(p)
    s1, b1, s2, b2 = res.trace_residuals()
    out = []
    if abs(s1) > b1:
        out.append(f"sum of eigenvalues {float(s1):.3e} beyond bound {float(b1):.3e}")
    if abs(s2 - 2 * g.m) > b2:
        out.append(f"sum of squares off by {float(s2 - 2 * g.m):.3e}, bound {float(b2):.3e}")
    return out


def energy_cross_gap(spec: FamilySpec) -> Tuple[float, List[str]]:
    g = build(spec)
    p = charpoly_by_recursion(spec)
    eig = energy_eigen(p)
    coul = energy_coulson_explicit(p)
    return abs(eig.value - coul.value), trace_problems(g, p)


def _cross_task(spec):
    gap, probs = energy_cross_gap(spec)
    return str(spec), gap, probs


def check_energy_methods(specs: Sequence[FamilySpec], tol: float = CROSS_METHOD_TOL,
                         mapper=map) -> Tuple[bool, str]:
    worst = (0.0, "")
    trace_bad = []
    for name, gap, probs in mapper(_cross_task, specs):
        if gap >= worst[0]:
            worst = (gap, name)
        if probs:
            trace_bad.append((name, probs))
    ok = worst[0] < tol and not trace_bad
    return ok, (f"{len(specs)} instances; max |eigen - coulson| {worst[0]:.3e} ({worst[1]}); "
                f"trace failures {len(trace_bad)}")


def check_difference_consistency() -> Tuple[bool, str]:
    p1 = charpoly_by_recursion(P66(20))
    p2 = charpoly_by_recursion(R(10, 10))
    p3 = charpoly_by_recursion(Path(20))
    d12 = energy_difference(p1, p2)
    d21 = energy_difference(p2, p1)
    d23 = energy_difference(p2, p3)
    d13 = energy_difference(p1, p3)
    anti = abs(d12 + d21)
    add = abs(d13 - d12 - d23)
    eig = energy_eigen(p1).value - energy_eigen(p2).value
    ok = anti < 2 * DIFFERENCE_TOL and add < 3 * DIFFERENCE_TOL and abs(d12 - eig) < DIFFERENCE_TOL
    return ok, f"antisymmetry {anti:.2e}; additivity {add:.2e}; vs eigenvalues {abs(d12 - eig):.2e}"


@dataclass(frozen=True)
class BaseCase:
    E_R10_10: float
    E_P66_20: float
    E_P66_12: float

    @property
    def diff_same_order(self) -> float:
        """``E(R_{10,10}) - E(P66_20)``."""
        return self.E_R10_10 - self.E_P66_20

    @property
    def diff_as_printed(self) -> float:
        """``E(R_{10,10}) - E(P66_12)`` (graphs of different orders)."""
        return self.E_R10_10 - self.E_P66_12


def base_case() -> BaseCase:
    e = {name: energy_eigen(charpoly_by_recursion(spec)).value
         for name, spec in (("r", R(10, 10)), ("p20", P66(20)), ("p12", P66(12)))}
    return BaseCase(e["r"], e["p20"], e["p12"])


def check_base_case() -> Tuple[bool, str]:
    b = base_case()
    detail = (f"E(R10,10)={b.E_R10_10:.12g}, E(P66_20)={b.E_P66_20:.12g}, E(P66_12)={b.E_P66_12:.12g}; "
              f"E(R10,10)-E(P66_20)={b.diff_same_order:.12g} ({'<0' if b.diff_same_order < 0 else '>=0'}); "
              f"E(R10,10)-E(P66_12)={b.diff_as_printed:.12g} ({'<0' if b.diff_as_printed < 0 else '>=0'})")
    return b.diff_same_order < 0, detail


def check_enumeration(n: int = 12) -> Tuple[bool, str]:
    graphs = list(enumerate_bipartite_bicyclic(n))
    forms = [canonical_form(g) for g in graphs]
    distinct = len(set(forms)) == len(forms)
    shape = all(g.is_connected() and g.m == n + 1 and is_bipartite(g) for g in graphs)
    has_p66 = canonical_form(build(P66(n))) in set(forms) if n >= 12 else True
    return distinct and shape and has_p66, (f"n={n}: {len(graphs)} graphs, distinct forms {distinct}, "
                                            f"all connected bipartite bicyclic {shape}, P66 present {has_p66}")
