"""Batch drivers behind the command line: family scans, sign grids, extremal ranking, identity checks."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import checks
from .canon import canonical_form
from .charpoly import charpoly_direct
from .closedform import (
    DEFAULT_DIGITS,
    K_value,
    default_grid,
    f10_explicit,
    f_coeffs,
    f_value,
    make_context,
    mp_context,
)
from .energy import ComparisonRecord, compare_families, energy_eigen
from .enumerate import DEFAULT_CAP as ENUM_HARD_CAP
from .enumerate import enumerate_bipartite_bicyclic
from .errors import CapacityError, ParameterDomainError
from .graphs import P66, Graph, build

DEFAULT_T_LIST = (10, 14, 18, 22)
DEFAULT_N_TOP = 60
QUANTITIES = ("K", "f", "f10", "chain")


@dataclass(frozen=True)
class HarnessConfig:
    precision_digits: int = DEFAULT_DIGITS
    grid_density: int = 60          # log-spaced grid points per decade
    max_sum: int = 100              # scan bound on a + b
    enum_ceiling: int = 13          # largest extremal order without allow_large
    allow_large: bool = False
    jobs: int = 1

    def grid(self) -> List:
        return default_grid(per_decade=self.grid_density, digits=self.precision_digits)

    def mapper(self) -> Callable:
        return lambda fn, items: parallel_map(fn, items, self.jobs)


def parallel_map(fn: Callable, items: Iterable, jobs: int = 1) -> List:
    """``list(map(fn, items))``, spread over ``jobs`` processes when ``jobs > 1``; order is preserved."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# -- scan ---------------------------------------------------------------------------

def scan_pairs(max_sum: int) -> List[Tuple[int, int]]:
    """``(a, b)`` with ``10 <= a <= b``, ``a = b = 2 (mod 4)`` and ``a + b <= max_sum``."""
    return [(a, b) for a in range(10, max_sum + 1, 4) for b in range(a, max_sum - a + 1, 4)]


def _compare_pair(pair: Tuple[int, int]) -> ComparisonRecord:
    a, b = pair
    return compare_families(a + b, b)


def run_scan(max_sum: int, config: HarnessConfig = HarnessConfig()) -> List[ComparisonRecord]:
    if max_sum < 20:
        raise ParameterDomainError(f"scan needs max_sum >= 20, got {max_sum}")
    if max_sum > config.max_sum:
        raise CapacityError(f"scan bound {max_sum} exceeds the configured cap {config.max_sum}")
    records = parallel_map(_compare_pair, scan_pairs(max_sum), config.jobs)
    return sorted(records, key=lambda r: (r.a, r.b))


def scan_passed(records: Sequence[ComparisonRecord]) -> bool:
    return all(r.difference > 0 and r.methods_agree for r in records)


# -- sign grid ------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    check: str
    t: Optional[int]
    n: Optional[int]
    x: str
    value: str


@dataclass
class SignGridReport:
    quantity: str
    points: int
    evaluations: int
    violations: List[Violation] = field(default_factory=list)
    mismatches: List[Violation] = field(default_factory=list)
    max_f10_gap: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.violations and not self.mismatches


def signgrid_pairs(t_list: Sequence[int], n_list: Optional[Sequence[int]] = None) -> List[Tuple[int, int]]:
    """Valid ``(n, t)`` for the chain; ``n_list=None`` means ``2t, 2t + 4, ..., 60`` per ``t``."""
    for t in t_list:
        if t % 4 != 2 or t < 10:
            raise ParameterDomainError(f"need t = 2 (mod 4) and t >= 10, got t={t}")
    if n_list is None:
        return checks.k_grid_pairs(t_list, DEFAULT_N_TOP)
    for n in n_list:
        if n % 4:
            raise ParameterDomainError(f"need n = 0 (mod 4), got n={n}")
    pairs = [(n, t) for t in t_list for n in sorted(set(n_list)) if n >= 2 * t]
    if not pairs:
        raise ParameterDomainError("no (n, t) pair satisfies n >= 2t")
    return pairs


def _fmt(v, ctx) -> str:
    return ctx.nstr(v, 15)


def _grid_point(task):
    """Evaluate one grid point; returns ``(evaluations, violations, mismatches, f10_gap)``."""
    x_text, quantity, pairs, t_list, digits = task
    ctx = mp_context(digits)
    tol = ctx.mpf(10) ** (-(digits - 20))
    base = make_context(x_text, digits=digits)
    x = base.x
    x_show = ctx.nstr(x, 17)
    coeffs = f_coeffs(base)
    fvals = {}

    def f(t):
        if t not in fvals:
            fvals[t] = f_value(t, base, coeffs)
        return fvals[t]

    viol: List[Violation] = []
    mism: List[Violation] = []
    evals = 0
    gap = None

    def flag(check, t, n, value):
        viol.append(Violation(check, t, n, x_show, _fmt(value, ctx)))

    ctx_t = {t: make_context(x, t=t, digits=digits) for t in sorted({t for _, t in pairs})}
    kvals = {(n, t): K_value(n, t, ctx_t[t]) for n, t in pairs}
    evals += len(kvals)

    if quantity == "K":
        for (n, t), k in kvals.items():
            if not k < 0:
                flag("K<0", t, n, k)
    elif quantity == "f":
        for t in t_list:
            evals += 2
            if not f(t) < 0:
                flag("f<0", t, None, f(t))
            if not f(t + 4) < f(t):
                flag("f(t+4)<f(t)", t, None, f(t + 4) - f(t))
    elif quantity == "f10":
        shown = f10_explicit(x, digits)
        evals += 2
        if not f(10) < 0:
            flag("f(10)<0", 10, None, f(10))
        if not shown < 0:
            flag("printed f(10)<0", 10, None, shown)
        gap = float(abs(shown - f(10)) / abs(f(10)))
        if gap > checks.F10_TOL:
            mism.append(Violation("printed f(10) = f_value(10)", 10, None, x_show, f"{gap:.3e}"))
    # the chain K(n,t,x) <= f(t,x) <= f(10,x) < 0 is checked for every quantity
    for (n, t), k in kvals.items():
        if not k <= f(t) + tol * abs(f(t)):
            flag("K<=f(t)", t, n, k - f(t))
        if not f(t) <= f(10) + tol * abs(f(10)):
            flag("f(t)<=f(10)", t, n, f(t) - f(10))
    if not f(10) < 0:
        flag("f(10)<0", 10, None, f(10))
    return evals, viol, mism, gap


def run_signgrid(quantity: str, t_list: Sequence[int] = DEFAULT_T_LIST,
                 n_list: Optional[Sequence[int]] = None,
                 config: HarnessConfig = HarnessConfig()) -> SignGridReport:
    if quantity not in QUANTITIES:
        raise ParameterDomainError(f"unknown quantity {quantity!r}; choose from {', '.join(QUANTITIES)}")
    pairs = signgrid_pairs(t_list, n_list)
    digits = config.precision_digits
    ctx = mp_context(digits)
    grid = config.grid()
    tasks = [(ctx.nstr(x, digits), quantity, tuple(pairs), tuple(t_list), digits) for x in grid]
    report = SignGridReport(quantity, len(grid), 0)
    gaps = []
    for evals, viol, mism, gap in parallel_map(_grid_point, tasks, config.jobs):
        report.evaluations += evals
        report.violations.extend(viol)
        report.mismatches.extend(mism)
        if gap is not None:
            gaps.append(gap)
    if gaps:
        report.max_f10_gap = max(gaps)
    return report


# -- extremal enumeration ----------------------------------------------------------------

SCREEN_MARGIN = 1e-6     # float screening keeps every graph within this of the float maximum
TOP = 10


@dataclass(frozen=True)
class RankedGraph:
    rank: int
    energy: float
    error_bound: float
    certified: bool
    is_p66: bool
    canonical: str


@dataclass
class ExtremalReport:
    n: int
    total: int
    ranking: List[RankedGraph]
    winner_unique: bool
    winner_is_p66: bool
    margin: float

    @property
    def passed(self) -> bool:
        return self.winner_unique and self.winner_is_p66


def canonical_text(g: Graph) -> str:
    n, edges = canonical_form(g)
    return " ".join(f"{u}-{v}" for u, v in edges)


def float_energies(graphs: Sequence[Graph]) -> np.ndarray:
    """Screening energies from symmetric eigensolves, batched."""
    if not graphs:
        return np.zeros(0)
    n = graphs[0].n
    mats = np.zeros((len(graphs), n, n))
    for i, g in enumerate(graphs):
        for u, v in g.edges:
            mats[i, u, v] = mats[i, v, u] = 1.0
    return np.abs(np.linalg.eigvalsh(mats)).sum(axis=1)


def _certify(g: Graph):
    res = energy_eigen(charpoly_direct(g))
    return res.value, res.error_bound


def run_extremal(n: int, config: HarnessConfig = HarnessConfig()) -> ExtremalReport:
    """Rank every connected bipartite bicyclic graph of order ``n`` by energy.

    All graphs are screened by floating-point eigenvalues; the top ten and
    everything within ``SCREEN_MARGIN`` of the best are then re-ranked by
    certified eigenvalue energies. The maximum is unique when its certified
    lower bound beats the runner-up's upper bound.
    """
    if n < 12:
        raise ParameterDomainError(f"extremal ranking needs n >= 12, got n={n}")
    if n > ENUM_HARD_CAP:
        raise CapacityError(f"enumeration order {n} exceeds the cap {ENUM_HARD_CAP}")
    if n > config.enum_ceiling and not config.allow_large:
        raise CapacityError(f"n={n} is above the default ceiling {config.enum_ceiling}; pass --allow-large")
    graphs = list(enumerate_bipartite_bicyclic(n, cap=ENUM_HARD_CAP))
    screen = float_energies(graphs)
    best = float(screen.max())
    order = sorted(range(len(graphs)), key=lambda i: -screen[i])
    top = set(order[:TOP])
    chosen = [i for i in order if i in top or screen[i] >= best - SCREEN_MARGIN]
    certified = parallel_map(_certify, [graphs[i] for i in chosen], config.jobs)
    rows = sorted(zip(chosen, certified), key=lambda r: (-r[1][0], canonical_text(graphs[r[0]])))
    p66_form = canonical_form(build(P66(n)))
    ranking = [
        RankedGraph(rank + 1, value, err, True, canonical_form(graphs[i]) == p66_form, canonical_text(graphs[i]))
        for rank, (i, (value, err)) in enumerate(rows[:TOP])
    ]
    (e1, b1), (e2, b2) = rows[0][1], rows[1][1]
    unique = e1 - b1 > e2 + b2
    return ExtremalReport(n, len(graphs), ranking, unique, ranking[0].is_p66, e1 - e2)


# -- verify -------------------------------------------------------------------------

def verify_checks(config: HarnessConfig = HarnessConfig()) -> List[Tuple[str, Callable]]:
    """The named checks run by ``verify``, in report order."""
    digits = config.precision_digits
    grid = config.grid()
    pairs = checks.k_grid_pairs(DEFAULT_T_LIST, DEFAULT_N_TOP)
    mapper = config.mapper()
    energy_specs = checks.family_instances(40, pylone_ells=range(3, 9))

    def chain():
        rep = run_signgrid("chain", DEFAULT_T_LIST, None, config)
        return rep.passed, f"{rep.points} points, {rep.evaluations} evaluations, violations {len(rep.violations)}"

    def monotone():
        rep = run_signgrid("f", DEFAULT_T_LIST, None, config)
        return rep.passed, f"{rep.points} points, violations {len(rep.violations)}"

    return [
        ("golden P66(12), P66(13) coefficients", checks.check_golden),
        ("charpoly routes agree, families n <= 30", lambda: checks.check_family_routes(30)),
        ("charpoly routes agree, enumerated graphs n <= 10", lambda: checks.check_enumerated_routes(10)),
        ("coefficient rules (trace, -m, bipartite signs)", checks.check_coefficient_rules),
        ("tree coefficients are signed matching counts, n <= 10", checks.check_tree_matchings),
        ("enumeration invariants, n = 12", lambda: checks.check_enumeration(12)),
        ("Z1 Z2 = -1, Z1 + Z2 = x and Z ranges", lambda: checks.check_z_identities(grid, digits)),
        ("A1 A2 product identity and A_j > 0", lambda: checks.check_observation(grid, digits)),
        ("i^-n convention at C6, x = 0", lambda: checks.check_cycle_convention(digits)),
        ("closed forms vs exact polynomials, n <= 40",
         lambda: checks.check_closed_forms(grid, 40, digits, mapper=mapper)),
        ("f coefficient sign pattern", lambda: checks.check_f_coefficient_signs(grid, digits)),
        ("K product form = Z-form, f(t) = K(2t, t)", lambda: checks.check_k_forms(grid, pairs, digits)),
        ("chain K <= f(t) <= f(10) < 0", chain),
        ("f(t + 4) < f(t)", monotone),
        ("printed f(10) display < 0", lambda: checks.check_f10_display_sign(grid, digits)),
        ("printed f(10) display = f_value(10)", lambda: checks.check_f10_display(grid, digits)),
        ("log bounds X/(1+X) <= log(1+X) <= X", checks.check_log_bounds),
        ("eigenvalue vs Coulson energy, families n <= 40",
         lambda: checks.check_energy_methods(energy_specs, mapper=mapper)),
        ("energy difference antisymmetry and additivity", checks.check_difference_consistency),
        ("base case E(R10,10) < E(P66_20)", checks.check_base_case),
    ]


def run_verify(config: HarnessConfig = HarnessConfig(),
               only: Optional[Sequence[str]] = None) -> List[checks.CheckResult]:
    out = []
    for name, fn in verify_checks(config):
        if only and not any(key.lower() in name.lower() for key in only):
            continue
        out.append(checks.timed(name, fn))
    return out
