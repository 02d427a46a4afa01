from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicyclic_energy.charpoly import charpoly_by_recursion, charpoly_direct
from bicyclic_energy.closedform import (
    H_value,
    K_value,
    default_grid,
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
from bicyclic_energy.errors import ParameterDomainError, UsageError
from bicyclic_energy.graphs import P66, R, Cycle, Path, build
from bicyclic_energy.polynomial import IntPoly
from oracles import complex_normalized, exact_K_poly

from conftest import FIXTURES

reals = st.floats(-300, 300, allow_nan=False).filter(lambda v: abs(v) > 1e-3)
DIG = 150


def rel(a, b):
    return abs(a - b) / abs(b)


def test_context_at_zero():
    c = make_context(0)
    assert c.Z1 == 1 and c.Z2 == -1


def test_context_identities_at_three_halves():
    c = make_context(Fraction(3, 2).numerator / 2)
    assert abs(c.Z1 * c.Z2 + 1) < mpmath.mpf(10) ** -100
    assert abs(c.Z1 + c.Z2 - c.x) < mpmath.mpf(10) ** -100


def test_observation_value_at_one():
    c = make_context(1)
    assert rel(c.A1 * c.A2, c.ctx.mpf(44) ** 2 * 16 / 5) < 1e-140
    assert rel(observation_product(c.x, c.ctx), c.ctx.mpf("6195.2")) < 1e-140


@given(reals)
def test_z_ranges_and_positivity(x):
    c = make_context(x)
    if x > 0:
        assert c.Z1 > 1 and -1 < c.Z2 < 0
    else:
        assert 0 < c.Z1 < 1 and c.Z2 < -1
    assert c.A1 > 0 and c.A2 > 0
    assert rel(c.A1 * c.A2, observation_product(c.x, c.ctx)) < 1e-40
    assert abs(c.B1 * c.B2 * (c.x ** 2 + 4) - 1) < 1e-100


def test_precision_is_private():
    before = mpmath.mp.dps
    make_context(2, digits=300)
    assert mpmath.mp.dps == before
    assert make_context(2, digits=300).digits == 300


def test_missing_t_is_a_usage_error():
    c = make_context(1)
    with pytest.raises(UsageError):
        phi_R_closed(20, c)
    with pytest.raises(UsageError):
        c.C_simplified()


@pytest.mark.parametrize("t", [1, 2, 7])
def test_bad_t_rejected(t):
    with pytest.raises(ParameterDomainError):
        make_context(1, t=t)


def test_cycle_convention_at_zero():
    c = make_context(0)
    closed = phi_cycle_closed(6, c)
    exact = complex_normalized(list(charpoly_direct(build(Cycle(6))).coeffs), 0, c.ctx)
    assert closed == 4 and exact == 4


def test_p66_12_closed_form_against_printed_coefficients():
    text = (FIXTURES / "printed_charpolys.txt").read_text().splitlines()
    p = IntPoly.from_text(next(l for l in text if l.startswith("P66_12")).split(maxsplit=1)[1])
    c = make_context(1)
    assert rel(phi_p66_closed(12, c), complex_normalized(list(p.coeffs), c.x, c.ctx)) < 1e-50


def test_r_closed_form_at_one():
    c = make_context(1, t=10)
    p = charpoly_direct(build(R(10, 10)))
    assert rel(phi_R_closed(20, c), complex_normalized(list(p.coeffs), c.x, c.ctx)) < 1e-50


@given(reals, st.integers(4, 40))
def test_path_and_cycle_closed_forms(x, n):
    c = make_context(x)
    for spec, val in ((Path(n), phi_path_closed(n, c)), (Cycle(n), phi_cycle_closed(n, c))):
        exact = complex_normalized(list(charpoly_by_recursion(spec).coeffs), c.x, c.ctx)
        assert abs(val - exact) <= 1e-30 * abs(exact)


@given(reals, st.integers(12, 40))
def test_p66_closed_form(x, n):
    c = make_context(x)
    exact = complex_normalized(list(charpoly_by_recursion(P66(n)).coeffs), c.x, c.ctx)
    assert abs(phi_p66_closed(n, c) - exact) <= 1e-30 * abs(exact)


@given(reals, st.integers(2, 18), st.integers(2, 18))
def test_r_closed_form(x, half_t, half_a):
    t, a = 2 * half_t, 2 * half_a
    c = make_context(x, t=t)
    exact = complex_normalized(list(charpoly_by_recursion(R(a, t)).coeffs), c.x, c.ctx)
    assert abs(phi_R_closed(a + t, c) - exact) <= 1e-30 * abs(exact)


@pytest.mark.parametrize("fn, n", [(phi_path_closed, 3), (phi_cycle_closed, 3), (phi_p66_closed, 11)])
def test_closed_form_ranges(fn, n):
    with pytest.raises(ParameterDomainError):
        fn(n, make_context(1))


def test_r_closed_form_needs_even_order():
    with pytest.raises(ParameterDomainError):
        phi_R_closed(21, make_context(1, t=10))


@given(reals, st.sampled_from([10, 14, 18, 22]))
def test_reduced_c_forms_match_b_route(x, t):
    c = make_context(x, t=t)
    s1, s2 = c.C_simplified()
    assert abs(s1 - c.C1) <= 1e-100 * (1 + abs(c.C1))
    assert abs(s2 - c.C2) <= 1e-100 * (1 + abs(c.C2))


def test_reduced_c_forms_need_t_2_mod_4():
    with pytest.raises(ParameterDomainError):
        make_context(1, t=12).C_simplified()


def test_k_negative_at_20_10_1():
    assert K_value(20, 10, make_context(1, t=10)) < 0


def test_k_forms_agree_at_24_10():
    kv = K_value(24, 10, make_context("0.7", t=10), cross_check=True)
    assert kv.relative_gap < 1e-40


def test_k_product_form_keeps_digits_under_cancellation():
    c = make_context(-1000, t=10)
    kv = K_value(60, 10, c, cross_check=True)
    assert kv.relative_gap < 1e-40


def test_f_equals_k_at_2t():
    c = make_context("1.3", t=10)
    assert rel(f_value(10, c), K_value(20, 10, c)) < 1e-100


@pytest.mark.parametrize("n, t", [(20, 10), (24, 10), (28, 14), (36, 18)])
@pytest.mark.parametrize("x", ["0.001", "0.3", "1", "2.5", "-7", "40", "-900"])
def test_k_matches_exact_integer_polynomial(n, t, x):
    c = make_context(x, t=t)
    exact = exact_K_poly(n, t)(c.x)
    assert rel(K_value(n, t, c), exact) < 1e-60


@pytest.mark.parametrize("t", [10, 14, 18, 22])
def test_f_matches_exact_integer_polynomial(t):
    k = exact_K_poly(2 * t, t)
    for x in ("0.01", "0.5", "3", "-12"):
        c = make_context(x)
        assert rel(f_value(t, c), k(c.x)) < 1e-60


def test_k_domain():
    c = make_context(1, t=10)
    for n, t in ((18, 10), (22, 10), (24, 12), (24, 6)):
        with pytest.raises(ParameterDomainError):
            K_value(n, t, c)


def test_h_positive():
    assert H_value(20, 10, make_context("0.4", t=10)) > 0


def test_coefficient_signs_at_two():
    k = f_coeffs(make_context(2))
    assert k.alpha0 < 0 and k.beta0 < 0 and k.gamma0 < 0
    assert k.alpha1 > 0 and k.beta1 > 0 and k.gamma1 > 0
    assert set(k.as_dict()) == {"alpha0", "alpha1", "beta0", "beta1", "gamma0", "gamma1", "a0"}


@given(reals)
def test_coefficient_signs_flip_with_x(x):
    k = f_coeffs(make_context(x))
    s = 1 if x > 0 else -1
    assert s * k.alpha0 < 0 and s * k.beta0 < 0 and s * k.gamma0 < 0
    assert s * k.alpha1 > 0 and s * k.beta1 > 0 and s * k.gamma1 > 0


def test_f_decreasing_in_t_at_half():
    c = make_context("0.5")
    assert f_value(14, c) < f_value(10, c)


@given(reals)
def test_f_monotone_chain(x):
    c = make_context(x)
    vals = [f_value(t, c) for t in (10, 14, 18, 22, 26)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[0] < 0


def test_f10_display_basic_signs():
    assert f10_explicit(0) == 0
    assert f10_explicit(1) < 0


@pytest.mark.parametrize("x", ["0.3", "1", "2.5"])
def test_f10_display_matches_f_value(x):
    gap = float(rel(f10_explicit(x), f_value(10, make_context(x))))
    assert gap < 1e-30, f"printed f(10, {x}) differs from f_value(10, {x}) by relative {gap:.3e}"


def test_default_grid_shape():
    g = default_grid()
    ctx = mp_context(DIG)
    assert len(g) == 2 * (361 + 3)      # 361 log points per sign; 0.5, 2, 3 are extra (1 = 10^0 is on the grid)
    assert all(v != 0 for v in g)
    assert g == sorted(g)
    assert [-v for v in reversed(g)] == g
    for e in ("0.5", "1", "2", "3"):
        assert ctx.mpf(e) in g and -ctx.mpf(e) in g
    assert min(abs(v) for v in g) == ctx.mpf("0.001") and max(g) == 1000


@given(st.floats(-0.999999, 1e12, allow_nan=False))
def test_log_bounds(X):
    assert log_bounds_hold(X)


def test_log_bounds_domain():
    with pytest.raises(ParameterDomainError):
        log_bounds_hold(-1)
