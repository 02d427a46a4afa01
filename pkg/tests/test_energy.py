from __future__ import annotations

import json
import math

import pytest

from bicyclic_energy.charpoly import charpoly_by_recursion, component_product
from bicyclic_energy.checks import trace_problems
from bicyclic_energy.energy import (
    adaptive_quad,
    compare_families,
    energy_coulson_explicit,
    energy_difference,
    energy_eigen,
)
from bicyclic_energy.closedform import mp_context
from bicyclic_energy.errors import ConvergenceError, NonSymmetricSpectrumError, ParameterDomainError
from bicyclic_energy.graphs import P66, R, Cycle, Path, PyloneCycle, build, disjoint_union
from bicyclic_energy.polynomial import IntPoly

from conftest import FIXTURES
from oracles import float_energy

X = IntPoly.x()


def test_path_two():
    assert energy_eigen(X ** 2 - 1).value == 2
    assert energy_coulson_explicit(X ** 2 - 1).value == pytest.approx(2, abs=1e-8)


def test_cycle_six():
    p = charpoly_by_recursion(Cycle(6))
    eig = energy_eigen(p)
    assert eig.value == 8 and eig.method == "eigenvalue"
    assert eig.eigenvalues == (-2.0, -1.0, -1.0, 1.0, 1.0, 2.0)
    assert energy_coulson_explicit(p).value == pytest.approx(8, abs=1e-8)


def test_edgeless():
    assert energy_eigen(X ** 5).value == 0
    res = energy_coulson_explicit(X ** 5)
    assert res.value == 0 and res.method == "coulson-explicit"


def test_p66_12_regression():
    pinned = json.loads((FIXTURES / "regression.json").read_text())
    res = energy_eigen(charpoly_by_recursion(P66(12)))
    assert abs(res.value - float(pinned["P66_12_energy"])) < 1e-10
    assert res.error_bound <= 12e-15


def test_error_bound_within_contract():
    for spec in (P66(30), R(10, 14), Path(25)):
        res = energy_eigen(charpoly_by_recursion(spec))
        assert res.error_bound <= spec.n * 1e-15 + 1e-12


def test_non_real_spectrum_rejected():
    with pytest.raises(NonSymmetricSpectrumError):
        energy_eigen(X ** 2 + 1)


@pytest.mark.parametrize("spec", [Path(9), Cycle(7), Cycle(10), PyloneCycle(11, 5), P66(16), R(5, 9), R(10, 10)])
def test_eigen_vs_float_and_coulson(spec):
    p = charpoly_by_recursion(spec)
    eig = energy_eigen(p).value
    assert eig == pytest.approx(float_energy(build(spec)), abs=1e-9)
    assert abs(energy_coulson_explicit(p).value - eig) < 1e-8


@pytest.mark.parametrize("spec", [Cycle(9), P66(15), R(6, 7)])
def test_trace_identities(spec):
    assert trace_problems(build(spec), charpoly_by_recursion(spec)) == []


def test_difference_identical_is_exact_zero():
    p = charpoly_by_recursion(P66(20))
    assert energy_difference(p, p) == 0.0


def test_difference_degree_mismatch():
    with pytest.raises(ParameterDomainError):
        energy_difference(charpoly_by_recursion(P66(20)), charpoly_by_recursion(P66(24)))


def test_difference_p66_20_vs_r_10_10_positive():
    p, r = charpoly_by_recursion(P66(20)), charpoly_by_recursion(R(10, 10))
    d = energy_difference(p, r)
    assert d > 0
    assert abs(d - (energy_eigen(p).value - energy_eigen(r).value)) < 1e-6


def test_difference_two_hexagons_vs_path():
    g = disjoint_union(build(Cycle(6)), build(Cycle(6)))
    p1 = component_product(g)
    p2 = charpoly_by_recursion(Path(12))
    expect = energy_eigen(p1).value - energy_eigen(p2).value
    assert abs(energy_difference(p1, p2) - expect) < 1e-6


def test_difference_antisymmetric_and_additive():
    a, b, c = (charpoly_by_recursion(s) for s in (P66(24), R(10, 14), Cycle(24)))
    assert abs(energy_difference(a, b) + energy_difference(b, a)) < 2e-6
    assert abs(energy_difference(a, c) - energy_difference(a, b) - energy_difference(b, c)) < 3e-6


def test_adaptive_quad_known_integral():
    ctx = mp_context(30)
    val, err = adaptive_quad(lambda t: ctx.log(t), 0, 1, 1e-12, ctx)
    assert abs(val + 1) < 1e-12


def test_adaptive_quad_reports_failure():
    ctx = mp_context(30)
    with pytest.raises(ConvergenceError) as info:
        adaptive_quad(lambda t: ctx.sin(1 / t) / t, 0, 1, 1e-14, ctx, max_depth=2)
    assert info.value.achieved > 0


@pytest.mark.parametrize("n, t", [(20, 10), (24, 10), (24, 14)])
def test_compare_families_positive(n, t):
    rec = compare_families(n, t)
    assert rec.difference > 0 and rec.methods_agree
    assert rec.difference == rec.E_p66 - rec.E_R
    assert (rec.a, rec.b) == (n - t, t)


def test_compare_families_matches_independent_runs():
    rec = compare_families(20, 10)
    e1 = energy_eigen(charpoly_by_recursion(P66(20))).value
    e2 = energy_eigen(charpoly_by_recursion(R(10, 10))).value
    assert abs(rec.difference - (e1 - e2)) < 1e-6


@pytest.mark.parametrize("n, t", [(20, 12), (18, 8), (22, 10), (26, 14)])
def test_compare_families_domain(n, t):
    with pytest.raises(ParameterDomainError):
        compare_families(n, t)


def test_energy_nonnegative_and_zero_only_when_edgeless():
    assert energy_eigen(X ** 3).value == 0
    assert energy_eigen(charpoly_by_recursion(Path(3))).value == pytest.approx(2 * math.sqrt(2))
