import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfred.algebra import CocycleParams, GElem
from gfred.cocycles import eval_c
from gfred.coadjoint import DualElem, base_functional, stabilizer_elem
from gfred.errors import ConstraintViolated, InconsistentLambda
from gfred.reduction import (
    HillPoint,
    SL2Connection,
    apply_unipotent_gauge,
    ds_gauge,
    ds_project,
    gf_coefficient_report,
    hill_to_dual,
    moment_h,
    momentum_cocycle_res,
    momentum_cocycle_stab,
    momentum_defect,
    on_constraint,
    residual_vector,
    solve_residual,
)
from gfred.serialize import lam_from_json, parse_rat, pi_from_json, tp_from_json
from gfred.trigpoly import TrigPoly

from conftest import VALID_LAMS, gelems, rationals, trigpolys, valid_lams

GOLDEN = Path(__file__).parent / "golden"
C1, S1 = TrigPoly.cos_mode(1), TrigPoly.sin_mode(1)
ONE, ZERO = TrigPoly(1), TrigPoly()
LAM = CocycleParams(4, 1, 1)
CHARGES = [Fraction(1), Fraction(2), Fraction(-3)]


def hill_form(T):
    return ((ZERO, T), (ONE, ZERO))


def test_hill_to_dual_examples():
    assert hill_to_dual(HillPoint(ZERO, 3)) == base_functional(3)
    assert hill_to_dual(HillPoint(C1, 1)) == DualElem(C1, ZERO, ONE, 1)
    assert moment_h(hill_to_dual(HillPoint(C1 + S1, 2))) == (ZERO, ONE)
    assert moment_h(base_functional(5)) == (ZERO, ONE)
    phi = DualElem(C1, S1, ONE, 1)
    assert moment_h(phi) == (S1, ONE)
    assert not on_constraint(phi)


def test_residual_rotation_transports_T():
    sol = solve_residual(ONE, HillPoint(C1, 1), LAM)
    assert sol.delta_T == S1
    assert sol.gauge.is_zero() and sol.unique


def test_residual_zero_direction():
    assert residual_vector(ZERO, HillPoint(C1 + TrigPoly.sin_mode(2), 2), LAM).is_zero()


@given(trigpolys(3), rationals(), valid_lams())
def test_residual_at_base_point_vanishes(f, a, lam):
    # only the central terms survive at T = 0, and for valid lam they cancel
    assert residual_vector(f, HillPoint(ZERO, a), lam).is_zero()


@settings(max_examples=40, deadline=None)
@given(trigpolys(3), trigpolys(3), rationals(), valid_lams())
def test_residual_is_hill_variation(f, T, a, lam):
    sol = solve_residual(f, HillPoint(T, a), lam)
    assert sol.delta_T == -(T * f.deriv()).scale(2) - T.deriv() * f
    assert sol.unique and sol.gauge.is_zero()


@settings(max_examples=30, deadline=None)
@given(trigpolys(2), trigpolys(2), trigpolys(2), rationals())
def test_residual_linear_in_f(f, g, T, k):
    h = HillPoint(T, 2)
    lhs = residual_vector(f.scale(k) + g, h, LAM)
    assert lhs == residual_vector(f, h, LAM).scale(k) + residual_vector(g, h, LAM)


def test_residual_requires_relation():
    with pytest.raises(InconsistentLambda):
        residual_vector(S1, HillPoint(C1, 1), CocycleParams(1, 0, 0))


@settings(max_examples=40, deadline=None)
@given(gelems(2), gelems(2), trigpolys(2), trigpolys(2), trigpolys(2), rationals(),
       st.sampled_from(VALID_LAMS + [CocycleParams(1, 0, 0), CocycleParams(1, -2, 5)]))
def test_momentum_defect_is_charge_times_cocycle(X, Y, u, p, q, a, lam):
    phi = DualElem(u, p, q, a)
    assert momentum_defect(X, Y, phi, lam) == eval_c(X, Y, lam) * a


def test_cocycle_examples():
    for f in (S1, C1 + TrigPoly.sin_mode(3)):
        assert momentum_cocycle_stab(f, f, base_functional(1), LAM).is_zero()
        assert momentum_cocycle_res(f, f, HillPoint(C1, 1), LAM).is_zero()


def test_stab_requires_constraint():
    with pytest.raises(ConstraintViolated):
        momentum_cocycle_stab(S1, C1, DualElem(ZERO, S1, ONE, 1), LAM)
    with pytest.raises(InconsistentLambda):
        momentum_cocycle_stab(S1, C1, base_functional(1), CocycleParams(1, 0, 0))


def test_stab_golden():
    doc = json.loads((GOLDEN / "c_stab_sin_cos.json").read_text())
    inp = doc["inputs"]
    h = HillPoint(tp_from_json(inp["T"]), parse_rat(inp["a"]))
    lam = lam_from_json(inp["lam"])
    f, g = tp_from_json(inp["f"]), tp_from_json(inp["g"])
    value = pi_from_json(doc["value"])
    assert momentum_cocycle_stab(f, g, hill_to_dual(h), lam) == value
    assert momentum_cocycle_res(f, g, h, lam) == value


@settings(max_examples=30, deadline=None)
@given(trigpolys(3), trigpolys(3), trigpolys(3), st.sampled_from(VALID_LAMS), st.sampled_from(CHARGES))
def test_theorem_equality_and_constancy(f, g, T, lam, a):
    h = HillPoint(T, a)
    res = momentum_cocycle_res(f, g, h, lam)
    assert res == momentum_cocycle_stab(f, g, hill_to_dual(h), lam)
    for T2 in (ZERO, TrigPoly.cos_mode(2)):
        assert momentum_cocycle_res(f, g, HillPoint(T2, a), lam) == res
        assert momentum_cocycle_stab(f, g, hill_to_dual(HillPoint(T2, a)), lam) == res


@settings(max_examples=20, deadline=None)
@given(trigpolys(2), trigpolys(2), trigpolys(2), trigpolys(2), rationals())
def test_cocycle_routes_bilinear_antisymmetric(f1, f2, g, T, k):
    h = HillPoint(T, 1)
    for route in (lambda f, g: momentum_cocycle_res(f, g, h, LAM),
                  lambda f, g: momentum_cocycle_stab(f, g, hill_to_dual(h), LAM)):
        assert route(f1.scale(k) + f2, g) == route(f1, g) * k + route(f2, g)
        assert route(f1, g) == -route(g, f1)


def test_stabilizer_lift_kills_cocycle():
    # the reason both routes vanish: c restricted to the stabilizer graph is zero
    X, Y = stabilizer_elem(S1, 1, LAM), stabilizer_elem(C1, 1, LAM)
    assert eval_c(X, Y, LAM).is_zero()
    assert not eval_c(GElem.of(S1), GElem.of(C1), LAM).is_zero()


def test_gf_report_golden():
    doc = json.loads((GOLDEN / "gf_report_411.json").read_text())
    inp = doc["inputs"]
    rep = gf_coefficient_report(lam_from_json(inp["lam"]), parse_rat(inp["a"]), inp["kmax"])
    assert rep.k3_coeff == pi_from_json(doc["k3_coeff"])
    assert rep.k_coeff == pi_from_json(doc["k_coeff"])
    res = [e.value for e in rep.entries if e.route == "res"]
    assert res == [pi_from_json(v) for v in doc["values"]]


def test_gf_report_all_zero_lam():
    rep = gf_coefficient_report(CocycleParams(0, 0, 0), 0)
    assert rep.k3_coeff.is_zero() and rep.k_coeff.is_zero()
    assert all(e.value.is_zero() for e in rep.entries)
    assert len(rep.entries) == 10


@pytest.mark.parametrize("lam", VALID_LAMS)
def test_gf_report_linear_in_charge(lam):
    one = gf_coefficient_report(lam, 1, kmax=4, T=C1)
    two = gf_coefficient_report(lam, 2, kmax=4, T=C1)
    assert two.k3_coeff == one.k3_coeff * 2
    assert two.k_coeff == one.k_coeff * 2


def test_gf_report_rejects_bad_input():
    with pytest.raises(InconsistentLambda):
        gf_coefficient_report(CocycleParams(1, 0, 0), 1)
    with pytest.raises(ValueError):
        gf_coefficient_report(LAM, 1, kmax=1)


def test_ds_gauge_examples():
    T = C1 + TrigPoly(3)
    h, s = ds_gauge(SL2Connection(ZERO, T, ONE, 2))
    assert h.T == T and s.is_zero()
    h, s = ds_gauge(SL2Connection(C1, ZERO, ONE, 1))
    assert h.T == TrigPoly(Fraction(1, 2), [0, Fraction(1, 2)], [-1])
    assert s == -C1
    h, _ = ds_gauge(SL2Connection(TrigPoly(Fraction(-5, 3)), ZERO, ONE, 0))
    assert h.T == TrigPoly(Fraction(25, 9))


def test_ds_gauge_requires_constraint():
    with pytest.raises(ConstraintViolated):
        ds_gauge(SL2Connection(C1, ZERO, TrigPoly(2), 1))


@given(trigpolys(3), trigpolys(3), rationals())
def test_ds_round_trip(alpha, beta, a):
    c = SL2Connection(alpha, beta, ONE, a)
    h, s = ds_gauge(c)
    assert apply_unipotent_gauge(c, s) == hill_form(h.T)
    assert h.T == beta + alpha * alpha + alpha.deriv().scale(a)
    assert h.charge == c.charge


@given(trigpolys(2), trigpolys(2), trigpolys(2), rationals())
def test_ds_gauge_parameter_is_forced(alpha, beta, other, a):
    # any other unipotent parameter leaves a diagonal
    c = SL2Connection(alpha, beta, ONE, a)
    _, s = ds_gauge(c)
    out = apply_unipotent_gauge(c, s + other)
    assert out[0][0].is_zero() == other.is_zero()


def test_ds_project_examples():
    assert ds_project(SL2Connection(ZERO, C1, ONE, 1)) == C1
    assert ds_project(SL2Connection(S1, ZERO, ONE, 1)).is_zero()
    assert ds_project(SL2Connection(S1, TrigPoly(5), ONE, 1)) == TrigPoly(5)
