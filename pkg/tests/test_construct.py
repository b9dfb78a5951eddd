from fractions import Fraction

import pytest

from lindarboux.algebra import ONE, X, Y, Poly2
from lindarboux.construct import (
    ChangeOfVar,
    LinearODE1,
    LinearODE2,
    PlanarSystem,
    build_first_order,
    build_second_order,
    divide_time,
    iif_divergence_check,
    iif_logderiv_1st,
    predicted_cofactor_1st,
    predicted_cofactor_2nd,
    q_object_1st,
    q_object_2nd,
)
from lindarboux.errors import DegenerateChange, NotDivisible
from lindarboux.exprparse import parse_poly as P
from lindarboux.verify import invariant_darboux_check

HERMITE1 = LinearODE2(Poly2.const(2), X * -2, ONE)
G_HERMITE = ChangeOfVar(X - Y, ONE)


def test_hermite_build_and_cofactor():
    sys_ = build_second_order(HERMITE1, G_HERMITE)
    assert sys_.P == ONE and sys_.Q == P("3 - x^2 + y^2")
    assert predicted_cofactor_2nd(HERMITE1, G_HERMITE) == X + Y


def test_newfam_build_matches_divided_display():
    from lindarboux.families.newfam import newfam_change, newfam_ode, newfam_transformed_system

    built = build_second_order(newfam_ode(3, 2), newfam_change(3, 2))
    shown = newfam_transformed_system(3, 2)
    # the raw construction equals the displayed (X, Y) system times -(X - 1)^2
    factor = (X - 1) * (X - 1)
    assert shown.time_factor == factor and shown.scale == -1 and built.scale == -1
    assert built.P == shown.P * factor and built.Q == shown.Q * factor


def test_degenerate_change():
    with pytest.raises(DegenerateChange):
        build_second_order(HERMITE1, ChangeOfVar(X, ONE))
    with pytest.raises(DegenerateChange):
        build_first_order(LinearODE1(ONE, ONE, ONE, ONE), ChangeOfVar(X, X + 1))


def test_lv_cofactor_example():
    from lindarboux.families.lv import lv_uv_change, lv_uv_ode

    ode = lv_uv_ode(2)
    g = lv_uv_change()
    # the A1 * d(g0)/dy term survives alongside u*y
    raw = ode.A2 * g.g0 * g.g0.diff("y") + ode.A1 * g.g0.diff("y")
    sys_ = build_second_order(ode, g)
    assert raw == X * Y + Fraction(5, 2)
    assert predicted_cofactor_2nd(ode, g) == sys_.align_cofactor(raw)


def test_x_free_change_specialization():
    ode = LinearODE2(P("1 + x"), P("2*x"), P("x^2 + 1"))
    g = ChangeOfVar(P("y^2 + 3*y"), ONE)
    raw = ode.A2 * g.g0 * g.g0.diff("y") + ode.A1 * g.g0.diff("y")
    assert predicted_cofactor_2nd(ode, g) == build_second_order(ode, g).align_cofactor(raw)


def _center_data():
    return LinearODE1(Poly2.const(2), ONE + X, X * (X - 1) * 2, ONE + X), ChangeOfVar(Y * Y, ONE)


def test_first_order_center_example():
    ode, g = _center_data()
    sys_ = build_first_order(ode, g)
    # raw (P, Q) = 2(1 + x) * (y + xy, -x + x^2 - y^2), content 2 removed
    assert sys_.scale == Fraction(1, 2)
    assert sys_.P == (Y + X * Y) * (ONE + X)
    assert sys_.Q == (X * X - X - Y * Y) * (ONE + X)
    k = predicted_cofactor_1st(ode, g)
    assert k == Y * (ONE + X) * -2
    assert invariant_darboux_check(sys_, q_object_1st(ode, g)).cofactor == k


def test_first_order_h0_zero_has_no_g1_square_term():
    ode = LinearODE1(P("x"), ONE, Poly2(), ONE)
    g = ChangeOfVar(P("y^2"), ONE)
    sys_ = build_first_order(ode, g)
    # with h0 = 0, Q = -A0*h1*g0*g1 - A1*h1*(g1*g0_x - g0*g1_x)
    c = sys_.scale
    assert sys_.Q == (-(P("x") * P("y^2"))) * c


def test_first_order_trivial_cofactor():
    ode = LinearODE1(Poly2(), ONE, Poly2(), ONE)
    assert predicted_cofactor_1st(ode, ChangeOfVar(P("y + x^2"), ONE)) == Poly2()


def test_q_object_examples():
    L, kq = q_object_2nd(HERMITE1, G_HERMITE)
    assert L.Lx.as_poly() == X * -2
    assert kq == X * -2
    sys_ = build_second_order(HERMITE1, G_HERMITE)
    assert invariant_darboux_check(sys_, L).cofactor == kq
    # A1 = -A2' gives a constant q
    ode = LinearODE2(ONE, P("-2*x"), P("x^2 + 1"))
    assert q_object_2nd(ode, G_HERMITE)[1] == Poly2()


def test_iif_examples():
    sys_ = build_second_order(HERMITE1, G_HERMITE)
    assert iif_divergence_check(sys_, Y * 2).passed
    assert not iif_divergence_check(sys_, Poly2()).passed
    center = PlanarSystem(Y + X * Y, X * X - X - Y * Y)
    assert iif_divergence_check(center, -Y).passed


def test_first_order_iif():
    ode, g = _center_data()
    sys_ = build_first_order(ode, g)
    cert = invariant_darboux_check(sys_, iif_logderiv_1st(ode, g))
    assert cert.passed
    assert iif_divergence_check(sys_, cert.cofactor).passed


def test_divide_time_requires_exact_division():
    sys_ = PlanarSystem(X * (X + 1), Y * (X + 1))
    d = divide_time(sys_, X + 1)
    assert d.P == X and d.Q == Y and d.time_factor == X + 1
    with pytest.raises(NotDivisible):
        divide_time(sys_, X)
