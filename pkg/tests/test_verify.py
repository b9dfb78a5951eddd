import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lindarboux.algebra import ONE, X, Y, Poly2, RatFn
from lindarboux.construct import DarbouxLogDeriv, PlanarSystem
from lindarboux.errors import WrongShape
from lindarboux.exprparse import parse_poly as P
from lindarboux.verify import (
    Irreducibility,
    InvariantCertificate,
    degree_bound_check,
    invariant_darboux_check,
    invariant_poly_check,
    quadratic_in_v_irreducibility,
)

HERMITE = PlanarSystem(ONE, P("3 - x^2 + y^2"))
CENTER = PlanarSystem(Y + X * Y, P("-x + x^2 - y^2"))


def test_poly_check_examples():
    c = invariant_poly_check(HERMITE, P("2 + 2*x*y - 2*x^2"))
    assert c.passed and c.cofactor == X + Y and c.residual == Poly2()
    from lindarboux.families.newfam import newfam_system

    nf = newfam_system(3, 2)
    c = invariant_poly_check(nf, Y)
    assert c.passed and c.cofactor * Y == nf.Q
    c = invariant_poly_check(PlanarSystem(ONE, Poly2()), X + 1)
    assert not c.passed and c.residual == ONE


def test_cofactor_degree_never_exceeds_bound():
    # deg(P f_x + Q f_y) <= d + deg f - 1, so an exact quotient obeys the bound
    sys_ = PlanarSystem(X ** 3, Y * X * X)
    c = invariant_poly_check(sys_, X * Y)
    assert c.passed and c.cofactor == X * X * 2 and degree_bound_check(c, sys_)


def test_darboux_examples():
    c = invariant_darboux_check(HERMITE, DarbouxLogDeriv(RatFn(X * -2)))
    assert c.passed and c.cofactor == X * -2
    c = invariant_darboux_check(CENTER, DarbouxLogDeriv(RatFn(ONE, ONE + X)))
    assert c.passed and c.cofactor == Y
    c = invariant_darboux_check(PlanarSystem(ONE, Poly2()), DarbouxLogDeriv(RatFn(ONE, X)))
    assert not c.passed


def test_degree_bound_examples():
    quad = PlanarSystem(X * X, Y)
    assert degree_bound_check(InvariantCertificate(X, X + Y, True, Poly2()), quad)
    assert degree_bound_check(InvariantCertificate(X, Poly2(), True, Poly2()), quad)
    assert not degree_bound_check(InvariantCertificate(X, X * X, True, Poly2()), quad)


def test_irreducibility_examples():
    # v is the second variable, u the first
    assert quadratic_in_v_irreducibility(Y * Y - X).outcome is Irreducibility.IRREDUCIBLE
    r = quadratic_in_v_irreducibility(Y * Y - X * X)
    assert r.outcome is Irreducibility.REDUCIBLE and r.witness is not None
    with pytest.raises(WrongShape):
        quadratic_in_v_irreducibility(Y + X)


def test_irreducibility_lv_ell2():
    from lindarboux.families.lv import lv_invariant_poly

    assert quadratic_in_v_irreducibility(lv_invariant_poly(2).uv).outcome is Irreducibility.IRREDUCIBLE


def test_irreducibility_common_factor():
    f = (X + 1) * (Y * Y + Y + X)
    assert quadratic_in_v_irreducibility(f).outcome is Irreducibility.REDUCIBLE


def test_certificate_json_shape():
    j = invariant_poly_check(HERMITE, P("x*y - x^2 + 1")).to_json()
    assert j == {"candidate": "-x^2 + x*y + 1", "cofactor": "x + y", "verdict": "pass", "residual": "0"}


coef = st.integers(-3, 3)


@settings(max_examples=50, deadline=None)
@given(coef, coef, coef, coef)
def test_product_rule_for_cofactors(a, b, c, d):
    # two invariant lines of a linear-in-y system
    f, g = X + a, Y + b
    sys_ = PlanarSystem((X + a) * (Y + c), (Y + b) * (X + d))
    cf, cg = invariant_poly_check(sys_, f), invariant_poly_check(sys_, g)
    assert cf.passed and cg.passed
    cfg = invariant_poly_check(sys_, f * g)
    assert cfg.passed and cfg.cofactor == cf.cofactor + cg.cofactor
    # soundness: cofactor * f reproduces the Lie derivative
    assert cfg.cofactor * f * g == sys_.lie(f * g)
    # additivity of Darboux log-derivatives
    Lf, Lg = DarbouxLogDeriv.of_poly(f), DarbouxLogDeriv.of_poly(g)
    assert invariant_darboux_check(sys_, Lf + Lg).cofactor == cf.cofactor + cg.cofactor
