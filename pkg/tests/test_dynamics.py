import math
import warnings

import pytest

from lindarboux.algebra import ONE, X, Poly2
from lindarboux.construct import LinearODE2, PlanarSystem
from lindarboux.dynamics import (
    DependentPairWarning,
    abel_check,
    drift,
    integrate,
    return_distance,
    reversed_system,
)
from lindarboux.errors import AllSkipped, BlowUp, DomainError, SingularStart
from lindarboux.families.center import center_conic_and_H
from lindarboux.families.common import FundamentalPair

CENTER = center_conic_and_H(1, 1, 1)


def test_linear_flow_is_exact():
    traj = integrate(PlanarSystem(ONE, Poly2()), 0.0, 0.0, 1.0, 1e-10)
    assert all(abs(x - t) < 1e-10 and y == 0 for t, x, y in traj.samples)
    assert len(traj.samples) == 1001


def test_center_orbit_closes():
    traj = integrate(CENTER.system, 0.2, 0.0, 8.0, 1e-10)
    assert return_distance(traj) < 1e-4


def test_singular_start():
    with pytest.raises(SingularStart):
        integrate(CENTER.system, 0.0, 0.0, 1.0, 1e-10)


def test_blowup():
    with pytest.raises(BlowUp):
        integrate(PlanarSystem(X * X, Poly2()), 1.0, 0.0, 2.0, 1e-8)


def test_arguments_checked():
    with pytest.raises(ValueError):
        integrate(CENTER.system, 0.2, 0.0, 1.0, 1e-2)
    with pytest.raises(ValueError):
        integrate(CENTER.system, 0.2, 0.0, -1.0, 1e-10)


def test_constant_H_has_zero_drift():
    traj = integrate(CENTER.system, 0.2, 0.0, 1.0, 1e-8)
    assert drift(lambda x, y: 3.5, traj).max_rel_drift == 0.0


def test_drift_skips_domain_errors():
    traj = integrate(PlanarSystem(ONE, Poly2()), -0.5, 0.0, 1.0, 1e-8)

    def H(x, y):
        if x < 0:
            raise DomainError("left half")
        return 1.0

    with pytest.raises(DomainError):
        drift(H, traj)
    traj = integrate(PlanarSystem(ONE, Poly2()), 0.5, 0.0, 1.0, 1e-8)

    def H2(x, y):
        if x > 0.5:
            raise DomainError("right")
        return 1.0

    with pytest.raises(AllSkipped):
        drift(H2, traj)


def test_wrong_H_is_detected():
    from fractions import Fraction

    from lindarboux.families.orth import OrthFamilySpec, orth_system, orth_theorem_H

    spec = OrthFamilySpec.hermite(Fraction(1, 2))
    H = orth_theorem_H(spec)

    def product(x, y):
        f1, f2 = H.parts(x, y)
        return f1 * f2

    traj = integrate(orth_system(spec), 1.0, -1.0, 2.0, 1e-10)
    assert drift(product, traj).max_rel_drift > 1e-2
    assert drift(H, traj).max_rel_drift < 1e-6


def test_tolerance_trend():
    drifts = []
    for tol in (1e-6, 1e-8, 1e-10):
        # coarse sampling so the step size is set by the error control
        traj = integrate(CENTER.system, 0.2, 0.0, 6.0, tol, n_samples=10)
        drifts.append(drift(CENTER.H, traj).max_rel_drift)
    assert drifts[1] <= 2 * drifts[0] and drifts[2] <= 2 * drifts[1]
    assert drifts[2] < drifts[0]


def test_time_reversal():
    tol = 1e-10
    fwd = integrate(CENTER.system, 0.2, 0.1, 3.0, tol)
    x1, y1 = fwd.end
    back = integrate(reversed_system(CENTER.system), x1, y1, 3.0, tol)
    pts = fwd.samples
    length = sum(math.hypot(b[1] - a[1], b[2] - a[2]) for a, b in zip(pts, pts[1:]))
    x0, y0 = back.end
    assert math.hypot(x0 - 0.2, y0 - 0.1) < 10 * tol * max(length, 1.0)


def test_dependent_pair_warns():
    w = lambda s: s
    pair = FundamentalPair("dep", {}, w, lambda s: 1.0, lambda s: 2 * s, lambda s: 2.0)
    ode = LinearODE2(Poly2(), Poly2(), ONE)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert abel_check(pair, ode, [0.5, 1.0]) == 0.0
    assert any(issubclass(c.category, DependentPairWarning) for c in caught)


def test_csv_export():
    traj = integrate(PlanarSystem(ONE, Poly2()), 0.0, 0.0, 1.0, 1e-10, n_samples=4)
    lines = traj.to_csv(lambda x, y: x + y).splitlines()
    assert lines[0] == "t,x,y,H" and len(lines) == 6
    assert lines[1] == "0,0,0,0"
    t, x, _, _ = lines[2].split(",")
    assert float(t) == 0.25 and abs(float(x) - 0.25) < 1e-12
    assert integrate(PlanarSystem(ONE, Poly2()), 0, 0, 1.0, n_samples=2).to_csv().splitlines()[0] == "t,x,y"
