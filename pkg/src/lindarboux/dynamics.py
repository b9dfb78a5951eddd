"""Trajectory integration and first-integral conservation checks.

The integrator is the Dormand-Prince 5(4) pair (Dormand & Prince 1980
coefficients, fifth-order solution propagated, FSAL), with mixed
absolute/relative error control ``|err_i| <= tol * max(1, |y_i|)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple, Union

from .construct import LinearODE2, PlanarSystem
from .errors import AllSkipped, BlowUp, DomainError, SingularStart, StepCollapse

__all__ = [
    "Trajectory",
    "DriftReport",
    "DependentPairWarning",
    "integrate",
    "drift",
    "abel_check",
    "return_distance",
    "reversed_system",
]

Field = Callable[[float, float], Tuple[float, float]]

# Dormand-Prince tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))

BLOWUP = 1e8
MIN_STEP = 1e-14


@dataclass(frozen=True)
class Trajectory:
    samples: Tuple[Tuple[float, float, float], ...]
    steps: int
    rejected: int
    tol: float
    field: Optional[Field] = None

    @property
    def times(self) -> List[float]:
        return [s[0] for s in self.samples]

    @property
    def end(self) -> Tuple[float, float]:
        return self.samples[-1][1], self.samples[-1][2]

    def to_csv(self, H: Optional[Callable[[float, float], float]] = None) -> str:
        head = "t,x,y,H" if H else "t,x,y"
        lines = [head]
        for t, x, y in self.samples:
            row = [t, x, y]
            if H:
                try:
                    row.append(H(x, y))
                except DomainError:
                    row.append(float("nan"))
            lines.append(",".join(format(v, ".17g") for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "samples": [[format(v, ".17g") for v in s] for s in self.samples],
            "steps": self.steps,
            "rejected": self.rejected,
            "tol": format(self.tol, ".17g"),
        }


@dataclass(frozen=True)
class DriftReport:
    H0: float
    max_rel_drift: float
    samples_evaluated: int
    skipped: int

    @property
    def skipped_fraction(self) -> float:
        total = self.samples_evaluated + self.skipped
        return self.skipped / total if total else 0.0

    def to_json(self) -> dict:
        return {
            "H0": format(self.H0, ".17g"),
            "max_rel_drift": format(self.max_rel_drift, ".17g"),
            "samples_evaluated": self.samples_evaluated,
            "skipped": self.skipped,
        }


class DependentPairWarning(UserWarning):
    pass


def _as_field(sys: Union[PlanarSystem, Field]) -> Field:
    return sys.vector_field() if isinstance(sys, PlanarSystem) else sys


def reversed_system(sys: PlanarSystem) -> PlanarSystem:
    return PlanarSystem(-sys.P, -sys.Q, -sys.scale, sys.time_factor)


def integrate(
    sys: Union[PlanarSystem, Field],
    x0: float,
    y0: float,
    t1: float,
    tol: float = 1e-10,
    n_samples: int = 1000,
) -> Trajectory:
    """Adaptive Dormand-Prince integration on ``[0, t1]`` sampled every ``t1/n_samples``."""
    if not 1e-13 <= tol <= 1e-3:
        raise ValueError("tol must lie in [1e-13, 1e-3]")
    if not t1 > 0:
        raise ValueError("t1 must be positive; integrate the reversed system for backward time")
    f = _as_field(sys)
    k1 = f(x0, y0)
    if abs(k1[0]) + abs(k1[1]) == 0.0:
        raise SingularStart(f"({x0}, {y0}) is a singular point")
    dt_s = max(t1 / n_samples, MIN_STEP)
    targets = [min(t1, dt_s * i) for i in range(1, n_samples + 1)]
    samples = [(0.0, float(x0), float(y0))]
    t, y = 0.0, (float(x0), float(y0))
    h = min(dt_s, 0.01 * max(1.0, abs(t1)))
    steps = rejected = 0
    idx = 0
    while idx < len(targets):
        target = targets[idx]
        hit = t + h >= target
        step = target - t if hit else h
        if step < MIN_STEP and not hit:
            raise StepCollapse(f"step {step:.3g} below {MIN_STEP} at t = {t}")
        ks = [k1]
        for s in range(1, 7):
            xs = y[0] + step * sum(a * k[0] for a, k in zip(_A[s], ks))
            ys = y[1] + step * sum(a * k[1] for a, k in zip(_A[s], ks))
            ks.append(f(xs, ys))
        ynew = (xs, ys)  # stage 7 evaluates at the fifth-order solution
        ex = step * sum(e * k[0] for e, k in zip(_E, ks))
        ey = step * sum(e * k[1] for e, k in zip(_E, ks))
        sx = tol * max(1.0, abs(y[0]), abs(ynew[0]))
        sy = tol * max(1.0, abs(y[1]), abs(ynew[1]))
        err = max(abs(ex) / sx, abs(ey) / sy)
        if not math.isfinite(err):
            err = 1e10
        if err <= 1.0:
            steps += 1
            t = target if hit else t + step
            y = ynew
            k1 = ks[6]
            if not (math.isfinite(y[0]) and math.isfinite(y[1])) or math.hypot(*y) > BLOWUP:
                raise BlowUp(f"|(x, y)| exceeded {BLOWUP:g} at t = {t}")
            if hit:
                samples.append((t, y[0], y[1]))
                idx += 1
            fac = 5.0 if err == 0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            # a step clipped to a sample time says little about the next one
            h = max(h, step * fac) if hit else step * fac
        else:
            rejected += 1
            h = step * max(0.2, 0.9 * err ** -0.2)
            if h < MIN_STEP:
                raise StepCollapse(f"step {h:.3g} below {MIN_STEP} at t = {t}")
    return Trajectory(tuple(samples), steps, rejected, tol, f)


def drift(H: Callable[[float, float], float], traj: Trajectory) -> DriftReport:
    """``max |H(s_i) - H0| / max(|H0|, 1e-300)``; domain failures are skipped, not fatal."""
    _, x0, y0 = traj.samples[0]
    H0 = H(x0, y0)
    scale = max(abs(H0), 1e-300)
    worst = 0.0
    ok = skipped = 0
    for _, x, y in traj.samples[1:]:
        try:
            v = H(x, y)
        except DomainError:
            skipped += 1
            continue
        ok += 1
        worst = max(worst, abs(v - H0) / scale)
    if ok == 0:
        raise AllSkipped("no sample beyond the first could be evaluated")
    return DriftReport(H0, worst, ok, skipped)


def abel_check(pair, ode: LinearODE2, grid: Iterable[float], h: float = 1e-5) -> float:
    """Max over ``grid`` of ``|A2 W' + A1 W|`` relative to ``|A2 W'| + |A1 W| + |A2 W|``.

    The last term keeps the scale honest where ``A1`` vanishes and both
    remaining terms are finite-difference noise.
    """
    A1, A2 = ode.A1.float_fn(), ode.A2.float_fn()
    worst = 0.0
    wmax = 0.0
    for s in grid:
        a2 = A2(s, 0.0)
        if a2 == 0:
            raise DomainError(f"A2 vanishes at {s}")
        W = pair.wronskian(s)
        dW = (pair.wronskian(s + h) - pair.wronskian(s - h)) / (2 * h)
        scale = abs(a2 * dW) + abs(A1(s, 0.0) * W) + abs(a2 * W)
        wmax = max(wmax, abs(W))
        if scale == 0:
            continue
        worst = max(worst, abs(a2 * dW + A1(s, 0.0) * W) / scale)
    if wmax < 1e-12:
        warnings.warn("Wronskian vanishes on the grid: the pair is dependent", DependentPairWarning)
    return worst


def _hermite_point(p0, p1, d0, d1, h, s):
    s2, s3 = s * s, s * s * s
    h00 = 2 * s3 - 3 * s2 + 1
    h10 = s3 - 2 * s2 + s
    h01 = -2 * s3 + 3 * s2
    h11 = s3 - s2
    return tuple(h00 * a + h10 * h * da + h01 * b + h11 * h * db for a, b, da, db in zip(p0, p1, d0, d1))


def return_distance(traj: Trajectory, refine: int = 200) -> float:
    """Closest approach to the start after the orbit has gone out to its farthest sample.

    Distances between samples are refined on the cubic Hermite interpolant
    built from the vector field at the samples.
    """
    pts = traj.samples
    x0, y0 = pts[0][1], pts[0][2]
    dist = [math.hypot(x - x0, y - y0) for _, x, y in pts]
    far = max(range(len(pts)), key=dist.__getitem__)
    if far == len(pts) - 1:
        return dist[-1]
    best_i = min(range(far, len(pts)), key=dist.__getitem__)
    best = dist[best_i]
    f = traj.field
    if f is None:
        return best
    for i in (best_i - 1, best_i):
        if i < far or i + 1 >= len(pts):
            continue
        (ta, xa, ya), (tb, xb, yb) = pts[i], pts[i + 1]
        h = tb - ta
        da, db = f(xa, ya), f(xb, yb)
        for k in range(refine + 1):
            px, py = _hermite_point((xa, ya), (xb, yb), da, db, h, k / refine)
            best = min(best, math.hypot(px - x0, py - y0))
    return best
