"""Command-line front end.

Every subcommand prints one JSON report on stdout.  Exit status: 0 when all
certificates pass and all drift thresholds hold, 1 when a check fails, 2 on
usage or domain errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import shlex
import sys
import time
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from . import __version__
from .algebra import Poly2
from .construct import (
    ChangeOfVar,
    DarbouxLogDeriv,
    LinearODE1,
    LinearODE2,
    PlanarSystem,
    build_first_order,
    build_second_order,
    iif_divergence_check,
    iif_logderiv_1st,
    invariant_from_solution,
    predicted_cofactor_1st,
    predicted_cofactor_2nd,
    q_object_1st,
    q_object_2nd,
)
from .dynamics import drift, integrate, return_distance
from .errors import AllSkipped, BlowUp, DomainError, LinDarbouxError, StepCollapse
from .exprparse import format_poly, parse_poly, parse_ratfn
from .verify import (
    Irreducibility,
    invariant_darboux_check,
    invariant_poly_check,
    quadratic_in_v_irreducibility,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _system_json(sys_: PlanarSystem) -> dict:
    return {"P": format_poly(sys_.P), "Q": format_poly(sys_.Q), "degree": sys_.d}


# -- certificate entries --------------------------------------------------------

def _poly_entry(name: str, sys_: PlanarSystem, f: Poly2, expected: Optional[Poly2] = None) -> dict:
    cert = invariant_poly_check(sys_, f)
    ok = cert.passed and (expected is None or cert.cofactor == expected)
    out = {
        "name": name,
        "kind": "invariant",
        "candidate": format_poly(f),
        "cofactor": format_poly(cert.cofactor),
    }
    if expected is not None:
        out["expected_cofactor"] = format_poly(expected)
    out["residual"] = cert.to_json()["residual"]
    out["verdict"] = "pass" if ok else "fail"
    return out


def _darboux_entry(name: str, sys_: PlanarSystem, L: DarbouxLogDeriv, expected: Optional[Poly2] = None) -> dict:
    cert = invariant_darboux_check(sys_, L)
    ok = cert.passed and (expected is None or cert.cofactor == expected)
    out = {"name": name, "kind": "darboux", "candidate": L.to_json(), "cofactor": format_poly(cert.cofactor)}
    if expected is not None:
        out["expected_cofactor"] = format_poly(expected)
    out["verdict"] = "pass" if ok else "fail"
    return out


def _iif_entry(name: str, sys_: PlanarSystem, kV: Poly2) -> dict:
    v = iif_divergence_check(sys_, kV)
    return {
        "name": name,
        "kind": "iif",
        "kV": format_poly(kV),
        "divergence": format_poly(sys_.divergence()),
        "residual": format_poly(v.residual),
        "verdict": v.verdict,
    }


def _irreducibility_entry(name: str, f: Poly2, var: str) -> dict:
    r = quadratic_in_v_irreducibility(f, var)
    return {
        "name": name,
        "kind": "irreducibility",
        "candidate": format_poly(f),
        "variable": var,
        "outcome": r.outcome.value,
        "discriminant": format_poly(r.discriminant),
        "verdict": "pass" if r.outcome is Irreducibility.IRREDUCIBLE else "fail",
    }


# -- simulation -------------------------------------------------------------------

def _simulate(args, sys_: PlanarSystem, H: Optional[Callable[[float, float], float]]) -> dict:
    if args.x0 is None or args.y0 is None:
        raise UsageError("--simulate needs --x0 and --y0")
    out: dict = {
        "x0": _fmt(args.x0),
        "y0": _fmt(args.y0),
        "t1": _fmt(args.t1),
        "tol": _fmt(args.tol),
        "threshold": _fmt(args.max_drift),
    }
    try:
        traj = integrate(sys_, args.x0, args.y0, args.t1, args.tol)
    except (BlowUp, StepCollapse) as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
        out["verdict"] = "fail"
        return out
    out["steps"] = traj.steps
    out["rejected"] = traj.rejected
    ex, ey = traj.end
    out["end"] = [_fmt(ex), _fmt(ey)]
    out["return_distance"] = _fmt(return_distance(traj))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(traj.to_csv(H))
    if H is None:
        out["verdict"] = "pass"
        return out
    try:
        rep = drift(H, traj)
    except AllSkipped as exc:
        out["error"] = f"AllSkipped: {exc}"
        out["verdict"] = "fail"
        return out
    out.update(rep.to_json())
    out["verdict"] = "pass" if rep.max_rel_drift < args.max_drift else "fail"
    return out


# -- subcommands --------------------------------------------------------------------

def _cmd_construct_second(args) -> dict:
    ode = LinearODE2(parse_poly(args.a0), parse_poly(args.a1), parse_poly(args.a2))
    g = ChangeOfVar(parse_poly(args.g0), parse_poly(args.g1))
    sys_ = build_second_order(ode, g)
    k = predicted_cofactor_2nd(ode, g)
    L, kq = q_object_2nd(ode, g)
    certs = [_darboux_entry("q", sys_, L, kq)]
    sols: List[Poly2]
    if args.w:
        sols = [parse_poly(args.w)]
    else:
        from .families.orth import polynomial_solutions

        sols = polynomial_solutions(ode, args.max_degree)
    extra = {"predicted_cofactor": format_poly(k), "scale": str(sys_.scale)}
    if sols:
        w = sols[-1]
        extra["w"] = format_poly(w)
        if ode.residual(w):
            raise DomainError(f"w = {format_poly(w)} does not solve the ODE")
        f = invariant_from_solution(g, w)
        if f:
            certs.append(_poly_entry("f", sys_, f, k))
            certs.append(_iif_entry("V", sys_, kq + k * 2))
    return {"system": sys_, "certificates": certs, "extra": extra}


def _cmd_construct_first(args) -> dict:
    ode = LinearODE1(parse_poly(args.a0), parse_poly(args.a1), parse_poly(args.h0), parse_poly(args.h1))
    g = ChangeOfVar(parse_poly(args.g0), parse_poly(args.g1))
    sys_ = build_first_order(ode, g)
    k = predicted_cofactor_1st(ode, g)
    certs = [_darboux_entry("q", sys_, q_object_1st(ode, g), k)]
    Vc = invariant_darboux_check(sys_, iif_logderiv_1st(ode, g))
    if Vc.passed:
        certs.append(_iif_entry("V", sys_, Vc.cofactor))
    else:
        certs.append(_darboux_entry("V", sys_, iif_logderiv_1st(ode, g)))
    return {"system": sys_, "certificates": certs, "extra": {"predicted_cofactor": format_poly(k), "scale": str(sys_.scale)}}


def _given_system(args) -> PlanarSystem:
    return PlanarSystem(parse_poly(args.P), parse_poly(args.Q))


def _cmd_verify_invariant(args) -> dict:
    sys_ = _given_system(args)
    k = parse_poly(args.k) if args.k else None
    return {"system": sys_, "certificates": [_poly_entry("f", sys_, parse_poly(args.f), k)]}


def _cmd_verify_darboux(args) -> dict:
    sys_ = _given_system(args)
    L = DarbouxLogDeriv(parse_ratfn(args.lx, args.lx_den), parse_ratfn(args.ly, args.ly_den))
    k = parse_poly(args.k) if args.k else None
    return {"system": sys_, "certificates": [_darboux_entry("L", sys_, L, k)]}


def _cmd_verify_iif(args) -> dict:
    sys_ = _given_system(args)
    return {"system": sys_, "certificates": [_iif_entry("V", sys_, parse_poly(args.kv))]}


def _cmd_family_orth(args) -> dict:
    from .families.orth import (
        OrthFamilySpec,
        algcurve_linear_y,
        orth_display_H,
        orth_system,
        orth_theorem_H,
        orthpoly_solve,
    )

    if args.kind == "hermite":
        spec = OrthFamilySpec.hermite(args.n)
    elif args.kind == "laguerre":
        spec = OrthFamilySpec.laguerre(args.alpha, args.n)
    else:
        spec = OrthFamilySpec.jacobi(args.alpha, args.beta, args.n)
    sys_ = orth_system(spec)
    certs = []
    extra = {"kind": args.kind, "n": str(spec.n)}
    if not args.float and spec.n.denominator == 1 and spec.n >= 0:
        p1 = orthpoly_solve(spec)
        f, k = algcurve_linear_y(spec, p1)
        extra["p1"] = format_poly(p1)
        certs.append(_poly_entry("f", sys_, f, k))
    H = None
    if args.simulate:
        H = orth_display_H(spec) if spec.closed_form_ready() else orth_theorem_H(spec)
    return {"system": sys_, "certificates": certs, "extra": extra, "H": H}


def _cmd_family_lv(args) -> dict:
    from .families.lv import lv_display_H, lv_invariant_poly, lv_system, lv_uv_system

    sys_ = lv_system(args.ell)
    certs = []
    extra = {"ell": str(args.ell)}
    if not args.float and args.ell.denominator == 1 and args.ell >= 1:
        inv = lv_invariant_poly(int(args.ell))
        extra["f_uv"] = format_poly(inv.uv)
        certs.append(_poly_entry("f_xy", sys_, inv.xy))
        uv_sys = lv_uv_system(args.ell)
        entry = _poly_entry("f_uv", uv_sys, inv.uv)
        entry["system"] = _system_json(uv_sys)
        certs.append(entry)
        certs.append(_irreducibility_entry("f_uv_irreducible", inv.uv, "y"))
    H = lv_display_H(float(args.ell)) if args.simulate else None
    return {"system": sys_, "certificates": certs, "extra": extra, "H": H}


def _cmd_family_new(args) -> dict:
    from .algebra import X, Y
    from .families.newfam import newfam_cofactor, newfam_H, newfam_invariant_XY, newfam_map, newfam_system
    from .families.common import birational_pullback

    sys_ = newfam_system(args.a, args.ell)
    certs = [_poly_entry("y", sys_, Y), _poly_entry("y - x^2", sys_, Y - X * X)]
    extra = {"a": str(args.a), "ell": str(args.ell)}
    if not args.float and args.ell.denominator == 1 and args.ell >= 1:
        f1 = birational_pullback(newfam_map(), newfam_invariant_XY(args.a, int(args.ell)))
        certs.append(_poly_entry("f1", sys_, f1, newfam_cofactor(args.a, args.ell)))
    H = newfam_H(float(args.a), float(args.ell)) if args.simulate else None
    return {"system": sys_, "certificates": certs, "extra": extra, "H": H}


def _cmd_family_center(args) -> dict:
    from .families.center import center_conic_and_H

    r = center_conic_and_H(args.a, args.b, args.d)
    certs = [
        _poly_entry("conic", r.system, r.conic, r.cofactor),
        _darboux_entry("line", r.system, r.line, r.line_cofactor),
    ]
    extra = {"a": str(args.a), "b": str(args.b), "d": str(args.d)}
    return {"system": r.system, "certificates": certs, "extra": extra, "H": r.H if args.simulate else None}


def _cmd_simulate(args) -> dict:
    sys_ = _given_system(args)
    args.simulate = True
    return {"system": sys_, "certificates": [], "H": None}


def _cmd_report_validate(args) -> dict:
    with open(args.file, encoding="utf-8") as fh:
        old = json.load(fh)
    s = old["system"]
    sys_ = PlanarSystem(parse_poly(s["P"]), parse_poly(s["Q"]))
    certs = []
    for c in old.get("certificates", []):
        kind = c["kind"]
        name = c.get("name", kind)
        if kind == "invariant":
            exp = parse_poly(c["expected_cofactor"]) if "expected_cofactor" in c else None
            if "system" in c:
                alt = PlanarSystem(parse_poly(c["system"]["P"]), parse_poly(c["system"]["Q"]))
                new = _poly_entry(name, alt, parse_poly(c["candidate"]), exp)
                new["system"] = c["system"]
            else:
                new = _poly_entry(name, sys_, parse_poly(c["candidate"]), exp)
        elif kind == "darboux":
            cand = c["candidate"]
            L = DarbouxLogDeriv(
                parse_ratfn(cand["Lx"]["num"], cand["Lx"]["den"]),
                parse_ratfn(cand["Ly"]["num"], cand["Ly"]["den"]),
            )
            exp = parse_poly(c["expected_cofactor"]) if "expected_cofactor" in c else None
            new = _darboux_entry(name, sys_, L, exp)
        elif kind == "iif":
            new = _iif_entry(name, sys_, parse_poly(c["kV"]))
        elif kind == "irreducibility":
            new = _irreducibility_entry(name, parse_poly(c["candidate"]), c["variable"])
        else:
            raise DomainError(f"unknown certificate kind {kind!r}")
        new["reproduced"] = new["verdict"] == c.get("verdict")
        if not new["reproduced"]:
            new["verdict"] = "fail"
        certs.append(new)
    return {"system": sys_, "certificates": certs, "extra": {"file": args.file}}


# -- argument grammar -----------------------------------------------------------------

def _add_sim(p: argparse.ArgumentParser, simulate_flag: bool = True) -> None:
    if simulate_flag:
        p.add_argument("--simulate", action="store_true", help="integrate and measure first-integral drift")
    p.add_argument("--x0", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--t1", type=float, default=2.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-drift", type=float, default=1e-6, help="drift threshold for exit status 0")
    p.add_argument("--csv", help="write the trajectory (t,x,y[,H]) to this file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lindarboux", description=__doc__.splitlines()[0])
    ap.add_argument("--timing", action="store_true", help="include wall time in the report")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build a planar system from a linear ODE and g = g0/g1")
    csub = con.add_subparsers(dest="mode", required=True)
    so = csub.add_parser("second-order")
    for name in ("a0", "a1", "a2", "g0"):
        so.add_argument(f"--{name}", required=True)
    so.add_argument("--g1", default="1")
    so.add_argument("--w", help="polynomial solution to certify (searched for when omitted)")
    so.add_argument("--max-degree", type=int, default=4)
    so.set_defaults(func=_cmd_construct_second)
    fo = csub.add_parser("first-order")
    for name in ("a0", "a1", "h0", "g0"):
        fo.add_argument(f"--{name}", required=True)
    fo.add_argument("--h1", default="1")
    fo.add_argument("--g1", default="1")
    fo.set_defaults(func=_cmd_construct_first)

    ver = sub.add_parser("verify", help="certify an invariant object against a given system")
    vsub = ver.add_subparsers(dest="mode", required=True)
    vi = vsub.add_parser("invariant")
    vi.add_argument("--f", required=True)
    vi.add_argument("--k", help="expected cofactor")
    vi.set_defaults(func=_cmd_verify_invariant)
    vd = vsub.add_parser("darboux")
    vd.add_argument("--lx", required=True)
    vd.add_argument("--lx-den", default="1")
    vd.add_argument("--ly", default="0")
    vd.add_argument("--ly-den", default="1")
    vd.add_argument("--k", help="expected cofactor")
    vd.set_defaults(func=_cmd_verify_darboux)
    vv = vsub.add_parser("iif")
    vv.add_argument("--kv", required=True, help="cofactor of the claimed inverse integrating factor")
    vv.set_defaults(func=_cmd_verify_iif)
    for p in (vi, vd, vv):
        p.add_argument("--P", required=True)
        p.add_argument("--Q", required=True)

    fam = sub.add_parser("family", help="the example families")
    fsub = fam.add_subparsers(dest="mode", required=True)
    fo_ = fsub.add_parser("orth")
    fo_.add_argument("--kind", choices=("hermite", "laguerre", "jacobi"), default="hermite")
    fo_.add_argument("--n", type=_rational, required=True)
    fo_.add_argument("--alpha", type=_rational, default=Fraction(0))
    fo_.add_argument("--beta", type=_rational, default=Fraction(0))
    fo_.set_defaults(func=_cmd_family_orth)
    fl = fsub.add_parser("lv")
    fl.add_argument("--ell", type=_rational, required=True)
    fl.set_defaults(func=_cmd_family_lv)
    fn = fsub.add_parser("new")
    fn.add_argument("--a", type=_rational, required=True)
    fn.add_argument("--ell", type=_rational, required=True)
    fn.set_defaults(func=_cmd_family_new)
    fc = fsub.add_parser("center")
    for name in ("a", "b", "d"):
        fc.add_argument(f"--{name}", type=_rational, required=True)
    fc.set_defaults(func=_cmd_family_center, float=False)
    for p in (fo_, fl, fn):
        p.add_argument("--float", action="store_true", help="numeric only: skip the symbolic certificates")
    for p in (fo_, fl, fn, fc):
        _add_sim(p)

    si = sub.add_parser("simulate", help="integrate a given system")
    si.add_argument("--P", required=True)
    si.add_argument("--Q", required=True)
    _add_sim(si, simulate_flag=False)
    si.set_defaults(func=_cmd_simulate)

    rep = sub.add_parser("report", help="re-verify a saved report")
    rsub = rep.add_subparsers(dest="mode", required=True)
    rv = rsub.add_parser("validate")
    rv.add_argument("file")
    rv.set_defaults(func=_cmd_report_validate)
    return ap


def _command_echo(argv: Sequence[str]) -> str:
    return shlex.join(a for a in argv if a != "--timing")


def _status_line(ok: bool) -> str:
    text = "PASS" if ok else "FAIL"
    if os.environ.get("NO_COLOR") is None and sys.stderr.isatty():
        text = ("\x1b[32m" if ok else "\x1b[31m") + text + "\x1b[0m"
    return text


_FLAGS = {"--simulate", "--float", "--timing", "--help", "--version"}


def _attach_values(argv: Sequence[str]) -> List[str]:
    """Glue values such as ``-2*x`` to their option so they are not read as options."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok.startswith("--")
            and "=" not in tok
            and tok not in _FLAGS
            and nxt is not None
            and nxt.startswith("-")
            and not nxt.startswith("--")
            and nxt != "-h"
        ):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(_attach_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        res = args.func(args)
        drift_block = None
        if getattr(args, "simulate", False):
            drift_block = _simulate(args, res["system"], res.get("H"))
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LinDarbouxError, ValueError, OSError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    certs = res["certificates"]
    ok = all(c["verdict"] == "pass" for c in certs)
    if drift_block is not None:
        ok = ok and drift_block["verdict"] == "pass"
    echo = _command_echo(argv)
    report = {
        "version": __version__,
        "command": echo,
        "input_sha256": hashlib.sha256(echo.encode("utf-8")).hexdigest(),
        "system": _system_json(res["system"]),
    }
    if res.get("extra"):
        report["parameters"] = res["extra"]
    report["certificates"] = certs
    report["drift"] = drift_block
    report["status"] = "pass" if ok else "fail"
    if args.timing:
        report["wall_time_s"] = _fmt(time.perf_counter() - start)
    print(json.dumps(report, indent=2))
    print(f"{args.command}: {_status_line(ok)}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
