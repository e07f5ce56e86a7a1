"""Command-line front end.

Subcommands: verify, star, curvature, graded, oneloop, bessel-check.
Exit status: 0 all checks pass, 1 a numerical check failed, 2 input error.
Every run is deterministic under a fixed seed; reports start with the
convention sheet so published numbers are unambiguous.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import graded as gr
from .connections import (
    connection_from_config,
    curvature,
    curvature_generic,
)
from .expressions import ExpressionError, format_element, parse_expression
from .oneloop import LoopConfig, bessel_m, ir_coefficient, ir_target
from .structure import SymplecticStructure
from .verify import run_suites

__all__ = ["main"]

CONVENTIONS = (
    "# conventions: Theta = theta * Sigma, Sigma = diag(J,..,J), J = [[0,-1],[1,0]]\n"
    "# wedge(p,k) = p_mu Theta_{mu nu} k_nu ; ptilde_mu = Theta_{mu nu} p_nu\n"
    "# partial_mu = [i xi_mu, .] with xi_mu = -ThetaInv_{mu nu} x_nu"
)


class InputError(Exception):
    pass


def _add_common(p):
    p.add_argument("--dim", type=int, default=None, help="even dimension D")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--tol", type=float, default=None)


def _effective(args, cfg=None):
    """Resolve D and theta from flags and an optional config mapping."""
    D = args.dim
    theta = args.theta
    if cfg is not None:
        if "D" in cfg:
            if D is not None and int(cfg["D"]) != D:
                raise InputError(f"config D={cfg['D']} conflicts with --dim {D}")
            D = int(cfg["D"])
        if "theta" in cfg:
            cfg_theta = float(cfg["theta"])
            if theta is not None and cfg_theta != theta:
                raise InputError(
                    f"config theta={cfg_theta} conflicts with --theta {theta}"
                )
            theta = cfg_theta
    D = 2 if D is None else D
    theta = 1.0 if theta is None else theta
    if D < 2 or D % 2:
        raise InputError("D must be a positive even integer")
    if theta <= 0:
        raise InputError("theta must be positive")
    return D, theta


def _build_parser():
    ap = argparse.ArgumentParser(prog="moyalcalc", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the identity suites")
    _add_common(p)
    p.add_argument(
        "--scope",
        default="all",
        choices=["core", "derivations", "connections", "graded", "all"],
    )
    p.add_argument("--config", default=None, help="optional D/theta config file")

    p = sub.add_parser("star", help="star-multiply two expressions")
    _add_common(p)
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("curvature", help="curvature table from a config file")
    _add_common(p)
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--mu", type=float, default=None, help="override the mu scale")
    p.add_argument("--alpha", type=float, default=None, help="override the coupling")

    p = sub.add_parser("graded", help="graded curvature table from a config file")
    _add_common(p)
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--m", type=float, default=None, help="override the m scale")
    p.add_argument("--mu", type=float, default=None, help="override the mu scale")

    p = sub.add_parser("oneloop", help="fit the vacuum-polarisation IR coefficient")
    _add_common(p)
    p.add_argument("--mu", type=float, default=1.0, help="Higgs propagator mass")
    p.add_argument("--n-higgs", type=int, default=None)
    p.add_argument("--p-min", type=float, default=1e-2, help="smallest |ptilde|")
    p.add_argument("--p-max", type=float, default=1e-1, help="largest |ptilde|")
    p.add_argument("--n-points", type=int, default=8)
    p.add_argument("--out", default=None, help="CSV output path")

    p = sub.add_parser("bessel-check", help="verify the Bessel master integrals")
    _add_common(p)
    return ap


def _report_verify(args) -> int:
    cfg = _load_config(args.config) if args.config else None
    D, theta = _effective(args, cfg)
    try:
        checks = run_suites(args.scope, D, theta, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(CONVENTIONS)
    print(f"# scope={args.scope} D={D} theta={theta} seed={args.seed}")
    width = max(len(c.name) for _s, c in checks)
    ok = True
    for sname, c in checks:
        status = "pass" if c.passed else "FAIL"
        ok &= c.passed
        print(f"{status}  {sname:12s} {c.name:<{width}s}  residual {c.residual:.3e}  tol {c.tol:.0e}")
    print(f"# {'all checks passed' if ok else 'CHECK FAILURES PRESENT'}")
    return 0 if ok else 1


def _report_star(args) -> int:
    D, theta = _effective(args)
    s = SymplecticStructure(D, theta)
    try:
        a = parse_expression(args.left, s)
        b = parse_expression(args.right, s)
    except ExpressionError as exc:
        raise InputError(str(exc)) from exc
    from .elements import star

    print(CONVENTIONS)
    print(format_element(star(a, b)))
    return 0


def _load_config(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    return cfg


def _report_curvature(args) -> int:
    cfg = _load_config(args.config)
    D, theta = _effective(args, cfg)
    cfg = {**cfg, "D": D, "theta": theta}
    if args.mu is not None:
        cfg["mu"] = args.mu
    if args.alpha is not None:
        cfg["alpha"] = args.alpha
    try:
        A = connection_from_config(cfg, parse=parse_expression)
    except (ValueError, ExpressionError) as exc:
        raise InputError(str(exc)) from exc
    F = curvature(A)
    Fg = curvature_generic(A)
    dual = F.max_distance(Fg)
    tol = args.tol if args.tol is not None else 1e-11
    lines = [CONVENTIONS, f"# dual-path residual {dual:.3e} (tol {tol:.0e})"]
    for (n1, n2), val in F.entries.items():
        lines.append(f"F({n1},{n2}) = {format_element(val)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(text, end="")
    return 0 if dual <= tol else 1


def _report_graded(args) -> int:
    cfg = _load_config(args.config)
    D, theta = _effective(args, cfg)
    cfg = {**cfg, "D": D, "theta": theta}
    if args.m is not None:
        cfg["m"] = args.m
    if args.mu is not None:
        cfg["mu"] = args.mu
    try:
        A = gr.graded_connection_from_config(cfg, parse=parse_expression)
    except (ValueError, ExpressionError) as exc:
        raise InputError(str(exc)) from exc
    Fc = gr.graded_curvature(A)
    Fg = gr.graded_curvature_generic(A)
    dual = max((Fc[k] - Fg[k]).norm() for k in Fc)
    tol = args.tol if args.tol is not None else 1e-11
    lines = [CONVENTIONS, f"# dual-path residual {dual:.3e} (tol {tol:.0e})"]
    for (n1, n2), val in Fc.items():
        lines.append(
            f"F({n1},{n2}) = ({format_element(val.even)} | {format_element(val.odd)})"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(text, end="")
    return 0 if dual <= tol else 1


def _report_oneloop(args) -> int:
    D, theta = _effective(args)
    if not (0 < args.p_min < args.p_max):
        raise InputError("need 0 < p-min < p-max")
    if args.p_min < 1e-2 - 1e-12 or args.p_max > 1e-1 + 1e-12:
        raise InputError("the supported fit window is [1e-2, 1e-1] in |ptilde|")
    if args.n_points < 4:
        raise InputError("need at least 4 fit points")
    try:
        cfg = LoopConfig(D=D, theta=theta, n_higgs=args.n_higgs, mu_mass=args.mu)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    pts = np.geomspace(args.p_min, args.p_max, args.n_points)
    p_values = []
    for x in pts:
        p = np.zeros(D)
        p[0] = x / theta  # |ptilde| = theta |p| for axis momenta
        p_values.append(p)
    res = ir_coefficient(cfg, p_values)
    target = ir_target(cfg.D, cfg.n_higgs)
    rel = abs(res.value - target) / abs(target)
    tol = args.tol if args.tol is not None else 0.02
    print(CONVENTIONS)
    print(
        f"# D={cfg.D} N={cfg.n_higgs} mu={cfg.mu_mass} theta={cfg.theta} "
        f"window=[{args.p_min},{args.p_max}]"
    )
    print(
        f"target {target:.6f}, fitted {res.value:.6f} "
        f"(rel dev {rel:.3%}, fit residual {res.abs_error:.2e}) -> "
        f"{'pass' if rel <= tol else 'FAIL'} at {tol:.1%}"
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("ptilde_norm,c_fit,residual,D,N,mu,theta\n")
            for pt, y, _err in res.extras["points"]:
                fh.write(
                    f"{pt!r},{res.value!r},{y - res.value!r},"
                    f"{cfg.D},{cfg.n_higgs},{cfg.mu_mass!r},{cfg.theta!r}\n"
                )
    return 0 if rel <= tol else 1


def _report_bessel(args) -> int:
    import math

    rng = np.random.default_rng(args.seed)
    worst_rec = worst_wronski = worst_kneg = 0.0
    from scipy.special import iv, kv

    for _ in range(40):
        Q = int(rng.integers(0, 4))
        z = float(rng.uniform(1e-3, 50.0))
        kq = kv(Q, z)
        kq1 = kv(Q + 1, z)
        kq2 = kv(Q + 2, z)
        worst_rec = max(
            worst_rec, abs(kq2 - (kq + 2 * (Q + 1) / z * kq1)) / max(abs(kq2), 1e-300)
        )
        w = iv(Q, z) * kq1 + iv(Q + 1, z) * kq
        worst_wronski = max(worst_wronski, abs(w - 1.0 / z) * z)
        worst_kneg = max(worst_kneg, abs(kv(-Q, z) - kq) / max(abs(kq), 1e-300))
    # small-argument law for the massless limit
    worst_asym = 0.0
    for Q in (1, 2):
        for pt in (1e-2, 1e-3):
            exact = bessel_m(-Q, 1.0, pt)
            asym = 2.0 ** (Q - 1) * math.factorial(Q - 1) / pt ** (2 * Q)
            worst_asym = max(worst_asym, abs(exact - asym) / asym)
    print(CONVENTIONS)
    print(f"K recurrence residual      {worst_rec:.3e}  tol 1e-10")
    print(f"Wronskian I K' + I' K      {worst_wronski:.3e}  tol 1e-9")
    print(f"K_-Q = K_Q                 {worst_kneg:.3e}  tol 1e-14")
    print(f"small-argument M_-Q law    {worst_asym:.3e}  tol 1e-2")
    ok = (
        worst_rec <= 1e-10
        and worst_wronski <= 1e-9
        and worst_kneg <= 1e-14
        and worst_asym <= 1e-2
    )
    print(f"# {'all checks passed' if ok else 'CHECK FAILURES PRESENT'}")
    return 0 if ok else 1


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which matches the contract
        return int(exc.code or 0)
    handlers = {
        "verify": _report_verify,
        "star": _report_star,
        "curvature": _report_curvature,
        "graded": _report_graded,
        "oneloop": _report_oneloop,
        "bessel-check": _report_bessel,
    }
    try:
        return handlers[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
