"""Command-line interface.

All commands emit a single JSON document on stdout with "format": 1.  Exact
rationals appear as "num/den" strings, complex numbers as [re, im] pairs.
Output is deterministic (sorted keys, fixed term ordering)."""

from __future__ import annotations

import argparse
import json
import sys

from gmpy2 import mpq

from .errors import ConfigError, RuijsenaarsError
from .operators import OperatorContext
from .scalars import rat


def _parse_weight(text: str):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ConfigError("bad weight %r (expected e.g. '2,1,0')" % text)


def _parse_weights(text: str):
    return [_parse_weight(part) for part in text.split(";") if part]


def _parse_svec(text: str):
    return tuple(rat(v) for v in text.split(","))


def _ctx(args) -> OperatorContext:
    return OperatorContext(args.n, rat(args.q), rat(args.t))


def _emit(doc: dict) -> int:
    doc["format"] = 1
    json.dump(doc, sys.stdout, sort_keys=True, indent=2, default=_json_default)
    sys.stdout.write("\n")
    return 0


def _json_default(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, type(mpq(0))):
        from .scalars import format_rational
        return format_rational(v)
    if isinstance(v, tuple):
        return list(v)
    raise TypeError("unserializable %r" % (v,))


def cmd_macdonald(args) -> int:
    from .eigen_symmetric import macdonald_polynomial, spectral_eigenvalue

    ctx = _ctx(args)
    lam = _parse_weight(getattr(args, "lambda"))
    P = macdonald_polynomial(ctx, lam)
    return _emit({
        "command": "macdonald",
        "n": ctx.n, "q": ctx.q, "t": ctx.t,
        "lambda": list(lam),
        "P": P.to_json(),
        "eigenvalues": {str(r): spectral_eigenvalue(ctx, lam, r)
                        for r in range(1, ctx.n + 1)},
    })


def cmd_elliptic(args) -> int:
    from .eigen_symmetric import elliptic_macdonald

    ctx = _ctx(args)
    lam = _parse_weight(getattr(args, "lambda"))
    em = elliptic_macdonald(ctx, lam, args.p_order)
    doc = em.to_json()
    doc.update({"command": "elliptic", "q": ctx.q, "t": ctx.t})
    return _emit(doc)


def cmd_asymptotic(args) -> int:
    from .eigen_asymptotic import stationary_ruijsenaars

    ctx = _ctx(args)
    s = _parse_svec(args.s)
    fr = stationary_ruijsenaars(ctx, s, args.height,
                                k0cap=0 if args.trigonometric else None)
    doc = fr.to_json()
    doc.update({"command": "asymptotic", "q": ctx.q, "t": ctx.t,
                "decay_profile": fr.decay_profile()})
    return _emit(doc)


def cmd_verify(args) -> int:
    from .eigen_asymptotic import (check_joint_eigen, reflection_check,
                                   rotation_check, specialize_to_symmetric,
                                   stationary_ruijsenaars)
    from .eigen_symmetric import check_eigen_equations, elliptic_macdonald

    ctx = _ctx(args)
    mode = args.mode
    if mode == "elliptic":
        lam = _parse_weight(getattr(args, "lambda"))
        em = elliptic_macdonald(ctx, lam, args.p_order)
        rep = check_eigen_equations(ctx, em)
    elif mode == "asymptotic":
        fr = stationary_ruijsenaars(ctx, _parse_svec(args.s), args.height)
        rep = check_joint_eigen(ctx, fr)
    elif mode == "specialize":
        lam = _parse_weight(getattr(args, "lambda"))
        em = elliptic_macdonald(ctx, lam, args.p_order)
        fr = stationary_ruijsenaars(ctx, ctx.t_rho_q_lambda(lam), args.height)
        rep = specialize_to_symmetric(ctx, em, fr)
    elif mode == "rotation":
        rep = rotation_check(ctx, _parse_svec(args.s), args.height)
    elif mode == "reflection":
        rep = reflection_check(ctx, _parse_svec(args.s), args.height)
    else:
        raise ConfigError("unknown verify mode %r" % mode)
    rep = dict(rep)
    rep.update({"command": "verify", "mode": mode})
    _emit(rep)
    return 0 if rep.get("ok") else 3


def cmd_orthogonality(args) -> int:
    from .numerics import orthogonality_check

    ctx = _ctx(args)
    lams = _parse_weights(args.weights)
    rep = orthogonality_check(ctx, complex(args.p), lams,
                              K=args.p_order, N=args.grid)
    doc = {
        "command": "orthogonality",
        "n": ctx.n, "q": ctx.q, "t": ctx.t, "p": complex(args.p),
        "p_order": args.p_order, "grid": args.grid,
        "max_rel_offdiag": rep["max_rel_offdiag"],
        "pairs": [dict(pr, **{"lambda": list(pr["lambda"]),
                              "mu": list(pr["mu"])}) for pr in rep["pairs"]],
        "diagonal": {",".join(map(str, k)): v
                     for k, v in rep["diagonal"].items()},
    }
    _emit(doc)
    return 0


def cmd_transform(args) -> int:
    from .numerics import trig_transform_check

    ctx = _ctx(args)
    lam = _parse_weight(getattr(args, "lambda"))
    rep = trig_transform_check(ctx, lam, N=args.grid, H=args.height,
                               sigma=args.sigma)
    doc = {
        "command": "transform",
        "n": ctx.n, "q": ctx.q, "t": ctx.t, "lambda": list(lam),
        "sigma": args.sigma, "grid": args.grid, "height_cutoff": args.height,
        "b_lambda": rep["b_lambda"],
        "max_rel_err": rep["max_rel_err"],
        "r_independence_dev": rep["r_independence_dev"],
    }
    _emit(doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ruijsenaars",
        description="Exact perturbative eigenfunctions of the elliptic "
                    "Ruijsenaars system, with numeric verification modes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, required=True, help="number of variables")
        p.add_argument("--q", required=True, help="base parameter q (rational, e.g. 3/10)")
        p.add_argument("--t", required=True, help="base parameter t (rational)")

    p = sub.add_parser("macdonald", help="trigonometric Macdonald polynomial")
    common(p)
    p.add_argument("--lambda", required=True, help="dominant weight, e.g. 2,1,0")
    p.set_defaults(func=cmd_macdonald)

    p = sub.add_parser("elliptic", help="elliptic deformation P_lambda(x;p)")
    common(p)
    p.add_argument("--lambda", required=True)
    p.add_argument("--p-order", type=int, default=4, dest="p_order")
    p.set_defaults(func=cmd_elliptic)

    p = sub.add_parser("asymptotic", help="asymptotically free eigenfunction")
    common(p)
    p.add_argument("--s", required=True, help="spectral parameters, e.g. 2/7,3/5")
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--trigonometric", action="store_true",
                   help="restrict to the p^0 slice")
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("verify", help="exact identity checks")
    common(p)
    p.add_argument("--mode", required=True,
                   choices=["elliptic", "asymptotic", "specialize",
                            "rotation", "reflection"])
    p.add_argument("--lambda", default="0,0")
    p.add_argument("--s", default=None)
    p.add_argument("--p-order", type=int, default=3, dest="p_order")
    p.add_argument("--height", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orthogonality", help="numeric torus orthogonality")
    common(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--weights", required=True,
                   help="semicolon-separated weights, e.g. '0,0;1,0;1,1'")
    p.add_argument("--p-order", type=int, default=4, dest="p_order")
    p.add_argument("--grid", type=int, default=64)
    p.set_defaults(func=cmd_orthogonality)

    p = sub.add_parser("transform", help="trigonometric kernel transform check")
    common(p)
    p.add_argument("--lambda", required=True)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--height", type=int, default=40)
    p.add_argument("--sigma", type=float, default=0.5)
    p.set_defaults(func=cmd_transform)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except RuijsenaarsError as e:
        json.dump({"format": 1, "error": type(e).__name__, "message": str(e)},
                  sys.stdout, sort_keys=True, indent=2)
        sys.stdout.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
