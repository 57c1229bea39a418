"""Command-line surface.

Subcommands mirror the library ops one-to-one:

    constant  (talenti | trace-upper | bradley)
    exponent  critical-exponent maps and admissible ranges
    norm      (lp | gradient | gls)
    transform (nu | zeta | theta)
    verify    (sobolev | gls | trace | hardy)
    sweep     config-driven grids with CSV/JSON emission

Exit codes: 0 success / all rows pass; 1 verification failure; 2 validation
error; 3 runtime divergence.  Sweeps never abort on a cell: cell errors are
recorded in-row and surfaced through the exit code and the final summary
line (a single JSON object on stdout).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import constants, gls, hardy, radial, sharpness, writers
from .config import OutputSpec, parse_config
from .errors import (ConfigError, DivergenceError, DomainError,
                     UnsupportedConfigurationError)
from .exponents import Setting, dilation_balance, p_of_q, p_range, q_of_p

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_VALIDATION = 2
EXIT_DIVERGENCE = 3


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _profile(family: str, dim: int, delta: float | None) -> radial.RadialProfile:
    if family == "logpow":
        if delta is None:
            raise DomainError("family 'logpow' needs --delta")
        return radial.logpow_profile(dim, delta)
    if family == "gaussian":
        return radial.gaussian_profile(dim)
    if family == "bump":
        return radial.bump_profile(dim)
    raise DomainError(f"unknown family {family!r}")


def _psi_from_flags(args, default_interval) -> gls.PsiFunction:
    interval = tuple(args.interval) if args.interval else default_interval
    if args.psi is None:
        profile = _profile(args.family, args.dim if hasattr(args, "dim") and args.dim
                           else args.m, args.delta)
        return gls.natural_psi(profile, "gradient", interval)
    spec = json.loads(args.psi)
    kind = spec.get("kind")
    if kind == "constant":
        return gls.constant_psi(interval, float(spec.get("value", 1.0)))
    if kind == "power_blowup":
        return gls.power_blowup(interval, float(spec["beta"]), spec.get("endpoint", "upper"))
    if kind == "natural":
        profile = _profile(spec.get("family", "logpow"),
                           int(spec.get("dim", getattr(args, "dim", None) or args.m)),
                           spec.get("delta", args.delta))
        return gls.natural_psi(profile, spec.get("norm_kind", "gradient"), interval)
    raise DomainError(f"unknown psi kind {kind!r}")


def _cmd_constant(args) -> int:
    if args.kind == "talenti":
        res = constants.talenti(args.m, args.p)
    elif args.kind == "trace-upper":
        fn = {"min": constants.trace_upper,
              "bradley": constants.trace_upper_bradley,
              "besov": constants.trace_upper_besov}[args.variant]
        res = fn(args.m, args.n, args.p)
    else:  # bradley
        if args.q is None:
            raise DomainError("constant bradley needs --q")
        res = constants.bradley_Q(args.p, args.q)
        if args.m is not None and args.big_n is not None:
            b = constants.bradley_B_power(args.m, args.big_n, args.p)
            _emit({"op": "constant", "kind": b.kind, "inputs": b.inputs,
                   "value": b.to_linear(), "log_value": b.value.log_abs})
    _emit({"op": "constant", "kind": res.kind, "inputs": res.inputs,
           "value": res.to_linear(), "log_value": res.value.log_abs})
    return EXIT_OK


def _cmd_exponent(args) -> int:
    s = Setting(args.m, args.n, args.alpha)
    lo, hi = p_range(s)
    doc = {"op": "exponent", "m": s.m, "n": s.n, "alpha": s.alpha,
           "p_range": [lo, None if math.isinf(hi) else hi]}
    if args.p is not None:
        doc["p"] = args.p
        doc["q_of_p"] = q_of_p(s, args.p)
        doc["dilation_balance"] = dilation_balance(s, args.p)
    if args.q is not None:
        doc["q"] = args.q
        doc["p_of_q"] = p_of_q(s, args.q)
    _emit(doc)
    return EXIT_OK


def _cmd_norm(args) -> int:
    if args.kind == "gls":
        profile = _profile(args.family, args.dim, args.delta)
        interval = tuple(args.interval) if args.interval else (1.0, float(args.dim))
        psi = _psi_from_flags(args, interval)
        curve = gls.natural_psi(profile, args.norm_kind, interval)
        from .specfun import LogValue
        res = gls.gls_norm(lambda p: LogValue.from_log(curve.log_value(p)), psi)
        _emit({"op": "norm_gls", "family": args.family, "dim": args.dim,
               "norm_kind": args.norm_kind, "value": res.to_linear(),
               "argmax_p": res.argmax_p, "evaluations": res.evaluations,
               "converged": res.converged})
        return EXIT_OK
    profile = _profile(args.family, args.dim, args.delta)
    if args.kind == "lp":
        res = radial.lp_norm_quad(profile, args.p)
    else:
        res = radial.grad_lp_norm(profile, args.p)
    _emit({"op": f"norm_{args.kind}", "family": args.family, "dim": args.dim,
           "p": args.p, "value": res.to_linear(),
           "log_value": res.value.log_abs, "method": res.method,
           "abs_error_estimate": res.abs_error_estimate})
    return EXIT_OK


def _cmd_transform(args) -> int:
    default_interval = {
        "nu": (1.0, float(args.m)),
        "zeta": None,
        "theta": None,
    }[args.kind]
    if args.kind in ("zeta", "theta"):
        s = Setting(args.m, args.n, args.alpha if args.kind == "theta" else 0.0)
        default_interval = p_range(s)
    psi = _psi_from_flags(args, default_interval)
    if args.kind == "nu":
        transformed = gls.nu_transform(psi, args.m)
    elif args.kind == "zeta":
        transformed = gls.zeta_transform(psi, args.m, args.n)
    else:
        bound = _bound_curve(args)
        transformed = gls.theta_transform(psi, args.m, args.n, args.alpha, bound)
    value = transformed(args.q)
    _emit({"op": f"transform_{args.kind}", "q": args.q, "value": value,
           "log_value": transformed.log_value(args.q),
           "interval": [transformed.interval[0],
                        None if math.isinf(transformed.interval[1])
                        else transformed.interval[1]],
           "kind": transformed.kind})
    return EXIT_OK


def _bound_curve(args):
    if args.bound is None:
        return None
    if args.bound == "trace-upper":
        return lambda p: constants.trace_upper(args.m, args.n, p)
    if args.bound == "talenti":
        return lambda p: constants.talenti(args.m, p)
    if args.bound.startswith("const:"):
        c = float(args.bound.split(":", 1)[1])
        return lambda p: c
    raise DomainError(f"unknown bound curve {args.bound!r}")


def _record_doc(rec: sharpness.SweepRecord) -> dict:
    return {
        "m": rec.setting.m, "n": rec.setting.n, "alpha": rec.setting.alpha,
        "delta": rec.delta, "p": rec.p, "q": rec.q,
        "lhs": None if rec.lhs is None else rec.lhs.to_linear(),
        "constant": None if rec.bound_constant is None else rec.bound_constant.to_linear(),
        "rhs": None if rec.rhs is None else rec.rhs.to_linear(),
        "ratio": rec.ratio, "pass": rec.passed, "notes": rec.notes,
    }


def _cmd_verify(args) -> int:
    if args.kind == "sobolev":
        profile = _profile(args.family, args.m, args.delta)
        rec = sharpness.verify_sobolev(profile, args.m, args.p)
    elif args.kind == "gls":
        rec = sharpness.verify_gls_theorem1(args.m, args.delta)
    elif args.kind == "trace":
        ratio = sharpness.ratio_trace(args.m, args.n, args.delta, args.p)
        _emit({"op": "verify_trace", "m": args.m, "n": args.n,
               "delta": args.delta, "p": args.p, "ratio": ratio,
               "pass": ratio <= 1.0 + sharpness.PASS_SLACK})
        return EXIT_OK if ratio <= 1.0 + sharpness.PASS_SLACK else EXIT_FAIL
    else:  # hardy
        s = Setting(args.m, args.n, 0.0)
        rec = sharpness._hardy_record(s, args.delta, args.p, args.g.replace("-", "_"))
    doc = _record_doc(rec)
    doc["op"] = f"verify_{args.kind}"
    _emit(doc)
    if rec.passed is None:
        return EXIT_DIVERGENCE
    return EXIT_OK if rec.passed else EXIT_FAIL


def _cmd_sweep(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    output = cfg.output
    if args.format is not None or args.output is not None or \
            args.precision is not None or args.columns is not None:
        output = OutputSpec(
            format=args.format or output.format,
            path=args.output if args.output is not None else output.path,
            precision=args.precision if args.precision is not None else output.precision,
            columns=tuple(args.columns.split(",")) if args.columns else output.columns,
        )
    records = sharpness.sweep(cfg)
    text = writers.emit_table(records, output)
    if output.path is None:
        sys.stdout.write(text)
    n_pass = sum(1 for r in records if r.passed is True)
    n_fail = sum(1 for r in records if r.passed is False)
    n_err = sum(1 for r in records if r.passed is None)
    if n_err:
        code = EXIT_DIVERGENCE
    elif n_fail:
        code = EXIT_FAIL
    else:
        code = EXIT_OK
    _emit({"op": "sweep", "target": cfg.target, "rows": len(records),
           "passed": n_pass, "failed": n_fail, "errors": n_err, "exit": code})
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glsobolev",
        description="Grand Lebesgue Space norms, sharp Sobolev/trace "
                    "constants, and inequality verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constant", help="evaluate a constant")
    c.add_argument("kind", choices=["talenti", "trace-upper", "bradley"])
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int, default=0)
    c.add_argument("--big-n", type=int, help="ambient dimension N for bradley B")
    c.add_argument("--p", type=float, required=True)
    c.add_argument("--q", type=float)
    c.add_argument("--variant", choices=["min", "bradley", "besov"], default="min")
    c.set_defaults(fn=_cmd_constant)

    e = sub.add_parser("exponent", help="critical-exponent maps")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--n", type=int, default=0)
    e.add_argument("--alpha", type=float, default=0.0)
    e.add_argument("--p", type=float)
    e.add_argument("--q", type=float)
    e.set_defaults(fn=_cmd_exponent)

    n = sub.add_parser("norm", help="L_p, gradient, or GLS norm of a profile")
    n.add_argument("kind", choices=["lp", "gradient", "gls"])
    n.add_argument("--family", choices=["logpow", "gaussian", "bump"],
                   default="logpow")
    n.add_argument("--delta", type=float)
    n.add_argument("--dim", type=int, required=True)
    n.add_argument("--p", type=float)
    n.add_argument("--norm-kind", choices=["function", "gradient"],
                   default="function")
    n.add_argument("--psi", help="inline JSON psi spec (gls only)")
    n.add_argument("--interval", type=float, nargs=2)
    n.set_defaults(fn=_cmd_norm)

    t = sub.add_parser("transform", help="evaluate nu/zeta/theta at q")
    t.add_argument("kind", choices=["nu", "zeta", "theta"])
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--n", type=int, default=0)
    t.add_argument("--alpha", type=float, default=0.0)
    t.add_argument("--q", type=float, required=True)
    t.add_argument("--family", choices=["logpow", "gaussian", "bump"],
                   default="logpow")
    t.add_argument("--delta", type=float)
    t.add_argument("--psi", help="inline JSON psi spec")
    t.add_argument("--interval", type=float, nargs=2)
    t.add_argument("--bound",
                   help="bound curve for theta: trace-upper | talenti | const:VALUE")
    t.set_defaults(fn=_cmd_transform)

    v = sub.add_parser("verify", help="single-case verification")
    v.add_argument("kind", choices=["sobolev", "gls", "trace", "hardy"])
    v.add_argument("--family", choices=["logpow", "gaussian", "bump"],
                   default="logpow")
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--n", type=int, default=0)
    v.add_argument("--delta", type=float)
    v.add_argument("--p", type=float)
    v.add_argument("--g", choices=["indicator", "logpow-deriv", "zero"],
                   default="indicator")
    v.set_defaults(fn=_cmd_verify)

    s = sub.add_parser("sweep", help="config-driven verification sweep")
    s.add_argument("--config", required=True)
    s.add_argument("--format", choices=["csv", "json"])
    s.add_argument("--output")
    s.add_argument("--precision", type=int)
    s.add_argument("--columns", help="comma-separated column subset")
    s.set_defaults(fn=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DomainError, UnsupportedConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE


if __name__ == "__main__":
    sys.exit(main())
