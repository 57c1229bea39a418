"""Verification and sharpness lab.

Pointwise inequality ratios for the log-power extremal family, the chain of
closed-form limits that drives them to 1, quadrature-based verification of
the ordinary inequality for arbitrary profiles, the GLS-level check, and
grid sweeps with Richardson convergence rows.

The closed-form limit of the ordinary ratio as p -> m is

    V00(m, delta) = delta^(delta-1) e^-delta m^delta
                    / [(m-1)^(1-1/m) Gamma^(1/m)((delta-1) m + 1)],

whose m -> infinity limit is V000(delta) = e^-1 (delta/(delta-1))^(delta-1),
and V000 increases to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import constants, gls, radial, specfun
from .config import SweepConfig
from .errors import DivergenceError, DomainError
from .exponents import Setting, p_range, q_of_p
from .specfun import LogValue

__all__ = [
    "SweepRecord",
    "PASS_SLACK",
    "ratio_ordinary",
    "ratio_limit_ordinary",
    "v000",
    "ratio_trace",
    "richardson_limit",
    "verify_sobolev",
    "verify_gls_theorem1",
    "sweep",
]

PASS_SLACK = 1e-9
DEFAULT_LADDER = (4, 5, 6)
CLOSED_QUAD_TOL = 1e-6  # closed-form vs quadrature agreement in sweeps


@dataclass(frozen=True)
class SweepRecord:
    """One row of a sharpness/verification sweep."""

    setting: Setting
    family: str
    delta: float | None
    p: float | None
    q: float | None
    lhs: LogValue | None
    bound_constant: LogValue | None
    rhs: LogValue | None
    ratio: float | None
    passed: bool | None
    notes: str = ""


def ratio_ordinary(m: int, delta: float, p: float) -> float:
    """|f_delta|_q(p) / (K_m(p) |grad f_delta|_p) for the ordinary
    inequality on R^m; q(p) = m p/(m - p).  Always <= 1."""
    if not 1.0 < p < m:
        raise DomainError(f"p must lie in (1, {m}), got p={p!r}")
    q = m * p / (m - p)
    log_ratio = (
        radial.logpow_norm_closed(m, delta, q).value.log_abs
        - constants.talenti(m, p).value.log_abs
        - radial.logpow_grad_norm_closed(m, delta, p).value.log_abs
    )
    return math.exp(log_ratio)


def ratio_limit_ordinary(m: int, delta: float) -> float:
    """Closed-form limit of ratio_ordinary as p -> m."""
    if int(m) != m or m < 3:
        raise DomainError(f"need an integer m >= 3, got {m!r}")
    if not delta > 1.0:
        raise DomainError(
            f"the closed-form limit needs delta > 1 (at delta = 1 take the "
            f"direct p -> m limit of ratio_ordinary), got delta={delta!r}"
        )
    m = int(m)
    log_val = (
        (delta - 1.0) * math.log(delta)
        - delta
        + delta * math.log(m)
        - (1.0 - 1.0 / m) * math.log(m - 1.0)
        - specfun.log_gamma((delta - 1.0) * m + 1.0) / m
    )
    return math.exp(log_val)


def v000(delta: float) -> float:
    """e^-1 (delta/(delta-1))^(delta-1): the large-m limit of the ratio
    limit.  Strictly increasing in delta with limit 1."""
    if not delta > 1.0:
        raise DomainError(f"v000 needs delta > 1, got delta={delta!r}")
    return math.exp((delta - 1.0) * math.log1p(1.0 / (delta - 1.0)) - 1.0)


def ratio_trace(m: int, n: int, delta: float, p: float) -> float:
    """|S[f_delta]|_q(p) / (K_bound(p) |grad f_delta|_p) for the trace
    inequality; q(p) = m p/(N - p), K_bound the best available upper bound.
    Always <= 1 since the bound dominates the true constant."""
    s = Setting(int(m), int(n), 0.0)
    lo, hi = p_range(s)
    if not max(lo, 1.0) < p < hi:
        raise DomainError(f"p must lie in ({max(lo, 1.0):g}, {hi:g}), got p={p!r}")
    N = s.N
    q = m * p / (N - p)
    log_ratio = (
        radial.logpow_norm_closed(m, delta, q).value.log_abs
        - constants.trace_upper(m, n, p).value.log_abs
        - radial.logpow_grad_norm_closed(N, delta, p).value.log_abs
    )
    return math.exp(log_ratio)


def richardson_limit(ratio_fn, p_hi: float, js=DEFAULT_LADDER) -> tuple[float, float]:
    """Richardson estimate of lim ratio_fn(p) as p -> p_hi from below.

    Evaluates at p_j = p_hi - 10^-j assuming first-order convergence in
    10^-j; the last two j give the estimate, the previous pair gives a
    stability measure (difference between consecutive estimates).
    """
    js = sorted(js)
    if len(js) < 3:
        raise DomainError("richardson_limit needs at least three ladder indices")
    vals = {j: ratio_fn(p_hi - 10.0 ** (-j)) for j in js}
    def extrap(j0, j1):
        r0, r1 = vals[j0], vals[j1]
        # eps1/(eps0 - eps1) with eps = 10^-j
        factor = 10.0 ** (-j1) / (10.0 ** (-j0) - 10.0 ** (-j1))
        return r1 + (r1 - r0) * factor
    est = extrap(js[-2], js[-1])
    est_prev = extrap(js[-3], js[-2])
    return est, abs(est - est_prev)


def verify_sobolev(f: radial.RadialProfile, m: int, p: float) -> SweepRecord:
    """Quadrature check of the ordinary inequality for an arbitrary profile:
    |f|_q <= K_m(p) |grad f|_p with q = m p/(m-p)."""
    if f.dim != m:
        raise DomainError(f"profile lives on R^{f.dim}, expected R^{m}")
    s = Setting(int(m), 0, 0.0)
    if not 1.0 < p < m:
        raise DomainError(f"p must lie in (1, {m}), got p={p!r}")
    q = q_of_p(s, p)
    notes = ""
    passed: bool | None = None
    lhs = bound = rhs = None
    ratio = None
    try:
        lhs = radial.lp_norm_quad(f, q).value
        grad = radial.grad_lp_norm(f, p).value
        bound = constants.talenti(m, p).value
        rhs = bound * grad
        ratio = (lhs / rhs).to_linear() if rhs.sign != 0 else (0.0 if lhs.sign == 0 else math.inf)
        passed = ratio <= 1.0 + PASS_SLACK
    except DivergenceError as exc:
        notes = f"divergence: {exc}"
    return SweepRecord(s, f.family, f.delta, p, q, lhs, bound, rhs, ratio, passed, notes)


def verify_gls_theorem1(
    m: int, delta: float, psi: gls.PsiFunction | None = None
) -> SweepRecord:
    """GLS-level check of the ordinary inequality for the log-power family.

    lhs = GLS norm of the function-norm curve against the nu-transform of
    psi, rhs = GLS norm of the gradient-norm curve against psi; the natural
    psi normalizes rhs to 1.  Pass iff lhs <= rhs (1 + 1e-9).
    """
    s = Setting(int(m), 0, 0.0)
    profile = radial.logpow_profile(m, delta)
    if psi is None:
        psi = gls.natural_psi(profile, "gradient", (1.0, float(m)))
    notes = ""
    passed: bool | None = None
    lhs = rhs = None
    ratio = None
    try:
        nu = gls.nu_transform(psi, m)
        f_curve = lambda q: radial.logpow_norm_closed(m, delta, q).value
        g_curve = lambda p: radial.logpow_grad_norm_closed(m, delta, p).value
        lhs_res = gls.gls_norm(f_curve, nu)
        rhs_res = gls.gls_norm(g_curve, psi)
        lhs, rhs = lhs_res.value, rhs_res.value
        if rhs.sign == 0:
            ratio = 0.0 if lhs.sign == 0 else math.inf
        else:
            ratio = (lhs / rhs).to_linear()
        passed = ratio <= 1.0 + PASS_SLACK
        notes = (
            f"argmax_q={lhs_res.argmax_p:.6g}; argmax_p={rhs_res.argmax_p:.6g}"
        )
    except DivergenceError as exc:
        notes = f"infinite GLS norm: {exc}"
    return SweepRecord(s, "logpow", delta, None, None, lhs, None, rhs, ratio,
                       passed, notes)


def _interior_grid(lo: float, hi: float, count: int) -> list[float]:
    """count interior points of a uniform partition of (lo, hi)."""
    step = (hi - lo) / (count + 1)
    return [lo + (i + 1) * step for i in range(count)]


def _p_grid(s: Setting, cfg: SweepConfig) -> list[float]:
    lo, hi = p_range(s)
    lo = max(lo, 1.0)
    if cfg.p_values is not None:
        return list(cfg.p_values)
    if cfg.p_ladder is not None:
        return [hi - 10.0 ** (-j) for j in sorted(cfg.p_ladder)]
    return _interior_grid(lo, hi, cfg.p_count or 16)


def _error_record(s, family, delta, p, q, exc) -> SweepRecord:
    return SweepRecord(s, family, delta, p, q, None, None, None, None, None,
                       f"error: {type(exc).__name__}: {exc}")


def _ordinary_logpow_record(s: Setting, delta: float, p: float) -> SweepRecord:
    m = s.m
    q = m * p / (m - p)
    lhs = radial.logpow_norm_closed(m, delta, q).value
    bound = constants.talenti(m, p).value
    grad = radial.logpow_grad_norm_closed(m, delta, p).value
    rhs = bound * grad
    ratio = (lhs / rhs).to_linear()
    return SweepRecord(s, "logpow", delta, p, q, lhs, bound, rhs, ratio,
                       ratio <= 1.0 + PASS_SLACK)


def _trace_record(s: Setting, delta: float, p: float) -> SweepRecord:
    m, n, N = s.m, s.n, s.N
    q = m * p / (N - p)
    lhs = radial.logpow_norm_closed(m, delta, q).value
    bound = constants.trace_upper(m, n, p).value
    grad = radial.logpow_grad_norm_closed(N, delta, p).value
    rhs = bound * grad
    ratio = (lhs / rhs).to_linear()
    return SweepRecord(s, "logpow", delta, p, q, lhs, bound, rhs, ratio,
                       ratio <= 1.0 + PASS_SLACK)


def _weighted_record(s: Setting, delta: float, q: float) -> SweepRecord:
    """Closed form vs quadrature for the weighted trace norm; pass iff the
    two routes agree to CLOSED_QUAD_TOL relative."""
    profile = radial.logpow_profile(s.m, delta)
    closed = radial.weighted_trace_norm_closed(s.m, delta, q, s.alpha).value
    quad_norm = radial.weighted_trace_norm_quad(profile, q, s.alpha).value
    ratio = (quad_norm / closed).to_linear()
    return SweepRecord(
        s, "logpow", delta, None, q, quad_norm, None, closed, ratio,
        abs(ratio - 1.0) <= CLOSED_QUAD_TOL, "closed-form agreement",
    )


def _convergence_record(s: Setting, delta: float, family: str,
                        ratio_fn, p_hi: float, js) -> SweepRecord:
    est, stability = richardson_limit(ratio_fn, p_hi, js)
    passed = est <= 1.0 + PASS_SLACK
    notes = f"richardson p->{p_hi:g} (j={','.join(str(j) for j in sorted(js))}); stability={stability:.3e}"
    if delta > 1.0 and s.n == 0:
        closed = ratio_limit_ordinary(s.m, delta)
        notes += f"; closed-form limit={closed:.9f}"
        passed = passed and abs(est - closed) <= 1e-3
    return SweepRecord(s, family, delta, p_hi, None, None, None, None, est,
                       passed, notes)


def _hardy_record(s: Setting, delta: float | None, p: float, g_kind: str) -> SweepRecord:
    from . import hardy as hd

    m, n, N = s.m, s.n, s.N
    q = m * p / (N - p)
    weights = hd.trace_power_weights(m, n, p)
    if g_kind == "indicator":
        g = lambda t: 1.0 if 0.0 < t < 1.0 else 0.0
    elif g_kind == "zero":
        g = lambda t: 0.0
    elif g_kind == "logpow_deriv":
        d = delta if delta is not None else 1.0
        g = lambda t: d * (-math.log(t)) ** (d - 1.0) / t if 0.0 < t < 1.0 else 0.0
    else:
        raise DomainError(f"unknown g kind {g_kind!r}")
    res = hd.hardy_check(g, weights, p, q, g_support=1.0)
    lhs = LogValue.from_linear(res.lhs)
    rhs = LogValue.from_linear(res.rhs_high)
    bound = hd.bradley_B_sup(weights, p, q).value * constants.bradley_Q(p, q).value
    if rhs.sign == 0:
        ratio = 0.0 if lhs.sign == 0 else math.inf
    else:
        ratio = (lhs / rhs).to_linear()
    return SweepRecord(s, f"g:{g_kind}", delta, p, q, lhs, bound, rhs, ratio,
                       res.passed, f"bracket=[{res.rhs_low:.9g}, {res.rhs_high:.9g}]")


def sweep(cfg: SweepConfig) -> list[SweepRecord]:
    """Evaluate the configured target over its Cartesian grid.

    Rows come out in lexicographic grid order; for the ordinary and trace
    targets with the log-power family a Richardson convergence row is
    appended per (setting, delta).  Individual cell errors are recorded
    in-row; a sweep never aborts on a cell.
    """
    records: list[SweepRecord] = []
    js = cfg.p_ladder if cfg.p_ladder is not None else DEFAULT_LADDER
    ns = cfg.n or (0,)
    alphas = cfg.alpha or (0.0,)
    deltas = cfg.delta or (None,)

    if cfg.target == "ordinary":
        for m in cfg.m:
            s = Setting(m, 0, 0.0)
            grid = _p_grid(s, cfg)
            for delta in deltas:
                for p in grid:
                    try:
                        if cfg.family == "logpow":
                            records.append(_ordinary_logpow_record(s, delta, p))
                        else:
                            profile = (radial.gaussian_profile(m)
                                       if cfg.family == "gaussian"
                                       else radial.bump_profile(m))
                            records.append(verify_sobolev(profile, m, p))
                    except (DomainError, DivergenceError) as exc:
                        records.append(_error_record(s, cfg.family, delta, p, None, exc))
        if cfg.family == "logpow":
            for m in cfg.m:
                s = Setting(m, 0, 0.0)
                for delta in deltas:
                    try:
                        records.append(_convergence_record(
                            s, delta, "logpow",
                            lambda p, m=m, d=delta: ratio_ordinary(m, d, p),
                            float(m), js))
                    except (DomainError, DivergenceError) as exc:
                        records.append(_error_record(s, "logpow", delta, None, None, exc))
        return records

    if cfg.target == "trace":
        for m in cfg.m:
            for n in ns:
                s = Setting(m, n, 0.0)
                grid = _p_grid(s, cfg)
                for delta in deltas:
                    for p in grid:
                        try:
                            records.append(_trace_record(s, delta, p))
                        except (DomainError, DivergenceError) as exc:
                            records.append(_error_record(s, "logpow", delta, p, None, exc))
        for m in cfg.m:
            for n in ns:
                s = Setting(m, n, 0.0)
                for delta in deltas:
                    try:
                        records.append(_convergence_record(
                            s, delta, "logpow",
                            lambda p, m=m, n=n, d=delta: ratio_trace(m, n, d, p),
                            float(m + n), js))
                    except (DomainError, DivergenceError) as exc:
                        records.append(_error_record(s, "logpow", delta, None, None, exc))
        return records

    if cfg.target == "weighted":
        for m in cfg.m:
            for delta in deltas:
                for a in alphas:
                    for q in cfg.q_values:
                        try:
                            s = Setting(m, 0, a)
                            records.append(_weighted_record(s, delta, q))
                        except (DomainError, DivergenceError) as exc:
                            s = Setting(m, 0, a)
                            records.append(_error_record(s, "logpow", delta, None, q, exc))
        return records

    if cfg.target == "gls_theorem1":
        for m in cfg.m:
            for delta in deltas:
                try:
                    psi = _build_psi(cfg, m, delta)
                    records.append(verify_gls_theorem1(m, delta, psi))
                except (DomainError, DivergenceError) as exc:
                    records.append(_error_record(Setting(m, 0, 0.0), "logpow",
                                                 delta, None, None, exc))
        return records

    if cfg.target == "hardy":
        for m in cfg.m:
            for n in ns:
                s = Setting(m, n, 0.0)
                grid = _p_grid(s, cfg)
                for delta in deltas:
                    for p in grid:
                        try:
                            records.append(_hardy_record(s, delta, p, cfg.g_kind))
                        except (DomainError, DivergenceError) as exc:
                            records.append(_error_record(s, f"g:{cfg.g_kind}",
                                                         delta, p, None, exc))
        return records

    raise DomainError(f"unknown sweep target {cfg.target!r}")


def _build_psi(cfg: SweepConfig, m: int, delta: float) -> gls.PsiFunction | None:
    spec = cfg.psi
    if spec is None or spec.kind == "natural":
        if spec is not None and spec.norm_kind == "function":
            profile = radial.logpow_profile(m, delta)
            return gls.natural_psi(profile, "function", (1.0, float(m)))
        return None  # verify_gls_theorem1 defaults to the natural gradient psi
    interval = (1.0, float(m))
    if spec.kind == "power_blowup":
        return gls.power_blowup(interval, spec.beta, spec.endpoint)
    if spec.kind == "constant":
        return gls.constant_psi(interval, spec.value)
    raise DomainError(f"unknown psi kind {spec.kind!r}")
