"""Grand Lebesgue Space machinery.

The GLS norm of f against a generating function psi on the open interval
(A, B) is sup over p in (A, B) of |f|_p / psi(p).  The supremum is located
by a coarse grid scan followed by golden-section refinement; an unbounded B
is handled through the substitution p = A + t/(1-t), t in (0, 1).

The nu/zeta/theta transforms push a generating function through the
exponent maps of the ordinary, trace, and weighted-trace inequalities,
multiplying in the matching constant curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import constants, radial
from .errors import DivergenceError, DomainError, UnsupportedConfigurationError
from .exponents import Setting, p_range
from .optimize import golden_section_max
from .specfun import LogValue

__all__ = [
    "PsiFunction",
    "GlsNormResult",
    "constant_psi",
    "power_blowup",
    "tabulated_psi",
    "natural_psi",
    "gls_norm",
    "nu_transform",
    "zeta_transform",
    "theta_transform",
]

ENDPOINT_MARGIN = 1e-6
GRID_POINTS = 64


@dataclass(frozen=True)
class PsiFunction:
    """A generating function on an open interval (A, B), 1 <= A < B <= inf.

    Values are strictly positive on the interval; evaluation outside raises
    (never extrapolates).  ``log_value`` is the native representation, so
    blow-up endpoints cause no overflow.
    """

    interval: tuple[float, float]
    kind: str
    log_eval: Callable[[float], float]

    def __post_init__(self):
        a, b = self.interval
        if not (1.0 <= a < b):
            raise DomainError(f"need 1 <= A < B, got interval ({a}, {b})")

    def log_value(self, p: float) -> float:
        a, b = self.interval
        if not (a < p < b):
            raise DomainError(
                f"psi of kind {self.kind!r} is defined on ({a:g}, {b:g}), "
                f"got p={p!r}"
            )
        return self.log_eval(p)

    def __call__(self, p: float) -> float:
        try:
            return math.exp(self.log_value(p))
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class GlsNormResult:
    value: LogValue
    argmax_p: float
    evaluations: int
    converged: bool

    def to_linear(self) -> float:
        return self.value.to_linear()


def constant_psi(interval: tuple[float, float], value: float = 1.0) -> PsiFunction:
    if not value > 0.0:
        raise DomainError(f"psi must be positive, got constant {value!r}")
    log_c = math.log(value)
    return PsiFunction(tuple(interval), f"constant({value:g})", lambda p: log_c)


def power_blowup(
    interval: tuple[float, float], beta: float, endpoint: str = "upper"
) -> PsiFunction:
    """psi(p) = (B - p)^(-beta) or (p - A)^(-beta), blowing up at one end."""
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    a, b = interval
    if endpoint == "upper":
        if math.isinf(b):
            raise DomainError("power blow-up at an infinite upper endpoint")
        log_eval = lambda p: -beta * math.log(b - p)
    elif endpoint == "lower":
        log_eval = lambda p: -beta * math.log(p - a)
    else:
        raise DomainError(f"endpoint must be 'lower' or 'upper', got {endpoint!r}")
    return PsiFunction(tuple(interval), f"power_blowup(beta={beta:g},{endpoint})",
                       log_eval)


def tabulated_psi(points: list[tuple[float, float]]) -> PsiFunction:
    """psi from a table of (p, value) pairs, log-linear interpolation."""
    pts = sorted(points)
    if len(pts) < 2:
        raise DomainError("tabulated psi needs at least two points")
    ps = np.array([p for p, _ in pts], dtype=float)
    vals = np.array([v for _, v in pts], dtype=float)
    if np.any(vals <= 0.0):
        raise DomainError("tabulated psi values must be positive")
    if np.any(np.diff(ps) <= 0.0):
        raise DomainError("tabulated psi abscissae must be strictly increasing")
    logs = np.log(vals)

    def log_eval(p: float) -> float:
        return float(np.interp(p, ps, logs))

    return PsiFunction((float(ps[0]), float(ps[-1])), "tabulated", log_eval)


def natural_psi(
    f: radial.RadialProfile,
    norm_kind: str,
    interval: tuple[float, float],
) -> PsiFunction:
    """The generating function built from f's own norm curve,
    psi(p) = |f|_p (norm_kind "function") or |grad f|_p ("gradient").

    Uses the closed forms for the log-power family, quadrature otherwise.
    The norms are probed on the interval at construction; an infinite norm
    raises a domain error identifying the offending p.
    """
    if norm_kind not in ("function", "gradient"):
        raise DomainError(f"norm_kind must be 'function' or 'gradient', got {norm_kind!r}")

    if f.family == "logpow":
        if norm_kind == "gradient":
            log_eval = lambda p: radial.logpow_grad_norm_closed(f.dim, f.delta, p).value.log_abs
        else:
            log_eval = lambda p: radial.logpow_norm_closed(f.dim, f.delta, p).value.log_abs
    else:
        if norm_kind == "gradient":
            log_eval = lambda p: radial.grad_lp_norm(f, p).value.log_abs
        else:
            log_eval = lambda p: radial.lp_norm_quad(f, p).value.log_abs

    a, b = interval
    probe_hi = b if math.isfinite(b) else a + 64.0
    w = probe_hi - a
    for p in np.linspace(a + ENDPOINT_MARGIN * w, probe_hi - ENDPOINT_MARGIN * w, 9):
        try:
            log_eval(float(p))
        except (DivergenceError, DomainError) as exc:
            raise DomainError(
                f"natural psi: the {norm_kind} norm is not finite at p={float(p):g}: {exc}"
            ) from exc

    kind = f"natural({f.family},{norm_kind})"
    return PsiFunction(tuple(interval), kind, log_eval)


def _as_log(value) -> float:
    if isinstance(value, LogValue):
        return value.log_abs
    if isinstance(value, constants.ConstantResult):
        return value.value.log_abs
    v = float(value)
    if not v > 0.0:
        raise DomainError(f"bound curve must be positive, got {v!r}")
    return math.log(v)


def gls_norm(
    f_norm: Callable[[float], LogValue],
    psi: PsiFunction,
    *,
    grid_points: int = GRID_POINTS,
) -> GlsNormResult:
    """sup over p in (A, B) of f_norm(p) / psi(p).

    Coarse grid scan (with endpoint margins) plus golden-section refinement
    in the best cell; ties break to the smallest argmax.  If the maximum
    sits in an outermost cell the margin is pushed toward the endpoint in
    stages; a supremum that keeps growing without saturating is reported as
    an infinite norm via DivergenceError.
    """
    a, b = psi.interval
    infinite = math.isinf(b)
    evals = 0
    failures = 0

    if infinite:
        to_p = lambda t: a + t / (1.0 - t)
        lo_c, hi_c = ENDPOINT_MARGIN, 1.0 - ENDPOINT_MARGIN
    else:
        to_p = lambda x: x
        w = b - a
        lo_c, hi_c = a + ENDPOINT_MARGIN * w, b - ENDPOINT_MARGIN * w

    def log_ratio(coord: float) -> float:
        nonlocal evals, failures
        evals += 1
        p = to_p(coord)
        try:
            lv = f_norm(p)
        except DivergenceError:
            failures += 1
            return -math.inf
        return lv.log_abs - psi.log_value(p)

    coords = np.linspace(lo_c, hi_c, grid_points)
    values = np.array([log_ratio(float(c)) for c in coords])
    if failures > grid_points // 2:
        raise DivergenceError(
            f"f_norm diverges on {failures}/{grid_points} grid points of "
            f"({a:g}, {b:g})"
        )
    best_i = int(np.argmax(values))
    best_c, best_v = float(coords[best_i]), float(values[best_i])

    lo_b = float(coords[max(best_i - 1, 0)])
    hi_b = float(coords[min(best_i + 1, grid_points - 1)])
    x, v, n = golden_section_max(log_ratio, lo_b, hi_b)
    if v > best_v:
        best_c, best_v = x, v

    converged = True
    if best_i in (0, grid_points - 1):
        at_upper = best_i == grid_points - 1
        end = (1.0 if infinite else b) if at_upper else (0.0 if infinite else a)
        dist = abs(end - best_c) if best_c != end else ENDPOINT_MARGIN
        increments = []
        for _stage in range(3):
            new_dist = dist / 100.0
            sub = np.geomspace(dist, new_dist, 13)[1:]
            stage_best_c, stage_best_v = best_c, -math.inf
            for d in sub:
                c = end - d if at_upper else end + d
                v = log_ratio(float(c))
                if v > stage_best_v:
                    stage_best_c, stage_best_v = float(c), v
            inc = max(0.0, stage_best_v - best_v)
            increments.append(inc)
            if stage_best_v > best_v:
                best_c, best_v = stage_best_c, stage_best_v
            dist = new_dist
        # Saturation: increments must shrink.  Persistent growth of the
        # grid maximum under margin refinement means the sup is infinite.
        growing = all(i > 1e-7 for i in increments) and (
            increments[2] > 0.5 * increments[1]
            and increments[1] > 0.5 * increments[0]
        )
        if growing:
            raise DivergenceError(
                f"GLS norm appears infinite: the ratio keeps growing toward "
                f"the {'upper' if at_upper else 'lower'} endpoint of "
                f"({a:g}, {b:g}) under margin refinement"
            )

    return GlsNormResult(
        value=LogValue.from_log(best_v),
        argmax_p=to_p(best_c),
        evaluations=evals,
        converged=converged,
    )


def _mapped_interval(
    p_lo: float, p_hi: float, q_at: Callable[[float], float], pole: float
) -> tuple[float, float]:
    """Map an open p-interval through an increasing q-map with a pole."""
    q_lo = q_at(p_lo)
    q_hi = math.inf if p_hi >= pole else q_at(p_hi)
    return (q_lo, q_hi)


def nu_transform(psi: PsiFunction, m: int) -> PsiFunction:
    """Transform for the ordinary inequality: nu(q) = K_m(p(q)) psi(p(q))
    with p(q) = m q / (m + q), defined for q in (m/(m-1), inf)."""
    s = Setting(int(m), 0, 0.0)
    a, b = psi.interval
    p_lo, p_hi = max(a, 1.0), min(b, float(m))
    if not p_lo < p_hi:
        raise DomainError(
            f"psi on ({a:g}, {b:g}) does not overlap the admissible range (1, {m})"
        )
    q_at = lambda p: m * p / (m - p)
    q_lo = m / (m - 1.0) if p_lo <= 1.0 else q_at(p_lo)
    interval = (q_lo, math.inf if p_hi >= m else q_at(p_hi))

    def log_eval(q: float) -> float:
        p = m * q / (m + q)
        return constants.talenti(m, p).value.log_abs + psi.log_value(p)

    return PsiFunction(interval, f"nu[m={m}]({psi.kind})", log_eval)


def zeta_transform(psi: PsiFunction, m: int, n: int) -> PsiFunction:
    """Transform for the trace inequality: zeta(q) = K(p(q)) psi(p(q)) with
    p(q) = q N / (m + q) and K the best available trace upper bound."""
    if n < 1:
        raise DomainError(f"the trace transform needs n >= 1, got n={n!r}")
    s = Setting(int(m), int(n), 0.0)
    N = s.N
    lo, hi = p_range(s)
    a, b = psi.interval
    p_lo, p_hi = max(a, lo), min(b, hi)
    if not p_lo < p_hi:
        raise DomainError(
            f"psi on ({a:g}, {b:g}) does not overlap the trace range ({lo:g}, {hi:g})"
        )
    q_at = lambda p: m * p / (N - p)
    interval = _mapped_interval(p_lo, p_hi, q_at, float(N))

    def log_eval(q: float) -> float:
        p = q * N / (m + q)
        return constants.trace_upper(m, n, p).value.log_abs + psi.log_value(p)

    return PsiFunction(interval, f"zeta[m={m},n={n}]({psi.kind})", log_eval)


def theta_transform(
    psi: PsiFunction,
    m: int,
    n: int,
    alpha: float,
    bound: Callable[[float], object] | None = None,
) -> PsiFunction:
    """Transform for the weighted trace inequality:
    theta(q) = psi(p(q)) * K(p(q)) with p(q) = q N / (m + q (1-alpha)).

    No computable expression for the weighted trace constant exists here, so
    the bound curve is caller-supplied (a callable p -> positive value).
    """
    if bound is None:
        raise UnsupportedConfigurationError(
            "theta_transform needs an explicit bound curve for the weighted "
            "trace constant; none is available by default"
        )
    s = Setting(int(m), int(n), float(alpha))
    N = s.N
    lo, hi = p_range(s)
    a, b = psi.interval
    p_lo, p_hi = max(a, lo), min(b, hi)
    if not p_lo < p_hi:
        raise DomainError(
            f"psi on ({a:g}, {b:g}) does not overlap the weighted range "
            f"({lo:g}, {hi:g})"
        )
    q_at = lambda p: m * p / (N - p * (1.0 - alpha))
    interval = _mapped_interval(p_lo, p_hi, q_at, hi)

    def log_eval(q: float) -> float:
        p = q * N / (m + q * (1.0 - alpha))
        return psi.log_value(p) + _as_log(bound(p))

    return PsiFunction(
        interval, f"theta[m={m},n={n},alpha={alpha:g}]({psi.kind})", log_eval
    )
