"""Weighted Hardy (Bradley) inequality machinery.

For weights u, v >= 0 and 1 < p <= q < inf the tail-integral operator
satisfies

    ( int_0^inf [u(x) int_x^inf g(t) dt]^q dx )^(1/q)
        <= C ( int_0^inf [v(x) g(x)]^p dx )^(1/p)

with B <= C <= B * Q(p), where B = sup_{w>0} J_1(w) J_2(w),

    J_1(w) = ( int_0^w u^q )^(1/q),
    J_2(w) = ( int_w^inf v^(-p/(p-1)) )^((p-1)/p).

The inner J_2 exponent is the standard Muckenhoupt form -p/(p-1); it is the
one that reproduces the evaluated power-weight result
[(p-1)/(N-p)]^(1-1/p) w^(-(N-p)/p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import ConstantResult, bradley_Q
from .errors import DivergenceError, DomainError
from .optimize import golden_section_max
from .quadrature import integrate
from .specfun import LogValue

__all__ = [
    "WeightPair",
    "HardyCheckResult",
    "power_weights",
    "custom_weights",
    "trace_power_weights",
    "j1",
    "j2",
    "bradley_B_sup",
    "hardy_check",
]

W_SEARCH_LO = 1e-6
W_SEARCH_HI = 1e6


@dataclass(frozen=True)
class WeightPair:
    """The weight pair (u, v); u may vanish, v must be positive."""

    u_weight: Callable[[float], float]
    v_weight: Callable[[float], float]
    kind: str = "custom"
    a_u: float | None = None
    a_v: float | None = None


def power_weights(a_u: float, a_v: float) -> WeightPair:
    """u(x) = x^a_u, v(x) = x^a_v."""
    return WeightPair(
        u_weight=lambda x: x ** a_u,
        v_weight=lambda x: x ** a_v,
        kind="power",
        a_u=float(a_u),
        a_v=float(a_v),
    )


def custom_weights(
    u: Callable[[float], float], v: Callable[[float], float]
) -> WeightPair:
    return WeightPair(u_weight=u, v_weight=v, kind="custom")


def trace_power_weights(m: int, n: int, p: float) -> WeightPair:
    """The power pair of the radial trace reduction: u = x^((m-1)/q),
    v = x^((N-1)/p) with N = m + n and q = m p/(N - p)."""
    N = m + n
    if not 0.0 < p < N:
        raise DomainError(f"need 0 < p < N={N}, got p={p!r}")
    q = m * p / (N - p)
    return power_weights((m - 1) / q, (N - 1) / p)


def j1(w: float, weights: WeightPair, q: float) -> LogValue:
    """J_1(w) = ( int_0^w u^q dx )^(1/q)."""
    if not w > 0.0:
        raise DomainError(f"j1 requires w > 0, got {w!r}")
    if not q >= 1.0:
        raise DomainError(f"j1 requires q >= 1, got q={q!r}")
    if weights.kind == "power":
        e = weights.a_u * q
        if e <= -1.0:
            raise DivergenceError(
                f"int_0^w u^q diverges at 0: exponent a_u*q = {e!r} <= -1"
            )
        # int_0^w x^e dx = w^(e+1)/(e+1)
        return LogValue.from_log(((e + 1.0) * math.log(w) - math.log(e + 1.0)) / q)
    val, _ = integrate(lambda x: abs(weights.u_weight(x)) ** q, 0.0, w)
    return LogValue.from_linear(val) ** (1.0 / q)


def j2(w: float, weights: WeightPair, p: float) -> LogValue:
    """J_2(w) = ( int_w^inf v^(-p/(p-1)) dx )^((p-1)/p)."""
    if not w > 0.0:
        raise DomainError(f"j2 requires w > 0, got {w!r}")
    if not p > 1.0:
        raise DomainError(f"j2 requires p > 1, got p={p!r}")
    pp = p / (p - 1.0)
    if weights.kind == "power":
        e = -weights.a_v * pp
        if e >= -1.0:
            raise DivergenceError(
                f"int_w^inf v^(-p/(p-1)) diverges at infinity: "
                f"exponent -a_v*p/(p-1) = {e!r} >= -1"
            )
        # int_w^inf x^e dx = w^(e+1)/(-e-1)
        return LogValue.from_log(
            ((e + 1.0) * math.log(w) - math.log(-e - 1.0)) * (p - 1.0) / p
        )
    # Tail substitution x = w/t maps (w, inf) to (0, 1]; power-law decay
    # becomes a plain endpoint behavior that the adaptive scheme resolves.
    def inner(t: float) -> float:
        return weights.v_weight(w / t) ** (-pp) / (t * t)

    val, _ = integrate(inner, 0.0, 1.0)
    return (LogValue.from_linear(w) * LogValue.from_linear(val)) ** ((p - 1.0) / p)


def bradley_B_sup(weights: WeightPair, p: float, q: float) -> ConstantResult:
    """B = sup over w > 0 of J_1(w) J_2(w).

    For power weights the supremum is finite exactly when the w-powers of
    J_1 and J_2 cancel; the balanced product is returned in closed form and
    an imbalance raises DivergenceError (infinite B).  Custom weights are
    maximized over a log-spaced grid in [1e-6, 1e6] with golden-section
    refinement; a maximum pinned to either search boundary is reported as
    divergent.
    """
    if not p > 1.0:
        raise DomainError(f"the Bradley hypothesis needs p > 1, got p={p!r}")
    if not q >= p:
        raise DomainError(f"the Bradley hypothesis needs p <= q, got p={p!r}, q={q!r}")

    if weights.kind == "power":
        e1 = weights.a_u * q
        if e1 <= -1.0:
            raise DivergenceError(f"J_1 diverges: a_u*q = {e1!r} <= -1")
        pp = p / (p - 1.0)
        e2 = -weights.a_v * pp
        if e2 >= -1.0:
            raise DivergenceError(f"J_2 diverges: -a_v*p/(p-1) = {e2!r} >= -1")
        s1 = (e1 + 1.0) / q                    # J_1 ~ w^s1
        s2 = (-e2 - 1.0) * (p - 1.0) / p       # J_2 ~ w^-s2
        if abs(s1 - s2) > 1e-12 * (abs(s1) + abs(s2) + 1.0):
            raise DivergenceError(
                f"B is infinite for these power weights: J(w) ~ w^{s1 - s2:+.6g} "
                f"is unbounded on (0, inf)"
            )
        log_B = -math.log(e1 + 1.0) / q - math.log(-e2 - 1.0) * (p - 1.0) / p
        return ConstantResult(
            LogValue.from_log(log_B), "bradley_B",
            {"p": p, "q": q, "a_u": weights.a_u, "a_v": weights.a_v},
        )

    def log_J(ln_w: float) -> float:
        w = math.exp(ln_w)
        return (j1(w, weights, q) * j2(w, weights, p)).log_abs

    lo, hi = math.log(W_SEARCH_LO), math.log(W_SEARCH_HI)
    grid = np.linspace(lo, hi, 97)
    vals = [log_J(float(x)) for x in grid]
    best_i = int(np.argmax(vals))
    a = float(grid[max(best_i - 1, 0)])
    b = float(grid[min(best_i + 1, len(grid) - 1)])
    x, v, _ = golden_section_max(log_J, a, b)
    if best_i in (0, len(grid) - 1):
        raise DivergenceError(
            "B appears infinite: J(w) is maximal at the w-search boundary "
            f"w={math.exp(float(grid[best_i])):g}"
        )
    return ConstantResult(LogValue.from_log(v), "bradley_B", {"p": p, "q": q})


@dataclass(frozen=True)
class HardyCheckResult:
    lhs: float
    rhs_low: float
    rhs_high: float
    passed: bool


def hardy_check(
    g: Callable[[float], float],
    weights: WeightPair,
    p: float,
    q: float,
    *,
    g_support: float = math.inf,
) -> HardyCheckResult:
    """Verify the Bradley inequality for a concrete g >= 0.

    lhs  = ( int_0^inf [u(x) int_x^inf g]^q dx )^(1/q)
    rhs  = bracket [B, B*Q(p)] times ( int_0^inf [v g]^p dx )^(1/p)
    pass iff lhs <= rhs_high * (1 + 1e-9).

    ``g_support``: g vanishes beyond it.  A finite value bounds the nested
    tail integrals, which adaptive quadrature needs when g is discontinuous.
    """
    B = bradley_B_sup(weights, p, q)
    Q = bradley_Q(p, q)

    def tail(x: float) -> float:
        if x >= g_support:
            return 0.0
        val, _ = integrate(g, x, g_support, eps_abs=1e-12, eps_rel=1e-11,
                           limit=500)
        return val

    def outer(x: float) -> float:
        u = weights.u_weight(x)
        if u == 0.0:
            return 0.0
        t = tail(x)
        if t <= 0.0:
            return 0.0
        return (u * t) ** q

    lhs_int, _ = integrate(outer, 0.0, g_support)
    lhs = LogValue.from_linear(lhs_int) ** (1.0 / q)

    rhs_int, _ = integrate(
        lambda x: (weights.v_weight(x) * abs(g(x))) ** p, 0.0, math.inf
    )
    rhs_base = LogValue.from_linear(rhs_int) ** (1.0 / p)

    rhs_low = B.value * rhs_base
    rhs_high = rhs_low * Q.value
    lhs_f = lhs.to_linear()
    rhs_high_f = rhs_high.to_linear()
    return HardyCheckResult(
        lhs=lhs_f,
        rhs_low=rhs_low.to_linear(),
        rhs_high=rhs_high_f,
        passed=lhs_f <= rhs_high_f * (1.0 + 1e-9),
    )
