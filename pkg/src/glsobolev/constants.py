"""Sharp and upper-bound constants of the Sobolev and trace inequalities.

Provides the Talenti constant K_m(p) of the ordinary inequality, the two
Bradley factors Q(p) and B for power weights, and the two computable upper
bounds for the trace constant (the Bradley route and the Besov-estimate
route) together with their pointwise minimum.  Everything is evaluated in
log domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError
from .exponents import Setting, p_range
from .specfun import LogValue

__all__ = [
    "ConstantResult",
    "talenti",
    "bradley_Q",
    "bradley_B_power",
    "trace_upper_bradley",
    "trace_upper_besov",
    "trace_upper",
]


@dataclass(frozen=True)
class ConstantResult:
    """A positive constant with its kind tag and an echo of the inputs."""

    value: LogValue
    kind: str
    inputs: dict

    def __post_init__(self):
        if self.value.sign != 1:
            raise DomainError(f"constant of kind {self.kind!r} must be positive")

    def to_linear(self) -> float:
        return self.value.to_linear()


def talenti(m: int, p: float) -> ConstantResult:
    """Best constant K_m(p) of the ordinary Sobolev inequality on R^m.

    K_m(p) = pi^(-1/2) m^(-1/p) [(p-1)/(m-p)]^(1-1/p)
             [Gamma(1+m/2) Gamma(m) / (Gamma(m/p) Gamma(1+m-m/p))]^(1/m)

    At p = 1 the middle bracket is 1 (the 0^0 limit, by continuity).
    """
    if int(m) != m or m < 3:
        raise DomainError(f"talenti requires an integer m >= 3, got {m!r}")
    m = int(m)
    if p < 1.0:
        raise DomainError(f"talenti requires p >= 1, got p={p!r}")
    if p >= m:
        raise DomainError(f"talenti has a pole at p = m: need p < {m}, got p={p!r}")
    log_val = -0.5 * math.log(math.pi) - math.log(m) / p
    if p > 1.0:
        log_val += (1.0 - 1.0 / p) * (math.log(p - 1.0) - math.log(m - p))
    log_val += (
        specfun.log_gamma(1.0 + 0.5 * m)
        + specfun.log_gamma(float(m))
        - specfun.log_gamma(m / p)
        - specfun.log_gamma(1.0 + m - m / p)
    ) / m
    return ConstantResult(LogValue.from_log(log_val), "talenti", {"m": m, "p": p})


def bradley_Q(p: float, q: float) -> ConstantResult:
    """The factor Q(p) = p^(1/q) (p/(p-1))^((p-1)/p) of the Bradley bracket.

    The Bradley hypothesis is 1 < p <= q < infinity.
    """
    if not p > 1.0:
        raise DomainError(f"bradley_Q requires p > 1, got p={p!r}")
    if not q >= p:
        raise DomainError(f"bradley_Q requires p <= q, got p={p!r}, q={q!r}")
    log_val = math.log(p) / q + (1.0 - 1.0 / p) * (math.log(p) - math.log(p - 1.0))
    return ConstantResult(LogValue.from_log(log_val), "bradley_Q", {"p": p, "q": q})


def bradley_B_power(m: int, N: int, p: float) -> ConstantResult:
    """Bradley constant B = m^(-1/q) [(p-1)/(N-p)]^(1-1/p) for the power
    weights of the radial trace reduction, with q = m*p/(N-p)."""
    if int(m) != m or m < 1:
        raise DomainError(f"bradley_B_power requires an integer m >= 1, got {m!r}")
    if int(N) != N or N < m:
        raise DomainError(f"bradley_B_power requires an integer N >= m, got {N!r}")
    if not 1.0 < p < N:
        raise DomainError(f"bradley_B_power requires 1 < p < N={N}, got p={p!r}")
    q = m * p / (N - p)
    log_val = -math.log(m) / q + (1.0 - 1.0 / p) * (
        math.log(p - 1.0) - math.log(N - p)
    )
    return ConstantResult(
        LogValue.from_log(log_val), "bradley_B", {"m": m, "N": N, "p": p}
    )


def _trace_context(m: int, n: int, p: float) -> tuple[int, float]:
    s = Setting(int(m), int(n), 0.0)
    lo, hi = p_range(s)
    if not lo < p < hi:
        raise DomainError(f"p must lie in ({lo:g}, {hi:g}), got p={p!r}")
    N = s.N
    q = m * p / (N - p)
    return N, q


def trace_upper_bradley(m: int, n: int, p: float) -> ConstantResult:
    """Upper bound for the trace constant via the Bradley weighted-Hardy
    inequality:

        K+ = Q(p) m^(-1/q) [(p-1)/(N-p)]^(1-1/p) omega(m)^(1/q) omega(N)^(-1/p)

    with q = m*p/(N-p).  Requires p <= q (equivalently p >= n) and p > 1.
    """
    N, q = _trace_context(m, n, p)
    if not p > 1.0:
        raise DomainError(f"the Bradley bound needs p > 1, got p={p!r}")
    value = (
        bradley_Q(p, q).value
        * bradley_B_power(m, N, p).value
        * LogValue.from_log(specfun.log_sphere_measure(m) / q)
        * LogValue.from_log(-specfun.log_sphere_measure(N) / p)
    )
    return ConstantResult(value, "trace_bradley", {"m": m, "n": n, "p": p})


def trace_upper_besov(m: int, n: int, p: float) -> ConstantResult:
    """Upper bound for the trace constant via the Besov-type estimate:

        K1 = omega(N)^(1/p) omega(m)^(-1/q)
             [(p(m-1)+N)/(m(N-p))]^(1-(p-n)/(mp))

    with q = m*p/(N-p).
    """
    N, q = _trace_context(m, n, p)
    log_val = (
        specfun.log_sphere_measure(N) / p
        - specfun.log_sphere_measure(m) / q
        + (1.0 - (p - n) / (m * p))
        * (math.log(p * (m - 1) + N) - math.log(m * (N - p)))
    )
    return ConstantResult(LogValue.from_log(log_val), "trace_besov",
                          {"m": m, "n": n, "p": p})


def trace_upper(m: int, n: int, p: float) -> ConstantResult:
    """Best available upper bound: the minimum of the Bradley and Besov
    bounds.  The Bradley bound only exists where its hypothesis p <= q
    holds; outside that region the Besov bound stands alone.
    """
    N, q = _trace_context(m, n, p)
    best = trace_upper_besov(m, n, p).value
    if p > 1.0 and q >= p:
        candidate = trace_upper_bradley(m, n, p).value
        if candidate < best:
            best = candidate
    return ConstantResult(best, "trace_min", {"m": m, "n": n, "p": p})
