"""Exponent algebra for the unified Sobolev / trace / weighted-trace setting.

A :class:`Setting` bundles the trace target dimension ``m``, the co-dimension
``n`` and the weight exponent ``alpha``.  The ordinary Sobolev case is
``(n=0, alpha=0)``, the trace case ``(n>=1, alpha=0)``, and ``alpha in (0,1]``
gives the weighted trace case.  The critical exponent map is

    q(p) = m*p / (N - p*(1-alpha)),      N = m + n,

which specializes to m*p/(m-p) (ordinary) and m*p/(N-p) (trace).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DivergenceError, DomainError

__all__ = ["Setting", "q_of_p", "p_of_q", "p_range", "dilation_balance"]


@dataclass(frozen=True)
class Setting:
    """Exponent context: target dimension m, co-dimension n, weight alpha."""

    m: int
    n: int = 0
    alpha: float = 0.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"m must be an integer >= 1, got {self.m!r}")
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be an integer >= 0, got {self.n!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if self.n == 0 and self.alpha == 0.0 and self.m < 3:
            raise DomainError(
                f"the ordinary Sobolev setting needs m >= 3, got m={self.m}"
            )
        if self.n >= 1 and self.alpha == 0.0 and self.N < 3:
            raise DomainError(
                f"the trace setting needs N = m + n >= 3, got N={self.N}"
            )
        lo, hi = p_range(self)
        if not lo < hi:
            raise DomainError(
                f"empty admissible p-range ({lo}, {hi}) for m={self.m}, "
                f"n={self.n}, alpha={self.alpha}"
            )

    @property
    def N(self) -> int:
        return self.m + self.n


def p_range(s: Setting) -> tuple[float, float]:
    """Open admissible interval (p_lo, p_hi) for the gradient exponent.

    p_lo = max(N/(m+1-alpha), 1) and p_hi = N/(1-alpha), with p_hi = +inf at
    alpha = 1.  The ordinary case (n=0, alpha=0) yields (1, m).
    """
    N = float(s.m + s.n)
    lo = max(N / (s.m + 1.0 - s.alpha), 1.0)
    hi = math.inf if s.alpha == 1.0 else N / (1.0 - s.alpha)
    return (lo, hi)


def _check_p(s: Setting, p: float) -> None:
    lo, hi = p_range(s)
    # Closed evaluation at the lower endpoint is permitted: the q-map is
    # finite there.  The upper endpoint is the pole of the map.
    if not (lo <= p < hi):
        raise DomainError(f"p must lie in ({lo:g}, {hi:g}), got p={p!r}")


def q_of_p(s: Setting, p: float) -> float:
    """Critical exponent q = m*p / (N - p*(1-alpha))."""
    _check_p(s, p)
    denom = s.N - p * (1.0 - s.alpha)
    if not denom > 0.0:
        raise DomainError(f"N - p*(1-alpha) must be positive, got {denom!r}")
    return s.m * p / denom

def p_of_q(s: Setting, q: float) -> float:
    """Inverse map p = q*N / (m + q*(1-alpha)); exact inverse of q_of_p."""
    if not q >= 1.0:
        raise DomainError(f"p_of_q requires q >= 1, got q={q!r}")
    return q * s.N / (s.m + q * (1.0 - s.alpha))


def dilation_balance(s: Setting, p: float) -> float:
    """Solve the scaling-balance equation m/q - alpha = N/p - 1 for q.

    Both sides of the weighted trace inequality scale as powers of the
    dilation parameter; equating the exponents forces q to coincide with
    q_of_p (an algebraic identity, so the two routes agree to rounding).
    """
    denom = s.N / p - 1.0 + s.alpha
    if not denom > 0.0:
        raise DivergenceError(
            f"no finite dilation balance: N/p - 1 + alpha = {denom!r} <= 0"
        )
    return s.m / denom
