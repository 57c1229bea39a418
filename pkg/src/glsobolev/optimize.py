"""Bounded one-dimensional maximization by golden-section search."""

from __future__ import annotations

import math
from typing import Callable

__all__ = ["golden_section_max"]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(
    fn: Callable[[float], float],
    a: float,
    b: float,
    *,
    rel_tol: float = 1e-12,
    max_iter: int = 200,
) -> tuple[float, float, int]:
    """Maximize fn on [a, b].  Returns (argmax, max value, evaluations).

    Assumes fn is unimodal-enough on the bracket; the caller is expected to
    have located the bracket by a grid scan.  The best sampled point is
    returned, so a maximum at either bracket edge is never lost.
    """
    if not b >= a:
        raise ValueError(f"invalid bracket [{a}, {b}]")
    evals = 0

    def f(x: float) -> float:
        nonlocal evals
        evals += 1
        return fn(x)

    best_x, best_v = a, f(a)
    for x in (b,):
        v = f(x)
        if v > best_v:
            best_x, best_v = x, v

    lo, hi = a, b
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    tol = rel_tol * (abs(a) + abs(b) + 1.0)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
            x, v = c, fc
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
            x, v = d, fd
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v, evals
