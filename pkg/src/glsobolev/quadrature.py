"""Thin wrapper around adaptive Gauss-Kronrod quadrature (QUADPACK via
scipy) with a uniform divergence policy.

Tolerances are pinned at 1e-10 absolute / 1e-10 relative with a subdivision
cap of 10^4 intervals.  Non-convergence, a QUADPACK warning, or a non-finite
result all raise :class:`~glsobolev.errors.DivergenceError`; this doubles as
the pole detector for integrands that cross into non-integrability.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable

from scipy.integrate import IntegrationWarning, quad

from .errors import DivergenceError

__all__ = ["integrate", "EPS_ABS", "EPS_REL", "SUBDIVISION_LIMIT"]

EPS_ABS = 1e-10
EPS_REL = 1e-10
SUBDIVISION_LIMIT = 10_000


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    eps_abs: float = EPS_ABS,
    eps_rel: float = EPS_REL,
    limit: int = SUBDIVISION_LIMIT,
) -> tuple[float, float]:
    """Integrate f over (a, b); b may be +inf.  Returns (value, error bound).

    Raises DivergenceError when the adaptive scheme does not converge within
    the subdivision cap or the result is not finite.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        try:
            res = quad(f, a, b, epsabs=eps_abs, epsrel=eps_rel, limit=limit,
                       full_output=1)
        except Exception as exc:  # quadpack can raise on pathological input
            raise DivergenceError(f"quadrature failed on ({a}, {b}): {exc}") from exc
    if len(res) > 3:
        message = " ".join(str(res[3]).split())
        raise DivergenceError(
            f"quadrature did not converge on ({a}, {b}): {message}"
        )
    value, err = res[0], res[1]
    if not (math.isfinite(value) and math.isfinite(err)):
        raise DivergenceError(
            f"quadrature produced a non-finite result on ({a}, {b}): "
            f"value={value!r}, error={err!r}"
        )
    return value, err
