"""Radial functions on R^dim and their L_p machinery.

A :class:`RadialProfile` carries the one-dimensional profile g(r) and its
derivative; the gradient magnitude of a radial function is |g'(|x|)| exactly,
so every norm reduces to a one-dimensional integral

    |f|_p^p = omega(dim) * int_0^inf r^(dim-1) |g(r)|^p dr.

On (0, 1] the integrals are computed after the substitution r = exp(-s),
which turns the log-power profiles into Gamma-type integrands and removes
the logarithmic endpoint singularity that stalls adaptive quadrature.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable

from . import specfun
from .errors import DivergenceError, DomainError
from .quadrature import integrate
from .specfun import LogValue

__all__ = [
    "RadialProfile",
    "NormResult",
    "logpow_profile",
    "gaussian_profile",
    "bump_profile",
    "custom_profile",
    "scale_profile",
    "dilate",
    "trace_restrict",
    "lp_norm_quad",
    "grad_lp_norm",
    "weighted_trace_norm_quad",
    "logpow_norm_closed",
    "logpow_grad_norm_closed",
    "weighted_trace_norm_closed",
]

FAMILIES = ("logpow", "gaussian", "bump", "custom")


@dataclass(frozen=True)
class RadialProfile:
    """Radial function on R^dim given by profile g(r) and derivative g'(r).

    ``g`` must vanish identically beyond ``support_radius``.  Profiles are
    immutable; all norm evaluations are pure.

    ``log_g_s`` / ``log_dg_s`` optionally evaluate ln|g(e^-s)| and
    ln|g'(e^-s)| directly in the substituted variable s = -ln r.  The
    built-in families provide them; they keep the quadrature integrands
    exact far beyond the underflow horizon of r itself, which is what lets
    a slowly divergent gradient integral (p just above dim) be detected
    instead of silently truncated.
    """

    dim: int
    g: Callable[[float], float]
    dg: Callable[[float], float]
    support_radius: float
    family: str = "custom"
    delta: float | None = None
    log_g_s: Callable[[float], float] | None = None
    log_dg_s: Callable[[float], float] | None = None

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise DomainError(f"dim must be an integer >= 1, got {self.dim!r}")
        if not self.support_radius > 0.0:
            raise DomainError(
                f"support_radius must be positive, got {self.support_radius!r}"
            )
        if self.family not in FAMILIES:
            raise DomainError(f"unknown profile family {self.family!r}")
        if self.family == "logpow" and (self.delta is None or self.delta < 1.0):
            raise DomainError("logpow profiles need delta >= 1")


@dataclass(frozen=True)
class NormResult:
    """An L_p norm value in log domain with its provenance."""

    value: LogValue
    method: str  # "closed_form" or "quadrature"
    abs_error_estimate: float
    p: float
    dim: int

    def to_linear(self) -> float:
        return self.value.to_linear()


def logpow_profile(dim: int, delta: float) -> RadialProfile:
    """The extremal family: g(r) = (-ln r)^delta on (0, 1], zero beyond."""
    if delta < 1.0:
        raise DomainError(f"logpow requires delta >= 1, got {delta!r}")
    d = float(delta)

    def g(r: float) -> float:
        if r <= 0.0 or r >= 1.0:
            return 0.0
        return (-math.log(r)) ** d

    def dg(r: float) -> float:
        if r <= 0.0 or r >= 1.0:
            return 0.0
        return -d * (-math.log(r)) ** (d - 1.0) / r

    def log_g_s(s: float) -> float:
        return d * math.log(s) if s > 0.0 else -math.inf

    def log_dg_s(s: float) -> float:
        if s <= 0.0:
            return -math.inf
        return math.log(d) + (d - 1.0) * math.log(s) + s

    return RadialProfile(dim, g, dg, 1.0, "logpow", d, log_g_s, log_dg_s)


def gaussian_profile(dim: int) -> RadialProfile:
    """g(r) = exp(-r^2), supported on all of R^dim."""

    def g(r: float) -> float:
        return math.exp(-r * r)

    def dg(r: float) -> float:
        return -2.0 * r * math.exp(-r * r)

    def log_g_s(s: float) -> float:
        return -math.exp(-2.0 * s)

    def log_dg_s(s: float) -> float:
        return math.log(2.0) - s - math.exp(-2.0 * s)

    return RadialProfile(dim, g, dg, math.inf, "gaussian",
                         log_g_s=log_g_s, log_dg_s=log_dg_s)


def bump_profile(dim: int) -> RadialProfile:
    """Smooth compactly supported control case: g(r) = exp(-1/(1-r^2)) on
    [0, 1), zero outside."""

    def g(r: float) -> float:
        if r >= 1.0:
            return 0.0
        return math.exp(-1.0 / (1.0 - r * r))

    def dg(r: float) -> float:
        if r >= 1.0:
            return 0.0
        u = 1.0 - r * r
        return g(r) * (-2.0 * r / (u * u))

    def log_g_s(s: float) -> float:
        if s <= 0.0:
            return -math.inf
        return -1.0 / (-math.expm1(-2.0 * s))

    def log_dg_s(s: float) -> float:
        if s <= 0.0:
            return -math.inf
        u = -math.expm1(-2.0 * s)  # 1 - r^2, exact for small s
        return -1.0 / u + math.log(2.0) - s - 2.0 * math.log(u)

    return RadialProfile(dim, g, dg, 1.0, "bump",
                         log_g_s=log_g_s, log_dg_s=log_dg_s)


def custom_profile(
    dim: int,
    g: Callable[[float], float],
    dg: Callable[[float], float],
    support_radius: float = math.inf,
) -> RadialProfile:
    return RadialProfile(dim, g, dg, support_radius, "custom")


def scale_profile(f: RadialProfile, c: float) -> RadialProfile:
    """Pointwise scaling c*f.  Homogeneity: |c*f|_p = |c| |f|_p."""
    if c == 1.0:
        return f
    log_c = math.log(abs(c)) if c != 0.0 else -math.inf

    def shift(fn):
        if fn is None:
            return None
        return lambda s: log_c + fn(s)

    return RadialProfile(
        f.dim,
        lambda r: c * f.g(r),
        lambda r: c * f.dg(r),
        f.support_radius,
        "custom",
        log_g_s=shift(f.log_g_s),
        log_dg_s=shift(f.log_dg_s),
    )


def dilate(f: RadialProfile, lam: float) -> RadialProfile:
    """Dilation T_lam[f](x) = f(x/lam).

    Satisfies |T_lam f|_p = lam^(dim/p) |f|_p and
    |grad T_lam f|_p = lam^(dim/p - 1) |grad f|_p.
    """
    if not lam > 0.0:
        raise DomainError(f"dilation parameter must be positive, got {lam!r}")
    if lam == 1.0:
        return f
    log_lam = math.log(lam)
    # In the substituted variable, g(e^-s / lam) = g(e^-(s + ln lam)).
    log_g_s = None if f.log_g_s is None else (lambda s: f.log_g_s(s + log_lam))
    log_dg_s = (
        None if f.log_dg_s is None
        else (lambda s: f.log_dg_s(s + log_lam) - log_lam)
    )
    return RadialProfile(
        f.dim,
        lambda r: f.g(r / lam),
        lambda r: f.dg(r / lam) / lam,
        f.support_radius * lam,
        "custom",
        log_g_s=log_g_s,
        log_dg_s=log_dg_s,
    )


def trace_restrict(u: RadialProfile, m: int) -> RadialProfile:
    """Trace of a radial function on R^N to the subspace R^m: the profile is
    unchanged, only the ambient dimension drops."""
    if int(m) != m or m < 1:
        raise DomainError(f"trace target dimension must be an integer >= 1, got {m!r}")
    if m > u.dim:
        raise DomainError(f"cannot restrict R^{u.dim} to larger R^{m}")
    if m == u.dim:
        return u
    return dataclasses.replace(u, dim=int(m))


def _moment_integral(
    fn: Callable[[float], float],
    log_fn_s: Callable[[float], float] | None,
    dim: int,
    p: float,
    support: float,
    moment: float,
) -> tuple[float, float]:
    """int_0^support |fn(r)|^p r^moment dr, split at r = 1.

    The (0, 1] piece runs in the variable s = -ln r; the integrand is
    assembled as exp(-(moment+1) s + p ln|fn|) so large profile values never
    produce inf*0.  ``log_fn_s`` (when the profile provides it) evaluates
    ln|fn(e^-s)| exactly even where r itself would underflow.
    """
    a1 = moment + 1.0

    def inner(s: float) -> float:
        if log_fn_s is not None:
            lv = log_fn_s(s)
            if lv == -math.inf:
                return 0.0
        else:
            r = math.exp(-s)
            if r == 0.0:
                return 0.0
            v = abs(fn(r))
            if v == 0.0:
                return 0.0
            lv = math.log(v)
        t = -a1 * s + p * lv
        try:
            return math.exp(t)
        except OverflowError:
            return math.inf

    s_hi = math.inf
    s_lo = 0.0 if support >= 1.0 else -math.log(support)
    total, err = integrate(inner, s_lo, s_hi)

    if support > 1.0:
        def outer(r: float) -> float:
            v = abs(fn(r))
            if v == 0.0:
                return 0.0
            t = moment * math.log(r) + p * math.log(v)
            try:
                return math.exp(t)
            except OverflowError:
                return math.inf

        val2, err2 = integrate(outer, 1.0, support)
        total += val2
        err += err2
    return total, err


def _norm_from_integral(
    integral: float, err: float, dim: int, p: float
) -> NormResult:
    log_omega = specfun.log_sphere_measure(dim)
    if integral <= 0.0:
        # Zero profile; the error estimate conservatively bounds the norm.
        bound = (math.exp(log_omega) * max(err, 0.0)) ** (1.0 / p)
        return NormResult(LogValue.zero(), "quadrature", bound, p, dim)
    log_norm = (log_omega + math.log(integral)) / p
    value = LogValue.from_log(log_norm)
    norm_err = abs(value.to_linear()) * err / (p * integral)
    return NormResult(value, "quadrature", norm_err, p, dim)


def lp_norm_quad(f: RadialProfile, p: float) -> NormResult:
    """|f|_p on R^dim by adaptive quadrature (relative target 1e-9)."""
    if not p >= 1.0:
        raise DomainError(f"lp_norm_quad requires p >= 1, got p={p!r}")
    integral, err = _moment_integral(f.g, f.log_g_s, f.dim, p,
                                     f.support_radius, f.dim - 1.0)
    return _norm_from_integral(integral, err, f.dim, p)


def grad_lp_norm(f: RadialProfile, p: float) -> NormResult:
    """|grad f|_p on R^dim; uses |grad f|(x) = |g'(|x|)| exactly."""
    if not p >= 1.0:
        raise DomainError(f"grad_lp_norm requires p >= 1, got p={p!r}")
    integral, err = _moment_integral(f.dg, f.log_dg_s, f.dim, p,
                                     f.support_radius, f.dim - 1.0)
    return _norm_from_integral(integral, err, f.dim, p)


def weighted_trace_norm_quad(f: RadialProfile, q: float, alpha: float) -> NormResult:
    """L_q norm of the weighted trace r^(-alpha) g(r) on R^dim by quadrature."""
    if not q >= 1.0:
        raise DomainError(f"weighted trace norm requires q >= 1, got q={q!r}")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    moment = f.dim - 1.0 - alpha * q
    integral, err = _moment_integral(f.g, f.log_g_s, f.dim, q,
                                     f.support_radius, moment)
    return _norm_from_integral(integral, err, f.dim, q)


def logpow_norm_closed(m: int, delta: float, q: float) -> NormResult:
    """Closed form for the log-power family:

        |f_delta|_q = omega(m)^(1/q) Gamma(delta*q + 1)^(1/q) / m^(delta + 1/q)
    """
    if int(m) != m or m < 1:
        raise DomainError(f"m must be an integer >= 1, got {m!r}")
    if delta < 1.0:
        raise DomainError(f"delta must be >= 1, got {delta!r}")
    if not q >= 1.0:
        raise DomainError(f"q must be >= 1, got {q!r}")
    m = int(m)
    log_val = (
        specfun.log_sphere_measure(m) + specfun.log_gamma(delta * q + 1.0)
    ) / q - (delta + 1.0 / q) * math.log(m)
    return NormResult(LogValue.from_log(log_val), "closed_form", 0.0, q, m)


def logpow_grad_norm_closed(dim: int, delta: float, p: float) -> NormResult:
    """Closed form for the gradient of the log-power family:

        |grad f_delta|_p = delta * omega(dim)^(1/p)
                           * Gamma(p(delta-1) + 1)^(1/p) / (dim-p)^(delta-1+1/p)

    Has a pole at p = dim.
    """
    if int(dim) != dim or dim < 1:
        raise DomainError(f"dim must be an integer >= 1, got {dim!r}")
    if delta < 1.0:
        raise DomainError(f"delta must be >= 1, got {delta!r}")
    if not p >= 1.0:
        raise DomainError(f"p must be >= 1, got {p!r}")
    if p >= dim:
        raise DomainError(
            f"gradient norm of the log-power family has a pole at p = dim: "
            f"need p < {dim}, got p={p!r}"
        )
    dim = int(dim)
    log_val = (
        math.log(delta)
        + (specfun.log_sphere_measure(dim) + specfun.log_gamma(p * (delta - 1.0) + 1.0)) / p
        - (delta - 1.0 + 1.0 / p) * math.log(dim - p)
    )
    return NormResult(LogValue.from_log(log_val), "closed_form", 0.0, p, dim)


def weighted_trace_norm_closed(
    m: int, delta: float, q: float, alpha: float
) -> NormResult:
    """Closed form for the alpha-weighted trace of the log-power family:

        |S_alpha[f_delta]|_q = omega(m)^(1/q) Gamma(delta*q + 1)^(1/q)
                               / (m - alpha*q)^(delta + 1/q)

    The weight is non-integrable when m <= alpha*q.
    """
    if int(m) != m or m < 1:
        raise DomainError(f"m must be an integer >= 1, got {m!r}")
    if delta < 1.0:
        raise DomainError(f"delta must be >= 1, got {delta!r}")
    if not q >= 1.0:
        raise DomainError(f"q must be >= 1, got {q!r}")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    m = int(m)
    base = m - alpha * q
    if not base > 0.0:
        raise DivergenceError(
            f"non-integrable weight: m - alpha*q = {base!r} <= 0"
        )
    log_val = (
        specfun.log_sphere_measure(m) + specfun.log_gamma(delta * q + 1.0)
    ) / q - (delta + 1.0 / q) * math.log(base)
    return NormResult(LogValue.from_log(log_val), "closed_form", 0.0, q, m)
