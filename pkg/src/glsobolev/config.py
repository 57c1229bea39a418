"""Sweep configuration: a JSON key-value tree, fully validated up front.

``parse_config`` returns a :class:`SweepConfig` or raises
:class:`~glsobolev.errors.ConfigError` carrying *all* validation errors, not
just the first.  ``render_config`` emits the canonical JSON text;
``parse_config(render_config(cfg)) == cfg`` for every valid config.

Grammar (top-level keys):

    target    "ordinary" | "trace" | "weighted" | "gls_theorem1" | "hardy"
    m         list of int
    n         list of int            (trace, hardy)
    alpha     list of float          (weighted)
    delta     list of float >= 1     (logpow family)
    p         {"count": int} or {"values": [float, ...]}
    p_ladder  list of int j; grid points p_j = p_hi - 10^-j  (excludes "p")
    q         {"values": [float, ...]}   (weighted)
    family    "logpow" | "gaussian" | "bump"
    psi       {"kind": "natural"|"power_blowup"|"constant", ...}
    g         "indicator" | "logpow_deriv" | "zero"   (hardy)
    output    {"format": "csv"|"json", "path": str, "precision": int,
               "columns": [str, ...]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ConfigError, DomainError
from .exponents import Setting, p_range

__all__ = [
    "PsiSpec",
    "OutputSpec",
    "SweepConfig",
    "parse_config",
    "render_config",
]

TARGETS = ("ordinary", "trace", "weighted", "gls_theorem1", "hardy")
FAMILIES = ("logpow", "gaussian", "bump")
PSI_KINDS = ("natural", "power_blowup", "constant")
G_KINDS = ("indicator", "logpow_deriv", "zero")
FORMATS = ("csv", "json")
COLUMNS = ("m", "n", "alpha", "delta", "p", "q", "lhs", "constant", "rhs",
           "ratio", "pass", "notes")


@dataclass(frozen=True)
class PsiSpec:
    kind: str = "natural"
    norm_kind: str = "gradient"
    beta: float | None = None
    endpoint: str | None = None
    value: float | None = None


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    path: str | None = None
    precision: int = 9
    columns: tuple[str, ...] | None = None


@dataclass(frozen=True)
class SweepConfig:
    target: str
    m: tuple[int, ...]
    n: tuple[int, ...] = ()
    alpha: tuple[float, ...] = ()
    delta: tuple[float, ...] = ()
    p_values: tuple[float, ...] | None = None
    p_count: int | None = None
    p_ladder: tuple[int, ...] | None = None
    q_values: tuple[float, ...] = ()
    family: str = "logpow"
    psi: PsiSpec | None = None
    g_kind: str | None = None
    output: OutputSpec = field(default_factory=OutputSpec)


def _want_list(raw, key, kind, errors, pred=None, what=""):
    if not isinstance(raw, list) or not raw:
        errors.append(f"{key} must be a non-empty list")
        return ()
    out = []
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            errors.append(f"{key} entries must be numbers, got {v!r}")
            return ()
        if kind is int and int(v) != v:
            errors.append(f"{key} entries must be integers, got {v!r}")
            return ()
        v = kind(v)
        if pred is not None and not pred(v):
            errors.append(f"{key} entry {v!r} is invalid: {what}")
        out.append(v)
    return tuple(out)


def _parse_psi(raw, errors) -> PsiSpec | None:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        errors.append("psi must be an object")
        return None
    known = {"kind", "norm_kind", "beta", "endpoint", "value"}
    for k in raw:
        if k not in known:
            errors.append(f"unknown psi key {k!r}")
    kind = raw.get("kind", "natural")
    if kind not in PSI_KINDS:
        errors.append(f"psi kind must be one of {PSI_KINDS}, got {kind!r}")
        return None
    norm_kind = raw.get("norm_kind", "gradient")
    if norm_kind not in ("function", "gradient"):
        errors.append(f"psi norm_kind must be 'function' or 'gradient', got {norm_kind!r}")
    beta = raw.get("beta")
    endpoint = raw.get("endpoint")
    value = raw.get("value")
    if kind == "power_blowup":
        if beta is None or not isinstance(beta, (int, float)) or beta <= 0:
            errors.append("psi power_blowup needs beta > 0")
        if endpoint not in ("lower", "upper"):
            errors.append("psi power_blowup needs endpoint 'lower' or 'upper'")
    if kind == "constant":
        if value is None or not isinstance(value, (int, float)) or value <= 0:
            errors.append("psi constant needs value > 0")
    return PsiSpec(
        kind=kind,
        norm_kind=norm_kind,
        beta=None if beta is None else float(beta),
        endpoint=endpoint,
        value=None if value is None else float(value),
    )


def _parse_output(raw, errors) -> OutputSpec:
    if raw is None:
        return OutputSpec()
    if not isinstance(raw, dict):
        errors.append("output must be an object")
        return OutputSpec()
    known = {"format", "path", "precision", "columns"}
    for k in raw:
        if k not in known:
            errors.append(f"unknown output key {k!r}")
    fmt = raw.get("format", "csv")
    if fmt not in FORMATS:
        errors.append(f"output format must be one of {FORMATS}, got {fmt!r}")
    path = raw.get("path")
    if path is not None and not isinstance(path, str):
        errors.append("output path must be a string")
    prec = raw.get("precision", 9)
    if isinstance(prec, bool) or not isinstance(prec, int) or not 1 <= prec <= 17:
        errors.append(f"output precision must be an integer in [1, 17], got {prec!r}")
        prec = 9
    columns = raw.get("columns")
    if columns is not None:
        if not isinstance(columns, list) or not columns:
            errors.append("output columns must be a non-empty list of column names")
            columns = None
        else:
            bad = [c for c in columns if c not in COLUMNS]
            if bad:
                errors.append(f"unknown output columns {bad!r}; valid: {list(COLUMNS)}")
                columns = None
    return OutputSpec(
        format=fmt if fmt in FORMATS else "csv",
        path=path if isinstance(path, str) else None,
        precision=prec,
        columns=None if columns is None else tuple(columns),
    )


def _settings_for(cfg: SweepConfig, errors) -> list[Setting]:
    """Instantiate every setting in the grid, collecting domain errors."""
    out = []
    ns = cfg.n or (0,)
    alphas = cfg.alpha or (0.0,)
    for m in cfg.m:
        for n in ns:
            for a in alphas:
                try:
                    out.append(Setting(m, n, a))
                except DomainError as exc:
                    errors.append(f"invalid setting (m={m}, n={n}, alpha={a}): {exc}")
    return out


def validate(cfg: SweepConfig) -> list[str]:
    """Domain validation of all grid values against the target ops."""
    errors: list[str] = []
    if cfg.target not in TARGETS:
        errors.append(f"target must be one of {TARGETS}, got {cfg.target!r}")
        return errors
    if cfg.family not in FAMILIES:
        errors.append(f"family must be one of {FAMILIES}, got {cfg.family!r}")

    if cfg.p_values is not None and cfg.p_ladder is not None:
        errors.append("p and p_ladder are mutually exclusive")
    if cfg.p_values is not None and cfg.p_count is not None:
        errors.append("p values and p count are mutually exclusive")

    needs_delta = cfg.target in ("trace", "weighted", "gls_theorem1") or (
        cfg.target in ("ordinary", "hardy") and cfg.family == "logpow"
    )
    if needs_delta and not cfg.delta:
        errors.append(f"target {cfg.target!r} with family {cfg.family!r} needs a delta grid")
    for d in cfg.delta:
        if d < 1.0:
            errors.append(f"delta must be >= 1, got {d!r}")

    if cfg.target == "ordinary":
        if cfg.n and set(cfg.n) != {0}:
            errors.append("target 'ordinary' requires n = [0]")
        if cfg.alpha and set(cfg.alpha) != {0.0}:
            errors.append("target 'ordinary' requires alpha = [0]")
        for m in cfg.m:
            if m < 3:
                errors.append(f"target 'ordinary' needs m >= 3, got m={m}")
    if cfg.target in ("trace", "hardy"):
        if not cfg.n:
            errors.append(f"target {cfg.target!r} needs an n grid")
        for n in cfg.n:
            if n < 1:
                errors.append(f"target {cfg.target!r} needs n >= 1, got n={n}")
    if cfg.target == "weighted":
        if not cfg.alpha:
            errors.append("target 'weighted' needs an alpha grid")
        if not cfg.q_values:
            errors.append("target 'weighted' needs a q grid")
        for q in cfg.q_values:
            if q < 1.0:
                errors.append(f"q must be >= 1, got {q!r}")
        for a in cfg.alpha:
            if not 0.0 <= a <= 1.0:
                errors.append(f"alpha must lie in [0, 1], got {a!r}")
    if cfg.target == "hardy" and cfg.g_kind is None:
        errors.append("target 'hardy' needs a g kind")

    settings = [] if errors else _settings_for(cfg, errors)

    needs_p = cfg.target in ("ordinary", "trace", "hardy")
    if needs_p:
        if cfg.p_values is None and cfg.p_count is None and cfg.p_ladder is None:
            errors.append(f"target {cfg.target!r} needs a p grid (count, values or ladder)")
        if cfg.p_values is not None:
            for s in settings:
                lo, hi = p_range(s)
                lo = max(lo, 1.0)
                for p in cfg.p_values:
                    if not lo < p < hi:
                        errors.append(f"p must lie in ({lo:g}, {hi:g}), got p={p}")
    if cfg.p_count is not None and cfg.p_count < 1:
        errors.append(f"p count must be >= 1, got {cfg.p_count!r}")
    if cfg.p_ladder is not None:
        for j in cfg.p_ladder:
            if not 1 <= j <= 12:
                errors.append(f"p_ladder entries must be integers in [1, 12], got {j!r}")

    if cfg.psi is not None and cfg.target not in ("gls_theorem1",):
        errors.append(f"psi is only meaningful for target 'gls_theorem1', got target {cfg.target!r}")
    return errors


def parse_config(text: str) -> SweepConfig:
    """Parse and validate a JSON sweep configuration."""
    errors: list[str] = []
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"invalid JSON: {exc}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["top-level config must be a JSON object"])

    known = {"target", "m", "n", "alpha", "delta", "p", "p_ladder", "q",
             "family", "psi", "g", "output"}
    for k in raw:
        if k not in known:
            errors.append(f"unknown key {k!r}")

    target = raw.get("target")
    if not isinstance(target, str):
        errors.append("target is required and must be a string")
        target = ""

    if "m" in raw:
        m = _want_list(raw["m"], "m", int, errors)
    else:
        m = ()
        errors.append("m grid is required")
    n = _want_list(raw["n"], "n", int, errors) if "n" in raw else ()
    alpha = _want_list(raw["alpha"], "alpha", float, errors) if "alpha" in raw else ()
    delta = _want_list(raw["delta"], "delta", float, errors) if "delta" in raw else ()

    p_values = None
    p_count = None
    if "p" in raw:
        p_raw = raw["p"]
        if isinstance(p_raw, dict):
            for k in p_raw:
                if k not in ("count", "values"):
                    errors.append(f"unknown p key {k!r}")
            if "count" in p_raw and "values" in p_raw:
                errors.append("p count and p values are mutually exclusive")
            if "count" in p_raw:
                c = p_raw["count"]
                if isinstance(c, bool) or not isinstance(c, int) or c < 1:
                    errors.append(f"p count must be a positive integer, got {c!r}")
                else:
                    p_count = c
            elif "values" in p_raw:
                p_values = _want_list(p_raw["values"], "p values", float, errors)
            else:
                errors.append("p must contain 'count' or 'values'")
        else:
            errors.append("p must be an object with 'count' or 'values'")

    p_ladder = (
        _want_list(raw["p_ladder"], "p_ladder", int, errors) if "p_ladder" in raw else None
    )

    q_values = ()
    if "q" in raw:
        q_raw = raw["q"]
        if isinstance(q_raw, dict) and set(q_raw) == {"values"}:
            q_values = _want_list(q_raw["values"], "q values", float, errors)
        else:
            errors.append("q must be an object of the form {\"values\": [...]}")

    family = raw.get("family", "logpow")
    psi = _parse_psi(raw.get("psi"), errors)
    g_kind = raw.get("g")
    if g_kind is not None and g_kind not in G_KINDS:
        errors.append(f"g must be one of {G_KINDS}, got {g_kind!r}")
    output = _parse_output(raw.get("output"), errors)

    cfg = SweepConfig(
        target=target,
        m=m,
        n=n,
        alpha=alpha,
        delta=delta,
        p_values=p_values,
        p_count=p_count,
        p_ladder=p_ladder,
        q_values=q_values,
        family=family if isinstance(family, str) else "logpow",
        psi=psi,
        g_kind=g_kind if isinstance(g_kind, str) else None,
        output=output,
    )
    # Run domain validation even when structural errors exist so the caller
    # sees the full list, not just the first phase.
    errors.extend(e for e in validate(cfg) if e not in errors)
    if errors:
        raise ConfigError(errors)
    return cfg


def render_config(cfg: SweepConfig) -> str:
    """Canonical JSON text for a config; inverse of parse_config."""
    doc: dict = {"target": cfg.target, "m": list(cfg.m)}
    if cfg.n:
        doc["n"] = list(cfg.n)
    if cfg.alpha:
        doc["alpha"] = list(cfg.alpha)
    if cfg.delta:
        doc["delta"] = list(cfg.delta)
    if cfg.p_count is not None:
        doc["p"] = {"count": cfg.p_count}
    elif cfg.p_values is not None:
        doc["p"] = {"values": list(cfg.p_values)}
    if cfg.p_ladder is not None:
        doc["p_ladder"] = list(cfg.p_ladder)
    if cfg.q_values:
        doc["q"] = {"values": list(cfg.q_values)}
    doc["family"] = cfg.family
    if cfg.psi is not None:
        psi: dict = {"kind": cfg.psi.kind, "norm_kind": cfg.psi.norm_kind}
        if cfg.psi.beta is not None:
            psi["beta"] = cfg.psi.beta
        if cfg.psi.endpoint is not None:
            psi["endpoint"] = cfg.psi.endpoint
        if cfg.psi.value is not None:
            psi["value"] = cfg.psi.value
        doc["psi"] = psi
    if cfg.g_kind is not None:
        doc["g"] = cfg.g_kind
    out: dict = {"format": cfg.output.format, "precision": cfg.output.precision}
    if cfg.output.path is not None:
        out["path"] = cfg.output.path
    if cfg.output.columns is not None:
        out["columns"] = list(cfg.output.columns)
    doc["output"] = out
    return json.dumps(doc, indent=2) + "\n"
