"""Flat ``key = value`` run configuration shared by every subcommand."""
from __future__ import annotations

import math
from pathlib import Path

from .errors import ValidationError
from .model import ModelParams

DEFAULTS = {
    "omega0": 1.53e9,
    "gamma": 1.0,
    "lambda": 3.0,
    "omega_drive": 0.0,
    "delta": 0.0,
    "beta": 0.0,
    "tau0": math.inf,
    "tau": 1.0,
    "omega_start": 0.0,
    "omega_stop": 30.0,
    "omega_count": 601,
    "trace_horizon": 10.0,
    "trace_count": 1001,
    "oracle_step": 1e-3,
}
KEYS = tuple(DEFAULTS)
INT_KEYS = {"omega_count", "trace_count"}


def coerce(key, raw):
    if key not in DEFAULTS:
        raise ValidationError(key, "unknown configuration key")
    text = str(raw).strip()
    try:
        if key in INT_KEYS:
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
        if key == "tau0" and text.lower() in {"inf", "infinite", "infinity"}:
            return math.inf
        return float(text)
    except ValueError:
        raise ValidationError(key, f"cannot parse {text!r}") from None


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"line {lineno}", f"expected 'key = value', got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        out[key] = coerce(key, raw)
    return out


def load_config(path=None, overrides=None) -> dict:
    cfg = dict(DEFAULTS)
    if path is not None:
        cfg.update(parse_config_text(Path(path).read_text()))
    for key, raw in (overrides or {}).items():
        if raw is not None:
            cfg[key] = coerce(key, raw)
    return cfg


def params_from(cfg: dict) -> ModelParams:
    return ModelParams(
        omega0=cfg["omega0"],
        gamma=cfg["gamma"],
        lam=cfg["lambda"],
        omega_drive=cfg["omega_drive"],
        delta=cfg["delta"],
        beta=cfg["beta"],
        tau0=cfg["tau0"],
        tau=cfg["tau"],
    )
