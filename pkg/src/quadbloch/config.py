"""Flat key=value run configuration.

The parameter space is small and flat, so the config format is line-oriented
``key = value`` text with ``#`` comments; files diff cleanly under version
control. Dynamic modes take the two-level parameters either from a level
pair (state_a/state_b) or from explicit rates, never both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .hydrogenic import BoundState

MODES = ("coeffs", "simulate", "verify", "shift")
DYNAMIC_MODES = ("simulate", "verify", "shift")

_RATE_KEYS = ("omega21", "a12", "b12", "c12")
_GAMMA_KEYS = ("gamma11", "gamma22", "gamma12")
_TIME_KEYS = ("t_start", "t_end", "step", "t0")
_FLOAT_KEYS = _RATE_KEYS + _GAMMA_KEYS + _TIME_KEYS + ("k_max", "theta0", "px0", "py0", "pz0")
_KNOWN_KEYS = ("mode", "state_a", "state_b", "output", "units") + _FLOAT_KEYS

_STATE_TOKEN = re.compile(r"^(\d+)([a-z])([+-]?\d+)?$")
_ORBITAL_OF = {"s": 0, "p": 1, "d": 2, "f": 3, "g": 4, "h": 5}


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending line or key."""


def parse_state(token: str) -> BoundState:
    """Parse a level spec: spectroscopic ('2p', '2p+1', '3d-2') or 'n,l,m'."""
    token = token.strip().lower()
    if "," in token:
        parts = [p.strip() for p in token.split(",")]
        if len(parts) != 3:
            raise ConfigError(f"state spec '{token}' must be n,l,m")
        try:
            n, l, m = (int(p) for p in parts)
        except ValueError:
            raise ConfigError(f"state spec '{token}' has non-integer quantum numbers") from None
    else:
        match = _STATE_TOKEN.match(token)
        if not match or match.group(2) not in _ORBITAL_OF:
            raise ConfigError(f"unrecognized state spec '{token}' (expected e.g. '2p0' or '2,1,0')")
        n = int(match.group(1))
        l = _ORBITAL_OF[match.group(2)]
        m = int(match.group(3)) if match.group(3) is not None else 0
    try:
        return BoundState(n=n, l=l, m=m)
    except ValueError as exc:
        raise ConfigError(f"invalid state spec '{token}': {exc}") from None


@dataclass(frozen=True)
class RunConfig:
    mode: str
    state_a: BoundState | None = None
    state_b: BoundState | None = None
    omega21: float | None = None
    gamma11: float = 0.0
    gamma22: float = 0.0
    gamma12: float = 0.0
    a12: float | None = None
    b12: float | None = None
    c12: float | None = None
    t0: float = 0.0
    t_start: float | None = None
    t_end: float | None = None
    step: float | None = None
    k_max: float | None = None
    output: str | None = None
    units: str = "atomic"
    theta0: float | None = None
    initial: tuple[float, float, float] | None = None

    @property
    def has_state_pair(self) -> bool:
        return self.state_a is not None and self.state_b is not None

    @property
    def has_explicit_rates(self) -> bool:
        return any(v is not None for v in (self.omega21, self.a12, self.b12, self.c12))


def _parse_lines(text: str) -> dict[str, tuple[str, str]]:
    """Raw key -> (value, location) mapping with duplicate/unknown detection."""
    raw: dict[str, tuple[str, str]] = {}
    for idx, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {idx}: expected 'key = value', got {line.strip()!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {idx}: unknown key '{key}'")
        if key in raw:
            raise ConfigError(f"line {idx}: duplicate key '{key}'")
        if not value:
            raise ConfigError(f"line {idx}: key '{key}' has no value")
        raw[key] = (value, f"line {idx}")
    return raw


def _build(raw: dict[str, tuple[str, str]], default_mode: str | None) -> RunConfig:
    def take_float(key: str):
        if key not in raw:
            return None
        value, where = raw[key]
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"{where}: key '{key}' has malformed number {value!r}") from None

    mode = raw.get("mode", (default_mode, "default"))[0]
    if mode is None:
        raise ConfigError("missing required key 'mode'")
    if mode not in MODES:
        where = raw["mode"][1] if "mode" in raw else "default"
        raise ConfigError(f"{where}: mode must be one of {', '.join(MODES)}, got '{mode}'")

    state_a = parse_state(raw["state_a"][0]) if "state_a" in raw else None
    state_b = parse_state(raw["state_b"][0]) if "state_b" in raw else None
    if (state_a is None) != (state_b is None):
        raise ConfigError("state_a and state_b must be given together")

    units = raw.get("units", ("atomic", "default"))[0]
    if units not in ("atomic", "si"):
        raise ConfigError(f"{raw['units'][1]}: units must be 'atomic' or 'si', got '{units}'")

    floats = {key: take_float(key) for key in _FLOAT_KEYS}

    initial_keys = [k for k in ("px0", "py0", "pz0") if floats[k] is not None]
    if initial_keys and len(initial_keys) != 3:
        raise ConfigError("px0, py0, pz0 must be given together")
    initial = (floats["px0"], floats["py0"], floats["pz0"]) if len(initial_keys) == 3 else None

    cfg = RunConfig(
        mode=mode,
        state_a=state_a,
        state_b=state_b,
        omega21=floats["omega21"],
        gamma11=floats["gamma11"] if floats["gamma11"] is not None else 0.0,
        gamma22=floats["gamma22"] if floats["gamma22"] is not None else 0.0,
        gamma12=floats["gamma12"] if floats["gamma12"] is not None else 0.0,
        a12=floats["a12"],
        b12=floats["b12"],
        c12=floats["c12"],
        t0=floats["t0"] if floats["t0"] is not None else 0.0,
        t_start=floats["t_start"],
        t_end=floats["t_end"],
        step=floats["step"],
        k_max=floats["k_max"],
        output=raw["output"][0] if "output" in raw else None,
        units=units,
        theta0=floats["theta0"],
        initial=initial,
    )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    if cfg.mode == "coeffs":
        if not cfg.has_state_pair:
            raise ConfigError("coeffs mode requires state_a and state_b")
        if cfg.has_explicit_rates:
            raise ConfigError("coeffs mode takes a state pair, not explicit rates")
    else:
        if cfg.has_state_pair and cfg.has_explicit_rates:
            raise ConfigError("give either a state pair or explicit rates, not both")
        if not cfg.has_state_pair and not cfg.has_explicit_rates:
            raise ConfigError(f"{cfg.mode} mode needs a state pair or explicit rates")
        if cfg.has_explicit_rates and cfg.omega21 is None:
            raise ConfigError("explicit-rate configs must set omega21")
        for key in ("t_start", "t_end", "step"):
            if getattr(cfg, key) is None:
                raise ConfigError(f"{cfg.mode} mode requires key '{key}'")
        if cfg.step <= 0:
            raise ConfigError(f"key 'step' must be positive, got {cfg.step}")
        if not cfg.t_end > cfg.t_start:
            raise ConfigError(f"key 't_end' must exceed t_start, got [{cfg.t_start}, {cfg.t_end}]")
        if cfg.mode == "simulate" and cfg.output is None:
            raise ConfigError("simulate mode requires key 'output'")
    if cfg.k_max is not None and cfg.k_max < 0:
        raise ConfigError(f"key 'k_max' must be nonnegative, got {cfg.k_max}")


def parse_config(text: str, default_mode: str | None = None) -> RunConfig:
    """Parse and validate a configuration document."""
    return _build(_parse_lines(text), default_mode)


def parse_config_with_overrides(text: str, overrides: list[str],
                                default_mode: str | None = None) -> RunConfig:
    """Parse a document, then apply ``key=value`` override tokens and revalidate."""
    raw = _parse_lines(text)
    for token in overrides:
        if "=" not in token:
            raise ConfigError(f"override '{token}': expected key=value")
        key, value = (part.strip() for part in token.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"override '{token}': unknown key '{key}'")
        if not value:
            raise ConfigError(f"override '{token}': key '{key}' has no value")
        raw[key] = (value, f"override '{token}'")
    return _build(raw, default_mode)
