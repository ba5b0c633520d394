"""security.properties parsing and the validated SecurityConfig model.

The file format is `key=value` lines with `#` comments, UTF-8. Unknown keys
are collected as warnings rather than errors so third-party plug-ins can
extend the namespace.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from ..errors import ConfigError

log = logging.getLogger(__name__)

CONF_MODES = ("cbc", "none")
INTEGRITY_MODES = ("hmac-lock", "watermark")
AUTH_MODES = ("hmac", "merkle")
RANDOMIZATION_MODES = ("off", "static", "dynamic")
VERIFY_FAILURE_MODES = ("abort", "filter")


@dataclass(frozen=True)
class WatermarkConfig:
    """Relational watermark parameter bundle as configured (key by id)."""

    nu: int = 1
    xi: int = 1
    gamma: int = 1
    alpha: float = 0.01
    key_id: str = ""

    def __post_init__(self):
        if self.nu < 1:
            raise ConfigError("watermark nu must be >= 1")
        if self.xi < 1:
            raise ConfigError("watermark xi must be >= 1")
        if self.gamma < 1:
            raise ConfigError("watermark gamma must be >= 1")
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError("watermark alpha must be in (0,1)")

    @property
    def marked_fraction(self) -> Fraction:
        return Fraction(1, self.gamma)


@dataclass(frozen=True)
class AspectConfig:
    enabled: bool = False
    mode: str = ""
    key_id: str = ""


@dataclass(frozen=True)
class RandomizationConfig:
    mode: str = "off"
    suffix: Optional[int] = None  # static mode
    password: str = ""  # dynamic mode bootstrap
    localizer_hex: str = ""  # dynamic mode bootstrap


@dataclass(frozen=True)
class SecurityConfig:
    confidentiality: AspectConfig = AspectConfig(mode="cbc")
    integrity: AspectConfig = AspectConfig(mode="hmac-lock")
    authentication: AspectConfig = AspectConfig(mode="hmac")
    randomization: RandomizationConfig = RandomizationConfig()
    watermark: WatermarkConfig = WatermarkConfig()
    on_verify_failure: str = "abort"
    warnings: tuple[str, ...] = field(default=(), compare=False)


_BOOL = {"true": True, "false": False}


def _parse_bool(key: str, raw: str) -> bool:
    if raw.lower() not in _BOOL:
        raise ConfigError(f"{key}: expected true/false, got {raw!r}")
    return _BOOL[raw.lower()]


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected integer, got {raw!r}") from None


def _parse_enum(key: str, raw: str, allowed) -> str:
    if raw not in allowed:
        raise ConfigError(f"{key}: value {raw!r} not in {allowed}")
    return raw


def parse_properties(text: str) -> dict[str, str]:
    """Raw key=value parse; malformed non-comment lines are errors."""
    pairs: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key=value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        pairs[key.strip()] = value.strip()
    return pairs


_KNOWN_KEYS = {
    "confidentiality.enabled",
    "confidentiality.mode",
    "confidentiality.key",
    "integrity.enabled",
    "integrity.mode",
    "integrity.key",
    "integrity.watermark.nu",
    "integrity.watermark.xi",
    "integrity.watermark.gamma",
    "integrity.watermark.alpha",
    "integrity.watermark.key",
    "authentication.enabled",
    "authentication.mode",
    "authentication.key",
    "randomization.mode",
    "randomization.suffix",
    "randomization.password",
    "randomization.localizer",
    "storage.on_verify_failure",
}


def config_from_pairs(pairs: dict[str, str]) -> SecurityConfig:
    warnings = tuple(
        f"unknown configuration key {k!r}" for k in sorted(pairs) if k not in _KNOWN_KEYS
    )
    for w in warnings:
        log.warning(w)

    def get(key: str, default: str = "") -> str:
        return pairs.get(key, default)

    conf = AspectConfig(
        enabled=_parse_bool("confidentiality.enabled", get("confidentiality.enabled", "false")),
        mode=_parse_enum("confidentiality.mode", get("confidentiality.mode", "cbc"), CONF_MODES),
        key_id=get("confidentiality.key"),
    )
    integ = AspectConfig(
        enabled=_parse_bool("integrity.enabled", get("integrity.enabled", "false")),
        mode=_parse_enum("integrity.mode", get("integrity.mode", "hmac-lock"), INTEGRITY_MODES),
        key_id=get("integrity.key"),
    )
    auth = AspectConfig(
        enabled=_parse_bool("authentication.enabled", get("authentication.enabled", "false")),
        mode=_parse_enum("authentication.mode", get("authentication.mode", "hmac"), AUTH_MODES),
        key_id=get("authentication.key"),
    )
    rnd_mode = _parse_enum("randomization.mode", get("randomization.mode", "off"), RANDOMIZATION_MODES)
    suffix_raw = get("randomization.suffix")
    rnd = RandomizationConfig(
        mode=rnd_mode,
        suffix=_parse_int("randomization.suffix", suffix_raw) if suffix_raw else None,
        password=get("randomization.password"),
        localizer_hex=get("randomization.localizer"),
    )
    alpha_raw = get("integrity.watermark.alpha", "0.01")
    try:
        alpha = float(alpha_raw)
    except ValueError:
        raise ConfigError(f"integrity.watermark.alpha: bad float {alpha_raw!r}") from None
    wm = WatermarkConfig(
        nu=_parse_int("integrity.watermark.nu", get("integrity.watermark.nu", "1")),
        xi=_parse_int("integrity.watermark.xi", get("integrity.watermark.xi", "1")),
        gamma=_parse_int("integrity.watermark.gamma", get("integrity.watermark.gamma", "1")),
        alpha=alpha,
        key_id=get("integrity.watermark.key", get("integrity.key")),
    )
    cfg = SecurityConfig(
        confidentiality=conf,
        integrity=integ,
        authentication=auth,
        randomization=rnd,
        watermark=wm,
        on_verify_failure=_parse_enum(
            "storage.on_verify_failure", get("storage.on_verify_failure", "abort"), VERIFY_FAILURE_MODES
        ),
        warnings=warnings,
    )
    _validate(cfg)
    return cfg


def _validate(cfg: SecurityConfig) -> None:
    if cfg.confidentiality.enabled and cfg.confidentiality.mode == "cbc" and not cfg.confidentiality.key_id:
        raise ConfigError("confidentiality enabled but confidentiality.key not set")
    if cfg.integrity.enabled:
        if cfg.integrity.mode == "hmac-lock" and not cfg.integrity.key_id:
            raise ConfigError("integrity enabled but integrity.key not set")
        if cfg.integrity.mode == "watermark" and not cfg.watermark.key_id:
            raise ConfigError("watermark integrity enabled but integrity.watermark.key not set")
    if cfg.authentication.enabled and not cfg.authentication.key_id:
        raise ConfigError("authentication enabled but authentication.key not set")
    if cfg.randomization.mode == "static":
        if cfg.randomization.suffix is None:
            raise ConfigError("static randomization requires randomization.suffix")
        if not (1 <= cfg.randomization.suffix < 2**32):
            raise ConfigError("randomization.suffix must be in 1..2^32-1")
    if cfg.randomization.mode == "dynamic" and not cfg.randomization.password:
        raise ConfigError("dynamic randomization requires randomization.password")


def load_config(path) -> SecurityConfig:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"configuration file not found: {p}")
    return config_from_pairs(parse_properties(p.read_text(encoding="utf-8")))


def dump_config(cfg: SecurityConfig) -> str:
    """Serialize back to properties text; parse(dump(parse(f))) == parse(f)."""
    lines = [
        f"confidentiality.enabled={str(cfg.confidentiality.enabled).lower()}",
        f"confidentiality.mode={cfg.confidentiality.mode}",
        f"integrity.enabled={str(cfg.integrity.enabled).lower()}",
        f"integrity.mode={cfg.integrity.mode}",
        f"authentication.enabled={str(cfg.authentication.enabled).lower()}",
        f"authentication.mode={cfg.authentication.mode}",
        f"randomization.mode={cfg.randomization.mode}",
        f"integrity.watermark.nu={cfg.watermark.nu}",
        f"integrity.watermark.xi={cfg.watermark.xi}",
        f"integrity.watermark.gamma={cfg.watermark.gamma}",
        f"integrity.watermark.alpha={cfg.watermark.alpha!r}",
        f"storage.on_verify_failure={cfg.on_verify_failure}",
    ]
    if cfg.confidentiality.key_id:
        lines.append(f"confidentiality.key={cfg.confidentiality.key_id}")
    if cfg.integrity.key_id:
        lines.append(f"integrity.key={cfg.integrity.key_id}")
    if cfg.watermark.key_id:
        lines.append(f"integrity.watermark.key={cfg.watermark.key_id}")
    if cfg.authentication.key_id:
        lines.append(f"authentication.key={cfg.authentication.key_id}")
    if cfg.randomization.suffix is not None:
        lines.append(f"randomization.suffix={cfg.randomization.suffix}")
    if cfg.randomization.password:
        lines.append(f"randomization.password={cfg.randomization.password}")
    if cfg.randomization.localizer_hex:
        lines.append(f"randomization.localizer={cfg.randomization.localizer_hex}")
    return "\n".join(lines) + "\n"
