"""Engine configuration: every threshold, duration and mapping parameter.

All lengths are in normalized screen units (the diagram occupies the unit
square), durations in milliseconds, speeds in normalized units per second,
angles in radians and frequencies in Hz.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class EngineConfig:
    # hit geometry
    default_node_radius: float = 0.045
    corridor_half_width: float = 0.02
    growth_factor: float = 1.6
    slow_threshold: float = 0.05

    # pitch mapping
    node_base_hz: float = 220.0
    node_span_semitones: int = 12
    link_base_hz: float = 330.0
    link_span_semitones: int = 12

    # gesture recognition
    dwell_ms: int = 300
    tap_ms: int = 250
    tap_radius: float = 0.09
    orbit_r_min: float = 0.04
    orbit_r_max: float = 0.22
    circle_arm_rad: float = 0.15
    radiate_start_delta: float = 0.01
    flick_ms: int = 250
    flick_dist: float = 0.12
    flick_cone_deg: float = 30.0
    flick_pair_ms: int = 150
    dome_window_ms: int = 300
    dome_span: float = 0.5
    dome_move_eps: float = 0.03
    corridor_lost_ms: int = 600
    listen_window_ms: int = 5000

    # audio rendering
    base_note_ms: int = 250
    min_note_ms: int = 40
    speed_ref: float = 0.5
    cycle_duration_ms: int = 4000
    filtered_volume: float = 0.25
    circle_tone_scale: float = 0.8
    radiate_tone_scale: float = 0.3
    legend_step_ms: int = 700

    # search guidance
    arrive_eps: float = 0.02
    pace_min_ms: int = 350
    pace_max_ms: int = 1200
    pace_dist_ref: float = 0.7

    schema_version: int = 1

    def __post_init__(self):
        validate_config(self)


_DURATION_KEYS = (
    "dwell_ms", "tap_ms", "flick_ms", "flick_pair_ms", "dome_window_ms",
    "corridor_lost_ms", "listen_window_ms", "base_note_ms", "min_note_ms",
    "cycle_duration_ms", "legend_step_ms", "pace_min_ms", "pace_max_ms",
)
_LENGTH_KEYS = (
    "default_node_radius", "corridor_half_width", "tap_radius",
    "orbit_r_min", "orbit_r_max", "radiate_start_delta", "flick_dist",
    "dome_span", "dome_move_eps", "arrive_eps", "pace_dist_ref",
    "radiate_tone_scale",
)


def validate_config(cfg: EngineConfig) -> None:
    """Raise ValidationError if any field is outside its permitted range."""
    for key in _DURATION_KEYS:
        if getattr(cfg, key) <= 0:
            raise ValidationError(f"{key} must be a positive duration")
    for key in _LENGTH_KEYS:
        value = getattr(cfg, key)
        if not 0.0 < value <= 1.0:
            raise ValidationError(f"{key} must lie in (0, 1], got {value}")
    if cfg.growth_factor <= 1.0:
        raise ValidationError("growth_factor must exceed 1")
    if cfg.cycle_duration_ms < 500:
        raise ValidationError("cycle_duration_ms must be at least 500")
    if cfg.node_base_hz <= 0 or cfg.link_base_hz <= 0:
        raise ValidationError("base frequencies must be positive")
    if cfg.node_span_semitones < 1 or cfg.link_span_semitones < 1:
        raise ValidationError("pitch spans must be at least one semitone")
    if cfg.slow_threshold <= 0 or cfg.speed_ref <= 0:
        raise ValidationError("speed thresholds must be positive")
    if not 0.0 <= cfg.filtered_volume <= 1.0:
        raise ValidationError("filtered_volume must lie in [0, 1]")
    if not 0.0 < cfg.flick_cone_deg < 45.0:
        raise ValidationError("flick_cone_deg must lie in (0, 45)")
    if cfg.orbit_r_min >= cfg.orbit_r_max:
        raise ValidationError("orbit_r_min must be below orbit_r_max")
    if cfg.pace_min_ms > cfg.pace_max_ms:
        raise ValidationError("pace_min_ms must not exceed pace_max_ms")
    if cfg.circle_arm_rad <= 0:
        raise ValidationError("circle_arm_rad must be positive")
    if cfg.circle_tone_scale <= 0:
        raise ValidationError("circle_tone_scale must be positive")
    if cfg.schema_version != 1:
        raise ValidationError(f"unknown schema_version {cfg.schema_version}")


def load_config(path: str | Path) -> EngineConfig:
    """Parse a ``key = value`` config file, applying defaults for missing keys.

    Lines starting with ``#`` and blank lines are ignored. Unknown keys are
    rejected with ParseError; out-of-range values raise ValidationError.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def parse_config(text: str) -> EngineConfig:
    known = {f.name: f.type for f in fields(EngineConfig)}
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = int(value) if known[key] == "int" else float(value)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    return EngineConfig(**values)


def serialize_config(cfg: EngineConfig) -> str:
    """Emit the config in canonical form (field declaration order)."""
    lines = []
    for f in fields(EngineConfig):
        value = getattr(cfg, f.name)
        lines.append(f"{f.name} = {value!r}")
    return "\n".join(lines) + "\n"


def config_hash(cfg: EngineConfig) -> str:
    """Short stable digest used in session log headers."""
    digest = hashlib.sha256(serialize_config(cfg).encode("utf-8")).hexdigest()
    return digest[:12]
