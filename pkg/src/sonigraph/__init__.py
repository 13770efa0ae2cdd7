"""Sonigraph: a deterministic touch-in/audio-out engine for node-link diagrams.

The engine is headless: it consumes timestamped touch frames (plus
externally recognized speech commands) and emits semantic interaction
events and an abstract audio stream. Everything is reproducible: replaying
a recorded trace yields a byte-identical session log.
"""

__version__ = "0.1.0"

from .audio import (
    AudioEvent,
    DomeSchedule,
    LiveRenderer,
    dome_schedule,
    legend_events,
    meta_speech,
    proximity_volume,
    render,
    speech_for_detail,
)
from .config import EngineConfig, load_config, parse_config, serialize_config
from .events import InteractionEvent, parse_command
from .geometry import (
    DomeRegion,
    HitResult,
    HysteresisState,
    Quadrant,
    distance_to_link,
    elements_in_dome,
    grow_hysteresis,
    hit_test,
    link_angles_at,
    make_dome_region,
    quadrant_stats,
)
from .gestures import GestureEngine
from .model import (
    Diagram,
    Link,
    Node,
    PitchMap,
    build_diagram,
    link_length,
    link_pitch,
    load_graphml,
    node_degree,
    node_pitch,
    serialize_graphml,
)
from .query import (
    FilterState,
    GuidancePrompt,
    SearchState,
    apply_filter,
    clear_filter,
    guidance_step,
    search,
)
from .session import Engine, SessionLog, diff_logs, replay, run_replay
from .traces import TouchFrame, TouchPoint, TraceBuilder, parse_trace, write_trace

__all__ = [
    "AudioEvent",
    "Diagram",
    "DomeRegion",
    "DomeSchedule",
    "Engine",
    "EngineConfig",
    "FilterState",
    "GestureEngine",
    "GuidancePrompt",
    "HitResult",
    "HysteresisState",
    "InteractionEvent",
    "Link",
    "LiveRenderer",
    "Node",
    "PitchMap",
    "Quadrant",
    "SearchState",
    "SessionLog",
    "TouchFrame",
    "TouchPoint",
    "TraceBuilder",
    "apply_filter",
    "build_diagram",
    "clear_filter",
    "diff_logs",
    "distance_to_link",
    "dome_schedule",
    "elements_in_dome",
    "grow_hysteresis",
    "guidance_step",
    "hit_test",
    "legend_events",
    "link_angles_at",
    "link_length",
    "link_pitch",
    "load_config",
    "load_graphml",
    "make_dome_region",
    "meta_speech",
    "node_degree",
    "node_pitch",
    "parse_command",
    "parse_config",
    "parse_trace",
    "proximity_volume",
    "quadrant_stats",
    "render",
    "replay",
    "run_replay",
    "search",
    "serialize_config",
    "serialize_graphml",
    "speech_for_detail",
    "write_trace",
]
