"""Engine facade, deterministic session logs and trace replay.

Session log format (UTF-8, LF, one record per line, floats with 6 decimals):

    log v1 diagram=<id> config=<hash12> engine=<version> schema=<n>
    t=<ms> in touches=[(pid,x,y);...]
    t=<ms> sp text="<command>"
    t=<ms> ev kind=<Name> <fields...>
    t=<ms> au kind=<Name> <fields...>

Replaying the logged inputs under the same config reproduces the log byte
for byte; `diff_logs` reports the first divergence between two logs.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .audio import AudioEvent, Fanfare, LiveRenderer, Speech, pitch_map, render
from .config import EngineConfig, config_hash, load_config
from .errors import FileError, NotListening, VersionMismatch
from .events import InteractionEvent, SpeechCommand
from .gestures import GestureEngine
from .model import Diagram, load_graphml, node_pitch
from .query import (
    FilterState,
    SearchState,
    apply_filter,
    clear_filter,
    guidance_step,
    search,
)
from .traces import (
    TouchFrame,
    TraceRecord,
    frame_to_line,
    parse_trace,
    speech_to_line,
)


class Engine:
    """Ties the gesture machine, query state and audio renderer together.

    Feed frames (and speech commands) in time order; afterwards
    `render_audio` produces the audio stream for everything seen so far.
    Guidance speech is scheduled here because it depends on finger motion,
    not on interaction events.
    """

    def __init__(self, diagram: Diagram, config: EngineConfig | None = None,
                 live: bool = False):
        self.diagram = diagram
        self.config = config or EngineConfig()
        self.gestures = GestureEngine(diagram, self.config)
        self.filter_state = FilterState.inactive()
        self.search_state: SearchState | None = None
        self.interaction_events: list[InteractionEvent] = []
        self._extra_audio: list[AudioEvent] = []
        self._next_prompt_t: int | None = None
        self._live = LiveRenderer(diagram, self.config) if live else None
        self._extra_sent = 0

    def step_frame(self, frame: TouchFrame) -> list[InteractionEvent]:
        events = self.gestures.process_frame(frame)
        for ev in events:
            if isinstance(ev, SpeechCommand):
                self._apply_command(ev)
        self.interaction_events.extend(events)
        self._step_guidance(frame)
        return events

    def step_frame_live(self, frame: TouchFrame):
        """Process one frame and return (events, incremental audio)."""
        events = self.step_frame(frame)
        return events, self._live_audio(events, frame.t)

    def submit_speech(self, text: str, t: int) -> list[InteractionEvent]:
        """Submit an externally recognized command; may raise NotListening."""
        ev = self.gestures.submit_speech_command(text, t)
        self._apply_command(ev)
        self.interaction_events.append(ev)
        return [ev]

    def submit_speech_live(self, text: str, t: int):
        events = self.submit_speech(text, t)
        return events, self._live_audio(events, t)

    def _live_audio(self, events, t: int) -> list[AudioEvent]:
        audio = self._live.feed(events, t)
        audio.extend(self._extra_audio[self._extra_sent:])
        self._extra_sent = len(self._extra_audio)
        audio.sort(key=lambda a: a.t)
        return audio

    def _apply_command(self, ev: SpeechCommand) -> None:
        command = ev.command
        if command.action == "search":
            self.search_state = search(self.diagram, command.query, ev.finger)
            self._next_prompt_t = ev.t
        elif command.action == "filter":
            self.filter_state = apply_filter(
                self.diagram, command.attribute, command.value
            )
        elif command.action == "clear_filter":
            self.filter_state = clear_filter(self.filter_state)

    def speak(self, text: str, t: int, interruptible: bool = False) -> None:
        """Inject facade-level speech (refusals, UI prompts) into the stream."""
        self._extra_audio.append(Speech(t, None, None, text, interruptible))

    def _step_guidance(self, frame: TouchFrame) -> None:
        state = self.search_state
        if state is None or state.active_target is None or not frame.touches:
            return
        finger = min(frame.touches, key=lambda tp: tp.pointer_id).position
        target = state.active_target
        radius = self.config.default_node_radius
        if target.kind == "node":
            radius = self.diagram.node(target.element_id).radius
        prompt = guidance_step(target.position, finger, self.config, radius)
        if prompt.arrived:
            freq = self.config.node_base_hz
            if target.kind == "node":
                freq = node_pitch(self.diagram, target.element_id,
                                  pitch_map(self.config))
            self._extra_audio.append(
                Fanfare(frame.t, None, target.element_id, freq)
            )
            self.search_state = SearchState(state.query, state.results, None)
            self._next_prompt_t = None
            return
        if self._next_prompt_t is not None and frame.t >= self._next_prompt_t:
            self._extra_audio.append(
                Speech(frame.t, None, target.element_id,
                       ", ".join(prompt.words), True)
            )
            self._next_prompt_t = frame.t + prompt.repeat_interval_ms

    def render_audio(self) -> list[AudioEvent]:
        rendered = render(self.interaction_events, self.diagram, self.config,
                          FilterState.inactive())
        merged = rendered + self._extra_audio
        merged.sort(key=lambda a: a.t)
        return merged


# -- session logs -------------------------------------------------------------


@dataclass(frozen=True)
class SessionLog:
    header: str
    lines: tuple[str, ...]

    @property
    def schema_version(self) -> int:
        for part in self.header.split():
            if part.startswith("schema="):
                return int(part.split("=", 1)[1])
        return 0

    @property
    def text(self) -> str:
        return "\n".join((self.header, *self.lines)) + "\n"

    def sha256(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()

    @classmethod
    def from_text(cls, text: str) -> "SessionLog":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("log "):
            raise VersionMismatch("not a session log: missing header")
        return cls(lines[0], tuple(lines[1:]))


def replay(diagram: Diagram, records: list[TraceRecord],
           config: EngineConfig | None = None) -> SessionLog:
    """Run a trace through a fresh engine and log inputs and outputs."""
    config = config or EngineConfig()
    engine = Engine(diagram, config)
    rows: list[tuple[int, int, int, str]] = []  # (t, class, seq, line)
    seq = 0
    for record in records:
        if isinstance(record, TouchFrame):
            rows.append((record.t, 0, seq, frame_to_line(record).replace(
                " touches=", " in touches=", 1)))
            seq += 1
            events = engine.step_frame(record)
        else:
            rows.append((record.t, 0, seq, speech_to_line(record).replace(
                " speech=", " sp text=", 1)))
            seq += 1
            try:
                events = engine.submit_speech(record.text, record.t)
            except NotListening:
                engine.speak("not listening", record.t)
                events = []
        for ev in events:
            rows.append((ev.t, 1, seq, ev.to_line()))
            seq += 1
    for au in engine.render_audio():
        rows.append((au.t, 2, seq, au.to_line()))
        seq += 1
    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    title = diagram.title or "untitled"
    header = (
        f"log v1 diagram={title} config={config_hash(config)}"
        f" engine={__version__} schema={config.schema_version}"
    )
    return SessionLog(header, tuple(line for _, _, _, line in rows))


def run_replay(diagram_path: str | Path, trace_path: str | Path,
               config_path: str | Path | None = None) -> SessionLog:
    """Load everything from disk and replay; the CLI entry point's core."""
    diagram = _load_diagram(diagram_path)
    try:
        trace_text = Path(trace_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileError(f"cannot read trace {trace_path}: {exc}") from exc
    records = parse_trace(trace_text)
    config = load_config(config_path) if config_path else EngineConfig()
    return replay(diagram, records, config)


def _load_diagram(path: str | Path) -> Diagram:
    try:
        content = Path(path).read_bytes()
    except OSError as exc:
        raise FileError(f"cannot read diagram {path}: {exc}") from exc
    return load_graphml(content)


def diff_logs(a: SessionLog, b: SessionLog) -> str:
    """Report the first divergent record, or "identical"."""
    if a.schema_version != b.schema_version:
        raise VersionMismatch(
            f"schema {a.schema_version} vs {b.schema_version}"
        )
    if a.header != b.header:
        return f"headers differ:\n- {a.header}\n+ {b.header}"
    for index, (line_a, line_b) in enumerate(zip(a.lines, b.lines)):
        if line_a != line_b:
            return (
                f"first divergence at record {index + 1}:\n"
                f"- {line_a}\n+ {line_b}"
            )
    if len(a.lines) != len(b.lines):
        longer, mark = (a, "-") if len(a.lines) > len(b.lines) else (b, "+")
        extra = longer.lines[min(len(a.lines), len(b.lines))]
        return (
            f"first divergence at record {min(len(a.lines), len(b.lines)) + 1}:\n"
            f"{mark} {extra}"
        )
    return "identical"
