"""Touch frames, the trace file format and a small trace builder.

Trace files carry one record per line:

    t=<ms> touches=[(pid,x,y);(pid,x,y);...]
    t=<ms> speech="<command text>"

Touch records list every pointer currently on the surface (standard
multitouch semantics: a pointer missing from a frame has lifted). Speech
records inject externally recognized commands at their timestamp.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import NonMonotoneTrace, SchemaError

Position = tuple[float, float]


@dataclass(frozen=True)
class TouchPoint:
    pointer_id: int
    x: float
    y: float

    @property
    def position(self) -> Position:
        return (self.x, self.y)


@dataclass(frozen=True)
class TouchFrame:
    t: int
    touches: tuple[TouchPoint, ...]

    def __post_init__(self):
        pids = [tp.pointer_id for tp in self.touches]
        if len(pids) != len(set(pids)):
            raise SchemaError(f"frame at t={self.t} repeats a pointer id")


@dataclass(frozen=True)
class SpeechRecord:
    t: int
    text: str


TraceRecord = TouchFrame | SpeechRecord

_TOUCH_RE = re.compile(r"^t=(\d+) touches=\[(.*)\]$")
_POINT_RE = re.compile(r"^\((\d+),(-?[\d.]+),(-?[\d.]+)\)$")
_SPEECH_RE = re.compile(r'^t=(\d+) speech="(.*)"$')


def frame_to_line(frame: TouchFrame) -> str:
    touches = ";".join(
        f"({tp.pointer_id},{tp.x:.6f},{tp.y:.6f})" for tp in frame.touches
    )
    return f"t={frame.t} touches=[{touches}]"


def speech_to_line(record: SpeechRecord) -> str:
    escaped = record.text.replace("\\", "\\\\").replace('"', '\\"')
    return f't={record.t} speech="{escaped}"'


def record_to_line(record: TraceRecord) -> str:
    if isinstance(record, TouchFrame):
        return frame_to_line(record)
    return speech_to_line(record)


def parse_trace_line(line: str) -> TraceRecord:
    match = _TOUCH_RE.match(line)
    if match:
        t = int(match.group(1))
        body = match.group(2)
        touches = []
        if body:
            for chunk in body.split(";"):
                point = _POINT_RE.match(chunk)
                if not point:
                    raise SchemaError(f"bad touch record {chunk!r}")
                touches.append(
                    TouchPoint(int(point.group(1)), float(point.group(2)),
                               float(point.group(3)))
                )
        return TouchFrame(t, tuple(touches))
    match = _SPEECH_RE.match(line)
    if match:
        text = match.group(2).replace('\\"', '"').replace("\\\\", "\\")
        return SpeechRecord(int(match.group(1)), text)
    raise SchemaError(f"unrecognized trace line {line!r}")


def parse_trace(text: str) -> list[TraceRecord]:
    records: list[TraceRecord] = []
    last_t = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            record = parse_trace_line(line)
        except SchemaError as exc:
            raise SchemaError(f"line {lineno}: {exc}") from exc
        if record.t <= last_t:
            raise NonMonotoneTrace(
                f"line {lineno}: t={record.t} does not advance past {last_t}"
            )
        last_t = record.t
        records.append(record)
    return records


def write_trace(records: list[TraceRecord], path: str | Path) -> None:
    Path(path).write_text(serialize_trace(records), encoding="utf-8")


def serialize_trace(records: list[TraceRecord]) -> str:
    return "".join(record_to_line(r) + "\n" for r in records)


class TraceBuilder:
    """Synthesizes deterministic touch traces for tests, demos and goldens.

    Pointers are held between frames; every mutation appends one frame
    containing all currently held pointers. The default frame period matches
    a 60 Hz touch scan.
    """

    def __init__(self, start_t: int = 0, period_ms: int = 16):
        self.t = start_t
        self.period_ms = period_ms
        self._held: dict[int, Position] = {}
        self.records: list[TraceRecord] = []

    def _emit(self) -> None:
        touches = tuple(
            TouchPoint(pid, x, y) for pid, (x, y) in sorted(self._held.items())
        )
        self.records.append(TouchFrame(self.t, touches))

    def tick(self, count: int = 1) -> "TraceBuilder":
        """Advance time, re-reporting held pointers each frame."""
        for _ in range(count):
            self.t += self.period_ms
            self._emit()
        return self

    def down(self, pid: int, pos: Position) -> "TraceBuilder":
        self.t += self.period_ms
        self._held[pid] = pos
        self._emit()
        return self

    def up(self, pid: int) -> "TraceBuilder":
        self.t += self.period_ms
        self._held.pop(pid)
        self._emit()
        return self

    def move(self, pid: int, pos: Position) -> "TraceBuilder":
        self.t += self.period_ms
        self._held[pid] = pos
        self._emit()
        return self

    def hold(self, duration_ms: int) -> "TraceBuilder":
        """Keep everything still for at least the given duration."""
        frames = max(1, math.ceil(duration_ms / self.period_ms))
        return self.tick(frames)

    def line_to(self, pid: int, target: Position, step: float = 0.02) -> "TraceBuilder":
        """Drag a pointer straight to the target in uniform steps."""
        x0, y0 = self._held[pid]
        dist = math.hypot(target[0] - x0, target[1] - y0)
        steps = max(1, math.ceil(dist / step))
        for i in range(1, steps + 1):
            frac = i / steps
            self.move(pid, (x0 + (target[0] - x0) * frac, y0 + (target[1] - y0) * frac))
        return self

    def orbit(self, pid: int, center: Position, radius: float,
              start_angle: float, sweep: float, steps: int) -> "TraceBuilder":
        """Move a pointer along a circular arc around a center point."""
        for i in range(1, steps + 1):
            angle = start_angle + sweep * (i / steps)
            self.move(
                pid,
                (center[0] + radius * math.cos(angle),
                 center[1] + radius * math.sin(angle)),
            )
        return self

    def speech(self, text: str) -> "TraceBuilder":
        self.t += self.period_ms
        self.records.append(SpeechRecord(self.t, text))
        return self

    def build(self) -> list[TraceRecord]:
        return list(self.records)
