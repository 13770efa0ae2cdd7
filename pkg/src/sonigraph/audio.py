"""Turns interaction events into an abstract, timestamped audio stream.

Sound vocabulary (realized by a renderer, never synthesized here):

    HornNote      a node; pitch rises with connection count
    StringPluck   a link; pitch rises as links get shorter
    Tone150       pure 150 Hz proximity tone, volume 0..1 or off
    Bell          dome cycle separator
    Fanfare       arrival celebration (radiate / search success)
    NoiseOverlay  static layered over filtered-out elements
    Speech        spoken text
    Silence       truncation marker (e.g. the dome lifted)

Sweeps are discrete notes whose length shrinks with finger speed; dwells are
sustained and closed by a matching stop. Filtered-out elements still sound,
but faint and under noise.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from . import query
from .config import EngineConfig
from .events import (
    CircleProgress,
    CorridorLost,
    DetailTap,
    DomeEnd,
    DomeStart,
    DomeUpdate,
    FlickDown,
    FlickRight,
    InteractionEvent,
    LinkCrossed,
    LinkDwellEnd,
    LinkDwellStart,
    LinkSwept,
    NodeDwellEnd,
    NodeDwellStart,
    NodeSwept,
    RadiateArrived,
    RadiateProgress,
    SpeechCommand,
    TwoFingerFlickLeft,
)
from .geometry import DomeRegion, elements_in_dome, link_angles_at
from .model import Diagram, PitchMap, link_length, link_pitch, node_pitch
from .query import FilterState

TWO_PI = 2.0 * math.pi


def _f6(value: float) -> str:
    return f"{value:.6f}"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass(frozen=True)
class AudioEvent:
    t: int
    pointer: int | None
    element: str | None

    @property
    def kind(self) -> str:
        return type(self).__name__

    def _fields(self) -> list[tuple[str, str]]:
        return []

    def to_line(self) -> str:
        parts = [f"t={self.t}", "au", f"kind={self.kind}"]
        if self.pointer is not None:
            parts.append(f"pointer={self.pointer}")
        if self.element is not None:
            parts.append(f"element={self.element}")
        parts.extend(f"{k}={v}" for k, v in self._fields())
        return " ".join(parts)


@dataclass(frozen=True)
class HornNote(AudioEvent):
    freq: float
    duration_ms: int | None  # None means sustained until HornStop
    volume: float = 1.0

    def _fields(self):
        duration = "sustained" if self.duration_ms is None else str(self.duration_ms)
        return [("freq", _f6(self.freq)), ("duration", duration),
                ("volume", _f6(self.volume))]


@dataclass(frozen=True)
class HornStop(AudioEvent):
    pass


@dataclass(frozen=True)
class StringPluck(AudioEvent):
    freq: float
    duration_ms: int | None
    volume: float = 1.0

    def _fields(self):
        duration = "sustained" if self.duration_ms is None else str(self.duration_ms)
        return [("freq", _f6(self.freq)), ("duration", duration),
                ("volume", _f6(self.volume))]


@dataclass(frozen=True)
class StringStop(AudioEvent):
    pass


@dataclass(frozen=True)
class Bell(AudioEvent):
    pass


@dataclass(frozen=True)
class Tone150(AudioEvent):
    """Proximity tone fixed at 150 Hz; volume None switches it off."""

    volume: float | None = None

    def _fields(self):
        return [("volume", "off" if self.volume is None else _f6(self.volume))]


@dataclass(frozen=True)
class Fanfare(AudioEvent):
    freq: float
    volume: float = 1.0

    def _fields(self):
        return [("freq", _f6(self.freq)), ("volume", _f6(self.volume))]


@dataclass(frozen=True)
class NoiseOverlay(AudioEvent):
    on: bool = True

    def _fields(self):
        return [("on", "true" if self.on else "false")]


@dataclass(frozen=True)
class Speech(AudioEvent):
    text: str = ""
    interruptible: bool = False

    def _fields(self):
        return [("text", _quote(self.text)),
                ("interruptible", "true" if self.interruptible else "false")]


@dataclass(frozen=True)
class Silence(AudioEvent):
    pass


# -- small pure helpers -------------------------------------------------------


def proximity_volume(gap: float, scale: float) -> float:
    """Linear ramp from 1 at gap 0 down to 0 at gap >= scale."""
    if scale <= 0:
        return 0.0
    return max(0.0, 1.0 - gap / scale)


def sweep_note_ms(speed: float, cfg: EngineConfig) -> int:
    """Discrete note length, inversely related to finger speed."""
    raw = cfg.base_note_ms / (1.0 + speed / cfg.speed_ref)
    return int(round(min(max(raw, cfg.min_note_ms), cfg.base_note_ms)))


def speech_for_detail(d: Diagram, element_kind: str, element_id: str,
                      tap_index: int) -> str:
    """Tap 0 reads the name; each further tap reads the next attribute.

    After the last attribute the cycle wraps back to the name.
    """
    element = d.node(element_id) if element_kind == "node" else d.link(element_id)
    label = element.label or element.id
    cycle = 1 + len(element.attributes)
    k = tap_index % cycle
    if k == 0:
        return label
    key, value = element.attributes[k - 1]
    return f"{key}: {value}"


def pitch_map(cfg: EngineConfig) -> PitchMap:
    return PitchMap(cfg.node_base_hz, cfg.node_span_semitones,
                    cfg.link_base_hz, cfg.link_span_semitones)


# -- dome cycle sequencing ----------------------------------------------------


@dataclass(frozen=True)
class DomeSchedule:
    """One playback cycle for a dome region.

    Onsets are uniformly spaced so the playlist always spans the configured
    cycle duration: a dense dome plays fast, a sparse one slow. A bell at
    the cycle boundary separates repetitions.
    """

    playlist: tuple[tuple[str, str, int], ...]  # (element_id, kind, onset_ms)
    cycle_duration_ms: int
    item_duration_ms: int


def dome_schedule(node_ids, link_ids, d: Diagram, cfg: EngineConfig) -> DomeSchedule:
    """Order the dome contents into the node/link walk and space the onsets.

    The walk starts at the smallest node id. Visiting a node plays its horn,
    then every still-unplayed in-dome link except the one used to walk to
    the next unvisited node, which sounds upon arrival there. Exhausted
    components hand over to the smallest unvisited id. An empty dome has an
    empty playlist (the sequencer plays only the separator bell).
    """
    nodes = sorted(node_ids)
    link_set = set(link_ids)
    if not nodes:
        return DomeSchedule((), cfg.cycle_duration_ms, 0)
    order: list[tuple[str, str]] = []
    visited: set[str] = set()
    played: set[str] = set()
    current = nodes[0]
    while True:
        visited.add(current)
        order.append((current, "node"))
        incident = [
            link for link in d.incident_links(current)
            if link.id in link_set and link.id not in played
        ]
        next_node = None
        departure_id = None
        frontier = sorted(
            (link.other_end(current), link.id)
            for link in incident
            if link.other_end(current) not in visited
        )
        if frontier:
            next_node, departure_id = frontier[0]
        for link in sorted(incident, key=lambda l: l.id):
            if link.id == departure_id:
                continue
            played.add(link.id)
            order.append((link.id, "link"))
        if next_node is None:
            remaining = sorted(set(nodes) - visited)
            if not remaining:
                break
            current = remaining[0]
        else:
            current = next_node
    gap = cfg.cycle_duration_ms / len(order)
    playlist = tuple(
        (element_id, kind, int(round(i * gap)))
        for i, (element_id, kind) in enumerate(order)
    )
    return DomeSchedule(playlist, cfg.cycle_duration_ms, int(round(gap)))


# -- meta speech --------------------------------------------------------------


def legend_events(cfg: EngineConfig, t: int = 0) -> list[AudioEvent]:
    """The audio legend: each mapping's sound followed by its spoken name."""
    pm = pitch_map(cfg)
    step = cfg.legend_step_ms
    note = cfg.base_note_ms
    out: list[AudioEvent] = []

    def say(offset: int, text: str) -> int:
        out.append(Speech(t + offset, None, None, text, False))
        return offset + step

    offset = 0
    out.append(HornNote(t + offset, None, None, pm.node_base_hz, note))
    offset = say(offset + step, "node")
    out.append(StringPluck(t + offset, None, None, pm.link_base_hz, note))
    offset = say(offset + step, "link")
    out.append(Tone150(t + offset, None, None, 1.0))
    out.append(Tone150(t + offset + note, None, None, None))
    offset = say(offset + step, "proximity tone")
    out.append(Bell(t + offset, None, None))
    offset = say(offset + step, "dome separator")
    out.append(Fanfare(t + offset, None, None, pm.node_base_hz))
    offset = say(offset + step, "arrival")
    out.append(NoiseOverlay(t + offset, None, None, True))
    out.append(NoiseOverlay(t + offset + note, None, None, False))
    say(offset + step, "filtered out")
    return out


def meta_speech(event: InteractionEvent, d: Diagram, cfg: EngineConfig) -> list[AudioEvent]:
    """Speech (and legend sounds) for the pseudo-mode trigger events."""
    if isinstance(event, FlickDown):
        return [Speech(event.t, None, None, "listening", False)]
    if isinstance(event, FlickRight):
        text = d.alt_text or "no description available"
        return [Speech(event.t, None, None, text, False)]
    if isinstance(event, TwoFingerFlickLeft):
        return legend_events(cfg, event.t)
    if isinstance(event, SpeechCommand):
        return [Speech(event.t, None, None, event.text, False)]
    return []


def search_feedback(result_count: int, t: int) -> AudioEvent:
    if result_count == 0:
        return Speech(t, None, None, "Nothing found", False)
    return Speech(t, None, None, f"Found {result_count} result(s)", False)


# -- the renderer -------------------------------------------------------------


class _Sustain:
    __slots__ = ("element_id", "noisy")

    def __init__(self, element_id: str, noisy: bool):
        self.element_id = element_id
        self.noisy = noisy


class _EventMapper:
    """Shared event-to-audio mapping with sustain and filter state.

    Both the batch renderer and the live renderer fold events through one
    of these, so dwell sustains, circle tones and filter volumes behave the
    same way everywhere. Dome sequencing lives outside (it is time-driven,
    not event-driven).
    """

    def __init__(self, d: Diagram, cfg: EngineConfig, filter_state: FilterState):
        self.d = d
        self.cfg = cfg
        self.pm = pitch_map(cfg)
        self.filter_state = filter_state
        self.epoch_times: list[int] = [-1]
        self.epoch_states: list[FilterState] = [filter_state]
        self.horns: dict[int, _Sustain] = {}
        self.strings: dict[int, _Sustain] = {}
        self.tones: set[int] = set()

    def volume_of(self, kind: str, element_id: str) -> tuple[float, bool]:
        if self.filter_state.element_passes(kind, element_id):
            return 1.0, False
        return self.cfg.filtered_volume, True

    def _set_filter(self, state: FilterState, t: int) -> None:
        self.filter_state = state
        self.epoch_times.append(t)
        self.epoch_states.append(state)

    def _stop_horn(self, pointer, at, out) -> None:
        sustain = self.horns.pop(pointer, None)
        if sustain is None:
            return
        out.append(HornStop(at, pointer, sustain.element_id))
        if sustain.noisy:
            out.append(NoiseOverlay(at, pointer, sustain.element_id, False))

    def _stop_string(self, pointer, at, out) -> None:
        sustain = self.strings.pop(pointer, None)
        if sustain is None:
            return
        out.append(StringStop(at, pointer, sustain.element_id))
        if sustain.noisy:
            out.append(NoiseOverlay(at, pointer, sustain.element_id, False))

    def _stop_horn_on_node(self, node_id, at, out) -> None:
        for pointer in sorted(self.horns):
            if self.horns[pointer].element_id == node_id:
                self._stop_horn(pointer, at, out)

    def _stop_tone(self, pointer, at, out) -> None:
        if pointer in self.tones:
            self.tones.discard(pointer)
            out.append(Tone150(at, pointer, None, None))

    def map_event(self, ev: InteractionEvent) -> list[AudioEvent]:
        d, cfg, pm = self.d, self.cfg, self.pm
        out: list[AudioEvent] = []
        t = ev.t
        if isinstance(ev, NodeSwept):
            vol, faint = self.volume_of("node", ev.node_id)
            duration = sweep_note_ms(ev.speed, cfg)
            out.append(HornNote(t, ev.pointer, ev.node_id,
                                node_pitch(d, ev.node_id, pm), duration, vol))
            if faint:
                out.append(NoiseOverlay(t, ev.pointer, ev.node_id, True))
                out.append(NoiseOverlay(t + duration, ev.pointer, ev.node_id, False))
        elif isinstance(ev, LinkSwept):
            vol, faint = self.volume_of("link", ev.link_id)
            duration = sweep_note_ms(ev.speed, cfg)
            out.append(StringPluck(t, ev.pointer, ev.link_id,
                                   link_pitch(d, ev.link_id, pm), duration, vol))
            if faint:
                out.append(NoiseOverlay(t, ev.pointer, ev.link_id, True))
                out.append(NoiseOverlay(t + duration, ev.pointer, ev.link_id, False))
        elif isinstance(ev, NodeDwellStart):
            self._stop_horn(ev.pointer, t, out)
            vol, faint = self.volume_of("node", ev.node_id)
            out.append(HornNote(t, ev.pointer, ev.node_id,
                                node_pitch(d, ev.node_id, pm), None, vol))
            self.horns[ev.pointer] = _Sustain(ev.node_id, faint)
            if faint:
                out.append(NoiseOverlay(t, ev.pointer, ev.node_id, True))
        elif isinstance(ev, NodeDwellEnd):
            self._stop_horn(ev.pointer, t, out)
        elif isinstance(ev, LinkDwellStart):
            self._stop_string(ev.pointer, t, out)
            vol, faint = self.volume_of("link", ev.link_id)
            out.append(StringPluck(t, ev.pointer, ev.link_id,
                                   link_pitch(d, ev.link_id, pm), None, vol))
            self.strings[ev.pointer] = _Sustain(ev.link_id, faint)
            if faint:
                out.append(NoiseOverlay(t, ev.pointer, ev.link_id, True))
        elif isinstance(ev, LinkDwellEnd):
            self._stop_string(ev.pointer, t, out)
        elif isinstance(ev, DetailTap):
            text = speech_for_detail(d, ev.element_kind, ev.element_id, ev.tap_index)
            out.append(Speech(t, ev.pointer, ev.element_id, text, False))
        elif isinstance(ev, CircleProgress):
            if not ev.active:
                self._stop_tone(ev.pointer, t, out)
                return out
            angles = link_angles_at(d, ev.anchor_node)
            if ev.pointer not in self.tones:
                self._stop_horn_on_node(ev.anchor_node, t, out)
                self.tones.add(ev.pointer)
            if angles:
                gap = min(_angular_gap(ev.angle, a) for _, a in angles)
                out.append(Tone150(t, ev.pointer, ev.anchor_node,
                                   proximity_volume(gap, cfg.circle_tone_scale)))
        elif isinstance(ev, LinkCrossed):
            vol, faint = self.volume_of("link", ev.link_id)
            out.append(StringPluck(t, ev.pointer, ev.link_id,
                                   link_pitch(d, ev.link_id, pm),
                                   cfg.base_note_ms, vol))
            if faint:
                out.append(NoiseOverlay(t, ev.pointer, ev.link_id, True))
                out.append(NoiseOverlay(t + cfg.base_note_ms, ev.pointer,
                                        ev.link_id, False))
        elif isinstance(ev, RadiateProgress):
            if ev.pointer not in self.strings:
                link = d.link(ev.link_id)
                for endpoint in link.endpoints:
                    self._stop_horn_on_node(endpoint, t, out)
                vol, faint = self.volume_of("link", ev.link_id)
                out.append(StringPluck(t, ev.pointer, ev.link_id,
                                       link_pitch(d, ev.link_id, pm), None, vol))
                self.strings[ev.pointer] = _Sustain(ev.link_id, faint)
                if faint:
                    out.append(NoiseOverlay(t, ev.pointer, ev.link_id, True))
            self.tones.add(ev.pointer)
            remaining = (1.0 - ev.progress) * link_length(d, ev.link_id)
            out.append(Tone150(t, ev.pointer, ev.link_id,
                               proximity_volume(remaining, cfg.radiate_tone_scale)))
        elif isinstance(ev, CorridorLost):
            self._stop_string(ev.pointer, t, out)
        elif isinstance(ev, RadiateArrived):
            self._stop_string(ev.pointer, t, out)
            self._stop_tone(ev.pointer, t, out)
            vol, _ = self.volume_of("node", ev.node_id)
            out.append(Fanfare(t, ev.pointer, ev.node_id,
                               node_pitch(d, ev.node_id, pm), vol))
        elif isinstance(ev, (FlickDown, FlickRight, TwoFingerFlickLeft)):
            out.extend(meta_speech(ev, d, cfg))
        elif isinstance(ev, SpeechCommand):
            out.extend(meta_speech(ev, d, cfg))
            command = ev.command
            if command.action == "search":
                found = query.search(d, command.query, ev.finger)
                out.append(search_feedback(len(found.results), t))
            elif command.action == "filter":
                new_state = query.apply_filter(d, command.attribute, command.value)
                self._set_filter(new_state, t)
                out.append(Speech(t, None, None,
                                  f"{len(new_state.passing)} node(s) match", False))
            elif command.action == "clear_filter":
                self._set_filter(FilterState.inactive(), t)
                out.append(Speech(t, None, None, "filter cleared", False))
            else:
                out.append(Speech(t, None, None, "command not recognized", False))
        elif isinstance(ev, DomeEnd):
            out.append(Silence(t, ev.pointer, None))
        return out


def render(events: list[InteractionEvent], d: Diagram, cfg: EngineConfig,
           filter_state: FilterState | None = None) -> list[AudioEvent]:
    """Map an ordered interaction event list to the audio stream.

    Pure: the same inputs always produce the same list. ``filter_state`` is
    the state in force at the first event; filter speech commands inside the
    stream update it from their timestamp on.
    """
    state = filter_state if filter_state is not None else FilterState.inactive()
    mapper = _EventMapper(d, cfg, state)
    out: list[AudioEvent] = []
    for ev in events:
        out.extend(mapper.map_event(ev))
    out.extend(_dome_audio(events, d, cfg, mapper.pm,
                           mapper.epoch_times, mapper.epoch_states))
    out.sort(key=lambda a: a.t)
    return out


class LiveRenderer:
    """Incremental renderer for interactive sessions.

    Feed each frame's events together with the frame timestamp; dome cycles
    are advanced by the clock rather than by a whole-log pre-pass. Replay
    audio remains canonical through `render`; the live stream contains the
    same events (ordering within one timestamp may differ).
    """

    def __init__(self, d: Diagram, cfg: EngineConfig,
                 filter_state: FilterState | None = None):
        self.d = d
        self.cfg = cfg
        self.mapper = _EventMapper(
            d, cfg, filter_state if filter_state is not None
            else FilterState.inactive()
        )
        self._dome_region: DomeRegion | None = None
        self._dome_pointer = 0
        self._cycle_start = 0
        self._cycle_queue: list[AudioEvent] = []

    def feed(self, events: list[InteractionEvent], now_t: int) -> list[AudioEvent]:
        out: list[AudioEvent] = []
        for ev in events:
            self._advance_dome(ev.t, out)
            if isinstance(ev, DomeStart):
                self._dome_region = ev.region
                self._dome_pointer = ev.pointer if ev.pointer is not None else 0
                self._cycle_start = ev.t
                self._fill_cycle()
            elif isinstance(ev, DomeUpdate):
                self._dome_region = ev.region
            elif isinstance(ev, DomeEnd):
                self._dome_region = None
                self._cycle_queue.clear()
            out.extend(self.mapper.map_event(ev))
        self._advance_dome(now_t, out)
        out.sort(key=lambda a: a.t)
        return out

    def _fill_cycle(self) -> None:
        node_ids, link_ids = elements_in_dome(self.d, self._dome_region)
        schedule = dome_schedule(node_ids, link_ids, self.d, self.cfg)
        state = self.mapper.filter_state
        queue: list[AudioEvent] = []
        for element_id, kind, onset in schedule.playlist:
            at = self._cycle_start + onset
            if state.element_passes(kind, element_id):
                vol, faint = 1.0, False
            else:
                vol, faint = self.cfg.filtered_volume, True
            if kind == "node":
                queue.append(HornNote(at, self._dome_pointer, element_id,
                                      node_pitch(self.d, element_id, self.mapper.pm),
                                      schedule.item_duration_ms, vol))
            else:
                queue.append(StringPluck(at, self._dome_pointer, element_id,
                                         link_pitch(self.d, element_id, self.mapper.pm),
                                         schedule.item_duration_ms, vol))
            if faint:
                queue.append(NoiseOverlay(at, self._dome_pointer, element_id, True))
                queue.append(NoiseOverlay(at + schedule.item_duration_ms,
                                          self._dome_pointer, element_id, False))
        boundary = self._cycle_start + self.cfg.cycle_duration_ms
        queue.append(Bell(boundary, self._dome_pointer, None))
        self._cycle_queue = queue

    def _advance_dome(self, to_t: int, out: list[AudioEvent]) -> None:
        while self._dome_region is not None and self._cycle_queue:
            head = self._cycle_queue[0]
            if head.t >= to_t:
                return
            out.append(self._cycle_queue.pop(0))
            if isinstance(head, Bell):
                self._cycle_start += self.cfg.cycle_duration_ms
                self._fill_cycle()


def _angular_gap(a: float, b: float) -> float:
    diff = (a - b) % TWO_PI
    return min(diff, TWO_PI - diff)


def _dome_audio(events: list[InteractionEvent], d: Diagram, cfg: EngineConfig,
                pm: PitchMap, epoch_times: list[int],
                epoch_states: list[FilterState]) -> list[AudioEvent]:
    """Expand dome sessions into repeated playlist cycles.

    A cycle uses the region as of its own start; region changes apply from
    the next bell onward. Lifting the dome truncates pending items.
    """
    horizon = max((ev.t for ev in events), default=0)
    sessions: list[tuple[int, int, list[tuple[int, DomeRegion]], int]] = []
    start_t: int | None = None
    lead = 0
    changes: list[tuple[int, DomeRegion]] = []
    for ev in events:
        if isinstance(ev, DomeStart):
            start_t = ev.t
            lead = ev.pointer if ev.pointer is not None else 0
            changes = [(ev.t, ev.region)]
        elif isinstance(ev, DomeUpdate) and start_t is not None:
            changes.append((ev.t, ev.region))
        elif isinstance(ev, DomeEnd) and start_t is not None:
            sessions.append((start_t, ev.t, changes, lead))
            start_t = None
    if start_t is not None:
        sessions.append((start_t, horizon + cfg.cycle_duration_ms, changes, lead))

    def filter_at(at: int) -> FilterState:
        return epoch_states[bisect_right(epoch_times, at) - 1]

    out: list[AudioEvent] = []
    for session_start, session_end, regions, pointer in sessions:
        cycle_start = session_start
        while cycle_start < session_end:
            region = next(
                reg for at, reg in reversed(regions) if at <= cycle_start
            )
            node_ids, link_ids = elements_in_dome(d, region)
            schedule = dome_schedule(node_ids, link_ids, d, cfg)
            state = filter_at(cycle_start)
            for element_id, kind, onset in schedule.playlist:
                at = cycle_start + onset
                if at >= session_end:
                    continue
                if state.element_passes(kind, element_id):
                    vol, faint = 1.0, False
                else:
                    vol, faint = cfg.filtered_volume, True
                if kind == "node":
                    out.append(HornNote(at, pointer, element_id,
                                        node_pitch(d, element_id, pm),
                                        schedule.item_duration_ms, vol))
                else:
                    out.append(StringPluck(at, pointer, element_id,
                                           link_pitch(d, element_id, pm),
                                           schedule.item_duration_ms, vol))
                if faint:
                    out.append(NoiseOverlay(at, pointer, element_id, True))
                    out.append(NoiseOverlay(at + schedule.item_duration_ms,
                                            pointer, element_id, False))
            boundary = cycle_start + cfg.cycle_duration_ms
            if boundary < session_end:
                out.append(Bell(boundary, pointer, None))
            cycle_start = boundary
    return out
