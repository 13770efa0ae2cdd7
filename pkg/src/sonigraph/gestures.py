"""Multi-touch gesture recognition state machine.

The engine consumes TouchFrames in strictly increasing time order and emits
InteractionEvents. Every pointer is in exactly one phase at a time:

    sweeping   free movement; entering an element fires a swept event
    dwell      held on one element past the dwell threshold
    circling   orbiting a dwelling finger inside the orbit annulus
    radiating  tracing an incident link outward from a dwelt node
    dome       one of five near-simultaneous contacts summarized as a region

Independent pointer groups run concurrently: two hands can dwell+tap on two
different nodes at once without interfering. Determinism is a hard
requirement (replay tests compare logs byte for byte), so all iteration is
in sorted pointer order and no wall-clock time is consulted.

Recognition notes:

* A pointer that lands inside the orbit annulus of an active node dwell is
  bound to that dwell, but stays latent until it has orbited a minimum arc.
  A latent pointer that lifts quickly counts as a detail tap; one that pulls
  outward along an incident link becomes a radiate. This keeps taps from
  interrupting the dwell sound.
* Strokes young enough to become flicks hold their swept events in a buffer:
  the buffer is flushed when the stroke outlives the flick window and
  dropped when the stroke classifies as a flick, so a flick never produces
  sweep sounds (retroactive suppression).
* Dome recognition takes the five most recent free pointers; their buffered
  sweeps are dropped. Sweeps already flushed before the fifth finger landed
  are not recalled.
"""
from __future__ import annotations

import math

from .config import EngineConfig
from .errors import NonMonotoneTime, NotListening
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
    parse_command,
    sort_events,
)
from .geometry import (
    DegenerateRegion,
    HitResult,
    HysteresisState,
    IDLE_HYSTERESIS,
    grow_hysteresis,
    hit_test,
    link_angles_at,
    make_dome_region,
    project_on_segment,
)
from .model import Diagram
from .traces import Position, TouchFrame

TWO_PI = 2.0 * math.pi

SWEEPING = "sweeping"
DWELL_NODE = "dwell_node"
DWELL_LINK = "dwell_link"
CIRCLING = "circling"
RADIATING = "radiating"
DOME = "dome"

_CARDINALS = (
    ("down", (0.0, 1.0)),
    ("up", (0.0, -1.0)),
    ("left", (-1.0, 0.0)),
    ("right", (1.0, 0.0)),
)


class _Pointer:
    def __init__(self, pid: int, t: int, pos: Position):
        self.pid = pid
        self.down_t = t
        self.down_pos = pos
        self.pos = pos
        self.t = t
        self.phase = SWEEPING
        self.hysteresis: HysteresisState = IDLE_HYSTERESIS
        self.element: tuple[str, str] | None = None
        self.entry_t = t
        self.taps = 0
        self.flick_candidate = True
        self.buffer: list[InteractionEvent] = []
        # circling / radiating
        self.anchor_pid = -1
        self.anchor_node = ""
        self.armed = False
        self.start_angle = 0.0
        self.prev_angle = 0.0
        self.cum_angle = 0.0
        self.prev_r = 0.0
        self.outward = 0.0
        self.link_id = ""
        self.target_node = ""
        self.corridor_lost_t: int | None = None


class _Dome:
    def __init__(self, pids: list[int], anchors: dict[int, Position], region):
        self.pids = pids
        self.anchors = anchors
        self.region = region

    @property
    def lead(self) -> int:
        return min(self.pids)


class GestureEngine:
    """Recognizes the interaction techniques over one diagram."""

    def __init__(self, diagram: Diagram, config: EngineConfig | None = None):
        self.d = diagram
        self.cfg = config or EngineConfig()
        self._pointers: dict[int, _Pointer] = {}
        self._dome: _Dome | None = None
        self._pending_left: list[tuple[int, int]] = []  # (t, pid)
        self._listen_deadline: int | None = None
        self._last_t: int | None = None

    # -- public API ---------------------------------------------------------

    def process_frame(self, frame: TouchFrame) -> list[InteractionEvent]:
        if self._last_t is not None and frame.t <= self._last_t:
            raise NonMonotoneTime(
                f"frame t={frame.t} does not advance past {self._last_t}"
            )
        self._last_t = frame.t
        t = frame.t
        out: list[InteractionEvent] = []
        present = {tp.pointer_id: tp.position for tp in frame.touches}

        self._expire_timers(t, out)
        for pid in sorted(self._pointers):
            if pid not in present:
                self._handle_up(self._pointers[pid], t, out)
        for pid in sorted(present):
            if pid in self._pointers:
                self._handle_move(self._pointers[pid], present[pid], t, out)
        for pid in sorted(present):
            if pid not in self._pointers:
                self._handle_down(pid, present[pid], t, out)
        self._check_dome_motion(t, out)
        return sort_events(out)

    def submit_speech_command(self, text: str, t: int) -> SpeechCommand:
        """Accept an externally recognized command while listening.

        Requires a flick-down within the listen window; each flick-down
        grants one command.
        """
        if self._listen_deadline is None or t > self._listen_deadline:
            raise NotListening(f"no flick-down within the listen window at t={t}")
        self._listen_deadline = None
        if self._last_t is None or t > self._last_t:
            self._last_t = t
        finger = (0.5, 0.5)
        if self._pointers:
            finger = self._pointers[min(self._pointers)].pos
        return SpeechCommand(t, None, text, parse_command(text), finger)

    @property
    def listening(self) -> bool:
        return self._listen_deadline is not None

    # -- timers -------------------------------------------------------------

    def _expire_timers(self, t: int, out: list[InteractionEvent]) -> None:
        for pid in sorted(self._pointers):
            ptr = self._pointers[pid]
            if ptr.flick_candidate and t - ptr.down_t > self.cfg.flick_ms:
                out.extend(ptr.buffer)
                ptr.buffer.clear()
                ptr.flick_candidate = False
        self._pending_left = [
            (t0, pid) for t0, pid in self._pending_left
            if t - t0 <= self.cfg.flick_pair_ms
        ]

    # -- pointer down -------------------------------------------------------

    def _handle_down(self, pid: int, pos: Position, t: int,
                     out: list[InteractionEvent]) -> None:
        ptr = _Pointer(pid, t, pos)
        self._pointers[pid] = ptr
        anchor = self._nearest_anchor(pos, exclude=pid)
        if anchor is not None:
            self._bind_circle(ptr, anchor, pos)
        else:
            hit = hit_test(self.d, pos, ptr.hysteresis, self.cfg)
            ptr.hysteresis = grow_hysteresis(ptr.hysteresis, hit, 0.0, self.cfg)
            self._enter_element(ptr, hit, 0.0, t, out)
            self._try_form_dome(t, out)

    def _nearest_anchor(self, pos: Position, exclude: int) -> _Pointer | None:
        best: tuple[float, int, _Pointer] | None = None
        for pid in sorted(self._pointers):
            if pid == exclude:
                continue
            other = self._pointers[pid]
            if other.phase != DWELL_NODE or other.element is None:
                continue
            center = self.d.node(other.element[1]).position
            dist = math.hypot(pos[0] - center[0], pos[1] - center[1])
            if self.cfg.orbit_r_min <= dist <= self.cfg.orbit_r_max:
                if best is None or (dist, pid) < best[:2]:
                    best = (dist, pid, other)
        return best[2] if best else None

    def _bind_circle(self, ptr: _Pointer, anchor: _Pointer, pos: Position) -> None:
        ptr.phase = CIRCLING
        ptr.flick_candidate = False
        ptr.anchor_pid = anchor.pid
        ptr.anchor_node = anchor.element[1]
        center = self.d.node(ptr.anchor_node).position
        ptr.prev_r = math.hypot(pos[0] - center[0], pos[1] - center[1])
        angle = math.atan2(pos[1] - center[1], pos[0] - center[0]) % TWO_PI
        ptr.start_angle = angle
        ptr.prev_angle = angle
        ptr.cum_angle = 0.0
        ptr.armed = False
        ptr.outward = 0.0

    def _enter_element(self, ptr: _Pointer, hit: HitResult, speed: float,
                       t: int, out: list[InteractionEvent]) -> None:
        new_element = None if hit.is_none else (hit.kind, hit.element_id)
        if new_element == ptr.element:
            return
        ptr.element = new_element
        ptr.entry_t = t
        if new_element is None:
            return
        kind, element_id = new_element
        event: InteractionEvent
        if kind == "node":
            event = NodeSwept(t, ptr.pid, element_id, speed)
        else:
            event = LinkSwept(t, ptr.pid, element_id, speed)
        if ptr.flick_candidate:
            ptr.buffer.append(event)
        else:
            out.append(event)

    # -- pointer up ---------------------------------------------------------

    def _handle_up(self, ptr: _Pointer, t: int, out: list[InteractionEvent]) -> None:
        if ptr.phase == DOME:
            self._end_dome(t, out)
            del self._pointers[ptr.pid]
            return
        self._detect_tap(ptr, t, out)
        if ptr.flick_candidate:
            self._classify_flick(ptr, t, out)
        if ptr.phase == DWELL_NODE and ptr.element:
            out.append(NodeDwellEnd(t, ptr.pid, ptr.element[1]))
        elif ptr.phase == DWELL_LINK and ptr.element:
            out.append(LinkDwellEnd(t, ptr.pid, ptr.element[1]))
        elif ptr.phase == CIRCLING and ptr.armed:
            out.append(CircleProgress(t, ptr.pid, ptr.anchor_node,
                                      ptr.prev_angle, False))
        elif ptr.phase == RADIATING:
            if ptr.corridor_lost_t is None:
                out.append(CorridorLost(t, ptr.pid, ptr.link_id))
            out.append(CircleProgress(t, ptr.pid, ptr.anchor_node,
                                      ptr.prev_angle, False))
        del self._pointers[ptr.pid]

    def _detect_tap(self, ptr: _Pointer, t: int, out: list[InteractionEvent]) -> None:
        if t - ptr.down_t > self.cfg.tap_ms:
            return
        best: tuple[float, int, _Pointer] | None = None
        for pid in sorted(self._pointers):
            if pid == ptr.pid:
                continue
            other = self._pointers[pid]
            if other.phase not in (DWELL_NODE, DWELL_LINK) or other.element is None:
                continue
            down_d = math.hypot(ptr.down_pos[0] - other.pos[0],
                                ptr.down_pos[1] - other.pos[1])
            up_d = math.hypot(ptr.pos[0] - other.pos[0], ptr.pos[1] - other.pos[1])
            dist = max(down_d, up_d)
            if dist <= self.cfg.tap_radius:
                if best is None or (dist, pid) < best[:2]:
                    best = (dist, pid, other)
        if best is None:
            return
        anchor = best[2]
        kind, element_id = anchor.element
        out.append(DetailTap(t, anchor.pid, kind, element_id, anchor.taps))
        anchor.taps += 1

    def _classify_flick(self, ptr: _Pointer, t: int,
                        out: list[InteractionEvent]) -> None:
        duration = t - ptr.down_t
        dx = ptr.pos[0] - ptr.down_pos[0]
        dy = ptr.pos[1] - ptr.down_pos[1]
        length = math.hypot(dx, dy)
        direction = None
        if duration <= self.cfg.flick_ms and length >= self.cfg.flick_dist:
            cos_limit = math.cos(math.radians(self.cfg.flick_cone_deg))
            for name, (ux, uy) in _CARDINALS:
                if (dx * ux + dy * uy) / length >= cos_limit:
                    direction = name
                    break
        if direction is None:
            out.extend(ptr.buffer)
            ptr.buffer.clear()
            return
        ptr.buffer.clear()
        if direction == "down":
            out.append(FlickDown(t, ptr.pid))
            self._listen_deadline = t + self.cfg.listen_window_ms
        elif direction == "right":
            out.append(FlickRight(t, ptr.pid))
        elif direction == "left":
            if self._pending_left:
                t0, other_pid = self._pending_left[0]
                if t - t0 <= self.cfg.flick_pair_ms:
                    out.append(TwoFingerFlickLeft(t, min(ptr.pid, other_pid)))
                    self._pending_left.clear()
                    return
            self._pending_left.append((t, ptr.pid))
        # an upward flick suppresses its sweeps but maps to no command

    # -- pointer move -------------------------------------------------------

    def _handle_move(self, ptr: _Pointer, pos: Position, t: int,
                     out: list[InteractionEvent]) -> None:
        dt = t - ptr.t
        speed = 0.0
        if dt > 0:
            speed = math.hypot(pos[0] - ptr.pos[0], pos[1] - ptr.pos[1]) / dt * 1000.0
        ptr.pos = pos
        ptr.t = t
        if ptr.phase == DOME:
            return
        if ptr.phase == SWEEPING:
            self._move_sweeping(ptr, pos, speed, t, out)
        elif ptr.phase in (DWELL_NODE, DWELL_LINK):
            self._move_dwelling(ptr, pos, speed, t, out)
        elif ptr.phase == CIRCLING:
            self._move_circling(ptr, pos, t, out)
        elif ptr.phase == RADIATING:
            self._move_radiating(ptr, pos, t, out)

    def _move_sweeping(self, ptr: _Pointer, pos: Position, speed: float,
                       t: int, out: list[InteractionEvent]) -> None:
        hit = hit_test(self.d, pos, ptr.hysteresis, self.cfg)
        ptr.hysteresis = grow_hysteresis(ptr.hysteresis, hit, speed, self.cfg)
        self._enter_element(ptr, hit, speed, t, out)
        if ptr.element is not None and t - ptr.entry_t >= self.cfg.dwell_ms:
            kind, element_id = ptr.element
            ptr.taps = 0
            if kind == "node":
                ptr.phase = DWELL_NODE
                out.append(NodeDwellStart(t, ptr.pid, element_id))
            else:
                ptr.phase = DWELL_LINK
                out.append(LinkDwellStart(t, ptr.pid, element_id))

    def _move_dwelling(self, ptr: _Pointer, pos: Position, speed: float,
                       t: int, out: list[InteractionEvent]) -> None:
        hit = hit_test(self.d, pos, ptr.hysteresis, self.cfg)
        ptr.hysteresis = grow_hysteresis(ptr.hysteresis, hit, speed, self.cfg)
        still_on = (not hit.is_none) and (hit.kind, hit.element_id) == ptr.element
        if still_on:
            return
        kind, element_id = ptr.element
        if kind == "node":
            out.append(NodeDwellEnd(t, ptr.pid, element_id))
        else:
            out.append(LinkDwellEnd(t, ptr.pid, element_id))
        ptr.phase = SWEEPING
        ptr.element = None
        self._enter_element(ptr, hit, speed, t, out)

    def _to_sweeping(self, ptr: _Pointer, t: int) -> None:
        ptr.phase = SWEEPING
        ptr.element = None
        ptr.entry_t = t
        ptr.hysteresis = IDLE_HYSTERESIS

    def _anchor_alive(self, ptr: _Pointer) -> bool:
        anchor = self._pointers.get(ptr.anchor_pid)
        return (
            anchor is not None
            and anchor.phase == DWELL_NODE
            and anchor.element is not None
            and anchor.element[1] == ptr.anchor_node
        )

    def _incident_corridor(self, node_id: str, pos: Position) -> tuple[str, float] | None:
        """Nearest incident link whose corridor contains the position."""
        best: tuple[float, str] | None = None
        origin = self.d.node(node_id).position
        for link in self.d.incident_links(node_id):
            target = self.d.node(link.other_end(node_id)).position
            _, dist = project_on_segment(pos, origin, target)
            if dist <= self.cfg.corridor_half_width:
                if best is None or (dist, link.id) < best:
                    best = (dist, link.id)
        if best is None:
            return None
        return best[1], best[0]

    def _move_circling(self, ptr: _Pointer, pos: Position, t: int,
                       out: list[InteractionEvent]) -> None:
        if not self._anchor_alive(ptr):
            if ptr.armed:
                out.append(CircleProgress(t, ptr.pid, ptr.anchor_node,
                                          ptr.prev_angle, False))
            self._to_sweeping(ptr, t)
            return
        center = self.d.node(ptr.anchor_node).position
        r = math.hypot(pos[0] - center[0], pos[1] - center[1])
        angle = math.atan2(pos[1] - center[1], pos[0] - center[0]) % TWO_PI

        corridor = self._incident_corridor(ptr.anchor_node, pos)
        if corridor is not None and r > ptr.prev_r:
            ptr.outward += r - ptr.prev_r
        elif corridor is None or r < ptr.prev_r:
            ptr.outward = 0.0
        if corridor is not None and ptr.outward >= self.cfg.radiate_start_delta:
            self._start_radiate(ptr, corridor[0], pos, angle, r, t, out)
            return

        if not (self.cfg.orbit_r_min <= r <= self.cfg.orbit_r_max):
            if ptr.armed:
                out.append(CircleProgress(t, ptr.pid, ptr.anchor_node,
                                          ptr.prev_angle, False))
            self._to_sweeping(ptr, t)
            return

        delta = (angle - ptr.prev_angle + math.pi) % TWO_PI - math.pi
        c0 = ptr.cum_angle
        c1 = c0 + delta
        ptr.cum_angle = c1
        for link_id, link_angle in link_angles_at(self.d, ptr.anchor_node):
            offset = (link_angle - ptr.start_angle) % TWO_PI
            crossings = _crossings(c0, c1, offset)
            for _ in range(crossings):
                out.append(LinkCrossed(t, ptr.pid, link_id))
        just_armed = False
        if not ptr.armed and abs(c1) >= self.cfg.circle_arm_rad:
            ptr.armed = True
            just_armed = True
        if ptr.armed and (just_armed or delta != 0.0):
            out.append(CircleProgress(t, ptr.pid, ptr.anchor_node, angle, True))
        ptr.prev_angle = angle
        ptr.prev_r = r

    def _start_radiate(self, ptr: _Pointer, link_id: str, pos: Position,
                       angle: float, r: float, t: int,
                       out: list[InteractionEvent]) -> None:
        link = self.d.link(link_id)
        ptr.phase = RADIATING
        ptr.link_id = link_id
        ptr.target_node = link.other_end(ptr.anchor_node)
        ptr.corridor_lost_t = None
        ptr.prev_angle = angle
        ptr.prev_r = r
        self._radiate_step(ptr, pos, t, out)

    def _move_radiating(self, ptr: _Pointer, pos: Position, t: int,
                        out: list[InteractionEvent]) -> None:
        if not self._anchor_alive(ptr):
            if ptr.corridor_lost_t is None:
                out.append(CorridorLost(t, ptr.pid, ptr.link_id))
            out.append(CircleProgress(t, ptr.pid, ptr.anchor_node,
                                      ptr.prev_angle, False))
            self._to_sweeping(ptr, t)
            return
        center = self.d.node(ptr.anchor_node).position
        ptr.prev_angle = math.atan2(pos[1] - center[1], pos[0] - center[0]) % TWO_PI
        ptr.prev_r = math.hypot(pos[0] - center[0], pos[1] - center[1])
        self._radiate_step(ptr, pos, t, out)

    def _radiate_step(self, ptr: _Pointer, pos: Position, t: int,
                      out: list[InteractionEvent]) -> None:
        origin = self.d.node(ptr.anchor_node).position
        target = self.d.node(ptr.target_node)
        u, dist = project_on_segment(pos, origin, target.position)
        if dist <= self.cfg.corridor_half_width:
            ptr.corridor_lost_t = None
            reach = math.hypot(pos[0] - target.position[0],
                               pos[1] - target.position[1])
            if reach <= target.radius:
                out.append(RadiateProgress(t, ptr.pid, ptr.link_id, 1.0))
                out.append(RadiateArrived(t, ptr.pid, target.id))
                ptr.phase = DWELL_NODE
                ptr.element = ("node", target.id)
                ptr.entry_t = t
                ptr.taps = 0
                ptr.hysteresis = IDLE_HYSTERESIS
                out.append(NodeDwellStart(t, ptr.pid, target.id))
            else:
                progress = min(max(u, 0.0), 1.0)
                out.append(RadiateProgress(t, ptr.pid, ptr.link_id, progress))
        else:
            if ptr.corridor_lost_t is None:
                ptr.corridor_lost_t = t
                out.append(CorridorLost(t, ptr.pid, ptr.link_id))
            elif t - ptr.corridor_lost_t >= self.cfg.corridor_lost_ms:
                out.append(CircleProgress(t, ptr.pid, ptr.anchor_node,
                                          ptr.prev_angle, False))
                self._to_sweeping(ptr, t)

    # -- dome ----------------------------------------------------------------

    def _try_form_dome(self, t: int, out: list[InteractionEvent]) -> None:
        if self._dome is not None:
            return
        candidates = [
            ptr for _, ptr in sorted(self._pointers.items())
            if ptr.phase == SWEEPING and t - ptr.down_t <= self.cfg.dome_window_ms
        ]
        if len(candidates) < 5:
            return
        candidates.sort(key=lambda p: (p.down_t, p.pid))
        group = candidates[-5:]
        positions = [p.pos for p in group]
        # Contacts must fit a bounding circle of radius dome_span around
        # their centroid (roughly: one hand, not two).
        cx = sum(x for x, _ in positions) / 5.0
        cy = sum(y for _, y in positions) / 5.0
        reach = max(math.hypot(x - cx, y - cy) for x, y in positions)
        if reach > self.cfg.dome_span:
            return
        group.sort(key=lambda p: p.pid)
        try:
            region = make_dome_region([p.pos for p in group])
        except DegenerateRegion:
            return
        for ptr in group:
            ptr.phase = DOME
            ptr.element = None
            ptr.buffer.clear()
            ptr.flick_candidate = False
        self._dome = _Dome(
            pids=[p.pid for p in group],
            anchors={p.pid: p.pos for p in group},
            region=region,
        )
        out.append(DomeStart(t, self._dome.lead, region))

    def _check_dome_motion(self, t: int, out: list[InteractionEvent]) -> None:
        dome = self._dome
        if dome is None:
            return
        moved = any(
            math.hypot(
                self._pointers[pid].pos[0] - dome.anchors[pid][0],
                self._pointers[pid].pos[1] - dome.anchors[pid][1],
            ) > self.cfg.dome_move_eps
            for pid in dome.pids
        )
        if not moved:
            return
        positions = [self._pointers[pid].pos for pid in sorted(dome.pids)]
        try:
            region = make_dome_region(positions)
        except DegenerateRegion:
            return
        dome.region = region
        dome.anchors = {pid: self._pointers[pid].pos for pid in dome.pids}
        out.append(DomeUpdate(t, dome.lead, region))

    def _end_dome(self, t: int, out: list[InteractionEvent]) -> None:
        dome = self._dome
        if dome is None:
            return
        out.append(DomeEnd(t, dome.lead))
        for pid in dome.pids:
            survivor = self._pointers.get(pid)
            if survivor is not None:
                self._to_sweeping(survivor, t)
                survivor.flick_candidate = False
        self._dome = None


def _crossings(c0: float, c1: float, offset: float) -> int:
    """How many times a sweep from c0 to c1 passes offset (mod 2*pi).

    Half-open toward the arrival end, so a full revolution counts each
    angle exactly once and the starting angle is not double counted.
    """
    if c1 > c0:
        return math.floor((c1 - offset) / TWO_PI) - math.floor((c0 - offset) / TWO_PI)
    if c1 < c0:
        return math.floor((offset - c1) / TWO_PI) - math.floor((offset - c0) / TWO_PI)
    return 0
