"""Gesture recognition: each technique driven through synthesized traces."""
import math
from collections import Counter

import pytest

from sonigraph.config import EngineConfig
from sonigraph.errors import NonMonotoneTime, NotListening
from sonigraph.events import parse_command
from sonigraph.gestures import GestureEngine
from sonigraph.geometry import link_angles_at
from sonigraph.model import node_degree
from sonigraph.traces import TouchFrame, TraceBuilder

CFG = EngineConfig()


def run(diagram, records, config=CFG):
    engine = GestureEngine(diagram, config)
    events = []
    for record in records:
        if isinstance(record, TouchFrame):
            events.extend(engine.process_frame(record))
    return engine, events


def kinds(events):
    return [e.kind for e in events]


class TestFrames:
    def test_empty_frame_no_events(self, bob):
        engine = GestureEngine(bob)
        assert engine.process_frame(TouchFrame(10, ())) == []
        assert engine.process_frame(TouchFrame(20, ())) == []

    def test_non_monotone_rejected(self, bob):
        engine = GestureEngine(bob)
        engine.process_frame(TouchFrame(10, ()))
        with pytest.raises(NonMonotoneTime):
            engine.process_frame(TouchFrame(10, ()))

    def test_determinism_byte_identical(self, bob):
        tb = TraceBuilder()
        tb.down(1, (0.43, 0.5)).hold(350)
        tb.down(2, (0.5, 0.5))
        tb.orbit(2, (0.43, 0.5), 0.07, 0.0, math.pi, 30)
        tb.up(2).up(1)
        _, first = run(bob, tb.build())
        _, second = run(bob, tb.build())
        assert [e.to_line() for e in first] == [e.to_line() for e in second]

    def test_events_ordered_by_time_then_pointer(self, friends):
        tb = TraceBuilder()
        tb.down(2, (0.24, 0.56))
        tb.down(1, (0.76, 0.75))
        tb.hold(400)
        tb.up(1).up(2)
        _, events = run(friends, tb.build())
        keys = [(e.t, e.pointer if e.pointer is not None else -1) for e in events]
        assert keys == sorted(keys)


class TestSweep:
    def test_single_crossing_fires_one_link_swept(self, bob):
        # horizontal pass over bob-carlos (vertical link) at y=0.75; long
        # enough to outlive the flick window
        tb = TraceBuilder()
        tb.down(1, (0.3, 0.75))
        for step in range(1, 17):
            tb.move(1, (0.3 + step * 0.02, 0.75))
        tb.up(1)
        _, events = run(bob, tb.build())
        assert kinds(events).count("LinkSwept") == 1
        assert [e.link_id for e in events if e.kind == "LinkSwept"] == ["bob-carlos"]

    def test_sweep_all_nodes_by_hopping(self, friends):
        tb = TraceBuilder()
        pid = 1
        for node in friends.nodes:
            tb.down(pid, node.position)
            tb.tick(2)
            tb.up(pid)
            pid += 1
        _, events = run(friends, tb.build())
        swept = Counter(e.node_id for e in events if e.kind == "NodeSwept")
        assert swept == Counter(n.id for n in friends.nodes)

    def test_reentry_refires(self, bob):
        tb = TraceBuilder()
        tb.down(1, (0.43, 0.5)).hold(60)
        tb.move(1, (0.43, 0.3)).hold(60)   # leave (fast enough to avoid growth)
        tb.move(1, (0.43, 0.5)).hold(60)   # re-enter
        tb.up(1)
        _, events = run(bob, tb.build())
        assert sum(1 for e in events
                   if e.kind == "NodeSwept" and e.node_id == "bob") == 2


class TestDwell:
    def test_stationary_on_node_starts_dwell(self, bob):
        tb = TraceBuilder()
        tb.down(1, (0.43, 0.5)).hold(CFG.dwell_ms + 50).up(1)
        _, events = run(bob, tb.build())
        assert "NodeDwellStart" in kinds(events)
        assert "NodeDwellEnd" in kinds(events)
        start = next(e for e in events if e.kind == "NodeDwellStart")
        end = next(e for e in events if e.kind == "NodeDwellEnd")
        assert start.node_id == end.node_id == "bob"
        assert start.t >= CFG.dwell_ms
        assert end.t > start.t

    def test_stationary_on_empty_space_no_dwell(self, bob):
        tb = TraceBuilder()
        tb.down(1, (0.2, 0.9)).hold(600).up(1)
        _, events = run(bob, tb.build())
        assert events == []

    def test_link_dwell(self, bob):
        tb = TraceBuilder()
        tb.down(1, (0.58, 0.5)).hold(CFG.dwell_ms + 50).up(1)
        _, events = run(bob, tb.build())
        assert "LinkDwellStart" in kinds(events)
        assert "LinkDwellEnd" in kinds(events)

    def test_slow_oscillation_keeps_single_dwell(self, bob):
        # small slow wobble around the center: one start, no end until lift
        center = bob.node("bob").position
        amp = (CFG.growth_factor - 1.0) * bob.node("bob").radius / 2.0
        tb = TraceBuilder()
        tb.down(1, center).hold(CFG.dwell_ms + 40)
        for i in range(40):
            offset = amp if i % 2 == 0 else -amp
            tb.move(1, (center[0] + offset, center[1]))
            tb.tick(3)  # keep the wobble slow
        tb.up(1)
        _, events = run(bob, tb.build())
        counted = Counter(kinds(events))
        assert counted["NodeDwellStart"] == 1
        assert counted["NodeDwellEnd"] == 1  # only the lift ends it
        assert events[-1].kind == "NodeDwellEnd"


class TestDetailTap:
    def dwell_then_taps(self, bob, tap_offsets, tap_count=1):
        center = bob.node("bob").position
        tb = TraceBuilder()
        tb.down(1, center).hold(CFG.dwell_ms + 50)
        for i in range(tap_count):
            pos = (center[0] + tap_offsets[0], center[1] + tap_offsets[1])
            tb.down(2, pos).tick(2).up(2)
            tb.hold(40)
        tb.up(1)
        return run(bob, tb.build())

    def test_near_tap_fires(self, bob):
        _, events = self.dwell_then_taps(bob, (CFG.tap_radius * 0.5, 0.01))
        taps = [e for e in events if e.kind == "DetailTap"]
        assert len(taps) == 1
        assert taps[0].element_id == "bob"
        assert taps[0].tap_index == 0

    def test_far_tap_ignored(self, bob):
        _, events = self.dwell_then_taps(bob, (CFG.tap_radius * 2.0, 0.17))
        assert "DetailTap" not in kinds(events)

    def test_consecutive_taps_increment(self, bob):
        _, events = self.dwell_then_taps(bob, (0.05, 0.02), tap_count=3)
        taps = [e for e in events if e.kind == "DetailTap"]
        assert [t.tap_index for t in taps] == [0, 1, 2]

    def test_tap_on_link_dwell(self, bob):
        # dwell midway along bob-asha, then tap beside the dwelling finger
        tb = TraceBuilder()
        tb.down(1, (0.6, 0.5)).hold(CFG.dwell_ms + 50)
        tb.down(2, (0.6, 0.5 + 0.06)).tick(2).up(2)
        tb.hold(40).up(1)
        _, events = run(bob, tb.build())
        taps = [e for e in events if e.kind == "DetailTap"]
        assert len(taps) == 1
        assert (taps[0].element_kind, taps[0].element_id) == ("link", "bob-asha")

    def test_tap_counter_resets_on_new_dwell(self, bob):
        center = bob.node("bob").position
        tb = TraceBuilder()
        tb.down(1, center).hold(CFG.dwell_ms + 50)
        tb.down(2, (center[0] + 0.05, center[1])).tick(2).up(2)
        tb.up(1).hold(50)
        tb.down(1, center).hold(CFG.dwell_ms + 50)
        tb.down(2, (center[0] + 0.05, center[1])).tick(2).up(2)
        tb.up(1)
        _, events = run(bob, tb.build())
        taps = [e for e in events if e.kind == "DetailTap"]
        assert [t.tap_index for t in taps] == [0, 0]

    def test_two_simultaneous_dwell_tap_streams(self, bob):
        """Disjoint groups on different nodes never cross-talk."""
        bob_pos = bob.node("bob").position
        gus_pos = bob.node("gus").position
        tb = TraceBuilder()
        tb.down(1, bob_pos)
        tb.down(3, gus_pos)
        tb.hold(CFG.dwell_ms + 50)
        for _ in range(2):
            tb.down(2, (bob_pos[0] + 0.05, bob_pos[1] + 0.02))
            tb.down(4, (gus_pos[0] - 0.05, gus_pos[1] - 0.02))
            tb.tick(2)
            tb.up(2)
            tb.up(4)
            tb.hold(40)
        tb.up(1).up(3)
        _, events = run(bob, tb.build())
        taps = [e for e in events if e.kind == "DetailTap"]
        by_element = {}
        for tap in taps:
            by_element.setdefault(tap.element_id, []).append(tap.tap_index)
        assert by_element == {"bob": [0, 1], "gus": [0, 1]}
        pointers = {tap.element_id: {tap.pointer} for tap in taps}
        assert pointers["bob"] == {1} and pointers["gus"] == {3}


class TestCircle:
    def orbit_events(self, diagram, node_id, radius=0.08, sweep=2 * math.pi,
                     steps=72, start=0.25):
        center = diagram.node(node_id).position
        tb = TraceBuilder()
        tb.down(1, center).hold(CFG.dwell_ms + 50)
        tb.down(2, (center[0] + radius * math.cos(start),
                    center[1] + radius * math.sin(start)))
        tb.orbit(2, center, radius, start, sweep, steps)
        tb.up(2).up(1)
        _, events = run(diagram, tb.build())
        return events

    def test_full_orbit_crosses_each_link_once(self, bob):
        events = self.orbit_events(bob, "bob")
        crossed = Counter(e.link_id for e in events if e.kind == "LinkCrossed")
        assert crossed == Counter(
            {link_id: 1 for link_id, _ in link_angles_at(bob, "bob")}
        )

    def test_orbit_degree_zero_node_silent(self, friends):
        events = self.orbit_events(friends, "a2", radius=0.06)
        assert "LinkCrossed" not in kinds(events)

    def test_half_orbit_crosses_covered_angles_only(self, bob):
        # from 0.25 rad sweeping pi: covers angles (0.25, 0.25+pi]
        events = self.orbit_events(bob, "bob", sweep=math.pi, steps=36)
        covered = [
            link_id
            for link_id, angle in link_angles_at(bob, "bob")
            if 0.25 < angle <= 0.25 + math.pi
        ]
        crossed = [e.link_id for e in events if e.kind == "LinkCrossed"]
        assert Counter(crossed) == Counter(covered)
        assert len(crossed) == 2

    def test_orbit_completeness_on_all_fixtures(self, all_fixture_diagrams):
        """A perfect orbit yields exactly degree(anchor) crossings."""
        for d in all_fixture_diagrams:
            for node in d.nodes:
                # skip nodes whose neighbors sit inside the orbit radius
                center = node.position
                radius = 0.06
                if any(
                    math.hypot(center[0] - d.node(l.other_end(node.id)).position[0],
                               center[1] - d.node(l.other_end(node.id)).position[1])
                    <= radius
                    for l in d.incident_links(node.id)
                ):
                    continue
                if not (radius <= center[0] <= 1 - radius
                        and radius <= center[1] <= 1 - radius):
                    continue  # orbit would leave the surface
                events = self.orbit_events(d, node.id, radius=radius, steps=90)
                crossings = sum(1 for e in events if e.kind == "LinkCrossed")
                assert crossings == node_degree(d, node.id), (d.title, node.id)

    def test_circle_progress_carries_anchor_and_flag(self, bob):
        events = self.orbit_events(bob, "bob")
        progress = [e for e in events if e.kind == "CircleProgress"]
        assert progress, "expected circle progress events"
        assert all(p.anchor_node == "bob" for p in progress)
        assert all(p.active for p in progress[:-1])
        assert not progress[-1].active  # lift closes the circle


class TestRadiate:
    def radiate_trace(self, diagram, anchor_id, target_id, link_id,
                      deviate=None):
        center = diagram.node(anchor_id).position
        target = diagram.node(target_id).position
        angle = math.atan2(target[1] - center[1], target[0] - center[0])
        tb = TraceBuilder()
        tb.down(1, center).hold(CFG.dwell_ms + 50)
        start = (center[0] + 0.06 * math.cos(angle),
                 center[1] + 0.06 * math.sin(angle))
        tb.down(2, start).hold(40)
        if deviate is None:
            tb.line_to(2, target, step=0.02)
        else:
            tb.line_to(2, deviate, step=0.02)
        tb.hold(40)
        return tb

    def test_straight_trace_completes(self, bob):
        tb = self.radiate_trace(bob, "bob", "asha", "bob-asha")
        tb.up(2).up(1)
        _, events = run(bob, tb.build())
        progress = [e.progress for e in events if e.kind == "RadiateProgress"]
        assert progress and progress[-1] == 1.0
        assert all(a <= b for a, b in zip(progress, progress[1:]))
        sequence = kinds(events)
        assert sequence.index("RadiateArrived") > sequence.index("RadiateProgress")
        arrived = next(e for e in events if e.kind == "RadiateArrived")
        assert arrived.node_id == "asha"
        # arrival starts a dwell on the target
        assert any(e.kind == "NodeDwellStart" and e.node_id == "asha"
                   for e in events)

    def test_deviation_emits_corridor_lost(self, bob):
        # veer perpendicular off the link by twice the corridor width
        off = (0.58, 0.5 + CFG.corridor_half_width * 4)
        tb = self.radiate_trace(bob, "bob", "asha", "bob-asha", deviate=off)
        tb.up(2).up(1)
        _, events = run(bob, tb.build())
        assert "CorridorLost" in kinds(events)
        assert "RadiateArrived" not in kinds(events)

    def test_corridor_timeout_cancels(self, bob):
        off = (0.58, 0.5 + CFG.corridor_half_width * 4)
        tb = self.radiate_trace(bob, "bob", "asha", "bob-asha", deviate=off)
        tb.hold(CFG.corridor_lost_ms + 100)
        tb.line_to(2, (0.73, 0.5), step=0.02)  # back on track, but too late
        tb.up(2).up(1)
        _, events = run(bob, tb.build())
        assert "RadiateArrived" not in kinds(events)

    def test_corridor_reacquired_resumes(self, bob):
        off = (0.58, 0.5 + CFG.corridor_half_width * 4)
        tb = self.radiate_trace(bob, "bob", "asha", "bob-asha", deviate=off)
        tb.line_to(2, (0.6, 0.5), step=0.02)   # seek the string again
        tb.line_to(2, (0.73, 0.5), step=0.02)
        tb.hold(40).up(2).up(1)
        _, events = run(bob, tb.build())
        assert "CorridorLost" in kinds(events)
        assert "RadiateArrived" in kinds(events)

    def test_release_anchor_then_circle_from_new_node(self, bob):
        tb = self.radiate_trace(bob, "bob", "asha", "bob-asha")
        tb.up(1)                       # release original anchor after arrival
        asha = bob.node("asha").position
        tb.down(3, (asha[0], asha[1] + 0.07))
        tb.orbit(3, asha, 0.07, math.pi / 2, 2 * math.pi, 72)
        tb.up(3).up(2)
        _, events = run(bob, tb.build())
        crossings = [e for e in events if e.kind == "LinkCrossed"]
        assert [c.link_id for c in crossings] == ["bob-asha"]
        progress = [e for e in events if e.kind == "CircleProgress" and e.active]
        assert any(p.anchor_node == "asha" for p in progress)


class TestDome:
    QUAD = [(0.52, 0.01), (0.99, 0.01), (0.99, 0.47), (0.52, 0.47), (0.75, 0.24)]

    def test_five_simultaneous_touches_start_dome(self, friends):
        tb = TraceBuilder()
        for pid, pos in enumerate(self.QUAD, start=1):
            tb.down(pid, pos)
        tb.hold(100)
        for pid in range(1, 6):
            tb.up(pid)
        _, events = run(friends, tb.build())
        assert "DomeStart" in kinds(events)
        assert "DomeEnd" in kinds(events)

    def test_four_touches_do_not(self, friends):
        tb = TraceBuilder()
        for pid, pos in enumerate(self.QUAD[:4], start=1):
            tb.down(pid, pos)
        tb.hold(100)
        for pid in range(1, 5):
            tb.up(pid)
        _, events = run(friends, tb.build())
        assert "DomeStart" not in kinds(events)

    def test_slow_fifth_finger_misses_window(self, friends):
        tb = TraceBuilder()
        for pid, pos in enumerate(self.QUAD[:4], start=1):
            tb.down(pid, pos)
        tb.hold(CFG.dome_window_ms + 100)
        tb.down(5, self.QUAD[4])
        tb.hold(60)
        for pid in range(1, 6):
            tb.up(pid)
        _, events = run(friends, tb.build())
        assert "DomeStart" not in kinds(events)

    def test_drift_beyond_eps_updates(self, friends):
        tb = TraceBuilder()
        for pid, pos in enumerate(self.QUAD, start=1):
            tb.down(pid, pos)
        tb.hold(80)
        tb.move(1, (self.QUAD[0][0] + CFG.dome_move_eps * 1.5, self.QUAD[0][1]))
        tb.hold(60)
        for pid in range(1, 6):
            tb.up(pid)
        _, events = run(friends, tb.build())
        assert "DomeUpdate" in kinds(events)

    def test_small_drift_does_not_update(self, friends):
        tb = TraceBuilder()
        for pid, pos in enumerate(self.QUAD, start=1):
            tb.down(pid, pos)
        tb.hold(80)
        tb.move(1, (self.QUAD[0][0] + CFG.dome_move_eps * 0.5, self.QUAD[0][1]))
        tb.hold(60)
        for pid in range(1, 6):
            tb.up(pid)
        _, events = run(friends, tb.build())
        assert "DomeUpdate" not in kinds(events)

    def test_lift_ends_dome_and_frees_fingers(self, friends):
        tb = TraceBuilder()
        for pid, pos in enumerate(self.QUAD, start=1):
            tb.down(pid, pos)
        tb.hold(80)
        tb.up(3)
        tb.hold(80)
        for pid in (1, 2, 4, 5):
            tb.up(pid)
        _, events = run(friends, tb.build())
        sequence = kinds(events)
        assert sequence.count("DomeEnd") == 1
        assert sequence.count("DomeStart") == 1


class TestFlick:
    def stroke(self, diagram, start, delta, duration_frames, pid=1):
        tb = TraceBuilder()
        tb.down(pid, start)
        for i in range(1, duration_frames + 1):
            frac = i / duration_frames
            tb.move(pid, (start[0] + delta[0] * frac, start[1] + delta[1] * frac))
        tb.up(pid)
        return tb

    def test_fast_downward_stroke(self, bob):
        tb = self.stroke(bob, (0.9, 0.2), (0.0, CFG.flick_dist * 1.5), 6)
        engine, events = run(bob, tb.build())
        assert kinds(events) == ["FlickDown"]
        assert engine.listening

    def test_slow_stroke_is_a_sweep(self, bob):
        frames = int(3 * CFG.flick_ms / 16)
        tb = self.stroke(bob, (0.9, 0.2), (0.0, CFG.flick_dist * 1.5), frames)
        engine, events = run(bob, tb.build())
        assert "FlickDown" not in kinds(events)
        assert not engine.listening

    def test_flick_over_elements_suppresses_sweeps(self, bob):
        # a downward flick across the bob-asha corridor region
        tb = self.stroke(bob, (0.6, 0.42), (0.0, CFG.flick_dist * 1.4), 6)
        _, events = run(bob, tb.build())
        assert kinds(events) == ["FlickDown"]

    def test_single_left_flick_no_event(self, bob):
        tb = self.stroke(bob, (0.9, 0.9), (-CFG.flick_dist * 1.5, 0.0), 6)
        _, events = run(bob, tb.build())
        assert events == []

    def test_two_finger_left_flick(self, bob):
        tb = TraceBuilder()
        tb.down(1, (0.9, 0.85))
        tb.down(2, (0.9, 0.7))
        for i in range(1, 7):
            frac = i / 6
            offset = -CFG.flick_dist * 1.5 * frac
            tb.move(1, (0.9 + offset, 0.85))
            tb.move(2, (0.9 + offset, 0.7))
        tb.up(1)
        tb.up(2)
        _, events = run(bob, tb.build())
        assert kinds(events) == ["TwoFingerFlickLeft"]

    def test_diagonal_stroke_outside_cone(self, bob):
        delta = (CFG.flick_dist, CFG.flick_dist)  # 45 degrees off both axes
        tb = self.stroke(bob, (0.85, 0.75), delta, 6)
        _, events = run(bob, tb.build())
        assert "FlickDown" not in kinds(events)
        assert "FlickRight" not in kinds(events)


class TestSpeech:
    def flick_down(self, tb):
        tb.down(9, (0.9, 0.2))
        tb.move(9, (0.9, 0.3)).move(9, (0.9, 0.4))
        tb.up(9)
        return tb

    def test_search_command(self, bob):
        engine = GestureEngine(bob)
        for record in self.flick_down(TraceBuilder()).build():
            engine.process_frame(record)
        ev = engine.submit_speech_command("search for Asha", engine._last_t + 10)
        assert ev.command.action == "search"
        assert ev.command.query == "Asha"

    def test_filter_command(self, family):
        engine = GestureEngine(family)
        for record in self.flick_down(TraceBuilder()).build():
            engine.process_frame(record)
        ev = engine.submit_speech_command("filter by gender female",
                                          engine._last_t + 10)
        assert ev.command.action == "filter"
        assert (ev.command.attribute, ev.command.value) == ("gender", "female")

    def test_not_listening_without_flick(self, bob):
        engine = GestureEngine(bob)
        engine.process_frame(TouchFrame(10, ()))
        with pytest.raises(NotListening):
            engine.submit_speech_command("search for Bob", 20)

    def test_window_expires(self, bob):
        engine = GestureEngine(bob)
        for record in self.flick_down(TraceBuilder()).build():
            engine.process_frame(record)
        late = engine._last_t + CFG.listen_window_ms + 1
        with pytest.raises(NotListening):
            engine.submit_speech_command("search for Bob", late)

    def test_one_command_per_flick(self, bob):
        engine = GestureEngine(bob)
        for record in self.flick_down(TraceBuilder()).build():
            engine.process_frame(record)
        engine.submit_speech_command("search for Bob", engine._last_t + 10)
        with pytest.raises(NotListening):
            engine.submit_speech_command("search for Bob", engine._last_t + 20)


class TestParseCommand:
    @pytest.mark.parametrize("text,action,payload", [
        ("search for Asha", "search", "Asha"),
        ("searching for Asha", "search", "Asha"),
        ("Search for  Bob", "search", "Bob"),
        ("search B", "search", "B"),
    ])
    def test_search_forms(self, text, action, payload):
        cmd = parse_command(text)
        assert cmd.action == action and cmd.query == payload

    @pytest.mark.parametrize("text,attribute,value", [
        ("filter by gender female", "gender", "female"),
        ("filter by gender: female", "gender", "female"),
        ("Filter by gender, female", "gender", "female"),
    ])
    def test_filter_forms(self, text, attribute, value):
        cmd = parse_command(text)
        assert cmd.action == "filter"
        assert (cmd.attribute, cmd.value) == (attribute, value)

    @pytest.mark.parametrize("text", ["hello there", "filter", "search for "])
    def test_unrecognized(self, text):
        assert parse_command(text).action == "unrecognized"

    def test_clear_filter(self):
        assert parse_command("clear filter").action == "clear_filter"


class TestPhaseExclusivity:
    def test_no_pointer_in_two_phases(self, bob):
        """Dwell + circle + radiate trace: per-frame events never imply a
        pointer simultaneously sweeping and circling."""
        center = bob.node("bob").position
        tb = TraceBuilder()
        tb.down(1, center).hold(CFG.dwell_ms + 50)
        tb.down(2, (center[0] + 0.07, center[1]))
        tb.orbit(2, center, 0.07, 0.0, math.pi / 2, 12)
        tb.line_to(2, bob.node("carlos").position, step=0.02)
        tb.up(2).up(1)
        engine = GestureEngine(bob)
        for record in tb.build():
            events = engine.process_frame(record)
            sweep_pointers = {e.pointer for e in events
                              if e.kind in ("NodeSwept", "LinkSwept")}
            circle_pointers = {e.pointer for e in events
                               if e.kind in ("CircleProgress", "RadiateProgress")
                               and getattr(e, "active", True)}
            assert not (sweep_pointers & circle_pointers)
