"""Acceptance criteria, one test per criterion.

Each test enforces the criterion at its stated tolerance and runtime budget
and prints one PASS line (visible with `pytest -s` or `--capture=no`).
"""
import math
import random
import time

import pytest

from sonigraph.audio import dome_schedule, render
from sonigraph.config import EngineConfig
from sonigraph.geometry import IDLE_HYSTERESIS, Quadrant, hit_test, quadrant_stats
from sonigraph.gestures import GestureEngine
from sonigraph.model import (
    Link,
    Node,
    build_diagram,
    link_length,
    link_pitch,
    node_degree,
    node_pitch,
)
from sonigraph.query import apply_filter, guidance_step
from sonigraph.session import SessionLog, diff_logs, run_replay
from sonigraph.traces import TraceBuilder

from .goldens import DATA_DIR, GOLDENS, load_hashes
from .test_geometry import oracle_hit

CFG = EngineConfig()
PM_CFG = CFG


class _Budget:
    def __init__(self, seconds, name):
        self.seconds = seconds
        self.name = name

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"{self.name} took {elapsed:.2f}s, budget {self.seconds}s"
            )
            print(f"ACCEPTANCE {self.name}: PASS ({elapsed * 1000:.0f} ms)")


def test_quadrant_fixture(friends):
    with _Budget(1.0, "quadrant-fixture"):
        stats = quadrant_stats(friends)
        links = {q: c.link_count for q, c in stats.items()}
        nodes = {q: c.node_count for q, c in stats.items()}
        assert max(links, key=links.get) == Quadrant.BOTTOM_LEFT
        assert min(links, key=links.get) == Quadrant.TOP_LEFT
        assert max(nodes, key=nodes.get) == Quadrant.BOTTOM_RIGHT
        assert min(nodes, key=nodes.get) == Quadrant.TOP_LEFT


def test_bobs_connections(bob):
    with _Budget(1.0, "bob-connections"):
        center = bob.node("bob").position
        tb = TraceBuilder()
        tb.down(1, center).hold(CFG.dwell_ms + 50)
        tb.down(2, (center[0] + 0.08 * math.cos(0.25),
                    center[1] + 0.08 * math.sin(0.25)))
        tb.orbit(2, center, 0.08, 0.25, 2 * math.pi, 72)
        tb.up(2).up(1)
        engine = GestureEngine(bob, CFG)
        events = []
        for record in tb.build():
            events.extend(engine.process_frame(record))
        crossings = [e for e in events if e.kind == "LinkCrossed"]
        assert len(crossings) == 4


def test_radiate_completion(bob):
    with _Budget(1.0, "radiate-completion"):
        start = bob.node("bob").position
        target = bob.node("asha").position
        tb = TraceBuilder()
        tb.down(1, start).hold(CFG.dwell_ms + 50)
        tb.down(2, (start[0] + 0.06, start[1])).hold(40)
        tb.line_to(2, target, step=0.02).hold(40)
        tb.up(2).up(1)
        engine = GestureEngine(bob, CFG)
        events = []
        for record in tb.build():
            events.extend(engine.process_frame(record))
        progress = [e.progress for e in events if e.kind == "RadiateProgress"]
        assert progress, "no radiate progress emitted"
        assert all(a <= b for a, b in zip(progress, progress[1:]))
        assert progress[-1] == 1.0
        kinds = [e.kind for e in events]
        arrived_at = kinds.index("RadiateArrived")
        assert kinds[arrived_at - 1] == "RadiateProgress"
        assert events[arrived_at].node_id == "asha"
        audio = render(events, bob, CFG)
        fanfares = [a for a in audio if a.kind == "Fanfare"]
        assert len(fanfares) == 1 and fanfares[0].element == "asha"


def test_guidance(bob):
    with _Budget(5.0, "guidance"):
        first = guidance_step((0.3, 0.8), (0.5, 0.5), CFG)
        assert list(first.words) == ["down", "left"]
        target = bob.node("bob").position
        radius = bob.node("bob").radius
        rng = random.Random(42)
        step = 0.03
        for _ in range(200):
            finger = (rng.random(), rng.random())
            for _ in range(60):
                prompt = guidance_step(target, finger, CFG, radius)
                if prompt.arrived:
                    break
                dx = dy = 0.0
                if "down" in prompt.words:
                    dy = step
                elif "up" in prompt.words:
                    dy = -step
                if "right" in prompt.words:
                    dx = step
                elif "left" in prompt.words:
                    dx = -step
                finger = (finger[0] + dx, finger[1] + dy)
            else:
                pytest.fail(f"walker did not arrive within 60 steps from {finger}")


def test_dome_textures(ring, hub):
    with _Budget(1.0, "dome-textures"):
        ring_elements = (tuple(n.id for n in ring.nodes),
                         tuple(l.id for l in ring.links))
        hub_elements = (tuple(n.id for n in hub.nodes),
                        tuple(l.id for l in hub.links))
        schedule = dome_schedule(*ring_elements, ring, CFG)
        sequence = [kind for _, kind, _ in schedule.playlist]
        assert sequence == ["node", "link"] * 6, "ring must strictly alternate"
        schedule = dome_schedule(*hub_elements, hub, CFG)
        sequence = [kind for _, kind, _ in schedule.playlist]
        assert sequence[0] == "node"
        consecutive = 0
        for kind in sequence[1:]:
            if kind != "link":
                break
            consecutive += 1
        assert consecutive >= 3, "hub must burst strings after the first horn"
        for cycle_ms in (2000, 4000, 8000):
            cfg = EngineConfig(cycle_duration_ms=cycle_ms)
            for d, elements in ((ring, ring_elements), (hub, hub_elements)):
                schedule = dome_schedule(*elements, d, cfg)
                span = (schedule.playlist[-1][2] + schedule.item_duration_ms
                        - schedule.playlist[0][2])
                assert abs(span - cycle_ms) <= 1


def test_hit_test_oracle(all_fixture_diagrams):
    with _Budget(5.0, "hit-test-oracle"):
        rng = random.Random(777)
        per_fixture = 10_000 // len(all_fixture_diagrams) + 1
        checked = 0
        for d in all_fixture_diagrams:
            for _ in range(per_fixture):
                p = (rng.random(), rng.random())
                hit = hit_test(d, p, IDLE_HYSTERESIS, CFG)
                kind, element_id, dist = oracle_hit(d, p, None, CFG)
                assert (hit.kind, hit.element_id) == (kind, element_id)
                if kind != "none":
                    assert hit.distance == dist
                checked += 1
        assert checked >= 10_000


def _random_diagram(rng):
    count = rng.randint(2, 50)
    nodes = []
    for i in range(count):
        nodes.append(Node(f"n{i:02d}", f"node {i}",
                          (rng.random(), rng.random())))
    # pin the bounding box so construction accepts the positions as-is
    nodes[0] = Node("n00", "node 0", (0.0, 0.0))
    nodes[1] = Node("n01", "node 1", (1.0, 1.0))
    links = []
    seen = set()
    for _ in range(rng.randint(0, min(80, count * 2))):
        a, b = rng.sample(range(count), 2)
        pair = frozenset((a, b))
        if pair in seen:
            continue
        seen.add(pair)
        links.append(Link(f"e{len(links):02d}", (f"n{a:02d}", f"n{b:02d}")))
    return build_diagram(nodes, links)


def test_pitch_properties():
    with _Budget(5.0, "pitch-properties"):
        rng = random.Random(4242)
        from sonigraph.audio import pitch_map

        pm = pitch_map(CFG)
        for _ in range(100):
            d = _random_diagram(rng)
            degrees = {n.id: node_degree(d, n.id) for n in d.nodes}
            pitches = {n.id: node_pitch(d, n.id, pm) for n in d.nodes}
            top_degree = max(degrees.values())
            top_pitch = max(pitches.values())
            argmax_nodes = {i for i, deg in degrees.items() if deg == top_degree}
            for node_id in d._node_index:
                if node_id in argmax_nodes:
                    assert pitches[node_id] == pytest.approx(top_pitch)
                else:
                    assert pitches[node_id] < top_pitch
            pairs = sorted(
                (link_length(d, l.id), link_pitch(d, l.id, pm)) for l in d.links
            )
            for (len_a, pitch_a), (len_b, pitch_b) in zip(pairs, pairs[1:]):
                if len_b > len_a + 1e-12:
                    assert pitch_b < pitch_a


def test_replay_determinism():
    with _Budget(10.0, "replay-determinism"):
        frozen = load_hashes()
        for name, (fixture, build) in sorted(GOLDENS.items()):
            diagram_path = DATA_DIR / f"{name}.graphml"
            trace_path = DATA_DIR / f"{name}.trace"
            first = run_replay(diagram_path, trace_path)
            second = run_replay(diagram_path, trace_path)
            assert first.text == second.text, f"{name} replay diverged"
            assert diff_logs(first, second) == "identical"
            assert first.sha256() == frozen[name], f"{name} drifted from golden"
            committed = SessionLog.from_text(
                (DATA_DIR / f"{name}.log").read_text(encoding="utf-8")
            )
            assert diff_logs(first, committed) == "identical"


def test_filter_soundness(family):
    with _Budget(2.0, "filter-soundness"):
        state = apply_filter(family, "gender", "female")
        non_passing_nodes = {n.id for n in family.nodes} - set(state.passing)
        non_passing_links = ({l.id for l in family.links}
                             - set(state.passing_links))
        assert non_passing_nodes and non_passing_links
        tb = TraceBuilder()
        pid = 1
        for node in family.nodes:
            tb.down(pid, node.position)
            tb.tick(2)
            tb.up(pid)
            pid += 1
        for link in family.links:
            a = family.node(link.endpoints[0]).position
            b = family.node(link.endpoints[1]).position
            tb.down(pid, ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2))
            tb.tick(2)
            tb.up(pid)
            pid += 1
        engine = GestureEngine(family, CFG)
        events = []
        for record in tb.build():
            events.extend(engine.process_frame(record))
        audio = render(events, family, CFG, state)
        non_passing = non_passing_nodes | non_passing_links
        noise_on = {(a.t, a.element) for a in audio
                    if a.kind == "NoiseOverlay" and a.on}
        toned = [a for a in audio if a.kind in ("HornNote", "StringPluck")]
        assert any(a.element in non_passing for a in toned)
        for a in toned:
            if a.element in non_passing:
                assert a.volume == CFG.filtered_volume, f"leak on {a.element}"
                assert (a.t, a.element) in noise_on
            else:
                assert a.volume == 1.0


def test_simultaneity(bob):
    with _Budget(1.0, "simultaneity"):
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
        engine = GestureEngine(bob, CFG)
        events = []
        for record in tb.build():
            events.extend(engine.process_frame(record))
        taps = [e for e in events if e.kind == "DetailTap"]
        streams = {}
        for tap in taps:
            streams.setdefault((tap.pointer, tap.element_id), []).append(
                tap.tap_index
            )
        assert streams == {(1, "bob"): [0, 1], (3, "gus"): [0, 1]}
