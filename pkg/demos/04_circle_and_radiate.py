"""Dwell+Circle and Dwell+Radiate: counting connections, then navigating.

One finger dwells on Bob. A second finger orbits it: a proximity tone
swells near each link's direction and every crossed link plucks, so a full
orbit counts Bob's friends. The orbital finger then settles on one link and
pulls outward; the string sustains while the finger stays in the corridor,
the tone swells toward the neighbor, and arrival plays a fanfare, handing
the dwell over to the new node.
"""
import math

from sonigraph import Engine
from sonigraph.fixtures import bob_network
from sonigraph.traces import TraceBuilder

diagram = bob_network()
bob = diagram.node("bob").position
asha = diagram.node("asha").position

tb = TraceBuilder()
tb.down(1, bob).hold(350)                      # anchor dwell
tb.down(2, (bob[0] + 0.08, bob[1]))            # orbiter enters the annulus
tb.orbit(2, bob, 0.08, 0.0, 2 * math.pi, 72)   # full circle: count friends
tb.hold(50)
tb.line_to(2, asha, step=0.02)                 # radiate along the east link
tb.hold(50)
tb.up(1)                                       # release the old anchor
tb.up(2)

engine = Engine(diagram)
for frame in tb.build():
    engine.step_frame(frame)

crossings = [e for e in engine.interaction_events if e.kind == "LinkCrossed"]
print(f"links crossed during the orbit: {len(crossings)}")
for event in crossings:
    print("  ", event.to_line())

print()
arrival = [e for e in engine.interaction_events
           if e.kind in ("RadiateProgress", "RadiateArrived")]
print("radiate progress toward Asha:")
for event in arrival[:5] + arrival[-3:]:
    print("  ", event.to_line())

print()
fanfares = [a for a in engine.render_audio() if a.kind == "Fanfare"]
print("arrival fanfare:", fanfares[0].to_line())
