"""Single-finger sweep and dwell, from touch frames to audio events.

A finger drags across Bob's neighborhood: nodes it touches play discrete
horn notes (shorter when the finger moves faster), crossed links pluck a
string, and stopping on a node sustains its note until the finger leaves.
"""
from sonigraph import Engine
from sonigraph.fixtures import bob_network
from sonigraph.traces import TraceBuilder

diagram = bob_network()
engine = Engine(diagram)

tb = TraceBuilder()
# slow pass from the left edge through dana and bob, then rest on bob
tb.down(1, (0.0, 0.53))
for i in range(1, 30):
    tb.move(1, (i * 0.015, 0.53 - i * 0.001))
tb.move(1, diagram.node("bob").position)
tb.hold(500)   # dwell: the horn sustains
tb.up(1)

for frame in tb.build():
    engine.step_frame(frame)

print("interaction events:")
for event in engine.interaction_events:
    print(" ", event.to_line())

print()
print("audio stream:")
for audio in engine.render_audio():
    print(" ", audio.to_line())

print()
print("Note how the sustained horn (duration=sustained) only stops when")
print("the finger lifts, and how sweep note lengths track finger speed.")
