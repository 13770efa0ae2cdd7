"""Pseudo-modes: search with voice guidance, filtering, alt-text, legend.

A single-finger flick down opens the listening window; the companion UI (or
a test, as here) then submits the recognized command text. Searching guides
the finger to the nearest match with spoken directions whose pacing slows
as the finger closes in. Filtering keeps matching nodes and their links at
full volume while everything else plays faint under static noise.
"""
from sonigraph import Engine
from sonigraph.fixtures import family_tree
from sonigraph.traces import TraceBuilder

diagram = family_tree()
engine = Engine(diagram)

tb = TraceBuilder()
tb.down(1, (0.9, 0.15)).move(1, (0.9, 0.24)).move(1, (0.9, 0.33)).up(1)
tb.speech("search for Mia")
tb.down(2, (0.85, 0.25))
for step in range(1, 13):
    tb.move(2, (0.85 - step * 0.046, 0.25 + step * 0.063))
    tb.hold(60)
tb.up(2)
tb.down(3, (0.9, 0.15)).move(3, (0.9, 0.24)).move(3, (0.9, 0.33)).up(3)
tb.speech("filter by gender female")
tb.down(4, diagram.node("tom").position).tick(3).up(4)   # filtered out
tb.down(5, diagram.node("mia").position).tick(3).up(5)   # passes

for record in tb.build():
    if hasattr(record, "touches"):
        engine.step_frame(record)
    else:
        engine.submit_speech(record.text, record.t)

print("what you would hear:")
for audio in engine.render_audio():
    if audio.kind in ("Speech", "Fanfare", "HornNote", "NoiseOverlay"):
        print(" ", audio.to_line())

print()
print("Tom still sounds, but faint and under noise; Mia is crisp and full.")
print("The guidance prompt repeats spoken directions (vertical word first)")
print("and pauses longer as the finger nears the target.")
