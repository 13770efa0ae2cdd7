"""Five-finger dome: connection patterns become sound textures.

Covering a region with all five fingers plays its contents on a loop: one
node (horn), then its links (strings), then a connected node, and so on,
with a bell separating cycles. The full cycle always lasts the same time,
so dense regions play fast and sparse ones slow. A ring yields a strictly
alternating horn/string pulse; a hub-and-spokes region starts with one horn
followed by a burst of strings.
"""
from sonigraph import EngineConfig, dome_schedule
from sonigraph.fixtures import hub_five, ring_six

cfg = EngineConfig()


def show(diagram):
    nodes = tuple(n.id for n in diagram.nodes)
    links = tuple(l.id for l in diagram.links)
    schedule = dome_schedule(nodes, links, diagram, cfg)
    print(f"--- {diagram.title}: {len(schedule.playlist)} items over "
          f"{schedule.cycle_duration_ms} ms ---")
    texture = " ".join(
        "H" if kind == "node" else "S" for _, kind, _ in schedule.playlist
    )
    print("texture:", texture)
    for element_id, kind, onset in schedule.playlist:
        voice = "horn  " if kind == "node" else "string"
        print(f"  {onset:>5} ms  {voice}  {element_id}")
    print()


show(ring_six())
show(hub_five())

print("Same regions, half the cycle time: the rhythm doubles.")
fast = EngineConfig(cycle_duration_ms=2000)
ring = ring_six()
schedule = dome_schedule(tuple(n.id for n in ring.nodes),
                         tuple(l.id for l in ring.links), ring, fast)
print("ring onsets at 2000 ms:", [onset for _, _, onset in schedule.playlist])
