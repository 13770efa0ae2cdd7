"""Tour of the diagram model: loading, quadrants, degrees and pitches.

Every node plays as a french horn whose pitch rises with its connection
count; every link plays as a plucked string whose pitch rises as the link
gets shorter. This script prints those mappings for the bundled fixtures.
"""
from sonigraph import (
    PitchMap,
    link_length,
    link_pitch,
    load_graphml,
    node_degree,
    node_pitch,
    quadrant_stats,
    serialize_graphml,
)
from sonigraph.fixtures import bob_network, friends_network

pm = PitchMap()

print("=== friends network ===")
friends = friends_network()
print(friends.alt_text)
print()
print("quadrant            nodes  links")
for quadrant, counts in quadrant_stats(friends).items():
    print(f"{quadrant.value:<18}  {counts.node_count:>5}  {counts.link_count:>5}")
print()
print("The bottom-left corner has the most connections (a full clique of")
print("seven) and the top-left the fewest (two people with no friends).")

print()
print("=== Bob's neighborhood ===")
bob = bob_network()
for node in bob.nodes:
    degree = node_degree(bob, node.id)
    pitch = node_pitch(bob, node.id, pm)
    print(f"{node.label:<8} degree {degree}  horn {pitch:7.2f} Hz")
print()
print("Bob has the most friends, so he sounds highest.")
print()
for link in bob.links:
    length = link_length(bob, link.id)
    pitch = link_pitch(bob, link.id, pm)
    print(f"{link.id:<12} length {length:.3f}  string {pitch:7.2f} Hz")
print()
print("GraphML round trip is exact:")
reloaded = load_graphml(serialize_graphml(bob))
print("  reloaded == original:", reloaded == bob)
