"""Write the bundled fixture diagrams to ./fixtures as GraphML files.

Run this first if you want to play with the CLI:

    python3 demos/00_write_fixture_files.py
    sonigraph inspect --diagram fixtures/friends.graphml
"""
from pathlib import Path

from sonigraph.fixtures import ALL_FIXTURES
from sonigraph.model import serialize_graphml

out_dir = Path("fixtures")
out_dir.mkdir(exist_ok=True)

for name, build in ALL_FIXTURES.items():
    diagram = build()
    path = out_dir / f"{name}.graphml"
    path.write_text(serialize_graphml(diagram), encoding="utf-8")
    print(f"wrote {path}  ({len(diagram.nodes)} nodes, {len(diagram.links)} links)")
