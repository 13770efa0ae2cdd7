"""Command line front end: replay, inspect, legend and diff.

The engine is fully deterministic, so `--seed` is accepted but unused;
it is reserved for future stochastic extensions.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .audio import legend_events
from .config import EngineConfig, load_config
from .errors import SonigraphError
from .geometry import Quadrant, quadrant_stats
from .model import load_graphml, max_degree, node_degree
from .session import SessionLog, diff_logs, run_replay

_QUADRANT_NAMES = {
    Quadrant.TOP_LEFT: "top left",
    Quadrant.TOP_RIGHT: "top right",
    Quadrant.BOTTOM_LEFT: "bottom left",
    Quadrant.BOTTOM_RIGHT: "bottom right",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sonigraph",
        description="Deterministic touch+audio interaction engine for node-link diagrams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    replay = sub.add_parser("replay", help="replay a touch trace into a session log")
    replay.add_argument("--diagram", required=True, help="GraphML diagram file")
    replay.add_argument("--trace", required=True, help="touch trace file")
    replay.add_argument("--config", default=None, help="engine config file")
    replay.add_argument("--out", default=None, help="write the log here instead of stdout")
    replay.add_argument("--seed", default=None, help="reserved; the engine is deterministic")

    inspect = sub.add_parser("inspect", help="print diagram statistics")
    inspect.add_argument("--diagram", required=True)

    legend = sub.add_parser("legend", help="emit the audio legend event list")
    legend.add_argument("--config", default=None)

    diff = sub.add_parser("diff", help="compare two session logs")
    diff.add_argument("log_a")
    diff.add_argument("log_b")
    return parser


def cmd_replay(args) -> int:
    log = run_replay(args.diagram, args.trace, args.config)
    if args.out:
        Path(args.out).write_text(log.text, encoding="utf-8")
    else:
        sys.stdout.write(log.text)
    return 0


def cmd_inspect(args) -> int:
    diagram = load_graphml(Path(args.diagram).read_bytes())
    print(f"title: {diagram.title or '(untitled)'}")
    print(f"nodes: {len(diagram.nodes)}  links: {len(diagram.links)}")
    if diagram.alt_text:
        print(f"alt text: {diagram.alt_text}")
    for warning in diagram.warnings:
        print(f"warning: {warning}")
    top = max_degree(diagram)
    hubs = sorted(
        n.id for n in diagram.nodes if node_degree(diagram, n.id) == top
    )
    print(f"max degree: {top} ({', '.join(hubs)})")
    print("quadrant       nodes  links")
    for quadrant, counts in quadrant_stats(diagram).items():
        name = _QUADRANT_NAMES[quadrant]
        print(f"{name:<14} {counts.node_count:>5}  {counts.link_count:>5}")
    return 0


def cmd_legend(args) -> int:
    config = load_config(args.config) if args.config else EngineConfig()
    for event in legend_events(config):
        print(event.to_line())
    return 0


def cmd_diff(args) -> int:
    log_a = SessionLog.from_text(Path(args.log_a).read_text(encoding="utf-8"))
    log_b = SessionLog.from_text(Path(args.log_b).read_text(encoding="utf-8"))
    report = diff_logs(log_a, log_b)
    print(report)
    return 0 if report == "identical" else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "replay": cmd_replay,
        "inspect": cmd_inspect,
        "legend": cmd_legend,
        "diff": cmd_diff,
    }
    try:
        return handlers[args.command](args)
    except SonigraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
