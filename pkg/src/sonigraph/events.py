"""Interaction events: the semantic outcomes the gesture machine emits.

Every event carries the frame timestamp (ms) and, where meaningful, the
pointer it belongs to. Events serialize to one fixed-order line each so
session logs can be compared byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass

from .geometry import DomeRegion


def _f6(value: float) -> str:
    return f"{value:.6f}"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass(frozen=True)
class InteractionEvent:
    t: int
    pointer: int | None

    @property
    def kind(self) -> str:
        return type(self).__name__

    def _fields(self) -> list[tuple[str, str]]:
        return []

    def to_line(self) -> str:
        parts = [f"t={self.t}", "ev", f"kind={self.kind}"]
        if self.pointer is not None:
            parts.append(f"pointer={self.pointer}")
        parts.extend(f"{k}={v}" for k, v in self._fields())
        return " ".join(parts)


@dataclass(frozen=True)
class NodeSwept(InteractionEvent):
    node_id: str
    speed: float

    def _fields(self):
        return [("node", self.node_id), ("speed", _f6(self.speed))]


@dataclass(frozen=True)
class LinkSwept(InteractionEvent):
    link_id: str
    speed: float

    def _fields(self):
        return [("link", self.link_id), ("speed", _f6(self.speed))]


@dataclass(frozen=True)
class NodeDwellStart(InteractionEvent):
    node_id: str

    def _fields(self):
        return [("node", self.node_id)]


@dataclass(frozen=True)
class NodeDwellEnd(InteractionEvent):
    node_id: str

    def _fields(self):
        return [("node", self.node_id)]


@dataclass(frozen=True)
class LinkDwellStart(InteractionEvent):
    link_id: str

    def _fields(self):
        return [("link", self.link_id)]


@dataclass(frozen=True)
class LinkDwellEnd(InteractionEvent):
    link_id: str

    def _fields(self):
        return [("link", self.link_id)]


@dataclass(frozen=True)
class DomeStart(InteractionEvent):
    region: DomeRegion

    def _fields(self):
        contacts = ";".join(f"({_f6(x)},{_f6(y)})" for x, y in self.region.contact_points)
        return [("contacts", f"[{contacts}]")]


@dataclass(frozen=True)
class DomeUpdate(InteractionEvent):
    region: DomeRegion

    def _fields(self):
        contacts = ";".join(f"({_f6(x)},{_f6(y)})" for x, y in self.region.contact_points)
        return [("contacts", f"[{contacts}]")]


@dataclass(frozen=True)
class DomeEnd(InteractionEvent):
    def _fields(self):
        return []


@dataclass(frozen=True)
class DetailTap(InteractionEvent):
    """Tap near a dwelling finger; pointer is the dwell anchor's pointer."""

    element_kind: str  # "node" | "link"
    element_id: str
    tap_index: int

    def _fields(self):
        return [
            ("element_kind", self.element_kind),
            ("element", self.element_id),
            ("tap_index", str(self.tap_index)),
        ]


@dataclass(frozen=True)
class CircleProgress(InteractionEvent):
    """Orbit update around a dwelt node; active=False closes the circle."""

    anchor_node: str
    angle: float
    active: bool

    def _fields(self):
        return [
            ("anchor", self.anchor_node),
            ("angle", _f6(self.angle)),
            ("active", "true" if self.active else "false"),
        ]


@dataclass(frozen=True)
class LinkCrossed(InteractionEvent):
    link_id: str

    def _fields(self):
        return [("link", self.link_id)]


@dataclass(frozen=True)
class RadiateProgress(InteractionEvent):
    link_id: str
    progress: float

    def _fields(self):
        return [("link", self.link_id), ("progress", _f6(self.progress))]


@dataclass(frozen=True)
class CorridorLost(InteractionEvent):
    """The radiating finger left the link corridor; the string goes quiet."""

    link_id: str

    def _fields(self):
        return [("link", self.link_id)]


@dataclass(frozen=True)
class RadiateArrived(InteractionEvent):
    node_id: str

    def _fields(self):
        return [("node", self.node_id)]


@dataclass(frozen=True)
class FlickDown(InteractionEvent):
    def _fields(self):
        return []


@dataclass(frozen=True)
class FlickRight(InteractionEvent):
    def _fields(self):
        return []


@dataclass(frozen=True)
class TwoFingerFlickLeft(InteractionEvent):
    def _fields(self):
        return []


@dataclass(frozen=True)
class ParsedCommand:
    """Speech command after external recognition: search, filter or neither."""

    action: str  # "search" | "filter" | "clear_filter" | "unrecognized"
    query: str = ""
    attribute: str = ""
    value: str = ""


def parse_command(text: str) -> ParsedCommand:
    """Parse the small fixed command vocabulary.

    Accepted forms: "search [for] <query>", "filter by <attribute> <value>"
    (also "attribute: value" / "attribute, value"), "clear filter" and
    "filter off". Anything else is unrecognized.
    """
    stripped = text.strip()
    lowered = stripped.lower()
    if lowered in ("clear filter", "filter off"):
        return ParsedCommand("clear_filter")
    tokens = stripped.split()
    if tokens and tokens[0].lower() in ("search", "searching"):
        rest = tokens[1:]
        if rest and rest[0].lower() == "for":
            rest = rest[1:]
        if rest:
            return ParsedCommand("search", query=" ".join(rest))
        return ParsedCommand("unrecognized")
    if lowered.startswith("filter by "):
        rest = stripped[len("filter by "):].strip()
        for sep in (":", ","):
            if sep in rest:
                attribute, _, value = rest.partition(sep)
                if attribute.strip() and value.strip():
                    return ParsedCommand(
                        "filter", attribute=attribute.strip(), value=value.strip()
                    )
        tokens = rest.split()
        if len(tokens) >= 2:
            return ParsedCommand(
                "filter", attribute=tokens[0], value=" ".join(tokens[1:])
            )
    return ParsedCommand("unrecognized")


@dataclass(frozen=True)
class SpeechCommand(InteractionEvent):
    text: str
    command: ParsedCommand
    finger: tuple[float, float]

    def _fields(self):
        fields = [("text", _quote(self.text)), ("action", self.command.action)]
        if self.command.action == "search":
            fields.append(("query", _quote(self.command.query)))
        elif self.command.action == "filter":
            fields.append(("attribute", _quote(self.command.attribute)))
            fields.append(("value", _quote(self.command.value)))
        fields.append(("finger", f"({_f6(self.finger[0])},{_f6(self.finger[1])})"))
        return fields


def sort_events(events: list[InteractionEvent]) -> list[InteractionEvent]:
    """Order events by (timestamp, pointer); stable for equal keys."""
    return sorted(
        events, key=lambda e: (e.t, e.pointer if e.pointer is not None else -1)
    )
