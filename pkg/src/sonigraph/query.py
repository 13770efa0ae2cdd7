"""Search over labels and attributes, follow-the-voice guidance, filtering."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .config import EngineConfig
from .errors import NoActiveTarget
from .model import Diagram, Position


@dataclass(frozen=True)
class SearchResult:
    kind: str  # "node" | "link"
    element_id: str
    position: Position
    distance: float


@dataclass(frozen=True)
class SearchState:
    query: str
    results: tuple[SearchResult, ...]
    active_target: SearchResult | None


def searchable_text(d: Diagram, kind: str, element_id: str) -> list[str]:
    element = d.node(element_id) if kind == "node" else d.link(element_id)
    return [element.label] + [value for _, value in element.attributes]


def search(d: Diagram, query: str, finger: Position) -> SearchState:
    """Case-insensitive substring search over labels and attribute values.

    Results come back nearest-first from the finger position at search time;
    the nearest result becomes the guidance target.
    """
    if not query:
        raise ValueError("query must be non-empty")
    needle = query.casefold()
    results = []
    for node in d.nodes:
        if any(needle in text.casefold() for text in searchable_text(d, "node", node.id)):
            dist = math.hypot(finger[0] - node.position[0], finger[1] - node.position[1])
            results.append(SearchResult("node", node.id, node.position, dist))
    for link in d.links:
        if any(needle in text.casefold() for text in searchable_text(d, "link", link.id)):
            a = d.node(link.endpoints[0]).position
            b = d.node(link.endpoints[1]).position
            midpoint = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
            dist = math.hypot(finger[0] - midpoint[0], finger[1] - midpoint[1])
            results.append(SearchResult("link", link.id, midpoint, dist))
    results.sort(key=lambda r: (r.distance, r.kind, r.element_id))
    ordered = tuple(results)
    return SearchState(query, ordered, ordered[0] if ordered else None)


@dataclass(frozen=True)
class GuidancePrompt:
    words: tuple[str, ...]
    repeat_interval_ms: int
    arrived: bool


def guidance_step(target: Position | None, finger: Position, cfg: EngineConfig,
                  target_radius: float | None = None) -> GuidancePrompt:
    """One voice-guidance step toward the target.

    The vertical word comes first; an axis already within arrive_eps is
    omitted so near-aligned fingers hear a single direction. Prompt pacing
    slows as the finger closes in (slow prompts mean "almost there").
    """
    if target is None:
        raise NoActiveTarget("guidance requested without an active search target")
    if target_radius is None:
        target_radius = cfg.default_node_radius
    dx = target[0] - finger[0]
    dy = target[1] - finger[1]
    dist = math.hypot(dx, dy)
    interval = cfg.pace_min_ms + (cfg.pace_max_ms - cfg.pace_min_ms) * (
        1.0 - min(1.0, dist / cfg.pace_dist_ref)
    )
    if dist <= target_radius:
        return GuidancePrompt((), int(round(interval)), True)
    words = []
    if abs(dy) > cfg.arrive_eps:
        words.append("down" if dy > 0 else "up")
    if abs(dx) > cfg.arrive_eps:
        words.append("right" if dx > 0 else "left")
    return GuidancePrompt(tuple(words), int(round(interval)), False)


@dataclass(frozen=True)
class FilterState:
    active: bool
    attribute: str
    value: str
    passing: frozenset[str]
    passing_links: frozenset[str]

    @classmethod
    def inactive(cls) -> "FilterState":
        return cls(False, "", "", frozenset(), frozenset())

    def element_passes(self, kind: str, element_id: str) -> bool:
        if not self.active:
            return True
        if kind == "node":
            return element_id in self.passing
        return element_id in self.passing_links


def apply_filter(d: Diagram, attribute: str, value: str) -> FilterState:
    """Keep nodes whose attribute matches the value, case-insensitively.

    Links stay accessible when incident to at least one passing node; all
    other elements are deemphasized but never muted.
    """
    attr_key = attribute.casefold()
    wanted = value.casefold()
    passing = frozenset(
        node.id
        for node in d.nodes
        if any(
            key.casefold() == attr_key and val.casefold() == wanted
            for key, val in node.attributes
        )
    )
    passing_links = frozenset(
        link.id
        for link in d.links
        if link.endpoints[0] in passing or link.endpoints[1] in passing
    )
    return FilterState(True, attribute, value, passing, passing_links)


def clear_filter(state: FilterState) -> FilterState:
    """Deactivate filtering; every element returns to full volume."""
    if not state.active:
        return state
    return FilterState.inactive()
