"""Geometric queries over a diagram: hit testing, quadrants, dome regions.

Diagrams are small (tens of elements), so every query is a plain linear
scan; no spatial index is needed or wanted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .config import EngineConfig
from .errors import DegenerateRegion
from .model import Diagram, Position

NODE = "node"
LINK = "link"


@dataclass(frozen=True)
class HitResult:
    """Outcome of a point query: the element under the finger, if any."""

    kind: str  # "none" | "node" | "link"
    element_id: str | None
    distance: float

    @property
    def is_node(self) -> bool:
        return self.kind == NODE

    @property
    def is_link(self) -> bool:
        return self.kind == LINK

    @property
    def is_none(self) -> bool:
        return self.kind == "none"


NO_HIT = HitResult("none", None, math.inf)


@dataclass(frozen=True)
class HysteresisState:
    """Tracks which node, if any, currently has a grown hit radius."""

    grown_node: str | None = None


IDLE_HYSTERESIS = HysteresisState()


class Quadrant(Enum):
    TOP_LEFT = "top_left"
    TOP_RIGHT = "top_right"
    BOTTOM_LEFT = "bottom_left"
    BOTTOM_RIGHT = "bottom_right"


class QuadrantCounts(NamedTuple):
    node_count: int
    link_count: int


def clamp_position(p: Position) -> Position:
    return (min(max(p[0], 0.0), 1.0), min(max(p[1], 0.0), 1.0))


def effective_radius(radius: float, node_id: str, state: HysteresisState,
                     cfg: EngineConfig) -> float:
    if state.grown_node == node_id:
        return radius * cfg.growth_factor
    return radius


def hit_test(d: Diagram, p: Position, state: HysteresisState = IDLE_HYSTERESIS,
             cfg: EngineConfig = EngineConfig()) -> HitResult:
    """Find the element under a point; nodes take precedence over links.

    A node hits when the point falls within its (possibly grown) radius; a
    link hits when the point is within the corridor half-width of the segment
    and projects onto it. Nearest wins within each class, ties by id.
    """
    x, y = clamp_position(p)
    best_node: tuple[float, str] | None = None
    for node in d.nodes:
        dist = math.sqrt((x - node.position[0]) ** 2 + (y - node.position[1]) ** 2)
        if dist <= effective_radius(node.radius, node.id, state, cfg):
            if best_node is None or (dist, node.id) < best_node:
                best_node = (dist, node.id)
    if best_node is not None:
        return HitResult(NODE, best_node[1], best_node[0])

    best_link: tuple[float, str] | None = None
    for link in d.links:
        a = d.node(link.endpoints[0]).position
        b = d.node(link.endpoints[1]).position
        u, dist = project_on_segment((x, y), a, b)
        if 0.0 <= u <= 1.0 and dist <= cfg.corridor_half_width:
            if best_link is None or (dist, link.id) < best_link:
                best_link = (dist, link.id)
    if best_link is not None:
        return HitResult(LINK, best_link[1], best_link[0])
    return NO_HIT


def grow_hysteresis(state: HysteresisState, current: HitResult,
                    finger_speed: float, cfg: EngineConfig) -> HysteresisState:
    """Grow the dwelt node's hit radius while the finger moves slowly.

    Leaving the grown region or speeding up resets the growth; nodes other
    than the current one are never affected.
    """
    if current.is_node and finger_speed < cfg.slow_threshold:
        if state.grown_node == current.element_id:
            return state
        return HysteresisState(grown_node=current.element_id)
    if state.grown_node is None:
        return state
    return IDLE_HYSTERESIS


def project_on_segment(p: Position, a: Position, b: Position) -> tuple[float, float]:
    """Return (projection parameter u, distance to the clamped segment point)."""
    px, py = p
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    seg_sq = dx * dx + dy * dy
    if seg_sq == 0.0:
        return 0.0, math.sqrt((px - ax) ** 2 + (py - ay) ** 2)
    u = ((px - ax) * dx + (py - ay) * dy) / seg_sq
    cu = min(max(u, 0.0), 1.0)
    cx, cy = ax + cu * dx, ay + cu * dy
    return u, math.sqrt((px - cx) ** 2 + (py - cy) ** 2)


def distance_to_link(d: Diagram, link_id: str, p: Position) -> float:
    """Point-to-segment distance; beyond an endpoint, distance to it."""
    link = d.link(link_id)
    a = d.node(link.endpoints[0]).position
    b = d.node(link.endpoints[1]).position
    _, dist = project_on_segment(p, a, b)
    return dist


def quadrant_of(p: Position) -> Quadrant:
    # Half-open convention: the midlines belong to the right/bottom halves.
    left = p[0] < 0.5
    top = p[1] < 0.5
    if top:
        return Quadrant.TOP_LEFT if left else Quadrant.TOP_RIGHT
    return Quadrant.BOTTOM_LEFT if left else Quadrant.BOTTOM_RIGHT


def quadrant_stats(d: Diagram) -> dict[Quadrant, QuadrantCounts]:
    """Per-quadrant element counts: nodes by center, links by midpoint."""
    nodes = {q: 0 for q in Quadrant}
    links = {q: 0 for q in Quadrant}
    for node in d.nodes:
        nodes[quadrant_of(node.position)] += 1
    for link in d.links:
        a = d.node(link.endpoints[0]).position
        b = d.node(link.endpoints[1]).position
        midpoint = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
        links[quadrant_of(midpoint)] += 1
    return {q: QuadrantCounts(nodes[q], links[q]) for q in Quadrant}


# -- dome (five-finger) regions ---------------------------------------------

@dataclass(frozen=True)
class DomeRegion:
    """Convex region spanned by the five dome contact points."""

    contact_points: tuple[Position, ...]
    hull: tuple[Position, ...]


def make_dome_region(contacts: list[Position] | tuple[Position, ...]) -> DomeRegion:
    """Build the convex hull of exactly five contacts.

    Raises DegenerateRegion when the contacts are collinear.
    """
    contacts = tuple(contacts)
    if len(contacts) != 5:
        raise DegenerateRegion(f"dome needs 5 contacts, got {len(contacts)}")
    hull = _convex_hull(contacts)
    if len(hull) < 3:
        raise DegenerateRegion("dome contacts are collinear")
    return DomeRegion(contacts, tuple(hull))


def _convex_hull(points: tuple[Position, ...]) -> list[Position]:
    """Andrew's monotone chain; returns hull vertices in traversal order."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(iterable):
        chain: list[Position] = []
        for p in iterable:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _cross(o: Position, a: Position, b: Position) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def point_in_hull(p: Position, hull: tuple[Position, ...]) -> bool:
    """Convex-polygon containment, boundary inclusive."""
    sign = 0
    n = len(hull)
    for i in range(n):
        cross = _cross(hull[i], hull[(i + 1) % n], p)
        if abs(cross) < 1e-12:
            continue
        side = 1 if cross > 0 else -1
        if sign == 0:
            sign = side
        elif side != sign:
            return False
    return True


def elements_in_dome(d: Diagram, region: DomeRegion) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Nodes whose centers lie in the hull, plus links fully inside.

    A link qualifies only when both of its endpoint nodes are in the dome.
    """
    node_ids = tuple(
        sorted(n.id for n in d.nodes if point_in_hull(n.position, region.hull))
    )
    inside = set(node_ids)
    link_ids = tuple(
        sorted(
            l.id
            for l in d.links
            if l.endpoints[0] in inside and l.endpoints[1] in inside
        )
    )
    return node_ids, link_ids


def link_angles_at(d: Diagram, node_id: str) -> list[tuple[str, float]]:
    """Outgoing direction of each incident link, in [0, 2*pi), ascending.

    Angles use screen coordinates: 0 points right, pi/2 points down.
    """
    origin = d.node(node_id).position
    out = []
    for link in d.incident_links(node_id):
        other = d.node(link.other_end(node_id)).position
        angle = math.atan2(other[1] - origin[1], other[0] - origin[0])
        out.append((link.id, angle % (2.0 * math.pi)))
    out.sort(key=lambda item: (item[1], item[0]))
    return out
