"""Built-in demonstration diagrams used by tests, demos and goldens.

All fixtures are authored directly in normalized coordinates with their
bounding boxes pinned to the unit square (or centered on the unpinned
axis), so serializing and reloading preserves every position exactly.
"""
from __future__ import annotations

from itertools import combinations

from .model import Diagram, Link, Node, build_diagram


def _nodes(spec: list[tuple[str, str, float, float]], **extra_attrs) -> list[Node]:
    out = []
    for node_id, label, x, y in spec:
        attrs = tuple((k, v[node_id]) for k, v in extra_attrs.items() if node_id in v)
        out.append(Node(node_id, label, (x, y), attributes=attrs))
    return out


def _links(pairs: list[tuple[str, str]]) -> list[Link]:
    return [Link(f"{u}-{v}", (u, v)) for u, v in pairs]


def friends_network() -> Diagram:
    """Social network with four structurally distinct quadrants.

    Top-left: two people with no friends. Top-right: a ring of six, each
    with exactly two friends, also reaching into the lower quadrants.
    Bottom-left: seven people all friends with each other (the densest
    corner). Bottom-right: ten people around one very popular person.
    """
    tl = [("a1", "Ava", 0.0, 0.13), ("a2", "Ben", 0.23, 0.30)]
    ring = [
        ("r1", "Cleo", 0.77, 0.0),
        ("r2", "Dev", 0.94, 0.11),
        ("r3", "Eda", 0.94, 0.32),
        ("r4", "Finn", 0.77, 0.43),
        ("r5", "Gia", 0.60, 0.32),
        ("r6", "Hugo", 0.60, 0.11),
    ]
    clique = [
        ("k1", "Iris", 0.24, 0.56),
        ("k2", "Jon", 0.09, 0.66),
        ("k3", "Kira", 0.06, 0.84),
        ("k4", "Liam", 0.20, 0.96),
        ("k5", "Mara", 0.31, 1.0),
        ("k6", "Nils", 0.42, 0.87),
        ("k7", "Olga", 0.40, 0.68),
    ]
    star = [
        ("hub", "Pia", 0.76, 0.75),
        ("b1", "Quinn", 0.56, 0.62),
        ("b2", "Rosa", 0.64, 0.56),
        ("b3", "Sam", 0.88, 0.58),
        ("b4", "Tess", 1.0, 0.70),
        ("b5", "Uma", 0.98, 0.88),
        ("b6", "Vik", 0.86, 0.96),
        ("b7", "Wren", 0.70, 0.95),
        ("b8", "Xena", 0.58, 0.87),
        ("b9", "Yuri", 0.66, 0.68),
    ]
    ring_ids = [n[0] for n in ring]
    pairs = list(zip(ring_ids, ring_ids[1:] + ring_ids[:1]))
    pairs += list(combinations([n[0] for n in clique], 2))
    pairs += [("hub", f"b{i}") for i in range(1, 10)]
    pairs += [("b1", "b2"), ("b5", "b6"), ("b7", "b8")]
    pairs += [("r4", "k6"), ("r3", "hub")]
    return build_diagram(
        _nodes(tl + ring + clique + star),
        _links(pairs),
        alt_text=(
            "Friendship network of twenty-five people. The top left holds two"
            " people with no friends, the top right a ring of six friends,"
            " the bottom left seven people all friends with each other, and"
            " the bottom right ten people around one very popular person."
        ),
        title="friends",
    )


def friends_network_variant() -> Diagram:
    """The friends network reshuffled: same structures, different quadrants.

    Ring (now seven people) top-left, popular-person group top-right, three
    loners bottom-left, a six-person full clique bottom-right.
    """
    ring = [
        ("g1", "Aldo", 0.25, 0.04),
        ("g2", "Bree", 0.391, 0.108),
        ("g3", "Ciro", 0.426, 0.26),
        ("g4", "Dora", 0.328, 0.382),
        ("g5", "Enzo", 0.172, 0.382),
        ("g6", "Faye", 0.074, 0.26),
        ("g7", "Gino", 0.109, 0.108),
    ]
    star = [
        ("hub2", "Hana", 0.76, 0.25),
        ("c1", "Ivo", 0.56, 0.38),
        ("c2", "Jade", 0.64, 0.44),
        ("c3", "Kai", 0.88, 0.42),
        ("c4", "Lena", 1.0, 0.30),
        ("c5", "Milo", 0.98, 0.12),
        ("c6", "Nora", 0.86, 0.0),
        ("c7", "Otis", 0.70, 0.05),
        ("c8", "Pola", 0.58, 0.13),
        ("c9", "Remy", 0.66, 0.32),
    ]
    loners = [
        ("l1", "Sana", 0.0, 0.62),
        ("l2", "Tino", 0.15, 0.78),
        ("l3", "Ugo", 0.30, 0.62),
    ]
    clique = [
        ("q1", "Vera", 0.62, 0.68),
        ("q2", "Wim", 0.88, 0.68),
        ("q3", "Xiu", 0.95, 0.85),
        ("q4", "Yara", 0.80, 1.0),
        ("q5", "Zeno", 0.62, 0.92),
        ("q6", "Abel", 0.74, 0.82),
    ]
    ring_ids = [n[0] for n in ring]
    pairs = list(zip(ring_ids, ring_ids[1:] + ring_ids[:1]))
    pairs += [("hub2", f"c{i}") for i in range(1, 10)]
    pairs += [("c1", "c2"), ("c5", "c6"), ("c7", "c8")]
    pairs += list(combinations([n[0] for n in clique], 2))
    pairs += [("g3", "c9"), ("g3", "q2")]
    return build_diagram(
        _nodes(ring + star + loners + clique),
        _links(pairs),
        alt_text=(
            "Friendship network of twenty-six people. A ring of seven sits"
            " top left, a group of ten around one very popular person top"
            " right, three people with no friends bottom left, and six"
            " people all friends with each other bottom right."
        ),
        title="friends-variant",
    )


def bob_network() -> Diagram:
    """Seven sparsely connected people; Bob, slightly left of center, has
    four friends reaching out in the four cardinal directions."""
    spec = [
        ("bob", "Bob", 0.43, 0.5),
        ("asha", "Asha", 0.73, 0.5),
        ("carlos", "Carlos", 0.43, 1.0),
        ("dana", "Dana", 0.0, 0.5),
        ("eli", "Eli", 0.43, 0.0),
        ("fay", "Fay", 0.85, 0.18),
        ("gus", "Gus", 1.0, 0.82),
    ]
    professions = {
        "bob": "engineer",
        "asha": "doctor",
        "carlos": "teacher",
        "dana": "pilot",
        "eli": "chef",
        "fay": "artist",
        "gus": "farmer",
    }
    pairs = [
        ("bob", "asha"),
        ("bob", "carlos"),
        ("bob", "dana"),
        ("bob", "eli"),
        ("eli", "fay"),
        ("fay", "gus"),
    ]
    return build_diagram(
        _nodes(spec, profession=professions),
        _links(pairs),
        alt_text="Bob and six acquaintances, sparsely connected.",
        title="bob",
    )


def family_tree() -> Diagram:
    """Small genealogy with gender and generation attributes for filtering."""
    spec = [
        ("rosa", "Rosa", 0.2, 0.0),
        ("leo", "Leo", 0.8, 0.0),
        ("ana", "Ana", 0.35, 0.45),
        ("tom", "Tom", 0.75, 0.45),
        ("eva", "Eva", 0.0, 0.5),
        ("mia", "Mia", 0.3, 1.0),
        ("max", "Max", 1.0, 0.95),
    ]
    gender = {
        "rosa": "female", "leo": "male", "ana": "female", "tom": "male",
        "eva": "female", "mia": "female", "max": "male",
    }
    generation = {
        "rosa": "grandparent", "leo": "grandparent", "ana": "parent",
        "tom": "parent", "eva": "parent", "mia": "child", "max": "child",
    }
    pairs = [
        ("rosa", "leo"),
        ("rosa", "ana"),
        ("leo", "ana"),
        ("rosa", "eva"),
        ("leo", "eva"),
        ("ana", "tom"),
        ("ana", "mia"),
        ("ana", "max"),
        ("tom", "mia"),
        ("tom", "max"),
    ]
    return build_diagram(
        _nodes(spec, gender=gender, generation=generation),
        _links(pairs),
        alt_text="A family of seven across three generations.",
        title="family",
    )


def ring_six() -> Diagram:
    """Standalone six-node ring (regular hexagon)."""
    spec = [
        ("ra", "R-one", 1.0, 0.5),
        ("rb", "R-two", 0.75, 0.933),
        ("rc", "R-three", 0.25, 0.933),
        ("rd", "R-four", 0.0, 0.5),
        ("re", "R-five", 0.25, 0.067),
        ("rf", "R-six", 0.75, 0.067),
    ]
    ids = [n[0] for n in spec]
    pairs = list(zip(ids, ids[1:] + ids[:1]))
    return build_diagram(
        _nodes(spec), _links(pairs),
        alt_text="Six nodes connected in a ring.", title="ring",
    )


def hub_five() -> Diagram:
    """Standalone hub with five spokes."""
    spec = [
        ("hub", "Center", 0.5, 0.5),
        ("s1", "Spoke-one", 1.0, 0.5),
        ("s2", "Spoke-two", 0.5, 1.0),
        ("s3", "Spoke-three", 0.0, 0.5),
        ("s4", "Spoke-four", 0.5, 0.0),
        ("s5", "Spoke-five", 0.82, 0.18),
    ]
    pairs = [("hub", f"s{i}") for i in range(1, 6)]
    return build_diagram(
        _nodes(spec), _links(pairs),
        alt_text="One hub connected to five spokes.", title="hub",
    )


ALL_FIXTURES = {
    "friends": friends_network,
    "friends-variant": friends_network_variant,
    "bob": bob_network,
    "family": family_tree,
    "ring": ring_six,
    "hub": hub_five,
}
