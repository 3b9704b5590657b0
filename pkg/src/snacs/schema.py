"""The SNACS v2 supersense inventory and queries over its hierarchy.

The 50 supersenses form three trees (Circumstance, Participant,
Configuration).  For similarity math a virtual root at depth 0 sits above
the three subhierarchy roots, so each root has depth 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from .errors import UnknownLabel

# (name, children) nested in display order.
_TREE = [
    ("Circumstance", [
        ("Temporal", [
            ("Time", [("StartTime", []), ("EndTime", [])]),
            ("Frequency", []),
            ("Duration", []),
            ("Interval", []),
        ]),
        ("Locus", [("Source", []), ("Goal", [])]),
        ("Path", [("Direction", []), ("Extent", [])]),
        ("Means", []),
        ("Manner", []),
        ("Explanation", [("Purpose", [])]),
    ]),
    ("Participant", [
        ("Causer", [("Agent", [("Co-Agent", [])])]),
        ("Theme", [("Co-Theme", []), ("Topic", [])]),
        ("Stimulus", []),
        ("Experiencer", []),
        ("Originator", []),
        ("Recipient", []),
        ("Cost", []),
        ("Beneficiary", []),
        ("Instrument", []),
    ]),
    ("Configuration", [
        ("Identity", []),
        ("Species", []),
        ("Gestalt", [("Possessor", []), ("Whole", [])]),
        ("Characteristic", [
            ("Possession", []),
            ("PartPortion", [("Stuff", [])]),
        ]),
        ("Accompanier", []),
        ("InsteadOf", []),
        ("ComparisonRef", []),
        ("RateUnit", []),
        ("Quantity", [("Approximator", [])]),
        ("SocialRel", [("OrgRole", [])]),
    ]),
]

# Organize subtrees only; never usable on a token.
ABSTRACT = frozenset({"Participant", "Configuration", "Temporal"})


@dataclass(frozen=True, eq=False)
class Supersense:
    """One node of the hierarchy.

    Instances are singletons created at import time, so identity equality
    is sufficient.  ``order`` is the pre-order position (0..49) and gives a
    stable sort key.
    """

    name: str
    parent: Supersense | None = field(repr=False)
    subhierarchy: str
    abstract: bool
    depth: int
    order: int = field(repr=False)

    def __str__(self):
        return self.name

    def __lt__(self, other):
        if not isinstance(other, Supersense):
            return NotImplemented
        return self.order < other.order

    def __reduce__(self):
        return (parse_supersense, (self.name,))


class SpecialLabel(enum.Enum):
    """Codes for tokens to which no supersense applies."""

    DISCOURSE = "`d"
    COORDINATOR = "`c"
    OTHER_INFINITIVE = "`i"
    OPAQUE_POSSESSIVE = "`$"

    def __str__(self):
        return self.value

    def __lt__(self, other):
        if not isinstance(other, SpecialLabel):
            return NotImplemented
        return self.value < other.value


def _build():
    nodes: dict[str, Supersense] = {}
    kids: dict[str, list[str]] = {}

    def walk(name, children, parent, root, depth):
        node = Supersense(name, parent, root, name in ABSTRACT, depth, len(nodes))
        nodes[name] = node
        kids[name] = [c[0] for c in children]
        for child, grandkids in children:
            walk(child, grandkids, node, root, depth + 1)

    for root, children in _TREE:
        walk(root, children, None, root, 1)
    return nodes, kids


_NODES, _CHILDREN = _build()

SUPERSENSES: tuple[Supersense, ...] = tuple(_NODES.values())
ROOTS: tuple[Supersense, ...] = tuple(_NODES[r] for r, _ in _TREE)
VIRTUAL_ROOT_DEPTH = 0


def parse_supersense(text: str) -> Supersense:
    """Look up a supersense by its exact canonical name."""
    try:
        return _NODES[text]
    except (KeyError, TypeError):
        raise UnknownLabel(text) from None


def is_supersense_name(text: str) -> bool:
    return text in _NODES


def ancestors(s: Supersense) -> list[Supersense]:
    """Parent chain of *s* up to its subhierarchy root, excluding *s*."""
    out = []
    node = s.parent
    while node is not None:
        out.append(node)
        node = node.parent
    return out


def children(s: Supersense) -> list[Supersense]:
    return [_NODES[c] for c in _CHILDREN[s.name]]


def descendants(s: Supersense) -> list[Supersense]:
    """All proper descendants of *s* in pre-order."""
    out = []
    for child in children(s):
        out.append(child)
        out.extend(descendants(child))
    return out


def is_ancestor(a: Supersense, b: Supersense) -> bool:
    """True if *a* is a proper ancestor of *b*."""
    return a in ancestors(b)


def lca(a: Supersense, b: Supersense) -> Supersense | None:
    """Deepest common element of the two root paths (each including itself).

    Returns None when *a* and *b* sit in different subhierarchies.
    """
    if a.subhierarchy != b.subhierarchy:
        return None
    # walk the deeper node up until depths agree, then climb together
    while a.depth > b.depth:
        a = a.parent
    while b.depth > a.depth:
        b = b.parent
    while a is not b:
        a, b = a.parent, b.parent
    return a


def wu_palmer(a: Supersense, b: Supersense) -> float:
    """Wu-Palmer similarity, ``2*depth(lca) / (depth(a) + depth(b))``.

    The virtual root (depth 0) is the common subsumer across
    subhierarchies, which makes such pairs score 0.

    >>> wu_palmer(parse_supersense("StartTime"), parse_supersense("EndTime"))
    0.75
    """
    common = lca(a, b)
    d = VIRTUAL_ROOT_DEPTH if common is None else common.depth
    return 2 * d / (a.depth + b.depth)


def iter_preorder() -> Iterator[Supersense]:
    return iter(SUPERSENSES)


SCHEMA_FIELDS = ("name", "parent", "subhierarchy", "abstract", "depth")


def export_schema() -> str:
    """Render the hierarchy as TSV, one supersense per line in pre-order.

    A header line names the columns; the parent of a root is ``-``.
    """
    lines = ["\t".join(SCHEMA_FIELDS)]
    for s in SUPERSENSES:
        lines.append("\t".join([
            s.name,
            s.parent.name if s.parent else "-",
            s.subhierarchy,
            "true" if s.abstract else "false",
            str(s.depth),
        ]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# v1 -> v2 migration

class MigrationStatus(enum.Enum):
    MAPS_TO = "MapsTo"
    REMOVED = "Removed"
    ALREADY_V2 = "AlreadyV2"


@dataclass(frozen=True)
class MigrationResult:
    status: MigrationStatus
    targets: tuple[Supersense, ...] = ()

    def __str__(self):
        if self.status is MigrationStatus.MAPS_TO:
            return "MapsTo: " + " ".join(t.name for t in self.targets)
        if self.status is MigrationStatus.REMOVED:
            return "REMOVED"
        return "ALREADY-V2"


V1_MAPPINGS: dict[str, tuple[str, ...]] = {
    "Location": ("Locus",),
    "InitialLocation": ("Source",),
    "Destination": ("Goal",),
    "Patient": ("Theme",),
    "Co-Patient": ("Co-Theme",),
    "DeicticTime": ("Interval",),
    "RelativeTime": ("Time",),
    "ClockTimeCxn": ("Time",),
    "Material": ("Source",),
    "Donor/Speaker": ("Originator",),
    "Creator": ("Originator",),
    "Instance": ("Identity",),
    "ProfessionalAspect": ("SocialRel",),
    "Part/Portion": ("PartPortion",),
    "Traversed": ("Path",),
    "1DTrajectory": ("Path",),
    "2DArea": ("Path",),
    "3DMedium": ("Path",),
    "Contour": ("Path",),
    "Via": ("Path",),
    "Transit": ("Path",),
    "Course": ("Path",),
    # one-to-many: the caller decides
    "Activity": ("Circumstance", "Topic"),
    "Reciprocation": ("Explanation",),
    "Attribute": ("Characteristic", "Identity"),
    "Function": ("Purpose",),
    "Elements": ("PartPortion",),
    "Superset": ("Whole",),
    "Asset": ("Cost",),
    "Value": ("Cost",),
}

V1_REMOVED = frozenset({
    "State", "StartState", "EndState", "ValueComparison",
    "Comparison/Contrast", "Scalar/Rank",
    "Affector", "Undergoer", "Place", "Age",
    "Co-Participant",
})


def migrate_v1(name: str) -> MigrationResult:
    """Translate a v1 label name into its v2 counterpart(s)."""
    if name in _NODES:
        return MigrationResult(MigrationStatus.ALREADY_V2, (_NODES[name],))
    if name in V1_MAPPINGS:
        targets = sorted(_NODES[t] for t in V1_MAPPINGS[name])
        return MigrationResult(MigrationStatus.MAPS_TO, tuple(targets))
    if name in V1_REMOVED:
        return MigrationResult(MigrationStatus.REMOVED)
    raise UnknownLabel(name)
