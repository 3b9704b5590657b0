"""Role~>function labels and the categorical rules they must satisfy."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from . import schema
from .errors import MalformedLabel, SpecialWithConstrual, UnknownLabel
from .schema import SpecialLabel, Supersense

ARROW = "~>"
PREFIX = "p."

E_ABSTRACT_USE = "E_ABSTRACT_USE"
E_FUNCTION_FORBIDDEN = "E_FUNCTION_FORBIDDEN"
E_TEMPORAL_FUNCTION = "E_TEMPORAL_FUNCTION"
E_CONSTRUCTION_MISMATCH = "E_CONSTRUCTION_MISMATCH"
E_UNKNOWN_LABEL = "E_UNKNOWN_LABEL"
E_FORMAT = "E_FORMAT"

_ss = schema.parse_supersense

# These only ever appear as scene roles in English.
FUNCTION_FORBIDDEN = frozenset(_ss(n) for n in (
    "Experiencer", "Stimulus", "Originator", "Recipient", "SocialRel", "OrgRole"))
ABSTRACT = frozenset(_ss(n) for n in schema.ABSTRACT)
TEMPORAL_ROLES = frozenset(schema.descendants(_ss("Temporal")))
TEMPORAL_BANNED_FUNCTIONS = frozenset(_ss(n) for n in ("Locus", "Path", "Extent"))
EXTENT = _ss("Extent")


@dataclass(frozen=True)
class Construal:
    role: Supersense
    function: Supersense

    @property
    def congruent(self) -> bool:
        return self.role is self.function

    def __repr__(self):
        return f"Construal({self})"

    def __str__(self):
        if self.congruent:
            return PREFIX + self.role.name
        return f"{PREFIX}{self.role.name}{ARROW}{PREFIX}{self.function.name}"

    @classmethod
    def of(cls, role: str, function: str | None = None) -> Construal:
        r = _ss(role)
        return cls(r, r if function is None else _ss(function))


Label = Union[Construal, SpecialLabel]


class ConstructionContext(enum.Enum):
    NONE = "None"
    SGENITIVE = "SGenitive"
    PASSIVE_BY = "PassiveBy"
    AS_COMPARATIVE_FIRST = "AsComparativeFirst"
    INFINITIVAL_TO = "InfinitivalTo"
    INFINITIVAL_FOR_SUBJECT = "InfinitivalForSubject"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> ConstructionContext:
        try:
            return cls(text)
        except ValueError:
            raise MalformedLabel(f"unknown construction context: {text!r}") from None


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code} {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    attested: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


class Direction(enum.Enum):
    CONGRUENT = "Congruent"
    CROSS_BRANCH = "CrossBranch"
    ROLE_ANCESTOR_OF_FUNCTION = "RoleAncestorOfFunction"
    FUNCTION_ANCESTOR_OF_ROLE = "FunctionAncestorOfRole"


# ---------------------------------------------------------------------------
# serialization

_SPECIALS = {s.value: s for s in SpecialLabel}


def _parse_side(text: str) -> Supersense:
    name = text.strip()
    if name.startswith(PREFIX):
        name = name[len(PREFIX):]
    if name in _SPECIALS:
        raise SpecialWithConstrual(f"special label combined with a construal: {text!r}")
    return _ss(name)


def parse_label(text: str) -> Label:
    """Parse ``p.Role~>p.Function``, ``p.Role``, or a backtick special code.

    The ``p.`` prefix is optional on either side.
    """
    text = text.strip()
    if text in _SPECIALS:
        return _SPECIALS[text]
    parts = text.split(ARROW)
    if len(parts) > 2:
        raise MalformedLabel(f"too many {ARROW!r} in {text!r}")
    if any(p.strip() in _SPECIALS for p in parts) and len(parts) == 2:
        raise SpecialWithConstrual(f"special label combined with a construal: {text!r}")
    if not all(p.strip() for p in parts):
        raise MalformedLabel(f"empty side in {text!r}")
    role = _parse_side(parts[0])
    function = _parse_side(parts[1]) if len(parts) == 2 else role
    return Construal(role, function)


def serialize_label(label: Label) -> str:
    return str(label)


def label_sort_key(label: Label) -> str:
    return str(label)


# ---------------------------------------------------------------------------
# validation

def _mismatch(msg):
    return Violation(E_CONSTRUCTION_MISMATCH, msg)


_INFINITIVAL_TO_OK = frozenset([
    Construal.of("Purpose"),
    Construal.of("Characteristic", "Purpose"),
    Construal.of("Theme", "Purpose"),
    Construal.of("ComparisonRef", "Purpose"),
    SpecialLabel.OTHER_INFINITIVE,
])


def check(label: Label, ctx: ConstructionContext = ConstructionContext.NONE) -> list[Violation]:
    """Return every rule violation for *label* in construction *ctx*."""
    out = []
    special = isinstance(label, SpecialLabel)

    if not special:
        role, fn = label.role, label.function
        for side, s in (("role", role), ("function", fn)):
            if s in ABSTRACT:
                out.append(Violation(E_ABSTRACT_USE,
                                     f"{s.name} is abstract and cannot be the {side}"))
        if fn in FUNCTION_FORBIDDEN:
            out.append(Violation(E_FUNCTION_FORBIDDEN,
                                 f"{fn.name} can only be a scene role"))
        if role in TEMPORAL_ROLES and fn in TEMPORAL_BANNED_FUNCTIONS:
            exempt = ctx is ConstructionContext.AS_COMPARATIVE_FIRST and fn is EXTENT
            if not exempt:
                out.append(Violation(E_TEMPORAL_FUNCTION,
                                     f"temporal role {role.name} cannot take function {fn.name}"))

    fn = None if special else label.function
    if ctx is ConstructionContext.SGENITIVE:
        if not (label is SpecialLabel.OPAQUE_POSSESSIVE
                or (fn is not None and fn.name in ("Gestalt", "Possessor"))):
            out.append(_mismatch(f"s-genitive function must be Gestalt or Possessor, got {label}"))
    elif ctx is ConstructionContext.PASSIVE_BY:
        if fn is None or fn.name not in ("Agent", "Causer"):
            out.append(_mismatch(f"passive by-phrase function must be Agent or Causer, got {label}"))
    elif ctx is ConstructionContext.AS_COMPARATIVE_FIRST:
        if fn is not EXTENT:
            out.append(_mismatch(f"first 'as' of an as-as comparative must have function Extent, got {label}"))
    elif ctx is ConstructionContext.INFINITIVAL_TO:
        if label not in _INFINITIVAL_TO_OK:
            out.append(_mismatch(f"infinitival 'to' cannot be {label}"))
    elif ctx is ConstructionContext.INFINITIVAL_FOR_SUBJECT:
        if label is not SpecialLabel.OTHER_INFINITIVE:
            out.append(_mismatch(f"'for' introducing an infinitival subject must be `i, got {label}"))
    return out


def validate(label: Label, ctx: ConstructionContext = ConstructionContext.NONE,
             bank=None) -> ValidationReport:
    """Check *label* against all rules and look it up in the example bank.

    *bank* defaults to the bundled example bank.  Whether the label is
    attested never affects ``ok``.
    """
    if bank is None:
        from .examplebank import default_bank
        bank = default_bank()
    return ValidationReport(tuple(check(label, ctx)), bank.is_attested(label))


def classify_direction(c: Construal) -> Direction:
    if c.congruent:
        return Direction.CONGRUENT
    if schema.is_ancestor(c.role, c.function):
        return Direction.ROLE_ANCESTOR_OF_FUNCTION
    if schema.is_ancestor(c.function, c.role):
        return Direction.FUNCTION_ANCESTOR_OF_ROLE
    return Direction.CROSS_BRANCH
