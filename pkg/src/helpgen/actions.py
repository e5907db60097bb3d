"""Action representations: how the KB describes performable procedures.

Four forms are supported, from fully canned to fully structured:

* canned   - an opaque text string, reproduced verbatim.
* ekr      - canned text with embedded entity references; the generator
             produces referring expressions for the references.
* tcf      - a case frame whose role fillers may be canned strings,
             inserted verbatim in role position.
* frame    - a case frame with all roles filled by entity references.

A representation may also carry ordered substeps (each itself a
representation); a ``seq`` form is a pure container holding only substeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

ROLE_NAMES = ("actor", "actee", "source", "destination", "manner")

# Resolved at expansion time to the component the query is about.
SELF_REF = "self"


@dataclass(frozen=True)
class EntityRef:
    """Reference to a KB node inside an action form; prep overrides the
    role's default preposition when set."""

    target: str
    prep: str | None = None


@dataclass(frozen=True)
class TextFiller:
    """A canned string standing in for a role filler."""

    text: str


RoleFiller = Union[EntityRef, TextFiller]


@dataclass(frozen=True)
class ActionRep:
    kind: str  # canned | ekr | tcf | frame | seq
    text: str | None = None  # canned
    segments: tuple = ()  # ekr: str and EntityRef interleaved
    verb: str | None = None  # tcf / frame: action symbol
    roles: tuple = ()  # tcf / frame: ordered (role, RoleFiller) pairs
    substeps: tuple = ()

    def role(self, name: str) -> RoleFiller | None:
        for role, filler in self.roles:
            if role == name:
                return filler
        return None

    def entity_targets(self):
        """Every node id this representation (and substeps) points at."""
        if self.kind == "ekr":
            for seg in self.segments:
                if isinstance(seg, EntityRef):
                    yield seg.target
        for _, filler in self.roles:
            if isinstance(filler, EntityRef):
                yield filler.target
        for step in self.substeps:
            yield from step.entity_targets()


def canned(text: str, substeps=()) -> ActionRep:
    return ActionRep(kind="canned", text=text, substeps=tuple(substeps))


def ekr(*segments, substeps=()) -> ActionRep:
    return ActionRep(kind="ekr", segments=tuple(segments), substeps=tuple(substeps))


def case_frame(verb: str, roles, *, textual: bool = False, substeps=()) -> ActionRep:
    """Build a tcf/frame representation; textual marks string fillers allowed."""
    pairs = tuple(roles.items()) if isinstance(roles, dict) else tuple(roles)
    kind = "tcf" if textual or any(isinstance(f, TextFiller) for _, f in pairs) else "frame"
    return ActionRep(kind=kind, verb=verb, roles=pairs, substeps=tuple(substeps))


def sequence(substeps) -> ActionRep:
    return ActionRep(kind="seq", substeps=tuple(substeps))
