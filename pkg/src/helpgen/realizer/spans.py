"""Annotated text spans: the surface form of a response.

A span is a run of text with at most one hypertext annotation: none, a
link to an entity, or a link to a performable action on a component.
Spans also carry formatting (bullet membership) and two generator-internal
fields used downstream: whether the text came from canned material, and
where each word came from (a lexeme, KB data, or the grammar itself).
Internal fields never appear on the wire.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

PLAIN = "plain"
ENTITY = "entity"
ACTION = "action"

TERMINALS = (".", "?", "!")
NO_SPACE_BEFORE = {".", ",", ";", ":", ")", "?", "!"}
NO_SPACE_AFTER = {"("}

ORIGIN_FUNCTION = "function"  # closed-class words supplied by the grammar
ORIGIN_DATA = "data"  # slot values reproduced from the KB
ORIGIN_RAW = None  # unanalyzed text (external input)


@dataclass(frozen=True)
class AnnotatedSpan:
    text: str
    kind: str = PLAIN
    target: Optional[str] = None  # entity id, or component id for actions
    action: Optional[str] = None  # action symbol, kind == action only
    bullet_index: Optional[int] = None
    emphasis: bool = False
    canned: bool = False
    origin: Optional[str] = ORIGIN_FUNCTION  # or "lexeme:<id>"

    def merge_key(self):
        return (self.kind, self.target, self.action, self.bullet_index, self.emphasis, self.canned)

    def to_wire(self) -> dict:
        out: dict = {"text": self.text, "kind": self.kind}
        if self.target is not None:
            out["target"] = self.target
        if self.action is not None:
            out["action"] = self.action
        if self.bullet_index is not None:
            out["bullet_index"] = self.bullet_index
        return out


def lexeme_origin(lexeme_id: str) -> str:
    return f"lexeme:{lexeme_id}"


def plain(text: str, **kw) -> AnnotatedSpan:
    return AnnotatedSpan(text=text, **kw)


def entity(text: str, target: str, **kw) -> AnnotatedSpan:
    return AnnotatedSpan(text=text, kind=ENTITY, target=target, **kw)


def action_link(text: str, action: str, target: str, **kw) -> AnnotatedSpan:
    return AnnotatedSpan(text=text, kind=ACTION, action=action, target=target, **kw)


def span_text(spans) -> str:
    """The plain reading of a span list."""
    return "".join(s.text for s in spans)


def link_targets(spans) -> list:
    """Multiset (as a sorted list) of link annotations, for invariants."""
    out = []
    for s in spans:
        if s.kind == ENTITY:
            out.append(("entity", s.target))
        elif s.kind == ACTION:
            out.append(("action", s.action, s.target))
    return sorted(out)
