"""The question space and contextual models.

A query is a point in the question space: a basic question, the component
it is about, the user's current task, the user-expertise model, and the
discourse focus.  This module also owns rule resolution (picking the most
specific content rule for a query) and the focus-update policy.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Optional, Sequence

from .errors import RuleResolutionError, StructuralError

if TYPE_CHECKING:  # pragma: no cover
    from .content import ContentRule
    from .kb.model import KnowledgeBase

QUESTIONS = (
    "WhatIsIt",
    "WhereIsIt",
    "WhatAreItsParts",
    "WhatAreItsSpecs",
    "WhatIsItsPurpose",
    "WhatDoesItConnectTo",
    "HowDoIPerform",
)

FOCUS_CAPACITY = 10


@dataclass(frozen=True)
class QuestionPoint:
    question: str
    component: str
    task: str
    expertise: str
    focus: tuple[str, ...] = ()
    # Only meaningful for HowDoIPerform; when omitted the task's default
    # action is used ("perform the current task").
    action: Optional[str] = None

    def __post_init__(self):
        if self.question not in QUESTIONS:
            raise StructuralError(
                f"unknown question {self.question!r}", question=self.question
            )


@dataclass(frozen=True)
class StylePrefs:
    contractions: bool = False
    allow_abbreviations: bool = True


@dataclass(frozen=True)
class ExpertiseModel:
    id: str
    known_lexemes: frozenset[str] = frozenset()
    known_actions: frozenset[str] = frozenset()
    style: StylePrefs = StylePrefs()
    language: str = "en"
    source: Optional[tuple[str, int]] = field(default=None, compare=False)

    def knows_lexeme(self, lexeme_id: str) -> bool:
        return lexeme_id in self.known_lexemes


@dataclass(frozen=True)
class DiscourseState:
    """What is salient right now: most salient entity first."""

    focus: tuple[str, ...] = ()
    last_center: Optional[str] = None


def update_focus(state: DiscourseState, mentioned: Sequence[str]) -> DiscourseState:
    """Mentioned entities (in mention order) push to the front; prior focus
    entities not re-mentioned follow; the list is capped."""
    seen = set()
    new_focus = []
    for m in list(mentioned) + list(state.focus):
        if m not in seen:
            seen.add(m)
            new_focus.append(m)
    new_focus = new_focus[:FOCUS_CAPACITY]
    center = mentioned[0] if mentioned else state.last_center
    return DiscourseState(focus=tuple(new_focus), last_center=center)


def rule_matches(rule: "ContentRule", question: str, component: str, task: str, kb) -> bool:
    return (
        rule.question == question
        and kb.subsumes(rule.component_class, component)
        and kb.subsumes(rule.task_class, task)
    )


def rule_depth(rule: "ContentRule", kb) -> tuple[int, int]:
    """Specificity key: component-class depth outranks task-class depth."""
    return (kb.depth(rule.component_class), kb.depth(rule.task_class))


def resolve_rule(
    question: str,
    component: str,
    task: str,
    rules: Sequence["ContentRule"],
    kb: "KnowledgeBase",
) -> "ContentRule":
    """The unique most specific rule matching the query.

    Specificity orders by component-class depth first, then task-class
    depth.  Validation rejects bundles where two matching rules tie, so a
    tie here reflects a stale or hand-built rule list.
    """
    matching = [r for r in rules if rule_matches(r, question, component, task, kb)]
    if not matching:
        raise RuleResolutionError(question, component, task)
    best_key = max(rule_depth(r, kb) for r in matching)
    best = [r for r in matching if rule_depth(r, kb) == best_key]
    if len(best) > 1:
        raise StructuralError(
            f"content rules {', '.join(sorted(r.id for r in best))} tie for "
            f"({question}, {component}, {task})",
            question=question,
        )
    return best[0]
