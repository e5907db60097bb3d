"""Stage 1: content determination.

The resolved content rule names a schema, the attributes worth conveying,
formatting flags, and candidate followup questions.  Planning fills the
schema with whatever the KB actually knows about the component, and keeps
only the followups that would themselves produce an answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Sequence

from .actions import ActionRep
from .context import QuestionPoint, resolve_rule
from .errors import KnowledgeAbsenceError, UnknownIdError
from .kb.values import Ref, SlotValue, Sym

if TYPE_CHECKING:  # pragma: no cover
    from .kb.bundle import KbBundle

SCHEMAS = (
    "identify",
    "location",
    "partslist",
    "specs",
    "purpose",
    "connections",
    "procedure",
)

# Schemas that answer nothing when the component carries none of the
# conveyed attributes; identification alone is always possible.
_FACT_REQUIRED = {"specs", "purpose", "connections"}

LOCATION_PREP_SLOT = "location-preposition"
DEFAULT_ACTION_SLOT = "default-action"


@dataclass(frozen=True)
class ContentRule:
    id: str
    question: str
    component_class: str
    task_class: str
    schema: str
    bullet: bool = False
    unabbreviate: bool = False
    conveyed_attributes: tuple[str, ...] = ()
    candidate_followups: tuple[str, ...] = ()
    required_attributes: tuple[str, ...] = ()
    source: Optional[tuple[str, int]] = field(default=None, compare=False)


@dataclass(frozen=True)
class ContentPlan:
    schema: str
    topic: str
    facts: tuple[tuple[str, SlotValue], ...] = ()
    parts: Optional[tuple[str, ...]] = None
    steps: Optional[tuple[ActionRep, ...]] = None
    bullet: bool = False
    unabbreviate: bool = False
    followups: tuple[str, ...] = ()
    # Schema-specific extras.
    action: Optional[str] = None  # procedure
    location_target: Optional[str] = None  # location
    location_prep: str = "in"  # location


def task_action(task: str, bundle: "KbBundle") -> str | None:
    """The action a bare HowDoIPerform refers to under this task."""
    value = bundle.kb.inherit(task, DEFAULT_ACTION_SLOT)
    return value.name if isinstance(value, Sym) else None


def plan_content(
    point: QuestionPoint, bundle: "KbBundle", with_followups: bool = True
) -> ContentPlan:
    """Apply the resolved rule to the component and produce a content plan.

    Raises KnowledgeAbsenceError when the schema needs knowledge the KB
    does not hold for this component; that error is what followup
    filtering probes for.
    """
    kb = bundle.kb
    kb.node(point.component)
    rule = resolve_rule(point.question, point.component, point.task, bundle.content_rules, kb)

    facts = []
    for attr in rule.conveyed_attributes:
        value = kb.inherit(point.component, attr)
        if value is not None:
            facts.append((attr, value))

    parts: tuple[str, ...] | None = None
    steps: tuple[ActionRep, ...] | None = None
    action: str | None = None
    location_target: str | None = None
    location_prep = "in"

    if rule.schema == "partslist":
        parts = kb.parts_of(point.component)
        if not parts:
            raise KnowledgeAbsenceError(
                f"no parts recorded for {point.component}",
                component=point.component,
                question=point.question,
            )
    elif rule.schema == "procedure":
        action = point.action or task_action(point.task, bundle)
        if action is None:
            raise KnowledgeAbsenceError(
                f"task {point.task} names no action to perform",
                component=point.component,
                question=point.question,
            )
        rep = kb.action_for(point.component, action)
        if rep is None:
            raise KnowledgeAbsenceError(
                f"no procedure knowledge for {action} on {point.component}",
                component=point.component,
                question=point.question,
                action=action,
            )
        steps = rep.substeps if rep.substeps else (rep,)
    elif rule.schema == "location":
        location_target = kb.part_parent(point.component)
        if location_target is None:
            raise KnowledgeAbsenceError(
                f"no location recorded for {point.component}",
                component=point.component,
                question=point.question,
            )
        prep = kb.inherit(point.component, LOCATION_PREP_SLOT)
        if isinstance(prep, Sym):
            location_prep = prep.name
    elif rule.schema in _FACT_REQUIRED and not facts:
        raise KnowledgeAbsenceError(
            f"none of the {rule.schema} attributes are recorded for {point.component}",
            component=point.component,
            question=point.question,
        )

    followups: tuple[str, ...] = ()
    if with_followups:
        followups = tuple(
            filter_followups(rule.candidate_followups, point.component, point.task, bundle)
        )

    return ContentPlan(
        schema=rule.schema,
        topic=point.component,
        facts=tuple(facts),
        parts=parts,
        steps=steps,
        bullet=rule.bullet,
        unabbreviate=rule.unabbreviate,
        followups=followups,
        action=action,
        location_target=location_target,
        location_prep=location_prep,
    )


def is_answerable(question: str, topic: str, task: str, bundle: "KbBundle") -> bool:
    """Dry-run content planning and report whether it would succeed."""
    probe = QuestionPoint(
        question=question,
        component=topic,
        task=task,
        expertise=bundle.default_model_id(),
    )
    try:
        plan_content(probe, bundle, with_followups=False)
        return True
    except KnowledgeAbsenceError:
        return False


def filter_followups(
    candidates: Sequence[str], topic: str, task: str, bundle: "KbBundle"
) -> list[str]:
    """Keep candidate questions that would actually produce an answer."""
    return [q for q in candidates if is_answerable(q, topic, task, bundle)]
