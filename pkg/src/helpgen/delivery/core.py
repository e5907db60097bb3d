"""Response assembly and sessions.

Runs the three generation stages over a query, packages the annotated
title, body, and pre-validated followup buttons, and keeps per-session
discourse state up to date.  A standards check runs on every response;
findings are logged as advisories, never surfaced as answer text.
"""

from __future__ import annotations

import logging
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Optional

from ..content import ContentPlan, plan_content, task_action
from ..context import DiscourseState, QuestionPoint, update_focus
from ..kb.bundle import KbBundle
from ..planner import gen_reference, mentioned_entities, plan_sentences, referring_plans
from ..realizer import realize, render_title
from ..realizer.spans import AnnotatedSpan
from ..standards import check_generated, non_advisory

log = logging.getLogger("helpgen")

HISTORY_CAP = 100

QUESTION_LABELS = {
    "WhatIsIt": "WHAT",
    "WhereIsIt": "WHERE",
    "WhatAreItsParts": "PARTS",
    "WhatAreItsSpecs": "SPECS",
    "WhatIsItsPurpose": "PURPOSE",
    "WhatDoesItConnectTo": "CONNECTIONS",
    "HowDoIPerform": "USE",
}


@dataclass(frozen=True)
class Followup:
    question: str
    component: str
    label: str

    def to_wire(self) -> dict:
        return {"question": self.question, "component": self.component, "label": self.label}


@dataclass(frozen=True)
class Response:
    title: tuple[AnnotatedSpan, ...]
    body: tuple[AnnotatedSpan, ...]
    followups: tuple[Followup, ...]
    elapsed_ms: float

    @property
    def title_text(self) -> str:
        return "".join(s.text for s in self.title)

    @property
    def body_text(self) -> str:
        return "".join(s.text for s in self.body)

    def to_wire(self) -> dict:
        return {
            "title": [s.to_wire() for s in self.title],
            "body": [s.to_wire() for s in self.body],
            "followups": [f.to_wire() for f in self.followups],
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class Session:
    id: str
    expertise: str
    task: str
    discourse: DiscourseState = field(default_factory=DiscourseState)
    history: list[QuestionPoint] = field(default_factory=list)
    language: Optional[str] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


def new_session(expertise: str, task: str, language: Optional[str] = None) -> Session:
    return Session(id=uuid.uuid4().hex, expertise=expertise, task=task, language=language)


def followup_label(question: str, task: str, bundle: KbBundle) -> str:
    if question == "HowDoIPerform":
        action = task_action(task, bundle)
        if action:
            return action.upper()
    return QUESTION_LABELS[question]


def answer(point: QuestionPoint, session: Session, bundle: KbBundle) -> Response:
    """Generate a response and advance the session's discourse state."""
    start = time.perf_counter()
    model = bundle.expertise(point.expertise)
    language = session.language or model.language
    pack = bundle.pack(language)
    state = session.discourse
    if point.focus != state.focus:
        state = DiscourseState(focus=point.focus, last_center=state.last_center)

    plan = plan_content(point, bundle)
    sentences = plan_sentences(plan, point, state, bundle)
    body = realize(sentences, model.style, pack)

    topic_plan = gen_reference(
        point.component,
        (),
        model,
        bundle,
        allow_abbreviations=model.style.allow_abbreviations and not plan.unabbreviate,
    )
    title = render_title(point.question, topic_plan, model.style, pack, action=plan.action)

    followups = tuple(
        Followup(
            question=q,
            component=point.component,
            label=followup_label(q, point.task, bundle),
        )
        for q in plan.followups
    )

    profile = bundle.profiles.get("default")
    if profile is not None:
        findings = check_generated(sentences, body, profile, pack=bundle.pack(language))
        hard = non_advisory(findings)
        if hard:
            log.warning("standards violations in generated text: %s", hard)
        for v in findings:
            if v.severity == "advisory":
                log.info("standards advisory (canned text): %s", v)
    for ref_plan in referring_plans(sentences):
        if not ref_plan.pronoun and not ref_plan.distinguishing:
            log.info(
                "reference to %s could not be fully distinguished from %s",
                ref_plan.referent,
                ref_plan.distractors,
            )

    elapsed_ms = (time.perf_counter() - start) * 1000.0
    response = Response(
        title=tuple(title),
        body=tuple(body),
        followups=followups,
        elapsed_ms=elapsed_ms,
    )

    mentions = [point.component] + [
        m for m in mentioned_entities(sentences) if m != point.component
    ]
    session.discourse = update_focus(state, mentions)
    session.history.append(point)
    if len(session.history) > HISTORY_CAP:
        del session.history[: len(session.history) - HISTORY_CAP]
    return response


def answer_once(point: QuestionPoint, bundle: KbBundle) -> Response:
    """One-shot answer without a persistent session (CLI, export)."""
    session = new_session(point.expertise, point.task)
    session.discourse = DiscourseState(focus=point.focus)
    return answer(point, session, bundle)
