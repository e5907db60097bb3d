"""Static hypertext export.

Writes one HTML page per answerable (question, component) pair per
expertise model, plus a per-component question menu and a root index.
Entity links point at component menus; action links and followup buttons
point at the corresponding question pages.  Output depends only on the
bundle, so re-exporting an unchanged bundle is byte-identical.
"""

from __future__ import annotations

import html
from pathlib import Path

from ..content import is_answerable, task_action
from ..context import QUESTIONS, QuestionPoint
from ..errors import EngineError, KnowledgeAbsenceError
from ..kb.bundle import KbBundle, TASK_ROOT
from .core import answer_once

_STYLE = (
    "body{font-family:sans-serif;max-width:42em;margin:2em auto;padding:0 1em}"
    "a{color:#0645ad}.followups a{display:inline-block;border:1px solid #888;"
    "padding:2px 8px;margin-right:6px;text-decoration:none}"
)


def _page_name(question: str, component: str, model: str, action: str | None = None) -> str:
    name = f"q_{question}__c_{component}__m_{model}"
    if action:
        name += f"__a_{action}"
    return name + ".html"


def _menu_name(component: str, model: str) -> str:
    return f"c_{component}__m_{model}.html"


def _html_page(title: str, body: str) -> str:
    return (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
        f"<title>{html.escape(title)}</title><style>{_STYLE}</style></head>\n"
        f"<body>\n{body}\n</body></html>\n"
    )


def _spans_html(spans, model: str) -> str:
    out = []
    bullet_open = False
    current_bullet = None
    for span in spans:
        text = html.escape(span.text)
        if span.kind == "entity":
            text = f'<a href="{_menu_name(span.target, model)}">{text}</a>'
        elif span.kind == "action":
            text = (
                f'<a href="{_page_name("HowDoIPerform", span.target, model, span.action)}">'
                f"{text}</a>"
            )
        if span.bullet_index is not None:
            if not bullet_open:
                out.append("<ul>")
                bullet_open = True
                current_bullet = None
            if span.bullet_index != current_bullet:
                if current_bullet is not None:
                    out.append("</li>")
                out.append("<li>")
                current_bullet = span.bullet_index
        elif bullet_open:
            out.append("</li></ul>")
            bullet_open = False
        out.append(text)
    if bullet_open:
        out.append("</li></ul>")
    return "".join(out)


def _answerable_questions(bundle: KbBundle, component: str, task: str):
    """(question, action) pairs that yield a page for this component."""
    pairs = []
    for question in QUESTIONS:
        if question == "HowDoIPerform":
            for action in bundle.kb.actions_of(component):
                pairs.append((question, action))
            continue
        if is_answerable(question, component, task, bundle):
            pairs.append((question, None))
    return pairs


def export_static(bundle: KbBundle, models: list[str], out, task: str | None = None) -> list[str]:
    """Write the page tree; returns the relative paths written."""
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    task = task or TASK_ROOT
    written: list[str] = []

    components = bundle.component_ids()
    for model_id in models:
        bundle.expertise(model_id)  # fail fast on unknown models

    for model_id in models:
        for component in components:
            pairs = _answerable_questions(bundle, component, task)
            # The component menu stands in for the question pop-up.
            menu_items = []
            for question, action in pairs:
                label = question if not action else f"{question} ({action})"
                menu_items.append(
                    f'<li><a href="{_page_name(question, component, model_id, action)}">'
                    f"{html.escape(label)}</a></li>"
                )
            body = (
                f"<h1>{html.escape(bundle.display_name(component))}</h1>\n"
                f"<ul>{''.join(menu_items)}</ul>\n"
                f'<p><a href="index.html">Index</a></p>'
            )
            path = out_dir / _menu_name(component, model_id)
            path.write_text(_html_page(bundle.display_name(component), body), "utf-8")
            written.append(path.name)

            for question, action in pairs:
                point = QuestionPoint(
                    question=question,
                    component=component,
                    task=task,
                    expertise=model_id,
                    action=action,
                )
                try:
                    response = answer_once(point, bundle)
                except KnowledgeAbsenceError:
                    continue
                title_html = _spans_html(response.title, model_id)
                body_html = _spans_html(response.body, model_id)
                buttons = "".join(
                    f'<a href="{_page_name(f.question, f.component, model_id, task_action(task, bundle) if f.question == "HowDoIPerform" else None)}">'
                    f"{html.escape(f.label)}</a>"
                    for f in response.followups
                )
                page = (
                    f"<h1>{title_html}</h1>\n<p>{body_html}</p>\n"
                    f'<div class="followups">{buttons}</div>\n'
                    f'<p><a href="{_menu_name(component, model_id)}">Menu</a> '
                    f'<a href="index.html">Index</a></p>'
                )
                path = out_dir / _page_name(question, component, model_id, action)
                path.write_text(_html_page(response.title_text, page), "utf-8")
                written.append(path.name)

    index_items = []
    for model_id in models:
        index_items.append(f"<h2>{html.escape(model_id)}</h2><ul>")
        for component in components:
            index_items.append(
                f'<li><a href="{_menu_name(component, model_id)}">'
                f"{html.escape(bundle.display_name(component))}</a></li>"
            )
        index_items.append("</ul>")
    index = out_dir / "index.html"
    index.write_text(_html_page("Index", "<h1>Components</h1>" + "".join(index_items)), "utf-8")
    written.append(index.name)
    return sorted(written)
