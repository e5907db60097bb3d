"""Command-line interface.

    helpgen gen --kb DIR --question Q --component C --task T --model M
    helpgen serve --kb DIR --port N
    helpgen export --kb DIR --out DIR --models M1,M2
    helpgen check --kb DIR --profile P [--file F]
    helpgen validate --kb DIR

Exit codes: 0 success, 1 validation or generation failure, 2 usage error.
"""

from __future__ import annotations

import json
import sys

import click

from ..content import is_answerable
from ..context import QUESTIONS, QuestionPoint
from ..errors import BundleValidationError, EngineError
from ..kb.bundle import load_bundle, load_bundle_checked
from ..realizer.spans import AnnotatedSpan
from ..standards import check_text, non_advisory
from .core import answer_once
from .export import export_static


def _load(kb_dir):
    try:
        return load_bundle(kb_dir)
    except BundleValidationError as exc:
        for d in exc.diagnostics:
            click.echo(str(d), err=True)
        sys.exit(1)


@click.group()
def main():
    """Generate hypertext help responses from a machine knowledge base."""


@main.command()
@click.option("--kb", "kb_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--question", "-q", required=True, type=click.Choice(QUESTIONS))
@click.option("--component", "-c", required=True)
@click.option("--task", "-t", required=True)
@click.option("--model", "-m", required=True)
@click.option("--focus", default="", help="Comma-separated ids, most salient first.")
@click.option("--action", default=None, help="Action symbol for HowDoIPerform.")
@click.option("--json", "as_json", is_flag=True, help="Emit the wire-format response.")
def gen(kb_dir, question, component, task, model, focus, action, as_json):
    """Answer one question and print the response."""
    bundle = _load(kb_dir)
    point = QuestionPoint(
        question=question,
        component=component,
        task=task,
        expertise=model,
        focus=tuple(f for f in focus.split(",") if f),
        action=action,
    )
    try:
        response = answer_once(point, bundle)
    except EngineError as exc:
        click.echo(json.dumps({"error": exc.to_dict()}), err=True)
        sys.exit(1)
    if as_json:
        click.echo(json.dumps(response.to_wire(), indent=2))
        return
    click.echo(response.title_text)
    bullet = None
    for span in response.body:
        if span.bullet_index is not None and span.bullet_index != bullet:
            if bullet is None:
                click.echo()
            bullet = span.bullet_index
            click.echo(f"  * ", nl=False)
        click.echo(span.text, nl=False)
    click.echo()
    if response.followups:
        click.echo("[" + "] [".join(f.label for f in response.followups) + "]")


@main.command()
@click.option("--kb", "kb_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--port", default=8040, type=int)
@click.option("--host", default="127.0.0.1")
def serve(kb_dir, port, host):
    """Run the HTTP service."""
    from .http import serve as run_server

    bundle = _load(kb_dir)
    click.echo(f"serving on http://{host}:{port}")
    run_server(bundle, port, host)


@main.command()
@click.option("--kb", "kb_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--models", required=True, help="Comma-separated expertise model ids.")
@click.option("--task", default=None, help="Task context for all pages.")
def export(kb_dir, out_dir, models, task):
    """Write a static hypertext tree."""
    bundle = _load(kb_dir)
    model_list = [m for m in models.split(",") if m]
    try:
        written = export_static(bundle, model_list, out_dir, task=task)
    except (EngineError, OSError) as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    click.echo(f"wrote {len(written)} pages to {out_dir}")


@main.command()
@click.option("--kb", "kb_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--profile", "profile_id", default="default")
@click.option("--file", "path", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Check a raw text file instead of generated output.")
def check(kb_dir, profile_id, path):
    """Check conformance to a controlled-language profile."""
    bundle = _load(kb_dir)
    profile = bundle.profile(profile_id)
    violations = []
    if path is not None:
        text = open(path, encoding="utf-8").read()
        spans = [AnnotatedSpan(text=text, origin=None)]
        pack = bundle.pack(bundle.language_packs()[0])
        violations = check_text(spans, profile, pack=pack)
    else:
        from ..standards import check_generated
        from ..content import task_action
        from ..context import DiscourseState
        from ..errors import KnowledgeAbsenceError

        for model_id in bundle.expertise_models:
            language = bundle.expertise(model_id).language
            for component in bundle.component_ids():
                for question in QUESTIONS:
                    point = QuestionPoint(
                        question=question, component=component,
                        task=bundle.task_root, expertise=model_id,
                    )
                    try:
                        response = answer_once(point, bundle)
                    except KnowledgeAbsenceError:
                        continue
                    violations.extend(
                        check_text(response.body, profile, pack=bundle.pack(language))
                    )
    for v in violations:
        click.echo(f"{v.severity}: sentence {v.sentence}: {v.rule}: {v.message}")
    if non_advisory(violations):
        sys.exit(1)
    click.echo("conformant" + (" (advisories above)" if violations else ""))


@main.command()
@click.option("--kb", "kb_dir", required=True, type=click.Path(exists=True, file_okay=False))
def validate(kb_dir):
    """Validate a bundle and print diagnostics."""
    bundle, diagnostics = load_bundle_checked(kb_dir)
    for d in diagnostics:
        click.echo(str(d))
    if bundle is None or any(d.severity == "error" for d in diagnostics):
        sys.exit(1)
    click.echo(
        f"ok: {len(bundle.kb.concepts)} concepts, {len(bundle.kb.instances)} instances, "
        f"{len(bundle.lexicon)} lexemes, {len(bundle.content_rules)} rules"
    )


if __name__ == "__main__":
    main()
