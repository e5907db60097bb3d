"""Exception hierarchy for the generation engine.

Every error raised by the engine is structured: it carries a machine-readable
``kind`` plus whatever identifiers are relevant, so the delivery layer can
report failures as data instead of prose.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""

    kind = "engine-error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "message": self.message}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


class UnknownIdError(EngineError):
    """A concept, instance, lexeme, model, or rule id does not resolve."""

    kind = "unknown-id"

    def __init__(self, id: str, what: str = "node"):
        super().__init__(f"unknown {what} id: {id}", id=id, what=what)
        self.id = id


class AmbiguousInheritanceError(EngineError):
    """Two incomparable ancestors define conflicting defaults for a slot."""

    kind = "ambiguous-inheritance"

    def __init__(self, node: str, attribute: str, sources: list):
        super().__init__(
            f"ambiguous inherited value for {attribute} on {node}: "
            f"defined at {', '.join(sources)}",
            node=node,
            attribute=attribute,
            sources=sources,
        )
        self.node = node
        self.attribute = attribute
        self.sources = sources


class StructuralError(EngineError):
    """A hierarchy invariant is broken (cycle, duplicate placement, ...)."""

    kind = "structural-error"


class BundleFormatError(EngineError):
    """A bundle file failed to parse."""

    kind = "bundle-format"

    def __init__(self, message: str, file: str | None = None, line: int | None = None):
        super().__init__(message, file=file, line=line)
        self.file = file
        self.line = line


class BundleValidationError(EngineError):
    """A bundle parsed but failed validation; carries all diagnostics."""

    kind = "bundle-invalid"

    def __init__(self, diagnostics):
        bad = [d for d in diagnostics if d.severity == "error"]
        super().__init__(f"bundle invalid: {len(bad)} error(s)")
        self.diagnostics = list(diagnostics)


class RuleResolutionError(EngineError):
    """No content rule matches a query; a configuration defect."""

    kind = "rule-resolution"

    def __init__(self, question: str, component: str, task: str):
        super().__init__(
            f"no content rule for question {question} on {component} under {task}",
            question=question,
            component=component,
            task=task,
        )
        self.question = question


class KnowledgeAbsenceError(EngineError):
    """The KB holds no information that could answer the query.

    Distinct from RuleResolutionError: the rule resolved, but the component
    lacks the knowledge the schema needs (e.g. no procedure for an action).
    """

    kind = "knowledge-absence"

    def __init__(self, message: str, component: str, question: str, **details):
        super().__init__(message, component=component, question=question, **details)
        self.component = component
        self.question = question


class LexicalGapError(EngineError):
    """A concept has no realizable lexeme in the active language pack."""

    kind = "lexical-gap"

    def __init__(self, concept: str, pack: str):
        super().__init__(f"no lexeme for {concept} in pack {pack}", concept=concept, pack=pack)
        self.concept = concept
        self.pack = pack
