"""Controlled-language conformance checking.

Profiles cap sentence length, fix the approved lexicon, and ban word
classes and constructions.  Generated text is checked exactly: the
generator knows which lexeme every word came from and which grammatical
features it used.  Canned material and raw external text can only be
checked heuristically, and canned findings are reported as advisories,
never as generator failures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .realizer import spans as _sp
from .realizer.spans import AnnotatedSpan

ALL_IN_PACK = "all-in-pack"

BANNABLE_FEATURES = ("gerund-form", "complex-tense", "passive-pattern")

# -ing words that are not gerunds; keeps the surface heuristic quiet.
_ING_ALLOWLIST = frozenset(
    "during nothing anything something everything thing string spring "
    "ring king wing sing bring".split()
)

_WORD_STRIP = re.compile(r"^[^\w]+|[^\w]+$")


@dataclass(frozen=True)
class StandardProfile:
    id: str
    max_sentence_words: int = 20
    approved_lexemes: object = ALL_IN_PACK  # frozenset of lexeme ids, or the marker
    banned_lexemes: frozenset = frozenset()
    banned_features: frozenset = frozenset(BANNABLE_FEATURES)
    source: Optional[tuple] = field(default=None, compare=False)

    def approves(self, lexeme_id: str) -> bool:
        if lexeme_id in self.banned_lexemes:
            return False
        if self.approved_lexemes == ALL_IN_PACK:
            return True
        return lexeme_id in self.approved_lexemes


@dataclass(frozen=True)
class Violation:
    rule: str
    sentence: int
    token: str
    severity: str = "error"  # error | advisory
    message: str = ""


@dataclass
class _Word:
    text: str
    sentence: int
    origin: Optional[str]
    canned: bool


def _words(spans: Sequence[AnnotatedSpan], provenance: Optional[Sequence[str]] = None):
    """Flatten spans to word tokens with sentence indices.

    Sentences advance at terminal punctuation and at bullet boundaries, so
    the result is stable under any re-chunking of the same token sequence.
    """
    words: list[_Word] = []
    sentence = 0
    open_sentence = False
    prev_bullet: Optional[int] = None
    for i, span in enumerate(spans):
        canned = span.canned or (provenance is not None and i < len(provenance) and provenance[i] == "canned")
        if open_sentence and span.bullet_index != prev_bullet:
            sentence += 1
            open_sentence = False
        prev_bullet = span.bullet_index
        for raw in span.text.split():
            bare = _WORD_STRIP.sub("", raw)
            if bare:
                words.append(_Word(bare, sentence, span.origin, canned))
                open_sentence = True
            if raw.rstrip()[-1:] in _sp.TERMINALS:
                sentence += 1
                open_sentence = False
    return words


def check_text(
    spans: Sequence[AnnotatedSpan],
    profile: StandardProfile,
    provenance: Optional[Sequence[str]] = None,
    pack=None,
) -> list[Violation]:
    """Check annotated text against a profile.

    Words traced to a lexeme are checked against the approved set; raw
    words are checked against the pack's surface forms when a pack is
    given.  Findings inside canned material are advisories.
    """
    words = _words(spans, provenance)
    violations: list[Violation] = []

    counts: dict[int, int] = {}
    first_over: dict[int, str] = {}
    for w in words:
        counts[w.sentence] = counts.get(w.sentence, 0) + 1
        if counts[w.sentence] == profile.max_sentence_words + 1:
            first_over[w.sentence] = w.text
    sentence_canned = {}
    for w in words:
        sentence_canned[w.sentence] = sentence_canned.get(w.sentence, False) or w.canned
    for sent, count in sorted(counts.items()):
        if count > profile.max_sentence_words:
            violations.append(
                Violation(
                    rule="max-sentence-length",
                    sentence=sent,
                    token=first_over[sent],
                    severity="advisory" if sentence_canned[sent] else "error",
                    message=f"sentence {sent} has {count} words "
                    f"(limit {profile.max_sentence_words})",
                )
            )

    surface_forms = None
    banned_surfaces = set()
    if pack is not None:
        surface_forms = set()
        for entry in pack.lexicon:
            for word in entry.base_form.lower().split():
                surface_forms.add(word)
            for form in entry.irregular_forms.values():
                surface_forms.add(form.lower())
            surface_forms.add(entry.base_form.lower() + "s")
            surface_forms.add(entry.base_form.lower() + "es")
        for lexeme_id in profile.banned_lexemes:
            if pack.lexicon.has(lexeme_id):
                banned_surfaces.add(pack.lexicon.entry(lexeme_id).base_form.lower())

    for w in words:
        severity = "advisory" if w.canned else "error"
        if w.origin and w.origin.startswith("lexeme:"):
            lexeme_id = w.origin.split(":", 1)[1]
            if not profile.approves(lexeme_id):
                violations.append(
                    Violation(
                        rule="banned-word" if lexeme_id in profile.banned_lexemes else "unapproved-word",
                        sentence=w.sentence,
                        token=w.text,
                        severity=severity,
                        message=f"lexeme {lexeme_id} is not approved",
                    )
                )
            continue
        if w.origin in (_sp.ORIGIN_DATA, _sp.ORIGIN_FUNCTION):
            continue  # KB data and grammar words are not lexical choices
        # Raw or canned text: surface heuristics only.
        lower = w.text.lower()
        if lower in banned_surfaces:
            violations.append(
                Violation(
                    rule="banned-word",
                    sentence=w.sentence,
                    token=w.text,
                    severity=severity,
                    message=f"word {w.text!r} is banned",
                )
            )
        elif surface_forms is not None and pack is not None:
            if lower not in surface_forms and lower not in pack.function_words and not lower.isdigit():
                violations.append(
                    Violation(
                        rule="unapproved-word",
                        sentence=w.sentence,
                        token=w.text,
                        severity=severity,
                        message=f"word {w.text!r} is outside the approved lexicon",
                    )
                )
        if (
            "gerund-form" in profile.banned_features
            and lower.endswith("ing")
            and len(lower) > 5
            and lower not in _ING_ALLOWLIST
        ):
            violations.append(
                Violation(
                    rule="gerund-form",
                    sentence=w.sentence,
                    token=w.text,
                    severity=severity,
                    message=f"{w.text!r} looks like a gerund",
                )
            )
    return violations


def check_generated(sentences, spans, profile: StandardProfile, pack=None) -> list[Violation]:
    """Exact feature check over planned sentences plus the text checks.

    The pattern grammar cannot produce gerunds, complex tenses, or
    passives, so the feature pass verifies that assumption directly from
    the specs instead of guessing from the surface.
    """
    violations: list[Violation] = []
    for i, sentence in enumerate(sentences):
        mood = getattr(sentence, "mood", "declarative")
        if mood not in ("declarative", "imperative"):
            violations.append(
                Violation(
                    rule="banned-construction",
                    sentence=i,
                    token=mood,
                    message=f"mood {mood!r} is outside the controlled grammar",
                )
            )
    violations.extend(check_text(spans, profile, pack=pack))
    return violations


def non_advisory(violations: Sequence[Violation]) -> list[Violation]:
    return [v for v in violations if v.severity == "error"]
