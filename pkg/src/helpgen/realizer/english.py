"""The English language pack: morphology, sentence patterns, articles.

The grammar is a closed set of patterns keyed by process type; that is all
the seven question schemas need, and controlled-language rules rule out
anything fancier.  Other languages implement the same interface and plug
in without engine changes.
"""

from __future__ import annotations

import re
from dataclasses import replace
from typing import Optional

from ..errors import StructuralError
from ..kb.values import Quantity, Ref, Seq, SlotValue, Sym, Text
from ..lexicon import LexicalEntry, Lexicon
from . import spans as sp
from .spans import AnnotatedSpan

_SIBILANT_RE = re.compile(r"(s|ss|sh|ch|x|z)$")
_CONSONANT_Y_RE = re.compile(r"[^aeiou]y$")

VOWELS = "aeiou"

# Words whose written-out pronunciation disagrees with their first letter.
ARTICLE_OVERRIDES = {
    "user": "a",
    "unit": "a",
    "unique": "a",
    "one": "a",
    "once": "a",
    "european": "a",
    "hour": "an",
    "honest": "an",
    "heir": "an",
    "honour": "an",
    "mcu": "an",
    "lcd": "an",
    "led": "an",
}

CONTRACTION_PAIRS = {
    ("it", "is"): "it's",
    ("is", "not"): "isn't",
    ("do", "not"): "don't",
    ("does", "not"): "doesn't",
    ("are", "not"): "aren't",
}

FUNCTION_WORDS = frozenset(
    """a an the it its is are and of in on at to from into onto with do does
    not what where how i connect connects part parts""".split()
)


def regular_plural(base: str) -> str:
    if _SIBILANT_RE.search(base):
        return base + "es"
    if _CONSONANT_Y_RE.search(base):
        return base[:-1] + "ies"
    return base + "s"


def regular_third_person(base: str) -> str:
    if _SIBILANT_RE.search(base):
        return base + "es"
    if _CONSONANT_Y_RE.search(base):
        return base[:-1] + "ies"
    if base.endswith("o"):
        return base + "es"
    return base + "s"


class EnglishPack:
    """Lexicon plus English patterns and morphology."""

    id = "en"

    def __init__(self, lexicon: Lexicon, parts_lexeme: Optional[str] = None):
        self.lexicon = lexicon
        self.parts_lexeme = parts_lexeme
        self.article_overrides = dict(ARTICLE_OVERRIDES)
        self.contraction_pairs = dict(CONTRACTION_PAIRS)
        self.function_words = set(FUNCTION_WORDS)

    # -- morphology ------------------------------------------------------------

    def inflect(self, entry: LexicalEntry, features: dict) -> str:
        """Inflect a lexical entry; irregular forms win over the rules."""
        base = entry.base_form
        number = features.get("number", "singular")
        tense = features.get("tense")
        mood = features.get("mood")
        form = base
        if entry.part_of_speech == "noun":
            if number == "plural":
                form = entry.irregular_forms.get("plural") or regular_plural(base)
        elif entry.part_of_speech == "verb":
            if mood == "imperative":
                form = base
            elif tense == "3sg":
                form = entry.irregular_forms.get("3sg") or regular_third_person(base)
            elif number == "plural":
                form = entry.irregular_forms.get("plural", base)
        if features.get("genitive"):
            form = form + "'s"
        return form

    # -- small helpers -----------------------------------------------------------

    def _verb_entry(self, symbol: str) -> Optional[LexicalEntry]:
        for e in self.lexicon.denoting(symbol, self.id):
            if e.part_of_speech == "verb":
                return e
        return None

    def _attr_entry(self, symbol: str) -> Optional[LexicalEntry]:
        for e in self.lexicon.denoting(symbol, self.id):
            if e.part_of_speech == "noun":
                return e
        return None

    def _word(self, text: str, **kw) -> AnnotatedSpan:
        return AnnotatedSpan(text=text, **kw)

    def verb_tokens(self, symbol: str, features: dict, **kw) -> list[AnnotatedSpan]:
        entry = self._verb_entry(symbol)
        if entry is not None:
            return [self._word(self.inflect(entry, features), origin=sp.lexeme_origin(entry.id), **kw)]
        return [self._word(symbol, origin=sp.ORIGIN_DATA, **kw)]

    def attr_tokens(self, symbol: str, **kw) -> list[AnnotatedSpan]:
        entry = self._attr_entry(symbol)
        if entry is not None:
            return [self._word(entry.base_form, origin=sp.lexeme_origin(entry.id), **kw)]
        return [self._word(symbol.replace("-", " "), origin=sp.ORIGIN_DATA, **kw)]

    def value_tokens(self, value: SlotValue, **kw) -> list[AnnotatedSpan]:
        if isinstance(value, (Sym, Text, Quantity)):
            return [self._word(str(value), origin=sp.ORIGIN_DATA, **kw)]
        if isinstance(value, Seq):
            out: list[AnnotatedSpan] = []
            for i, item in enumerate(value.items):
                if i:
                    joiner = "and" if i == len(value.items) - 1 else ","
                    out.append(self._word(joiner))
                out.extend(self.value_tokens(item, **kw))
            return out
        raise StructuralError(f"cannot realize value {value!r} directly")

    def np_tokens(self, plan, extra_premods=(), genitive: bool = False) -> list[AnnotatedSpan]:
        """Render a referring plan as a noun phrase token sequence."""
        if plan.pronoun:
            word = "its" if (plan.possessive or genitive) else "it"
            return [self._word(word)]
        entry = self.lexicon.entry(plan.head_lexeme)
        linked = dict(kind=sp.ENTITY, target=plan.referent)
        tokens: list[AnnotatedSpan] = []
        if plan.determiner == "definite":
            tokens.append(self._word("the"))
        elif plan.determiner == "indefinite":
            tokens.append(self._word("a"))
        for _, value in tuple(extra_premods) + tuple(plan.attributes):
            tokens.extend(self.value_tokens(value, **linked))
        head_features = {"number": "singular", "genitive": plan.possessive or genitive}
        tokens.append(
            self._word(
                self.inflect(entry, head_features),
                origin=sp.lexeme_origin(entry.id),
                **linked,
            )
        )
        return tokens

    def np_list_tokens(self, plans) -> list[AnnotatedSpan]:
        out: list[AnnotatedSpan] = []
        for i, plan in enumerate(plans):
            if i:
                if i == len(plans) - 1:
                    out.append(self._word("and"))
                else:
                    out.append(self._word(","))
            out.extend(self.np_tokens(plan))
        return out

    def be(self, number: str) -> AnnotatedSpan:
        return self._word("are" if number == "plural" else "is")

    # -- sentence patterns ----------------------------------------------------------

    def sentence_tokens(self, sentence) -> list[AnnotatedSpan]:
        """Dispatch a semantic spec or hybrid sentence to its pattern."""
        from ..planner import HybridSentence, ReferringPlan, SemanticSpec

        if isinstance(sentence, HybridSentence):
            tokens = self._hybrid(sentence)
        elif isinstance(sentence, SemanticSpec):
            pattern = getattr(self, f"_process_{sentence.process}", None)
            if pattern is None:
                raise StructuralError(
                    f"language pack {self.id} does not support process {sentence.process!r}"
                )
            tokens = pattern(sentence)
        else:
            raise StructuralError(f"cannot realize {type(sentence).__name__}")
        if not tokens:
            return tokens
        last = tokens[-1]
        if not (last.text and last.text.rstrip()[-1:] in sp.TERMINALS):
            tokens.append(self._word("."))
        bullet = getattr(sentence, "bullet", None)
        if bullet is not None:
            tokens = [replace(t, bullet_index=bullet) for t in tokens]
        return tokens

    def _hybrid(self, sentence) -> list[AnnotatedSpan]:
        from ..planner import ReferringPlan

        tokens: list[AnnotatedSpan] = []
        for seg in sentence.segments:
            if isinstance(seg, ReferringPlan):
                tokens.extend(self.np_tokens(seg))
            else:
                text = seg.strip()
                if text:
                    tokens.append(self._word(text, canned=True, origin=sp.ORIGIN_RAW))
        return tokens

    def _process_identity(self, spec) -> list[AnnotatedSpan]:
        tokens = self.np_tokens(spec.domain_arg)
        tokens.append(self.be(spec.number))
        tokens.extend(self.np_tokens(spec.range_arg, extra_premods=spec.relations))
        return tokens

    def _process_attributive(self, spec) -> list[AnnotatedSpan]:
        facts = tuple(spec.range_arg)
        tokens: list[AnnotatedSpan] = []
        for i, (attr, value) in enumerate(facts):
            if i:
                if i == len(facts) - 1:
                    tokens.append(self._word("and"))
                else:
                    tokens.append(self._word(","))
                tokens.append(self._word("its"))
            else:
                tokens.extend(self.np_tokens(spec.domain_arg, genitive=True))
            tokens.extend(self.attr_tokens(attr))
            tokens.append(self.be("singular"))
            tokens.extend(self.value_tokens(value))
        return tokens

    def _process_locative(self, spec) -> list[AnnotatedSpan]:
        tokens = self.np_tokens(spec.domain_arg)
        if spec.verb:
            tokens.extend(self.verb_tokens(spec.verb, {"tense": "3sg"}))
        else:
            tokens.append(self.be(spec.number))
        if spec.preposition:
            for word in spec.preposition.split():
                tokens.append(self._word(word))
        rng = spec.range_arg
        if isinstance(rng, tuple):
            tokens.extend(self.np_list_tokens(rng))
        else:
            tokens.extend(self.np_tokens(rng))
        return tokens

    def _process_parts(self, spec) -> list[AnnotatedSpan]:
        tokens = self.np_tokens(spec.domain_arg, genitive=True)
        number = spec.number
        if self.parts_lexeme and self.lexicon.has(self.parts_lexeme):
            entry = self.lexicon.entry(self.parts_lexeme)
            tokens.append(
                self._word(
                    self.inflect(entry, {"number": number}),
                    origin=sp.lexeme_origin(entry.id),
                )
            )
        else:
            tokens.append(self._word("parts" if number == "plural" else "part"))
        tokens.append(self.be(number))
        tokens.extend(self.np_list_tokens(tuple(spec.range_arg)))
        return tokens

    def _process_imperative(self, spec) -> list[AnnotatedSpan]:
        link = {}
        if spec.verb_link is not None:
            action, component = spec.verb_link
            link = dict(kind=sp.ACTION, action=action, target=component)
        tokens = self.verb_tokens(spec.verb, {"mood": "imperative"}, **link)
        for role in spec.roles:
            if isinstance(role.filler, str):
                tokens.append(self._word(role.filler, canned=True, origin=sp.ORIGIN_RAW))
            else:
                if role.prep:
                    for word in role.prep.split():
                        tokens.append(self._word(word))
                tokens.extend(self.np_tokens(role.filler))
        if spec.manner:
            tokens.append(self._word(spec.manner, canned=True, origin=sp.ORIGIN_RAW))
        return tokens

    # -- titles -----------------------------------------------------------------------

    def title_tokens(self, question: str, topic_plan, action: Optional[str] = None):
        np = self.np_tokens(topic_plan)
        w = self._word
        if question == "WhatIsIt":
            tokens = [w("What"), self.be("singular"), *np]
        elif question == "WhereIsIt":
            tokens = [w("Where"), self.be("singular"), *np]
        elif question == "WhatAreItsParts":
            tokens = [w("What"), self.be("plural"), w("the"), w("parts"), w("of"), *np]
        elif question == "WhatAreItsSpecs":
            tokens = [w("What"), self.be("plural"), w("the"), w("specifications"), w("of"), *np]
        elif question == "WhatIsItsPurpose":
            tokens = [w("What"), self.be("singular"), w("the"), w("purpose"), w("of"), *np]
        elif question == "WhatDoesItConnectTo":
            tokens = [w("What"), w("does"), *np, w("connect"), w("to")]
        elif question == "HowDoIPerform":
            verb = self.verb_tokens(action or "perform", {"mood": "imperative"})
            tokens = [w("How"), w("do"), w("I"), *verb, *np]
        else:
            raise StructuralError(f"unknown question {question!r}")
        tokens.append(w("?"))
        return tokens

    # -- articles ------------------------------------------------------------------------

    def article_for(self, following_word: str) -> str:
        word = following_word.strip().split(" ")[0].lower().strip("\"'(")
        override = self.article_overrides.get(word)
        if override:
            return override
        return "an" if word[:1] in VOWELS else "a"
