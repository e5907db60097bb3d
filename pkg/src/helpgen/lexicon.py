"""Lexical entries and lookup.

Each entry ties a lexeme to the thing it denotes: a concept (head nouns),
an action symbol (verbs), or an attribute (for attributive sentences).
Attribute entries also declare the category used when grouping facts into
sentences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import UnknownIdError

PARTS_OF_SPEECH = ("noun", "verb", "adjective", "adverb")


@dataclass(frozen=True)
class LexicalEntry:
    id: str
    language: str
    part_of_speech: str
    base_form: str
    denotes: str
    irregular_forms: Mapping[str, str] = field(default_factory=dict)
    basic_level: bool = False
    abbreviation_of: Optional[str] = None
    attribute_category: Optional[str] = None
    source: Optional[tuple[str, int]] = field(default=None, compare=False)


class Lexicon:
    def __init__(self, entries: Iterable[LexicalEntry]):
        self.entries: dict[str, LexicalEntry] = {}
        self._by_denotes: dict[tuple[str, str], list[LexicalEntry]] = {}
        for e in entries:
            if e.id in self.entries:
                raise UnknownIdError(e.id, what="duplicate lexeme")
            self.entries[e.id] = e
            self._by_denotes.setdefault((e.language, e.denotes), []).append(e)

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self):
        return len(self.entries)

    def has(self, lexeme_id: str) -> bool:
        return lexeme_id in self.entries

    def entry(self, lexeme_id: str) -> LexicalEntry:
        e = self.entries.get(lexeme_id)
        if e is None:
            raise UnknownIdError(lexeme_id, what="lexeme")
        return e

    def denoting(self, symbol: str, language: str) -> list[LexicalEntry]:
        """Entries naming the given concept, action, or attribute."""
        return list(self._by_denotes.get((language, symbol), ()))

    def languages(self) -> list[str]:
        seen = []
        for e in self.entries.values():
            if e.language not in seen:
                seen.append(e.language)
        return seen

    def ids_for_language(self, language: str) -> frozenset[str]:
        return frozenset(e.id for e in self.entries.values() if e.language == language)

    def category_of(self, attribute: str, language: str) -> str:
        """Aggregation category for an attribute; the attribute itself when
        no entry declares one."""
        for e in self.denoting(attribute, language):
            if e.attribute_category:
                return e.attribute_category
        return attribute
