"""Stage 3 entry points: realization, inflection, post-processing.

``realize`` turns planned sentences into annotated spans via a language
pack; ``postprocess`` fixes capitalization, spacing, articles, terminal
punctuation, and optional contractions while preserving every hypertext
annotation; ``inflect`` exposes the pack morphology directly.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Optional, Sequence

from ..context import StylePrefs
from ..errors import UnknownIdError
from ..lexicon import LexicalEntry, Lexicon
from .english import EnglishPack
from . import spans as sp
from .spans import AnnotatedSpan

PACK_CLASSES = {"en": EnglishPack}


def build_pack(language: str, lexicon: Lexicon, parts_lexeme: Optional[str] = None):
    cls = PACK_CLASSES.get(language)
    if cls is None:
        raise UnknownIdError(language, what="language pack")
    return cls(lexicon, parts_lexeme=parts_lexeme)


_BARE_PACK = EnglishPack(Lexicon([]))


def inflect(entry: LexicalEntry, features: dict, pack=None) -> str:
    return (pack or _BARE_PACK).inflect(entry, features)


def realize(sentences: Sequence, style: StylePrefs, pack) -> list[AnnotatedSpan]:
    """Render planned sentences to final annotated spans."""
    tokens: list[AnnotatedSpan] = []
    for sentence in sentences:
        tokens.extend(pack.sentence_tokens(sentence))
    return postprocess(tokens, style, pack)


# -- post-processing ---------------------------------------------------------------


def _ends_terminal(text: str) -> bool:
    stripped = text.rstrip()
    return bool(stripped) and stripped[-1] in sp.TERMINALS


def _sentence_starts(tokens: list[AnnotatedSpan]) -> list[bool]:
    starts = []
    prev: Optional[AnnotatedSpan] = None
    for tok in tokens:
        if prev is None:
            starts.append(True)
        elif _ends_terminal(prev.text):
            starts.append(True)
        elif tok.bullet_index != prev.bullet_index:
            starts.append(True)
        else:
            starts.append(False)
        prev = tok
    return starts


def _apply_contractions(tokens: list[AnnotatedSpan], pack) -> list[AnnotatedSpan]:
    out: list[AnnotatedSpan] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        if (
            nxt is not None
            and not tok.canned
            and not nxt.canned
            and tok.bullet_index == nxt.bullet_index
            and (tok.text.lower(), nxt.text.lower()) in pack.contraction_pairs
        ):
            contracted = pack.contraction_pairs[(tok.text.lower(), nxt.text.lower())]
            if tok.text[:1].isupper():
                contracted = contracted[0].upper() + contracted[1:]
            out.append(replace(tok, text=contracted))
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _fix_articles(tokens: list[AnnotatedSpan], pack) -> list[AnnotatedSpan]:
    out = list(tokens)
    for i, tok in enumerate(out):
        if tok.canned or tok.text.lower() not in ("a", "an"):
            continue
        if i + 1 >= len(out):
            continue
        nxt = out[i + 1]
        if not nxt.text or not nxt.text[:1].isalnum():
            continue
        article = pack.article_for(nxt.text)
        if tok.text[:1].isupper():
            article = article[0].upper() + article[1:]
        if article != tok.text:
            out[i] = replace(tok, text=article)
    return out


def _capitalize_and_terminate(tokens: list[AnnotatedSpan]) -> list[AnnotatedSpan]:
    starts = _sentence_starts(tokens)
    out: list[AnnotatedSpan] = []
    at_sentence_start = False
    for tok, is_start in zip(tokens, starts):
        # Collapse runs of bare terminals into a single one.
        if tok.text in sp.TERMINALS and out and _ends_terminal(out[-1].text):
            continue
        at_sentence_start = is_start or at_sentence_start
        if at_sentence_start and any(ch.isalpha() for ch in tok.text):
            # First alphabetic character of the sentence; canned text is
            # reproduced verbatim.
            if not tok.canned:
                text = tok.text
                for j, ch in enumerate(text):
                    if ch.isalpha():
                        tok = replace(tok, text=text[:j] + ch.upper() + text[j + 1 :])
                        break
            at_sentence_start = False
        # The sentence before a bullet change must close with a terminal.
        if out and is_start and not _ends_terminal(out[-1].text):
            out.append(AnnotatedSpan(text=".", bullet_index=out[-1].bullet_index))
        out.append(tok)
    if out and not _ends_terminal(out[-1].text):
        out.append(AnnotatedSpan(text=".", bullet_index=out[-1].bullet_index))
    return out


def _join(tokens: list[AnnotatedSpan]) -> list[AnnotatedSpan]:
    """Merge adjacent same-annotation tokens with correct spacing."""
    merged: list[AnnotatedSpan] = []
    prev_tok: Optional[AnnotatedSpan] = None
    for tok in tokens:
        if not tok.text:
            continue
        need_space = (
            prev_tok is not None
            and not tok.text[0].isspace()
            and not prev_tok.text[-1].isspace()
            and tok.text[0] not in sp.NO_SPACE_BEFORE
            and prev_tok.text[-1] not in sp.NO_SPACE_AFTER
        )
        if merged and merged[-1].merge_key() == tok.merge_key():
            joined = merged[-1].text + (" " if need_space else "") + tok.text
            merged[-1] = replace(merged[-1], text=joined)
        else:
            text = tok.text
            if need_space:
                if merged and merged[-1].kind == sp.PLAIN:
                    merged[-1] = replace(merged[-1], text=merged[-1].text + " ")
                else:
                    text = " " + text
            merged.append(replace(tok, text=text))
        prev_tok = tok
    return merged


def postprocess(spans: Sequence[AnnotatedSpan], style: StylePrefs, pack=None) -> list[AnnotatedSpan]:
    pack = pack or _BARE_PACK
    tokens = [s for s in spans if s.text]
    if not tokens:
        return []
    if style.contractions:
        tokens = _apply_contractions(tokens, pack)
    tokens = _fix_articles(tokens, pack)
    tokens = _capitalize_and_terminate(tokens)
    return _join(tokens)


def render_title(question: str, topic_plan, style: StylePrefs, pack, action: Optional[str] = None):
    return postprocess(pack.title_tokens(question, topic_plan, action=action), style, pack)
