"""Surface realization: language packs, morphology, spans, post-processing."""

from ..lexicon import LexicalEntry, Lexicon
from .core import build_pack, inflect, postprocess, realize, render_title
from .english import EnglishPack
from .spans import AnnotatedSpan, link_targets, span_text

__all__ = [
    "AnnotatedSpan",
    "EnglishPack",
    "LexicalEntry",
    "Lexicon",
    "build_pack",
    "inflect",
    "link_targets",
    "postprocess",
    "realize",
    "render_title",
    "span_text",
]
