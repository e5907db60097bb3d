"""Knowledge representation: frames, values, bundle formats.

Bundle machinery is loaded lazily: it depends on the rule and model types,
which themselves build on the value types defined here.
"""

from .model import Concept, Instance, KnowledgeBase, Placement
from .values import Quantity, Ref, Seq, SlotValue, Sym, Text

_BUNDLE_EXPORTS = {
    "Diagnostic",
    "KbBundle",
    "bundles_equal",
    "load_bundle",
    "load_bundle_checked",
    "serialize_bundle",
    "validate_bundle",
}

__all__ = [
    "Concept",
    "Instance",
    "KnowledgeBase",
    "Placement",
    "Quantity",
    "Ref",
    "Seq",
    "SlotValue",
    "Sym",
    "Text",
    *sorted(_BUNDLE_EXPORTS),
]


def __getattr__(name):
    if name in _BUNDLE_EXPORTS:
        from . import bundle

        return getattr(bundle, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
