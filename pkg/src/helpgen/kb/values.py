"""Slot values: the small algebra of things a frame attribute can hold.

A value is a symbol, a number (optionally unit-tagged), a text string, a
reference to another node, or an ordered list of values.  All forms are
immutable and hashable so they can appear in defining-property sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Sym:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Text:
    value: str

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Quantity:
    value: float
    unit: str | None = None

    def __str__(self):
        num = f"{self.value:g}"
        return f"{num} {self.unit}" if self.unit else num


@dataclass(frozen=True)
class Ref:
    target: str

    def __str__(self):
        return f"@{self.target}"


@dataclass(frozen=True)
class Seq:
    items: tuple["SlotValue", ...]

    def __str__(self):
        return "[" + ", ".join(str(i) for i in self.items) + "]"


SlotValue = Union[Sym, Text, Quantity, Ref, Seq]


def refs_in(value: SlotValue):
    """Yield every node id referenced inside a value (recursing into lists)."""
    if isinstance(value, Ref):
        yield value.target
    elif isinstance(value, Seq):
        for item in value.items:
            yield from refs_in(item)
