"""Frame knowledge representation: taxonomy, part hierarchy, inheritance,
and subsumption-based classification.

Concepts form an IS-A DAG; instances hang off concepts and cannot be
parents.  Default slot values inherit along IS-A edges, nearest definition
winning; conflicting defaults at equal distance are an error.  Subsumption
combines declared reachability with defining-property subset checking, and
classification finds the most specific position for a new concept.

The knowledge base is immutable once constructed; reloading replaces it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from ..actions import ActionRep
from ..errors import AmbiguousInheritanceError, StructuralError, UnknownIdError
from .values import SlotValue


@dataclass(frozen=True)
class Concept:
    id: str
    isa_parents: tuple[str, ...] = ()
    defining_props: frozenset = frozenset()  # of (attribute, SlotValue) pairs
    default_slots: Mapping[str, SlotValue] = field(default_factory=dict)
    part_of_parent: Optional[str] = None
    parts: tuple[str, ...] = ()
    action_reps: Mapping[str, ActionRep] = field(default_factory=dict)
    lexical_anchor: Optional[str] = None
    source: Optional[tuple[str, int]] = field(default=None, compare=False)


@dataclass(frozen=True)
class Instance:
    id: str
    isa_parents: tuple[str, ...] = ()
    local_slots: Mapping[str, SlotValue] = field(default_factory=dict)
    part_of_parent: Optional[str] = None
    parts: tuple[str, ...] = ()
    source: Optional[tuple[str, int]] = field(default=None, compare=False)


Node = Union[Concept, Instance]


@dataclass(frozen=True)
class Placement:
    """Result of classifying a concept: where it belongs in the taxonomy."""

    most_specific_subsumers: tuple[str, ...]
    most_general_subsumees: tuple[str, ...]


def own_slots(node: Node) -> Mapping[str, SlotValue]:
    return node.local_slots if isinstance(node, Instance) else node.default_slots


class KnowledgeBase:
    """Read-only lookup and reasoning over a set of concepts and instances."""

    def __init__(self, concepts: Iterable[Concept], instances: Iterable[Instance]):
        self.concepts: dict[str, Concept] = {}
        self.instances: dict[str, Instance] = {}
        for c in concepts:
            if c.id in self.concepts or c.id in self.instances:
                raise StructuralError(f"duplicate id: {c.id}", id=c.id)
            self.concepts[c.id] = c
        for i in instances:
            if i.id in self.concepts or i.id in self.instances:
                raise StructuralError(f"duplicate id: {i.id}", id=i.id)
            self.instances[i.id] = i
        self._closure_cache: dict[str, frozenset[str]] = {}
        self._depth_cache: dict[str, int] = {}

    # -- lookup ------------------------------------------------------------

    def node(self, id: str) -> Node:
        found = self.concepts.get(id) or self.instances.get(id)
        if found is None:
            raise UnknownIdError(id)
        return found

    def concept(self, id: str) -> Concept:
        c = self.concepts.get(id)
        if c is None:
            raise UnknownIdError(id, what="concept")
        return c

    def has(self, id: str) -> bool:
        return id in self.concepts or id in self.instances

    def is_instance(self, id: str) -> bool:
        return id in self.instances

    def all_ids(self) -> list[str]:
        return list(self.concepts) + list(self.instances)

    def roots(self) -> list[str]:
        return [c.id for c in self.concepts.values() if not c.isa_parents]

    # -- taxonomy ----------------------------------------------------------

    def isa_closure(self, id: str) -> frozenset[str]:
        """All concepts reachable from ``id`` through IS-A edges, plus the
        node itself."""
        cached = self._closure_cache.get(id)
        if cached is not None:
            return cached
        node = self.node(id)
        out = {id}
        frontier = list(node.isa_parents)
        while frontier:
            nxt = frontier.pop()
            if nxt in out:
                continue
            out.add(nxt)
            frontier.extend(self.concept(nxt).isa_parents)
        result = frozenset(out)
        self._closure_cache[id] = result
        return result

    def ancestor_levels(self, id: str) -> list[list[str]]:
        """Strict ancestors grouped by shortest IS-A distance from ``id``."""
        levels = []
        seen = {id}
        frontier = [p for p in self.node(id).isa_parents if p not in seen]
        while frontier:
            level = []
            for p in frontier:
                if p not in seen:
                    seen.add(p)
                    level.append(p)
            if level:
                levels.append(level)
            frontier = [gp for p in level for gp in self.concept(p).isa_parents]
        return levels

    def depth(self, concept_id: str) -> int:
        """Longest IS-A path from the concept up to its taxonomy root."""
        cached = self._depth_cache.get(concept_id)
        if cached is not None:
            return cached
        c = self.concept(concept_id)
        d = 0 if not c.isa_parents else 1 + max(self.depth(p) for p in c.isa_parents)
        self._depth_cache[concept_id] = d
        return d

    def effective_defining_props(self, id: str) -> frozenset:
        """Union of defining properties over the node's IS-A closure."""
        props = set()
        for cid in self.isa_closure(id):
            c = self.concepts.get(cid)
            if c is not None:
                props.update(c.defining_props)
        return frozenset(props)

    # -- subsumption and classification -------------------------------------

    def subsumes(self, a: str, b: str) -> bool:
        """True when concept ``a`` covers node ``b``.

        Either ``a`` is a declared ancestor of ``b`` (or ``b`` itself), or
        ``a`` carries defining properties and all of them hold on ``b``.
        """
        if not self.has(a):
            raise UnknownIdError(a)
        if not self.has(b):
            raise UnknownIdError(b)
        if a == b:
            return True
        if self.is_instance(a):
            return False  # instances never subsume anything else
        if a in self.isa_closure(b):
            return True
        props = self.concepts[a].defining_props
        return bool(props) and props <= self.effective_defining_props(b)

    def classify(self, new: Concept) -> Placement:
        """Find the most specific position for ``new`` in the taxonomy.

        Pure: the KB is not modified.  Re-classifying an already loaded
        concept reproduces its current position.
        """
        for p in new.isa_parents:
            self.concept(p)  # raises UnknownIdError for missing parents
        virtual_closure = set()
        for p in new.isa_parents:
            virtual_closure |= self.isa_closure(p)
        if new.id in virtual_closure:
            raise StructuralError(
                f"classifying {new.id} would create an IS-A cycle", id=new.id
            )
        effective = set(new.defining_props)
        for cid in virtual_closure:
            effective.update(self.concepts[cid].defining_props)

        subsumers = []
        subsumees = []
        for cid, c in self.concepts.items():
            if cid == new.id:
                continue  # re-classification: position relative to the rest
            if cid in virtual_closure or (
                c.defining_props and c.defining_props <= effective
            ):
                subsumers.append(cid)
            if new.defining_props and new.defining_props <= self.effective_defining_props(cid):
                subsumees.append(cid)

        def strictly_below(x, y):  # x strictly under y
            return self.subsumes(y, x) and not self.subsumes(x, y)

        most_specific = [
            s
            for s in subsumers
            if not any(o != s and strictly_below(o, s) for o in subsumers)
        ]
        subsumees = [s for s in subsumees if s not in most_specific]
        most_general = [
            s
            for s in subsumees
            if not any(o != s and strictly_below(s, o) for o in subsumees)
        ]
        return Placement(tuple(most_specific), tuple(most_general))

    # -- inheritance ---------------------------------------------------------

    def inherit(self, node_id: str, attribute: str) -> SlotValue | None:
        """Local value if defined, else the nearest IS-A ancestor's default.

        Raises AmbiguousInheritanceError when incomparable ancestors at the
        same minimal distance define different values.
        """
        node = self.node(node_id)
        local = own_slots(node)
        if attribute in local:
            return local[attribute]
        for level in self.ancestor_levels(node_id):
            found = [
                (cid, self.concepts[cid].default_slots[attribute])
                for cid in level
                if attribute in self.concepts[cid].default_slots
            ]
            if found:
                values = {v for _, v in found}
                if len(values) > 1:
                    raise AmbiguousInheritanceError(
                        node_id, attribute, [cid for cid, _ in found]
                    )
                return found[0][1]
        return None

    def inherited_attributes(self, node_id: str) -> list[str]:
        """All attribute names with a value on the node, local or inherited."""
        names = list(own_slots(self.node(node_id)))
        for level in self.ancestor_levels(node_id):
            for cid in level:
                for a in self.concepts[cid].default_slots:
                    if a not in names:
                        names.append(a)
        return names

    def action_for(self, node_id: str, action: str) -> ActionRep | None:
        """The action representation for ``action`` on the node, inherited
        along IS-A like any other default."""
        node = self.node(node_id)
        if isinstance(node, Concept) and action in node.action_reps:
            return node.action_reps[action]
        for level in self.ancestor_levels(node_id):
            found = [
                cid for cid in level if action in self.concepts[cid].action_reps
            ]
            if found:
                if len(found) > 1:
                    reps = {self.concepts[cid].action_reps[action] for cid in found}
                    if len(reps) > 1:
                        raise AmbiguousInheritanceError(node_id, f"action {action}", found)
                return self.concepts[found[0]].action_reps[action]
        return None

    def actions_of(self, node_id: str) -> list[str]:
        """Action symbols available on the node, local first then inherited."""
        out = []
        node = self.node(node_id)
        if isinstance(node, Concept):
            out.extend(node.action_reps)
        for level in self.ancestor_levels(node_id):
            for cid in level:
                for a in self.concepts[cid].action_reps:
                    if a not in out:
                        out.append(a)
        return out

    # -- part hierarchy ------------------------------------------------------

    def parts_of(self, node_id: str) -> tuple[str, ...]:
        return tuple(self.node(node_id).parts)

    def part_parent(self, node_id: str) -> str | None:
        return self.node(node_id).part_of_parent

    def part_tree_roots(self) -> list[str]:
        return [
            i.id
            for i in self.instances.values()
            if i.part_of_parent is None
        ]
