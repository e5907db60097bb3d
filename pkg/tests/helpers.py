"""Shared test helpers: shipped KB paths, toy taxonomies, brute-force oracles."""

from importlib import resources

from helpgen.kb.model import Concept, Instance, KnowledgeBase
from helpgen.kb.values import Sym


def shipped_kb_path(name: str) -> str:
    return str(resources.files("helpgen") / "kbs" / name)


def build_kb(concept_specs, instance_specs=()):
    """Concepts from (id, parents, defining, slots) tuples; slot values are
    wrapped as symbols."""
    concepts = []
    for spec in concept_specs:
        cid, parents = spec[0], spec[1]
        defining = spec[2] if len(spec) > 2 else ()
        slots = spec[3] if len(spec) > 3 else {}
        concepts.append(
            Concept(
                id=cid,
                isa_parents=tuple(parents),
                defining_props=frozenset((a, Sym(v)) for a, v in defining),
                default_slots={a: Sym(v) for a, v in slots.items()},
            )
        )
    instances = []
    for spec in instance_specs:
        iid, parents = spec[0], spec[1]
        slots = spec[2] if len(spec) > 2 else {}
        instances.append(
            Instance(
                id=iid,
                isa_parents=tuple(parents),
                local_slots={a: Sym(v) for a, v in slots.items()},
            )
        )
    return KnowledgeBase(concepts, instances)


# -- independent oracles -------------------------------------------------------


def oracle_reachable(kb: KnowledgeBase, a: str, b: str) -> bool:
    """Path enumeration from b upward; no closure caching."""
    if a == b:
        return True
    frontier = [b]
    seen = set()
    while frontier:
        cur = frontier.pop()
        if cur in seen:
            continue
        seen.add(cur)
        for parent in kb.node(cur).isa_parents:
            if parent == a:
                return True
            frontier.append(parent)
    return False


def oracle_subsumes(kb: KnowledgeBase, a: str, b: str) -> bool:
    if oracle_reachable(kb, a, b):
        return True
    if kb.is_instance(a):
        return False
    props = kb.concepts[a].defining_props
    if not props:
        return False
    effective = set()
    frontier = [b]
    seen = set()
    while frontier:
        cur = frontier.pop()
        if cur in seen:
            continue
        seen.add(cur)
        node = kb.node(cur)
        if not kb.is_instance(cur):
            effective |= set(node.defining_props)
        frontier.extend(node.isa_parents)
    return props <= effective


def oracle_inherit(kb: KnowledgeBase, node_id: str, attribute: str):
    """Breadth-first nearest definition, independently of the engine."""
    from helpgen.kb.model import own_slots

    node = kb.node(node_id)
    local = own_slots(node)
    if attribute in local:
        return local[attribute]
    level = list(dict.fromkeys(node.isa_parents))
    seen = {node_id}
    while level:
        level = [c for c in level if c not in seen]
        seen.update(level)
        values = [
            kb.concepts[c].default_slots[attribute]
            for c in level
            if attribute in kb.concepts[c].default_slots
        ]
        if values:
            distinct = {v for v in values}
            if len(distinct) > 1:
                return "AMBIGUOUS"
            return values[0]
        level = [p for c in level for p in kb.concepts[c].isa_parents]
    return None
