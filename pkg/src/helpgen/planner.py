"""Stage 2: sentence planning.

Turns a content plan into semantic specs: decides sentence boundaries
(aggregation), builds referring expressions against the discourse focus,
chooses words the user knows, licenses pronouns, and expands hybrid action
forms into imperative specs or mixed canned/generated sentences.

Everything here is a pure function of its inputs; given the same plan,
query, discourse state, and bundle, the output is identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Optional, Sequence, Union

from .actions import ActionRep, EntityRef, SELF_REF, TextFiller
from .context import DiscourseState, ExpertiseModel, QuestionPoint
from .errors import LexicalGapError, StructuralError
from .kb.values import Quantity, Ref, Seq, SlotValue, Sym, Text

if TYPE_CHECKING:  # pragma: no cover
    from .kb.bundle import KbBundle
    from .content import ContentPlan

# Attribute categories realized as noun-phrase premodifiers; everything
# else becomes an attributive clause.
PREMOD_CATEGORIES = frozenset({"descriptive", "brand", "positional"})

MAX_FACTS_PER_SENTENCE = 3

DEFAULT_ROLE_PREPS = {"source": "from", "destination": "into"}


@dataclass(frozen=True)
class ReferringPlan:
    """How to refer to one entity: head noun plus just enough attributes
    to tell it apart from the focus distractors."""

    referent: str
    head_lexeme: str = ""
    attributes: tuple = ()  # (attribute, SlotValue) pairs, preference order
    pronoun: bool = False
    determiner: str = "definite"  # definite | indefinite | none
    possessive: bool = False
    distinguishing: bool = True
    distractors: tuple = ()  # recorded for auditability


@dataclass(frozen=True)
class ImperativeRole:
    role: str  # actee | source | destination
    filler: Union[ReferringPlan, str]  # str fillers are canned text
    prep: Optional[str] = None


@dataclass(frozen=True)
class SemanticSpec:
    node_id: str
    process: str  # identity | attributive | locative | parts | imperative
    domain_arg: Optional[ReferringPlan] = None
    range_arg: object = None
    relations: tuple = ()  # (attribute, SlotValue) modifiers on the range
    roles: tuple = ()  # ImperativeRole, imperative only
    mood: str = "declarative"
    number: str = "singular"
    verb: Optional[str] = None  # action symbol (imperative) or link verb
    verb_link: Optional[tuple] = None  # (action, component) hyperlink
    preposition: Optional[str] = None  # locative
    manner: Optional[str] = None  # canned trailing adverbial
    bullet: Optional[int] = None


@dataclass(frozen=True)
class HybridSentence:
    """A sentence that is partly or wholly canned: string segments are
    reproduced verbatim, referring plans are generated."""

    segments: tuple  # str | ReferringPlan
    bullet: Optional[int] = None


Sentence = Union[SemanticSpec, HybridSentence]


# -- pronouns -------------------------------------------------------------------


def pronoun_allowed(
    referent: str, state: DiscourseState, topic: Optional[str] = None
) -> bool:
    """Salience test for pronominalizing a reference.

    The component named in the response title is always pronominalizable
    (the title mention is the nearest antecedent).  The previous center is
    pronominalizable unless some other focus entity outranks it.
    """
    if topic is not None and referent == topic:
        return True
    if state.last_center is None or referent != state.last_center:
        return False
    for member in state.focus:
        if member == referent:
            return True
        return False  # something more salient sits above the referent
    return True  # empty focus: nothing competes


# -- lexical choice ---------------------------------------------------------------


def choose_head(
    referent: str,
    expertise: ExpertiseModel,
    bundle: "KbBundle",
    allow_abbreviations: bool = True,
) -> tuple[str, str]:
    """Pick the head noun: the most specific lexeme the user knows.

    Walks the referent's type chain outward; within one concept's synonyms
    an abbreviation is preferred when allowed, then a basic-level entry.
    Returns (lexeme id, the concept it denotes).
    """
    kb = bundle.kb
    node = kb.node(referent)
    chain = []
    if not kb.is_instance(referent):
        chain.append([referent])
    chain.extend(kb.ancestor_levels(referent))
    for level in chain:
        for concept_id in level:
            entries = [
                e
                for e in bundle.lexicon.denoting(concept_id, expertise.language)
                if e.part_of_speech == "noun" and expertise.knows_lexeme(e.id)
            ]
            if not allow_abbreviations:
                entries = [e for e in entries if e.abbreviation_of is None]
            if not entries:
                continue
            if allow_abbreviations:
                abbrevs = [e for e in entries if e.abbreviation_of is not None]
                if abbrevs:
                    return abbrevs[0].id, concept_id
            basics = [e for e in entries if e.basic_level]
            pick = basics[0] if basics else entries[0]
            return pick.id, concept_id
    raise LexicalGapError(referent, expertise.language)


# -- referring expressions ---------------------------------------------------------


def gen_reference(
    referent: str,
    focus: Sequence[str],
    expertise: ExpertiseModel,
    bundle: "KbBundle",
    predicative: bool = False,
    allow_abbreviations: bool = True,
    possessive: bool = False,
) -> ReferringPlan:
    """Build a noun phrase that singles the referent out of the focus.

    Attributes from the bundle's preference order are added one at a time,
    each kept only if it rules out at least one remaining distractor.  A
    plan that cannot eliminate every distractor is flagged rather than
    rejected.
    """
    kb = bundle.kb
    head_lexeme, head_concept = choose_head(referent, expertise, bundle, allow_abbreviations)
    distractors = [
        d
        for d in focus
        if d != referent and kb.has(d) and kb.subsumes(head_concept, d)
    ]
    remaining = list(distractors)
    attributes = []
    for attr in bundle.ref_attribute_order:
        if not remaining:
            break
        value = kb.inherit(referent, attr)
        if value is None:
            continue
        removed = [d for d in remaining if kb.inherit(d, attr) != value]
        if removed:
            attributes.append((attr, value))
            remaining = [d for d in remaining if d not in removed]
    return ReferringPlan(
        referent=referent,
        head_lexeme=head_lexeme,
        attributes=tuple(attributes),
        pronoun=False,
        determiner="indefinite" if predicative else "definite",
        possessive=possessive,
        distinguishing=not remaining,
        distractors=tuple(distractors),
    )


# -- aggregation -------------------------------------------------------------------


def aggregate(facts: Sequence, category_of) -> list[list]:
    """Group adjacent same-category facts, at most three per sentence."""
    groups: list[list] = []
    current: list = []
    current_cat = None
    for fact in facts:
        cat = category_of(fact[0])
        if current and (cat != current_cat or len(current) >= MAX_FACTS_PER_SENTENCE):
            groups.append(current)
            current = []
        current.append(fact)
        current_cat = cat
    if current:
        groups.append(current)
    return groups


# -- hybrid expansion ---------------------------------------------------------------


def expand_hybrid(
    rep: ActionRep,
    point: QuestionPoint,
    state: DiscourseState,
    bundle: "KbBundle",
    ids: Optional["_IdGen"] = None,
) -> list[Sentence]:
    """Expand one action representation into sentence material.

    Canned text passes through opaque; embedded references and case-frame
    roles become referring plans; textual case fillers stay verbatim in
    their role positions.
    """
    ids = ids or _IdGen()
    model = bundle.expertise(point.expertise)

    def resolve(target: str) -> str:
        return point.component if target == SELF_REF else target

    def refplan(target: str) -> ReferringPlan:
        return gen_reference(
            resolve(target),
            state.focus,
            model,
            bundle,
            allow_abbreviations=model.style.allow_abbreviations,
        )

    if rep.kind == "seq":
        out: list[Sentence] = []
        for step in rep.substeps:
            out.extend(expand_hybrid(step, point, state, bundle, ids))
        return out
    if rep.kind == "canned":
        return [HybridSentence(segments=(rep.text,))]
    if rep.kind == "ekr":
        segments = tuple(
            seg if isinstance(seg, str) else refplan(seg.target) for seg in rep.segments
        )
        return [HybridSentence(segments=segments)]
    if rep.kind in ("tcf", "frame"):
        roles = []
        manner = None
        actee_target = None
        for role, filler in rep.roles:
            if role == "actor":
                continue  # imperatives address the user directly
            if role == "manner":
                if isinstance(filler, TextFiller):
                    manner = filler.text
                else:
                    manner = None if filler is None else filler
                continue
            if isinstance(filler, EntityRef):
                if role == "actee":
                    actee_target = resolve(filler.target)
                roles.append(
                    ImperativeRole(
                        role=role,
                        filler=refplan(filler.target),
                        prep=filler.prep or DEFAULT_ROLE_PREPS.get(role),
                    )
                )
            else:
                roles.append(
                    ImperativeRole(role=role, filler=filler.text, prep=None)
                )
        link = None
        if actee_target is not None and bundle.kb.action_for(actee_target, rep.verb):
            link = (rep.verb, actee_target)
        return [
            SemanticSpec(
                node_id=ids.next(),
                process="imperative",
                roles=tuple(roles),
                mood="imperative",
                verb=rep.verb,
                verb_link=link,
                manner=manner,
            )
        ]
    raise StructuralError(f"unknown action representation kind {rep.kind!r}")


# -- the planner -------------------------------------------------------------------


class _IdGen:
    def __init__(self, prefix: str = "s"):
        self.prefix = prefix
        self.n = 0

    def next(self) -> str:
        self.n += 1
        return f"{self.prefix}{self.n}"


def plan_sentences(
    plan: "ContentPlan",
    point: QuestionPoint,
    state: DiscourseState,
    bundle: "KbBundle",
) -> list[Sentence]:
    """Produce the ordered sentence specs realizing a content plan."""
    model = bundle.expertise(point.expertise)
    allow_abbrev = model.style.allow_abbreviations and not plan.unabbreviate
    ids = _IdGen()
    lexicon = bundle.lexicon

    def subject(possessive: bool = False) -> ReferringPlan:
        if pronoun_allowed(plan.topic, state, topic=point.component):
            return ReferringPlan(
                referent=plan.topic, pronoun=True, possessive=possessive
            )
        return gen_reference(
            plan.topic,
            state.focus,
            model,
            bundle,
            allow_abbreviations=allow_abbrev,
            possessive=possessive,
        )

    def category(attr: str) -> str:
        return lexicon.category_of(attr, model.language)

    def attributive_specs(facts) -> list[SemanticSpec]:
        specs = []
        for group in aggregate(facts, category):
            specs.append(
                SemanticSpec(
                    node_id=ids.next(),
                    process="attributive",
                    domain_arg=subject(possessive=True),
                    range_arg=tuple(group),
                )
            )
        return specs

    sentences: list[Sentence] = []

    if plan.schema == "identify":
        premods = [f for f in plan.facts if category(f[0]) in PREMOD_CATEGORIES]
        leftovers = [f for f in plan.facts if category(f[0]) not in PREMOD_CATEGORIES]
        head_lexeme, _ = choose_head(plan.topic, model, bundle, allow_abbrev)
        range_plan = ReferringPlan(
            referent=plan.topic,
            head_lexeme=head_lexeme,
            determiner="indefinite",
        )
        sentences.append(
            SemanticSpec(
                node_id=ids.next(),
                process="identity",
                domain_arg=subject(),
                range_arg=range_plan,
                relations=tuple(premods),
            )
        )
        sentences.extend(attributive_specs(leftovers))

    elif plan.schema in ("specs", "purpose"):
        sentences.extend(attributive_specs(list(plan.facts)))

    elif plan.schema == "connections":
        targets = []
        for _, value in plan.facts:
            values = value.items if isinstance(value, Seq) else (value,)
            targets.extend(v.target for v in values if isinstance(v, Ref))
        plans = tuple(
            gen_reference(
                t,
                list(state.focus) + [o for o in targets if o != t],
                model,
                bundle,
                allow_abbreviations=allow_abbrev,
            )
            for t in targets
        )
        sentences.append(
            SemanticSpec(
                node_id=ids.next(),
                process="locative",
                domain_arg=subject(),
                range_arg=plans,
                verb="connect",
                preposition="to",
            )
        )

    elif plan.schema == "partslist":
        parts = list(plan.parts or ())
        items = tuple(
            gen_reference(
                p,
                list(state.focus) + [o for o in parts if o != p],
                model,
                bundle,
                allow_abbreviations=allow_abbrev,
            )
            for p in parts
        )
        sentences.append(
            SemanticSpec(
                node_id=ids.next(),
                process="parts",
                domain_arg=subject(possessive=True),
                range_arg=items,
                number="plural" if len(items) != 1 else "singular",
            )
        )

    elif plan.schema == "location":
        target_plan = gen_reference(
            plan.location_target,
            state.focus,
            model,
            bundle,
            allow_abbreviations=allow_abbrev,
        )
        sentences.append(
            SemanticSpec(
                node_id=ids.next(),
                process="locative",
                domain_arg=subject(),
                range_arg=target_plan,
                preposition=plan.location_prep,
            )
        )

    elif plan.schema == "procedure":
        for rep in plan.steps or ():
            sentences.extend(expand_hybrid(rep, point, state, bundle, ids))

    else:
        raise StructuralError(f"unknown schema {plan.schema!r}", schema=plan.schema)

    if plan.bullet:
        sentences = [
            replace(s, bullet=i) for i, s in enumerate(sentences)
        ]
    return sentences


# -- mention extraction --------------------------------------------------------------


def _plans_in(sentence: Sentence):
    if isinstance(sentence, HybridSentence):
        for seg in sentence.segments:
            if isinstance(seg, ReferringPlan):
                yield seg
        return
    for plan in (sentence.domain_arg,):
        if plan is not None:
            yield plan
    rng = sentence.range_arg
    if isinstance(rng, ReferringPlan):
        yield rng
    elif isinstance(rng, tuple):
        for item in rng:
            if isinstance(item, ReferringPlan):
                yield item
    for role in sentence.roles:
        if isinstance(role.filler, ReferringPlan):
            yield role.filler


def referring_plans(sentences: Sequence[Sentence]) -> list[ReferringPlan]:
    return [p for s in sentences for p in _plans_in(s)]


def mentioned_entities(sentences: Sequence[Sentence]) -> list[str]:
    """Entities referenced across the sentences, in first-mention order."""
    out: list[str] = []
    for plan in referring_plans(sentences):
        if plan.referent not in out:
            out.append(plan.referent)
    return out
