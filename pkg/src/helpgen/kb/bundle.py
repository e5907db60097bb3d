"""Bundle loading, validation, and serialization.

A bundle is a directory:

    concepts/*.kb     concept blocks (the domain and task taxonomies)
    instances/*.kb    instance blocks (the actual machine's components)
    lexicon/*.lex     lexeme blocks
    rules/*.rule      content rules and bundle settings
    models/*.model    user-expertise models
    standards/*.profile   controlled-language profiles

Each block kind has a JSON schema (kb/schemas/) checked before
interpretation; semantic validation then checks every cross-reference and
hierarchy invariant.  Diagnostics are collected, not fail-fast, and every
one names its file, line, and offending id.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Optional

import jsonschema

from ..actions import ROLE_NAMES, SELF_REF, ActionRep, EntityRef, TextFiller
from ..content import ContentRule, SCHEMAS
from ..context import QUESTIONS, ExpertiseModel, StylePrefs
from ..errors import (
    AmbiguousInheritanceError,
    BundleFormatError,
    BundleValidationError,
    StructuralError,
    UnknownIdError,
)
from ..lexicon import LexicalEntry, Lexicon
from ..realizer.core import PACK_CLASSES, build_pack
from ..standards import ALL_IN_PACK, BANNABLE_FEATURES, StandardProfile
from . import syntax
from .model import Concept, Instance, KnowledgeBase
from .values import Ref, Seq, SlotValue, Sym, refs_in

TASK_ROOT = "task"
DEFAULT_REF_ATTRIBUTES = ("colour", "size", "location")

_LAYOUT = (
    ("concepts", ".kb"),
    ("instances", ".kb"),
    ("lexicon", ".lex"),
    ("rules", ".rule"),
    ("models", ".model"),
    ("standards", ".profile"),
)

_SCHEMA_CACHE: dict[str, dict] = {}


def _schema_for(kind: str) -> Optional[dict]:
    if kind.startswith("action "):
        kind = "concept"
    if kind not in _SCHEMA_CACHE:
        ref = resources.files("helpgen.kb") / "schemas" / f"{kind}.json"
        if not ref.is_file():
            return None
        _SCHEMA_CACHE[kind] = json.loads(ref.read_text("utf-8"))
    return _SCHEMA_CACHE[kind]


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # error | warning
    code: str
    message: str
    file: Optional[str] = None
    line: Optional[int] = None
    subject: Optional[str] = None

    def __str__(self):
        where = f"{self.file}:{self.line}: " if self.file else ""
        who = f" [{self.subject}]" if self.subject else ""
        return f"{where}{self.severity}: {self.code}: {self.message}{who}"


class KbBundle:
    """Everything loaded from one bundle directory, immutable after load."""

    def __init__(
        self,
        kb: KnowledgeBase,
        lexicon: Lexicon,
        content_rules: tuple[ContentRule, ...],
        expertise_models: dict[str, ExpertiseModel],
        profiles: dict[str, StandardProfile],
        ref_attribute_order: tuple[str, ...] = DEFAULT_REF_ATTRIBUTES,
        warnings: tuple[Diagnostic, ...] = (),
        ref_order_declared: bool = False,
    ):
        self.kb = kb
        self.lexicon = lexicon
        self.content_rules = content_rules
        self.expertise_models = expertise_models
        self.profiles = profiles
        self.ref_attribute_order = tuple(ref_attribute_order)
        self.ref_order_declared = ref_order_declared
        self.warnings = tuple(warnings)
        roots = [r for r in kb.roots() if r != TASK_ROOT]
        self.domain_root = roots[0] if roots else None
        self.task_root = TASK_ROOT if TASK_ROOT in kb.concepts else None
        self._packs: dict[str, object] = {}

    # -- lookups ------------------------------------------------------------

    def expertise(self, model_id: str) -> ExpertiseModel:
        model = self.expertise_models.get(model_id)
        if model is None:
            raise UnknownIdError(model_id, what="expertise model")
        return model

    def default_model_id(self) -> str:
        return next(iter(self.expertise_models))

    def profile(self, profile_id: str) -> StandardProfile:
        prof = self.profiles.get(profile_id)
        if prof is None:
            raise UnknownIdError(profile_id, what="standards profile")
        return prof

    def language_packs(self) -> list[str]:
        return [lang for lang in self.lexicon.languages() if lang in PACK_CLASSES]

    def pack(self, language: str):
        if language not in self._packs:
            anchor = None
            if self.domain_root:
                anchor = self.kb.concepts[self.domain_root].lexical_anchor
            self._packs[language] = build_pack(language, self.lexicon, parts_lexeme=anchor)
        return self._packs[language]

    def task_ids(self) -> list[str]:
        if not self.task_root:
            return []
        return [
            c for c in self.kb.concepts if self.task_root in self.kb.isa_closure(c)
        ]

    def component_ids(self) -> list[str]:
        return list(self.kb.instances)

    def display_name(self, node_id: str) -> str:
        """Best-effort human name: the most specific lexeme of any model's
        language, unabbreviated; falls back to the id."""
        node = self.kb.node(node_id)
        chain = [[node_id]] if node_id in self.kb.concepts else []
        chain += self.kb.ancestor_levels(node_id)
        for level in chain:
            for cid in level:
                for lang in self.lexicon.languages():
                    for e in self.lexicon.denoting(cid, lang):
                        if e.part_of_speech == "noun" and e.abbreviation_of is None:
                            return e.base_form
        return node_id


# -- interpretation -------------------------------------------------------------


def _bool(raw: Optional[str], default: bool = False) -> bool:
    if raw is None:
        return default
    return raw == "true"


def _interpret_concept(block: syntax.Block) -> Concept:
    f = block.fields
    slots = {}
    for attr, raw in (f.get("slots") or {}).items():
        slots[attr] = syntax.parse_value(raw)
    actions = {}
    for key, body in f.items():
        if key.startswith("action "):
            symbol = key.split(None, 1)[1]
            actions[symbol] = syntax.parse_action_body(body, block.file, block.line)
    return Concept(
        id=block.id,
        isa_parents=tuple(syntax.parse_id_list(f.get("isa", ""))),
        defining_props=syntax.parse_defining(f["defining"]) if f.get("defining") else frozenset(),
        default_slots=slots,
        parts=tuple(syntax.parse_id_list(f.get("parts", ""))),
        action_reps=actions,
        lexical_anchor=f.get("lex"),
        source=(block.file, block.line),
    )


def _interpret_instance(block: syntax.Block) -> Instance:
    f = block.fields
    slots = {}
    for attr, raw in (f.get("slots") or {}).items():
        slots[attr] = syntax.parse_value(raw)
    return Instance(
        id=block.id,
        isa_parents=tuple(syntax.parse_id_list(f.get("isa", ""))),
        local_slots=slots,
        parts=tuple(syntax.parse_id_list(f.get("parts", ""))),
        source=(block.file, block.line),
    )


def _interpret_lexeme(block: syntax.Block) -> LexicalEntry:
    f = block.fields
    irregular = {}
    if f.get("plural"):
        irregular["plural"] = syntax.parse_value(f["plural"]).value if f["plural"].startswith('"') else f["plural"]
    if f.get("third-person"):
        irregular["3sg"] = f["third-person"]
    base = f["base"]
    if base.startswith('"') and base.endswith('"'):
        base = base[1:-1]
    return LexicalEntry(
        id=block.id,
        language=f.get("language", "en"),
        part_of_speech=f["pos"],
        base_form=base,
        denotes=f["denotes"],
        irregular_forms=irregular,
        basic_level=_bool(f.get("basic")),
        abbreviation_of=f.get("abbreviation-of"),
        attribute_category=f.get("category"),
        source=(block.file, block.line),
    )


def _interpret_rule(block: syntax.Block) -> ContentRule:
    f = block.fields
    return ContentRule(
        id=block.id,
        question=f["question"],
        component_class=f["component"],
        task_class=f["task"],
        schema=f["schema"],
        bullet=_bool(f.get("bullet")),
        unabbreviate=_bool(f.get("unabbreviate")),
        conveyed_attributes=tuple(syntax.parse_id_list(f.get("convey", ""))),
        candidate_followups=tuple(syntax.parse_id_list(f.get("followups", ""))),
        required_attributes=tuple(syntax.parse_id_list(f.get("require", ""))),
        source=(block.file, block.line),
    )


def _interpret_model(block: syntax.Block, lexicon: Lexicon, all_actions) -> ExpertiseModel:
    f = block.fields
    language = f.get("language", "en")
    raw_lexemes = f.get("lexemes", "all")
    if raw_lexemes == "all":
        known_lexemes = lexicon.ids_for_language(language)
    else:
        known_lexemes = frozenset(syntax.parse_id_list(raw_lexemes))
    raw_actions = f.get("actions", "all")
    if raw_actions == "all":
        known_actions = frozenset(all_actions)
    else:
        known_actions = frozenset(syntax.parse_id_list(raw_actions))
    return ExpertiseModel(
        id=block.id,
        known_lexemes=known_lexemes,
        known_actions=known_actions,
        style=StylePrefs(
            contractions=_bool(f.get("contractions")),
            allow_abbreviations=_bool(f.get("abbreviations"), default=True),
        ),
        language=language,
        source=(block.file, block.line),
    )


def _interpret_profile(block: syntax.Block) -> StandardProfile:
    f = block.fields
    approved_raw = f.get("approved", ALL_IN_PACK)
    approved = ALL_IN_PACK if approved_raw == ALL_IN_PACK else frozenset(syntax.parse_id_list(approved_raw))
    return StandardProfile(
        id=block.id,
        max_sentence_words=int(f.get("max-sentence-words", "20")),
        approved_lexemes=approved,
        banned_lexemes=frozenset(syntax.parse_id_list(f.get("banned-lexemes", ""))),
        banned_features=frozenset(syntax.parse_id_list(f.get("banned-features", ""))) or frozenset(BANNABLE_FEATURES),
        source=(block.file, block.line),
    )


# -- loading -----------------------------------------------------------------------


def _read_blocks(root: Path, diagnostics: list[Diagnostic]) -> list[syntax.Block]:
    blocks: list[syntax.Block] = []
    for subdir, ext in _LAYOUT:
        directory = root / subdir
        if not directory.is_dir():
            continue
        for path in sorted(directory.glob(f"*{ext}")):
            rel = str(path.relative_to(root))
            try:
                text = path.read_text("utf-8")
            except UnicodeDecodeError as exc:
                diagnostics.append(
                    Diagnostic("error", "encoding", f"not UTF-8: {exc}", file=rel)
                )
                continue
            try:
                blocks.extend(syntax.parse_blocks(text, file=rel))
            except BundleFormatError as exc:
                diagnostics.append(
                    Diagnostic("error", "parse", exc.message, file=rel, line=exc.line)
                )
    return blocks


def _check_schema(block: syntax.Block, diagnostics: list[Diagnostic]) -> bool:
    schema = _schema_for(block.kind)
    if schema is None:
        diagnostics.append(
            Diagnostic(
                "error",
                "unknown-block",
                f"unknown block kind {block.kind!r}",
                file=block.file,
                line=block.line,
                subject=block.id,
            )
        )
        return False
    validator = jsonschema.Draft202012Validator(schema)
    ok = True
    for err in validator.iter_errors(block.fields):
        ok = False
        diagnostics.append(
            Diagnostic(
                "error",
                "schema",
                f"{block.kind} {block.id}: {err.message}",
                file=block.file,
                line=block.line,
                subject=block.id,
            )
        )
    return ok


def load_bundle_checked(path) -> tuple[Optional[KbBundle], list[Diagnostic]]:
    """Parse and validate a bundle directory.

    Returns the bundle (None if it could not even be constructed) together
    with all diagnostics; the bundle is usable only when no diagnostic has
    severity ``error``.
    """
    root = Path(path)
    diagnostics: list[Diagnostic] = []
    if not root.is_dir():
        diagnostics.append(Diagnostic("error", "missing", f"not a directory: {root}"))
        return None, diagnostics

    blocks = _read_blocks(root, diagnostics)
    concepts: list[Concept] = []
    instances: list[Instance] = []
    lexemes: list[LexicalEntry] = []
    rules: list[ContentRule] = []
    model_blocks: list[syntax.Block] = []
    profiles: dict[str, StandardProfile] = {}
    ref_attributes: tuple[str, ...] = DEFAULT_REF_ATTRIBUTES
    ref_order_declared = False

    seen_ids: dict[str, syntax.Block] = {}
    for block in blocks:
        if not _check_schema(block, diagnostics):
            continue
        try:
            if block.kind in ("concept", "instance"):
                if block.id in seen_ids:
                    diagnostics.append(
                        Diagnostic(
                            "error",
                            "duplicate-id",
                            f"id {block.id} already defined in {seen_ids[block.id].file}",
                            file=block.file,
                            line=block.line,
                            subject=block.id,
                        )
                    )
                    continue
                seen_ids[block.id] = block
                if block.kind == "concept":
                    concepts.append(_interpret_concept(block))
                else:
                    instances.append(_interpret_instance(block))
            elif block.kind == "lexeme":
                lexemes.append(_interpret_lexeme(block))
            elif block.kind == "rule":
                rules.append(_interpret_rule(block))
            elif block.kind == "settings":
                ref_attributes = tuple(
                    syntax.parse_id_list(block.fields.get("ref-attributes", ""))
                ) or DEFAULT_REF_ATTRIBUTES
                ref_order_declared = True
            elif block.kind == "model":
                model_blocks.append(block)
            elif block.kind == "profile":
                profiles[block.id] = _interpret_profile(block)
        except BundleFormatError as exc:
            diagnostics.append(
                Diagnostic(
                    "error", "parse", exc.message, file=block.file, line=block.line, subject=block.id
                )
            )

    # Fill part parents from the declared parts lists.
    part_parent: dict[str, str] = {}
    for node in list(concepts) + list(instances):
        for child in node.parts:
            if child in part_parent:
                diagnostics.append(
                    Diagnostic(
                        "error",
                        "part-forest",
                        f"{child} is listed as a part of both {part_parent[child]} and {node.id}",
                        file=node.source[0] if node.source else None,
                        line=node.source[1] if node.source else None,
                        subject=child,
                    )
                )
            else:
                part_parent[child] = node.id
    concepts = [replace(c, part_of_parent=part_parent.get(c.id)) for c in concepts]
    instances = [replace(i, part_of_parent=part_parent.get(i.id)) for i in instances]

    try:
        lexicon = Lexicon(lexemes)
    except UnknownIdError as exc:
        diagnostics.append(Diagnostic("error", "duplicate-id", exc.message, subject=exc.id))
        lexicon = Lexicon([])
    try:
        kb = KnowledgeBase(concepts, instances)
    except StructuralError as exc:
        diagnostics.append(Diagnostic("error", "structure", exc.message))
        return None, diagnostics

    all_actions = sorted({a for c in concepts for a in c.action_reps})
    models: dict[str, ExpertiseModel] = {}
    for block in model_blocks:
        models[block.id] = _interpret_model(block, lexicon, all_actions)

    bundle = KbBundle(
        kb=kb,
        lexicon=lexicon,
        content_rules=tuple(rules),
        expertise_models=models,
        profiles=profiles,
        ref_attribute_order=ref_attributes,
        ref_order_declared=ref_order_declared,
    )
    diagnostics.extend(validate_bundle(bundle))
    bundle.warnings = tuple(d for d in diagnostics if d.severity == "warning")
    return bundle, diagnostics


def load_bundle(path) -> KbBundle:
    """Load a bundle, raising BundleValidationError on any error diagnostic."""
    bundle, diagnostics = load_bundle_checked(path)
    if bundle is None or any(d.severity == "error" for d in diagnostics):
        raise BundleValidationError(diagnostics)
    return bundle


# -- validation -------------------------------------------------------------------


def validate_bundle(bundle: KbBundle) -> list[Diagnostic]:
    """Every invariant check; an empty error list means the bundle is sound."""
    out: list[Diagnostic] = []
    kb = bundle.kb

    def err(code, message, subject=None, node=None):
        src = getattr(node, "source", None) if node is not None else None
        out.append(
            Diagnostic(
                "error",
                code,
                message,
                file=src[0] if src else None,
                line=src[1] if src else None,
                subject=subject,
            )
        )

    def warn(code, message, subject=None, node=None):
        src = getattr(node, "source", None) if node is not None else None
        out.append(
            Diagnostic(
                "warning",
                code,
                message,
                file=src[0] if src else None,
                line=src[1] if src else None,
                subject=subject,
            )
        )

    # IS-A structure.
    for node in list(kb.concepts.values()) + list(kb.instances.values()):
        for parent in node.isa_parents:
            if parent not in kb.concepts:
                if parent in kb.instances:
                    err("instance-parent", f"{node.id} lists instance {parent} as an IS-A parent", node.id, node)
                else:
                    err("dangling-isa", f"{node.id} names unknown IS-A parent {parent}", node.id, node)
    # Cycle check via closure walk with a path stack.
    visiting: dict[str, int] = {}

    def walk(cid, stack):
        state = visiting.get(cid)
        if state == 1:
            cycle = stack[stack.index(cid):] + [cid]
            err("isa-cycle", f"IS-A cycle: {' -> '.join(cycle)}", cid)
            return
        if state == 2:
            return
        visiting[cid] = 1
        for p in kb.concepts[cid].isa_parents:
            if p in kb.concepts:
                walk(p, stack + [cid])
        visiting[cid] = 2

    for cid in kb.concepts:
        walk(cid, [])
    has_cycle = any(d.code == "isa-cycle" for d in out)
    refs_ok = not has_cycle and not any(
        d.code in ("dangling-isa", "instance-parent", "rootless-instance") for d in out
    )

    roots = kb.roots()
    if not has_cycle:
        if TASK_ROOT not in kb.concepts:
            err("no-task-root", f"bundle must define the task-taxonomy root concept {TASK_ROOT!r}")
        domain_roots = [r for r in roots if r != TASK_ROOT]
        if len(domain_roots) != 1:
            err(
                "root-count",
                f"expected exactly one domain root, found: {', '.join(domain_roots) or 'none'}",
            )
        for i in kb.instances.values():
            if not i.isa_parents:
                err("rootless-instance", f"instance {i.id} has no IS-A parents", i.id, i)

    # Part-Of structure: acyclicity and resolution.
    for node in list(kb.concepts.values()) + list(kb.instances.values()):
        for child in node.parts:
            if not kb.has(child):
                err("dangling-part", f"{node.id} names unknown part {child}", node.id, node)
    seen_state: dict[str, int] = {}

    def part_walk(nid, stack):
        state = seen_state.get(nid)
        if state == 1:
            cycle = stack[stack.index(nid):] + [nid]
            err("part-cycle", f"Part-Of cycle: {' -> '.join(cycle)}", nid)
            return
        if state == 2:
            return
        seen_state[nid] = 1
        for child in kb.node(nid).parts:
            if kb.has(child):
                part_walk(child, stack + [nid])
        seen_state[nid] = 2

    for nid in kb.all_ids():
        part_walk(nid, [])

    # Task taxonomy must carry no part structure.
    if TASK_ROOT in kb.concepts and refs_ok:
        for cid in bundle.task_ids():
            node = kb.concepts[cid]
            if node.parts or node.part_of_parent:
                err("task-with-parts", f"task concept {cid} participates in the part hierarchy", cid, node)

    # Slot references resolve.
    from .model import own_slots

    for node in list(kb.concepts.values()) + list(kb.instances.values()):
        for attr, value in own_slots(node).items():
            for ref in refs_in(value):
                if not kb.has(ref):
                    err("dangling-ref", f"slot {attr} on {node.id} references unknown id {ref}", node.id, node)

    # Action representations.
    for concept in kb.concepts.values():
        for symbol, rep in concept.action_reps.items():
            for target in rep.entity_targets():
                if target != SELF_REF and not kb.has(target):
                    err(
                        "dangling-ref",
                        f"action {symbol} on {concept.id} references unknown id {target}",
                        concept.id,
                        concept,
                    )
            for step in (rep,) + tuple(rep.substeps):
                for role, _ in step.roles:
                    if role not in ROLE_NAMES:
                        err(
                            "bad-role",
                            f"action {symbol} on {concept.id} uses unknown role {role!r}",
                            concept.id,
                            concept,
                        )

    # Lexical anchors.
    for concept in kb.concepts.values():
        if concept.lexical_anchor is None:
            warn("no-anchor", f"concept {concept.id} has no lexical anchor", concept.id, concept)
        elif not bundle.lexicon.has(concept.lexical_anchor):
            err(
                "dangling-anchor",
                f"concept {concept.id} names unknown lexeme {concept.lexical_anchor}",
                concept.id,
                concept,
            )
        else:
            entry = bundle.lexicon.entry(concept.lexical_anchor)
            if entry.denotes != concept.id:
                err(
                    "anchor-mismatch",
                    f"lexeme {entry.id} anchors {concept.id} but denotes {entry.denotes}",
                    concept.id,
                    concept,
                )

    # Lexicon internal consistency.
    for entry in bundle.lexicon:
        if entry.abbreviation_of is not None:
            seen = {entry.id}
            cur = entry
            while cur.abbreviation_of is not None:
                if not bundle.lexicon.has(cur.abbreviation_of):
                    err("dangling-abbreviation", f"lexeme {cur.id} abbreviates unknown {cur.abbreviation_of}", entry.id, entry)
                    break
                cur = bundle.lexicon.entry(cur.abbreviation_of)
                if cur.id in seen:
                    err("abbreviation-cycle", f"abbreviation cycle through {entry.id}", entry.id, entry)
                    break
                seen.add(cur.id)

    if not refs_ok:
        return out  # inheritance and rules are meaningless on a broken graph

    # Inheritance ambiguity, over every attribute visible on every node.
    for nid in kb.all_ids():
        for attr in kb.inherited_attributes(nid):
            try:
                kb.inherit(nid, attr)
            except AmbiguousInheritanceError as exc:
                err("ambiguous-default", exc.message, nid, kb.node(nid))
        for action in kb.actions_of(nid):
            try:
                kb.action_for(nid, action)
            except AmbiguousInheritanceError as exc:
                err("ambiguous-default", exc.message, nid, kb.node(nid))

    # Content rules.
    domain_root = bundle.domain_root
    for rule in bundle.content_rules:
        for cls, what in ((rule.component_class, "component"), (rule.task_class, "task")):
            if cls not in kb.concepts:
                err("dangling-rule-class", f"rule {rule.id} names unknown {what} class {cls}", rule.id, rule)
        if rule.schema not in SCHEMAS:
            err("bad-schema", f"rule {rule.id} names unknown schema {rule.schema}", rule.id, rule)
        for q in rule.candidate_followups:
            if q not in QUESTIONS:
                err("bad-followup", f"rule {rule.id} offers unknown question {q}", rule.id, rule)
        for attr in rule.conveyed_attributes:
            if not any(
                e.part_of_speech == "noun"
                for lang in bundle.lexicon.languages()
                for e in bundle.lexicon.denoting(attr, lang)
            ):
                warn("undeclared-attribute", f"attribute {attr} (rule {rule.id}) has no lexeme", rule.id, rule)

    rules_ok = not any(d.code == "dangling-rule-class" for d in out)
    if rules_ok and domain_root and bundle.task_root:
        for question in QUESTIONS:
            if not any(
                r.question == question
                and r.component_class == domain_root
                and r.task_class == TASK_ROOT
                for r in bundle.content_rules
            ):
                err("no-default-rule", f"no root-level rule for question {question}")

        # Specificity ties: two distinct rules matching the same query at
        # the same depth would make resolution ambiguous.
        from ..context import rule_depth, rule_matches

        tasks = bundle.task_ids()
        components = [nid for nid in kb.all_ids() if nid not in tasks]
        for question in QUESTIONS:
            qrules = [r for r in bundle.content_rules if r.question == question]
            if len(qrules) < 2:
                continue
            for component in components:
                for task in tasks:
                    matching = [r for r in qrules if rule_matches(r, question, component, task, kb)]
                    if len(matching) < 2:
                        continue
                    best = max(rule_depth(r, kb) for r in matching)
                    tied = [r for r in matching if rule_depth(r, kb) == best]
                    if len(tied) > 1:
                        err(
                            "rule-tie",
                            f"rules {', '.join(sorted(r.id for r in tied))} tie for "
                            f"({question}, {component}, {task})",
                            tied[0].id,
                        )
                        break
                else:
                    continue
                break

    # Preference attributes should be lexicalized for attributive use.
    for attr in bundle.ref_attribute_order if bundle.ref_order_declared else ():
        if not any(
            e.part_of_speech == "noun"
            for lang in bundle.lexicon.languages()
            for e in bundle.lexicon.denoting(attr, lang)
        ):
            warn("undeclared-attribute", f"preference attribute {attr} has no lexeme")

    # Expertise models.
    if not bundle.expertise_models:
        err("no-models", "bundle defines no expertise models")
    for model in bundle.expertise_models.values():
        if model.language not in PACK_CLASSES:
            err("unknown-language", f"model {model.id} wants unsupported language {model.language}", model.id, model)
        for lexeme_id in sorted(model.known_lexemes):
            if not bundle.lexicon.has(lexeme_id):
                err("dangling-lexeme", f"model {model.id} lists unknown lexeme {lexeme_id}", model.id, model)
        if domain_root:
            anchor = kb.concepts[domain_root].lexical_anchor if domain_root in kb.concepts else None
            if anchor and anchor not in model.known_lexemes:
                warn("root-anchor-unknown", f"model {model.id} does not know the root lexeme {anchor}", model.id, model)

    # Standards profiles.
    for prof in bundle.profiles.values():
        listed = set(prof.banned_lexemes)
        if prof.approved_lexemes != ALL_IN_PACK:
            listed |= set(prof.approved_lexemes)
        for lexeme_id in sorted(listed):
            if not bundle.lexicon.has(lexeme_id):
                warn("dangling-lexeme", f"profile {prof.id} lists unknown lexeme {lexeme_id}", prof.id, prof)
        for feat in prof.banned_features:
            if feat not in BANNABLE_FEATURES:
                err("bad-feature", f"profile {prof.id} bans unknown feature {feat}", prof.id, prof)

    # Content standards: required attributes must be present on every
    # component the rule covers; missing ones are load-time warnings.
    if rules_ok:
        for rule in bundle.content_rules:
            if not rule.required_attributes:
                continue
            for iid in kb.instances:
                if rule.component_class in kb.concepts and kb.subsumes(rule.component_class, iid):
                    for attr in rule.required_attributes:
                        try:
                            value = kb.inherit(iid, attr)
                        except AmbiguousInheritanceError:
                            continue
                        if value is None:
                            warn(
                                "required-attribute-missing",
                                f"{iid} lacks required attribute {attr} (rule {rule.id})",
                                iid,
                            )
    return out


# -- serialization ------------------------------------------------------------------


def _format_slot_lines(slots, out, indent=1):
    if not slots:
        return
    pad = "  " * indent
    out.append(f"{pad}slots:")
    for attr, value in slots.items():
        out.append(f"{pad}  {attr}: {syntax.format_value(value)}")


def serialize_bundle(bundle: KbBundle, path) -> None:
    """Write the bundle back out in canonical form (one file per kind)."""
    root = Path(path)
    for subdir, _ in _LAYOUT:
        (root / subdir).mkdir(parents=True, exist_ok=True)

    lines: list[str] = []
    for c in bundle.kb.concepts.values():
        lines.append(f"concept {c.id}")
        if c.isa_parents:
            lines.append(f"  isa: {', '.join(c.isa_parents)}")
        if c.lexical_anchor:
            lines.append(f"  lex: {c.lexical_anchor}")
        if c.defining_props:
            props = sorted(c.defining_props, key=lambda p: p[0])
            lines.append(
                "  defining: " + ", ".join(f"{a}={syntax.format_value(v)}" for a, v in props)
            )
        if c.parts:
            lines.append(f"  parts: {', '.join(c.parts)}")
        _format_slot_lines(c.default_slots, lines)
        for symbol, rep in c.action_reps.items():
            syntax.write_action(symbol, rep, lines)
        lines.append("")
    (root / "concepts" / "concepts.kb").write_text("\n".join(lines), "utf-8")

    lines = []
    for i in bundle.kb.instances.values():
        lines.append(f"instance {i.id}")
        lines.append(f"  isa: {', '.join(i.isa_parents)}")
        if i.parts:
            lines.append(f"  parts: {', '.join(i.parts)}")
        _format_slot_lines(i.local_slots, lines)
        lines.append("")
    (root / "instances" / "instances.kb").write_text("\n".join(lines), "utf-8")

    lines = []
    for e in bundle.lexicon:
        lines.append(f"lexeme {e.id}")
        lines.append(f"  language: {e.language}")
        lines.append(f"  pos: {e.part_of_speech}")
        lines.append(f'  base: "{e.base_form}"')
        lines.append(f"  denotes: {e.denotes}")
        if e.basic_level:
            lines.append("  basic: true")
        if e.abbreviation_of:
            lines.append(f"  abbreviation-of: {e.abbreviation_of}")
        if e.attribute_category:
            lines.append(f"  category: {e.attribute_category}")
        if "plural" in e.irregular_forms:
            lines.append(f"  plural: {e.irregular_forms['plural']}")
        if "3sg" in e.irregular_forms:
            lines.append(f"  third-person: {e.irregular_forms['3sg']}")
        lines.append("")
    (root / "lexicon" / "lexicon.lex").write_text("\n".join(lines), "utf-8")

    lines = []
    for r in bundle.content_rules:
        lines.append(f"rule {r.id}")
        lines.append(f"  question: {r.question}")
        lines.append(f"  component: {r.component_class}")
        lines.append(f"  task: {r.task_class}")
        lines.append(f"  schema: {r.schema}")
        if r.bullet:
            lines.append("  bullet: true")
        if r.unabbreviate:
            lines.append("  unabbreviate: true")
        if r.conveyed_attributes:
            lines.append(f"  convey: {', '.join(r.conveyed_attributes)}")
        if r.candidate_followups:
            lines.append(f"  followups: {', '.join(r.candidate_followups)}")
        if r.required_attributes:
            lines.append(f"  require: {', '.join(r.required_attributes)}")
        lines.append("")
    lines.append("settings main")
    lines.append(f"  ref-attributes: {', '.join(bundle.ref_attribute_order)}")
    lines.append("")
    (root / "rules" / "rules.rule").write_text("\n".join(lines), "utf-8")

    lines = []
    for m in bundle.expertise_models.values():
        lines.append(f"model {m.id}")
        lines.append(f"  language: {m.language}")
        if m.known_lexemes == bundle.lexicon.ids_for_language(m.language):
            lines.append("  lexemes: all")
        else:
            lines.append(f"  lexemes: {', '.join(sorted(m.known_lexemes))}")
        all_actions = {a for c in bundle.kb.concepts.values() for a in c.action_reps}
        if m.known_actions == frozenset(all_actions):
            lines.append("  actions: all")
        else:
            lines.append(f"  actions: {', '.join(sorted(m.known_actions))}")
        if m.style.contractions:
            lines.append("  contractions: true")
        lines.append(f"  abbreviations: {'true' if m.style.allow_abbreviations else 'false'}")
        lines.append("")
    (root / "models" / "models.model").write_text("\n".join(lines), "utf-8")

    lines = []
    for p in bundle.profiles.values():
        lines.append(f"profile {p.id}")
        lines.append(f"  max-sentence-words: {p.max_sentence_words}")
        if p.approved_lexemes == ALL_IN_PACK:
            lines.append(f"  approved: {ALL_IN_PACK}")
        else:
            lines.append(f"  approved: {', '.join(sorted(p.approved_lexemes))}")
        if p.banned_lexemes:
            lines.append(f"  banned-lexemes: {', '.join(sorted(p.banned_lexemes))}")
        lines.append(f"  banned-features: {', '.join(sorted(p.banned_features))}")
        lines.append("")
    (root / "standards" / "standards.profile").write_text("\n".join(lines), "utf-8")


def bundles_equal(a: KbBundle, b: KbBundle) -> bool:
    """Structural equality over everything that defines bundle behavior."""
    return (
        a.kb.concepts == b.kb.concepts
        and a.kb.instances == b.kb.instances
        and dict(a.lexicon.entries) == dict(b.lexicon.entries)
        and set(a.content_rules) == set(b.content_rules)
        and a.expertise_models == b.expertise_models
        and a.profiles == b.profiles
        and a.ref_attribute_order == b.ref_attribute_order
    )
