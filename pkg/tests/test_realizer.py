"""Surface realization: patterns, morphology, post-processing."""

import pytest

from helpgen.context import DiscourseState, QuestionPoint, StylePrefs
from helpgen.content import plan_content
from helpgen.lexicon import LexicalEntry, Lexicon
from helpgen.planner import plan_sentences
from helpgen.realizer import inflect, postprocess, realize, span_text
from helpgen.realizer.english import EnglishPack, regular_plural, regular_third_person
from helpgen.realizer.spans import AnnotatedSpan, link_targets

PLAIN = StylePrefs(contractions=False)
CONTRACTING = StylePrefs(contractions=True)


def noun(base, **kw):
    return LexicalEntry(
        id=f"{base}-n", language="en", part_of_speech="noun", base_form=base, denotes=base, **kw
    )


def verb(base, **kw):
    return LexicalEntry(
        id=f"{base}-v", language="en", part_of_speech="verb", base_form=base, denotes=base, **kw
    )


def realize_query(bundle, question, component, model="skilled", task="operations", focus=(), action=None):
    p = QuestionPoint(
        question=question, component=component, task=task,
        expertise=model, focus=tuple(focus), action=action,
    )
    plan = plan_content(p, bundle)
    sentences = plan_sentences(plan, p, DiscourseState(focus=p.focus), bundle)
    m = bundle.expertise(model)
    return realize(sentences, m.style, bundle.pack(m.language))


class TestRealize:
    def test_lever_golden_sentence(self, ate):
        spans = realize_query(ate, "WhatIsIt", "llever-test-head12")
        assert span_text(spans) == "It is a black locking lever."

    def test_power_supply_golden_sentence(self, ate):
        spans = realize_query(
            ate, "WhatIsIt", "dc-power-supply-23",
            focus=("vxi-chassis-36", "dc-power-supply-23"),
        )
        assert span_text(spans) == "It is a black Elgar AT-8000 DC power supply."

    def test_empty_input_empty_output(self, ate):
        assert realize([], PLAIN, ate.pack("en")) == []

    def test_entity_links_annotate_references(self, ate):
        spans = realize_query(ate, "WhereIsIt", "llever-test-head12")
        targets = [s.target for s in spans if s.kind == "entity"]
        assert targets == ["test-head12"]

    def test_imperative_verbs_carry_action_links(self, ate):
        spans = realize_query(ate, "HowDoIPerform", "test-head12")
        actions = [(s.action, s.target) for s in spans if s.kind == "action"]
        assert actions == [
            ("unlock", "ita-mechanism12"),
            ("mount", "ita9"),
            ("lock", "ita-mechanism12"),
        ]

    def test_bulleted_steps_indexed(self, ate):
        spans = realize_query(ate, "HowDoIPerform", "ita-mechanism12", action="unlock")
        bullets = sorted({s.bullet_index for s in spans})
        assert bullets == [0, 1]


class TestInflect:
    def test_regular_plural(self):
        assert inflect(noun("lever"), {"number": "plural"}) == "levers"

    def test_shipped_irregular_plural(self, ate):
        entry = ate.lexicon.entry("chassis-n")
        assert inflect(entry, {"number": "plural"}) == "chassis"

    def test_sibilant_third_person(self):
        assert inflect(verb("push"), {"tense": "3sg"}) == "pushes"

    def test_imperative_is_base(self):
        assert inflect(verb("push"), {"mood": "imperative"}) == "push"

    def test_genitive(self):
        assert inflect(noun("machine"), {"genitive": True}) == "machine's"

    # Fifty inflections checked against a hand-written table.
    HAND_TABLE = [
        # (base, pos, features, expected)
        ("lever", "noun", {"number": "plural"}, "levers"),
        ("switch", "noun", {"number": "plural"}, "switches"),
        ("box", "noun", {"number": "plural"}, "boxes"),
        ("bus", "noun", {"number": "plural"}, "buses"),
        ("brush", "noun", {"number": "plural"}, "brushes"),
        ("lens", "noun", {"number": "plural"}, "lenses"),
        ("battery", "noun", {"number": "plural"}, "batteries"),
        ("pulley", "noun", {"number": "plural"}, "pulleys"),
        ("tray", "noun", {"number": "plural"}, "trays"),
        ("key", "noun", {"number": "plural"}, "keys"),
        ("supply", "noun", {"number": "plural"}, "supplies"),
        ("board", "noun", {"number": "plural"}, "boards"),
        ("wrench", "noun", {"number": "plural"}, "wrenches"),
        ("gas", "noun", {"number": "plural"}, "gases"),
        ("fuse", "noun", {"number": "plural"}, "fuses"),
        ("socket", "noun", {"number": "plural"}, "sockets"),
        ("display", "noun", {"number": "plural"}, "displays"),
        ("assembly", "noun", {"number": "plural"}, "assemblies"),
        ("harness", "noun", {"number": "plural"}, "harnesses"),
        ("latch", "noun", {"number": "plural"}, "latches"),
        ("screw", "noun", {"number": "plural"}, "screws"),
        ("body", "noun", {"number": "plural"}, "bodies"),
        ("wire", "noun", {"number": "plural"}, "wires"),
        ("gauge", "noun", {"number": "plural"}, "gauges"),
        ("clamp", "noun", {"number": "plural"}, "clamps"),
        ("push", "verb", {"tense": "3sg"}, "pushes"),
        ("pass", "verb", {"tense": "3sg"}, "passes"),
        ("fix", "verb", {"tense": "3sg"}, "fixes"),
        ("latch", "verb", {"tense": "3sg"}, "latches"),
        ("flash", "verb", {"tense": "3sg"}, "flashes"),
        ("buzz", "verb", {"tense": "3sg"}, "buzzes"),
        ("carry", "verb", {"tense": "3sg"}, "carries"),
        ("stay", "verb", {"tense": "3sg"}, "stays"),
        ("turn", "verb", {"tense": "3sg"}, "turns"),
        ("connect", "verb", {"tense": "3sg"}, "connects"),
        ("go", "verb", {"tense": "3sg"}, "goes"),
        ("do", "verb", {"tense": "3sg"}, "does"),
        ("apply", "verb", {"tense": "3sg"}, "applies"),
        ("slide", "verb", {"tense": "3sg"}, "slides"),
        ("lock", "verb", {"tense": "3sg"}, "locks"),
        ("press", "verb", {"tense": "3sg"}, "presses"),
        ("reach", "verb", {"tense": "3sg"}, "reaches"),
        ("open", "verb", {"mood": "imperative"}, "open"),
        ("remove", "verb", {"mood": "imperative"}, "remove"),
        ("push", "verb", {"mood": "imperative"}, "push"),
        ("use", "verb", {"tense": "3sg"}, "uses"),
        ("test", "verb", {"tense": "3sg"}, "tests"),
        ("mix", "verb", {"tense": "3sg"}, "mixes"),
        ("relay", "verb", {"tense": "3sg"}, "relays"),
        ("deny", "verb", {"tense": "3sg"}, "denies"),
    ]

    @pytest.mark.parametrize("base,pos,features,expected", HAND_TABLE)
    def test_inflection_table(self, base, pos, features, expected):
        maker = noun if pos == "noun" else verb
        assert inflect(maker(base), features) == expected

    def test_irregular_wins_over_rules(self):
        entry = noun("foot", irregular_forms={"plural": "feet"})
        assert inflect(entry, {"number": "plural"}) == "feet"


class TestPostprocess:
    def test_parenthesis_spacing(self):
        tokens = [AnnotatedSpan(text=t) for t in ["My", "dog", "(", "Spotty", ")", "is", "here"]]
        out = postprocess(tokens, PLAIN)
        assert span_text(out) == "My dog (Spotty) is here."
        assert span_text(out).startswith("My dog (Spotty) is here")

    def test_contractions_applied_when_enabled(self):
        tokens = [AnnotatedSpan(text=t) for t in ["it", "is", "a", "lever"]]
        assert span_text(postprocess(tokens, CONTRACTING)) == "It's a lever."
        assert span_text(postprocess(tokens, PLAIN)) == "It is a lever."

    def test_possessive_its_untouched_by_contraction(self):
        tokens = [AnnotatedSpan(text=t) for t in ["its", "parts", "are", "here"]]
        assert span_text(postprocess(tokens, CONTRACTING)) == "Its parts are here."

    def test_empty(self):
        assert postprocess([], PLAIN) == []

    def test_article_switches_to_an(self):
        tokens = [AnnotatedSpan(text=t) for t in ["it", "is", "a", "adapter"]]
        assert span_text(postprocess(tokens, PLAIN)) == "It is an adapter."

    def test_article_overrides(self):
        pack = EnglishPack(Lexicon([]))
        assert pack.article_for("user") == "a"
        assert pack.article_for("hour") == "an"
        assert pack.article_for("ITA") == "an"
        assert pack.article_for("black") == "a"

    def test_terminal_punctuation_exactly_one(self):
        tokens = [AnnotatedSpan(text=t) for t in ["done", "."]]
        out = postprocess(tokens, PLAIN)
        assert span_text(out) == "Done."
        question = [AnnotatedSpan(text=t) for t in ["where", "?"]]
        assert span_text(postprocess(question, PLAIN)) == "Where?"

    def test_idempotence(self):
        tokens = [
            AnnotatedSpan(text="the"),
            AnnotatedSpan(text="lever", kind="entity", target="lever1"),
            AnnotatedSpan(text="is"),
            AnnotatedSpan(text="a"),
            AnnotatedSpan(text="item", kind="entity", target="x"),
            AnnotatedSpan(text="."),
        ]
        once = postprocess(tokens, CONTRACTING)
        twice = postprocess(once, CONTRACTING)
        assert once == twice

    def test_links_preserved(self):
        tokens = [
            AnnotatedSpan(text="push"),
            AnnotatedSpan(text="the"),
            AnnotatedSpan(text="lever", kind="entity", target="lever1"),
            AnnotatedSpan(text="and", ),
            AnnotatedSpan(text="press", kind="action", action="press", target="catch1"),
            AnnotatedSpan(text="."),
        ]
        out = postprocess(tokens, PLAIN)
        assert link_targets(out) == link_targets(tokens)

    def test_canned_text_not_edited(self):
        tokens = [
            AnnotatedSpan(text="it"),
            AnnotatedSpan(text="is"),
            AnnotatedSpan(text="done ( badly )", canned=True, origin=None),
        ]
        out = postprocess(tokens, CONTRACTING)
        text = span_text(out)
        assert "done ( badly )" in text  # canned spacing left alone
        assert text.startswith("It's")

    def test_sentence_capitalization_across_periods(self):
        tokens = [AnnotatedSpan(text=t) for t in ["one", "is", "here", ".", "two", "is", "there", "."]]
        assert span_text(postprocess(tokens, PLAIN)) == "One is here. Two is there."


class TestRegularMorphology:
    def test_plural_rules(self):
        assert regular_plural("bolt") == "bolts"
        assert regular_plural("bench") == "benches"
        assert regular_plural("fly") == "flies"
        assert regular_plural("day") == "days"

    def test_third_person_rules(self):
        assert regular_third_person("lift") == "lifts"
        assert regular_third_person("catch") == "catches"
        assert regular_third_person("try") == "tries"
