"""Question space, rule resolution, and discourse focus."""

import random

import pytest

from helpgen.content import ContentRule
from helpgen.context import (
    FOCUS_CAPACITY,
    DiscourseState,
    QuestionPoint,
    resolve_rule,
    rule_depth,
    rule_matches,
    update_focus,
)
from helpgen.errors import RuleResolutionError, StructuralError

from helpers import build_kb


def rule(rid, component, task, question="WhatIsIt"):
    return ContentRule(
        id=rid,
        question=question,
        component_class=component,
        task_class=task,
        schema="identify",
    )


@pytest.fixture
def lattice_kb():
    return build_kb(
        [
            ("thing", []),
            ("task", []),
            ("gadget", ["thing"]),
            ("gizmo", ["gadget"]),
            ("widget", ["thing"]),
            ("operations", ["task"]),
            ("deep-operations", ["operations"]),
            ("repair", ["task"]),
        ],
        [("g1", ["gizmo"]), ("w1", ["widget"])],
    )


class TestResolveRule:
    def test_figure_trace_rule_selection(self, ate):
        chosen = resolve_rule(
            "WhatIsIt", "llever-test-head12", "operations", ate.content_rules, ate.kb
        )
        assert chosen.id == "what-operations-rule"

    def test_root_defaults_cover_every_component(self, lattice_kb):
        rules = [rule("default", "thing", "task")]
        for component in ("g1", "w1", "gizmo", "thing"):
            assert resolve_rule("WhatIsIt", component, "repair", rules, lattice_kb).id == "default"

    def test_component_depth_outranks_task_depth(self, lattice_kb):
        rules = [
            rule("by-task", "thing", "deep-operations"),
            rule("by-component", "gadget", "task"),
        ]
        # by-task has task depth 2; by-component has component depth 1.
        chosen = resolve_rule("WhatIsIt", "g1", "deep-operations", rules, lattice_kb)
        assert chosen.id == "by-component"

    def test_no_match_is_configuration_error(self, lattice_kb):
        rules = [rule("only-widgets", "widget", "task")]
        with pytest.raises(RuleResolutionError) as exc:
            resolve_rule("WhatIsIt", "g1", "repair", rules, lattice_kb)
        assert "WhatIsIt" in str(exc.value)

    def test_tie_raises(self, lattice_kb):
        rules = [rule("a", "gadget", "task"), rule("b", "gadget", "task")]
        with pytest.raises(StructuralError):
            resolve_rule("WhatIsIt", "g1", "repair", rules, lattice_kb)

    def test_permutation_invariance(self, lattice_kb):
        rules = [
            rule("r0", "thing", "task"),
            rule("r1", "gadget", "task"),
            rule("r2", "gizmo", "task"),
            rule("r3", "thing", "operations"),
            rule("r4", "gadget", "operations"),
        ]
        rng = random.Random(7)
        baseline = resolve_rule("WhatIsIt", "g1", "deep-operations", rules, lattice_kb).id
        for _ in range(20):
            shuffled = rules[:]
            rng.shuffle(shuffled)
            assert resolve_rule("WhatIsIt", "g1", "deep-operations", shuffled, lattice_kb).id == baseline

    def test_randomized_lattice_matches_exhaustive_search(self, lattice_kb):
        components = ["thing", "gadget", "gizmo", "widget", "g1", "w1"]
        component_classes = ["thing", "gadget", "gizmo", "widget"]
        task_classes = ["task", "operations", "deep-operations", "repair"]
        tasks = task_classes
        rng = random.Random(42)
        for trial in range(60):
            n = rng.randint(1, 6)
            rules = [rule("default", "thing", "task")] + [
                rule(f"r{i}", rng.choice(component_classes), rng.choice(task_classes))
                for i in range(n)
            ]
            component = rng.choice(components)
            task = rng.choice(tasks)
            matching = [
                r for r in rules if rule_matches(r, "WhatIsIt", component, task, lattice_kb)
            ]
            ranked = sorted(matching, key=lambda r: rule_depth(r, lattice_kb), reverse=True)
            top_key = rule_depth(ranked[0], lattice_kb)
            tied = [r for r in ranked if rule_depth(r, lattice_kb) == top_key]
            if len(tied) > 1:
                with pytest.raises(StructuralError):
                    resolve_rule("WhatIsIt", component, task, rules, lattice_kb)
            else:
                chosen = resolve_rule("WhatIsIt", component, task, rules, lattice_kb)
                assert chosen.id == ranked[0].id, (trial, component, task)


class TestQuestionPoint:
    def test_rejects_unknown_question(self):
        with pytest.raises(StructuralError):
            QuestionPoint(question="WhyIsIt", component="x", task="t", expertise="m")


class TestUpdateFocus:
    def test_first_mention(self):
        state = update_focus(DiscourseState(), ["a"])
        assert state.focus == ("a",)
        assert state.last_center == "a"

    def test_mentioned_promotes_and_keeps_rest(self):
        state = DiscourseState(focus=("x", "y"))
        new = update_focus(state, ["y", "z"])
        assert new.focus == ("y", "z", "x")
        assert new.last_center == "y"

    def test_capacity(self):
        state = DiscourseState(focus=tuple(f"old{i}" for i in range(FOCUS_CAPACITY)))
        new = update_focus(state, ["fresh"])
        assert len(new.focus) == FOCUS_CAPACITY
        assert new.focus[0] == "fresh"
        assert f"old{FOCUS_CAPACITY - 1}" not in new.focus

    def test_deterministic_and_center_in_focus(self):
        state = DiscourseState(focus=("a", "b", "c"))
        one = update_focus(state, ["b", "d"])
        two = update_focus(state, ["b", "d"])
        assert one == two
        assert one.last_center in one.focus

    def test_empty_mention_keeps_center(self):
        state = DiscourseState(focus=("a",), last_center="a")
        new = update_focus(state, [])
        assert new.focus == ("a",)
        assert new.last_center == "a"

    def test_parts_response_focuses_topic_and_parts(self, ate, ask):
        # After listing the machine's parts, the machine and every listed
        # part are in focus, licensing a follow-on pronoun query.
        from helpgen.delivery.core import answer, new_session

        session = new_session("skilled", "operations")
        point = QuestionPoint(
            question="WhatAreItsParts", component="ate1", task="operations", expertise="skilled"
        )
        answer(point, session, ate)
        for entity in ("ate1", "dc-power-supply-23", "mains-control-unit-7", "vxi-chassis-36"):
            assert entity in session.discourse.focus
        assert session.discourse.focus[0] == "ate1"
        # The follow-on identification may then pronominalize.
        follow = QuestionPoint(
            question="WhatIsIt",
            component="dc-power-supply-23",
            task="operations",
            expertise="skilled",
            focus=session.discourse.focus,
        )
        response = answer(follow, session, ate)
        assert response.body_text == "It is a black Elgar AT-8000 DC power supply."
