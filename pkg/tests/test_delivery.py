"""Response assembly, sessions, followup soundness."""

import pytest

from helpgen.context import DiscourseState, QuestionPoint
from helpgen.delivery.core import HISTORY_CAP, answer, answer_once, new_session
from helpgen.errors import EngineError, KnowledgeAbsenceError, UnknownIdError


class TestAnswer:
    def test_lever_response_with_where_followup(self, ask):
        response = ask("WhatIsIt", "llever-test-head12")
        assert response.body_text == "It is a black locking lever."
        assert [(f.question, f.component, f.label) for f in response.followups] == [
            ("WhereIsIt", "llever-test-head12", "WHERE")
        ]

    def test_power_supply_golden(self, ask):
        response = ask(
            "WhatIsIt", "dc-power-supply-23",
            focus=("vxi-chassis-36", "dc-power-supply-23"),
        )
        assert response.body_text == "It is a black Elgar AT-8000 DC power supply."

    def test_title_links_the_component(self, ask):
        response = ask("WhatAreItsParts", "ate1")
        entity_spans = [s for s in response.title if s.kind == "entity"]
        assert entity_spans and entity_spans[0].target == "ate1"
        assert response.title_text == "What are the parts of the ATE?"

    def test_unlock_is_bulleted_with_action_links(self, ask):
        response = ask("HowDoIPerform", "ita-mechanism12", action="unlock")
        assert response.title_text == "How do I unlock the ITA mechanism?"
        bullets = {s.bullet_index for s in response.body if s.bullet_index is not None}
        assert bullets == {0, 1}
        verbs = [s for s in response.body if s.kind == "action"]
        # Every step's main verb carries an action link.
        assert [s.bullet_index for s in verbs] == [0, 1]

    def test_elapsed_recorded(self, ask):
        response = ask("WhatIsIt", "board21")
        assert response.elapsed_ms > 0

    def test_errors_are_structured_not_prose(self, ate):
        point = QuestionPoint(
            question="HowDoIPerform", component="llever-test-head12",
            task="operations", expertise="skilled",
        )
        with pytest.raises(KnowledgeAbsenceError) as exc:
            answer_once(point, ate)
        payload = exc.value.to_dict()
        assert payload["kind"] == "knowledge-absence"
        assert payload["component"] == "llever-test-head12"
        assert payload["question"] == "HowDoIPerform"

    def test_unknown_component_is_lookup_error(self, ate):
        point = QuestionPoint(
            question="WhatIsIt", component="ghost",
            task="operations", expertise="skilled",
        )
        with pytest.raises(UnknownIdError):
            answer_once(point, ate)


class TestSession:
    def test_focus_accumulates_across_queries(self, ate):
        session = new_session("skilled", "operations")
        answer(
            QuestionPoint(question="WhatAreItsParts", component="ate1",
                          task="operations", expertise="skilled"),
            session,
            ate,
        )
        assert session.discourse.focus[0] == "ate1"
        assert "dc-power-supply-23" in session.discourse.focus
        assert session.discourse.last_center == "ate1"

    def test_history_appends_and_caps(self, ate):
        session = new_session("skilled", "operations")
        point = QuestionPoint(
            question="WhatIsIt", component="board21", task="operations", expertise="skilled"
        )
        for _ in range(HISTORY_CAP + 7):
            answer(point, session, ate)
        assert len(session.history) == HISTORY_CAP
        assert session.history[-1] == point

    def test_explicit_focus_overrides_session_state(self, ate):
        session = new_session("skilled", "operations")
        point = QuestionPoint(
            question="WhatIsIt", component="dc-power-supply-23",
            task="operations", expertise="skilled",
            focus=("vxi-chassis-36", "dc-power-supply-23"),
        )
        response = answer(point, session, ate)
        assert response.body_text == "It is a black Elgar AT-8000 DC power supply."


class TestFollowupSoundness:
    @pytest.mark.parametrize("kb_name", ["ate", "bicycle"])
    def test_every_button_click_succeeds(self, kb_name, ate, bicycle):
        bundle = {"ate": ate, "bicycle": bicycle}[kb_name]
        for model in bundle.expertise_models:
            for task in ("operations", "repair-part"):
                for comp in bundle.component_ids():
                    point = QuestionPoint(
                        question="WhatIsIt", component=comp, task=task, expertise=model
                    )
                    try:
                        response = answer_once(point, bundle)
                    except KnowledgeAbsenceError:
                        continue
                    for followup in response.followups:
                        session = new_session(model, task)
                        click = QuestionPoint(
                            question=followup.question,
                            component=followup.component,
                            task=task,
                            expertise=model,
                            focus=(comp,),
                        )
                        clicked = answer(click, session, bundle)  # must not raise
                        assert clicked.body_text
