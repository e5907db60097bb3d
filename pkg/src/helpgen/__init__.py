"""helpgen: query-driven hypertext documentation generation.

Answers a fixed set of basic questions about a machine's components from
a frame knowledge base, tailoring each short response to the user's task,
expertise, and discourse context, and attaching pre-validated followup
links.
"""

from .context import QUESTIONS, DiscourseState, ExpertiseModel, QuestionPoint, update_focus
from .content import ContentPlan, ContentRule, filter_followups, plan_content
from .delivery import Response, Session, answer, answer_once, export_static
from .kb import KbBundle, KnowledgeBase, load_bundle, load_bundle_checked, validate_bundle
from .planner import aggregate, expand_hybrid, gen_reference, plan_sentences, pronoun_allowed
from .realizer import AnnotatedSpan, inflect, postprocess, realize
from .standards import StandardProfile, Violation, check_text

__version__ = "0.1.0"

__all__ = [
    "QUESTIONS",
    "AnnotatedSpan",
    "ContentPlan",
    "ContentRule",
    "DiscourseState",
    "ExpertiseModel",
    "KbBundle",
    "KnowledgeBase",
    "QuestionPoint",
    "Response",
    "Session",
    "StandardProfile",
    "Violation",
    "aggregate",
    "answer",
    "answer_once",
    "check_text",
    "expand_hybrid",
    "export_static",
    "filter_followups",
    "gen_reference",
    "inflect",
    "load_bundle",
    "load_bundle_checked",
    "plan_content",
    "plan_sentences",
    "postprocess",
    "pronoun_allowed",
    "realize",
    "update_focus",
    "validate_bundle",
]
