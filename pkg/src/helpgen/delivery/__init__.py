"""Delivery: response assembly, sessions, CLI, HTTP service, static export."""

from .core import Followup, Response, Session, answer, answer_once, new_session
from .export import export_static

__all__ = [
    "Followup",
    "Response",
    "Session",
    "answer",
    "answer_once",
    "export_static",
    "new_session",
]
