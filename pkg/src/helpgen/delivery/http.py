"""HTTP service: sessions, queries, and KB browsing over JSON.

The bundle is shared read-only across handlers; each session is guarded
by a lock so concurrent requests against one session serialize.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response as HttpResponse
from pydantic import BaseModel

from ..context import QUESTIONS, QuestionPoint
from ..errors import EngineError, KnowledgeAbsenceError, UnknownIdError
from ..kb.bundle import KbBundle
from .core import Session, answer, new_session


class SessionBody(BaseModel):
    expertise: str
    task: str
    language: Optional[str] = None


class ModelChangeBody(BaseModel):
    expertise: Optional[str] = None
    task: Optional[str] = None


class QueryBody(BaseModel):
    question: str
    component: str
    action: Optional[str] = None
    focus: Optional[list[str]] = None


def create_app(bundle: KbBundle) -> FastAPI:
    app = FastAPI(title="helpgen", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, Session] = {}

    @app.exception_handler(EngineError)
    async def engine_error(request: Request, exc: EngineError):
        status = 404 if isinstance(exc, UnknownIdError) else 422
        if isinstance(exc, KnowledgeAbsenceError):
            status = 422
        return JSONResponse(status_code=status, content={"error": exc.to_dict()})

    @app.post("/sessions")
    def create_session(body: SessionBody):
        bundle.expertise(body.expertise)
        bundle.kb.concept(body.task)
        if body.language is not None and body.language not in bundle.language_packs():
            raise UnknownIdError(body.language, what="language pack")
        session = new_session(body.expertise, body.task, body.language)
        sessions[session.id] = session
        return {"session_id": session.id}

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise UnknownIdError(session_id, what="session")
        return session

    @app.put("/sessions/{session_id}/model")
    def change_model(session_id: str, body: ModelChangeBody):
        session = get_session(session_id)
        with session.lock:
            if body.expertise is not None:
                bundle.expertise(body.expertise)
                session.expertise = body.expertise
            if body.task is not None:
                bundle.kb.concept(body.task)
                session.task = body.task
        return HttpResponse(status_code=204)

    @app.post("/sessions/{session_id}/query")
    def query(session_id: str, body: QueryBody):
        session = get_session(session_id)
        with session.lock:
            point = QuestionPoint(
                question=body.question,
                component=body.component,
                task=session.task,
                expertise=session.expertise,
                focus=tuple(body.focus) if body.focus is not None else session.discourse.focus,
                action=body.action,
            )
            bundle.kb.node(point.component)
            response = answer(point, session, bundle)
        return response.to_wire()

    @app.get("/kb/components")
    def components():
        def tree(node_id: str) -> dict:
            return {
                "id": node_id,
                "name": bundle.display_name(node_id),
                "children": [tree(child) for child in bundle.kb.parts_of(node_id)],
            }

        return {"roots": [tree(r) for r in bundle.kb.part_tree_roots()]}

    @app.get("/kb/questions")
    def questions():
        return {"questions": list(QUESTIONS)}

    @app.get("/kb/models")
    def models():
        return {
            "expertise": sorted(bundle.expertise_models),
            "tasks": sorted(bundle.task_ids()),
        }

    return app


def serve(bundle: KbBundle, port: int, host: str = "127.0.0.1"):
    import uvicorn

    uvicorn.run(create_app(bundle), host=host, port=port, log_level="warning")
