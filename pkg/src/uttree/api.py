"""HTTP service exposing the engine to the dashboard.

GETs are pure reads; ``POST /sessions`` is the only mutation and is
serialized through a process-wide lock to honour the store's
single-writer contract.  Every non-2xx response body has the shape
``{"status": ..., "code": ..., "detail": ...}``.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from .jsonutil import round_floats
from .core import LearningSession, format_timestamp
from .engine import Engine
from .errors import (
    ConflictError,
    ConfigurationError,
    CorruptionError,
    InvalidArgumentError,
    InvalidDocumentError,
    MissingDefinitionError,
    NotInitializedError,
    SequenceInvalidError,
    UnknownDocumentError,
    UnknownKnowledgePointError,
    UttreeError,
)
from .recommend import POLICY_MIN_COUNT, POLICY_PUD
from .store import Store, default_evaluation_time
from .tree import BKP_POLICY_ASSUMED, complexity

_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (UnknownKnowledgePointError, 404),
    (UnknownDocumentError, 404),
    (ConflictError, 409),
    (SequenceInvalidError, 422),
    (MissingDefinitionError, 422),
    (InvalidDocumentError, 422),
    (InvalidArgumentError, 422),
    (ConfigurationError, 422),
    (CorruptionError, 500),
    (NotInitializedError, 500),
]


def _error_response(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "detail": detail},
    )


class SessionBody(BaseModel):
    session_id: str = Field(min_length=1)
    cessation_time: str
    duration_min: float
    shares: dict[str, float]


class SimulateBody(BaseModel):
    sequence: list[str] | None = None
    policy: str = POLICY_MIN_COUNT
    tie_break: str = "ascending-id"


def create_app(
    store_dir: str | Path,
    cors_origin: str = "*",
    ui_dir: str | Path | None = None,
) -> FastAPI:
    """Build the application over one store directory."""
    store = Store(store_dir)
    write_lock = threading.Lock()
    app = FastAPI(title="uttree", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin] if cors_origin != "*" else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def engine() -> Engine:
        return Engine(store)

    @app.exception_handler(UttreeError)
    async def handle_domain_error(_: Request, exc: UttreeError):
        for error_type, status in _STATUS_BY_ERROR:
            if isinstance(exc, error_type):
                return _error_response(status, exc.code, str(exc))
        return _error_response(500, exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_: Request, exc: RequestValidationError):
        return _error_response(422, "invalid_body", str(exc.errors()))

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_error(_: Request, exc: StarletteHTTPException):
        return _error_response(exc.status_code, "http_error", str(exc.detail))

    def ok(payload, status: int = 200) -> JSONResponse:
        return JSONResponse(status_code=status, content=round_floats(payload))

    @app.get("/kps")
    def list_kps():
        eng = engine()
        return ok(
            [
                {
                    "id": kp.id,
                    "name": kp.display_name,
                    "aliases": sorted(kp.aliases),
                    "bkp": kp.is_bkp,
                }
                for kp in eng.corpus.lexicon.values()
            ]
        )

    @app.get("/kps/{kp_id}/familiarity")
    def kp_familiarity(kp_id: str, at: str | None = None):
        eng = engine()
        eng.corpus.knowledge_point(kp_id)
        when = default_evaluation_time(at)
        value = eng.familiarity_of(kp_id, when)
        return ok(
            {
                "kp": kp_id,
                "at": format_timestamp(when),
                "familiarity": value,
                "percentage": min(value / eng.config.threshold.threshold, 1.0),
            }
        )

    @app.get("/kps/{kp_id}/tree")
    def kp_tree(kp_id: str):
        eng = engine()
        eng.corpus.knowledge_point(kp_id)
        tree = eng.tree(kp_id)
        height, node_count = complexity(tree)
        payload = tree.to_json_dict()
        payload["height"] = height
        payload["node_count"] = node_count
        return ok(payload)

    @app.get("/kps/{kp_id}/reverse")
    def kp_reverse(kp_id: str):
        eng = engine()
        eng.corpus.knowledge_point(kp_id)
        return ok(eng.reverse(kp_id).to_json_dict())

    @app.get("/kps/{kp_id}/assessment")
    def kp_assessment(kp_id: str, at: str | None = None, bkp_policy: str = BKP_POLICY_ASSUMED):
        eng = engine()
        eng.corpus.knowledge_point(kp_id)
        when = default_evaluation_time(at)
        assessment = eng.assessment(kp_id, at=when, bkp_policy=bkp_policy)
        payload = assessment.to_json_dict()
        payload["at"] = format_timestamp(when)
        payload["display_percent"] = round(assessment.pu * 100)
        return ok(payload)

    @app.post("/sessions", status_code=201)
    def post_session(body: SessionBody):
        session = LearningSession(
            session_id=body.session_id,
            cessation_time=body.cessation_time,
            duration_min=body.duration_min,
            shares=body.shares,
        )
        with write_lock:
            store.append_session(session)
        return ok({"appended": session.to_json_dict()}, status=201)

    @app.get("/sessions")
    def list_sessions():
        return ok([session.to_json_dict() for session in store.load_sessions()])

    @app.get("/recommendation")
    def recommendation(policy: str = POLICY_MIN_COUNT, at: str | None = None):
        if policy not in (POLICY_MIN_COUNT, POLICY_PUD):
            return _error_response(422, "invalid_argument", f"unknown policy {policy!r}")
        return ok(engine().recommend(policy=policy, at=at))

    @app.get("/documents")
    def list_documents():
        eng = engine()
        return ok(
            [
                {
                    "doc_id": doc.doc_id,
                    "subject_kp": doc.subject_kp,
                    "kps": list(doc.extracted_kps),
                    "text": doc.text,
                }
                for doc in eng.corpus.documents
            ]
        )

    @app.get("/documents/{doc_id}/pud")
    def document_pud(doc_id: str, at: str | None = None):
        return ok(engine().document_pud(doc_id, at))

    @app.post("/simulate")
    def run_simulation(body: SimulateBody):
        # An explicit empty sequence is a valid replay of zero steps and
        # yields the initial count row only.
        result = engine().run_simulation(
            policy=body.policy,
            tie_break="given-sequence" if body.sequence is not None else body.tie_break,
            sequence=body.sequence,
        )
        return ok(result.to_json_dict())

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
