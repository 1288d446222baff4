"""FastAPI application wrapping the core package.

Endpoints (all JSON over HTTP/1.1):

    POST /v1/translate              {text, detail} -> {notation, document}
    POST /v1/check                  {text} -> {issues}
    POST /v1/sessions               {text} -> session state
    GET  /v1/sessions/{id}?version=k
    POST /v1/sessions/{id}/preedit  {tokenIndex, replacement, span}
    POST /v1/sessions/{id}/command  {position, verb, args}
    GET  /v1/lexicon/entry?root=...&side=source|target

Errors come back as a structured body {code, message, position}:
400 malformed body, 404 unknown session, 422 invalid command/position.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..edit import EditCommand, EditError, check_pre_edit
from ..lexicon import Lexicon
from ..morph import SynthesisError
from ..notation import render
from ..pipeline import run_pipeline, translate_text
from . import schemas
from .sessions import Session, SessionStore, UnknownSessionError


def _error(status: int, code: str, message: str, position: str | None = None) -> JSONResponse:
    body = schemas.ErrorBody(code=code, message=message, position=position)
    return JSONResponse(status_code=status, content=body.model_dump())


def _session_response(session: Session, version: int | None = None) -> schemas.SessionResponse:
    doc = session.document(version)
    return schemas.SessionResponse(
        id=session.id,
        version=session.version if version is None else version,
        source=session.source,
        issues=[schemas.issue_model(i) for i in session.issues],
        document=schemas.document_model(doc),
        notation=render(doc, 2),
    )


def create_app(lexicon: Lexicon, journal_path: str | None = None,
               ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="anusaaraka", version="0.1.0")
    store = SessionStore(lexicon, journal_path)
    app.state.lexicon = lexicon
    app.state.sessions = store

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return _error(400, "malformed", str(exc.errors()[:1]))

    @app.exception_handler(UnknownSessionError)
    async def unknown_session(request: Request, exc: UnknownSessionError):
        return _error(404, "unknown-session", f"no session {exc.args[0]}")

    @app.exception_handler(EditError)
    async def bad_command(request: Request, exc: EditError):
        return _error(422, "invalid-command", str(exc))

    @app.exception_handler(SynthesisError)
    async def synthesis_failure(request: Request, exc: SynthesisError):
        return _error(422, "synthesis-failure", str(exc))

    @app.post("/v1/translate", response_model=schemas.TranslateResponse)
    def translate(body: schemas.TranslateRequest):
        doc = run_pipeline(body.text, lexicon)
        return schemas.TranslateResponse(
            notation=translate_text(body.text, lexicon, body.detail),
            document=schemas.document_model(doc),
        )

    @app.post("/v1/check", response_model=schemas.CheckResponse)
    def check(body: schemas.CheckRequest):
        issues = check_pre_edit(body.text, lexicon)
        return schemas.CheckResponse(issues=[schemas.issue_model(i) for i in issues])

    @app.post("/v1/sessions", response_model=schemas.SessionResponse)
    def create_session(body: schemas.SessionCreateRequest):
        return _session_response(store.create(body.text))

    @app.get("/v1/sessions/{session_id}", response_model=schemas.SessionResponse)
    def get_session(session_id: str, version: int | None = Query(default=None)):
        session = store.get(session_id)
        try:
            return _session_response(session, version)
        except IndexError as exc:
            raise EditError(str(exc))

    @app.post("/v1/sessions/{session_id}/preedit", response_model=schemas.SessionResponse)
    def preedit(session_id: str, body: schemas.PreEditRequest):
        try:
            session = store.apply_preedit(session_id, body.tokenIndex,
                                          body.replacement, body.span)
        except IndexError as exc:
            raise EditError(str(exc))
        return _session_response(session)

    @app.post("/v1/sessions/{session_id}/command", response_model=schemas.SessionResponse)
    def command(session_id: str, body: schemas.CommandRequest):
        try:
            position = tuple(int(p) for p in body.position.split("."))
        except ValueError:
            raise EditError(f"bad position {body.position!r}")
        if len(position) not in (2, 3):
            raise EditError(f"bad position {body.position!r}")
        session = store.apply_command(
            session_id, EditCommand(position, body.verb, tuple(body.args))
        )
        return _session_response(session)

    @app.get("/v1/lexicon/entry", response_model=schemas.EntryResponse)
    def lexicon_entry(root: str, side: str = "source"):
        if side not in ("source", "target"):
            raise EditError(f"side must be source or target, got {side!r}")
        chosen = lexicon.source if side == "source" else lexicon.target
        entries = [
            schemas.EntryModel(
                root=e.root, category=e.category, paradigm=e.paradigm,
                features=e.features.format(), gloss=e.gloss,
            )
            for e in chosen.lookup_root(root)
        ]
        return schemas.EntryResponse(root=root, side=side, entries=entries)

    static_dir = Path(ui_dir) if ui_dir else Path("frontend/dist")
    if static_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
