"""FastAPI service wrapping the engine's session facade.

One process hosts many sessions; a global lock serializes command
application (the engine is confined to one logical thread at a time).
Stateless helpers (/replay, /run, /validate, /fmt) power the CLI.
"""

from __future__ import annotations

import pathlib
import threading
import uuid

from fastapi import FastAPI, HTTPException, Response
from fastapi.staticfiles import StaticFiles

from .. import demos
from ..blocks import validate
from ..announce import Verbosity
from ..errors import EngineError, UnknownBlock
from ..navigation import BlockFocus
from ..runtime import run as run_program
from ..serialize import parse_workspace, workspace_text
from ..session import Session, new_session
from ..shortcuts import load_keymap_overrides
from ..library import standard_block_set
from .models import (
    CreateSessionRequest,
    CursorRequest,
    DemoList,
    DemoResponse,
    FmtResponse,
    KeyRequest,
    KeyResponse,
    ReplayRequest,
    RunResponse,
    ScriptRequest,
    SessionResponse,
    ValidateResponse,
    ViolationModel,
    WorkspaceRequest,
    AnnouncementModel,
)
from .render import render_model, session_state


def _bad_request(exc: EngineError) -> HTTPException:
    return HTTPException(status_code=422, detail={"code": exc.code, "message": exc.message})


def _check_invariants(session: Session) -> None:
    problems = validate(session.workspace)
    if problems:  # pragma: no cover - an engine bug, not a user error
        raise HTTPException(
            status_code=500,
            detail={
                "code": "invariant_breach",
                "message": "; ".join(str(p) for p in problems[:5]),
            },
        )


def _build_session(request: CreateSessionRequest) -> Session:
    if request.workspace is not None and request.demo is not None:
        raise HTTPException(
            status_code=422,
            detail={"code": "bad_request", "message": "pass workspace or demo, not both"},
        )
    try:
        if request.demo is not None:
            try:
                text = demos.demo_text(request.demo)
            except KeyError:
                raise HTTPException(
                    status_code=404,
                    detail={"code": "unknown_demo", "message": request.demo},
                ) from None
            ws = parse_workspace(text, standard_block_set())
        elif request.workspace is not None:
            ws = parse_workspace(request.workspace, standard_block_set())
        else:
            ws = None
        session = new_session(ws)
        if request.keymap:
            session.keymap = load_keymap_overrides(request.keymap)
        session.verbosity = Verbosity(request.verbosity)
    except EngineError as exc:
        raise _bad_request(exc) from None
    except ValueError as exc:
        raise HTTPException(
            status_code=422, detail={"code": "bad_request", "message": str(exc)}
        ) from None
    return session


def create_app(ui_dir: str | pathlib.Path | None = None) -> FastAPI:
    app = FastAPI(title="eaf engine service", version="0.1.0")
    sessions: dict[str, Session] = {}
    lock = threading.Lock()

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(
                status_code=404,
                detail={"code": "unknown_session", "message": session_id},
            )
        return session

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "sessions": len(sessions)}

    @app.get("/demos", response_model=DemoList)
    def list_demos() -> DemoList:
        return DemoList(demos=demos.list_demos())

    @app.get("/demos/{name}", response_model=DemoResponse)
    def get_demo(name: str) -> DemoResponse:
        try:
            return DemoResponse(name=name, workspace=demos.demo_text(name))
        except KeyError:
            raise HTTPException(
                status_code=404, detail={"code": "unknown_demo", "message": name}
            ) from None

    @app.post("/sessions", response_model=SessionResponse)
    def create_session(request: CreateSessionRequest) -> SessionResponse:
        session = _build_session(request)
        session_id = uuid.uuid4().hex
        with lock:
            sessions[session_id] = session
        return SessionResponse(
            state=session_state(session_id, session), render=render_model(session)
        )

    @app.get("/sessions/{session_id}", response_model=SessionResponse)
    def get_session_view(session_id: str) -> SessionResponse:
        session = get_session(session_id)
        with lock:
            return SessionResponse(
                state=session_state(session_id, session), render=render_model(session)
            )

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str) -> Response:
        with lock:
            sessions.pop(session_id, None)
        return Response(status_code=204)

    @app.post("/sessions/{session_id}/keys", response_model=KeyResponse)
    def apply_key(session_id: str, request: KeyRequest) -> KeyResponse:
        session = get_session(session_id)
        with lock:
            try:
                command, announcements = session.apply_detailed(request.chord, request.arg)
            except EngineError as exc:
                raise _bad_request(exc) from None
            _check_invariants(session)
            return KeyResponse(
                command=command,
                announcements=[
                    AnnouncementModel(
                        text=a.text,
                        politeness=a.politeness.value,
                        category=a.category.value,
                    )
                    for a in announcements
                ],
                state=session_state(session_id, session),
                render=render_model(session),
            )

    @app.post("/sessions/{session_id}/cursor", response_model=SessionResponse)
    def set_cursor(session_id: str, request: CursorRequest) -> SessionResponse:
        session = get_session(session_id)
        with lock:
            try:
                session.workspace.block(request.block)
            except UnknownBlock as exc:
                raise _bad_request(exc) from None
            session.cursor = BlockFocus(request.block)
            return SessionResponse(
                state=session_state(session_id, session), render=render_model(session)
            )

    @app.get("/sessions/{session_id}/workspace")
    def get_workspace(session_id: str) -> Response:
        session = get_session(session_id)
        with lock:
            return Response(
                content=workspace_text(session.workspace), media_type="application/json"
            )

    @app.post("/sessions/{session_id}/script")
    def run_script(session_id: str, request: ScriptRequest) -> Response:
        session = get_session(session_id)
        with lock:
            try:
                transcript = session.replay(request.script)
            except EngineError as exc:
                raise _bad_request(exc) from None
            _check_invariants(session)
            return Response(content=transcript.text(), media_type="application/json")

    @app.post("/replay")
    def replay(request: ReplayRequest) -> Response:
        session = _build_session(
            CreateSessionRequest(
                workspace=request.workspace,
                keymap=request.keymap,
                verbosity=request.verbosity,
            )
        )
        try:
            transcript = session.replay(request.script)
        except EngineError as exc:
            raise _bad_request(exc) from None
        _check_invariants(session)
        return Response(content=transcript.text(), media_type="application/json")

    @app.post("/run", response_model=RunResponse)
    def run_workspace(request: WorkspaceRequest) -> RunResponse:
        try:
            ws = parse_workspace(request.workspace, standard_block_set())
        except EngineError as exc:
            raise _bad_request(exc) from None
        output = run_program(ws)
        return RunResponse(lines=output.lines, status=output.status, message=output.message)

    @app.post("/validate", response_model=ValidateResponse)
    def validate_workspace(request: WorkspaceRequest) -> ValidateResponse:
        try:
            ws = parse_workspace(request.workspace, standard_block_set())
        except EngineError as exc:
            # Schema/parse failures are reported as violations, not 422s,
            # so `eaf validate` can print them uniformly.
            return ValidateResponse(
                violations=[
                    ViolationModel(code=exc.code, subject="file", detail=exc.message)
                ]
            )
        return ValidateResponse(
            violations=[
                ViolationModel(code=v.code, subject=v.subject, detail=v.detail)
                for v in validate(ws)
            ]
        )

    @app.post("/fmt", response_model=FmtResponse)
    def fmt_workspace(request: WorkspaceRequest) -> FmtResponse:
        try:
            ws = parse_workspace(request.workspace, standard_block_set())
        except EngineError as exc:
            raise _bad_request(exc) from None
        formatted = workspace_text(ws)
        return FmtResponse(formatted=formatted, changed=formatted != request.workspace)

    if ui_dir is None:
        candidate = pathlib.Path(__file__).resolve().parents[3] / "frontend"
        ui_dir = candidate if candidate.is_dir() else None
    if ui_dir is not None and pathlib.Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


app = create_app()
