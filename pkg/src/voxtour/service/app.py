"""HTTP gateway: a thin FastAPI layer over SessionManager and the pipeline."""

from __future__ import annotations

import threading
import time
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..config import AppConfig, load_config
from ..errors import (
    Busy,
    IndexOutOfRange,
    NoPendingOptions,
    ParseError,
    UnknownModel,
    UnknownNode,
    UnknownSession,
    ValidationError,
    VoxtourError,
)
from ..exploration import select_option
from ..pipeline import QueryResult, process_query
from ..session import SessionState, speech_seconds
from .manager import SessionManager
from .schemas import (
    AdvanceDocument,
    CreateSessionRequest,
    ModelsDocument,
    NodeRef,
    OptionDoc,
    QueryDocument,
    QueryRequest,
    SceneDoc,
    SelectionDocument,
    SelectRequest,
    SessionCreated,
    SpeechEvent,
    StateDocument,
    TransformDoc,
)

_LOG_TAIL = 12

_STATUS_FOR = (
    (UnknownModel, 404),
    (UnknownSession, 404),
    (UnknownNode, 404),
    (Busy, 409),
    (NoPendingOptions, 409),
    (IndexOutOfRange, 400),
    (ValidationError, 400),
    (ParseError, 400),
)


def create_app(config: Optional[AppConfig] = None) -> FastAPI:
    config = config or load_config()
    manager = SessionManager(config)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        stop = threading.Event()
        thread = None
        if config.tick_hz > 0:
            period = 1.0 / config.tick_hz

            def loop():
                last = time.monotonic()
                while not stop.wait(period):
                    now = time.monotonic()
                    manager.tick_all(now - last)
                    last = now
                    manager.sweep(now)

            thread = threading.Thread(target=loop, name="voxtour-tick", daemon=True)
            thread.start()
        try:
            yield
        finally:
            stop.set()
            if thread is not None:
                thread.join(timeout=2.0)

    app = FastAPI(title="voxtour gateway", lifespan=lifespan)
    # the operator UI is served as plain static files from anywhere
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.manager = manager
    app.state.config = config

    def spoken(text: str) -> SpeechEvent:
        return SpeechEvent(
            direction="Out",
            text=text,
            duration_estimate=speech_seconds(text, config.spoken_rate_wps),
        )

    def state_doc(session: SessionState) -> StateDocument:
        doc = session.snapshot()
        doc["log"] = [tuple(pair) for pair in session.conversation_log[-_LOG_TAIL:]]
        return StateDocument(**doc)

    def node_ref(session: SessionState, node_id: str) -> NodeRef:
        node = session.tree.node(node_id)
        return NodeRef(id=node.id, name=node.name, label=node.label)

    def option_docs(session: SessionState, ids: list[str]) -> list[OptionDoc]:
        return [
            OptionDoc(index=i, id=nid, name=session.tree.node(nid).name)
            for i, nid in enumerate(ids)
        ]

    def scene_docs(session: SessionState, result: QueryResult) -> list[SceneDoc]:
        docs = []
        for scene in result.scenes:
            target = None
            if scene.target_node_id is not None:
                target = node_ref(session, scene.target_node_id)
            docs.append(
                SceneDoc(kind=scene.kind.value, target=target, speech=scene.speech)
            )
        return docs

    @app.exception_handler(VoxtourError)
    async def domain_error(request: Request, exc: VoxtourError):
        status = 400
        for cls, code in _STATUS_FOR:
            if isinstance(exc, cls):
                status = code
                break
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/models", response_model=ModelsDocument)
    def list_models():
        return ModelsDocument(models=manager.model_catalogue())

    @app.post("/sessions", response_model=SessionCreated)
    def create_session(body: CreateSessionRequest):
        session_id, session, intro = manager.create(body.model)
        return SessionCreated(
            session_id=session_id,
            model=body.model,
            model_name=session.tree.model_name,
            narration=intro.narration,
            speech=spoken(intro.narration),
            state=state_doc(session),
        )

    @app.post("/sessions/{session_id}/query", response_model=QueryDocument)
    def post_query(session_id: str, body: QueryRequest):
        with manager.exclusive(session_id) as session:
            result = process_query(
                body.text, session, manager.backends, manager.prompts
            )
            transform = None
            if result.transform is not None:
                t = result.transform
                transform = TransformDoc(
                    zoom=t.zoom, yaw=t.yaw, pitch=t.pitch, roll=t.roll
                )
            return QueryDocument(
                session_id=session_id,
                intent=result.intent.value if result.intent else None,
                narration=result.narration,
                speech=spoken(result.narration),
                scenes=scene_docs(session, result),
                options=option_docs(session, result.options),
                awaiting_detail=result.awaiting_detail,
                transform=transform,
                state=state_doc(session),
            )

    @app.post("/sessions/{session_id}/select", response_model=SelectionDocument)
    def post_selection(session_id: str, body: SelectRequest):
        with manager.exclusive(session_id) as session:
            scene = select_option(session, body.index)
            node = node_ref(session, scene.target_node_id)
            return SelectionDocument(
                session_id=session_id,
                node=node,
                narration=scene.speech,
                speech=spoken(scene.speech),
                scene=SceneDoc(
                    kind=scene.kind.value, target=node, speech=scene.speech
                ),
                options=option_docs(session, list(session.pending_options)),
                state=state_doc(session),
            )

    @app.get("/sessions/{session_id}/state", response_model=StateDocument)
    def get_state(session_id: str):
        with manager.shared(session_id) as session:
            return state_doc(session)

    @app.post("/sessions/{session_id}/speech-complete", response_model=AdvanceDocument)
    def speech_complete(session_id: str):
        with manager.exclusive(session_id) as session:
            signals = session.speech_complete()
            return AdvanceDocument(
                session_id=session_id,
                signals=[s.value for s in signals],
                state=state_doc(session),
            )

    return app
