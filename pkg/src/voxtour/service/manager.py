"""Session registry: ids, per-session locks, the tick clock, idle reclaim.

Writes to one session are serialized by a non-blocking lock; a second
writer gets Busy instead of queueing, because a kiosk that silently stacks
commands ends up narrating to a visitor who already walked away. Reads
block briefly instead so they always see a settled state.
"""

from __future__ import annotations

import random
import threading
import time
import uuid
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..config import AppConfig, make_backends, make_prompts
from ..errors import Busy, UnknownModel, UnknownSession
from ..pipeline import QueryResult, introduce
from ..scene_model import SceneTree, load_scene_tree
from ..session import SessionState


@dataclass
class _Entry:
    session: SessionState
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_seen: float = field(default_factory=time.monotonic)


class SessionManager:
    def __init__(self, config: AppConfig):
        self.config = config
        self.backends = make_backends(config)
        self.prompts = make_prompts(config)
        self._entries: dict[str, _Entry] = {}
        self._registry = threading.Lock()
        self._trees: dict[str, SceneTree] = {}

    # --- model catalogue ---

    def tree(self, model_key: str) -> SceneTree:
        path = self.config.models.get(model_key)
        if path is None:
            raise UnknownModel(f"no scene model named {model_key!r}")
        if model_key not in self._trees:
            self._trees[model_key] = load_scene_tree(path)
        return self._trees[model_key]

    def model_catalogue(self) -> list[dict]:
        out = []
        for key in sorted(self.config.models):
            tree = self.tree(key)
            out.append(
                {"name": key, "model_name": tree.model_name, "nodes": len(tree.nodes)}
            )
        return out

    # --- lifecycle ---

    def create(self, model_key: str) -> tuple[str, SessionState, QueryResult]:
        tree = self.tree(model_key)
        rng = random.Random(self.config.seed)
        session = SessionState(
            tree, rng=rng, spoken_rate_wps=self.config.spoken_rate_wps
        )
        intro = introduce(session)
        session_id = uuid.uuid4().hex
        with self._registry:
            self._entries[session_id] = _Entry(session)
        return session_id, session, intro

    def _entry(self, session_id: str) -> _Entry:
        with self._registry:
            entry = self._entries.get(session_id)
        if entry is None:
            raise UnknownSession(f"no session {session_id!r}")
        entry.last_seen = time.monotonic()
        return entry

    @contextmanager
    def exclusive(self, session_id: str) -> Iterator[SessionState]:
        """Writer access; raises Busy instead of waiting."""
        entry = self._entry(session_id)
        if not entry.lock.acquire(blocking=False):
            raise Busy("a command for this session is still being handled")
        try:
            yield entry.session
        finally:
            entry.lock.release()

    @contextmanager
    def shared(self, session_id: str) -> Iterator[SessionState]:
        """Reader access; waits for any in-flight write to settle."""
        entry = self._entry(session_id)
        with entry.lock:
            yield entry.session

    # --- background clock ---

    def tick_all(self, dt: float) -> None:
        """Advance every session with live playback; skip busy ones."""
        with self._registry:
            entries = list(self._entries.values())
        for entry in entries:
            if not entry.lock.acquire(blocking=False):
                continue
            try:
                session = entry.session
                if session.animating or session.speaking:
                    session.tick(dt)
            finally:
                entry.lock.release()

    def sweep(self, now: Optional[float] = None) -> int:
        """Drop sessions idle past the configured timeout."""
        now = time.monotonic() if now is None else now
        cutoff = now - self.config.idle_timeout_s
        with self._registry:
            stale = [sid for sid, e in self._entries.items() if e.last_seen < cutoff]
            for sid in stale:
                del self._entries[sid]
        return len(stale)

    def __len__(self) -> int:
        with self._registry:
            return len(self._entries)
