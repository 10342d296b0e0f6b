"""Query pipeline: fan out to every bot, act on the one the Manager picks.

All five bots are dispatched the moment a query arrives; when the Manager's
class comes back, the matching bot's reply is parsed and applied and the rest
are discarded unread, so a misbehaving bot can never touch session state.
A few conversational shortcuts (detail follow-up, more options, stop, help)
are settled before any bot is consulted.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .backends import BOT_ROLES, BotBackend
from .bots import (
    Intent,
    PilotCommand,
    PilotIntent,
    classify_intent,
    classify_pilot,
    encyclopedia_query,
    extract_transform,
    guardian_reply,
    load_prompt,
)
from .camera import ViewTransform
from .errors import (
    AtRoot,
    BackendUnavailable,
    EmptyHistory,
    MalformedTransform,
    NoChildren,
    NonPositiveZoom,
    UnparseableReply,
    UnresolvedTarget,
    ValidationError,
)
from .exploration import end_plan, next_options, run_exploration
from .narration import generate_narration
from .session import SessionState
from .timeline import Scene, SceneKind


@dataclass
class QueryResult:
    """What one query did: the chosen class, spoken line, and queued scenes.

    intent is None for conversational shortcuts that never reach the bots.
    transform is set only when the Explorer handled the query.
    """

    intent: Optional[Intent]
    narration: str
    scenes: list[Scene] = field(default_factory=list)
    transform: Optional[ViewTransform] = None
    options: list[str] = field(default_factory=list)
    awaiting_detail: bool = False


_AFFIRM = re.compile(
    r"\b(yes|yeah|yep|sure|please|go on|more|ok|okay|absolutely|definitely)\b", re.I
)
_DENY = re.compile(r"\b(no|nope|not now|no thanks|skip|later|nah)\b", re.I)
_MORE_OPTIONS = re.compile(
    r"\b(show me more|more options|other options|what else|anything else|next options)\b",
    re.I,
)
_END_PLAN = re.compile(
    r"\b(stop|enough|that's all|thats all|no more|quit|nothing else|done)\b", re.I
)
_HELP = re.compile(
    r"\b(help|what can (you|i) (do|say)|how does this work)\b", re.I
)


def bundled_prompts() -> dict[str, str]:
    return {role: load_prompt(role) for role in BOT_ROLES}


def introduce(session: SessionState) -> QueryResult:
    """Welcome line on session start; the default pose already frames the model."""
    line = generate_narration(
        "introduction", {"model": session.tree.model_name}, rng=session.rng
    )
    scene = _speak(session, line)
    return QueryResult(None, line, [scene])


def process_query(
    query: str,
    session: SessionState,
    backends: dict[str, BotBackend],
    prompts: Optional[dict[str, str]] = None,
) -> QueryResult:
    """Run one visitor query end to end against the session."""
    if not query or not query.strip():
        raise ValidationError("query must be non-empty")
    session.conversation_log.append(("user", query))
    if prompts is None:
        prompts = bundled_prompts()

    shortcut = _conversational_shortcut(query, session)
    if shortcut is not None:
        return shortcut

    pool = ThreadPoolExecutor(max_workers=5, thread_name_prefix="bots")
    try:
        futures = {
            "manager": pool.submit(
                classify_intent, query, backends["manager"], prompts["manager"]
            ),
            "pilot": pool.submit(
                classify_pilot, query, session.tree, backends["pilot"], prompts["pilot"]
            ),
            "explorer": pool.submit(
                extract_transform, query, backends["explorer"], prompts["explorer"]
            ),
            "encyclopedia": pool.submit(
                encyclopedia_query,
                query,
                session.tree,
                backends["encyclopedia"],
                prompts["encyclopedia"],
            ),
            "guardian": pool.submit(
                guardian_reply,
                query,
                backends["guardian"],
                session.tree.model_name,
                prompts["guardian"],
            ),
        }
        intent: Optional[Intent] = None
        try:
            intent = futures["manager"].result()
            return _act(intent, futures, query, session)
        except BackendUnavailable:
            return _spoken_result(intent, "apology", {}, session)
        except (UnparseableReply, MalformedTransform, NonPositiveZoom):
            return _spoken_result(intent, "apology", {}, session)
        except UnresolvedTarget:
            return _spoken_result(
                intent, "unresolved-target", {"model": session.tree.model_name}, session
            )
    finally:
        # never block on bots whose results we are not going to read
        pool.shutdown(wait=False)


# --- shortcut handling ---

def _conversational_shortcut(
    query: str, session: SessionState
) -> Optional[QueryResult]:
    # only short utterances count; "Please show me the head." must still route
    short = len(re.findall(r"[A-Za-z']+", query)) <= 4

    if session.awaiting_detail is not None:
        detailed = session.awaiting_detail
        session.awaiting_detail = None
        if short and _AFFIRM.search(query):
            scene = _speak(session, detailed)
            return QueryResult(
                None, detailed, [scene], options=list(session.pending_options)
            )
        if short and _DENY.search(query):
            return _spoken_result(None, "detail-declined", {}, session)
        # neither: the offer lapses and the query is handled normally

    if not short:
        return None

    if _MORE_OPTIONS.search(query):
        options = next_options(session)
        if options:
            names = [session.tree.node(n).name for n in options]
            return _spoken_result(None, "option-prompt", {"options": names}, session)
        return _spoken_result(None, "plan-end", {}, session)

    if _END_PLAN.search(query):
        end_plan(session)
        return _spoken_result(None, "plan-end", {}, session)

    if _HELP.search(query):
        return _spoken_result(None, "help", {}, session)

    return None


# --- acting on the selected bot ---

def _act(intent, futures, query: str, session: SessionState) -> QueryResult:
    tree = session.tree

    if intent is Intent.CUTTING_PLANE:
        # no sub-bot: the command goes straight to the visual state
        node = tree.node(session.current_node_id)
        session.set_cutting_plane(query)
        return _spoken_result(intent, "cutting-ack", {"node": node.name}, session)

    if intent is Intent.PILOT:
        return _run_pilot(futures["pilot"].result(), session)

    if intent is Intent.EXPLORER:
        transform = futures["explorer"].result()
        session.apply_view_transform(transform)
        result = _spoken_result(
            intent, "explorer-ack", {"direction": _describe(transform)}, session
        )
        result.transform = transform
        return result

    if intent is Intent.ENCYCLOPEDIA:
        answer = futures["encyclopedia"].result()
        options = run_exploration(session, query, answer.concise)
        scenes = [session.timeline.current]
        if answer.detailed.strip():
            session.awaiting_detail = answer.detailed
            scenes.append(
                _speak(session, generate_narration("detail-prompt", rng=session.rng))
            )
        if options:
            names = [tree.node(n).name for n in options]
            line = generate_narration(
                "option-prompt", {"options": names}, rng=session.rng
            )
            scenes.append(_speak(session, line))
        return QueryResult(
            intent,
            answer.concise,
            scenes,
            options=list(options),
            awaiting_detail=session.awaiting_detail is not None,
        )

    reply = futures["guardian"].result()
    scene = _speak(session, reply)
    return QueryResult(intent, reply, [scene])


def _run_pilot(command: PilotCommand, session: SessionState) -> QueryResult:
    intent = Intent.PILOT
    tree = session.tree

    if command.intent is PilotIntent.NODE_NAVIGATION:
        node = tree.node(command.target)
        session.fly_to(node.id)
        return _spoken_result(intent, "pilot-ack", {"node": node.name}, session)

    if command.intent is PilotIntent.SCALE_CHANGE:
        try:
            session.change_scale(command.direction)
        except AtRoot:
            return _spoken_result(
                intent, "at-root", {"model": tree.model_name}, session
            )
        except NoChildren:
            node = tree.node(session.current_node_id)
            return _spoken_result(intent, "no-children", {"node": node.name}, session)
        node = tree.node(session.current_node_id)
        payload = {"direction": command.direction.value, "node": node.name}
        return _spoken_result(intent, "scale-ack", payload, session)

    if command.intent is PilotIntent.RESET:
        session.reset()
        return _spoken_result(
            intent, "reset-ack", {"model": tree.model_name}, session
        )

    try:
        session.return_back()
    except EmptyHistory:
        return _spoken_result(intent, "history-empty", {}, session)
    return _spoken_result(intent, "back-ack", {}, session)


# --- small helpers ---

def _speak(session: SessionState, text: str) -> Scene:
    scene = Scene(SceneKind.SPEECH_ONLY, text)
    session.enqueue_scene(scene)
    return scene


def _spoken_result(
    intent, task_type: str, payload: dict, session: SessionState
) -> QueryResult:
    line = generate_narration(task_type, payload, rng=session.rng)
    scene = _speak(session, line)
    return QueryResult(
        intent,
        line,
        [scene],
        options=list(session.pending_options),
        awaiting_detail=session.awaiting_detail is not None,
    )


def _describe(t: ViewTransform) -> str:
    parts = []
    if t.zoom > 1:
        parts.append("closer")
    elif t.zoom < 1:
        parts.append("further out")
    if t.yaw > 0:
        parts.append("to the right")
    elif t.yaw < 0:
        parts.append("to the left")
    if t.pitch > 0:
        parts.append("over the top")
    elif t.pitch < 0:
        parts.append("toward the underside")
    if t.roll:
        parts.append("around the view axis")
    return " and ".join(parts) if parts else "right where we are"
