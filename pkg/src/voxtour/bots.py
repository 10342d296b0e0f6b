"""Role bots: typed front doors to the completion backends.

Each function sends one bot's system prompt plus the visitor's query to a
backend and parses the free-text reply into a typed instruction. Prompts are
plain text assets, one file per bot, so wording can be iterated without
touching code; slots like {model} are filled at call time.
"""

from __future__ import annotations

import enum
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from .backends import BOT_ROLES, BotBackend
from .camera import ViewTransform, parse_transform
from .errors import (
    BackendUnavailable,
    MalformedTransform,
    NonPositiveZoom,
    ParseError,
    UnparseableReply,
    UnresolvedTarget,
    ValidationError,
)
from .keywords import select_focus_node
from .scene_model import SceneTree
from .session import ScaleDirection


class Intent(enum.Enum):
    PILOT = "Pilot"
    CUTTING_PLANE = "CuttingPlane"
    EXPLORER = "Explorer"
    ENCYCLOPEDIA = "Encyclopedia"
    GUARDIAN = "Guardian"


class PilotIntent(enum.Enum):
    NODE_NAVIGATION = "node_navigation"
    SCALE_CHANGE = "scale_change"
    RESET = "reset"
    RETURN_BACK = "return_back"


@dataclass(frozen=True)
class PilotCommand:
    intent: PilotIntent
    target: Optional[str] = None  # node id, node navigation only
    direction: Optional[ScaleDirection] = None  # scale change only


@dataclass(frozen=True)
class EncyclopediaAnswer:
    concise: str
    detailed: str = ""


# --- prompt assets ---

def load_prompt(role: str, prompt_dir: Optional[Path] = None) -> str:
    if role not in BOT_ROLES:
        raise ValidationError(f"no bot role named {role!r}")
    try:
        if prompt_dir is None:
            source = resources.files("voxtour").joinpath(f"assets/prompts/{role}.txt")
            return source.read_text(encoding="utf-8")
        return (Path(prompt_dir) / f"{role}.txt").read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {role} prompt: {exc}") from exc


@lru_cache(maxsize=None)
def _bundled_prompt(role: str) -> str:
    return load_prompt(role)


def fill_prompt(template: str, **slots: str) -> str:
    # plain replace: prompt files carry literal braces (the transform format)
    for name, value in slots.items():
        template = template.replace("{" + name + "}", value)
    return template


# --- bot calls ---

_INTENT_LABELS = {
    "pilot": Intent.PILOT,
    "cuttingplane": Intent.CUTTING_PLANE,
    "explorer": Intent.EXPLORER,
    "encyclopedia": Intent.ENCYCLOPEDIA,
    "guardian": Intent.GUARDIAN,
}


def classify_intent(
    query: str, backend: BotBackend, prompt: Optional[str] = None
) -> Intent:
    """Manager bot: route a query to one of the five classes."""
    if not query.strip():
        raise ValidationError("query must be non-empty")
    system = prompt if prompt is not None else _bundled_prompt("manager")
    reply = backend.complete(system, [("user", query)])
    label = re.sub(r"[^a-z]", "", reply.lower())
    intent = _INTENT_LABELS.get(label)
    if intent is None:
        raise UnparseableReply(f"manager reply {reply!r} is not a known class")
    return intent


_DIGIT_RE = re.compile(r"\s*([1-4])\s*\.?\s*$")

_UP_WORDS = re.compile(r"\b(up|out|outward|larger|bigger|wider|whole|coarser)\b", re.I)


def classify_pilot(
    query: str,
    tree: SceneTree,
    backend: BotBackend,
    prompt: Optional[str] = None,
) -> PilotCommand:
    """Pilot bot: one of four navigation commands.

    A direct mention of any structure wins outright ("go back to the Capsid"
    navigates to the capsid, it does not pop history), so the backend is only
    consulted when the query names nothing.
    """
    mention = select_focus_node(tree, query)
    if mention is not None:
        return PilotCommand(PilotIntent.NODE_NAVIGATION, target=mention)
    system = prompt if prompt is not None else _bundled_prompt("pilot")
    reply = backend.complete(system, [("user", query)])
    found = _DIGIT_RE.fullmatch(reply)
    if not found:
        raise UnparseableReply(f"pilot reply {reply!r} is not a digit 1-4")
    digit = found.group(1)
    if digit == "1":
        raise UnresolvedTarget(f"no structure in {query!r} resolves in the tree")
    if digit == "2":
        direction = ScaleDirection.UP if _UP_WORDS.search(query) else ScaleDirection.DOWN
        return PilotCommand(PilotIntent.SCALE_CHANGE, direction=direction)
    if digit == "3":
        return PilotCommand(PilotIntent.RESET)
    return PilotCommand(PilotIntent.RETURN_BACK)


def extract_transform(
    query: str, backend: BotBackend, prompt: Optional[str] = None
) -> ViewTransform:
    """Explorer bot: a relative camera move in the {z,y,p,r} wire form."""
    system = prompt if prompt is not None else _bundled_prompt("explorer")
    reply = backend.complete(system, [("user", query)])
    transform = parse_transform(reply)
    values = (transform.zoom, transform.yaw, transform.pitch, transform.roll)
    if not all(math.isfinite(v) for v in values):
        raise MalformedTransform(f"non-finite transform component in {reply!r}")
    if transform.zoom <= 0:
        raise NonPositiveZoom(f"zoom factor {transform.zoom} must be positive")
    return transform


def encyclopedia_query(
    query: str,
    tree: SceneTree,
    backend: BotBackend,
    prompt: Optional[str] = None,
) -> EncyclopediaAnswer:
    """Encyclopedia bot: concise and detailed segments, fetched concurrently.

    The system prompt embeds the model's structure names so answers use tree
    vocabulary the exploration step can pick up.
    """
    template = prompt if prompt is not None else _bundled_prompt("encyclopedia")
    names = ", ".join(node.name for node in tree.nodes.values())

    def ask(segment: str) -> str:
        system = fill_prompt(
            template, model=tree.model_name, names=names, segment=segment
        )
        return backend.complete(system, [("user", query)])

    with ThreadPoolExecutor(max_workers=2) as pool:
        concise_future = pool.submit(ask, "concise")
        detailed_future = pool.submit(ask, "detailed")
        concise = concise_future.result()
        detailed = detailed_future.result()
    if not concise.strip():
        raise BackendUnavailable("backend returned an empty concise segment")
    return EncyclopediaAnswer(concise=concise, detailed=detailed)


def guardian_reply(
    query: str,
    backend: BotBackend,
    model_name: str = "this model",
    prompt: Optional[str] = None,
) -> str:
    """Guardian bot: answer the off-topic ask briefly, then pivot back."""
    template = prompt if prompt is not None else _bundled_prompt("guardian")
    system = fill_prompt(template, model=model_name)
    return backend.complete(system, [("user", query)])
