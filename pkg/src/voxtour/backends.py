"""Completion backends behind the bots.

Two implementations of one tiny contract: a deterministic rule-table mock
that stands in for the prompted chat models during tests and offline demos,
and a chat-completions HTTP client for real deployments. The mock reads only
the query text (plus context markers embedded in the system prompt, such as
"The current model is X."), so identical inputs always produce identical
replies.
"""

from __future__ import annotations

import os
import re
import time
from dataclasses import dataclass
from typing import Optional, Protocol, Sequence

import httpx

from .errors import BackendUnavailable

Message = tuple[str, str]  # (role, text)

BOT_ROLES = ("manager", "pilot", "explorer", "encyclopedia", "guardian")


class BotBackend(Protocol):
    def complete(self, system_prompt: str, messages: Sequence[Message]) -> str:
        """Return one completion for the prompt plus conversation."""
        ...


# --- mock rule tables ---
#
# Rule order mirrors the manager prompt: interior wording beats "show me",
# view adjustments beat navigation, navigation beats question forms.

_CUTTING = re.compile(
    r"\b(interior|inside|innards|cutaway|cut|cutting|slice|cross[- ]?section)\b", re.I
)
_EXPLORER = re.compile(
    r"\b(side|close|closer|far|further|farther|top|bottom|above|below|beneath|"
    r"underneath|behind|rotate|turn|tilt|zoom|spin|orbit|twist|angle)\b",
    re.I,
)
_PILOT = re.compile(
    r"\b(show|go|take|bring|navigate|fly|jump|visit|move|back|return|reset|"
    r"start|again|level)\b",
    re.I,
)
_ENCYCLOPEDIA = re.compile(
    r"\?|\b(what|why|how|who|when|which|tell me|explain|describe)\b", re.I
)
_OFF_TOPIC = re.compile(
    r"\b(movie|film|song|music|weather|joke|sport|football|dinner|recipe|"
    r"president|news|stock|crypto|yourself|your (name|age|favorite|favourite))\b",
    re.I,
)

_RESET_WORDS = re.compile(r"\b(start|beginning|default|reset|restart|scratch|home)\b", re.I)
_SCALE_WORDS = re.compile(r"\b(level|scale|layer|tier)\b", re.I)
_RETURN_WORDS = re.compile(r"\b(back|again|last|previous|before|earlier|were)\b", re.I)

_SMALL_AMOUNT = re.compile(r"\b(little|bit|slightly|touch|tad)\b", re.I)
_MODEL_MARKER = re.compile(r"current model is ([^.\n]+)", re.I)
_DETAILED_MARKER = re.compile(r"\bwrite the detailed segment\b", re.I)


def _manager_rules(system_prompt: str, query: str) -> str:
    if _OFF_TOPIC.search(query):
        return "Guardian"
    if _CUTTING.search(query):
        return "CuttingPlane"
    if _EXPLORER.search(query):
        return "Explorer"
    if _PILOT.search(query):
        return "Pilot"
    if _ENCYCLOPEDIA.search(query):
        return "Encyclopedia"
    return "Guardian"


def _pilot_rules(system_prompt: str, query: str) -> str:
    # reset before return-back: "go back to the start" is a reset
    if _RESET_WORDS.search(query):
        return "3"
    if _SCALE_WORDS.search(query):
        return "2"
    if _RETURN_WORDS.search(query):
        return "4"
    return "1"


def _explorer_rules(system_prompt: str, query: str) -> str:
    q = query.lower()
    m = 30.0 if _SMALL_AMOUNT.search(q) else 90.0

    def has(pattern: str) -> bool:
        return re.search(pattern, q) is not None

    if has(r"\btoo close\b|\bfurther\b|\bfarther\b|\bzoom out\b|\b(back|move) away\b"):
        t = (0.5, 0.0, 0.0, 0.0)
    elif has(r"\btoo far\b|\bcloser\b|\bclose\b|\bnearer\b|\bzoom in\b"):
        t = (2.0, 0.0, 0.0, 0.0)
    elif has(r"\bright\b"):
        t = (1.0, m, 0.0, 0.0)
    elif has(r"\bleft\b"):
        t = (1.0, -m, 0.0, 0.0)
    elif has(r"\b(top|above|bird)\b"):
        t = (1.0, 0.0, m, 0.0)
    elif has(r"\b(bottom|below|beneath|underneath|under)\b"):
        t = (1.0, 0.0, -m, 0.0)
    elif has(r"\b(behind|opposite|other side|around)\b"):
        t = (1.0, 180.0, 0.0, 0.0)
    elif has(r"\b(roll|twist)\b"):
        t = (1.0, 0.0, 0.0, m)
    elif has(r"\b(turn|rotate|spin|orbit)\b"):
        t = (1.0, m, 0.0, 0.0)
    else:
        t = (1.0, 0.0, 0.0, 0.0)
    return "{%g,%g,%g,%g}" % t


def _model_of(system_prompt: str) -> str:
    found = _MODEL_MARKER.search(system_prompt)
    return found.group(1).strip() if found else "this model"


_SUBJECT = re.compile(
    r"(?:what\s+(?:is|are)|tell me about|describe|explain)\s+(?:the\s+|an?\s+)?([^?.!,]+)",
    re.I,
)

# canned two-segment answers for the scripted tour queries
_CANNED_ANSWERS = {
    "what is the head?": (
        "The head is the protein shell that stores the phage's genome. Its "
        "icosahedral lattice is built from the capsid protein and studded "
        "with HOC on the outside.",
        "Seen up close, the lattice resolves into hundreds of identical "
        "copies of the capsid protein locked edge to edge into twenty "
        "triangular faces. HOC and SOC sit on the surface like rivets, "
        "steadying the shell against the pressure of the tightly packed "
        "genome inside. At one vertex a ring of portal protein works as the "
        "door: DNA is pumped in through it during assembly and leaves "
        "through it again at infection.",
    ),
    "what is the matrix protein?": (
        "The matrix protein lines the inner face of the viral envelope and "
        "braces the particle so it keeps its shape.",
        "Matrix proteins form a lattice just beneath the envelope membrane, "
        "anchoring the envelope proteins above to the capsid core below. "
        "During budding this layer curves the membrane around the new "
        "particle, and after infection it loosens again to release the "
        "core into the cell.",
    ),
}


def _encyclopedia_rules(system_prompt: str, query: str) -> str:
    detailed = _DETAILED_MARKER.search(system_prompt) is not None
    canned = _CANNED_ANSWERS.get(query.strip().lower())
    if canned:
        return canned[1] if detailed else canned[0]
    model = _model_of(system_prompt)
    found = _SUBJECT.search(query)
    subject = found.group(1).strip().rstrip("s ") if found else "structure you asked about"
    if detailed:
        return (
            f"There is more to the {subject} than fits in one breath. In the "
            f"{model} you can fly straight to it, open it with the cutting "
            f"plane, and study how it sits among its neighbours. Ask for any "
            f"structure by name and the tour will take you there."
        )
    return (
        f"The {subject} is one of the working parts of the {model}. "
        f"You can see it in the model right now and ask to visit it."
    )


def _guardian_rules(system_prompt: str, query: str) -> str:
    model = _model_of(system_prompt)
    return (
        f"I'm afraid I can't help with that here. But the {model} in front "
        f"of us is full of stories; ask me about any structure that catches "
        f"your eye."
    )


_MOCK_RULES = {
    "manager": _manager_rules,
    "pilot": _pilot_rules,
    "explorer": _explorer_rules,
    "encyclopedia": _encyclopedia_rules,
    "guardian": _guardian_rules,
}


@dataclass
class MockBackend:
    """Deterministic stand-in for one bot's chat model.

    delay_s simulates completion latency (used to exercise the parallel
    dispatch path); canned short-circuits the rule table entirely.
    """

    role: str
    delay_s: float = 0.0
    canned: Optional[str] = None

    def __post_init__(self):
        if self.role not in _MOCK_RULES:
            raise ValueError(f"unknown mock role {self.role!r}")

    def complete(self, system_prompt: str, messages: Sequence[Message]) -> str:
        if self.delay_s > 0:
            time.sleep(self.delay_s)
        if self.canned is not None:
            return self.canned
        query = messages[-1][1] if messages else ""
        return _MOCK_RULES[self.role](system_prompt, query)


class RemoteBackend:
    """Chat-completions client (OpenAI-style wire format, any base URL).

    One transient failure is retried with exponential backoff; persistent
    failure surfaces as BackendUnavailable rather than made-up text.
    """

    def __init__(
        self,
        base_url: str,
        model: str,
        api_key_env: str = "VOXTOUR_API_KEY",
        timeout_s: float = 30.0,
        retries: int = 1,
        backoff_s: float = 0.25,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        self.model = model
        self.api_key_env = api_key_env
        self.retries = retries
        self.backoff_s = backoff_s
        self._client = httpx.Client(
            base_url=base_url.rstrip("/"), timeout=timeout_s, transport=transport
        )

    def complete(self, system_prompt: str, messages: Sequence[Message]) -> str:
        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system_prompt},
                *({"role": role, "content": text} for role, text in messages),
            ],
        }
        headers = {}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        last_error: Optional[Exception] = None
        for attempt in range(self.retries + 1):
            if attempt:
                time.sleep(self.backoff_s * 2 ** (attempt - 1))
            try:
                response = self._client.post(
                    "/chat/completions", json=payload, headers=headers
                )
                response.raise_for_status()
                data = response.json()
            except httpx.HTTPError as exc:
                last_error = exc
                continue
            except ValueError as exc:
                raise BackendUnavailable(f"non-JSON completion body: {exc}") from exc
            try:
                return str(data["choices"][0]["message"]["content"])
            except (KeyError, IndexError, TypeError) as exc:
                raise BackendUnavailable(
                    f"malformed completion envelope: {data!r}"
                ) from exc
        raise BackendUnavailable(
            f"backend unreachable after {self.retries + 1} attempts: {last_error}"
        )

    def close(self) -> None:
        self._client.close()
