"""Narration generator: canned spoken lines with slot substitution.

Every system-initiated utterance (acks, prompts, transitions) comes from a
small pool of handwritten templates per task type, drawn at random so repeat
visitors don't hear a robot stuck on one phrase. The template file is a plain
JSON document so lines can be reworded without touching code.
"""

from __future__ import annotations

import json
import random
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import ParseError, UnknownTaskType, ValidationError

REQUIRED_TASK_TYPES = frozenset({
    "introduction", "help", "transition", "explorer-ack", "pilot-ack",
    "cutting-ack", "option-prompt", "detail-prompt",
})

_SLOTS = ("model", "node", "options", "direction")

RngLike = Union[random.Random, int, None]


def load_templates(path: Optional[Union[str, Path]] = None) -> dict[str, list[str]]:
    """Read and validate a template document; defaults to the bundled one."""
    try:
        if path is None:
            source = resources.files("voxtour").joinpath(
                "assets/narration/templates.json"
            )
            raw = json.loads(source.read_text(encoding="utf-8"))
        else:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read narration templates: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("narration template document must be an object")
    for task_type, lines in raw.items():
        if (
            not isinstance(lines, list)
            or not lines
            or not all(isinstance(t, str) and t.strip() for t in lines)
        ):
            raise ValidationError(
                f"task type {task_type!r} needs a non-empty list of template strings"
            )
    missing = REQUIRED_TASK_TYPES - raw.keys()
    if missing:
        raise ValidationError(f"template file lacks task types: {sorted(missing)}")
    return {k: list(v) for k, v in raw.items()}


@lru_cache(maxsize=1)
def _bundled_templates() -> dict[str, list[str]]:
    return load_templates()


def format_options(names: Sequence[str]) -> str:
    """Spoken list: 'the A', 'the A or the B', 'the A, the B or the C'."""
    spoken = [f"the {n}" for n in names]
    if not spoken:
        return ""
    if len(spoken) == 1:
        return spoken[0]
    return ", ".join(spoken[:-1]) + " or " + spoken[-1]


def generate_narration(
    task_type: str,
    payload: Optional[dict] = None,
    rng: RngLike = None,
    templates: Optional[dict[str, list[str]]] = None,
) -> str:
    """Draw one template for the task type and fill its slots.

    rng may be a seed (reproducible), a Random instance (shared stream), or
    None for nondeterministic choice.
    """
    pool = (templates or _bundled_templates()).get(task_type)
    if pool is None:
        raise UnknownTaskType(f"no narration templates for {task_type!r}")
    if isinstance(rng, int):
        rng = random.Random(rng)
    elif rng is None:
        rng = random

    slots = {key: "" for key in _SLOTS}
    if payload:
        slots.update(payload)
    if not isinstance(slots.get("options"), str):
        slots["options"] = format_options(slots["options"] or ())

    template = rng.choice(pool)
    try:
        return template.format(**slots)
    except (KeyError, IndexError) as exc:
        raise ValidationError(
            f"template for {task_type!r} references unknown slot: {exc}"
        ) from exc
