"""Scene timeline: a FIFO of narrated scenes gated by two completion signals.

A scene leaves the screen only when its narration has finished (speech signal)
AND its camera work has finished (animation signal), in either order. Scenes
play strictly in the order they were enqueued.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .camera import AnimationSpec
from .errors import SignalWithoutScene, ValidationError


class SceneKind(enum.Enum):
    FOCUS = "focus"
    OVERVIEW = "overview"
    CUTTING_PLANE = "cutting_plane"
    SPEECH_ONLY = "speech_only"


class Signal(enum.Enum):
    SPEECH_DONE = "speech_done"
    ANIMATION_DONE = "animation_done"


@dataclass
class Scene:
    kind: SceneKind
    speech: str
    animation: AnimationSpec = AnimationSpec()
    target_node_id: Optional[str] = None
    speech_done: bool = False
    animation_done: bool = False

    def __post_init__(self):
        needs_target = self.kind is not SceneKind.SPEECH_ONLY
        if needs_target and self.target_node_id is None:
            raise ValidationError(f"{self.kind.value} scene needs a target node")
        if not needs_target and self.target_node_id is not None:
            raise ValidationError("speech-only scene cannot carry a target node")

    @property
    def complete(self) -> bool:
        return self.speech_done and self.animation_done


@dataclass
class Timeline:
    current: Optional[Scene] = None
    queue: deque[Scene] = field(default_factory=deque)

    def __len__(self) -> int:
        return (1 if self.current else 0) + len(self.queue)


def enqueue(timeline: Timeline, scene: Scene) -> Scene:
    """Append a scene; it becomes current at once when nothing is playing."""
    if timeline.current is None:
        timeline.current = scene
    else:
        timeline.queue.append(scene)
    return scene


def advance_timeline(timeline: Timeline, signal: Signal) -> Optional[Scene]:
    """Record a completion signal on the current scene.

    Returns the next scene when this signal completed the current one (None
    when the timeline drained); returns None without advancing while the
    other signal is still pending.
    """
    scene = timeline.current
    if scene is None:
        raise SignalWithoutScene(f"{signal.value} arrived with no active scene")
    if signal is Signal.SPEECH_DONE:
        scene.speech_done = True
    else:
        scene.animation_done = True
    if not scene.complete:
        return None
    timeline.current = timeline.queue.popleft() if timeline.queue else None
    return timeline.current
