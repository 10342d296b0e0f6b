"""Per-visitor session: camera, plane, navigation history, and playback.

State is committed eagerly: every operation settles its end pose into the
session immediately and returns the keyframes a renderer would play. An
active playback only times the animation-done signal and provides smooth
display poses for polling clients, so tick cadence can never change where
the camera lands.

All spoken output funnels through the timeline (plain utterances ride in
speech-only scenes), giving a single voice channel with FIFO politeness.
Direct navigation commands interrupt: they drop queued scenes, pending
options, and the active exploration plan before running.
"""

from __future__ import annotations

import enum
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .camera import (
    AnimationSpec,
    CameraState,
    CuttingPlaneState,
    FLY_DURATION_S,
    Keyframe,
    apply_transform,
    cutting_sweep,
    frame_sphere,
    sample,
)
from .errors import (
    AtRoot,
    EmptyHistory,
    NoChildren,
    ValidationError,
)
from .scene_model import SceneTree, depth_of
from .timeline import Scene, SceneKind, Signal, Timeline, advance_timeline, enqueue

HISTORY_CAP = 64
SPOKEN_RATE_WPS = 2.5  # assumed words per second of the speech synthesizer


class ScaleDirection(enum.Enum):
    UP = "up"
    DOWN = "down"


def speech_seconds(text: str, rate_wps: float = SPOKEN_RATE_WPS) -> float:
    return len(text.split()) / rate_wps


@dataclass
class _Playback:
    base_camera: CameraState
    base_plane: CuttingPlaneState
    base_highlights: tuple[str, ...]
    spec: AnimationSpec
    elapsed: float
    scene: Optional[Scene]


@dataclass
class _Speech:
    remaining: float
    scene: Scene


class SessionState:
    def __init__(
        self,
        tree: SceneTree,
        rng: Optional[random.Random] = None,
        spoken_rate_wps: float = SPOKEN_RATE_WPS,
    ):
        self.tree = tree
        self.spoken_rate_wps = spoken_rate_wps
        root = tree.node(tree.root_id)
        self.default_camera = frame_sphere(CameraState(), root.bounding_sphere)
        self.default_plane = CuttingPlaneState()
        self.camera = self.default_camera
        self.plane = self.default_plane
        self.highlights: tuple[str, ...] = ()
        self.current_node_id = tree.root_id
        self.history: deque = deque(maxlen=HISTORY_CAP)
        self.timeline = Timeline()
        self.visited: set[str] = set()
        self.pending_options: list[str] = []
        self.conversation_log: list[tuple[str, str]] = []
        self.plan = None  # exploration cursor, owned by the exploration module
        self.awaiting_detail: Optional[str] = None  # queued detailed answer
        self.rng = rng if rng is not None else random.Random()
        self._playback: Optional[_Playback] = None
        self._speech: Optional[_Speech] = None

    # --- derived state ---

    @property
    def scale_level(self) -> int:
        return depth_of(self.tree, self.current_node_id)

    @property
    def speaking(self) -> bool:
        return self._speech is not None

    @property
    def animating(self) -> bool:
        return self._playback is not None

    def display_state(self) -> tuple[CameraState, CuttingPlaneState, tuple[str, ...]]:
        """Smoothed pose for renderers; equals logical state when idle."""
        pb = self._playback
        if pb is None:
            return self.camera, self.plane, self.highlights
        return sample(
            pb.base_camera, pb.base_plane, pb.base_highlights, pb.spec, pb.elapsed
        )

    # --- navigation operations ---

    def fly_to(self, node_id: str) -> AnimationSpec:
        """Frame a structure; history records where we left from."""
        node = self.tree.node(node_id)
        self.interrupt()
        self._push_history()
        pose = frame_sphere(self.camera, node.bounding_sphere)
        self.current_node_id = node.id
        if pose == self.camera:
            return AnimationSpec()
        spec = AnimationSpec((Keyframe(FLY_DURATION_S, camera=pose),))
        self._start_animation(spec)
        return spec

    def change_scale(self, direction: ScaleDirection) -> AnimationSpec:
        node = self.tree.node(self.current_node_id)
        if direction is ScaleDirection.UP:
            if node.parent_id is None:
                raise AtRoot("already viewing the whole model")
            target = self.tree.node(node.parent_id)
        else:
            if not node.child_ids:
                raise NoChildren(f"node {node.id!r} has no finer level")
            eye = self.camera.position
            target = min(
                self.tree.children(node.id),
                key=lambda child: math.dist(eye, child.bounding_sphere.center),
            )
        self.interrupt()
        self._push_history()
        pose = frame_sphere(self.camera, target.bounding_sphere)
        self.current_node_id = target.id
        if pose == self.camera:
            return AnimationSpec()
        spec = AnimationSpec((Keyframe(FLY_DURATION_S, camera=pose),))
        self._start_animation(spec)
        return spec

    def apply_view_transform(self, transform) -> AnimationSpec:
        moved, spec = apply_transform(self.camera, transform)
        if spec.is_empty:
            return spec
        self.interrupt()
        self._push_history()
        self._start_animation(spec)
        return spec

    def set_cutting_plane(self, request: Optional[str] = None) -> AnimationSpec:
        """Sweep a camera-facing cutting plane into the current structure."""
        node = self.tree.node(self.current_node_id)
        self.interrupt()
        self._push_history()
        _, sweep = cutting_sweep(
            self.camera.view_direction, node.bounding_sphere.radius
        )
        self._start_animation(sweep)
        return sweep

    def return_back(self) -> AnimationSpec:
        if not self.history:
            raise EmptyHistory("history is empty")
        self.interrupt()
        camera, plane, node_id = self.history.pop()
        self.current_node_id = node_id
        if (camera, plane) == (self.camera, self.plane):
            return AnimationSpec()
        spec = AnimationSpec((Keyframe(FLY_DURATION_S, camera=camera, plane=plane),))
        self._start_animation(spec)
        return spec

    def reset(self) -> AnimationSpec:
        """Restore load-time defaults; commits at once, keyframes advisory."""
        pose_is_default = (
            self.camera == self.default_camera
            and self.plane == self.default_plane
            and self.highlights == ()
        )
        self.interrupt()
        self.history.clear()
        self.visited.clear()
        self.awaiting_detail = None
        self.current_node_id = self.tree.root_id
        if pose_is_default:
            return AnimationSpec()
        spec = AnimationSpec((
            Keyframe(
                FLY_DURATION_S,
                camera=self.default_camera,
                plane=self.default_plane,
                highlights=(),
            ),
        ))
        self.camera = self.default_camera
        self.plane = self.default_plane
        self.highlights = ()
        return spec

    # --- playback and speech plumbing ---

    def interrupt(self) -> None:
        """Drop queued scenes, options, plan, and in-flight playback/speech.

        Logical state is already committed, so nothing needs settling.
        """
        self._playback = None
        self._speech = None
        self.timeline = Timeline()
        self.plan = None
        self.pending_options = []

    def enqueue_scene(self, scene: Scene) -> list[Signal]:
        was_idle = self.timeline.current is None
        enqueue(self.timeline, scene)
        if was_idle:
            return self._begin_scene(scene)
        return []

    def say(self, text: str) -> list[Signal]:
        """Queue a plain utterance behind whatever is playing."""
        return self.enqueue_scene(Scene(SceneKind.SPEECH_ONLY, text))

    def tick(self, dt: float) -> list[Signal]:
        """Advance playback clocks; emits completion signals as they fire."""
        if dt <= 0:
            raise ValidationError("tick needs dt > 0")
        signals: list[Signal] = []
        pb = self._playback
        if pb is not None:
            pb.elapsed += dt
            if pb.elapsed >= pb.spec.total_duration:
                self._playback = None
                signals.append(Signal.ANIMATION_DONE)
                self._scene_signal(pb.scene, Signal.ANIMATION_DONE, signals)
        sp = self._speech
        if sp is not None:
            sp.remaining -= dt
            if sp.remaining <= 0:
                self._speech = None
                signals.append(Signal.SPEECH_DONE)
                self._scene_signal(sp.scene, Signal.SPEECH_DONE, signals)
        return signals

    def speech_complete(self) -> list[Signal]:
        """Out-of-band notice that narration finished (real TTS, or a skip)."""
        sp = self._speech
        if sp is None:
            return []
        self._speech = None
        signals = [Signal.SPEECH_DONE]
        self._scene_signal(sp.scene, Signal.SPEECH_DONE, signals)
        return signals

    def snapshot(self) -> dict:
        """Structured state document for polling clients."""
        node = self.tree.node(self.current_node_id)
        display_camera, display_plane, display_highlights = self.display_state()
        current = self.timeline.current
        return {
            "model": self.tree.model_name,
            "node": {"id": node.id, "name": node.name, "label": node.label},
            "scale_level": self.scale_level,
            "camera": _camera_doc(self.camera),
            "display_camera": _camera_doc(display_camera),
            "plane": {
                "normal": list(display_plane.normal),
                "offset": display_plane.offset,
                "enabled": display_plane.enabled,
            },
            "highlights": list(display_highlights),
            "labels": [self.tree.node(h).label for h in display_highlights],
            "options": [
                {
                    "id": nid,
                    "name": self.tree.node(nid).name,
                    "label": self.tree.node(nid).label,
                }
                for nid in self.pending_options
            ],
            "scene": None if current is None else {
                "kind": current.kind.value,
                "speech": current.speech,
                "target": current.target_node_id,
            },
            "queued_scenes": len(self.timeline.queue),
            "speaking": self.speaking,
            "animating": self.animating,
            "awaiting_detail": self.awaiting_detail is not None,
            "history_depth": len(self.history),
        }

    # --- internals ---

    def _push_history(self) -> None:
        self.history.append((self.camera, self.plane, self.current_node_id))

    def _start_animation(self, spec: AnimationSpec, scene: Optional[Scene] = None):
        base = (self.camera, self.plane, self.highlights)
        self.camera, self.plane, self.highlights = sample(
            *base, spec, spec.total_duration
        )
        self._playback = _Playback(*base, spec, 0.0, scene)

    def _begin_scene(self, scene: Optional[Scene]) -> list[Signal]:
        signals: list[Signal] = []
        while scene is not None:
            if scene.speech:
                self.conversation_log.append(("assistant", scene.speech))
            if not scene.animation.is_empty:
                self._start_animation(scene.animation, scene=scene)
            secs = speech_seconds(scene.speech, self.spoken_rate_wps)
            if secs > 0:
                self._speech = _Speech(secs, scene)
            nxt = None
            if scene.animation.is_empty and self.timeline.current is scene:
                signals.append(Signal.ANIMATION_DONE)
                advanced = advance_timeline(self.timeline, Signal.ANIMATION_DONE)
                if scene.complete:
                    nxt = advanced
            if secs <= 0 and self.timeline.current is scene:
                signals.append(Signal.SPEECH_DONE)
                advanced = advance_timeline(self.timeline, Signal.SPEECH_DONE)
                if scene.complete:
                    nxt = advanced
            scene = nxt
        return signals

    def _scene_signal(self, scene: Optional[Scene], signal: Signal, signals: list):
        if scene is None or self.timeline.current is not scene:
            return
        nxt = advance_timeline(self.timeline, signal)
        if scene.complete and nxt is not None:
            signals.extend(self._begin_scene(nxt))


def _camera_doc(camera: CameraState) -> dict:
    return {
        "position": list(camera.position),
        "target": list(camera.target),
        "distance": camera.distance,
        "yaw": camera.yaw,
        "pitch": camera.pitch,
        "roll": camera.roll,
        "view_direction": list(camera.view_direction),
    }
