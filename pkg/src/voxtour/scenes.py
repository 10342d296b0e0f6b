"""Scene construction: turn a node plus the current camera into keyframes.

Four scene shapes: Focus dives to the nearest instance of a leaf type,
Overview frames an assembly with its children highlighted and the cutting
plane parked at the sphere border, CuttingPlane sweeps the plane into the
current structure, SpeechOnly keeps the framing and adds a slow turn so the
picture never freezes while narration plays.
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Optional

from .camera import (
    AnimationSpec,
    CameraState,
    CuttingPlaneState,
    Keyframe,
    cutting_sweep,
    frame_sphere,
)
from .errors import NoInstances, ValidationError
from .scene_model import BoundingSphere, SceneNode, SceneTree
from .timeline import Scene, SceneKind, Timeline, enqueue

SPIN_DEG = 30.0
SPIN_DURATION_S = 4.0


def build_scene(
    kind: SceneKind,
    node_id: Optional[str],
    tree: SceneTree,
    camera: CameraState,
    speech: Optional[str] = None,
) -> Scene:
    """Assemble one scene; speech defaults to the node's description."""
    if kind is SceneKind.SPEECH_ONLY:
        return Scene(kind, speech or "", _spin(camera))
    node = tree.node(node_id)
    if speech is None:
        speech = node.description
    if kind is SceneKind.FOCUS:
        animation = _focus_animation(node, camera)
    elif kind is SceneKind.OVERVIEW:
        animation = _overview_animation(node, camera)
    elif kind is SceneKind.CUTTING_PLANE:
        animation = _cutting_animation(node, camera)
    else:
        raise ValidationError(f"unknown scene kind {kind!r}")
    return Scene(kind, speech, animation, target_node_id=node.id)


def add_to_timeline(
    timeline: Timeline,
    node_id: str,
    tree: SceneTree,
    camera: CameraState,
    speech: Optional[str] = None,
) -> Scene:
    """Enqueue the scene a node calls for: Overview for assemblies, Focus for
    leaf types."""
    node = tree.node(node_id)
    kind = SceneKind.OVERVIEW if node.child_ids else SceneKind.FOCUS
    return enqueue(timeline, build_scene(kind, node_id, tree, camera, speech))


def _focus_animation(node: SceneNode, camera: CameraState) -> AnimationSpec:
    if not node.instances:
        raise NoInstances(f"node {node.id!r} has no placed instances to focus")
    eye = camera.position
    nearest = min(node.instances, key=lambda i: math.dist(eye, i.position))
    pose = frame_sphere(
        camera, BoundingSphere(nearest.position, node.bounding_sphere.radius)
    )
    return AnimationSpec((
        Keyframe(2.0, camera=pose, highlights=(node.id,)),
        Keyframe(SPIN_DURATION_S, camera=replace(pose, yaw=pose.yaw + SPIN_DEG)),
    ))


def _overview_animation(node: SceneNode, camera: CameraState) -> AnimationSpec:
    pose = frame_sphere(camera, node.bounding_sphere)
    border = CuttingPlaneState(
        normal=pose.view_direction, offset=node.bounding_sphere.radius, enabled=True
    )
    return AnimationSpec((
        Keyframe(2.0, camera=pose, plane=border, highlights=node.child_ids),
        Keyframe(SPIN_DURATION_S, camera=replace(pose, yaw=pose.yaw + SPIN_DEG)),
    ))


def _cutting_animation(node: SceneNode, camera: CameraState) -> AnimationSpec:
    _, sweep = cutting_sweep(camera.view_direction, node.bounding_sphere.radius)
    first = replace(sweep.keyframes[0], highlights=node.child_ids)
    return AnimationSpec((first,) + sweep.keyframes[1:])


def _spin(camera: CameraState) -> AnimationSpec:
    return AnimationSpec((
        Keyframe(SPIN_DURATION_S, camera=replace(camera, yaw=camera.yaw + SPIN_DEG)),
    ))
