"""Camera algebra, cutting plane, view transforms, and animation specs.

Everything here is pure: functions take immutable states and return new
states plus declarative keyframe lists. Playback (accumulating elapsed time,
emitting completion signals) belongs to the session layer.

Angle conventions, locked by tests: the camera orbits its target. Yaw turns
about world-up, pitch about camera-right, roll about the view axis; positive
yaw brings the object's right side into view, positive pitch its top. With
yaw = pitch = 0 the view direction is (0, 0, -1).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import Optional

from .errors import MalformedTransform, NonPositiveZoom, ValidationError
from .scene_model import BoundingSphere, Vec3

TRANSFORM_DURATION_S = 1.0
FLY_DURATION_S = 2.0
CUTTING_SWEEP_DURATION_S = 3.0
HALF_FRAME_ANGLE_DEG = 30.0  # half of the field of view a framed sphere fills

_UNIT_TOL = 1e-6


@dataclass(frozen=True)
class CameraState:
    target: Vec3 = (0.0, 0.0, 0.0)
    distance: float = 1.0
    yaw: float = 0.0  # degrees
    pitch: float = 0.0
    roll: float = 0.0

    def __post_init__(self):
        if self.distance <= 0:
            raise ValidationError("camera distance must be > 0")

    @property
    def view_direction(self) -> Vec3:
        ya, pa = math.radians(self.yaw), math.radians(self.pitch)
        return (
            -math.sin(ya) * math.cos(pa),
            -math.sin(pa),
            -math.cos(ya) * math.cos(pa),
        )

    @property
    def right_direction(self) -> Vec3:
        ya = math.radians(self.yaw)
        right = (math.cos(ya), 0.0, -math.sin(ya))
        if self.roll:
            right = _rotate(right, self.view_direction, self.roll)
        return right

    @property
    def up_direction(self) -> Vec3:
        return _cross(self.right_direction, self.view_direction)

    @property
    def position(self) -> Vec3:
        v = self.view_direction
        return (
            self.target[0] - v[0] * self.distance,
            self.target[1] - v[1] * self.distance,
            self.target[2] - v[2] * self.distance,
        )


@dataclass(frozen=True)
class CuttingPlaneState:
    normal: Vec3 = (0.0, 0.0, -1.0)
    offset: float = 0.0  # signed distance from the current target, model units
    enabled: bool = False

    def __post_init__(self):
        norm = math.sqrt(sum(c * c for c in self.normal))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise ValidationError("cutting plane normal must be unit length")


@dataclass(frozen=True)
class ViewTransform:
    """One relative camera move: {zoom, yaw, pitch, roll}."""

    zoom: float = 1.0
    yaw: float = 0.0
    pitch: float = 0.0
    roll: float = 0.0

    @property
    def is_identity(self) -> bool:
        return self.zoom == 1.0 and self.yaw == self.pitch == self.roll == 0.0


IDENTITY_TRANSFORM = ViewTransform()

_TRANSFORM_RE = re.compile(r"\{([^{}]*)\}")


def parse_transform(text: str) -> ViewTransform:
    """Read a "{zoom,yaw,pitch,roll}" string, tolerating stray whitespace."""
    m = _TRANSFORM_RE.search(text)
    if not m:
        raise MalformedTransform(f"no {{zoom,yaw,pitch,roll}} group in {text!r}")
    parts = m.group(1).split(",")
    if len(parts) != 4:
        raise MalformedTransform(
            f"expected 4 comma-separated values, got {len(parts)}: {text!r}"
        )
    try:
        zoom, yaw, pitch, roll = (float(p.strip()) for p in parts)
    except ValueError:
        raise MalformedTransform(f"non-numeric transform component in {text!r}") from None
    return ViewTransform(zoom=zoom, yaw=yaw, pitch=pitch, roll=roll)


def format_transform(t: ViewTransform) -> str:
    """Inverse of parse_transform; parse(format(t)) == t exactly."""
    return "{%s,%s,%s,%s}" % (repr(t.zoom), repr(t.yaw), repr(t.pitch), repr(t.roll))


@dataclass(frozen=True)
class Keyframe:
    """One animation target; None fields hold their previous value.

    duration is the time in seconds to reach this keyframe from the state
    before it.
    """

    duration: float
    camera: Optional[CameraState] = None
    plane: Optional[CuttingPlaneState] = None
    highlights: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.duration <= 0:
            raise ValidationError("keyframe duration must be > 0")


@dataclass(frozen=True)
class AnimationSpec:
    keyframes: tuple[Keyframe, ...] = ()

    @property
    def total_duration(self) -> float:
        return sum(k.duration for k in self.keyframes)

    @property
    def is_empty(self) -> bool:
        return not self.keyframes


def apply_transform(
    camera: CameraState, t: ViewTransform
) -> tuple[CameraState, AnimationSpec]:
    """Apply a relative move; returns the end pose and interpolation keyframes.

    Zoom rescales the orbit distance (factor 2 halves it); angles accumulate.
    The identity transform returns the camera untouched with no animation.
    """
    if t.zoom <= 0:
        raise NonPositiveZoom(f"zoom factor must be > 0, got {t.zoom}")
    if t.is_identity:
        return camera, AnimationSpec()
    moved = replace(
        camera,
        distance=camera.distance / t.zoom,
        yaw=camera.yaw + t.yaw,
        pitch=camera.pitch + t.pitch,
        roll=camera.roll + t.roll,
    )
    return moved, AnimationSpec((Keyframe(TRANSFORM_DURATION_S, camera=moved),))


def frame_sphere(camera: CameraState, sphere: BoundingSphere) -> CameraState:
    """Retarget the camera so the sphere fills the frame, keeping orientation."""
    distance = sphere.radius / math.sin(math.radians(HALF_FRAME_ANGLE_DEG))
    return replace(camera, target=sphere.center, distance=distance)


def fly_animation(pose: CameraState) -> AnimationSpec:
    return AnimationSpec((Keyframe(FLY_DURATION_S, camera=pose),))


def cutting_sweep(
    view_direction: Vec3, radius: float, segments: int = 6
) -> tuple[CuttingPlaneState, AnimationSpec]:
    """Sweep a cutting plane from the sphere border to its center.

    The plane faces the camera (normal = view direction) and the offsets step
    monotonically from radius down to 0, evenly spread over the sweep time.
    Returns the final plane state and the keyframes.
    """
    if segments < 2:
        raise ValidationError("cutting sweep needs at least 2 segments")
    normal = _normalize(view_direction)
    step = CUTTING_SWEEP_DURATION_S / segments
    frames = tuple(
        Keyframe(
            step,
            plane=CuttingPlaneState(
                normal, radius * (1.0 - i / (segments - 1)), enabled=True
            ),
        )
        for i in range(segments)
    )
    return frames[-1].plane, AnimationSpec(frames)


def sample(
    base_camera: CameraState,
    base_plane: CuttingPlaneState,
    base_highlights: tuple[str, ...],
    spec: AnimationSpec,
    elapsed: float,
) -> tuple[CameraState, CuttingPlaneState, tuple[str, ...]]:
    """State at a point in time; a pure function of elapsed, so splitting a
    playback into arbitrary tick sizes cannot change where it lands."""
    camera, plane, highlights = base_camera, base_plane, base_highlights
    if elapsed <= 0 or spec.is_empty:
        return camera, plane, highlights
    t = elapsed
    for kf in spec.keyframes:
        end_camera = kf.camera if kf.camera is not None else camera
        end_plane = kf.plane if kf.plane is not None else plane
        if kf.highlights is not None:
            highlights = kf.highlights
        if t >= kf.duration:
            camera, plane = end_camera, end_plane
            t -= kf.duration
            continue
        u = t / kf.duration
        camera = _lerp_camera(camera, end_camera, u)
        plane = _lerp_plane(plane, end_plane, u)
        return camera, plane, highlights
    return camera, plane, highlights


# --- interpolation helpers ---

def _lerp(a: float, b: float, u: float) -> float:
    return a + (b - a) * u


def _lerp3(a: Vec3, b: Vec3, u: float) -> Vec3:
    return (_lerp(a[0], b[0], u), _lerp(a[1], b[1], u), _lerp(a[2], b[2], u))


def _lerp_camera(a: CameraState, b: CameraState, u: float) -> CameraState:
    if a == b:
        return a
    return CameraState(
        target=_lerp3(a.target, b.target, u),
        distance=_lerp(a.distance, b.distance, u),
        yaw=_lerp(a.yaw, b.yaw, u),
        pitch=_lerp(a.pitch, b.pitch, u),
        roll=_lerp(a.roll, b.roll, u),
    )


def _lerp_plane(a: CuttingPlaneState, b: CuttingPlaneState, u: float) -> CuttingPlaneState:
    if a == b:
        return a
    if not (a.enabled and b.enabled):
        # enable/disable switches at segment start rather than fading
        return b
    return CuttingPlaneState(b.normal, _lerp(a.offset, b.offset, u), True)


# --- small vector helpers ---

def _cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _normalize(v: Vec3) -> Vec3:
    norm = math.sqrt(sum(c * c for c in v))
    if norm == 0:
        raise ValidationError("cannot normalize a zero vector")
    return (v[0] / norm, v[1] / norm, v[2] / norm)


def _rotate(v: Vec3, axis: Vec3, degrees: float) -> Vec3:
    """Rodrigues rotation of v about a unit axis."""
    ang = math.radians(degrees)
    c, s = math.cos(ang), math.sin(ang)
    k = axis
    kxv = _cross(k, v)
    kdv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2]
    return tuple(
        v[i] * c + kxv[i] * s + k[i] * kdv * (1 - c) for i in range(3)
    )
