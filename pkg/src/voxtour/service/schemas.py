"""Wire documents for the gateway API.

Requests are strict; responses mirror SessionState.snapshot() plus a
conversation-log tail so clients can render without extra round trips.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CreateSessionRequest(BaseModel):
    model_config = ConfigDict(protected_namespaces=())
    model: str


class QueryRequest(BaseModel):
    text: str = Field(min_length=1)


class SelectRequest(BaseModel):
    index: int


class SpeechEvent(BaseModel):
    direction: Literal["In", "Out"]
    text: str
    duration_estimate: float  # seconds, words / spoken-rate

    @model_validator(mode="after")
    def _non_empty_text_takes_time(self):
        if self.text.strip() and self.duration_estimate <= 0:
            raise ValueError("non-empty speech needs a positive duration")
        return self


class NodeRef(BaseModel):
    id: str
    name: str
    label: str


class CameraDoc(BaseModel):
    position: list[float]
    target: list[float]
    distance: float
    yaw: float
    pitch: float
    roll: float
    view_direction: list[float]


class PlaneDoc(BaseModel):
    normal: list[float]
    offset: float
    enabled: bool


class SceneRef(BaseModel):
    kind: str
    speech: str
    target: Optional[str]


class StateDocument(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: str
    node: NodeRef
    scale_level: int
    camera: CameraDoc
    display_camera: CameraDoc
    plane: PlaneDoc
    highlights: list[str]
    labels: list[str]
    options: list[NodeRef]
    scene: Optional[SceneRef]
    queued_scenes: int
    speaking: bool
    animating: bool
    awaiting_detail: bool
    history_depth: int
    log: list[tuple[str, str]]


class OptionDoc(BaseModel):
    index: int
    id: str
    name: str


class SceneDoc(BaseModel):
    kind: str
    target: Optional[NodeRef]
    speech: str


class TransformDoc(BaseModel):
    zoom: float
    yaw: float
    pitch: float
    roll: float


class SessionCreated(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    session_id: str
    model: str
    model_name: str
    narration: str
    speech: SpeechEvent
    state: StateDocument


class QueryDocument(BaseModel):
    session_id: str
    intent: Optional[str]
    narration: str
    speech: SpeechEvent
    scenes: list[SceneDoc]
    options: list[OptionDoc]
    awaiting_detail: bool
    transform: Optional[TransformDoc]
    state: StateDocument


class SelectionDocument(BaseModel):
    session_id: str
    node: NodeRef
    narration: str
    speech: SpeechEvent
    scene: SceneDoc
    options: list[OptionDoc]
    state: StateDocument


class AdvanceDocument(BaseModel):
    session_id: str
    signals: list[str]
    state: StateDocument


class ModelEntry(BaseModel):
    model_config = ConfigDict(protected_namespaces=())
    name: str
    model_name: str
    nodes: int


class ModelsDocument(BaseModel):
    models: list[ModelEntry]
