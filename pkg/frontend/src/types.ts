// Wire types for the voxtour gateway. Field names mirror the JSON documents
// the service produces; keep them in sync with the Python schemas.

export interface NodeRef {
  id: string;
  name: string;
  label: string;
}

export interface CameraDoc {
  position: [number, number, number];
  target: [number, number, number];
  distance: number;
  yaw: number;
  pitch: number;
  roll: number;
  view_direction: [number, number, number];
}

export interface PlaneDoc {
  normal: [number, number, number];
  offset: number;
  enabled: boolean;
}

export interface SceneRef {
  kind: string;
  speech: string;
  target: string | null;
}

export interface StateDocument {
  model: string;
  node: NodeRef;
  scale_level: number;
  camera: CameraDoc;
  display_camera: CameraDoc;
  plane: PlaneDoc;
  highlights: string[];
  labels: string[];
  options: NodeRef[];
  scene: SceneRef | null;
  queued_scenes: number;
  speaking: boolean;
  animating: boolean;
  awaiting_detail: boolean;
  history_depth: number;
  log: [string, string][];
}

export interface SpeechEvent {
  direction: string;
  text: string;
  duration_estimate: number;
}

export interface SessionCreated {
  session_id: string;
  model: string;
  model_name: string;
  narration: string;
  speech: SpeechEvent;
  state: StateDocument;
}

export interface OptionDoc {
  index: number;
  id: string;
  name: string;
}

export interface SceneDoc {
  kind: string;
  target: NodeRef | null;
  speech: string;
}

export interface QueryDocument {
  session_id: string;
  intent: string | null;
  narration: string;
  speech: SpeechEvent;
  scenes: SceneDoc[];
  options: OptionDoc[];
  awaiting_detail: boolean;
  transform: { zoom: number; yaw: number; pitch: number; roll: number } | null;
  state: StateDocument;
}

export interface SelectionDocument {
  session_id: string;
  node: NodeRef;
  narration: string;
  speech: SpeechEvent;
  scene: SceneDoc;
  options: OptionDoc[];
  state: StateDocument;
}

export interface ModelEntry {
  name: string;
  model_name: string;
  nodes: number;
}
