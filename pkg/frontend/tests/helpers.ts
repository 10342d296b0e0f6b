import type { StateDocument } from "../src/types.js";

export function makeState(overrides: Partial<StateDocument> = {}): StateDocument {
  const camera = {
    position: [0, 0, 240] as [number, number, number],
    target: [0, 0, 0] as [number, number, number],
    distance: 240,
    yaw: 0,
    pitch: 0,
    roll: 0,
    view_direction: [0, 0, -1] as [number, number, number],
  };
  return {
    model: "Bacteriophage T4",
    node: { id: "t4", name: "T4", label: "Bacteriophage T4" },
    scale_level: 0,
    camera,
    display_camera: { ...camera },
    plane: { normal: [0, 0, -1], offset: 120, enabled: false },
    highlights: [],
    labels: [],
    options: [],
    scene: null,
    queued_scenes: 0,
    speaking: false,
    animating: false,
    awaiting_detail: false,
    history_depth: 0,
    log: [],
    ...overrides,
  };
}
