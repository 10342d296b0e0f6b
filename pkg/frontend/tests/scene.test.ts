import { describe, expect, it } from "vitest";

import { buildScene, type Glyph } from "../src/scene.js";
import { makeState } from "./helpers.js";

const W = 900;
const H = 620;

function spheres(glyphs: Glyph[]) {
  return glyphs.filter((g): g is Extract<Glyph, { kind: "sphere" }> => g.kind === "sphere");
}

describe("buildScene", () => {
  it("empty snapshot draws nothing", () => {
    expect(buildScene(null, W, H)).toEqual([]);
  });

  it("draws the focus sphere plus one sphere per highlight, labeled", () => {
    const state = makeState({
      highlights: ["capsid-protein", "hoc", "portal-vertex"],
      labels: ["Capsid protein", "HOC", "Portal vertex"],
    });
    const glyphs = buildScene(state, W, H);
    const all = spheres(glyphs);
    expect(all.length).toBe(4);
    expect(all.filter((s) => s.tint === "focus").length).toBe(1);
    const tinted = all.filter((s) => s.tint === "highlight");
    expect(tinted.map((s) => s.label)).toEqual(["Capsid protein", "HOC", "Portal vertex"]);
  });

  it("focus sphere is labeled with the current node", () => {
    const glyphs = buildScene(makeState(), W, H);
    expect(spheres(glyphs)[0].label).toBe("Bacteriophage T4");
  });

  it("cutting disc appears only when the plane is enabled", () => {
    const off = buildScene(makeState(), W, H);
    expect(off.some((g) => g.kind === "disc")).toBe(false);
    const on = buildScene(
      makeState({ plane: { normal: [0, 0, -1], offset: 60, enabled: true } }),
      W,
      H,
    );
    expect(on.some((g) => g.kind === "disc")).toBe(true);
  });

  it("disc advances across the sphere as the offset sweeps toward zero", () => {
    // camera distance 240 frames a sphere of radius 120
    const radius = 120;
    let lastGap = Infinity;
    let lastChord = 0;
    for (const offset of [radius, radius * 0.75, radius * 0.5, radius * 0.25, 0]) {
      const glyphs = buildScene(
        makeState({ plane: { normal: [0, 0, -1], offset, enabled: true } }),
        W,
        H,
      );
      const focus = spheres(glyphs)[0];
      const disc = glyphs.find((g): g is Extract<Glyph, { kind: "disc" }> => g.kind === "disc")!;
      const gap = Math.hypot(disc.x - focus.x, disc.y - focus.y);
      expect(gap).toBeLessThanOrEqual(lastGap);
      expect(disc.rx).toBeGreaterThanOrEqual(lastChord);
      lastGap = gap;
      lastChord = disc.rx;
    }
    expect(lastGap).toBeLessThan(1e-6); // offset 0 cuts through the center
  });

  it("camera glyph sits apart from the target and points at it", () => {
    const glyphs = buildScene(makeState(), W, H);
    const cam = glyphs.find((g): g is Extract<Glyph, { kind: "camera" }> => g.kind === "camera")!;
    const focus = spheres(glyphs)[0];
    const toTarget = [focus.x - cam.x, focus.y - cam.y];
    const norm = Math.hypot(toTarget[0], toTarget[1]);
    expect(norm).toBeGreaterThan(10);
    const dot = (cam.dx * toTarget[0] + cam.dy * toTarget[1]) / norm;
    expect(dot).toBeGreaterThan(0.99); // unit view direction aligned with the sight line
  });

  it("yaw moves the camera glyph around the target", () => {
    const front = buildScene(makeState(), W, H);
    const side = buildScene(
      makeState({
        display_camera: {
          ...makeState().display_camera,
          position: [-240, 0, 0],
          yaw: 90,
          view_direction: [1, 0, 0],
        },
      }),
      W,
      H,
    );
    const camAt = (glyphs: Glyph[]) =>
      glyphs.find((g): g is Extract<Glyph, { kind: "camera" }> => g.kind === "camera")!;
    expect(Math.hypot(camAt(front).x - camAt(side).x, camAt(front).y - camAt(side).y)).toBeGreaterThan(50);
  });

  it("everything drawn stays inside the canvas", () => {
    const state = makeState({
      highlights: ["a", "b", "c", "d", "e"],
      labels: ["a", "b", "c", "d", "e"],
      plane: { normal: [0, 0, -1], offset: 0, enabled: true },
    });
    for (const g of buildScene(state, W, H)) {
      if (g.kind === "sphere" || g.kind === "camera" || g.kind === "disc") {
        expect(g.x).toBeGreaterThanOrEqual(0);
        expect(g.x).toBeLessThanOrEqual(W);
        expect(g.y).toBeGreaterThanOrEqual(0);
        expect(g.y).toBeLessThanOrEqual(H);
      }
    }
  });

  it("falls back to a text outline when the pose is unusable", () => {
    const state = makeState({ labels: ["head", "Tail"] });
    state.display_camera.distance = NaN;
    const glyphs = buildScene(state, W, H);
    expect(glyphs.every((g) => g.kind === "label")).toBe(true);
    expect(glyphs.map((g) => (g.kind === "label" ? g.text : ""))).toEqual([
      "Bacteriophage T4",
      "head",
      "Tail",
    ]);
  });
});
