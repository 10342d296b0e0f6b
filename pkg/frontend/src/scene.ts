import type { StateDocument } from "./types.js";

// The state document carries camera pose, plane, highlight ids and labels,
// but no mesh geometry. The view is therefore schematic: one sphere for the
// framed region, a ring of labeled spheres for the highlight set, a wedge
// for the camera, a disc for the cutting plane. Every number below derives
// from a snapshot field; only the layout constants are presentational.

export type Glyph =
  | { kind: "sphere"; x: number; y: number; r: number; tint: "focus" | "highlight"; label: string }
  | { kind: "disc"; x: number; y: number; rx: number; ry: number }
  | { kind: "camera"; x: number; y: number; dx: number; dy: number; len: number }
  | { kind: "sight"; x1: number; y1: number; x2: number; y2: number }
  | { kind: "label"; x: number; y: number; text: string };

type Vec3 = [number, number, number];

// framed distance = radius / sin(30 deg), so the framed sphere radius is
// half the camera distance
const FRAME_RADIUS_FACTOR = 0.5;
const RING_FACTOR = 1.6;
const OBLIQUE = 0.3;
const MARGIN = 0.12;

function proj(p: Vec3): [number, number] {
  return [p[0] + OBLIQUE * p[1], -(p[2] + OBLIQUE * p[1])];
}

function add(a: Vec3, b: Vec3, scale = 1): Vec3 {
  return [a[0] + b[0] * scale, a[1] + b[1] * scale, a[2] + b[2] * scale];
}

/** Pure snapshot -> display list; paint() puts it on a canvas. */
export function buildScene(state: StateDocument | null, width: number, height: number): Glyph[] {
  if (!state) return [];
  const cam = state.display_camera;
  const target = cam.target as Vec3;
  const radius = cam.distance * FRAME_RADIUS_FACTOR;
  if (!isFinite(radius) || radius <= 0) {
    return outlineFallback(state, width, height);
  }

  // world-space anchors
  const ringRadius = radius * RING_FACTOR;
  const ring: { pos: Vec3; label: string }[] = state.highlights.map((_, i) => {
    const angle = (2 * Math.PI * i) / Math.max(state.highlights.length, 1) - Math.PI / 2;
    return {
      pos: add(target, [Math.cos(angle), 0, Math.sin(angle)], ringRadius),
      label: state.labels[i] ?? "",
    };
  });

  // fit the projected extent into the canvas
  const pts: [number, number][] = [proj(cam.position as Vec3)];
  const extent = ringRadius + radius * 0.4;
  pts.push(proj(add(target, [extent, 0, 0])), proj(add(target, [-extent, 0, 0])));
  pts.push(proj(add(target, [0, 0, extent])), proj(add(target, [0, 0, -extent])));
  let minX = Infinity, maxX = -Infinity, minY = Infinity, maxY = -Infinity;
  for (const [x, y] of pts) {
    minX = Math.min(minX, x); maxX = Math.max(maxX, x);
    minY = Math.min(minY, y); maxY = Math.max(maxY, y);
  }
  const spanX = Math.max(maxX - minX, 1e-6);
  const spanY = Math.max(maxY - minY, 1e-6);
  const scale = Math.min(
    (width * (1 - 2 * MARGIN)) / spanX,
    (height * (1 - 2 * MARGIN)) / spanY,
  );
  const toScreen = (p: Vec3): [number, number] => {
    const [x, y] = proj(p);
    return [
      width / 2 + (x - (minX + maxX) / 2) * scale,
      height / 2 + (y - (minY + maxY) / 2) * scale,
    ];
  };

  const glyphs: Glyph[] = [];
  const [tx, ty] = toScreen(target);
  glyphs.push({ kind: "sphere", x: tx, y: ty, r: radius * scale, tint: "focus", label: state.node.label });

  for (const { pos, label } of ring) {
    const [x, y] = toScreen(pos);
    glyphs.push({ kind: "sphere", x, y, r: radius * 0.3 * scale, tint: "highlight", label });
  }

  if (state.plane.enabled) {
    const offset = state.plane.offset;
    const center = add(target, state.plane.normal as Vec3, offset);
    const chord = Math.sqrt(Math.max(radius * radius - offset * offset, (radius * 0.12) ** 2));
    const [px, py] = toScreen(center);
    glyphs.push({ kind: "disc", x: px, y: py, rx: chord * scale, ry: chord * scale * 0.28 });
  }

  const [cx, cy] = toScreen(cam.position as Vec3);
  const ahead = toScreen(add(cam.position as Vec3, cam.view_direction as Vec3, radius));
  const dx = ahead[0] - cx, dy = ahead[1] - cy;
  const norm = Math.hypot(dx, dy) || 1;
  glyphs.push({ kind: "sight", x1: cx, y1: cy, x2: tx, y2: ty });
  glyphs.push({
    kind: "camera",
    x: cx,
    y: cy,
    dx: dx / norm,
    dy: dy / norm,
    len: Math.min(Math.max(radius * 0.45 * scale, 14), 60),
  });
  return glyphs;
}

// no usable camera pose: list whatever labels we do have, top to bottom
function outlineFallback(state: StateDocument, width: number, height: number): Glyph[] {
  const lines = [state.node.label, ...state.labels];
  return lines.slice(0, 12).map((text, i) => ({
    kind: "label" as const,
    x: width * 0.1,
    y: Math.min(24 + i * 18, height - 8),
    text,
  }));
}

const COLORS = {
  background: "#10141c",
  focus: "rgba(120, 170, 255, 0.18)",
  focusEdge: "#78aaff",
  highlight: "rgba(255, 190, 80, 0.30)",
  highlightEdge: "#ffbe50",
  disc: "rgba(90, 230, 210, 0.35)",
  discEdge: "#5ae6d2",
  camera: "#e8e8e8",
  sight: "rgba(232, 232, 232, 0.25)",
  text: "#d8dce4",
};

export function paint(ctx: CanvasRenderingContext2D, glyphs: Glyph[], width: number, height: number): void {
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, width, height);
  ctx.font = "11px system-ui, sans-serif";

  for (const g of glyphs) {
    switch (g.kind) {
      case "sphere": {
        ctx.beginPath();
        ctx.arc(g.x, g.y, g.r, 0, 2 * Math.PI);
        ctx.fillStyle = g.tint === "focus" ? COLORS.focus : COLORS.highlight;
        ctx.fill();
        ctx.strokeStyle = g.tint === "focus" ? COLORS.focusEdge : COLORS.highlightEdge;
        ctx.stroke();
        if (g.label) {
          ctx.fillStyle = COLORS.text;
          ctx.fillText(g.label, g.x + g.r * 0.2, g.y - g.r - 4);
        }
        break;
      }
      case "disc": {
        ctx.beginPath();
        ctx.ellipse(g.x, g.y, g.rx, g.ry, 0, 0, 2 * Math.PI);
        ctx.fillStyle = COLORS.disc;
        ctx.fill();
        ctx.strokeStyle = COLORS.discEdge;
        ctx.stroke();
        break;
      }
      case "sight": {
        ctx.strokeStyle = COLORS.sight;
        ctx.beginPath();
        ctx.moveTo(g.x1, g.y1);
        ctx.lineTo(g.x2, g.y2);
        ctx.stroke();
        break;
      }
      case "camera": {
        const spread = Math.PI / 10;
        const base = Math.atan2(g.dy, g.dx);
        ctx.strokeStyle = COLORS.camera;
        ctx.beginPath();
        for (const side of [-spread, spread]) {
          ctx.moveTo(g.x, g.y);
          ctx.lineTo(g.x + Math.cos(base + side) * g.len, g.y + Math.sin(base + side) * g.len);
        }
        ctx.stroke();
        ctx.fillStyle = COLORS.camera;
        ctx.beginPath();
        ctx.arc(g.x, g.y, 3, 0, 2 * Math.PI);
        ctx.fill();
        break;
      }
      case "label": {
        ctx.fillStyle = COLORS.text;
        ctx.fillText(g.text, g.x, g.y);
        break;
      }
    }
  }
}
