/** Scene construction: snapshots in, colored polylines out.
 *
 * The surface view draws the wireframe of the revolution mesh (parallels =
 * vertex rings, meridians = ring columns) under an orbiting orthographic
 * camera.  Grid-line color encodes the session state: blue in shape mode,
 * orange in flow mode, black once the flow has destabilized.  The metric
 * view plots h in green, m in blue and the surface's cross-section in
 * white.  Everything here is pure data -> data so tests run without a DOM;
 * the canvas adapter at the bottom is the only part that touches 2D
 * context calls.
 */

import { MeshPayload, Snapshot, CrossSection } from './api.js';
import { Camera, DisplayMode } from './state.js';

export interface Stroke {
  points: [number, number][];
  color: string;
  width: number;
}

export const COLORS = {
  shapeGrid: '#3b6fd4',
  flowGrid: '#d48f3b',
  unstableGrid: '#000000',
  h: '#2fbf4a',
  m: '#3b6fd4',
  crossSection: '#ffffff',
  background: '#1b1e24',
  axis: '#555a66',
};

export function gridColor(mode: 'shape' | 'flow', status: string): string {
  if (status !== 'ok') return COLORS.unstableGrid;
  return mode === 'shape' ? COLORS.shapeGrid : COLORS.flowGrid;
}

function project(camera: Camera, scale: number, cx: number, cy: number) {
  const cy_ = Math.cos(camera.yaw);
  const sy = Math.sin(camera.yaw);
  const cp = Math.cos(camera.pitch);
  const sp = Math.sin(camera.pitch);
  return (x: number, y: number, z: number): [number, number] => {
    // yaw about the vertical screen axis, then pitch about the horizontal
    const x1 = cy_ * x + sy * z;
    const z1 = -sy * x + cy_ * z;
    const y1 = cp * y - sp * z1;
    return [cx + scale * x1, cy - scale * y1];
  };
}

/** Wireframe strokes for the surface display. */
export function surfaceStrokes(
  mesh: MeshPayload,
  camera: Camera,
  mode: 'shape' | 'flow',
  status: string,
  view: { width: number; height: number },
  parallelEvery = 4,
  meridianEvery = 4,
): Stroke[] {
  const { vertices, segments, rings } = mesh;
  const v = (ring: number, seg: number): [number, number, number] => {
    const i = 3 * (ring * segments + (seg % segments));
    return [vertices[i], vertices[i + 1], vertices[i + 2]];
  };
  // center the axis span and fit the view
  let xMin = Infinity;
  let xMax = -Infinity;
  let rMax = 0;
  for (let ring = 0; ring < rings; ring++) {
    const [x, y, z] = v(ring, 0);
    xMin = Math.min(xMin, x);
    xMax = Math.max(xMax, x);
    rMax = Math.max(rMax, Math.hypot(y, z));
  }
  const half = Math.max((xMax - xMin) / 2, rMax, 1e-9);
  const scale = (0.42 * Math.min(view.width, view.height)) / half;
  const mid = (xMin + xMax) / 2;
  const p = project(camera, scale, view.width / 2, view.height / 2);
  const color = gridColor(mode, status);
  const strokes: Stroke[] = [];

  for (let ring = 0; ring < rings; ring += parallelEvery) {
    const pts: [number, number][] = [];
    for (let seg = 0; seg <= segments; seg++) {
      const [x, y, z] = v(ring, seg);
      pts.push(p(x - mid, y, z));
    }
    strokes.push({ points: pts, color, width: 1 });
  }
  for (let seg = 0; seg < segments; seg += meridianEvery) {
    const pts: [number, number][] = [];
    for (let ring = 0; ring < rings; ring++) {
      const [x, y, z] = v(ring, seg);
      pts.push(p(x - mid, y, z));
    }
    strokes.push({ points: pts, color, width: 1 });
  }
  return strokes;
}

/** Metric display: h (green), m (blue), cross-section (white). */
export function metricStrokes(
  snapshot: Snapshot,
  cross: CrossSection | null,
  view: { width: number; height: number },
): Stroke[] {
  const { rho, h, m } = snapshot;
  const w = view.width;
  const hgt = view.height;
  const margin = 0.08 * Math.min(w, hgt);
  const yTop = margin;
  const yBottom = hgt - margin;
  const crossYMax = cross ? Math.max(...cross.points.map((pt) => pt[1]), 0) : 0;
  const vMax = Math.max(...h, ...m, crossYMax, 1e-9);
  const toXY = (frac: number, value: number): [number, number] => [
    margin + frac * (w - 2 * margin),
    yBottom - (value / vMax) * (yBottom - yTop),
  ];
  const rhoMax = rho[rho.length - 1];
  const curve = (values: number[], color: string): Stroke => ({
    points: values.map((value, i) => toXY(rho[i] / rhoMax, value)),
    color,
    width: 2,
  });
  const strokes: Stroke[] = [
    { points: [toXY(0, 0), toXY(1, 0)], color: COLORS.axis, width: 1 },
    curve(h, COLORS.h),
    curve(m, COLORS.m),
  ];
  if (cross && cross.points.length > 1) {
    const xs = cross.points.map((pt) => pt[0]);
    const span = Math.max(...xs, 1e-9);
    strokes.push({
      points: cross.points.map((pt) => toXY(pt[0] / span, pt[1])),
      color: COLORS.crossSection,
      width: 1.5,
    });
  }
  return strokes;
}

export function buildScene(
  display: DisplayMode,
  snapshot: Snapshot | null,
  mesh: MeshPayload | null,
  cross: CrossSection | null,
  camera: Camera,
  mode: 'shape' | 'flow',
  status: string,
  view: { width: number; height: number },
): Stroke[] {
  if (!snapshot) return [];
  if (display === 'metric') return metricStrokes(snapshot, cross, view);
  if (!mesh) return [];
  return surfaceStrokes(mesh, camera, mode, status, view);
}

/** Minimal slice of CanvasRenderingContext2D the painter needs. */
export interface StrokeContext {
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  fillStyle: string | CanvasGradient | CanvasPattern;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
}

export function paint(ctx: StrokeContext, strokes: Stroke[], view: { width: number; height: number }): void {
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, view.width, view.height);
  for (const s of strokes) {
    if (s.points.length < 2) continue;
    ctx.strokeStyle = s.color;
    ctx.lineWidth = s.width;
    ctx.beginPath();
    ctx.moveTo(s.points[0][0], s.points[0][1]);
    for (let i = 1; i < s.points.length; i++) {
      ctx.lineTo(s.points[i][0], s.points[i][1]);
    }
    ctx.stroke();
  }
}
