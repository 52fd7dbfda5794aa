/** Viewer state machine.
 *
 * Geometry is never owned by the viewer: every rendered frame derives from
 * the last server snapshot, so a refresh (or a second tab polling the same
 * session) shows exactly the same surface.  Stepping keeps at most one
 * request in flight; key repeats while a step is pending are dropped, not
 * queued, matching the key-repeat cadence of the desktop original.
 */

import { ApiError, CrossSection, MeshPayload, SessionClient, Snapshot } from './api.js';

export type DisplayMode = 'surface' | 'metric';

export interface Camera {
  yaw: number;
  pitch: number;
}

export interface ViewerOptions {
  /** drag sensitivity: shape-parameter change per pixel */
  dragScale: number;
  stepsPerKey: number;
  meshSegments: number;
}

export const DEFAULT_OPTIONS: ViewerOptions = {
  dragScale: 0.004,
  stepsPerKey: 1,
  meshSegments: 48,
};

export class ViewerState {
  sessionId = '';
  mode: 'shape' | 'flow' = 'shape';
  display: DisplayMode = 'surface';
  camera: Camera = { yaw: 0.6, pitch: 0.25 };
  lastStatus: 'ok' | 'unstable' | 'pinched' = 'ok';
  lightOn = true;

  snapshot: Snapshot | null = null;
  mesh: MeshPayload | null = null;
  crossSection: CrossSection | null = null;

  c3 = 0;
  c5 = 0;

  private stepInFlight = false;
  private dragInFlight = false;
  private pendingDrag: { c3: number; c5: number } | null = null;

  constructor(
    private client: SessionClient,
    readonly options: ViewerOptions = DEFAULT_OPTIONS,
    private onChange: () => void = () => {},
  ) {}

  get stepPending(): boolean {
    return this.stepInFlight;
  }

  async create(c3 = 0, c5 = 0): Promise<void> {
    this.sessionId = await this.client.create(c3, c5);
    this.c3 = c3;
    this.c5 = c5;
    this.mode = 'shape';
    this.lastStatus = 'ok';
    await this.refreshGeometry();
  }

  private async refreshGeometry(): Promise<void> {
    const [snapshot, mesh, cross] = await Promise.all([
      this.client.snapshot(this.sessionId),
      this.client.mesh(this.sessionId, this.options.meshSegments),
      this.client.crossSection(this.sessionId),
    ]);
    this.applySnapshot(snapshot);
    this.mesh = mesh;
    this.crossSection = cross;
    this.onChange();
  }

  private applySnapshot(s: Snapshot): void {
    this.snapshot = s;
    this.lastStatus = s.status;
    if (typeof s.c3 === 'number') this.c3 = s.c3;
    if (typeof s.c5 === 'number') this.c5 = s.c5;
  }

  /** Shape-mode drag: horizontal pixels move c3, vertical pixels move c5.
   * The server clamps to the admissible region; local params follow the
   * server's reply so dragging past the boundary stops changing the shape. */
  async dragShape(dxPixels: number, dyPixels: number): Promise<void> {
    if (this.mode !== 'shape') {
      // flow mode: dragging rotates instead
      this.rotate(dxPixels * 0.01, dyPixels * 0.01);
      return;
    }
    if (dxPixels === 0 && dyPixels === 0) return;
    const target = {
      c3: this.c3 + dxPixels * this.options.dragScale,
      c5: this.c5 + dyPixels * this.options.dragScale,
    };
    if (this.dragInFlight) {
      this.pendingDrag = target; // coalesce, do not queue a burst
      return;
    }
    this.dragInFlight = true;
    try {
      let next: { c3: number; c5: number } | null = target;
      while (next) {
        const req = next;
        next = null;
        const snap = await this.client.updateShape(this.sessionId, req.c3, req.c5);
        this.applySnapshot(snap);
        await this.refreshMeshAndCross();
        this.onChange();
        next = this.pendingDrag;
        this.pendingDrag = null;
      }
    } finally {
      this.dragInFlight = false;
    }
  }

  private async refreshMeshAndCross(): Promise<void> {
    const [mesh, cross] = await Promise.all([
      this.client.mesh(this.sessionId, this.options.meshSegments),
      this.client.crossSection(this.sessionId),
    ]);
    this.mesh = mesh;
    this.crossSection = cross;
  }

  async setMode(mode: 'shape' | 'flow'): Promise<void> {
    if (mode === this.mode) return;
    await this.client.setMode(this.sessionId, mode);
    this.mode = mode;
    if (mode === 'shape') this.lastStatus = 'ok'; // reset discards the flow
    await this.refreshGeometry();
  }

  /** One step request per key repeat; drops repeats while one is pending. */
  async step(direction: 'forward' | 'backward'): Promise<void> {
    if (this.mode !== 'flow' || this.stepInFlight || this.lastStatus !== 'ok') return;
    this.stepInFlight = true;
    try {
      const snap = await this.client.step(this.sessionId, this.options.stepsPerKey, direction);
      this.applySnapshot(snap);
      await this.refreshMeshAndCross();
      this.onChange();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.lastStatus = 'unstable'; // server already refuses further steps
        this.onChange();
      } else {
        throw err;
      }
    } finally {
      this.stepInFlight = false;
    }
  }

  rotate(dYaw: number, dPitch: number): void {
    this.camera.yaw += dYaw;
    this.camera.pitch = Math.max(-1.4, Math.min(1.4, this.camera.pitch + dPitch));
    this.onChange();
  }

  toggleLight(): void {
    this.lightOn = !this.lightOn;
    this.onChange();
  }

  /** Keyboard bindings of the desktop original. */
  async handleKey(key: string): Promise<void> {
    switch (key) {
      case 'ArrowUp':
        await this.step('forward');
        break;
      case 'ArrowDown':
        await this.step('backward');
        break;
      case 'ArrowLeft':
        this.rotate(-0.1, 0);
        break;
      case 'ArrowRight':
        this.rotate(0.1, 0);
        break;
      case 'n':
        await this.setMode('shape');
        break;
      case 'f':
        await this.setMode('flow');
        break;
      case 'm':
        this.display = 'metric';
        this.onChange();
        break;
      case 's':
        this.display = 'surface';
        this.onChange();
        break;
    }
  }
}
