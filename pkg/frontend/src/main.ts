/** Browser shell: canvas + event wiring around ViewerState.
 *
 * Keys: n = shape mode (drag deforms), f = flow mode (drag rotates),
 * up/down arrows flow forward/backward (hold to repeat), left/right rotate,
 * m/s toggle the metric plot.  The light button stands in for the desktop
 * original's spotlight control.
 */

import { SessionClient } from './api.js';
import { ViewerState, DEFAULT_OPTIONS } from './state.js';
import { buildScene, paint } from './render.js';

function statusLine(state: ViewerState): string {
  const s = state.snapshot;
  const bits = [
    `mode: ${state.mode}`,
    `display: ${state.display}`,
    `status: ${state.lastStatus}`,
    `c3=${state.c3.toFixed(3)} c5=${state.c5.toFixed(3)}`,
  ];
  if (s) bits.push(`t=${s.t.toFixed(4)}`);
  if (s?.diagnostics) bits.push(`area=${s.diagnostics.area.toFixed(3)}`);
  if (state.lastStatus !== 'ok') bits.push('flow stopped (grid black)');
  return bits.join('   ');
}

async function boot(): Promise<void> {
  const canvas = document.getElementById('view') as HTMLCanvasElement;
  const status = document.getElementById('status') as HTMLElement;
  const lightBtn = document.getElementById('light') as HTMLButtonElement;
  const ctx = canvas.getContext('2d')!;
  const view = { width: canvas.width, height: canvas.height };

  const client = new SessionClient('');
  const state = new ViewerState(client, DEFAULT_OPTIONS, () => {
    const scene = buildScene(
      state.display, state.snapshot, state.mesh, state.crossSection,
      state.camera, state.mode, state.lastStatus, view,
    );
    paint(ctx, scene, view);
    status.textContent = statusLine(state);
  });

  await state.create(0, 0);

  let dragging = false;
  let last: [number, number] = [0, 0];
  canvas.addEventListener('mousedown', (e) => {
    dragging = true;
    last = [e.clientX, e.clientY];
  });
  window.addEventListener('mouseup', () => {
    dragging = false;
  });
  canvas.addEventListener('mousemove', (e) => {
    if (!dragging) return;
    const dx = e.clientX - last[0];
    const dy = e.clientY - last[1];
    last = [e.clientX, e.clientY];
    void state.dragShape(dx, dy);
  });
  window.addEventListener('keydown', (e) => {
    if (['ArrowUp', 'ArrowDown', 'ArrowLeft', 'ArrowRight'].includes(e.key)) {
      e.preventDefault();
    }
    void state.handleKey(e.key);
  });
  lightBtn.addEventListener('click', () => state.toggleLight());
}

void boot();
