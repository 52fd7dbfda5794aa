/** Typed client for the ricciflow session API.
 *
 * The fetch function is injectable so tests can mock the server; every
 * method returns the parsed JSON body and throws ApiError on non-2xx
 * responses (the service uses 404 for unknown sessions and 409 for
 * wrong-mode or stopped-flow requests).
 */

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface Snapshot {
  version: number;
  kind: string;
  t: number;
  rho: number[];
  h: number[];
  m: number[];
  status: 'ok' | 'unstable' | 'pinched';
  mode: 'shape' | 'flow';
  c3: number;
  c5: number;
  clamped?: boolean;
  diagnostics?: {
    area: number;
    total_curvature: number;
    max_ratio: number;
    min_m: number;
  };
}

export interface MeshPayload {
  vertices: number[];
  faces: number[];
  segments: number;
  rings: number;
  complete: boolean;
  status: string;
}

export interface CrossSection {
  points: [number, number][];
  complete: boolean;
  accepted: number[];
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

async function parse<T>(res: Response): Promise<T> {
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = await res.json();
      detail = body.detail ?? detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(res.status, detail);
  }
  return res.json() as Promise<T>;
}

export class SessionClient {
  constructor(
    private base: string = '',
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.fetchFn(this.base + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    }).then((r) => parse<T>(r));
  }

  async create(c3: number, c5: number, grid = 256, dt = 2e-3): Promise<string> {
    const body = await this.post<{ id: string }>('/api/sessions', { c3, c5, grid, dt });
    return body.id;
  }

  updateShape(id: string, c3: number, c5: number): Promise<Snapshot> {
    return this.fetchFn(`${this.base}/api/sessions/${id}/shape`, {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ c3, c5 }),
    }).then((r) => parse<Snapshot>(r));
  }

  setMode(id: string, mode: 'shape' | 'flow'): Promise<{ ok: boolean; mode: string }> {
    return this.post(`/api/sessions/${id}/mode`, { mode });
  }

  step(id: string, count: number, direction: 'forward' | 'backward'): Promise<Snapshot> {
    return this.post(`/api/sessions/${id}/step`, { count, direction });
  }

  snapshot(id: string): Promise<Snapshot> {
    return this.fetchFn(`${this.base}/api/sessions/${id}`).then((r) => parse<Snapshot>(r));
  }

  mesh(id: string, segments = 48): Promise<MeshPayload> {
    return this.fetchFn(`${this.base}/api/sessions/${id}/mesh?segments=${segments}`).then((r) =>
      parse<MeshPayload>(r),
    );
  }

  crossSection(id: string): Promise<CrossSection> {
    return this.fetchFn(`${this.base}/api/sessions/${id}/cross-section`).then((r) =>
      parse<CrossSection>(r),
    );
  }

  metric(id: string): Promise<{ rho: number[]; h: number[]; m: number[]; status: string }> {
    return this.fetchFn(`${this.base}/api/sessions/${id}/metric`).then((r) => parse(r));
  }
}
