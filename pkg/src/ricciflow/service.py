"""Local HTTP session service driving the interactive viewer.

Sessions mirror the two modes of the desktop tool: in *shape* mode the
client drags through the (c3, c5) family; in *flow* mode arrow-key repeats
arrive as step requests.  Polling request/response is enough at key-repeat
cadence, so there is no push channel.  The service binds loopback only by
default; this is a local instrument, not a deployment target.

Concurrency: a per-session lock serializes steps on one session (requests
are processed in arrival order) while distinct sessions proceed in
parallel.  Snapshots returned to clients are plain JSON copies of immutable
profiles.
"""

import secrets
import threading
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import flow2d, mesh as meshmod, profile as prof, snapshots
from .flow2d import Flow2DConfig
from .profile import ShapeParams

HISTORY_LIMIT = 512

MODE_SHAPE = "shape"
MODE_FLOW = "flow"


class CreateSession(BaseModel):
    c3: float
    c5: float
    grid: int = 256
    dt: float = 2e-3


class ShapeUpdate(BaseModel):
    c3: float
    c5: float


class ModeChange(BaseModel):
    mode: str


class StepRequest(BaseModel):
    count: int = 1
    direction: str = "forward"


@dataclass
class Session:
    id: str
    params: ShapeParams
    profile: object
    cfg: Flow2DConfig
    mode: str = MODE_SHAPE
    history: deque = field(default_factory=lambda: deque(maxlen=HISTORY_LIMIT))
    lock: threading.Lock = field(default_factory=threading.Lock)


def clamp_to_admissible(current, requested, steps=40):
    """Nearest admissible point to `requested` on the segment from `current`.

    Bisection along the drag direction, mirroring how the desktop tool's
    shape simply stops changing at the boundary of the accepted region.
    Returns (params, clamped_flag).
    """
    if prof.check_admissible(requested)[0]:
        return requested, False
    lo, hi = 0.0, 1.0  # fraction along current -> requested; 0 is admissible
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        cand = ShapeParams(
            c3=current.c3 + mid * (requested.c3 - current.c3),
            c5=current.c5 + mid * (requested.c5 - current.c5),
        )
        if prof.check_admissible(cand)[0]:
            lo = mid
        else:
            hi = mid
    return ShapeParams(
        c3=current.c3 + lo * (requested.c3 - current.c3),
        c5=current.c5 + lo * (requested.c5 - current.c5),
    ), True


def create_app():
    app = FastAPI(title="ricciflow session service")
    sessions = {}
    registry_lock = threading.Lock()

    def get_session(sid):
        with registry_lock:
            s = sessions.get(sid)
        if s is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")
        return s

    def snapshot_body(s, clamped=None):
        body = snapshots.snapshot_dict(s.profile)
        body["mode"] = s.mode
        body["c3"] = s.params.c3
        body["c5"] = s.params.c5
        if clamped is not None:
            body["clamped"] = clamped
        return body

    @app.post("/api/sessions")
    def create_session(req: CreateSession):
        params = ShapeParams(c3=req.c3, c5=req.c5)
        ok, why = prof.check_admissible(params)
        if not ok:
            raise HTTPException(status_code=400, detail=f"inadmissible shape: {why}")
        cfg = Flow2DConfig(dt=req.dt)
        p = prof.make_initial_surface(params, req.grid)
        sid = secrets.token_hex(8)
        s = Session(id=sid, params=params, profile=p, cfg=cfg)
        with registry_lock:
            sessions[sid] = s
        return {"id": sid}

    @app.put("/api/sessions/{sid}/shape")
    def update_shape(sid: str, req: ShapeUpdate):
        s = get_session(sid)
        with s.lock:
            if s.mode != MODE_SHAPE:
                raise HTTPException(status_code=409, detail="session is in flow mode; press 'n' (shape mode) first")
            params, clamped = clamp_to_admissible(s.params, ShapeParams(req.c3, req.c5))
            s.params = params
            s.profile = prof.make_initial_surface(params, s.profile.n)
            return snapshot_body(s, clamped=clamped)

    @app.post("/api/sessions/{sid}/mode")
    def change_mode(sid: str, req: ModeChange):
        s = get_session(sid)
        if req.mode not in (MODE_SHAPE, MODE_FLOW):
            raise HTTPException(status_code=422, detail=f"unknown mode {req.mode!r}")
        with s.lock:
            if req.mode == s.mode:
                return {"ok": True, "mode": s.mode}
            if req.mode == MODE_FLOW:
                s.mode = MODE_FLOW
                s.history.clear()
                s.history.append(snapshots.snapshot_dict(s.profile))
            else:
                # leaving flow mode resets to the family shape at the current params
                s.mode = MODE_SHAPE
                s.profile = prof.make_initial_surface(s.params, s.profile.n)
                s.history.clear()
            return {"ok": True, "mode": s.mode}

    @app.post("/api/sessions/{sid}/step")
    def step(sid: str, req: StepRequest):
        s = get_session(sid)
        if req.direction not in ("forward", "backward"):
            raise HTTPException(status_code=422, detail=f"unknown direction {req.direction!r}")
        if req.count < 1:
            raise HTTPException(status_code=422, detail="count must be >= 1")
        with s.lock:
            if s.mode != MODE_FLOW:
                raise HTTPException(status_code=409, detail="session is in shape mode; press 'f' (flow mode) first")
            if s.profile.status != prof.STATUS_OK:
                raise HTTPException(status_code=409, detail=f"flow stopped: status is {s.profile.status}; further steps rejected")
            p, _ = flow2d.flow_surface(s.profile, s.cfg, req.count, direction=req.direction)
            if not (np.isfinite(p.h).all() and np.isfinite(p.m).all()):
                # keep the last drawable state; only the status changes
                p = s.profile.with_fields(status=p.status)
            s.profile = p
            s.history.append(snapshots.snapshot_dict(p))
            return snapshot_body(s)

    @app.get("/api/sessions/{sid}")
    def full_snapshot(sid: str):
        s = get_session(sid)
        with s.lock:
            return snapshot_body(s)

    @app.get("/api/sessions/{sid}/mesh")
    def session_mesh(sid: str, segments: int = 64, format: str = "json"):
        s = get_session(sid)
        with s.lock:
            curve = prof.generating_curve(s.profile)
            m = meshmod.revolve_mesh(curve, segments)
            if format == "obj":
                from fastapi.responses import PlainTextResponse
                return PlainTextResponse(meshmod.obj_text(m))
            body = meshmod.indexed_triangles(m)
            body["complete"] = curve.complete
            body["status"] = s.profile.status
            return body

    @app.get("/api/sessions/{sid}/cross-section")
    def cross_section(sid: str):
        s = get_session(sid)
        with s.lock:
            curve = prof.generating_curve(s.profile)
            return {
                "points": curve.points.tolist(),
                "complete": curve.complete,
                "accepted": curve.accepted.tolist(),
            }

    @app.get("/api/sessions/{sid}/metric")
    def metric_arrays(sid: str):
        s = get_session(sid)
        with s.lock:
            return {
                "rho": s.profile.rho.tolist(),
                "h": s.profile.h.tolist(),
                "m": s.profile.m.tolist(),
                "status": s.profile.status,
            }

    @app.get("/api/sessions/{sid}/history")
    def history(sid: str, index: int = -1):
        s = get_session(sid)
        with s.lock:
            if not s.history:
                raise HTTPException(status_code=404, detail="no history recorded")
            try:
                return s.history[index]
            except IndexError:
                raise HTTPException(status_code=404, detail=f"history index {index} out of range (len {len(s.history)})")

    return app


def run(host="127.0.0.1", port=None):
    import os
    import uvicorn
    if port is None:
        port = int(os.environ.get("RICCIFLOW_PORT", "8642"))
    uvicorn.run(create_app(), host=host, port=port)
