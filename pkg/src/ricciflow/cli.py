"""Command-line interface.

Subcommands:

    surface init  --c3 R --c5 R --grid N --out FILE
    surface flow  --in FILE --dt R --steps N --snapshot-every K --out-dir DIR
    surface mesh  --in SNAPSHOT --segments N --out FILE.obj
    m3 flow       --mode fd|series [--profile paper | --m-min R] ...
    m3 fit        --in RUN.csv --quantity m|h|R|Kab|Kbc|all --out FILE
    serve         [--host H] [--port P]

Exit codes: 0 success, 1 bad input (e.g. inadmissible shape), 2 usage,
3 flow halted by numerical instability.
"""

import argparse
import os
import sys

import numpy as np

from . import flow2d, flow3d, mesh as meshmod, pinchfit, profile as prof, snapshots
from .flow2d import Flow2DConfig
from .profile import ShapeParams

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSTABLE = 3

#: single Euler steps of the qualitative large-step ladder
FD_LADDER = [
    0.000025, 0.00005, 0.0000625, 0.00006875, 0.000071875,
    0.000075, 0.00007578125, 0.0000765625, 0.000076953125, 0.00007734375,
]

#: late-time sample instants used for the standard scaling-law fits
FIT_SAMPLE_TIMES = [
    7.9300e-5, 7.9310e-5, 7.9320e-5, 7.9330e-5, 7.9340e-5, 7.9345e-5, 7.9350e-5,
]


def _surface_init(args):
    try:
        p = prof.make_initial_surface(ShapeParams(args.c3, args.c5), args.grid)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    snapshots.save_snapshot(args.out, p)
    print(f"wrote {args.out}")
    return EXIT_OK


def _surface_flow(args):
    p = snapshots.load_snapshot(getattr(args, "in"))
    cfg = Flow2DConfig(
        dt=abs(args.dt),
        filter_every=args.filter_every,
        reparam_every=args.reparam_every,
        n_h=args.modes, n_m=args.modes,
        k_pole=args.k_pole,
    )
    direction = "backward" if args.dt < 0 else "forward"
    os.makedirs(args.out_dir, exist_ok=True)
    all_diags = []
    idx = 0
    status = p.status
    remaining = args.steps
    while remaining > 0 and p.status == prof.STATUS_OK:
        chunk = min(args.snapshot_every, remaining)
        p, diags = flow2d.flow_surface(p, cfg, chunk, direction=direction)
        all_diags.extend(diags)
        remaining -= chunk
        status = p.status
        idx += 1
        snapshots.save_snapshot(
            os.path.join(args.out_dir, f"snapshot_{idx:05d}.json"), p,
            diagnostics=diags[-1] if diags else None,
        )
        if p.status != prof.STATUS_OK:
            break
    snapshots.write_diagnostics_csv(os.path.join(args.out_dir, "diagnostics.csv"), all_diags)
    print(f"{idx} snapshots, final t={p.t:.6g}, status={status}")
    return EXIT_OK if status == prof.STATUS_OK else EXIT_UNSTABLE


def _surface_mesh(args):
    p = snapshots.load_snapshot(getattr(args, "in"))
    curve = prof.generating_curve(p)
    m = meshmod.revolve_mesh(curve, args.segments)
    meshmod.write_obj(m, args.out)
    d = meshmod.mesh_diagnostics(m)
    print(f"wrote {args.out}: {len(m.vertices)} vertices, {len(m.faces)} triangles, "
          f"watertight={d['watertight']}, chi={d['euler_characteristic']}")
    return EXIT_OK


def _m3_flow(args):
    os.makedirs(args.out_dir, exist_ok=True)
    if args.mode == "fd":
        p = flow3d.make_neck_manifold(n=args.grid, m_min=args.m_min, k2=args.k2)
        schedule = [float(x) for x in args.times.split(",")] if args.times else FD_LADDER
        snaps = flow3d.fd_flow_3d(p, schedule, max_dt=args.max_dt,
                                  continue_past_pinch=args.continue_past_pinch)
        for i, s in enumerate(snaps, 1):
            snapshots.save_snapshot(os.path.join(args.out_dir, f"fd_{i:04d}.json"), s.profile)
        with open(os.path.join(args.out_dir, "fd_neck.csv"), "w") as f:
            f.write("t,m0,h0,status\n")
            for s in snaps:
                f.write(f"{float(s.profile.t)!r},{float(s.profile.m[0])!r},"
                        f"{float(s.profile.h[0])!r},{s.profile.status}\n")
        last = snaps[-1].profile.status if snaps else "none"
        print(f"{len(snaps)} qualitative snapshots, final status={last}")
        return EXIT_OK
    # series mode
    state = flow3d.neck_series_state(m_min=args.m_min, k2=args.k2)
    sample_times = [float(x) for x in args.times.split(",")] if args.times else FIT_SAMPLE_TIMES
    traj = flow3d.series_flow(state, stop_m0=args.stop_m0, eta=args.eta,
                              sample_times=sample_times)
    out_csv = os.path.join(args.out_dir, "series_run.csv")
    snapshots.write_series_csv(out_csv, traj)
    print(f"series run: status={traj.status}, t_end={traj.t_end:.10g}, "
          f"steps={traj.steps}, samples={len(traj.samples)} -> {out_csv}")
    if traj.status == prof.STATUS_UNSTABLE:
        return EXIT_UNSTABLE
    return EXIT_OK


def _m3_fit(args):
    cols = snapshots.read_series_csv(getattr(args, "in"))
    ts = cols["t"]

    class _Cols:
        def column(self, name):
            return cols["t"] if name == "t" else cols[{"m": "m0", "h": "h0", "R": "R0",
                                                       "Kab": "Kab0", "Kbc": "Kbc0"}[name]]
    quantities = ("m", "h", "R", "Kab", "Kbc") if args.quantity == "all" else (args.quantity,)
    rows = pinchfit.fit_report(_Cols(), grid=args.grid, quantities=quantities)
    base, ext = os.path.splitext(args.out)
    if ext.lower() == ".json":
        pinchfit.write_fit_json(rows, args.out)
        pinchfit.write_fit_csv(rows, base + ".csv")
    else:
        pinchfit.write_fit_csv(rows, args.out)
        pinchfit.write_fit_json(rows, base + ".json")
    for r in rows:
        print(f"{r.quantity:4s}: c={r.fit.c:+.4f} p={r.fit.p:+.4f} T={r.fit.T:.8e} "
              f"rss={r.fit.rss:.3e} cond={r.fit.conditioning:.3g} flags={','.join(r.flags) or '-'}")
    return EXIT_OK


def _serve(args):
    from . import service
    service.run(host=args.host, port=args.port)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="ricciflow",
                                 description="Ricci flow of metrics of revolution")
    sub = ap.add_subparsers(dest="command", required=True)

    surf = sub.add_parser("surface", help="2-sphere surface flow")
    ssub = surf.add_subparsers(dest="subcommand", required=True)

    si = ssub.add_parser("init", help="write an initial-family snapshot")
    si.add_argument("--c3", type=float, required=True)
    si.add_argument("--c5", type=float, required=True)
    si.add_argument("--grid", type=int, default=256)
    si.add_argument("--out", required=True)
    si.set_defaults(func=_surface_init)

    sf = ssub.add_parser("flow", help="run the surface flow")
    sf.add_argument("--in", required=True)
    sf.add_argument("--dt", type=float, default=2e-3,
                    help="time step; negative flows backward (unstable)")
    sf.add_argument("--steps", type=int, required=True)
    sf.add_argument("--snapshot-every", type=int, default=10)
    sf.add_argument("--out-dir", required=True)
    sf.add_argument("--filter-every", type=int, default=1)
    sf.add_argument("--reparam-every", type=int, default=1)
    sf.add_argument("--modes", type=int, default=16)
    sf.add_argument("--k-pole", type=float, default=25.0)
    sf.set_defaults(func=_surface_flow)

    sm = ssub.add_parser("mesh", help="export a snapshot as an OBJ mesh")
    sm.add_argument("--in", required=True)
    sm.add_argument("--segments", type=int, default=64)
    sm.add_argument("--out", required=True)
    sm.set_defaults(func=_surface_mesh)

    m3 = sub.add_parser("m3", help="3-manifold neck pinch")
    msub = m3.add_subparsers(dest="subcommand", required=True)

    mf = msub.add_parser("flow", help="run the 3-manifold flow")
    mf.add_argument("--mode", choices=("fd", "series"), required=True)
    mf.add_argument("--profile", choices=("paper",), default="paper",
                    help="named initial-data preset (the standard pinching example)")
    mf.add_argument("--m-min", type=float, default=1e-4,
                    help="neck offset of the preset initial data")
    mf.add_argument("--k2", type=float, default=1.0)
    mf.add_argument("--grid", type=int, default=512, help="fd grid nodes")
    mf.add_argument("--times", default=None,
                    help="comma-separated target/sample times (defaults to the standard sets)")
    mf.add_argument("--max-dt", type=float, default=None,
                    help="fd substep cap; default is one Euler step per interval")
    mf.add_argument("--continue-past-pinch", action="store_true")
    mf.add_argument("--stop-m0", type=float, default=1e-9)
    mf.add_argument("--eta", type=float, default=1e-3,
                    help="series integrator relative step tolerance")
    mf.add_argument("--out-dir", required=True)
    mf.set_defaults(func=_m3_flow)

    mfit = msub.add_parser("fit", help="power-law fits of a series run")
    mfit.add_argument("--in", required=True, help="series_run.csv from `m3 flow --mode series`")
    mfit.add_argument("--quantity", choices=("m", "h", "R", "Kab", "Kbc", "all"), default="all")
    mfit.add_argument("--grid", type=int, default=10_000)
    mfit.add_argument("--out", required=True, help="output table (.csv or .json; both are written)")
    mfit.set_defaults(func=_m3_fit)

    sv = sub.add_parser("serve", help="run the local session service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=None,
                    help="default: $RICCIFLOW_PORT or 8642")
    sv.set_defaults(func=_serve)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
