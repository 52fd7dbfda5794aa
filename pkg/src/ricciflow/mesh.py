"""Triangle meshes of revolution and Wavefront OBJ export."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RevolutionMesh:
    """Surface of revolution of a generating curve about the x-axis.

    ``vertices`` has one ring of ``segments`` copies per accepted curve
    node, so the raw vertex count is segments * n_nodes even where rings
    degenerate to a point (y = 0 at closed poles).  ``faces`` triangulates
    consecutive rings, two triangles per quad, including the degenerate
    zero-area triangles at pole rings.
    """

    vertices: np.ndarray
    faces: np.ndarray
    segments: int

    @property
    def n_rings(self):
        return len(self.vertices) // self.segments


def revolve_mesh(curve, segments):
    """Revolve a generating curve about the x-axis with the given number of
    azimuthal divisions.  Bands join only consecutive accepted grid nodes,
    so omitted nodes leave the mesh open there.  Watertight when the curve
    is complete and both endpoints sit on the axis."""
    if segments < 8 and segments != 4:
        # segments=4 kept for the octahedron-style degenerate demo
        raise ValueError("segments must be at least 8")
    x = curve.x
    y = curve.y
    n = len(x)
    if n < 2:
        raise ValueError("curve needs at least two accepted nodes")
    phi = 2.0 * np.pi * np.arange(segments) / segments
    cos_p, sin_p = np.cos(phi), np.sin(phi)
    vx = np.repeat(x, segments)
    vy = np.outer(y, cos_p).ravel()
    vz = np.outer(y, sin_p).ravel()
    vertices = np.column_stack([vx, vy, vz])

    adjacent = np.diff(curve.accepted) == 1
    band = np.nonzero(adjacent)[0]
    rings = band[:, None] * segments
    j = np.arange(segments)
    jn = (j + 1) % segments
    a = rings + j
    b = rings + jn
    c = a + segments
    d = b + segments
    tri1 = np.stack([a, b, c], axis=-1).reshape(-1, 3)
    tri2 = np.stack([b, d, c], axis=-1).reshape(-1, 3)
    faces = np.empty((2 * segments * len(band), 3), dtype=np.int64)
    faces[0::2] = tri1
    faces[1::2] = tri2
    return RevolutionMesh(vertices=vertices, faces=faces, segments=segments)


def _welded(mesh, tol=1e-12):
    """Weld coincident vertices and drop degenerate triangles."""
    key = np.round(mesh.vertices / max(tol, 1e-300)).astype(np.int64)
    _, first, inverse = np.unique(key, axis=0, return_index=True, return_inverse=True)
    faces = inverse[mesh.faces]
    good = (faces[:, 0] != faces[:, 1]) & (faces[:, 1] != faces[:, 2]) & (faces[:, 0] != faces[:, 2])
    return len(first), faces[good]


def mesh_diagnostics(mesh):
    """Watertightness report on the welded mesh.

    Returns a dict with the welded vertex/face counts, Euler characteristic,
    and the number of boundary edges (edges with a single incident face;
    zero for a watertight mesh).
    """
    n_vert, faces = _welded(mesh)
    edges = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    edges.sort(axis=1)
    uniq, counts = np.unique(edges, axis=0, return_counts=True)
    bedges = uniq[counts == 1]
    chi = n_vert - len(uniq) + len(faces)
    return {
        "welded_vertices": int(n_vert),
        "welded_faces": int(len(faces)),
        "euler_characteristic": int(chi),
        "boundary_edges": int(len(bedges)),
        "boundary_loops": _count_loops(bedges),
        "watertight": len(bedges) == 0,
    }


def _count_loops(bedges):
    """Connected components of the boundary-edge graph."""
    if len(bedges) == 0:
        return 0
    parent = {}

    def find(v):
        while parent.get(v, v) != v:
            parent[v] = parent.get(parent[v], parent[v])
            v = parent[v]
        return v

    loops = 0
    for a, b in bedges:
        ra, rb = find(int(a)), find(int(b))
        if ra != rb:
            parent[ra] = rb
    roots = {find(int(v)) for v in bedges.ravel()}
    loops = len(roots)
    return loops


def write_obj(mesh, path):
    """Write positions and faces (1-based indices) as Wavefront OBJ."""
    with open(path, "w") as f:
        f.write(obj_text(mesh))


def obj_text(mesh):
    lines = [f"v {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}" for v in mesh.vertices]
    lines += [f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}" for t in mesh.faces]
    return "\n".join(lines) + "\n"


def indexed_triangles(mesh):
    """Indexed-triangle dict for JSON transport to viewers."""
    return {
        "vertices": mesh.vertices.ravel().tolist(),
        "faces": mesh.faces.ravel().tolist(),
        "segments": mesh.segments,
        "rings": mesh.n_rings,
    }
