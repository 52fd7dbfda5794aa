import numpy as np
import pytest

import ricciflow as rf
from ricciflow import mesh as meshmod
from ricciflow import profile as prof


def round_curve(n):
    p = rf.make_initial_surface(rf.ShapeParams(0, 0), n)
    return rf.generating_curve(p)


class TestRevolveMesh:
    def test_vertex_count_is_segments_times_nodes(self):
        c = round_curve(64)
        m = rf.revolve_mesh(c, 16)
        assert len(m.vertices) == 16 * len(c.x)
        assert len(m.faces) == 2 * 16 * (len(c.x) - 1)

    def test_octahedron_like_with_four_segments(self):
        # 3 rings, 4 segments: welding the poles leaves the octahedron
        rho = np.linspace(0, np.pi, 32)
        p = rf.make_initial_surface(rf.ShapeParams(0, 0), 32)
        c = rf.generating_curve(p)
        m = rf.revolve_mesh(c, 4)
        assert len(m.faces) == 2 * 4 * (len(c.x) - 1)

    def test_watertight_sphere_euler_characteristic(self):
        c = round_curve(64)
        m = rf.revolve_mesh(c, 32)
        d = meshmod.mesh_diagnostics(m)
        assert d["watertight"]
        assert d["boundary_loops"] == 0
        assert d["euler_characteristic"] == 2

    def test_incomplete_curve_gives_open_mesh_with_boundary_loops(self):
        rho = np.linspace(0, np.pi, 64)
        m_arr = np.sin(rho) ** 2
        m_arr[30:34] = -1e-3
        p = prof.MetricProfile(kind="surface2d", rho=rho, h=np.ones(64), m=m_arr)
        c = rf.generating_curve(p)
        assert not c.complete
        mesh = rf.revolve_mesh(c, 16)
        d = meshmod.mesh_diagnostics(mesh)
        assert not d["watertight"]
        assert d["boundary_loops"] >= 1

    def test_dumbbell_mesh_has_two_bulges(self):
        # radius profile along the axis has two local maxima
        p = rf.make_initial_surface(rf.ShapeParams(0.766, -0.091), 256)
        c = rf.generating_curve(p)
        m = rf.revolve_mesh(c, 64)
        y = c.y
        interior_max = (y[1:-1] > y[:-2]) & (y[1:-1] > y[2:])
        assert interior_max.sum() == 2

    def test_segment_validation(self):
        c = round_curve(64)
        with pytest.raises(ValueError):
            rf.revolve_mesh(c, 5)


class TestObjExport:
    def test_obj_text_round_trips_floats(self, tmp_path):
        c = round_curve(32)
        m = rf.revolve_mesh(c, 8)
        path = tmp_path / "sphere.obj"
        meshmod.write_obj(m, path)
        lines = path.read_text().strip().splitlines()
        v_lines = [l for l in lines if l.startswith("v ")]
        f_lines = [l for l in lines if l.startswith("f ")]
        assert len(v_lines) == len(m.vertices)
        assert len(f_lines) == len(m.faces)
        got = np.array([[float(x) for x in l.split()[1:]] for l in v_lines])
        assert np.array_equal(got, m.vertices)
        # 1-based face indices within range
        idx = np.array([[int(x) for x in l.split()[1:]] for l in f_lines])
        assert idx.min() >= 1 and idx.max() <= len(m.vertices)
