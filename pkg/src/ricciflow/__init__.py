"""Numerical laboratory for Ricci flow of metrics of revolution.

Two numerically distinct instruments share the chart-form metric types:

* a 2-sphere surface-of-revolution flow (explicit finite differences,
  spectral filtering with a pole correction, arc-length reparametrization)
  driving an interactive viewer through a local HTTP session service, and
* a 3-manifold neck-pinch solver with a qualitative finite-difference mode
  and a quantitative order-10 power-series mode, plus power-law fitting of
  the blow-up quantities near the pinch time.
"""

from .profile import (
    MetricProfile,
    ShapeParams,
    SpectralCoefficients,
    GeneratingCurve,
    EmbeddabilityReport,
    make_initial_surface,
    check_admissible,
    embeddability_check,
    generating_curve,
    area,
    total_curvature,
)
from .flow2d import (
    Flow2DConfig,
    FlowDiagnostics,
    ricci_tensor_2d,
    euler_step_2d,
    spectral_filter,
    reparametrize_arclength,
    flow_surface,
)
from .flow3d import (
    SeriesState,
    CurvatureReport,
    SeriesTrajectory,
    make_neck_manifold,
    neck_series_state,
    ricci_flow_rhs_3d,
    curvatures_3d,
    fd_flow_3d,
    series_rhs,
    series_flow,
)
from .mesh import RevolutionMesh, revolve_mesh, mesh_diagnostics, write_obj
from .pinchfit import PowerLawFit, fit_power_law, fit_report, REFERENCE_LAWS

__version__ = "0.1.0"

__all__ = [
    "MetricProfile", "ShapeParams", "SpectralCoefficients", "GeneratingCurve",
    "EmbeddabilityReport", "make_initial_surface", "check_admissible",
    "embeddability_check", "generating_curve", "area", "total_curvature",
    "Flow2DConfig", "FlowDiagnostics", "ricci_tensor_2d", "euler_step_2d",
    "spectral_filter", "reparametrize_arclength", "flow_surface",
    "SeriesState", "CurvatureReport", "SeriesTrajectory", "make_neck_manifold",
    "neck_series_state", "ricci_flow_rhs_3d", "curvatures_3d", "fd_flow_3d",
    "series_rhs", "series_flow",
    "RevolutionMesh", "revolve_mesh", "mesh_diagnostics", "write_obj",
    "PowerLawFit", "fit_power_law", "fit_report", "REFERENCE_LAWS",
]
