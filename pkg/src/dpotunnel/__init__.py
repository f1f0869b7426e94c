"""Driven, damped, anharmonic degenerate parametric oscillator toolkit.

Mean-field phase structure, exact complex steady-state potentials, the
potential-barrier tunneling time, and the truncated number-state spectrum
that cross-validates it.  Rates are in kHz, times in ms.
"""

__version__ = "0.1.0"

from . import errors
from .params import (
    DimensionlessParams,
    PhysicalParams,
    ReducedParams,
    dimensionless,
    reduce,
)
from .meanfield import (
    Branch,
    MeanFieldRoot,
    PhaseRegion,
    Region,
    canonical_theta,
    classify_phase,
    integrate,
    pi_factor,
    stability_eigenvalues,
    stationary_points,
)
from .potential import (
    Classification,
    PhaseSpacePoint,
    PointKind,
    StationaryPoint,
    classical_tilt,
    hessian_det_closed_form,
    manifold_point,
    potential_gradient,
    potential_value,
    stationary_points_4d,
    steady_state_weight,
)
from .tunneling import (
    BarrierQuantities,
    barrier_quantities,
    potential_uv,
    tunneling_time,
    tunneling_time_product_form,
    tunneling_time_real,
    uv_inverse,
    uv_transform,
)
from .fock import (
    FockLiouvillian,
    SpectrumResult,
    build_liouvillian,
    choose_cutoff,
    dump_triplets,
    moments,
    spectrum,
    transition_matrix,
    tunneling_time_fock,
)
from .sweep import SweepRow, SweepSpec, apply_axis, emit, run_sweep

__all__ = [
    "__version__",
    "errors",
    # params
    "PhysicalParams", "ReducedParams", "DimensionlessParams", "reduce", "dimensionless",
    # meanfield
    "Branch", "Region", "MeanFieldRoot", "PhaseRegion", "pi_factor",
    "stationary_points", "stability_eigenvalues", "canonical_theta",
    "classify_phase", "integrate",
    # potential
    "PhaseSpacePoint", "PointKind", "Classification", "StationaryPoint",
    "potential_value", "potential_gradient", "steady_state_weight",
    "stationary_points_4d", "hessian_det_closed_form", "classical_tilt",
    "manifold_point",
    # tunneling
    "BarrierQuantities", "uv_transform", "uv_inverse", "potential_uv",
    "barrier_quantities", "tunneling_time", "tunneling_time_product_form",
    "tunneling_time_real",
    # fock
    "FockLiouvillian", "SpectrumResult", "transition_matrix", "build_liouvillian",
    "spectrum", "tunneling_time_fock", "moments", "choose_cutoff", "dump_triplets",
    # sweep
    "SweepSpec", "SweepRow", "apply_axis", "run_sweep", "emit",
]
