"""Cut-and-project sets, almost periodic measures and their finite-patch certificates."""
from .cps import (
    CyclicScheme,
    PAdicScheme,
    PiecewiseLinear,
    ProductScheme,
    QuadraticNumber,
    QuadraticScheme,
    StepWeight,
    TensorWeight,
    TrivialScheme,
    Window,
    character_lift_check,
    cut_and_project,
    density_constant,
    dual_frequencies,
    omega_comb,
    scheme_from_json,
    star,
)
from .errors import (
    AperiodicaError,
    DomainMismatchError,
    InternalCheckError,
    MeasureInfiniteError,
    PreconditionError,
    UnsupportedError,
)
from .gap import (
    default_bump,
    gap_certificate,
    min_gap,
    reconstruct_window,
    riemann_sandwich,
    t_operator,
    weight_samples,
)
from .groups import (
    SetDescriptor,
    SpaceDescriptor,
    VanHoveSpec,
    box,
    cyclic_set,
    haar_measure,
    integer_points,
    integer_range,
    interval,
    k_boundary,
    real_set,
    residue_class,
    van_hove_ratio,
)
from .measures import (
    BumpFunction,
    PointMeasure,
    Samples,
    almost_periods,
    discrepancy_set,
    mean_estimate,
    smooth,
    uniform_upper_density,
)
from .meyer import (
    covering_radius,
    density_bound_check,
    discreteness_radius,
    lambda_theta,
    m_theta,
    meyer_test,
)
from .pointset import PointSet

__version__ = "0.1.0"
