"""Two-sensor binary NOMA data fusion over a Gaussian multiple access channel.

Closed-form planar error bound and optimal constellation rotation, exact ML
decoding in two equivalent forms, vanishing-noise asymptotics, and a
reproducible Monte Carlo sweep harness.
"""

__version__ = "0.1.0"

from ._kernels import backend_name
from .model import (
    ComplexSample,
    ConditionalPmf,
    SuperConstellation,
    SystemParams,
    conditional_pmf,
    super_constellation,
)
from .decoder import (
    BoundaryConstants,
    RegionRaster,
    boundary_residual,
    likelihood,
    log_likelihood,
    ml_decide,
    ml_decide_tanh,
    rasterize_regions,
)
from .bound import (
    BoundCurvePoint,
    OptimalDesign,
    bound_curve,
    bound_derivative,
    n0_to_snr_db,
    optimal_design,
    params_from_snr_db,
    pcf,
    planar_upper_bound,
    q_function,
    snr_db_to_n0,
)
from .asymptotics import (
    HighSnrRegion,
    asymptotic_limits,
    design_sequence,
    high_snr_decide,
    high_snr_region,
    region_agreement,
)
from .simulate import (
    SimConfig,
    SweepResult,
    TrialStats,
    confidence_interval,
    moving_average,
    run_trial,
    simulate_bit,
    sweep,
)

__all__ = [
    "__version__",
    "backend_name",
    "ComplexSample",
    "ConditionalPmf",
    "SuperConstellation",
    "SystemParams",
    "conditional_pmf",
    "super_constellation",
    "BoundaryConstants",
    "RegionRaster",
    "boundary_residual",
    "likelihood",
    "log_likelihood",
    "ml_decide",
    "ml_decide_tanh",
    "rasterize_regions",
    "BoundCurvePoint",
    "OptimalDesign",
    "bound_curve",
    "bound_derivative",
    "n0_to_snr_db",
    "optimal_design",
    "params_from_snr_db",
    "pcf",
    "planar_upper_bound",
    "q_function",
    "snr_db_to_n0",
    "HighSnrRegion",
    "asymptotic_limits",
    "design_sequence",
    "high_snr_decide",
    "high_snr_region",
    "region_agreement",
    "SimConfig",
    "SweepResult",
    "TrialStats",
    "confidence_interval",
    "moving_average",
    "run_trial",
    "simulate_bit",
    "sweep",
]
