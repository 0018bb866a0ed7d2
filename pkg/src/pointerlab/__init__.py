"""Numerical experiments on decoherence pointer states and reduced-density-matrix eigenbases."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateInputError,
    InvalidArgumentError,
    PointerLabError,
    PreconditionError,
)
from .grid_states import (
    GaussianParams,
    Grid,
    PointerFrame,
    WaveFunction,
    analytic_overlap,
    effective_rank,
    gaussian_state,
    gram_matrix,
    inner_product,
    make_frame,
    make_grid,
    periodic_distance,
)
from .decoherence import (
    DensityMatrix,
    DephasingKernel,
    constant_rho,
    density_from_mixture,
    dephase,
)
from .spectra import (
    LocalizationReport,
    RecordModel2,
    RecordModel3,
    SpectralResult,
    eigh,
    localization,
    oracle_2x2,
    oracle_3x3,
    parity_classify,
    random_reflection_symmetric,
    refine_degenerate,
    translation_generators,
)
