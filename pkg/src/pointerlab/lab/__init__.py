"""Reproducible experiments over the pointer-state toolkit, with CSV/JSON output and a CLI."""

from .config import Experiment, ExperimentConfig, Format, resolve_seed
from .experiments import (
    SweepResult,
    check,
    run,
    run_circulant_spectrum,
    run_double_well_sweep,
    run_frame_rank,
    run_near_symmetry_sweep,
    run_oracle_check,
    run_parity_census,
)
from .output import emit, render, to_csv, to_json
