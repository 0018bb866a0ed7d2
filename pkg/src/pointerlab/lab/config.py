"""Experiment configuration: parameter schemas, defaults and validation."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

from ..errors import ConfigError

SEED_ENV = "POINTERLAB_SEED"
DEFAULT_SEED = 0


class Experiment(enum.Enum):
    CIRCULANT_SPECTRUM = "circulant-spectrum"
    FRAME_RANK = "frame-rank"
    DOUBLE_WELL_SWEEP = "double-well-sweep"
    NEAR_SYMMETRY_SWEEP = "near-symmetry-sweep"
    PARITY_CENSUS = "parity-census"
    ORACLE_CHECK = "oracle-check"


class Format(enum.Enum):
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class Param:
    kind: type  # int, float or list (of floats)
    default: Any
    check: Callable[[Any], bool]
    doc: str


def _positive(x):
    return x > 0


def _ascending(xs):
    return all(a < b for a, b in zip(xs, xs[1:]))


SCHEMAS: Dict[Experiment, Dict[str, Param]] = {
    Experiment.CIRCULANT_SPECTRUM: {
        "n": Param(int, 256, lambda v: 16 <= v <= 1024, "grid points, 16..1024"),
        "L": Param(float, 40.0, _positive, "ring length, > 0"),
        "lambda": Param(float, 0.5, lambda v: v >= 0, "dephasing strength, >= 0"),
        "width_a": Param(float, 1.0, _positive, "comparison pointer-state width parameter, > 0"),
    },
    Experiment.FRAME_RANK: {
        "k": Param(int, 10, lambda v: 1 <= v <= 200, "largest frame size, 1..200"),
        "delta": Param(float, 0.01, _positive, "centre spacing, > 0"),
        "a": Param(float, 1.0, _positive, "width parameter, > 0"),
        "tol": Param(float, 1e-8, lambda v: 0 < v < 1, "relative singular-value cutoff, in (0, 1)"),
        "n": Param(int, 512, lambda v: 16 <= v <= 4096, "grid points, 16..4096"),
        "L": Param(float, 40.0, _positive, "ring length, > 0"),
    },
    Experiment.DOUBLE_WELL_SWEEP: {
        "a": Param(float, 0.01, _positive, "tunnelling coupling, > 0"),
        "b_values": Param(
            list,
            [0.0, 0.1, 0.2, 0.5, 1.0],
            lambda v: len(v) > 0 and all(b >= 0 for b in v) and _ascending(v),
            "well asymmetries, non-negative and strictly ascending",
        ),
    },
    Experiment.NEAR_SYMMETRY_SWEEP: {
        "a": Param(float, 0.1, _positive, "nearest-neighbour coupling, > 0"),
        "c": Param(float, 0.0, lambda v: -10 <= v <= 10, "middle diagonal entry, in [-10, 10]"),
        "epsilon_values": Param(
            list,
            [0.0, 1e-6, 1e-4, 1e-2, 0.1, 1.0],
            lambda v: 0.0 in v and all(e >= 0 for e in v) and _ascending(v),
            "asymmetries, non-negative, strictly ascending, including 0",
        ),
        "threshold": Param(float, 0.9, lambda v: 0 < v < 1, "crossover parity threshold, in (0, 1)"),
    },
    Experiment.PARITY_CENSUS: {
        "dim": Param(int, 5, lambda v: 3 <= v <= 201 and v % 2 == 1, "odd dimension, 3..201"),
        "trials": Param(int, 100, lambda v: 1 <= v <= 100000, "number of matrices, 1..100000"),
        "gap_threshold": Param(float, 1e-6, _positive, "degeneracy gap, > 0"),
    },
    Experiment.ORACLE_CHECK: {
        "a_values": Param(
            list,
            [1e-3, 1e-2, 0.1, 0.5, 1.0],
            lambda v: len(v) > 0 and all(a > 0 for a in v) and _ascending(v),
            "couplings, positive and strictly ascending",
        ),
        "c_values": Param(
            list,
            [-0.5, -0.1, 0.0, 0.1, 0.5],
            lambda v: len(v) > 0 and _ascending(v),
            "middle diagonal entries, strictly ascending",
        ),
    },
}


def _coerce(name: str, spec: Param, value):
    try:
        if spec.kind is list:
            if isinstance(value, str):
                value = [v for v in value.split(",") if v.strip()]
            elif not isinstance(value, (list, tuple)):
                value = [value]
            return [float(v) for v in value]
        if spec.kind is int:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError
            if isinstance(value, str):
                f = float(value)
                if not f.is_integer():
                    raise ValueError
                return int(f)
            return int(value)
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"parameter {name!r}: cannot read {value!r} as {spec.kind.__name__}") from None


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: Experiment
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    output_path: Optional[str] = None
    format: Format = Format.CSV

    def validated(self) -> "ExperimentConfig":
        """Copy with defaults filled in and every value coerced and range-checked."""
        experiment = Experiment(self.experiment)
        schema = SCHEMAS[experiment]
        unknown = sorted(set(self.params) - set(schema))
        if unknown:
            raise ConfigError(
                f"unknown parameter {unknown[0]!r} for {experiment.value}; "
                f"expected one of {sorted(schema)}"
            )
        params = {}
        for name, spec in schema.items():
            raw = self.params.get(name, spec.default)
            value = _coerce(name, spec, raw)
            if not spec.check(value):
                raise ConfigError(f"parameter {name!r} = {value!r} out of range ({spec.doc})")
            params[name] = value
        _cross_check(experiment, params)
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        return ExperimentConfig(experiment, params, int(self.seed), self.output_path, Format(self.format))


def _cross_check(experiment: Experiment, p: Dict[str, Any]) -> None:
    if experiment is Experiment.CIRCULANT_SPECTRUM:
        if 1.0 / p["width_a"] > p["L"] / 10.0:
            raise ConfigError(f"parameter 'width_a': packet support 1/a exceeds L/10 = {p['L'] / 10.0:g}")
    elif experiment is Experiment.FRAME_RANK:
        if 1.0 / p["a"] > p["L"] / 10.0:
            raise ConfigError(f"parameter 'a': packet support 1/a exceeds L/10 = {p['L'] / 10.0:g}")
        if (p["k"] - 1) * p["delta"] >= p["L"] / 2.0:
            raise ConfigError(f"parameter 'delta': frame span (k - 1) * delta must stay below L/2")


def resolve_seed(flag: Optional[int], environ=None) -> int:
    """Seed precedence: explicit flag, then ``POINTERLAB_SEED``, then 0."""
    if flag is not None:
        return flag
    environ = os.environ if environ is None else environ
    raw = environ.get(SEED_ENV)
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from None
