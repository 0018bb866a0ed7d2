"""Periodic 1-D grids, Gaussian pointer states and their overcomplete frames.

Wavefunctions live on a uniform periodic lattice ``x_k = k * spacing`` with
``k = 0 .. n_points - 1``.  Norms and inner products are spacing-weighted
Riemann sums, so a normalized state has ``spacing * sum(|psi_k|^2) == 1``.

A pointer state is the normalized Gaussian ``exp(-a^2 (x' - x)^2)`` centred
at ``x``.  On the ring it is replaced by its wrapped (image-summed) form,
which keeps every kernel built from it exactly positive semidefinite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, PreconditionError

# Image terms below this value are dropped from wrapped Gaussians.
WRAP_CUTOFF = 1e-16

DEFAULT_N_POINTS = 512
DEFAULT_LENGTH = 40.0
DEFAULT_WIDTH_A = 1.0


@dataclass(frozen=True)
class Grid:
    """Uniform periodic lattice on ``[0, length)``."""

    n_points: int
    length: float

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise InvalidArgumentError(f"n_points must be an integer >= 2, got {self.n_points!r}")
        if not np.isfinite(self.length) or self.length <= 0:
            raise InvalidArgumentError(f"length must be positive, got {self.length!r}")
        object.__setattr__(self, "n_points", int(self.n_points))
        object.__setattr__(self, "length", float(self.length))

    @property
    def spacing(self) -> float:
        return self.length / self.n_points

    @property
    def points(self) -> np.ndarray:
        return np.arange(self.n_points) * self.spacing

    def distance(self, x, y):
        """Periodic distance ``min(|x - y|, L - |x - y|)``."""
        return periodic_distance(x, y, self.length)


def make_grid(n_points: int, length: float) -> Grid:
    return Grid(n_points, length)


def periodic_distance(x, y, length: float):
    d = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)) % length
    d = np.minimum(d, length - d)
    return float(d) if np.ndim(d) == 0 else d


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Complex amplitudes sampled on a :class:`Grid`."""

    grid: Grid
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid.n_points,):
            raise InvalidArgumentError(
                f"amplitudes must have shape ({self.grid.n_points},), got {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.sqrt(self.grid.spacing * np.sum(np.abs(self.amplitudes) ** 2)))

    def normalized(self) -> "WaveFunction":
        nrm = self.norm()
        if nrm == 0:
            raise InvalidArgumentError("cannot normalize the zero wavefunction")
        return WaveFunction(self.grid, self.amplitudes / nrm)

    def unit_vector(self) -> np.ndarray:
        """Amplitudes rescaled to a Euclidean unit vector (``sqrt(spacing) * psi``)."""
        return np.sqrt(self.grid.spacing) * self.amplitudes / self.norm()


@dataclass(frozen=True)
class GaussianParams:
    center: float
    width_a: float

    def __post_init__(self):
        if not np.isfinite(self.center):
            raise InvalidArgumentError(f"center must be finite, got {self.center!r}")
        if not np.isfinite(self.width_a) or self.width_a <= 0:
            raise InvalidArgumentError(f"width_a must be positive, got {self.width_a!r}")

    def check_fits(self, grid: Grid) -> None:
        # The ring must dominate the packet: effective support 1/a <= L/10.
        if 1.0 / self.width_a > grid.length / 10.0:
            raise PreconditionError(
                f"packet support 1/a = {1.0 / self.width_a:g} exceeds L/10 = {grid.length / 10.0:g}"
            )


def wrapped_gaussian(points: np.ndarray, center: float, width_a: float, length: float) -> np.ndarray:
    """Sum of images ``sum_m exp(-a^2 (x - c - m L)^2)`` evaluated at ``points``.

    Results do not depend on which representative of the centre modulo
    ``length`` is passed.
    """
    points = np.asarray(points, dtype=float)
    c = float(center) % length
    return wrapped_exp(points - c, width_a * width_a, length)


def wrapped_exp(x: np.ndarray, alpha: float, length: float) -> np.ndarray:
    """``sum_m exp(-alpha (x - m L)^2)`` for ``alpha > 0``.

    For ``alpha L^2 >= pi`` the image sum is used directly: the m = 0 term
    is always kept and further images are added in pairs of increasing
    ``|m|`` until every term falls below ``WRAP_CUTOFF``.  Broader
    Gaussians switch to the Poisson-dual Fourier series, which then
    converges just as fast and stays bounded in cost as ``alpha -> 0``.
    """
    x = np.asarray(x, dtype=float)
    if alpha * length * length >= np.pi:
        out = np.exp(-alpha * x * x)
        m = 1
        while True:
            added = False
            for shift in (m * length, -m * length):
                term = np.exp(-alpha * (x - shift) ** 2)
                if term.max() >= WRAP_CUTOFF:
                    out += term
                    added = True
            if not added:
                return out
            m += 1
    return np.sqrt(np.pi / alpha) / length * dual_series(x, alpha, length)


def dual_series(x: np.ndarray, alpha: float, length: float) -> np.ndarray:
    """``1 + 2 sum_k exp(-pi^2 k^2 / (alpha L^2)) cos(2 pi k x / L)``.

    Proportional to the wrapped Gaussian; the prefactor ``sqrt(pi / alpha) / L``
    is left out so callers that renormalize never see it overflow.
    """
    x = np.asarray(x, dtype=float)
    decay = np.pi ** 2 / (alpha * length * length)
    out = np.ones_like(x)
    k = 1
    while True:
        weight = np.exp(-decay * k * k)
        if weight < WRAP_CUTOFF:
            return out
        out += 2.0 * weight * np.cos(2.0 * np.pi * k * x / length)
        k += 1


def gaussian_state(grid: Grid, params: GaussianParams) -> WaveFunction:
    """Normalized wrapped Gaussian pointer state on ``grid``."""
    params.check_fits(grid)
    amps = wrapped_gaussian(grid.points, params.center, params.width_a, grid.length)
    return WaveFunction(grid, amps).normalized()


def inner_product(f: WaveFunction, g: WaveFunction) -> complex:
    """Spacing-weighted ``<f|g>``, antilinear in ``f``."""
    if f.grid != g.grid:
        raise InvalidArgumentError("wavefunctions live on different grids")
    return complex(f.grid.spacing * np.vdot(f.amplitudes, g.amplitudes))


def analytic_overlap(x: float, y: float, width_a: float, length: float) -> float:
    """Closed-form overlap ``exp(-a^2 d^2 / 2)`` of two normalized pointer states.

    ``d`` is the periodic distance; wrap corrections are neglected.
    """
    if width_a <= 0:
        raise InvalidArgumentError(f"width_a must be positive, got {width_a!r}")
    d = periodic_distance(x, y, length)
    return float(np.exp(-0.5 * (width_a * d) ** 2))


@dataclass(frozen=True, eq=False)
class PointerFrame:
    """A finite sample of the continuum of pointer states sharing one width."""

    grid: Grid
    members: tuple
    states: tuple = field(default=())

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise InvalidArgumentError("a frame needs at least one member")
        widths = {m.width_a for m in members}
        if len(widths) != 1:
            raise InvalidArgumentError(f"frame members must share width_a, got {sorted(widths)}")
        object.__setattr__(self, "members", members)
        if not self.states:
            object.__setattr__(self, "states", tuple(gaussian_state(self.grid, m) for m in members))
        elif len(self.states) != len(members):
            raise InvalidArgumentError("states and members differ in length")

    @property
    def width_a(self) -> float:
        return self.members[0].width_a

    def __len__(self):
        return len(self.members)

    def state_matrix(self) -> np.ndarray:
        """Columns are the members as Euclidean unit vectors."""
        return np.column_stack([s.unit_vector() for s in self.states])


def make_frame(grid: Grid, centers: Sequence[float], width_a: float = DEFAULT_WIDTH_A) -> PointerFrame:
    return PointerFrame(grid, tuple(GaussianParams(float(c), width_a) for c in centers))


def gram_matrix(frame: PointerFrame) -> np.ndarray:
    """Real symmetric Gram matrix of the frame's states."""
    S = frame.state_matrix()
    G = (S.conj().T @ S).real
    G = 0.5 * (G + G.T)
    return G


def effective_rank(G: np.ndarray, tol: float) -> int:
    """Number of singular values at or above ``tol`` times the largest."""
    G = np.asarray(G)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {G.shape}")
    if tol <= 0:
        raise InvalidArgumentError(f"tol must be positive, got {tol!r}")
    scale = max(1.0, float(np.abs(G).max()))
    if np.abs(G - G.conj().T).max() > 1e-10 * scale:
        raise InvalidArgumentError("Gram matrix is not symmetric")
    sv = singular_values(G)
    if sv[0] == 0:
        return 0
    return int(np.count_nonzero(sv >= tol * sv[0]))


def singular_values(G: np.ndarray) -> np.ndarray:
    """Singular values in descending order."""
    return np.linalg.svd(np.asarray(G), compute_uv=False)
