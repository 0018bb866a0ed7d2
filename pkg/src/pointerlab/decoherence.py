"""Density matrices on the grid and the Gaussian dephasing kernel.

Matrix entries are taken in the Euclidean-unit basis ``sqrt(spacing) * delta``,
so the trace of a state is the plain sum of the diagonal and the matrix
eigenvalues are the operator's.  The position kernel ``<x'|rho|x''>`` is
``entries / spacing``.

Decoherence is modelled by its end product: the off-diagonal suppression
``rho_r(x', x'') = K(x' - x'') rho(x', x'')`` with ``K`` a wrapped Gaussian of
strength ``lambda``.  There is no time evolution and no explicit
environment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidArgumentError
from .grid_states import Grid, PointerFrame, dual_series, wrapped_exp

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10

# lambda = a^2 / 2 for the default width a = 1
DEFAULT_LAMBDA = 0.5


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian matrix on a position grid, or on an abstract index set when ``grid`` is None."""

    entries: np.ndarray
    grid: Optional[Grid] = None

    def __post_init__(self):
        M = np.array(self.entries, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
            raise InvalidArgumentError(f"expected a non-empty square matrix, got shape {M.shape}")
        if self.grid is not None and M.shape[0] != self.grid.n_points:
            raise InvalidArgumentError(
                f"matrix dimension {M.shape[0]} does not match grid size {self.grid.n_points}"
            )
        if not np.all(np.isfinite(M)):
            raise InvalidArgumentError("matrix has non-finite entries")
        if hermiticity_error(M) > HERMITIAN_TOL:
            raise InvalidArgumentError(
                f"matrix is not Hermitian (max |M - M^H| = {hermiticity_error(M):.3e})"
            )
        tr = np.trace(M)
        if not tr.real > 0:
            raise InvalidArgumentError(f"trace must be real and positive, got {tr!r}")
        M.setflags(write=False)
        object.__setattr__(self, "entries", M)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def real_entries(self) -> np.ndarray:
        """Entries as a real array when the imaginary part vanishes, else complex."""
        if np.abs(self.entries.imag).max() == 0:
            return self.entries.real.copy()
        return self.entries.copy()

    def normalized(self) -> "DensityMatrix":
        return DensityMatrix(self.entries / self.trace, self.grid)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries).min())

    def is_psd(self, tol: float = PSD_TOL) -> bool:
        return self.min_eigenvalue() >= -tol

    def kernel(self) -> np.ndarray:
        """Position-space kernel ``<x'|rho|x''>``."""
        if self.grid is None:
            raise InvalidArgumentError("abstract-index density matrices have no position kernel")
        return self.entries / self.grid.spacing


def hermiticity_error(M) -> float:
    M = np.asarray(M)
    return float(np.abs(M - M.conj().T).max())


@dataclass(frozen=True)
class DephasingKernel:
    """Gaussian off-diagonal suppression ``exp(-lambda (x' - x'')^2)`` on the ring."""

    strength_lambda: float
    grid: Grid

    def __post_init__(self):
        if not np.isfinite(self.strength_lambda) or self.strength_lambda < 0:
            raise InvalidArgumentError(
                f"strength_lambda must be non-negative, got {self.strength_lambda!r}"
            )

    def profile(self) -> np.ndarray:
        """First row ``K(x_0, x_k)`` of the circulant kernel matrix."""
        return kernel_profile(self.grid, self.strength_lambda)

    def matrix(self) -> np.ndarray:
        row = self.profile()
        n = self.grid.n_points
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        return row[idx]


def kernel_profile(grid: Grid, strength_lambda: float) -> np.ndarray:
    """Wrapped Gaussian ``sum_m exp(-lambda (x_k - m L)^2)``, rescaled to 1 at ``x_k = 0``.

    The rescaling only matters when ``lambda L^2`` is small enough for images
    to overlap; it keeps ``K(x, x) = 1`` so dephasing never touches the
    diagonal.  ``lambda = 0`` gives the all-ones kernel exactly.
    """
    n = grid.n_points
    if strength_lambda == 0:
        return np.ones(n)
    if strength_lambda * grid.length ** 2 >= np.pi:
        row = wrapped_exp(grid.points, strength_lambda, grid.length)
    else:
        row = dual_series(grid.points, strength_lambda, grid.length)
    # enforce K(d) == K(-d) bitwise so the kernel matrix is exactly symmetric
    row = 0.5 * (row + row[(-np.arange(n)) % n])
    return row / row[0]


def density_from_mixture(frame: PointerFrame, weights: Sequence[float]) -> DensityMatrix:
    """``sum_i w_i |psi_i><psi_i|`` for the frame's pointer states."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(frame),):
        raise InvalidArgumentError(f"expected {len(frame)} weights, got shape {w.shape}")
    if np.any(w < 0):
        raise InvalidArgumentError("weights must be non-negative")
    if abs(w.sum() - 1.0) > 1e-12:
        raise InvalidArgumentError(f"weights must sum to 1, got {w.sum()!r}")
    S = frame.state_matrix()
    rho = (S * w) @ S.conj().T
    return DensityMatrix(0.5 * (rho + rho.conj().T), frame.grid)


def constant_rho(grid: Grid) -> DensityMatrix:
    """Uniform density: every entry ``1 / n_points``, trace 1, rank 1."""
    n = grid.n_points
    return DensityMatrix(np.full((n, n), 1.0 / n), grid)


def dephase(rho: DensityMatrix, kernel: DephasingKernel) -> DensityMatrix:
    """Entrywise (Schur) product of ``rho`` with the kernel matrix.

    The kernel is PSD with unit diagonal, so the product stays Hermitian,
    PSD and trace-preserving.
    """
    if rho.grid is None:
        raise InvalidArgumentError("dephasing needs a density matrix on a position grid")
    if rho.grid != kernel.grid:
        raise InvalidArgumentError("density matrix and kernel live on different grids")
    out = kernel.matrix() * rho.entries
    return DensityMatrix(out, rho.grid)


def dephase_strength(rho: DensityMatrix, strength_lambda: float) -> DensityMatrix:
    return dephase(rho, DephasingKernel(strength_lambda, rho.grid))
