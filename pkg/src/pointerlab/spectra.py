"""Hermitian eigensolver, localization/parity diagnostics and record-model oracles.

The eigensolver is cyclic Jacobi.  Sweeps use round-robin (tournament)
ordering, so each round consists of ``n/2`` rotations on disjoint index
pairs that commute and are applied together as array operations.  Complex
Hermitian input is solved through its real embedding
``[[Re H, -Im H], [Im H, Re H]]``, whose spectrum is that of ``H`` with every
eigenvalue doubled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    ConvergenceError,
    DegenerateInputError,
    InvalidArgumentError,
    PreconditionError,
)
from .grid_states import Grid
from .rng import SplitMix64

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """Eigenvalues sorted descending; ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __len__(self):
        return len(self.eigenvalues)

    def vector(self, i: int) -> np.ndarray:
        return self.eigenvectors[:, i]

    def residuals(self, A: np.ndarray) -> np.ndarray:
        """``||A v_i - lambda_i v_i||`` for every pair."""
        V = self.eigenvectors
        return np.linalg.norm(A @ V - V * self.eigenvalues, axis=0)

    def orthonormality_error(self) -> float:
        V = self.eigenvectors
        return float(np.abs(V.conj().T @ V - np.eye(V.shape[1])).max())


# --------------------------------------------------------------------------
# Jacobi
# --------------------------------------------------------------------------


def _tournament_orders(m: int) -> list:
    """Round-robin schedule for even ``m`` as index orders.

    Round ``r`` pairs ``order[2k]`` with ``order[2k + 1]``; over ``m - 1``
    rounds every unordered pair meets exactly once.
    """
    players = list(range(m))
    orders = []
    for _ in range(m - 1):
        order = []
        for i in range(m // 2):
            order += [players[i], players[m - 1 - i]]
        orders.append(np.array(order, dtype=np.intp))
        players = [players[0], players[-1]] + players[1:-1]
    return orders


def _offdiag_norm(A: np.ndarray) -> float:
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotation(app, aqq, apq):
    """Cosine and sine of the rotation annihilating ``apq`` (Rutishauser's form)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        theta = (aqq - app) / (2.0 * apq)
        t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(apq == 0.0, 0.0, t)
    c = 1.0 / np.sqrt(t * t + 1.0)
    return c, t * c


def jacobi_symmetric(A: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decompose a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` unsorted, with ``A V = V diag(w)``.  Iteration stops
    once the off-diagonal Frobenius norm drops below ``tol * ||A||_F``.

    Storage is permuted so that the current round's pairs occupy columns
    ``(2k, 2k + 1)``.  Viewing such a column pair as one complex column turns
    the plane rotation into multiplication by ``c + i s``.  Since
    ``P^T A P = (A P)^T P`` for symmetric ``A``, a round is: rotate columns,
    transpose, rotate columns, transpose.  Both transposes are fused with the
    gather that moves the next round's pairs into place.
    """
    A0 = np.array(A, dtype=float)
    n = A0.shape[0]
    if n == 1:
        return A0.diagonal().copy(), np.eye(1)
    scale = float(np.linalg.norm(A0))
    if scale == 0.0:
        return np.zeros(n), np.eye(n)
    target = tol * scale

    # odd sizes get a decoupled zero row/column; its rotations are identities
    m = n + (n % 2)
    orders = _tournament_orders(m)
    pos = [np.argsort(o) for o in orders]
    steps = [pos[r][orders[(r + 1) % len(orders)]] for r in range(len(orders))]
    # where the pair just rotated lands after the step permutation
    landed = []
    for g in steps:
        ginv = np.argsort(g)
        landed.append((ginv[0::2], ginv[1::2]))

    S = np.zeros((m, m))
    S[:n, :n] = A0
    S = np.ascontiguousarray(S[np.ix_(orders[0], orders[0])])
    # columns of V are eigenvector estimates, in original coordinates
    V = np.ascontiguousarray(np.eye(m)[:, orders[0]])
    label = orders[0].copy()

    for _ in range(max_sweeps):
        if _offdiag_norm(S) <= target:
            break
        for r in range(len(orders)):
            g = steps[r]
            diag = S.diagonal()
            apq = S.diagonal(1)[0::2]
            if np.any(apq != 0.0):
                c, s = _rotation(diag[0::2], diag[1::2], apq)
                phase = c + 1j * s
                S.view(np.complex128)[...] *= phase
                S = S.T[g]
                S.view(np.complex128)[...] *= phase
                # rows already carry g; symmetry lets the transpose apply it to columns
                S = S.T[g]
                # annihilated exactly in exact arithmetic
                a, b = landed[r]
                S[a, b] = 0.0
                S[b, a] = 0.0
                V.view(np.complex128)[...] *= phase
            else:
                S = S.take(g, axis=0).take(g, axis=1)
            V = V.take(g, axis=1)
            label = label[g]
    else:
        if _offdiag_norm(S) > target:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_offdiag_norm(S):.3e}, target {target:.3e})"
            )
    keep = label < n
    return S.diagonal()[keep].copy(), V[:n, keep].copy()


def _fix_phase(V: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude component is real and positive.

    Magnitudes equal up to rounding are tied and the lowest index wins.
    """
    V = V.copy()
    mags = np.abs(V)
    for j in range(V.shape[1]):
        col = mags[:, j]
        k = int(np.argmax(col >= col.max() * (1.0 - 1e-9)))
        z = V[k, j]
        if z == 0:
            continue
        V[:, j] *= np.conj(z) / abs(z)
        if np.iscomplexobj(V):
            V[k, j] = V[k, j].real
    return V


def _check_hermitian(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidArgumentError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidArgumentError("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(A).max()))
    if np.abs(A - A.conj().T).max() > HERMITIAN_TOL * scale:
        raise InvalidArgumentError("matrix is not Hermitian")
    return A


def _clusters(values: np.ndarray, tol: float) -> list:
    """Split descending ``values`` into runs whose consecutive gaps are <= tol."""
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i - 1] - values[i] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _pivoted_span(Z: np.ndarray, rank: int) -> np.ndarray:
    """Orthonormal basis of ``rank`` columns chosen by largest-residual Gram-Schmidt."""
    R = Z.copy()
    basis = []
    for _ in range(rank):
        norms = np.linalg.norm(R, axis=0)
        k = int(np.argmax(norms))
        b = R[:, k] / norms[k]
        basis.append(b)
        R = R - np.outer(b, b.conj() @ R)
    return np.column_stack(basis)


def _eigh_complex(H: np.ndarray):
    n = H.shape[0]
    emb = np.block([[H.real, -H.imag], [H.imag, H.real]])
    w, V = jacobi_symmetric(emb)
    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]
    Z = V[:n] + 1j * V[n:]

    tol = 1e-11 * max(float(np.linalg.norm(emb)), 1e-300)
    groups = _clusters(w, tol)
    # embedded eigenvalues come in pairs; a group split by rounding is merged with its neighbour
    merged = []
    for g in groups:
        if merged and len(merged[-1]) % 2:
            merged[-1].extend(g)
        else:
            merged.append(list(g))
    vecs = []
    for g in merged:
        vecs.append(_pivoted_span(Z[:, g], len(g) // 2))
    U = np.column_stack(vecs)
    vals = np.real(np.einsum("ij,ij->j", U.conj(), H @ U))
    return vals, U


def eigh(A) -> SpectralResult:
    """Eigen-decomposition of a real symmetric or complex Hermitian matrix.

    Eigenvalues come out sorted descending.  Each eigenvector is scaled so
    its largest-magnitude component is real and positive, which makes the
    output reproducible for identical input.
    """
    A = _check_hermitian(A)
    if np.iscomplexobj(A) and np.abs(A.imag).max() > 0:
        H = 0.5 * (A + A.conj().T)
        w, V = _eigh_complex(H)
    else:
        S = np.real(A).astype(float)
        S = 0.5 * (S + S.T)
        w, V = jacobi_symmetric(S)
    order = np.argsort(-w, kind="stable")
    return SpectralResult(w[order], _fix_phase(V[:, order]))


def refine_degenerate(A, result: SpectralResult, generators, rel_tol: float = 1e-6,
                      gen_tol: float = 1e-8) -> SpectralResult:
    """Re-choose eigenvectors inside clusters so they also diagonalize commuting symmetries.

    Eigenvalues of ``result`` within ``rel_tol * max|lambda|`` of each other
    are grouped (consecutive gaps, so a decaying tail merges into one group).
    Inside each group the first Hermitian generator is diagonalized; groups
    it leaves degenerate (within ``gen_tol``) are handed to the next one.
    Eigenvalues are then recomputed as Rayleigh quotients of ``A``.

    A real solver returns an arbitrary rotation of a degenerate pair, and
    below rounding level it returns an arbitrary basis of the numerical null
    space; this step picks the basis labelled by the symmetry's quantum
    numbers instead.
    """
    A = _check_hermitian(A)
    w = result.eigenvalues
    V = result.eigenvectors.astype(complex)
    scale = float(np.abs(w).max()) or 1.0
    generators = [np.asarray(G) for G in generators]

    def split(Vc, gens):
        if not gens or Vc.shape[1] == 1:
            return Vc
        G = gens[0]
        B = Vc.conj().T @ G @ Vc
        r = eigh(0.5 * (B + B.conj().T))
        Vc = Vc @ r.eigenvectors
        for grp in _clusters(r.eigenvalues, gen_tol):
            Vc[:, grp] = split(Vc[:, grp], gens[1:])
        return Vc

    for grp in _clusters(w, rel_tol * scale):
        if len(grp) > 1:
            V[:, grp] = split(V[:, grp], generators)

    if np.abs(V.imag).max() == 0:
        V = V.real
    vals = np.real(np.einsum("ij,ij->j", V.conj(), A @ V))
    order = np.argsort(-vals, kind="stable")
    return SpectralResult(vals[order], _fix_phase(V[:, order]))


def translation_generators(n: int):
    """Hermitian parts of the cyclic shift: ``(T + T^T)/2`` and ``(T - T^T)/(2i)``.

    On the Fourier mode ``exp(2 pi i p k / n)`` they take the values
    ``cos(2 pi p / n)`` and ``sin(2 pi p / n)``; together they separate
    every frequency.
    """
    T = np.roll(np.eye(n), 1, axis=0)
    return [0.5 * (T + T.T), (T - T.T) / 2j]


# --------------------------------------------------------------------------
# Record models and closed-form oracles
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RecordModel2:
    """Two-well record: ``[[1 + b, a], [a, 1 - b]]``."""

    a: float
    b: float

    def matrix(self) -> np.ndarray:
        return np.array([[1.0 + self.b, self.a], [self.a, 1.0 - self.b]])


@dataclass(frozen=True)
class RecordModel3:
    """Three-site chain ``[[1, a, 0], [a, c, a], [0, a, 1 + epsilon]]``.

    ``epsilon = 0`` is the reflection-symmetric case.
    """

    a: float
    c: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidArgumentError(f"a must be positive, got {self.a!r}")

    def matrix(self) -> np.ndarray:
        a, c = self.a, self.c
        return np.array([[1.0, a, 0.0], [a, c, a], [0.0, a, 1.0 + self.epsilon]])


def oracle_3x3(a: float, c: float) -> SpectralResult:
    """Closed-form eigenpairs of the symmetric three-site chain.

    With ``r = sqrt((1 - c)^2 + 8 a^2)`` the eigenvalues are
    ``(1 + c + r)/2``, ``1`` and ``(1 + c - r)/2`` with eigenvectors
    ``(1, s+, 1)``, ``(1, 0, -1)`` and ``(1, s-, 1)`` where
    ``s± = 4a / (1 - c ± r)``.
    """
    if not a > 0:
        raise InvalidArgumentError(f"a must be positive, got {a!r}")
    r = np.sqrt((1.0 - c) ** 2 + 8.0 * a * a)
    s_plus = 4.0 * a / (1.0 - c + r)
    s_minus = 4.0 * a / (1.0 - c - r)
    vals = np.array([(1.0 + c + r) / 2.0, 1.0, (1.0 + c - r) / 2.0])
    vecs = np.array([[1.0, s_plus, 1.0], [1.0, 0.0, -1.0], [1.0, s_minus, 1.0]]).T
    vecs /= np.linalg.norm(vecs, axis=0)
    return SpectralResult(vals, _fix_phase(vecs))


def oracle_3x3_ratios(a: float, c: float):
    """The middle-component ratios ``(s+, s-)`` of the symmetric eigenvectors."""
    if not a > 0:
        raise InvalidArgumentError(f"a must be positive, got {a!r}")
    r = np.sqrt((1.0 - c) ** 2 + 8.0 * a * a)
    return 4.0 * a / (1.0 - c + r), 4.0 * a / (1.0 - c - r)


def oracle_2x2(model: RecordModel2) -> SpectralResult:
    """Exact eigenpairs ``1 ± sqrt(a^2 + b^2)`` of the two-well record.

    The upper eigenvector is ``(cos t, sin t)`` and the lower
    ``(-sin t, cos t)`` with ``t = atan2(a, b) / 2``.
    """
    a, b = float(model.a), float(model.b)
    if a == 0.0 and b == 0.0:
        raise DegenerateInputError("a = b = 0: every vector is an eigenvector")
    rho = np.hypot(a, b)
    t = 0.5 * np.arctan2(a, b)
    vecs = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
    return SpectralResult(np.array([1.0 + rho, 1.0 - rho]), vecs)


# --------------------------------------------------------------------------
# Localization and parity
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalizationReport:
    """How spread out a unit vector is.

    ``parity_score`` is NaN for even dimensions, where no middle index exists.
    ``spatial_stddev`` is the circular (angular) deviation
    ``sqrt(2 (1 - R)) * L / (2 pi)`` with ``R`` the mean resultant length of
    ``|v|^2`` on the ring, which stays finite for uniform vectors.
    """

    ipr: float
    top_plane_wave_weight: float
    parity_score: float
    spatial_stddev: float


def ipr(v) -> float:
    """Inverse participation ratio ``sum |v_k|^4`` of a unit vector."""
    p = np.abs(np.asarray(v)) ** 2
    return float(np.sum(p * p))


def plane_wave_weights(v) -> np.ndarray:
    """Squared projections onto the DFT subspaces ``{+p, -p}``, ``p = 0 .. n // 2``."""
    v = np.asarray(v)
    n = len(v)
    power = np.abs(np.fft.fft(v, norm="ortho")) ** 2
    out = np.empty(n // 2 + 1)
    for p in range(n // 2 + 1):
        q = (-p) % n
        out[p] = power[p] if q == p else power[p] + power[q]
    return out


def _reflection_score(v) -> float:
    v = np.asarray(v)
    return float(np.clip(np.real(np.vdot(v, v[::-1])), -1.0, 1.0))


def parity_classify(v) -> float:
    """``<v, R v>`` for the reflection ``i -> -i`` about the middle index.

    +1 means symmetric, -1 antisymmetric, anything between is mixed.
    Only odd dimensions have a middle index.
    """
    v = np.asarray(v)
    if v.ndim != 1 or len(v) % 2 == 0:
        raise InvalidArgumentError(f"parity needs an odd-length vector, got shape {v.shape}")
    return _reflection_score(v)


def localization(v, grid_or_dim: Union[Grid, int]) -> LocalizationReport:
    v = np.asarray(v)
    if isinstance(grid_or_dim, Grid):
        dim, length = grid_or_dim.n_points, grid_or_dim.length
        positions = grid_or_dim.points
    else:
        dim = int(grid_or_dim)
        length = float(dim)
        positions = np.arange(dim, dtype=float)
    if v.shape != (dim,):
        raise InvalidArgumentError(f"vector has shape {v.shape}, expected ({dim},)")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-10:
        raise PreconditionError(f"vector must have unit norm, got {norm!r}")

    p = np.abs(v) ** 2
    resultant = abs(np.sum(p * np.exp(2j * np.pi * positions / length)))
    stddev = np.sqrt(max(2.0 * (1.0 - resultant), 0.0)) * length / (2.0 * np.pi)
    parity = _reflection_score(v) if dim % 2 else float("nan")
    return LocalizationReport(
        ipr=ipr(v),
        top_plane_wave_weight=float(min(plane_wave_weights(v).max(), 1.0)),
        parity_score=parity,
        spatial_stddev=float(stddev),
    )


# --------------------------------------------------------------------------
# Reflection-symmetric matrices
# --------------------------------------------------------------------------


def is_reflection_symmetric(M, tol: float = 0.0) -> bool:
    """True when ``M[i, j] == M[-i, -j]`` (indices reflected about the middle)."""
    M = np.asarray(M)
    return bool(np.abs(M - M[::-1, ::-1]).max() <= tol)


def random_reflection_symmetric(dim: int, seed: int) -> np.ndarray:
    """Seeded symmetric matrix with ``M[i, j] == M[-i, -j]`` and no zero entries.

    Entries are SplitMix64 uniform(-1, 1) draws, one per orbit of index
    pairs under transposition and reflection, visited in row-major order of
    the upper triangle.  Exact zeros are redrawn.
    """
    if int(dim) != dim or dim < 3 or dim % 2 == 0:
        raise InvalidArgumentError(f"dim must be an odd integer >= 3, got {dim!r}")
    dim = int(dim)
    gen = SplitMix64(seed)
    M = np.zeros((dim, dim))
    filled = np.zeros((dim, dim), dtype=bool)
    last = dim - 1
    for i in range(dim):
        for j in range(i, dim):
            if filled[i, j]:
                continue
            x = 0.0
            while x == 0.0:
                x = gen.uniform(-1.0, 1.0)
            for (u, w) in ((i, j), (j, i), (last - i, last - j), (last - j, last - i)):
                M[u, w] = x
                filled[u, w] = True
    return M
