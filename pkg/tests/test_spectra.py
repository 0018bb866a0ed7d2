import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pointerlab.errors import ConvergenceError, DegenerateInputError, InvalidArgumentError, PreconditionError
from pointerlab.grid_states import make_grid
from pointerlab.spectra import (
    RecordModel2,
    RecordModel3,
    eigh,
    ipr,
    is_reflection_symmetric,
    jacobi_symmetric,
    localization,
    oracle_2x2,
    oracle_3x3,
    oracle_3x3_ratios,
    parity_classify,
    plane_wave_weights,
    random_reflection_symmetric,
    refine_degenerate,
    translation_generators,
)


def same_up_to_sign(u, v, tol):
    return min(np.abs(u - v).max(), np.abs(u + v).max()) <= tol


# ---- eigh examples ---------------------------------------------------------


def test_eigh_diagonal():
    r = eigh(np.diag([1.0, 3.0, 2.0]))
    assert np.array_equal(r.eigenvalues, [3.0, 2.0, 1.0])
    assert np.array_equal(np.abs(r.eigenvectors), np.eye(3)[:, [1, 2, 0]])


def test_eigh_pauli_x():
    r = eigh(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(r.eigenvalues, [1, -1], atol=1e-15)
    s = 2 ** -0.5
    assert same_up_to_sign(r.vector(0), np.array([s, s]), 1e-15)
    assert same_up_to_sign(r.vector(1), np.array([s, -s]), 1e-15)


def test_eigh_all_ones():
    n = 6
    r = eigh(np.ones((n, n)))
    assert abs(r.eigenvalues[0] - n) < 1e-13
    assert np.abs(r.eigenvalues[1:]).max() < 1e-13
    assert np.abs(r.vector(0) - 1 / np.sqrt(n)).max() < 1e-14


def test_eigh_one_by_one():
    r = eigh(np.array([[2.5]]))
    assert r.eigenvalues.tolist() == [2.5] and r.eigenvectors.tolist() == [[1.0]]


def test_eigh_complex_hermitian():
    H = np.array([[2.0, 1j], [-1j, 2.0]])
    r = eigh(H)
    assert np.allclose(r.eigenvalues, [3.0, 1.0], atol=1e-14)
    assert r.residuals(H).max() < 1e-13
    assert r.orthonormality_error() < 1e-13


def test_eigh_rejects():
    with pytest.raises(InvalidArgumentError):
        eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(InvalidArgumentError):
        eigh(np.ones((2, 3)))
    with pytest.raises(InvalidArgumentError):
        eigh(np.array([[np.nan]]))


def test_jacobi_sweep_limit():
    A = np.random.default_rng(0).standard_normal((12, 12))
    with pytest.raises(ConvergenceError):
        jacobi_symmetric(A + A.T, max_sweeps=1)


def test_eigh_sign_convention_reproducible():
    A = np.random.default_rng(4).standard_normal((9, 9))
    A = A + A.T
    r1, r2 = eigh(A), eigh(A.copy())
    assert np.array_equal(r1.eigenvectors, r2.eigenvectors)
    for i in range(9):
        v = r1.vector(i)
        assert v[np.argmax(np.abs(v))] > 0


def test_eigh_matches_lapack_dense():
    A = np.random.default_rng(5).standard_normal((40, 40))
    A = A + A.T
    ref = np.linalg.eigvalsh(A)[::-1]
    r = eigh(A)
    assert np.abs(r.eigenvalues - ref).max() < 1e-12
    assert r.residuals(A).max() < 1e-12


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 24), seed=st.integers(0, 2**32 - 1), cplx=st.booleans())
def test_eigh_residual_and_orthonormality(n, seed, cplx):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    if cplx:
        A = A + 1j * rng.standard_normal((n, n))
    A = 0.5 * (A + A.conj().T)
    r = eigh(A)
    nrm = max(1.0, np.linalg.norm(A, 2))
    assert r.residuals(A).max() <= 1e-10 * nrm
    assert r.orthonormality_error() <= 1e-10
    assert np.all(np.diff(r.eigenvalues) <= 0)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 16), seed=st.integers(0, 2**32 - 1))
def test_eigh_degenerate_spectrum(n, seed):
    # exactly repeated eigenvalues: any orthonormal basis of the eigenspace is accepted
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    w = rng.integers(0, 3, n).astype(float)
    A = (Q * w) @ Q.T
    A = 0.5 * (A + A.T)
    r = eigh(A)
    assert r.residuals(A).max() <= 1e-12
    assert r.orthonormality_error() <= 1e-12
    assert np.allclose(r.eigenvalues, np.sort(w)[::-1], atol=1e-12)


# ---- record models and oracles ---------------------------------------------


def test_oracle_3x3_frozen_values():
    # values derived by hand from the characteristic polynomial at a = 0.1, c = 0
    exact = oracle_3x3(0.1, 0.0)
    assert np.allclose(exact.eigenvalues, [1.0196152422706632, 1.0, -0.019615242270663247], atol=1e-15)
    s_plus, s_minus = oracle_3x3_ratios(0.1, 0.0)
    assert s_plus == pytest.approx(0.19615242270663188, abs=1e-15)
    assert s_minus == pytest.approx(-10.196152422706602, abs=1e-12)


def test_oracle_3x3_symmetric_eigenvectors():
    a, c = 0.3, -0.2
    M = RecordModel3(a, c).matrix()
    exact = oracle_3x3(a, c)
    assert exact.residuals(M).max() < 1e-14
    assert abs(exact.vector(1)[1]) == 0.0


@pytest.mark.parametrize("a", [1e-3, 1e-2, 0.1, 0.5, 1.0])
@pytest.mark.parametrize("c", [-0.5, -0.1, 0.0, 0.1, 0.5])
def test_eigh_matches_oracle_3x3(a, c):
    exact = oracle_3x3(a, c)
    num = eigh(RecordModel3(a, c).matrix())
    assert np.abs(num.eigenvalues - exact.eigenvalues).max() <= 1e-10
    for i in range(3):
        assert same_up_to_sign(num.vector(i), exact.vector(i), 1e-8)


@settings(max_examples=50, deadline=None)
@given(a=st.floats(1e-3, 2.0), c=st.floats(-2.0, 2.0))
def test_oracle_3x3_is_eigendecomposition(a, c):
    M = RecordModel3(a, c).matrix()
    exact = oracle_3x3(a, c)
    assert exact.residuals(M).max() <= 1e-12
    assert exact.orthonormality_error() <= 1e-12


def test_oracle_2x2_frozen_angle():
    # sin(atan2(a, b) / 2) at a = 0.01, b = 0.5
    r = oracle_2x2(RecordModel2(0.01, 0.5))
    assert r.vector(0)[1] == pytest.approx(0.009998500387383164, abs=1e-15)
    r = oracle_2x2(RecordModel2(0.01, 1.0))
    assert r.vector(0)[1] == pytest.approx(0.004999812512108462, abs=1e-15)


def test_oracle_2x2_rejects_fully_degenerate():
    with pytest.raises(DegenerateInputError):
        oracle_2x2(RecordModel2(0.0, 0.0))


def test_record_model_3_requires_coupling():
    with pytest.raises(InvalidArgumentError):
        RecordModel3(0.0, 0.0)


@settings(max_examples=50, deadline=None)
@given(a=st.floats(1e-4, 1.0), b=st.floats(0.0, 2.0))
def test_eigh_matches_oracle_2x2(a, b):
    m = RecordModel2(a, b)
    num, exact = eigh(m.matrix()), oracle_2x2(m)
    assert np.abs(num.eigenvalues - exact.eigenvalues).max() <= 1e-12
    for i in range(2):
        assert same_up_to_sign(num.vector(i), exact.vector(i), 1e-10)


# ---- parity ------------------------------------------------------------------


def test_parity_examples():
    assert parity_classify(np.array([1.0, 0.0, 1.0]) / np.sqrt(2)) == pytest.approx(1.0)
    assert parity_classify(np.array([1.0, 0.0, -1.0]) / np.sqrt(2)) == pytest.approx(-1.0)
    assert parity_classify(np.array([1.0, 0.0, 0.0])) == 0.0
    with pytest.raises(InvalidArgumentError):
        parity_classify(np.ones(4) / 2)


def test_random_reflection_symmetric_structure():
    M = random_reflection_symmetric(7, 99)
    assert np.array_equal(M, M.T)
    assert is_reflection_symmetric(M)
    assert np.all(M != 0)
    assert np.array_equal(M, random_reflection_symmetric(7, 99))
    with pytest.raises(InvalidArgumentError):
        random_reflection_symmetric(6, 1)


@settings(max_examples=40, deadline=None)
@given(half=st.integers(1, 5), seed=st.integers(0, 2**64 - 1))
def test_reflection_symmetric_eigenvectors_have_parity(half, seed):
    dim = 2 * half + 1
    M = random_reflection_symmetric(dim, seed)
    r = eigh(M)
    gaps = -np.diff(r.eigenvalues)
    if gaps.min() <= 1e-6:
        return
    scores = np.array([parity_classify(r.vector(i)) for i in range(dim)])
    assert np.all(np.abs(scores) >= 1 - 1e-8)
    assert (np.sum(scores > 0), np.sum(scores < 0)) == (half + 1, half)


# ---- localization -------------------------------------------------------------


def test_ipr_examples():
    e = np.zeros(10); e[3] = 1
    assert ipr(e) == 1.0
    assert ipr(np.full(16, 0.25)) == pytest.approx(1 / 16, abs=1e-15)
    n = 64
    k = np.arange(n)
    cos_mode = np.cos(2 * np.pi * 3 * k / n) * np.sqrt(2 / n)
    assert ipr(cos_mode) == pytest.approx(3 / 128, abs=1e-15)


def test_plane_wave_weights_combine_pm_pair():
    n = 32
    k = np.arange(n)
    cos_mode = np.cos(2 * np.pi * 5 * k / n) * np.sqrt(2 / n)
    w = plane_wave_weights(cos_mode)
    assert w[5] == pytest.approx(1.0, abs=1e-14)
    assert abs(w.sum() - 1) < 1e-14


def test_localization_report():
    g = make_grid(64, 40.0)
    uniform = np.full(64, 1 / 8.0)
    rep = localization(uniform, g)
    assert rep.ipr == pytest.approx(1 / 64)
    assert rep.top_plane_wave_weight == pytest.approx(1.0)
    assert np.isnan(rep.parity_score)
    # zero mean resultant length: the largest possible circular spread
    assert rep.spatial_stddev == pytest.approx(np.sqrt(2) * 40.0 / (2 * np.pi), abs=1e-12)
    delta = np.zeros(64); delta[10] = 1
    assert localization(delta, g).spatial_stddev == pytest.approx(0.0, abs=1e-6)
    odd = localization(np.array([0.6, 0.0, 0.8]), 3)
    assert odd.parity_score == pytest.approx(0.96)
    with pytest.raises(PreconditionError):
        localization(np.ones(64), g)


# ---- degenerate-cluster refinement ---------------------------------------------


def test_refine_degenerate_picks_fourier_modes():
    n = 16
    row = np.exp(-0.3 * np.minimum(np.arange(n), n - np.arange(n)) ** 2)
    C = row[(np.arange(n)[None, :] - np.arange(n)[:, None]) % n]
    r = refine_degenerate(C, eigh(C), translation_generators(n))
    for i in range(n):
        assert plane_wave_weights(r.vector(i)).max() >= 1 - 1e-10
    assert r.residuals(C).max() < 1e-12
    assert r.orthonormality_error() < 1e-12
    # independent oracle: DFT of the first row
    assert np.allclose(r.eigenvalues, np.sort(np.fft.fft(row).real)[::-1], atol=1e-13)
