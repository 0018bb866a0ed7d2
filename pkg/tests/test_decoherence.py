import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pointerlab.decoherence import (
    DensityMatrix,
    DephasingKernel,
    constant_rho,
    density_from_mixture,
    dephase,
    hermiticity_error,
)
from pointerlab.errors import InvalidArgumentError
from pointerlab.grid_states import inner_product, make_frame, make_grid


def random_psd(n, rng, rank=None):
    rank = rank or n
    B = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    M = B @ B.conj().T
    M = 0.5 * (M + M.conj().T)
    return M / np.trace(M).real


def test_single_state_projector():
    g = make_grid(256, 40.0)
    rho = density_from_mixture(make_frame(g, [20.0]), [1.0])
    w = np.linalg.eigvalsh(rho.entries)
    assert abs(rho.trace - 1) < 1e-12
    assert abs(w[-1] - 1) < 1e-12 and np.abs(w[:-1]).max() < 1e-12


def test_disjoint_pair_mixture():
    g = make_grid(256, 40.0)
    rho = density_from_mixture(make_frame(g, [5.0, 25.0], width_a=3.0), [0.5, 0.5])
    w = np.sort(np.linalg.eigvalsh(rho.entries))[::-1]
    assert np.allclose(w[:2], 0.5, atol=1e-12)
    assert np.abs(w[2:]).max() < 1e-12


def test_overlapping_pair_matches_gram_reduction():
    g = make_grid(512, 40.0)
    frame = make_frame(g, [20.0, 21.0])
    rho = density_from_mixture(frame, [0.5, 0.5])
    s = inner_product(*frame.states).real
    # 2x2 reduction: nonzero spectrum of sum_i w_i |i><i| equals that of diag(w)^(1/2) G diag(w)^(1/2)
    oracle = np.linalg.eigvalsh(0.5 * np.array([[1, s], [s, 1]]))[::-1]
    w = np.sort(np.linalg.eigvalsh(rho.entries))[::-1]
    assert np.allclose(w[:2], oracle, atol=1e-12)
    # frozen from the continuum overlap e^{-1/2}
    assert np.allclose(w[:2], [0.8032653298563167, 0.1967346701436833], atol=1e-6)


def test_mixture_rejects_bad_weights():
    g = make_grid(64, 40.0)
    frame = make_frame(g, [5.0, 6.0])
    with pytest.raises(InvalidArgumentError):
        density_from_mixture(frame, [1.5, -0.5])
    with pytest.raises(InvalidArgumentError):
        density_from_mixture(frame, [0.5, 0.6])
    with pytest.raises(InvalidArgumentError):
        density_from_mixture(frame, [1.0])


def test_constant_rho():
    g = make_grid(2, 1.0)
    rho = constant_rho(g)
    assert np.array_equal(rho.entries, np.full((2, 2), 0.5))
    g8 = make_grid(8, 4.0)
    w, V = np.linalg.eigh(constant_rho(g8).entries)
    assert abs(w[-1] - 1) < 1e-12 and np.abs(w[:-1]).max() < 1e-12
    v = V[:, -1] * np.sign(V[0, -1].real)
    assert np.abs(v - 1 / np.sqrt(8)).max() < 1e-12


def test_density_matrix_validation():
    with pytest.raises(InvalidArgumentError):
        DensityMatrix(np.array([[1.0, 0.2], [0.0, 1.0]]))
    with pytest.raises(InvalidArgumentError):
        DensityMatrix(np.array([[-1.0, 0.0], [0.0, -1.0]]))
    with pytest.raises(InvalidArgumentError):
        DensityMatrix(np.eye(3), make_grid(4, 1.0))


def test_dephase_identity_at_zero_strength():
    g = make_grid(32, 20.0)
    rho = DensityMatrix(random_psd(32, np.random.default_rng(0)), g)
    out = dephase(rho, DephasingKernel(0.0, g))
    assert np.array_equal(out.entries, rho.entries)


def test_dephase_keeps_diagonal():
    g = make_grid(32, 20.0)
    rho = DensityMatrix(random_psd(32, np.random.default_rng(1)), g)
    out = dephase(rho, DephasingKernel(0.7, g))
    assert np.array_equal(np.diag(out.entries), np.diag(rho.entries))


def test_dephase_grid_mismatch():
    g = make_grid(32, 20.0)
    rho = constant_rho(g)
    with pytest.raises(InvalidArgumentError):
        dephase(rho, DephasingKernel(0.5, make_grid(32, 21.0)))
    with pytest.raises(InvalidArgumentError):
        dephase(DensityMatrix(np.eye(32) / 32), DephasingKernel(0.5, g))
    with pytest.raises(InvalidArgumentError):
        DephasingKernel(-0.1, g)


def test_dephased_constant_is_circulant_with_dft_spectrum():
    g = make_grid(256, 40.0)
    out = dephase(constant_rho(g), DephasingKernel(0.5, g)).entries.real
    n = 256
    for shift in (1, 17, 128):
        rolled = np.roll(np.roll(out, shift, axis=0), shift, axis=1)
        assert np.abs(rolled - out).max() <= 1e-14
    # independent oracle: eigenvalues of a circulant are the DFT of its first row
    dft = np.sort(np.fft.fft(out[0]).real)[::-1]
    w = np.sort(np.linalg.eigvalsh(out))[::-1]
    assert np.abs(dft - w).max() < 1e-12
    assert dft.min() >= -1e-10
    assert abs(np.trace(out) - 1) < 1e-12 and n == out.shape[0]


def test_kernel_is_psd():
    for lam in (0.01, 0.5, 3.0):
        g = make_grid(128, 20.0)
        K = DephasingKernel(lam, g).matrix()
        assert np.linalg.eigvalsh(K).min() >= -1e-10
        assert np.all(np.diag(K) == 1.0)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), lam=st.floats(0.0, 5.0), rank=st.integers(1, 24))
def test_dephase_channel_properties(seed, lam, rank):
    g = make_grid(24, 30.0)
    rho = DensityMatrix(random_psd(24, np.random.default_rng(seed), rank), g)
    out = dephase(rho, DephasingKernel(lam, g))
    assert abs(out.trace - rho.trace) <= 1e-12
    assert hermiticity_error(out.entries) <= 1e-12
    assert out.min_eigenvalue() >= -1e-9


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), l1=st.floats(0.2, 2.0), l2=st.floats(0.2, 2.0))
def test_dephase_composition_law(seed, l1, l2):
    # image terms stay below exp(-80) for lambda >= 0.2 on L = 40
    g = make_grid(32, 40.0)
    rho = DensityMatrix(random_psd(32, np.random.default_rng(seed)), g)
    twice = dephase(dephase(rho, DephasingKernel(l1, g)), DephasingKernel(l2, g))
    once = dephase(rho, DephasingKernel(l1 + l2, g))
    assert np.abs(twice.entries - once.entries).max() <= 1e-12


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), lams=st.lists(st.floats(0.0, 3.0), min_size=2, max_size=5))
def test_dephase_monotone_in_strength(seed, lams):
    g = make_grid(16, 20.0)
    rho = DensityMatrix(random_psd(16, np.random.default_rng(seed)), g)
    mags = [np.abs(dephase(rho, DephasingKernel(l, g)).entries) for l in sorted(lams)]
    off = ~np.eye(16, dtype=bool)
    for m1, m2 in zip(mags, mags[1:]):
        assert np.all(m2[off] <= m1[off])


@pytest.mark.parametrize("lam", [1e-300, 1e-4, 0.005, 0.0195, 0.0197, 0.1])
def test_kernel_profile_matches_brute_force_image_sum(lam):
    # lambda L^2 = pi (about 0.0196 here) is where the Fourier-dual series takes over
    g = make_grid(40, 40.0)
    x = g.points
    m = np.arange(-400, 401)[:, None]
    brute = np.exp(-lam * (x[None, :] - m * 40.0) ** 2).sum(axis=0)
    brute = 0.5 * (brute + brute[(-np.arange(40)) % 40])
    assert np.abs(DephasingKernel(lam, g).profile() - brute / brute[0]).max() <= 1e-12
