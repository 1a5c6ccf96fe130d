import numpy as np
import pytest

from discordcheck import measures, states
from discordcheck.exceptions import BadProbabilities, BadRank, BlockDimensionMismatch, InvalidDim, InvalidZ
from discordcheck.linalg import dephase_A, eig_hermitian, partial_trace, partial_transpose
from oracles import local_unitary, random_rho


def test_werner_m2_singlet():
    rho = states.werner(2, -1)
    singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
    np.testing.assert_allclose(rho.matrix, np.outer(singlet, singlet), atol=1e-15)


def test_werner_counterexample_state_shape():
    rho = states.werner(8, -1)
    assert rho.dims == (8, 8)
    assert rho.matrix.shape == (64, 64)


@pytest.mark.parametrize("m", [2, 3, 5, 8])
@pytest.mark.parametrize("z", [-1.0, -0.5, 0.0, 0.25, 1.0])
def test_werner_valid_and_swap_expectation(m, z):
    rho = states.werner(m, z)
    assert np.trace(rho.matrix).real == pytest.approx(1, abs=1e-12)
    assert eig_hermitian(rho.matrix).eigenvalues[-1] >= -1e-12
    assert np.trace(states.swap_operator(m) @ rho.matrix).real == pytest.approx(z, abs=1e-12)


def test_werner_invalid():
    with pytest.raises(InvalidZ):
        states.werner(3, 1.5)
    with pytest.raises(InvalidDim):
        states.werner(1, 0)


def test_werner_uu_symmetry(rng):
    for m in (2, 3, 4):
        rho = states.werner(m, -0.6).matrix
        for _ in range(5):
            U = local_unitary(rng, m)
            UU = np.kron(U, U)
            assert np.linalg.norm(rho - UU @ rho @ UU.conj().T) < 1e-10


@pytest.mark.parametrize("m,z", [(2, -1), (3, -0.4), (4, 0.5), (8, -1)])
def test_werner_pt_spectrum_two_valued(m, z):
    lam = eig_hermitian(partial_transpose(states.werner(m, z))).eigenvalues
    expect = sorted([z / m] + [(m - z) / (m**3 - m)] * (m * m - 1), reverse=True)
    np.testing.assert_allclose(lam, expect, atol=1e-13)


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_max_entangled(m):
    rho = states.max_entangled(m)
    lam = eig_hermitian(rho.matrix).eigenvalues
    np.testing.assert_allclose(lam, [1] + [0] * (m * m - 1), atol=1e-14)
    np.testing.assert_allclose(partial_trace(rho, "B"), np.eye(m) / m, atol=1e-15)
    pt = eig_hermitian(partial_transpose(rho)).eigenvalues
    np.testing.assert_allclose(pt, [1 / m] * (m * (m + 1) // 2) + [-1 / m] * (m * (m - 1) // 2), atol=1e-14)
    assert measures.negativity_witness(rho) == pytest.approx((m - 1) / 2, abs=1e-12)


def test_max_entangled_invalid():
    with pytest.raises(InvalidDim):
        states.max_entangled(1)


def test_cq_state_uniform_mixed_is_identity():
    rho = states.cq_state([1 / 3] * 3, [np.eye(2) / 2] * 3)
    np.testing.assert_allclose(rho.matrix, np.eye(6) / 6, atol=1e-15)


def test_cq_state_single_outcome(rng):
    b = random_rho(rng, 3)
    rho = states.cq_state([1, 0], [b, np.eye(3) / 3])
    np.testing.assert_allclose(rho.matrix, np.kron(np.diag([1, 0]), b), atol=1e-15)


def test_cq_states_are_ppt_and_fixed_points(rng):
    for _ in range(20):
        m, n = rng.integers(2, 5, size=2)
        p = rng.dirichlet(np.ones(m))
        rho = states.cq_state(p, [random_rho(rng, n) for _ in range(m)])
        assert eig_hermitian(partial_transpose(rho)).eigenvalues[-1] > -1e-12
        assert measures.negativity_witness(rho) == 0
        np.testing.assert_allclose(dephase_A(rho).matrix, rho.matrix, atol=1e-15)


def test_cq_state_errors():
    with pytest.raises(BadProbabilities):
        states.cq_state([0.5, 0.6], [np.eye(2) / 2] * 2)
    with pytest.raises(BadProbabilities):
        states.cq_state([1.5, -0.5], [np.eye(2) / 2] * 2)
    with pytest.raises(BlockDimensionMismatch):
        states.cq_state([0.5, 0.5], [np.eye(2) / 2])
    with pytest.raises(BlockDimensionMismatch):
        states.cq_state([0.5, 0.5], [np.eye(2) / 2, np.eye(3) / 3])


def test_random_density_pure_and_deterministic():
    rho = states.random_density(6, 1, seed=7)
    assert np.trace(rho @ rho).real == pytest.approx(1, abs=1e-12)
    assert np.array_equal(rho, states.random_density(6, 1, seed=7))
    assert not np.array_equal(rho, states.random_density(6, 1, seed=8))


def test_random_density_full_rank():
    for seed in range(20):
        rho = states.random_density(6, 6, seed=seed)
        assert np.trace(rho).real == pytest.approx(1, abs=1e-14)
        assert eig_hermitian(rho).eigenvalues[-1] > 1e-12


def test_random_density_bad_rank():
    with pytest.raises(BadRank):
        states.random_density(4, 0)
    with pytest.raises(BadRank):
        states.random_density(4, 5)


def test_random_unitary_is_unitary():
    U = states.random_unitary(5, seed=1)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(5), atol=1e-13)
