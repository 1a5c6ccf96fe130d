import numpy as np
import pytest

from discordcheck import measures, states
from discordcheck.exceptions import ClosedFormRequiresQubitA, InvalidDim, NotNPT
from discordcheck.hierarchy import append_ancilla
from discordcheck.linalg import DensityMatrix, MeasurementBasis, dephase_A, eig_hermitian, partial_transpose, repartition
from oracles import dephase_projectors, pt_loops, random_rho, trace_norm_svd


def _assert_convention_identity(rho):
    assert measures.negativity_trace(rho) == pytest.approx(2 * measures.negativity_witness(rho), abs=1e-12)


# -- negativity --------------------------------------------------------------

def test_negativity_product_and_cq_zero(rng):
    prod = DensityMatrix(np.kron(random_rho(rng, 2), random_rho(rng, 3)), (2, 3))
    cq = states.cq_state([0.2, 0.8], [random_rho(rng, 2), random_rho(rng, 2)])
    for rho in (prod, cq):
        assert measures.negativity_witness(rho) == 0
        assert measures.negativity_trace(rho) == 0
        assert measures.count_negative_eigs(rho) == 0


@pytest.mark.parametrize("m", [2, 3, 4, 5, 8])
def test_negativity_max_entangled(m):
    rho = states.max_entangled(m)
    assert measures.negativity_witness(rho) == pytest.approx((m - 1) / 2, abs=1e-12)
    # ||rho^{T_A}||_1 = m from the +-1/m spectrum
    assert trace_norm_svd(pt_loops(rho.matrix, m, m)) == pytest.approx(m, abs=1e-12)
    assert measures.negativity_trace(rho) == pytest.approx(m - 1, abs=1e-12)
    assert measures.count_negative_eigs(rho) == m * (m - 1) // 2
    _assert_convention_identity(rho)


def test_negativity_bell_trace_convention():
    assert measures.negativity_trace(states.max_entangled(2)) == pytest.approx(1, abs=1e-12)
    assert measures.count_negative_eigs(states.max_entangled(2)) == 1


def test_negativity_werner_repartitioned():
    rho = states.werner(8, -1)
    assert measures.negativity_witness(rho) == pytest.approx(1 / 8, abs=1e-12)
    r2 = repartition(rho, (2, 32))
    # oracle: direct spectrum of the entrywise partial transpose
    lam = np.linalg.eigvalsh(pt_loops(r2.matrix, 2, 32))
    oracle = -lam[lam < -1e-10].sum()
    assert oracle == pytest.approx(5 / 28, abs=1e-12)
    assert measures.negativity_witness(r2) == pytest.approx(5 / 28, abs=1e-12)
    _assert_convention_identity(rho)
    _assert_convention_identity(r2)


def test_convention_identity_random(rng):
    for i in range(200):
        m, n = rng.integers(2, 5, size=2)
        rho = DensityMatrix(random_rho(rng, m * n, rng.integers(1, m * n + 1)), (m, n))
        _assert_convention_identity(rho)


def test_negativity_convention_dispatch():
    rho = states.max_entangled(3)
    assert measures.negativity(rho, "witness") == measures.negativity_witness(rho)
    assert measures.negativity(rho, "trace") == measures.negativity_trace(rho)
    with pytest.raises(ValueError):
        measures.negativity(rho, "half")


# -- optimal witness ---------------------------------------------------------

def test_witness_requires_npt():
    with pytest.raises(NotNPT):
        measures.optimal_witness(DensityMatrix(np.eye(4) / 4, (2, 2)))


def test_witness_bell():
    rho = states.max_entangled(2)
    W = measures.optimal_witness(rho)
    assert np.trace(W @ rho.matrix).real == pytest.approx(-0.5, abs=1e-12)
    singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
    np.testing.assert_allclose(partial_transpose(W, (2, 2)), np.outer(singlet, singlet), atol=1e-12)


def test_witness_werner_8x8():
    rho = states.werner(8, -1)
    W = measures.optimal_witness(rho)
    assert np.trace(W @ rho.matrix).real == pytest.approx(-1 / 8, abs=1e-12)


def test_witness_operator_bounds_random(rng):
    found = 0
    for _ in range(60):
        m, n = rng.integers(2, 4, size=2)
        rho = DensityMatrix(random_rho(rng, m * n, rng.integers(1, 3)), (m, n))
        if measures.negativity_witness(rho) == 0:
            continue
        found += 1
        W = measures.optimal_witness(rho)
        lam = eig_hermitian(partial_transpose(W, rho.dims)).eigenvalues
        assert lam[-1] >= -1e-10 and lam[0] <= 1 + 1e-10
        assert np.trace(W @ rho.matrix).real == pytest.approx(-measures.negativity_witness(rho), abs=1e-10)
    assert found > 20


# -- Hilbert-Schmidt discord ---------------------------------------------------

def test_gd2_routes_bell():
    rho = states.max_entangled(2)
    # computational dephasing drops two off-diagonals of modulus 1/2: 2 * (1/2)^2
    oracle = np.sum(np.abs(rho.matrix - dephase_projectors(rho.matrix, np.eye(2), 2)) ** 2)
    assert oracle == pytest.approx(0.5)
    for route in measures.ROUTES:
        assert measures.gd2(rho, route).value == pytest.approx(0.5, abs=1e-10)


def test_gd2_werner_computational_basis():
    rho = repartition(states.werner(8, -1), (2, 32))
    est = measures.gd2(rho, "fixed_basis")
    assert est.value == pytest.approx(1 / 98, abs=1e-12)
    assert est.route == "fixed_basis"


def test_gd2_zero_on_cq(rng):
    for m, n in [(2, 2), (2, 3), (3, 2)]:
        rho = states.cq_state(rng.dirichlet(np.ones(m)), [random_rho(rng, n) for _ in range(m)])
        routes = measures.ROUTES if m == 2 else ("optimizer", "fixed_basis")
        for route in routes:
            assert measures.gd2(rho, route).value <= 1e-10
        # dephased outputs of arbitrary states are also zero-discord
        out = dephase_A(DensityMatrix(random_rho(rng, m * n), (m, n)))
        assert measures.gd2(out, "optimizer", starts=3).value <= 1e-10


def test_gd2_closed_form_requires_qubit():
    with pytest.raises(ClosedFormRequiresQubitA):
        measures.gd2(states.max_entangled(3), "closed_form")
    with pytest.raises(ValueError):
        measures.gd2(states.max_entangled(2), "simplex")


def test_gd2_fixed_basis_matches_explicit_distance(rng):
    rho = DensityMatrix(random_rho(rng, 6), (3, 2))
    U = states.random_unitary(3, rng)
    explicit = np.sum(np.abs(rho.matrix - dephase_projectors(rho.matrix, U, 2)) ** 2)
    assert measures.gd2(rho, "fixed_basis", MeasurementBasis(U)).value == pytest.approx(explicit, abs=1e-13)


def test_route_ordering(rng):
    for i in range(40):
        n = 2 + i % 3
        rho = DensityMatrix(random_rho(rng, 2 * n), (2, n))
        cf = measures.gd2(rho, "closed_form").value
        opt = measures.gd2(rho, "optimizer", starts=5)
        fb = measures.gd2(rho, "fixed_basis").value
        assert cf <= opt.value + 1e-9
        assert opt.value <= fb + 1e-9
        assert opt.converged
        assert opt.value == pytest.approx(cf, abs=1e-6)


def test_optimizer_qutrit_bell_is_known_value():
    # D2 of the m x m maximally entangled state is (m - 1)/m
    for m in (3, 4):
        est = measures.gd2(states.max_entangled(m), "optimizer", starts=4)
        assert est.value == pytest.approx((m - 1) / m, abs=1e-8)


def test_optimizer_deterministic(rng):
    rho = DensityMatrix(random_rho(rng, 6), (3, 2))
    a = measures.gd2(rho, "optimizer", starts=4, seed=3)
    b = measures.gd2(rho, "optimizer", starts=4, seed=3)
    assert a.value == b.value
    np.testing.assert_array_equal(a.basis.vectors, b.basis.vectors)


def test_optimizer_not_converged_flag(rng):
    rho = DensityMatrix(random_rho(rng, 6), (3, 2))
    est = measures.gd2(rho, "optimizer", starts=1, max_sweeps=1)
    assert not est.converged
    assert est.value <= measures.gd2(rho, "fixed_basis").value + 1e-12


def test_gd_normalized():
    assert measures.gd_normalized(0.5, 2) == 1
    assert measures.gd_normalized(0, 5) == 0
    assert measures.gd_normalized(1 / 98, 2) == pytest.approx(1 / 49)
    with pytest.raises(InvalidDim):
        measures.gd_normalized(0.1, 1)


def test_ancilla_scaling_of_gd2(rng):
    for _ in range(10):
        rho = DensityMatrix(random_rho(rng, 4), (2, 2))
        sigma = random_rho(rng, 2)
        big = append_ancilla(rho, sigma)
        purity = np.trace(sigma @ sigma).real
        expect = measures.gd2(rho, "closed_form").value * purity
        assert measures.gd2(big, "optimizer", starts=5).value == pytest.approx(expect, abs=1e-6)
        for conv in ("witness", "trace"):
            assert measures.negativity(big, conv) == pytest.approx(measures.negativity(rho, conv), abs=1e-10)


# -- trace-norm discord bounds ----------------------------------------------

def test_gd1_bounds_cq_dephased_zero(rng):
    rho = states.cq_state([0.5, 0.5], [random_rho(rng, 2), random_rho(rng, 2)])
    bounds = dict(measures.gd1_upper_bounds(rho, starts=3))
    assert bounds["dephased"] <= 1e-12
    assert bounds["optimizer"] <= 1e-10


def test_gd1_bounds_bell():
    b4 = dict(measures.gd1_upper_bounds(states.max_entangled(4), starts=3))
    assert b4["identity"] == pytest.approx(15 / 8, abs=1e-10)
    b2 = dict(measures.gd1_upper_bounds(states.max_entangled(2), starts=3))
    assert b2["dephased"] == pytest.approx(1, abs=1e-12)
    assert b2["optimizer"] <= 1 + 1e-10


def test_gd1_bounds_at_most_two(rng):
    for _ in range(10):
        m, n = rng.integers(2, 4, size=2)
        rho = DensityMatrix(random_rho(rng, m * n, rng.integers(1, m * n + 1)), (m, n))
        for label, b in measures.gd1_upper_bounds(rho, starts=2):
            assert 0 <= b <= 2 + 1e-10, label
