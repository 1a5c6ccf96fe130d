"""Negativity, optimal witnesses and geometric discord.

Two negativity conventions are kept side by side: the *witness* convention
(sum of the moduli of the negative partial-transpose eigenvalues) and the
*trace* convention ``||rho^{T_A}||_1 - 1``, which is exactly twice the former.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from . import bloch
from .exceptions import ClosedFormRequiresQubitA, InvalidDim, NotNPT
from .linalg import (
    ZERO_TOL,
    DensityMatrix,
    MeasurementBasis,
    dephase_A,
    eig_hermitian,
    eigvals_hermitian,
    measured_blocks,
    partial_transpose,
    schatten_norm,
)
from .states import random_unitary

ROUTES = ("closed_form", "optimizer", "fixed_basis")
CONVENTIONS = ("witness", "trace")

__all__ = [
    "MeasurementBasis",
    "DiscordEstimate",
    "BasisSearch",
    "pt_spectrum",
    "negativity_witness",
    "negativity_trace",
    "negativity",
    "count_negative_eigs",
    "optimal_witness",
    "gd2",
    "gd2_best",
    "gd_normalized",
    "gd1_upper_bounds",
    "optimize_basis",
]


def pt_spectrum(rho: DensityMatrix) -> np.ndarray:
    return eigvals_hermitian(partial_transpose(rho))


def negativity_witness(rho: DensityMatrix, tol: float = ZERO_TOL) -> float:
    """Sum of ``|lambda|`` over partial-transpose eigenvalues below ``-tol``."""
    lam = pt_spectrum(rho)
    return float(-lam[lam < -tol].sum())


def negativity_trace(rho: DensityMatrix, tol: float = ZERO_TOL) -> float:
    """``||rho^{T_A}||_1 - 1``, snapped to 0 when within `tol` of it."""
    val = schatten_norm(partial_transpose(rho), 1) - 1.0
    return 0.0 if abs(val) < tol else val


def negativity(rho: DensityMatrix, convention: str = "witness", tol: float = ZERO_TOL) -> float:
    if convention == "witness":
        return negativity_witness(rho, tol)
    if convention == "trace":
        return negativity_trace(rho, tol)
    raise ValueError(f"unknown negativity convention {convention!r}; expected one of {CONVENTIONS}")


def count_negative_eigs(rho: DensityMatrix, tol: float = ZERO_TOL) -> int:
    return int(np.count_nonzero(pt_spectrum(rho) < -tol))


def optimal_witness(rho: DensityMatrix, tol: float = ZERO_TOL) -> np.ndarray:
    """``W = P_-^{T_A}`` with ``P_-`` the projector onto the negative eigenspace of ``rho^{T_A}``.

    ``W^{T_A} = P_-`` has spectrum in {0, 1}, and ``tr(W rho)`` equals minus
    the witness-convention negativity.
    """
    lam, vecs = eig_hermitian(partial_transpose(rho))
    neg = lam < -tol
    if not neg.any():
        raise NotNPT(f"state has positive partial transpose (min eigenvalue {lam[-1]:.3e})")
    V = vecs[:, neg]
    return partial_transpose(V @ V.conj().T, rho.dims)


@dataclass(frozen=True)
class DiscordEstimate:
    value: float
    route: str
    basis: MeasurementBasis | None = None
    converged: bool = True


@dataclass(frozen=True)
class BasisSearch:
    value: float
    basis: MeasurementBasis
    converged: bool
    start: int
    sweeps: int


def _rotate(U: np.ndarray, i: int, j: int, theta, imaginary: bool) -> np.ndarray:
    """Batch ``U @ G(theta)`` for the pair rotation on columns i, j; `theta` is 1-d."""
    theta = np.atleast_1d(theta)
    c, s = np.cos(theta)[:, None], np.sin(theta)[:, None]
    ph = 1j if imaginary else 1.0
    out = np.broadcast_to(U, (theta.size,) + U.shape).copy()
    out[:, :, i] = c * U[:, i] + ph * s * U[:, j]
    out[:, :, j] = -np.conj(ph) * s * U[:, i] + c * U[:, j]
    return out


def _line_search(f: Callable, U: np.ndarray, i: int, j: int, imaginary: bool, grid: int, current: float):
    # Rotating by pi/2 swaps u_i and u_j up to phases: the projector set has period pi/2.
    thetas = np.linspace(-np.pi / 4, np.pi / 4, grid, endpoint=False)
    vals = f(_rotate(U, i, j, thetas, imaginary))
    k = int(np.argmin(vals))
    h = thetas[1] - thetas[0]

    def g(t):
        return float(f(_rotate(U, i, j, t, imaginary))[0])

    res = minimize_scalar(g, bounds=(thetas[k] - h, thetas[k] + h), method="bounded", options={"xatol": 1e-9})
    best_t, best_v = (res.x, res.fun) if res.fun <= vals[k] else (thetas[k], vals[k])
    if best_v < current:
        return _rotate(U, i, j, best_t, imaginary)[0], float(best_v)
    return U, current


def optimize_basis(
    f: Callable[[np.ndarray], np.ndarray],
    m: int,
    starts: int = 20,
    seed: int = 0,
    max_sweeps: int = 500,
    tol: float = 1e-10,
    grid: int = 16,
) -> BasisSearch:
    """Minimize `f` over orthonormal bases of ``C^m`` by multi-start Givens coordinate descent.

    `f` maps a stack of unitaries ``(batch, m, m)`` (columns = basis vectors)
    to a ``(batch,)`` array and must be invariant under column phases and
    permutations. Start 0 is the computational basis, starts 1.. are Haar
    unitaries from ``default_rng(seed)``. Each sweep line-searches every pair
    ``(i, j)`` along a real and an imaginary rotation; a start converges once a
    sweep improves by less than `tol`. Ties go to the lower start index.
    """
    if m < 1:
        raise InvalidDim(f"basis dimension must be positive, got {m}")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    best = None
    for s in range(max(starts, 1)):
        U = np.eye(m, dtype=complex) if s == 0 else random_unitary(m, rng)
        val = float(f(U[None])[0])
        converged = not pairs
        sweeps = 0
        while not converged and sweeps < max_sweeps:
            before = val
            for i, j in pairs:
                for imaginary in (False, True):
                    U, val = _line_search(f, U, i, j, imaginary, grid, val)
            sweeps += 1
            converged = before - val < tol
        if best is None or val < best.value:
            best = BasisSearch(val, MeasurementBasis(_reorthonormalize(U)), converged, s, sweeps)
    return best


def _reorthonormalize(U: np.ndarray) -> np.ndarray:
    Q, R = np.linalg.qr(U)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def _hs_objective(rho: DensityMatrix) -> Callable:
    blk = rho.blocks()
    total = float(np.linalg.norm(rho.matrix) ** 2)

    def f(Us):
        # ||rho - dephased||_2^2 = ||rho||_2^2 - sum_k ||<u_k|rho|u_k>||_2^2 (orthogonal projection)
        cond = measured_blocks(blk, Us)
        return total - np.sum(np.abs(cond) ** 2, axis=(-3, -2, -1))

    return f


def _trace_objective(rho: DensityMatrix) -> Callable:
    blk = rho.blocks()
    X = rho.matrix
    d = rho.dim

    def f(Us):
        cond = measured_blocks(blk, Us)
        xi = np.einsum("...ak,...bk,...kij->...aibj", Us, Us.conj(), cond).reshape(Us.shape[:-2] + (d, d))
        D = X - xi
        D = (D + np.swapaxes(D.conj(), -1, -2)) / 2
        return np.abs(np.linalg.eigvalsh(D)).sum(axis=-1)

    return f


def _fixed_basis_gd2(rho: DensityMatrix, basis: MeasurementBasis) -> float:
    return float(max(_hs_objective(rho)(basis.vectors[None])[0], 0.0))


def gd2(
    rho: DensityMatrix,
    route: str = "optimizer",
    basis: MeasurementBasis | None = None,
    starts: int = 20,
    seed: int = 0,
    max_sweeps: int = 500,
) -> DiscordEstimate:
    """Unnormalized Hilbert-Schmidt geometric discord ``min ||rho - xi||_2^2``.

    ``fixed_basis`` dephases in `basis` (computational by default) and is an
    upper bound; ``optimizer`` minimizes that over all bases; ``closed_form``
    is exact and needs ``m == 2``.
    """
    if route == "closed_form":
        if rho.m != 2:
            raise ClosedFormRequiresQubitA(f"closed form needs m = 2, got dims {rho.dims}")
        return DiscordEstimate(bloch.gd2_closed_form(rho), route)
    if route == "fixed_basis":
        basis = MeasurementBasis.computational(rho.m) if basis is None else basis
        return DiscordEstimate(_fixed_basis_gd2(rho, basis), route, basis)
    if route == "optimizer":
        res = optimize_basis(_hs_objective(rho), rho.m, starts=starts, seed=seed, max_sweeps=max_sweeps)
        return DiscordEstimate(max(res.value, 0.0), route, res.basis, res.converged)
    raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")


def gd2_best(rho: DensityMatrix, **kw) -> DiscordEstimate:
    """Closed form when A is a qubit, otherwise the optimizer."""
    return gd2(rho, "closed_form") if rho.m == 2 else gd2(rho, "optimizer", **kw)


def gd_normalized(value: float, m: int) -> float:
    """Rescale by ``m / (m - 1)`` so the maximum is 1."""
    if m < 2:
        raise InvalidDim(f"normalization needs m >= 2, got {m}")
    return m / (m - 1) * value


def gd1_upper_bounds(rho: DensityMatrix, starts: int = 20, seed: int = 0, optimize: bool = True) -> list[tuple[str, float]]:
    """Trace-norm distances to specific classical-quantum states, each an upper bound on D_1.

    ``identity`` uses the maximally mixed state, ``dephased`` the computational
    dephasing and ``optimizer`` the best dephasing found over bases. None of
    them is claimed to be D_1 itself.
    """
    X = rho.matrix
    d = rho.dim
    bounds = [
        ("identity", schatten_norm(X - np.eye(d) / d, 1)),
        ("dephased", schatten_norm(X - dephase_A(rho).matrix, 1)),
    ]
    if optimize:
        res = optimize_basis(_trace_objective(rho), rho.m, starts=starts, seed=seed)
        bounds.append(("optimizer", float(res.value)))
    return bounds
