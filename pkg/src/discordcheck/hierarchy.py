"""Evaluators for the discord-versus-negativity inequalities and the scans built on them.

Three inequalities are checked:

``eq3_normalized``
    ``D2 >= N^2 / (m - 1)^2`` with unnormalized ``D2`` and either convention for ``N``.
``eq4_weak``
    ``m / (m - 1) * D2 >= N_w^2 / (m - 1)^2`` with the witness convention.
``d1_vs_N``
    ``D1 >= N``. Only upper bounds on ``D1`` are available, so the check can
    refute the inequality but never confirm it.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .exceptions import DimensionMismatch, InvalidDim
from .linalg import ZERO_TOL, DensityMatrix, repartition, tensor
from .measures import (
    CONVENTIONS,
    count_negative_eigs,
    gd1_upper_bounds,
    gd2,
    gd2_best,
    gd_normalized,
    negativity,
    negativity_trace,
    negativity_witness,
    pt_spectrum,
)
from .states import random_pure_product, random_state, werner

VIOLATION_TOL = 1e-10
INEQUALITIES = ("eq3_normalized", "eq4_weak", "d1_vs_N")


@dataclass(frozen=True)
class HierarchyReport:
    inequality: str
    convention: str
    lhs: float
    rhs: float
    margin: float
    violated: bool
    status: str  # "violated", "satisfied" or "inconclusive"
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown negativity convention {convention!r}; expected one of {CONVENTIONS}")


def _report(inequality, convention, lhs, rhs, details, certify=True) -> HierarchyReport:
    margin = lhs - rhs
    violated = bool(margin < -VIOLATION_TOL)
    if violated:
        status = "violated"
    else:
        status = "satisfied" if certify else "inconclusive"
    return HierarchyReport(inequality, convention, float(lhs), float(rhs), float(margin), violated, status, details)


def check_eq3(rho: DensityMatrix, convention: str = "witness", tol: float = ZERO_TOL, **gd2_kw) -> HierarchyReport:
    """``D2 >= N^2 / (m - 1)^2`` with D2 unnormalized."""
    _check_convention(convention)
    m = rho.m
    if m < 2:
        raise InvalidDim(f"needs m >= 2, got dims {rho.dims}")
    est = gd2_best(rho, **gd2_kw)
    N = negativity(rho, convention, tol)
    rhs = N**2 / (m - 1) ** 2
    details = {"m": m, "n": rho.n, "d2": est.value, "d2_route": est.route, "negativity": N}
    return _report("eq3_normalized", convention, est.value, rhs, details)


def check_eq4(rho: DensityMatrix, tol: float = ZERO_TOL, **gd2_kw) -> HierarchyReport:
    """``m / (m - 1) * D2 >= N_w^2 / (m - 1)^2``, witness convention only."""
    m = rho.m
    if m < 2:
        raise InvalidDim(f"needs m >= 2, got dims {rho.dims}")
    est = gd2_best(rho, **gd2_kw)
    lhs = gd_normalized(est.value, m)
    N = negativity_witness(rho, tol)
    rhs = N**2 / (m - 1) ** 2
    details = {"m": m, "n": rho.n, "d2": est.value, "d2_route": est.route, "d2_normalized": lhs, "negativity": N}
    return _report("eq4_weak", "witness", lhs, rhs, details)


def check_d1(rho: DensityMatrix, convention: str = "witness", tol: float = ZERO_TOL, **bound_kw) -> HierarchyReport:
    """``D1 >= N`` using the smallest available upper bound on ``D1``.

    A bound below ``N`` refutes the inequality; a bound above it proves
    nothing, so the status is then ``"inconclusive"``.
    """
    _check_convention(convention)
    bounds = gd1_upper_bounds(rho, **bound_kw)
    label, best = min(bounds, key=lambda lb: lb[1])
    N = negativity(rho, convention, tol)
    details = {"m": rho.m, "n": rho.n, "bounds": dict(bounds), "best_bound": label, "negativity": N}
    return _report("d1_vs_N", convention, best, N, details, certify=False)


def check(rho: DensityMatrix, inequality: str, convention: str = "witness", tol: float = ZERO_TOL, **kw) -> HierarchyReport:
    if inequality == "eq3_normalized":
        return check_eq3(rho, convention, tol, **kw)
    if inequality == "eq4_weak":
        return check_eq4(rho, tol, **kw)
    if inequality == "d1_vs_N":
        return check_d1(rho, convention, tol, **kw)
    raise ValueError(f"unknown inequality {inequality!r}; expected one of {INEQUALITIES}")


@dataclass(frozen=True)
class ScanRow:
    z: float
    bipartition: tuple[int, int]
    d2: float
    d2_normalized: float
    neg_witness: float
    neg_trace: float
    eq4_lhs: float
    eq4_rhs: float
    violated: bool


def werner_scan(m: int, z_grid, bipartition=None, route: str | None = None, tol: float = ZERO_TOL, **gd2_kw) -> list[ScanRow]:
    """Evaluate the weak inequality on Werner states reinterpreted under `bipartition`.

    `route` defaults to the closed form for a qubit A and the optimizer otherwise.
    """
    bipartition = (m, m) if bipartition is None else tuple(int(d) for d in bipartition)
    if bipartition[0] * bipartition[1] != m * m:
        raise DimensionMismatch(f"bipartition {bipartition} does not factor dimension {m * m}")
    mp = bipartition[0]
    rows = []
    for z in z_grid:
        rho = repartition(werner(m, float(z)), bipartition)
        est = gd2_best(rho, **gd2_kw) if route is None else gd2(rho, route, **gd2_kw)
        d2n = gd_normalized(est.value, mp)
        nw = negativity_witness(rho, tol)
        rhs = nw**2 / (mp - 1) ** 2
        rows.append(
            ScanRow(
                z=float(z),
                bipartition=bipartition,
                d2=est.value,
                d2_normalized=d2n,
                neg_witness=nw,
                neg_trace=negativity_trace(rho, tol),
                eq4_lhs=d2n,
                eq4_rhs=rhs,
                violated=bool(d2n - rhs < -VIOLATION_TOL),
            )
        )
    return rows


@dataclass
class ErratumPairResult:
    dims: tuple[int, int]
    samples: int
    max_negative: int
    histogram: dict
    counterexamples: list = field(default_factory=list)

    @property
    def bound(self) -> int:
        return self.dims[0] * self.dims[1] - 1

    @property
    def ok(self) -> bool:
        return not self.counterexamples


@dataclass
class ErratumReport:
    seed: int
    tol: float
    pairs: list[ErratumPairResult]

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.pairs)


# Every PRODUCT_EVERY-th sample is a random pure product state.
PRODUCT_EVERY = 20


def erratum_scan(dims_list, samples: int, seed: int = 0, tol: float = ZERO_TOL) -> ErratumReport:
    """Count negative partial-transpose eigenvalues on random states.

    For dims pair number ``p`` (0-based, in input order) the generator is
    ``numpy.random.default_rng([seed, p])``. Sample ``s`` is a random pure
    product state when ``s % PRODUCT_EVERY == 0`` and otherwise an induced
    random state whose rank is drawn uniformly from ``1..m n``. Any sample with
    ``n_- == m n - 1`` is recorded verbatim (matrix and spectrum).
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    out = []
    for p, dims in enumerate(dims_list):
        m, n = (int(d) for d in dims)
        d = m * n
        rng = np.random.default_rng([seed, p])
        hist: dict[int, int] = {}
        found = []
        for s in range(samples):
            if s % PRODUCT_EVERY == 0:
                rho = random_pure_product((m, n), rng)
            else:
                rank = int(rng.integers(1, d + 1))
                rho = random_state((m, n), rank, rng)
            k = count_negative_eigs(rho, tol)
            hist[k] = hist.get(k, 0) + 1
            if k == d - 1:
                found.append({"sample": s, "matrix": rho.matrix.copy(), "pt_spectrum": pt_spectrum(rho)})
        out.append(ErratumPairResult((m, n), samples, max(hist), dict(sorted(hist.items())), found))
    return ErratumReport(seed, tol, out)


@dataclass(frozen=True)
class AncillaReport:
    k: int
    dims_before: tuple[int, int]
    dims_after: tuple[int, int]
    d2_before: float
    d2_after: float
    ratio: float
    expected_ratio: float
    neg_witness_before: float
    neg_witness_after: float
    neg_trace_before: float
    neg_trace_after: float
    n_over_d_before: float
    n_over_d_after: float


def append_ancilla(rho: DensityMatrix, sigma) -> DensityMatrix:
    """``rho (x) sigma`` with the ancilla attached to B."""
    sigma = np.asarray(sigma)
    return DensityMatrix(tensor(rho.matrix, sigma), (rho.m, rho.n * sigma.shape[0]))


def ancilla_demo(rho: DensityMatrix, k: int, route: str = "optimizer", **gd2_kw) -> AncillaReport:
    """Append a maximally mixed ``k``-level ancilla to B and compare measures.

    ``N / d`` uses the trace convention and ``d = m n``.
    """
    if int(k) != k or k < 2:
        raise InvalidDim(f"ancilla dimension must be an integer >= 2, got {k}")
    rho2 = append_ancilla(rho, np.eye(k) / k)
    d_before = gd2(rho, route, **gd2_kw).value
    d_after = gd2(rho2, route, **gd2_kw).value
    nt_before, nt_after = negativity_trace(rho), negativity_trace(rho2)
    return AncillaReport(
        k=k,
        dims_before=rho.dims,
        dims_after=rho2.dims,
        d2_before=d_before,
        d2_after=d_after,
        ratio=d_after / d_before if d_before > 0 else float("nan"),
        expected_ratio=1 / k,
        neg_witness_before=negativity_witness(rho),
        neg_witness_after=negativity_witness(rho2),
        neg_trace_before=nt_before,
        neg_trace_after=nt_after,
        n_over_d_before=nt_before / rho.dim,
        n_over_d_after=nt_after / rho2.dim,
    )
