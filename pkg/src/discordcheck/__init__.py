"""Negativity and geometric discord of finite-dimensional bipartite states."""
from .bloch import BlochForm, decompose_2xn, gd2_closed_form, reconstruct
from .hierarchy import (
    HierarchyReport,
    ScanRow,
    ancilla_demo,
    check_d1,
    check_eq3,
    check_eq4,
    erratum_scan,
    werner_scan,
)
from .linalg import (
    DensityMatrix,
    MeasurementBasis,
    Spectrum,
    dephase_A,
    eig_hermitian,
    partial_trace,
    partial_transpose,
    repartition,
    schatten_norm,
    tensor,
)
from .measures import (
    DiscordEstimate,
    count_negative_eigs,
    gd1_upper_bounds,
    gd2,
    gd_normalized,
    negativity_trace,
    negativity_witness,
    optimal_witness,
)
from .states import WernerParams, cq_state, max_entangled, random_density, werner

__version__ = "0.1.0"
