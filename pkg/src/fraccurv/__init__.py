"""Curvature constants for fractional Laplacians on the torus, computed
through the fractional-Brownian-motion covariance structure of the
carre du champ."""

from ._backend import ACTIVE_BACKEND
from .curvature import (
    ContractionProfile,
    CurvatureReport,
    DriftSpectrumReport,
    InsufficientData,
    LandscapeRow,
    OptimizationStall,
    PerronReport,
    RealCurvature,
    ZMatrixRow,
    contraction_profile,
    decay_exponent_fit,
    drift_spectrum,
    kappa,
    kappa_sequence,
    landscape,
    min_entry_bound,
    peak_quadratic_coeff,
    perron_check,
    real_curvature,
    single_mode_kappa,
    zmatrix_scan,
)
from .eigensolve import (
    ConvergenceFailure,
    DegeneratePencil,
    Spectrum,
    gen_eigen_psd,
    gen_eigen_spd,
    sym_eigen,
    sym_eigen_jacobi,
)
from .kernels import (
    StableParams,
    alpha_coeff,
    beta_coeff,
    cdc_kernel,
    cross_sign,
    fbm_covariance,
    increment_correlation,
)
from .matrices import (
    NotPositiveDefinite,
    cdc_matrix,
    cholesky,
    double_factorial,
    exact_curvature_matrix,
    fbm_matrix,
    hadamard_power,
    inverse_times,
    log_det,
)
from .oracle import (
    TrigPoly,
    apply_generator,
    carre_du_champ,
    coeff_distance,
    drift_correction_matrix,
    drift_gradient,
    drift_single_mode_ratio,
    gamma2_direct,
    gamma2_drift,
    gamma2_hadamard,
    single_mode_ratio,
)

__version__ = "0.1.0"
