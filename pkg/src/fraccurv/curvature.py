"""Curvature computations: the spectral constant kappa(gamma, N), sweep and
landscape machinery, Z-matrix / Perron structure checks, drift spectra,
real-polynomial curvature, and the determinant / contraction invariants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigensolve import Spectrum, gen_eigen_psd, gen_eigen_spd
from .kernels import alpha_coeff
from .matrices import (
    cdc_matrix,
    double_factorial,
    fbm_matrix,
    hadamard_power,
    inverse_times,
)

DEFAULT_SEED = 2718281828

# pass threshold for non-positive off-diagonal entries of R^{-1} R^{o2}
ZMATRIX_TOL = 1e-10
# entries of the minimizing vector below -tol * ||v||_inf count as sign changes
PERRON_TOL = 1e-8
# x-grid for global drift minimization (contains x = pi exactly)
DRIFT_X_POINTS = 4096


class OptimizationStall(RuntimeError):
    """Restarts of the constrained minimizer disagree beyond tolerance."""


class InsufficientData(RuntimeError):
    """Too few usable decrements for a decay fit."""


@dataclass
class CurvatureReport:
    """One curvature evaluation: the pencil minimum plus diagnostics."""

    gamma: float
    n: int
    kappa: float
    minimizing_vector: np.ndarray | None = None
    decrement: float | None = None
    flags: dict[str, bool] = field(default_factory=dict)


@dataclass
class DriftSpectrumReport:
    omega_sq: float
    n: int
    x: float
    eigenvalues: np.ndarray
    global_kappa: float


@dataclass
class LandscapeRow:
    gamma: float
    n: int
    kappa: float
    kappa_single_mode: float


@dataclass
class ZMatrixRow:
    h: float
    n: int
    max_offdiag: float
    passed: bool


@dataclass
class PerronReport:
    nonnegative: bool
    sign_changes: int


@dataclass
class ContractionProfile:
    rates: np.ndarray
    geometric_mean: float
    stirling_ratio: float
    volume_ratio_log: float


@dataclass
class RealCurvature:
    pencil_kappa: float
    constrained_kappa: float
    retained: int


def _pencil(gamma: float, n: int, want_vectors: bool) -> Spectrum:
    r = fbm_matrix(gamma / 2.0, n)
    return gen_eigen_spd(hadamard_power(r, 2), r, want_vectors=want_vectors)


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip the global sign so the largest-magnitude entry is positive."""
    i = int(np.argmax(np.abs(v)))
    return -v if v[i] < 0 else v.copy()


def _offdiag_max(m: np.ndarray) -> float:
    off = m.copy()
    np.fill_diagonal(off, -np.inf)
    return float(off.max())


def kappa(gamma: float, n: int, want_vector: bool = True,
          want_flags: bool = True) -> CurvatureReport:
    """Curvature constant on positive-frequency polynomials of degree n:
    the smallest eigenvalue of the pencil ``(R_H o R_H, R_H)`` at
    ``H = gamma / 2``."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    spec = _pencil(gamma, n, want_vectors=want_vector)
    value = float(spec.values[0])
    vec = None
    flags: dict[str, bool] = {}
    if want_vector:
        vec = _canonical_sign(spec.vectors[:, 0])
    if want_flags:
        flags["below_one"] = value < 1.0 - 1e-9
        flags["above_half"] = value >= 0.5 - 1e-9
        if want_vector:
            flags["perron_nonneg"] = not np.any(
                vec < -PERRON_TOL * np.max(np.abs(vec))
            )
        r = fbm_matrix(gamma / 2.0, n)
        flags["z_matrix_pass"] = (
            _offdiag_max(inverse_times(r, hadamard_power(r, 2))) <= ZMATRIX_TOL
        )
    return CurvatureReport(gamma=float(gamma), n=int(n), kappa=value,
                           minimizing_vector=vec, flags=flags)


def kappa_sequence(gamma: float, n_max: int) -> list[CurvatureReport]:
    """Curvature for every degree 1..n_max, with decrements
    ``kappa(N-1) - kappa(N)`` attached from N = 2 on.

    The per-degree reports skip the minimizing vector and flags; this is the
    fast path behind sweeps and decay fits.
    """
    if n_max < 2:
        raise ValueError("sweeps need n_max >= 2")
    full = fbm_matrix(gamma / 2.0, n_max)
    out: list[CurvatureReport] = []
    prev = None
    for n in range(1, n_max + 1):
        r = np.ascontiguousarray(full[:n, :n])
        spec = gen_eigen_spd(hadamard_power(r, 2), r, want_vectors=False)
        value = float(spec.values[0])
        dec = None if prev is None else prev - value
        out.append(CurvatureReport(gamma=float(gamma), n=n, kappa=value,
                                   decrement=dec))
        prev = value
    return out


def decay_exponent_fit(gamma: float, n_range: tuple[int, int],
                       reports: list[CurvatureReport] | None = None) -> float:
    """Least-squares slope of ``log decrement`` against ``log N`` over the
    given degree range, negated (so larger means faster decay).

    Decrements below 1e-14 are excluded; raises :class:`InsufficientData`
    with fewer than 10 usable points.
    """
    lo, hi = int(n_range[0]), int(n_range[1])
    if lo < 2 or hi <= lo:
        raise ValueError("need a degree interval with 2 <= lo < hi")
    if reports is None:
        reports = kappa_sequence(gamma, hi)
    xs, ys = [], []
    for rep in reports:
        if rep.decrement is None or not lo <= rep.n <= hi:
            continue
        if rep.decrement < 1e-14:
            continue
        xs.append(math.log(rep.n))
        ys.append(math.log(rep.decrement))
    if len(xs) < 10:
        raise InsufficientData(
            f"only {len(xs)} usable decrements in [{lo}, {hi}]"
        )
    slope = np.polyfit(np.asarray(xs), np.asarray(ys), 1)[0]
    return float(-slope)


def peak_quadratic_coeff(epsilon_grid, n: int, side: int = 1) -> float:
    """Quadratic coefficient of the curvature drop near gamma = 1.

    For each epsilon, computes ``(1 - kappa(1 + side*eps, n)) / eps^2``,
    fits ``a + b*eps`` by least squares, and returns the intercept ``a``
    (the eps -> 0 extrapolation).  ``side=-1`` fits the gamma < 1 flank.
    """
    eps = np.asarray(list(epsilon_grid), dtype=float)
    if eps.size < 2:
        raise ValueError("quadratic fit needs at least two epsilon values")
    if np.any(eps <= 0.0) or np.any(eps > 0.15):
        raise ValueError("epsilon grid must lie in (0, 0.15]")
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    ys = np.empty(eps.size)
    for i, e in enumerate(eps):
        k = kappa(1.0 + side * e, n, want_vector=False, want_flags=False).kappa
        ys[i] = (1.0 - k) / (e * e)
    coeffs = np.polyfit(eps, ys, 1)
    return float(coeffs[1])


def default_epsilon_grid() -> np.ndarray:
    return np.arange(1, 7) * 0.02


def zmatrix_scan(h_values, n_values) -> list[ZMatrixRow]:
    """Largest off-diagonal entry of ``R_H^{-1} (R_H o R_H)`` per (H, N).

    ``n_values`` may be a single int N (meaning every degree 2..N) or an
    explicit iterable of degrees.  A row passes when the largest
    off-diagonal entry is at most 1e-10.
    """
    if isinstance(n_values, (int, np.integer)):
        ns = list(range(2, int(n_values) + 1))
    else:
        ns = [int(n) for n in n_values]
    rows: list[ZMatrixRow] = []
    for h in h_values:
        h = float(h)
        n_top = max(ns)
        full = fbm_matrix(h, n_top)
        for n in ns:
            r = np.ascontiguousarray(full[:n, :n])
            worst = _offdiag_max(inverse_times(r, hadamard_power(r, 2)))
            rows.append(ZMatrixRow(h=h, n=n, max_offdiag=worst,
                                   passed=worst <= ZMATRIX_TOL))
    return rows


def perron_check(h: float, n: int) -> PerronReport:
    """Sign structure of the minimizing vector of the (R o R, R) pencil.

    After flipping the global sign so the largest-magnitude entry is
    positive, counts entries below ``-1e-8 * ||v||_inf``.
    """
    r = fbm_matrix(h, n)
    spec = gen_eigen_spd(hadamard_power(r, 2), r, want_vectors=True)
    v = _canonical_sign(spec.vectors[:, 0])
    cut = -PERRON_TOL * float(np.max(np.abs(v)))
    changes = int(np.count_nonzero(v < cut))
    return PerronReport(nonnegative=changes == 0, sign_changes=changes)


def min_entry_bound(h: float, n: int) -> float:
    """Smallest covariance entry ``min_{i <= j} R_H(i, j)`` for ``H <= 1/2``
    (the regime where the weighted-average lower bound 1/2 applies)."""
    if h > 0.5:
        raise ValueError("entry lower bound is only claimed for H <= 1/2")
    r = fbm_matrix(h, n)
    iu = np.triu_indices(n)
    return float(r[iu].min())


def drift_spectrum(omega_sq: float, n: int, x: float) -> DriftSpectrumReport:
    """Curvature spectrum of the drifted pencil at the Cauchy point.

    Solves ``(R o R + (w/2) cos(x) R, R)`` at the given x and checks the
    eigenvalues against ``{2k - 1 + (w/2) cos x}``; the global constant is
    the explicitly solved minimum over a 4096-point x-grid (attained at
    x = pi, which the grid contains exactly).
    """
    if omega_sq < 0.0:
        raise ValueError("drift strength must be >= 0")
    if n < 1:
        raise ValueError("degree must be >= 1")
    r = fbm_matrix(0.5, n)
    r2 = hadamard_power(r, 2)
    shift = 0.5 * omega_sq * math.cos(x)
    spec = gen_eigen_spd(r2 + shift * r, r, want_vectors=False)
    expected = 2.0 * np.arange(1, n + 1) - 1.0 + shift
    dev = float(np.max(np.abs(spec.values - expected)))
    if dev > 1e-9:
        raise ArithmeticError(
            f"drifted spectrum deviates from the scalar shift by {dev:.3e}"
        )
    free = gen_eigen_spd(r2, r, want_vectors=False)
    lam1 = float(free.values[0])
    grid = 2.0 * np.pi * np.arange(DRIFT_X_POINTS) / DRIFT_X_POINTS
    shifts = 0.5 * omega_sq * np.cos(grid)
    # exact pencil identity: adding c*B shifts every eigenvalue by c
    x_star = float(grid[int(np.argmin(lam1 + shifts))])
    spec_star = gen_eigen_spd(
        r2 + 0.5 * omega_sq * math.cos(x_star) * r, r, want_vectors=False
    )
    return DriftSpectrumReport(
        omega_sq=float(omega_sq), n=int(n), x=float(x),
        eigenvalues=spec.values, global_kappa=float(spec_star.values[0]),
    )


def single_mode_kappa(gamma: float) -> float:
    """Curvature of the single mode ``f = cos x``: ``(1 + a^2)/(1 + a)``
    for ``gamma <= 1`` and ``1 + a`` for ``gamma > 1``, ``a = alpha``."""
    a = alpha_coeff(gamma)
    if gamma <= 1.0:
        return (1.0 + a * a) / (1.0 + a)
    return 1.0 + a


def landscape(gamma_grid, n: int) -> list[LandscapeRow]:
    """Pencil curvature and single-mode curvature per gamma (plot-ready)."""
    rows = []
    for g in gamma_grid:
        g = float(g)
        k = kappa(g, n, want_vector=False, want_flags=False).kappa
        rows.append(LandscapeRow(gamma=g, n=int(n), kappa=k,
                                 kappa_single_mode=single_mode_kappa(g)))
    return rows


def contraction_profile(n: int) -> ContractionProfile:
    """Mode-by-mode contraction data at the Cauchy point.

    Rates are the odd integers ``{2k - 1}``; the geometric mean goes through
    log space, its Stirling ratio divides by ``2n/e``, and the volume-ratio
    log is ``sum(log(2k - 1)) / 2``.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    rates = 2.0 * np.arange(1, n + 1) - 1.0
    logs = np.log(rates)
    geometric_mean = float(np.exp(np.mean(logs)))
    stirling_ratio = geometric_mean / (2.0 * n / math.e)
    volume_ratio_log = 0.5 * float(np.sum(logs))
    return ContractionProfile(rates=rates, geometric_mean=geometric_mean,
                              stirling_ratio=stirling_ratio,
                              volume_ratio_log=volume_ratio_log)


def log_double_factorial_odd(n: int) -> float:
    """``log((2n-1)!!)`` via the gamma function: an independent route for
    checking log-space products (exact integers are used up to n = 15)."""
    if n <= 15:
        return math.log(float(double_factorial(2 * n - 1)))
    return n * math.log(2.0) + math.lgamma(n + 0.5) - 0.5 * math.log(math.pi)


# ---------------------------------------------------------------------------
# Real trigonometric polynomials: mixed-sign pencil and constrained minimum
# ---------------------------------------------------------------------------

def _real_pencil(gamma: float, n: int):
    freqs = list(range(-n, 0)) + list(range(1, n + 1))
    k1 = cdc_matrix(gamma, freqs)
    return hadamard_power(k1, 2), k1


def _ratio_forms(k1: np.ndarray, k2: np.ndarray, n: int, x: float):
    """Real quadratic forms (A, B) of the pointwise ratio in cosine/sine
    coordinates theta = (c_1..c_n, s_1..s_n) at the point x, given the
    kernel matrices on the mixed frequency set {-n..-1, 1..n}."""
    freqs = list(range(-n, 0)) + list(range(1, n + 1))
    m = np.zeros((2 * n, 2 * n), dtype=complex)
    for j, f in enumerate(freqs):
        col = abs(f) - 1
        phase = np.exp(1j * f * x)
        m[j, col] = 0.5 * phase
        m[j, n + col] = (-0.5j if f > 0 else 0.5j) * phase
    b = np.real(m.conj().T @ k1 @ m)
    a = np.real(m.conj().T @ k2 @ m)
    return 0.5 * (a + a.T), 0.5 * (b + b.T)


def _rayleigh(a, b, theta):
    return float(theta @ (a @ theta)) / float(theta @ (b @ theta))


def _descend(a, b, theta, max_iter=400, tol=1e-8):
    """Projected gradient descent on the Rayleigh ratio theta^T A theta /
    theta^T B theta over the unit sphere, with backtracking steps."""
    theta = theta / np.linalg.norm(theta)
    rho = _rayleigh(a, b, theta)
    step = 0.1
    for _ in range(max_iter):
        bt = b @ theta
        at = a @ theta
        den = float(theta @ bt)
        grad = 2.0 * (at - rho * bt) / den
        gn = float(np.linalg.norm(grad))
        if gn < 1e-14:
            break
        gain = 0.0
        while step > 1e-14:
            cand = theta - step * grad
            cand /= np.linalg.norm(cand)
            rho_c = _rayleigh(a, b, cand)
            if rho_c < rho:
                gain = rho - rho_c
                theta, rho = cand, rho_c
                step *= 1.5
                break
            step *= 0.5
        if gain == 0.0:
            break
        if gain < tol * max(abs(rho), 1.0) and gn < 1e-6:
            break
    return theta, rho


def real_curvature(gamma: float, n: int, restarts: int = 20,
                   x_grid_size: int = 64, seed: int = DEFAULT_SEED) -> RealCurvature:
    """Curvature on real trigonometric polynomials of degree n, two ways.

    ``pencil_kappa`` is the smallest eigenvalue of the deflated kernel
    pencil on the mixed frequency set {-n..-1, 1..n}.  ``constrained_kappa``
    minimizes the pointwise ratio over cosine/sine coefficients and an
    x-grid by projected gradient descent with random restarts; restarts
    disagreeing by more than 1e-3 raise :class:`OptimizationStall`.

    No ordering between the two values is asserted for gamma != 1.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    a_full, b_full = _real_pencil(gamma, n)
    pencil = gen_eigen_psd(a_full, b_full, want_vectors=False)
    pencil_kappa = float(pencil.values[0])

    xs = 2.0 * np.pi * np.arange(x_grid_size) / x_grid_size
    forms = [_ratio_forms(b_full, a_full, n, float(x)) for x in xs]
    results = []
    for r in range(restarts):
        rng = np.random.Generator(
            np.random.Philox(key=np.array([seed, r], dtype=np.uint64))
        )
        theta = rng.standard_normal(2 * n)
        best = math.inf
        stale = 0
        for _ in range(30):
            vals = [_rayleigh(a, b, theta) for a, b in forms]
            ix = int(np.argmin(vals))
            theta, rho = _descend(forms[ix][0], forms[ix][1], theta)
            if rho < best - 1e-10:
                best = rho
                stale = 0
            else:
                stale += 1
                if stale >= 2:
                    break
        results.append(best)
    spread = max(results) - min(results)
    if spread > 1e-3:
        raise OptimizationStall(
            f"restart minima spread {spread:.3e} exceeds 1e-3"
        )
    return RealCurvature(pencil_kappa=pencil_kappa,
                         constrained_kappa=float(min(results)),
                         retained=int(pencil.retained))
