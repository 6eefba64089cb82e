"""Construction and factorization of fBM covariance matrices, Hadamard
powers, and the exact integer curvature matrix at the Brownian point
``H = 1/2``.

Matrices are plain float64 numpy arrays, exactly symmetric by construction.
Dense storage throughout: the sizes in scope (a few hundred) never justify
banded or sparse paths.
"""

from __future__ import annotations

import numpy as np

from . import _numeric
from .kernels import abs_pow, cdc_kernel

# Cholesky pivots at or below this fraction of the largest diagonal entry
# are treated as loss of positive definiteness.
CHOLESKY_PIVOT_REL = 1e-12

# 64-bit-integer cap for the exact curvature matrix (entries stay O(n^2)).
_EXACT_N_CAP = 10**6


class NotPositiveDefinite(ArithmeticError):
    """Cholesky pivot fell below the deflation threshold."""

    def __init__(self, pivot_index: int, pivot_value: float):
        self.pivot_index = pivot_index
        self.pivot_value = pivot_value
        super().__init__(
            f"pivot {pivot_index} is {pivot_value:.3e}; matrix is not "
            "positive definite to working precision"
        )


def symmetrize(a: np.ndarray) -> np.ndarray:
    """Exactly symmetric copy ``(a + a.T) / 2`` as contiguous float64."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    return np.ascontiguousarray(0.5 * (a + a.T))


def fbm_matrix(hurst: float, n: int) -> np.ndarray:
    """fBM covariance matrix ``R_H`` on the frequency set ``{1, ..., n}``.

    At ``hurst = 1/2`` the entries are ``min(i, j)``, built in integer
    arithmetic and converted, so downstream factorizations stay exact.
    """
    hurst = float(hurst)
    if not 0.0 < hurst < 1.0:
        raise ValueError(f"Hurst parameter must lie in (0, 1), got {hurst}")
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    idx = np.arange(1, n + 1)
    if hurst == 0.5:
        return np.minimum.outer(idx, idx).astype(float)
    powers = np.empty(n + 1)
    g = 2.0 * hurst
    for k in range(n + 1):
        powers[k] = abs_pow(float(k), g)
    diag = powers[idx]
    gaps = powers[np.abs(idx[:, None] - idx[None, :])]
    return 0.5 * (diag[:, None] + diag[None, :] - gaps)


def cdc_matrix(gamma: float, freqs) -> np.ndarray:
    """Carre-du-champ kernel matrix on an arbitrary integer frequency set."""
    freqs = list(freqs)
    n = len(freqs)
    out = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            v = cdc_kernel(gamma, freqs[i], freqs[j])
            out[i, j] = v
            out[j, i] = v
    return out


def hadamard_power(a: np.ndarray, k: int) -> np.ndarray:
    """Entrywise ``k``-th power, ``k >= 1``."""
    if k < 1 or int(k) != k:
        raise ValueError("Hadamard exponent must be a positive integer")
    return np.asarray(a, dtype=float) ** int(k)


def cholesky(a: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor ``L`` with ``L @ L.T == a``.

    Raises :class:`NotPositiveDefinite` when a pivot falls at or below
    ``CHOLESKY_PIVOT_REL * max(diag(a))``.
    """
    a = np.ascontiguousarray(a, dtype=float)
    piv_idx, piv_val, lo = _numeric.cholesky_lower(a, CHOLESKY_PIVOT_REL)
    if piv_idx >= 0:
        raise NotPositiveDefinite(int(piv_idx), float(piv_val))
    return lo


def log_det(a: np.ndarray) -> float:
    """``log det a`` for positive definite ``a``, via the Cholesky diagonal."""
    lo = cholesky(a)
    return 2.0 * float(np.sum(np.log(np.diag(lo))))


def exact_curvature_matrix(n: int) -> np.ndarray:
    """Integer curvature matrix at ``H = 1/2``: upper triangular with
    diagonal ``{1, 3, ..., 2n-1}`` and every strictly-upper entry ``-2``.

    Equals ``R^{-1} (R o R)`` for the Brownian covariance ``R = min(i, j)``,
    computed exactly in int64.
    """
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    if n > _EXACT_N_CAP:
        raise ValueError(f"exact integer path is capped at n = {_EXACT_N_CAP}")
    m = np.zeros((n, n), dtype=np.int64)
    iu = np.triu_indices(n, k=1)
    m[iu] = -2
    np.fill_diagonal(m, 2 * np.arange(1, n + 1, dtype=np.int64) - 1)
    return m


def solve_lower(lo: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``lo @ X = b`` for lower-triangular ``lo``; ``b`` 1-D or 2-D."""
    b = np.asarray(b, dtype=float)
    single = b.ndim == 1
    bt = np.ascontiguousarray(b.reshape(1, -1) if single else b.T)
    xt = _numeric.solve_lower_rows(np.ascontiguousarray(lo), bt)
    return xt[0] if single else xt.T.copy()


def solve_upper(up: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``up @ X = b`` for upper-triangular ``up``; ``b`` 1-D or 2-D."""
    b = np.asarray(b, dtype=float)
    single = b.ndim == 1
    bt = np.ascontiguousarray(b.reshape(1, -1) if single else b.T)
    xt = _numeric.solve_upper_rows(np.ascontiguousarray(up), bt)
    return xt[0] if single else xt.T.copy()


def inverse_times(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a^{-1} @ b`` for positive definite ``a``, via the Cholesky factor.

    The result is generally non-symmetric.  Propagates
    :class:`NotPositiveDefinite`.
    """
    lo = cholesky(a)
    y = solve_lower(lo, np.asarray(b, dtype=float))
    return solve_upper(np.ascontiguousarray(lo.T), y)


def double_factorial(m: int) -> int:
    """Exact ``m!! = m (m-2) (m-4) ...`` for ``m >= -1`` (empty product is 1)."""
    if m < -1:
        raise ValueError("double factorial requires m >= -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def dump_matrix_csv(a: np.ndarray, stream) -> None:
    """Write ``a`` as CSV rows: '.' decimal point, 17 significant digits,
    LF line endings, no header."""
    a = np.asarray(a)
    for row in a:
        stream.write(",".join(f"{v:.17g}" for v in row))
        stream.write("\n")
