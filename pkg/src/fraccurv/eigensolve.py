"""Symmetric and symmetric-definite generalized eigensolvers.

The production path is Householder tridiagonalization followed by
implicit-shift QL iteration; a cyclic Jacobi solver is kept as an
independent cross-check for very small matrices.  Generalized problems
``A v = lambda B v`` reduce to standard form by Cholesky congruence when
``B`` is positive definite, and by eigenvalue deflation when it is merely
positive semidefinite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _numeric
from .matrices import NotPositiveDefinite, cholesky, symmetrize

DEFLATION_TOL = 1e-10

_JACOBI_MAX_N = 8
_JACOBI_MAX_SWEEPS = 100


class ConvergenceFailure(ArithmeticError):
    """QL iteration exceeded its sweep budget."""

    def __init__(self, iterations: int):
        self.iterations = iterations
        super().__init__(f"QL iteration failed to converge after {iterations} sweeps")


class DegeneratePencil(ArithmeticError):
    """No eigendirection of B survived deflation."""


@dataclass
class Spectrum:
    """Result of a (generalized) symmetric eigensolve.

    ``values`` is ascending.  When present, column ``k`` of ``vectors`` is
    the unit-norm eigenvector for ``values[k]`` and ``residual`` is the
    largest ``||A v - lambda B v||`` over returned pairs (``B = I`` for
    standard problems); without vectors ``residual`` is NaN.  ``retained``
    is the post-deflation dimension for semidefinite pencils.
    """

    values: np.ndarray
    vectors: np.ndarray | None
    residual: float
    retained: int | None = None


def _pair_residual(a: np.ndarray, b: np.ndarray | None, values, vectors) -> float:
    worst = 0.0
    for k in range(values.shape[0]):
        v = vectors[:, k]
        r = a @ v - values[k] * (v if b is None else b @ v)
        worst = max(worst, float(np.linalg.norm(r)))
    return worst


def sym_eigen(a: np.ndarray, want_vectors: bool = True) -> Spectrum:
    """Full spectrum of a symmetric matrix, ascending.

    Householder reduction then implicit-shift QL; deterministic and
    bit-reproducible.  Raises :class:`ConvergenceFailure` if the QL sweep
    count exceeds ``50 * n``.
    """
    work = symmetrize(a)
    d, e = _numeric.householder_tridiag(work, want_vectors)
    zt = np.ascontiguousarray(work.T) if want_vectors else np.zeros((1, 1))
    status = _numeric.ql_implicit(d, e, zt, want_vectors)
    if status < 0:
        raise ConvergenceFailure(-int(status) - 1)
    order = np.argsort(d, kind="stable")
    values = d[order]
    if not want_vectors:
        return Spectrum(values=values, vectors=None, residual=float("nan"))
    vectors = np.ascontiguousarray(zt[order].T)
    vectors /= np.linalg.norm(vectors, axis=0)
    residual = _pair_residual(symmetrize(a), None, values, vectors)
    return Spectrum(values=values, vectors=vectors, residual=residual)


def sym_eigen_jacobi(a: np.ndarray) -> Spectrum:
    """Cyclic-Jacobi spectrum for ``n <= 8``: the independent cross-check
    path for the QL solver."""
    work = symmetrize(a)
    n = work.shape[0]
    if n > _JACOBI_MAX_N:
        raise ValueError(f"Jacobi cross-check is limited to n <= {_JACOBI_MAX_N}")
    d, v, sweeps = _numeric.jacobi_rotate(work, _JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceFailure(_JACOBI_MAX_SWEEPS)
    order = np.argsort(d, kind="stable")
    values = d[order]
    vectors = np.ascontiguousarray(v[:, order])
    vectors /= np.linalg.norm(vectors, axis=0)
    residual = _pair_residual(symmetrize(a), None, values, vectors)
    return Spectrum(values=values, vectors=vectors, residual=residual)


def gen_eigen_spd(a: np.ndarray, b: np.ndarray, want_vectors: bool = True) -> Spectrum:
    """Generalized problem ``A v = lambda B v`` with ``B`` positive definite.

    Reduces by the Cholesky congruence ``B = L L^T`` to a standard solve on
    ``L^{-1} A L^{-T}`` and back-transforms the vectors; the eigenvalues are
    those of ``B^{-1} A``.  Propagates :class:`NotPositiveDefinite` and
    :class:`ConvergenceFailure`.
    """
    a_sym = symmetrize(a)
    lo = cholesky(symmetrize(b))
    # C = L^{-1} A L^{-T}: two row-oriented triangular solves.
    t1 = _numeric.solve_lower_rows(lo, a_sym)  # = A L^{-T}
    c = _numeric.solve_lower_rows(lo, np.ascontiguousarray(t1.T))
    spec = sym_eigen(symmetrize(c), want_vectors)
    if not want_vectors:
        return spec
    up = np.ascontiguousarray(lo.T)
    vt = _numeric.solve_upper_rows(up, np.ascontiguousarray(spec.vectors.T))
    vectors = np.ascontiguousarray(vt.T)
    vectors /= np.linalg.norm(vectors, axis=0)
    residual = _pair_residual(a_sym, symmetrize(b), spec.values, vectors)
    return Spectrum(values=spec.values, vectors=vectors, residual=residual)


def gen_eigen_psd(
    a: np.ndarray,
    b: np.ndarray,
    deflation_tol: float = DEFLATION_TOL,
    want_vectors: bool = True,
) -> Spectrum:
    """Generalized problem with ``B`` merely positive semidefinite.

    Eigendirections of ``B`` at or below ``deflation_tol * lambda_max(B)``
    are discarded and the pencil is solved on the retained subspace;
    ``retained`` reports its dimension.  Raises :class:`DegeneratePencil`
    when nothing survives.
    """
    a_sym = symmetrize(a)
    b_spec = sym_eigen(symmetrize(b), want_vectors=True)
    lam_max = float(b_spec.values[-1])
    if lam_max <= 0.0:
        raise DegeneratePencil("B has no positive eigendirection")
    keep = b_spec.values > deflation_tol * lam_max
    r = int(np.count_nonzero(keep))
    if r == 0:
        raise DegeneratePencil("no eigendirection of B survived deflation")
    basis = b_spec.vectors[:, keep] / np.sqrt(b_spec.values[keep])
    a_sub = symmetrize(basis.T @ a_sym @ basis)
    sub = sym_eigen(a_sub, want_vectors)
    if not want_vectors:
        return Spectrum(values=sub.values, vectors=None, residual=float("nan"), retained=r)
    vectors = basis @ sub.vectors
    vectors /= np.linalg.norm(vectors, axis=0)
    residual = _pair_residual(a_sym, symmetrize(b), sub.values, vectors)
    return Spectrum(values=sub.values, vectors=vectors, residual=residual, retained=r)


__all__ = [
    "ConvergenceFailure",
    "DegeneratePencil",
    "NotPositiveDefinite",
    "Spectrum",
    "sym_eigen",
    "sym_eigen_jacobi",
    "gen_eigen_spd",
    "gen_eigen_psd",
    "DEFLATION_TOL",
]
