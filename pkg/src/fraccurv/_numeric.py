"""Hot numeric kernels: Householder tridiagonalization, implicit-shift QL,
cyclic Jacobi, Cholesky factorization and triangular solves.

Plain-loop implementations, compiled with numba when the numba backend is
active (see :mod:`fraccurv._backend`).  Everything here is deterministic:
no randomness, no threading, fixed reduction order, so repeated calls on
identical inputs return bit-identical arrays.
"""

import math

import numpy as np

from ._backend import maybe_jit

_EPS = 2.220446049250313e-16


@maybe_jit
def householder_tridiag(z, want_q):
    """Reduce the symmetric matrix ``z`` to tridiagonal form in place.

    Returns ``(d, e)`` with the diagonal in ``d`` and the subdiagonal in
    ``e[1:]`` (``e[0]`` is zero).  When ``want_q`` is true, ``z`` is
    overwritten with the orthogonal transform ``Q`` such that
    ``T = Q^T A Q``; otherwise its contents are scratch on exit.
    """
    n = z.shape[0]
    d = np.zeros(n)
    e = np.zeros(n)
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        scale = 0.0
        if l > 0:
            for k in range(i):
                scale += abs(z[i, k])
            if scale == 0.0:
                e[i] = z[i, l]
            else:
                for k in range(i):
                    z[i, k] /= scale
                    h += z[i, k] * z[i, k]
                f = z[i, l]
                if f >= 0.0:
                    g = -math.sqrt(h)
                else:
                    g = math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                z[i, l] = f - g
                f = 0.0
                for j in range(i):
                    if want_q:
                        z[j, i] = z[i, j] / h
                    g = 0.0
                    for k in range(j + 1):
                        g += z[j, k] * z[i, k]
                    for k in range(j + 1, i):
                        g += z[k, j] * z[i, k]
                    e[j] = g / h
                    f += e[j] * z[i, j]
                hh = f / (h + h)
                for j in range(i):
                    f = z[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(j + 1):
                        z[j, k] -= f * e[k] + g * z[i, k]
        else:
            e[i] = z[i, l]
        d[i] = h
    d[0] = 0.0
    e[0] = 0.0
    if want_q:
        for i in range(n):
            if d[i] != 0.0:
                for j in range(i):
                    g = 0.0
                    for k in range(i):
                        g += z[i, k] * z[k, j]
                    for k in range(i):
                        z[k, j] -= g * z[k, i]
            d[i] = z[i, i]
            z[i, i] = 1.0
            for j in range(i):
                z[j, i] = 0.0
                z[i, j] = 0.0
    else:
        for i in range(n):
            d[i] = z[i, i]
    return d, e


@maybe_jit
def ql_implicit(d, e, zt, want_q):
    """Implicit-shift QL iteration on the tridiagonal pair ``(d, e)``.

    ``e[0]`` is unused on entry.  When ``want_q``, the rows of ``zt`` hold
    the current basis vectors (the transpose of the accumulated transform)
    and are rotated along; on success row ``k`` of ``zt`` is the eigenvector
    for ``d[k]``.  Returns the total number of QL iterations used, or
    ``-1 - total`` if the count exceeded ``50 * n``.
    """
    n = d.shape[0]
    max_total = 50 * n
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    total = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            total += 1
            if total > max_total:
                return -1 - total
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            if g >= 0.0:
                g = d[m] - d[l] + e[l] / (g + r)
            else:
                g = d[m] - d[l] + e[l] / (g - r)
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want_q:
                    for k in range(n):
                        fk = zt[i + 1, k]
                        zt[i + 1, k] = s * zt[i, k] + c * fk
                        zt[i, k] = c * zt[i, k] - s * fk
                i -= 1
            if r == 0.0 and i >= l:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return total


@maybe_jit
def jacobi_rotate(a, max_sweeps):
    """Cyclic Jacobi diagonalization of the symmetric matrix ``a`` (small n).

    ``a`` is destroyed.  Returns ``(d, v, sweeps)`` with unsorted eigenvalues
    ``d``, eigenvectors in the columns of ``v``, and the number of sweeps
    used (``-1`` if the off-diagonal mass failed to vanish in time).
    """
    n = a.shape[0]
    v = np.zeros((n, n))
    for i in range(n):
        v[i, i] = 1.0
    d = np.zeros(n)
    sweeps_used = -1
    for sweep in range(max_sweeps):
        off = 0.0
        norm = 0.0
        for p in range(n):
            for q in range(n):
                norm += a[p, q] * a[p, q]
                if q > p:
                    off += a[p, q] * a[p, q]
        if off <= (_EPS * _EPS) * norm or off == 0.0:
            sweeps_used = sweep
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for r in range(n):
                    if r != p and r != q:
                        arp = a[r, p]
                        arq = a[r, q]
                        a[r, p] = arp - s * (arq + tau * arp)
                        a[p, r] = a[r, p]
                        a[r, q] = arq + s * (arp - tau * arq)
                        a[q, r] = a[r, q]
                for r in range(n):
                    vrp = v[r, p]
                    vrq = v[r, q]
                    v[r, p] = vrp - s * (vrq + tau * vrp)
                    v[r, q] = vrq + s * (vrp - tau * vrq)
    for i in range(n):
        d[i] = a[i, i]
    return d, v, sweeps_used


@maybe_jit
def cholesky_lower(a, rel_threshold):
    """Lower Cholesky factor of the symmetric positive definite ``a``.

    Only the lower triangle of ``a`` is read.  Returns
    ``(pivot_index, pivot_value, L)``; ``pivot_index`` is ``-1`` on success,
    otherwise the index whose squared pivot fell at or below
    ``rel_threshold * max(diag(a))``.
    """
    n = a.shape[0]
    lo = np.zeros((n, n))
    maxdiag = 0.0
    for i in range(n):
        if a[i, i] > maxdiag:
            maxdiag = a[i, i]
    thresh = rel_threshold * maxdiag
    for j in range(n):
        s = a[j, j]
        for k in range(j):
            s -= lo[j, k] * lo[j, k]
        if s <= thresh:
            return j, s, lo
        piv = math.sqrt(s)
        lo[j, j] = piv
        for i in range(j + 1, n):
            t = a[i, j]
            for k in range(j):
                t -= lo[i, k] * lo[j, k]
            lo[i, j] = t / piv
    return -1, 0.0, lo


@maybe_jit
def solve_lower_rows(lo, bt):
    """Solve ``lo @ x_j = b_j`` for every row ``b_j`` of ``bt``.

    ``lo`` is lower triangular.  Row ``j`` of the result solves against row
    ``j`` of ``bt``; in matrix form the result is ``bt @ lo^{-T}``.
    """
    m = bt.shape[0]
    n = bt.shape[1]
    xt = bt.copy()
    for j in range(m):
        for i in range(n):
            t = xt[j, i]
            for k in range(i):
                t -= lo[i, k] * xt[j, k]
            xt[j, i] = t / lo[i, i]
    return xt


@maybe_jit
def solve_upper_rows(up, bt):
    """Solve ``up @ x_j = b_j`` for every row ``b_j`` of ``bt``.

    ``up`` is upper triangular (C-contiguous).  In matrix form the result is
    ``bt @ up^{-T}``.
    """
    m = bt.shape[0]
    n = bt.shape[1]
    xt = bt.copy()
    for j in range(m):
        for i in range(n - 1, -1, -1):
            t = xt[j, i]
            for k in range(i + 1, n):
                t -= up[i, k] * xt[j, k]
            xt[j, i] = t / up[i, i]
    return xt
