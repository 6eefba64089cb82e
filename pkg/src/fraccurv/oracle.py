"""Brute-force carre-du-champ calculus on trigonometric polynomials.

This is the first-principles oracle: every bilinear object is assembled as
a double sum over coefficient pairs weighted by the scalar kernel, with no
matrix shortcuts, so it independently validates the covariance-matrix route
pointwise in x.

Conventions: the carre du champ is sesquilinear (conjugate-linear in its
second argument), and iterated forms are Hermitian-symmetrized, i.e. the
generator term ``-2 G(f, Lf)`` is assembled as ``-G(f, Lf) - G(Lf, f)``.
For real-valued polynomials the two agree; for complex ones only the
symmetrized form satisfies the Hadamard-square identity coefficientwise.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

from .kernels import abs_pow, alpha_coeff, beta_coeff, cdc_kernel

# coefficients below this fraction of the largest magnitude are pruned
PRUNE_REL = 1e-15


class TrigPoly:
    """Finitely supported map from integer frequencies to complex
    coefficients; immutable after construction.

    Zero coefficients are absent from the map, and every construction prunes
    numerical dust below ``PRUNE_REL`` times the largest magnitude.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]] = ()):
        acc: dict[int, complex] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for k, v in items:
            k = int(k)
            v = complex(v)
            if v != 0:
                acc[k] = acc.get(k, 0j) + v
        if acc:
            top = max(abs(v) for v in acc.values())
            cut = PRUNE_REL * top
            acc = {k: v for k, v in acc.items() if abs(v) > cut}
        object.__setattr__(self, "_c", acc)

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[int, float, float]]) -> "TrigPoly":
        """Build from ``(frequency, re, im)`` triples (the CLI literal form)."""
        return cls((int(k), complex(re, im)) for k, re, im in triples)

    def to_triples(self) -> list[tuple[int, float, float]]:
        return [(k, v.real, v.imag) for k, v in sorted(self._c.items())]

    def coeff(self, k: int) -> complex:
        return self._c.get(int(k), 0j)

    def items(self):
        return self._c.items()

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._c))

    def max_abs(self) -> float:
        return max((abs(v) for v in self._c.values()), default=0.0)

    def is_real(self, tol: float = 1e-12) -> bool:
        """True when ``coeff(-n) == conj(coeff(n))`` within ``tol`` relative
        to the largest coefficient (a real-valued polynomial)."""
        cut = tol * max(self.max_abs(), 1e-300)
        freqs = {abs(k) for k in self._c}
        for n in freqs:
            if abs(self.coeff(-n) - self.coeff(n).conjugate()) > cut:
                return False
        return True

    def evaluate(self, x):
        """Pointwise value ``sum_k c_k e^{ikx}``; x may be scalar or array."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for k, v in self._c.items():
            out += v * np.exp(1j * k * x)
        return complex(out) if out.ndim == 0 else out

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        acc = dict(self._c)
        for k, v in other._c.items():
            acc[k] = acc.get(k, 0j) + v
        return TrigPoly(acc)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "TrigPoly":
        s = complex(scalar)
        return TrigPoly({k: s * v for k, v in self._c.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "TrigPoly":
        return (-1.0) * self

    def __len__(self) -> int:
        return len(self._c)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v:.6g}" for k, v in sorted(self._c.items()))
        return f"TrigPoly({{{body}}})"


def coeff_distance(p: TrigPoly, q: TrigPoly) -> float:
    """Largest coefficientwise deviation between two polynomials."""
    worst = 0.0
    for k in set(p.support) | set(q.support):
        worst = max(worst, abs(p.coeff(k) - q.coeff(k)))
    return worst


def apply_generator(gamma: float, f: TrigPoly) -> TrigPoly:
    """Diagonal action of the stable generator: coefficient at ``n`` is
    multiplied by ``-|n|^gamma`` (constants are annihilated)."""
    return TrigPoly({k: -abs_pow(k, gamma) * v for k, v in f.items()})


def carre_du_champ(gamma: float, f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Sesquilinear carre du champ: the pair ``(n, m)`` contributes
    ``a_n conj(b_m) K(n, m)`` at frequency ``n - m``."""
    acc: dict[int, complex] = {}
    for n, a in f.items():
        for m, b in g.items():
            w = cdc_kernel(gamma, n, m)
            if w != 0.0:
                k = n - m
                acc[k] = acc.get(k, 0j) + a * b.conjugate() * w
    return TrigPoly(acc)


def gamma2_direct(gamma: float, f: TrigPoly) -> TrigPoly:
    """Iterated carre du champ assembled from its definition:
    ``(L G(f,f) - G(f, Lf) - G(Lf, f)) / 2``."""
    gff = carre_du_champ(gamma, f, f)
    lf = apply_generator(gamma, f)
    return 0.5 * (
        apply_generator(gamma, gff)
        - carre_du_champ(gamma, f, lf)
        - carre_du_champ(gamma, lf, f)
    )


def gamma2_hadamard(gamma: float, f: TrigPoly) -> TrigPoly:
    """Iterated carre du champ via the squared kernel: the pair ``(n, m)``
    contributes ``a_n conj(a_m) K(n, m)^2`` at frequency ``n - m``."""
    acc: dict[int, complex] = {}
    for n, a in f.items():
        for m, b in f.items():
            w = cdc_kernel(gamma, n, m)
            if w != 0.0:
                k = n - m
                acc[k] = acc.get(k, 0j) + a * b.conjugate() * (w * w)
    return TrigPoly(acc)


def drift_gradient(omega_sq: float, f: TrigPoly) -> TrigPoly:
    """``b . grad f`` for the drift field ``b(x) = -omega_sq * sin x``:
    frequency ``m`` shifts to ``m -+ 1`` with weight ``+-(omega_sq*m/2)``."""
    if omega_sq < 0.0:
        raise ValueError("drift strength must be >= 0")
    acc: dict[int, complex] = {}
    for m, c in f.items():
        w = 0.5 * omega_sq * m
        if w != 0.0:
            acc[m - 1] = acc.get(m - 1, 0j) + w * c
            acc[m + 1] = acc.get(m + 1, 0j) - w * c
    return TrigPoly(acc)


def drift_correction(gamma: float, omega_sq: float, f: TrigPoly) -> TrigPoly:
    """Hermitianized drift correction
    ``(b.grad G(f,f))/2 - (G(f, b.grad f) + G(b.grad f, f))/2``."""
    gff = carre_du_champ(gamma, f, f)
    bf = drift_gradient(omega_sq, f)
    return 0.5 * drift_gradient(omega_sq, gff) - 0.5 * (
        carre_du_champ(gamma, f, bf) + carre_du_champ(gamma, bf, f)
    )


def gamma2_drift(gamma: float, omega_sq: float, f: TrigPoly) -> TrigPoly:
    """Iterated carre du champ of the drifted generator: the free form plus
    the Hermitianized drift correction."""
    return gamma2_direct(gamma, f) + drift_correction(gamma, omega_sq, f)


def drift_correction_matrix(omega_sq: float, n: int, x: float):
    """Phase-stripped, Hermitianized drift-correction matrix at the Cauchy
    point, built entrywise from basis pairs ``(e^{i nu x}, e^{i mu x})``.

    Returns ``(d0, max_dev)`` where ``max_dev`` is the largest entrywise
    deviation from ``(omega_sq/2) cos(x) min(nu, mu)``.
    """
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    basis = [TrigPoly({k: 1.0 + 0j}) for k in range(1, n + 1)]
    raw = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            gij = carre_du_champ(1.0, basis[i], basis[j])
            t = 0.5 * drift_gradient(omega_sq, gij) - carre_du_champ(
                1.0, basis[i], drift_gradient(omega_sq, basis[j])
            )
            phase = np.exp(-1j * ((i + 1) - (j + 1)) * x)
            raw[i, j] = t.evaluate(x) * phase
    d0 = 0.5 * (raw + raw.conj().T)
    expected = 0.5 * omega_sq * math.cos(x) * np.minimum.outer(
        np.arange(1, n + 1), np.arange(1, n + 1)
    )
    max_dev = float(np.max(np.abs(d0 - expected)))
    return d0, max_dev


def single_mode_ratio(gamma: float, n: int, x: float) -> float:
    """Closed-form pointwise curvature ratio for ``f = cos(n x)``:
    ``n^gamma (1 + a^2 cos 2nx) / (1 + a cos 2nx)`` with ``a = alpha``."""
    if n < 1:
        raise ValueError("mode number must be >= 1")
    a = alpha_coeff(gamma)
    c = math.cos(2.0 * n * x)
    return abs_pow(n, gamma) * (1.0 + a * a * c) / (1.0 + a * c)


def drift_single_mode_ratio(gamma: float, omega_sq: float, x: float) -> float:
    """Closed-form pointwise ratio for ``f = cos x`` under the cosine drift:
    ``(1 + a^2 cos 2x + (w/2)(cos x + b cos 3x)) / (1 + a cos 2x)``."""
    a = alpha_coeff(gamma)
    b = beta_coeff(gamma)
    num = (
        1.0
        + a * a * math.cos(2.0 * x)
        + 0.5 * omega_sq * (math.cos(x) + b * math.cos(3.0 * x))
    )
    return num / (1.0 + a * math.cos(2.0 * x))


def random_poly(rng: np.random.Generator, max_freq: int = 8, max_terms: int = 8,
                real: bool = False, positive_only: bool = False) -> TrigPoly:
    """Random polynomial for fuzz suites; deterministic given the generator.

    ``real`` forces conjugate symmetry; ``positive_only`` restricts support
    to strictly positive frequencies.
    """
    lo = 1 if (real or positive_only) else -max_freq
    pool = np.arange(lo, max_freq + 1)
    pool = pool[pool != 0]
    count = int(rng.integers(1, max_terms + 1))
    count = min(count, pool.size)
    freqs = rng.choice(pool, size=count, replace=False)
    coeffs: dict[int, complex] = {}
    for k in freqs:
        v = complex(rng.standard_normal(), rng.standard_normal())
        coeffs[int(k)] = coeffs.get(int(k), 0j) + v
        if real:
            coeffs[-int(k)] = coeffs.get(-int(k), 0j) + v.conjugate()
    return TrigPoly(coeffs)


def dump_pointfield_csv(f: TrigPoly, xs, stream) -> None:
    """Write pointwise values as ``x,re,im`` CSV rows (header included)."""
    stream.write("x,re,im\n")
    for x in xs:
        v = f.evaluate(float(x))
        stream.write(f"{float(x):.17g},{v.real:.17g},{v.imag:.17g}\n")
