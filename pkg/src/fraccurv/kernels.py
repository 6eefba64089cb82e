"""Closed-form scalar kernels of the stable carre du champ and their
fractional-Brownian covariance counterparts.

Everything here is a pure function of its arguments; all powers ``|x|**g``
go through :func:`abs_pow` so the ``x = 0`` and ``g = 1`` cases behave
identically throughout the package (exact zero, exact linearity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

SignClass = Literal["negative", "zero", "positive"]

# relative threshold distinguishing numerical zeros of the cross-sign kernel
_CROSS_ZERO_REL = 1e-14


def abs_pow(x: float, g: float) -> float:
    """``|x|**g`` computed as ``exp(g*log|x|)``, with ``|0|**g = 0``.

    ``g == 1`` short-circuits to ``|x|`` so that the linear case stays
    bit-exact on integer inputs.
    """
    x = abs(x)
    if x == 0.0:
        return 0.0
    if g == 1.0:
        return x
    return math.exp(g * math.log(x))


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 < gamma < 2.0:
        raise ValueError(f"stability index must lie in (0, 2), got {gamma}")
    return gamma


@dataclass(frozen=True)
class StableParams:
    """Parameters of the stable generator: index ``gamma`` in (0,2) and an
    optional nonnegative drift strength ``omega_sq`` (0 means no drift).

    The Hurst parameter is always the derived value ``gamma / 2``.
    """

    gamma: float
    omega_sq: float = 0.0

    def __post_init__(self):
        _check_gamma(self.gamma)
        if self.omega_sq < 0.0:
            raise ValueError(f"drift strength must be >= 0, got {self.omega_sq}")

    @property
    def hurst(self) -> float:
        return self.gamma / 2.0

    def cdc(self, xi: float, eta: float) -> float:
        return cdc_kernel(self.gamma, xi, eta)

    def cross_sign(self, n: int, m: int) -> tuple[float, SignClass]:
        return cross_sign(self.gamma, n, m)

    def increment_correlation(self, xi: float, eta: float) -> float:
        return increment_correlation(self.gamma, xi, eta)


def cdc_kernel(gamma: float, xi: float, eta: float) -> float:
    """Frequency-space kernel of the carre du champ:
    ``(|xi|^g + |eta|^g - |xi-eta|^g) / 2``.

    Symmetric in ``(xi, eta)``.  At ``gamma = 1`` and same-sign frequencies
    this is ``min(|xi|, |eta|)``, computed exactly.
    """
    gamma = _check_gamma(gamma)
    return 0.5 * (abs_pow(xi, gamma) + abs_pow(eta, gamma) - abs_pow(xi - eta, gamma))


def fbm_covariance(hurst: float, s: float, t: float) -> float:
    """Fractional-Brownian covariance ``(s^{2H} + t^{2H} - |s-t|^{2H}) / 2``.

    For same-sign frequencies this coincides with
    ``cdc_kernel(2*hurst, s, t)``.  Requires ``0 < hurst < 1`` and
    ``s, t >= 0``.
    """
    hurst = float(hurst)
    if not 0.0 < hurst < 1.0:
        raise ValueError(f"Hurst parameter must lie in (0, 1), got {hurst}")
    if s < 0.0 or t < 0.0:
        raise ValueError("time arguments must be nonnegative")
    g = 2.0 * hurst
    return 0.5 * (abs_pow(s, g) + abs_pow(t, g) - abs_pow(s - t, g))


def cross_sign(gamma: float, n: int, m: int) -> tuple[float, SignClass]:
    """Cross-sign kernel ``(n^g + m^g - (n+m)^g) / 2`` for ``n, m >= 1``,
    classified as negative / zero / positive.

    ``gamma == 1`` is detected by exact equality and returns a structural
    zero; otherwise values below ``1e-14 * (n^g + m^g)`` in magnitude count
    as numerical zeros.
    """
    gamma = _check_gamma(gamma)
    if n < 1 or m < 1:
        raise ValueError("cross-sign kernel requires positive integer frequencies")
    if gamma == 1.0:
        return 0.0, "zero"
    pn = abs_pow(n, gamma)
    pm = abs_pow(m, gamma)
    value = 0.5 * (pn + pm - abs_pow(n + m, gamma))
    if abs(value) < _CROSS_ZERO_REL * (pn + pm):
        return value, "zero"
    return value, ("positive" if value > 0.0 else "negative")


def alpha_coeff(gamma: float) -> float:
    """Cross-sign self-coupling ratio ``1 - 2**(gamma-1)``.

    Equals ``cdc_kernel(gamma, n, -n) / n**gamma`` for every ``n >= 1``;
    vanishes exactly at ``gamma = 1``.
    """
    gamma = _check_gamma(gamma)
    if gamma == 1.0:
        return 0.0
    return 1.0 - 2.0 ** (gamma - 1.0)


def beta_coeff(gamma: float) -> float:
    """Third-harmonic drift coefficient ``(2**(gamma+1) - 3**gamma - 1) / 2``.

    Vanishes exactly at ``gamma = 1``.
    """
    gamma = _check_gamma(gamma)
    if gamma == 1.0:
        return 0.0
    return 0.5 * (2.0 ** (gamma + 1.0) - 3.0**gamma - 1.0)


def increment_correlation(gamma: float, xi: float, eta: float) -> float:
    """Normalized same-sign kernel
    ``R_{g/2}(|xi|, |eta|) / (|xi| |eta|)^{g/2}`` in ``[-1, 1]``.

    Increasing in ``gamma``; raises on zero frequency.
    """
    gamma = _check_gamma(gamma)
    if xi == 0.0 or eta == 0.0:
        raise ValueError("increment correlation is undefined at zero frequency")
    h = gamma / 2.0
    cov = fbm_covariance(h, abs(xi), abs(eta))
    return cov / (abs_pow(xi, h) * abs_pow(eta, h))
