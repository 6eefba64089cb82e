"""Named verification checks and the claim registry behind the CLI.

``run_checks`` powers ``fraccurv verify``: every module-level invariant at
default desk sizes, each returning pass/fail plus timing.  ``run_report``
powers ``fraccurv report``: each quantitative claim the package reproduces,
recomputed against its tolerance.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import curvature, oracle
from .curvature import DEFAULT_SEED
from .eigensolve import (
    DegeneratePencil,
    gen_eigen_psd,
    gen_eigen_spd,
    sym_eigen,
    sym_eigen_jacobi,
)
from .kernels import (
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
from .oracle import TrigPoly

_GAMMA_GRID = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75)
_H_GRID_LOW = (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5)


def rng_for(seed: int, index: int) -> np.random.Generator:
    """Counter-based generator keyed by (seed, case index), so randomized
    suites are reproducible regardless of execution order."""
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, index], dtype=np.uint64))
    )


@dataclass
class CheckResult:
    name: str
    passed: bool
    expected_fail: bool
    detail: str
    seconds: float

    @property
    def ok(self) -> bool:
        """The outcome matched the expectation."""
        return self.passed != self.expected_fail

    @property
    def status(self) -> str:
        if self.expected_fail:
            return "XFAIL" if not self.passed else "XPASS"
        return "PASS" if self.passed else "FAIL"


def _result(name, passed, detail, t0, expected_fail=False):
    return CheckResult(name=name, passed=bool(passed),
                       expected_fail=expected_fail, detail=detail,
                       seconds=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# verify checks
# ---------------------------------------------------------------------------

def check_correspondence(ov):
    t0 = time.perf_counter()
    worst = 0.0
    for g in _GAMMA_GRID:
        for n in range(1, 51):
            for m in range(1, 51):
                a = cdc_kernel(g, n, m)
                b = fbm_covariance(g / 2.0, n, m)
                scale = max(abs(a), abs(b), 1.0)
                worst = max(worst, abs(a - b) / scale)
    return _result("correspondence", worst <= 1e-14,
                   f"worst relative gap {worst:.2e}", t0)


def check_cross_sign(ov):
    t0 = time.perf_counter()
    gammas = [float(ov["gamma"])] if "gamma" in ov else [0.5, 1.0, 1.5]
    ok = True
    details = []
    for g in gammas:
        classes = set()
        worst = 0.0
        for n in range(1, 51):
            for m in range(1, 51):
                v, c = cross_sign(g, n, m)
                classes.add(c)
                worst = max(worst, abs(v))
        if g == 1.0:
            ok &= classes == {"zero"} and worst == 0.0
            details.append(f"g=1: exact zeros (max |v| = {worst:.1e})")
        else:
            want = "positive" if g < 1.0 else "negative"
            ok &= classes == {want}
            details.append(f"g={g}: all {want}")
    return _result("cross-sign", ok, "; ".join(details), t0)


def check_kernel_psd(ov):
    t0 = time.perf_counter()
    worst = math.inf
    for g in _GAMMA_GRID:
        k = cdc_matrix(g, range(1, 51))
        worst = min(worst, float(sym_eigen(k, want_vectors=False).values[0]))
    return _result("kernel-psd", worst >= -1e-10,
                   f"smallest kernel eigenvalue {worst:.2e}", t0)


def check_alpha_beta(ov):
    t0 = time.perf_counter()
    ok = alpha_coeff(1.0) == 0.0 and beta_coeff(1.0) == 0.0
    grid = np.arange(0.02, 1.99, 0.02)
    for g in grid:
        g = float(g)
        if abs(g - 1.0) < 1e-12:
            continue
        ok &= alpha_coeff(g) != 0.0 and beta_coeff(g) != 0.0
    return _result("alpha-beta", ok,
                   "both vanish exactly at g=1 and nowhere else on the grid", t0)


def check_cholesky_reconstruct(ov):
    t0 = time.perf_counter()
    worst = 0.0
    for h in (0.1, 0.3, 0.5, 0.7, 0.9):
        for n in (2, 25, 100, 300):
            r = fbm_matrix(h, n)
            lo = cholesky(r)
            gap = float(np.max(np.abs(lo @ lo.T - r)))
            worst = max(worst, gap / float(np.max(np.abs(r))))
    return _result("cholesky-reconstruct", worst <= 1e-12,
                   f"worst relative reconstruction gap {worst:.2e}", t0)


def check_cholesky_sign(ov):
    # Recorded, not assumed: nonnegativity of the Cholesky factor entries
    # for H <= 1/2 has no analytic proof at hand.
    t0 = time.perf_counter()
    failures = []
    for h in _H_GRID_LOW:
        for n in (10, 60, 200):
            lo = cholesky(fbm_matrix(h, n))
            if float(lo.min()) < -1e-12:
                failures.append((h, n, float(lo.min())))
    return _result("cholesky-sign", not failures,
                   "factor entries nonnegative for H <= 1/2"
                   if not failures else f"negative entries at {failures[:3]}", t0)


def check_exact_curvature_matrix(ov):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 101):
        r = fbm_matrix(0.5, n)
        m_float = inverse_times(r, hadamard_power(r, 2))
        gap = float(np.max(np.abs(m_float - exact_curvature_matrix(n))))
        worst = max(worst, gap)
    return _result("exact-curvature-matrix", worst <= 1e-10,
                   f"worst entrywise gap through N=100: {worst:.2e}", t0)


def check_unit_determinant(ov):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 201):
        worst = max(worst, abs(log_det(fbm_matrix(0.5, n))))
    return _result("unit-determinant", worst <= 1e-10,
                   f"max |log det| through N=200: {worst:.2e}", t0)


def check_hadamard_positivity(ov):
    t0 = time.perf_counter()
    ok = True
    for h in (0.1, 0.3, 0.5, 0.7, 0.9):
        r = fbm_matrix(h, 100)
        try:
            cholesky(r)
            cholesky(hadamard_power(r, 2))
        except NotPositiveDefinite:
            ok = False
    return _result("hadamard-positivity", ok,
                   "entrywise squares of the covariance family stay positive "
                   "definite at N=100", t0)


def check_double_factorial(ov):
    t0 = time.perf_counter()
    ok = True
    for n in range(1, 16):
        diag_prod = int(np.prod(np.diag(exact_curvature_matrix(n))))
        ok &= diag_prod == double_factorial(2 * n - 1)
    gap = 0.0
    for n in (16, 50, 200, 1000):
        direct = 2.0 * curvature.contraction_profile(n).volume_ratio_log
        gap = max(gap, abs(direct - curvature.log_double_factorial_odd(n)))
    ok &= gap <= 1e-10
    return _result("double-factorial", ok,
                   f"integer identity exact to N=15; log-route gap {gap:.2e}", t0)


def check_eigen_crosscheck(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    worst = 0.0
    deterministic = True
    for i in range(20):
        rng = rng_for(seed, 9000 + i)
        n = int(rng.integers(1, 9))
        a = rng.standard_normal((n, n))
        a = 0.5 * (a + a.T)
        ql = sym_eigen(a)
        jac = sym_eigen_jacobi(a)
        worst = max(worst, float(np.max(np.abs(ql.values - jac.values))))
        again = sym_eigen(a)
        deterministic &= np.array_equal(ql.values, again.values)
    passed = worst <= 1e-10 and deterministic
    return _result("eigen-crosscheck", passed,
                   f"QL vs Jacobi worst gap {worst:.2e}; repeat calls "
                   f"bit-identical: {deterministic}", t0)


def check_residual_contract(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    ok = True
    for i in range(10):
        rng = rng_for(seed, 9100 + i)
        n = 10
        a = rng.standard_normal((n, n))
        a = 0.5 * (a + a.T)
        m = rng.standard_normal((n, n))
        b = m @ m.T + n * np.eye(n)
        spec = gen_eigen_spd(a, b)
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        for k in range(n):
            v = spec.vectors[:, k]
            lam = spec.values[k]
            r = float(np.linalg.norm(a @ v - lam * (b @ v)))
            ok &= r <= 1e-9 * (na + abs(lam) * nb)
    return _result("residual-contract", ok,
                   "||A v - lambda B v|| <= 1e-9 (||A|| + |lambda| ||B||) "
                   "on random definite pencils", t0)


def check_similarity_invariance(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    worst = 0.0
    for i in range(10):
        rng = rng_for(seed, 9200 + i)
        n = int(rng.integers(2, 11))
        a = rng.standard_normal((n, n))
        a = 0.5 * (a + a.T)
        m = rng.standard_normal((n, n))
        b = m @ m.T + n * np.eye(n)
        p = np.eye(n) + 0.3 * rng.standard_normal((n, n))
        base = gen_eigen_spd(a, b, want_vectors=False).values
        cong = gen_eigen_spd(p.T @ a @ p, p.T @ b @ p, want_vectors=False).values
        worst = max(worst, float(np.max(np.abs(base - cong))))
    return _result("similarity-invariance", worst <= 1e-9,
                   f"worst eigenvalue drift under congruence {worst:.2e}", t0)


def check_psd_pencil(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    rng = rng_for(seed, 9300)
    n = 8
    a = rng.standard_normal((n, n))
    a = 0.5 * (a + a.T)
    m = rng.standard_normal((n, n))
    b = m @ m.T + n * np.eye(n)
    gap = float(np.max(np.abs(
        gen_eigen_psd(a, b, want_vectors=False).values
        - gen_eigen_spd(a, b, want_vectors=False).values
    )))
    ok = gap <= 1e-9
    try:
        gen_eigen_psd(a, np.zeros((n, n)))
        ok = False
    except DegeneratePencil:
        pass
    k1 = cdc_matrix(1.0, list(range(-10, 0)) + list(range(1, 11)))
    spec = gen_eigen_psd(hadamard_power(k1, 2), k1, want_vectors=False)
    ok &= abs(spec.values[0] - 1.0) <= 1e-9 and spec.retained == 20
    return _result("psd-pencil", ok,
                   f"agrees with the definite path to {gap:.2e}; zero matrix "
                   "raises; mixed-sign Cauchy pencil gives 1 at full rank", t0)


def check_odd_spectrum(ov):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 51):
        r = fbm_matrix(0.5, n)
        values = gen_eigen_spd(hadamard_power(r, 2), r, want_vectors=False).values
        expected = 2.0 * np.arange(1, n + 1) - 1.0
        worst = max(worst, float(np.max(np.abs(values - expected) / expected)))
    return _result("odd-spectrum", worst <= 1e-9,
                   f"worst relative error through N=50: {worst:.2e}", t0)


def check_kappa_bounds(ov):
    t0 = time.perf_counter()
    ok = abs(curvature.kappa(1.0, 25).kappa - 1.0) <= 1e-9
    ok &= curvature.kappa(0.7, 1, want_vector=False, want_flags=False).kappa == 1.0
    for g in (0.2, 0.4, 0.6, 0.8, 1.2, 1.4, 1.6, 1.8):
        k = curvature.kappa(g, 40, want_vector=False, want_flags=False).kappa
        ok &= k >= -1e-10
        ok &= k < 1.0
        if g <= 1.0:
            ok &= k >= 0.5 - 1e-9
        ok &= curvature.kappa(g, 2, want_vector=False, want_flags=False).kappa < 1.0
    return _result("kappa-bounds", ok,
                   "nonnegative, strictly below 1 away from g=1, above 1/2 "
                   "for g <= 1, exactly 1 at the Cauchy point", t0)


def check_monotone(ov):
    t0 = time.perf_counter()
    worst = math.inf
    for g in (0.5, 1.2, 1.8):
        reps = curvature.kappa_sequence(g, 60)
        worst = min(worst, min(r.decrement for r in reps if r.decrement is not None))
    return _result("monotone", worst >= -1e-10,
                   f"smallest decrement {worst:.2e}", t0)


def check_zmatrix(ov):
    t0 = time.perf_counter()
    if "h" in ov:
        h = float(ov["h"])
        n = int(ov.get("n", 60))
        row = curvature.zmatrix_scan([h], [n])[0]
        return _result("z-matrix", row.passed,
                       f"H={h} N={n}: max off-diagonal {row.max_offdiag:.3e}",
                       t0, expected_fail=h > 0.5)
    rows = curvature.zmatrix_scan(_H_GRID_LOW, [60])
    ok = all(r.passed for r in rows)
    m = inverse_times(fbm_matrix(0.5, 40), hadamard_power(fbm_matrix(0.5, 40), 2))
    iu = np.triu_indices(40, k=1)
    ok &= float(np.max(np.abs(m[iu] + 2.0))) <= 1e-9
    broken = curvature.zmatrix_scan((0.6, 0.7, 0.8), [10])
    ok &= all(not r.passed for r in broken)
    return _result("z-matrix", ok,
                   "non-positive off-diagonals for H <= 1/2 (upper entries "
                   "exactly -2 at H = 1/2); breakdown detected above 1/2", t0)


def check_perron(ov):
    t0 = time.perf_counter()
    ok = True
    for h in (0.1, 0.2, 0.3, 0.4, 0.5):
        rep = curvature.perron_check(h, 50)
        ok &= rep.nonnegative
    high = curvature.perron_check(0.9, 50)
    ok &= high.sign_changes >= 1
    return _result("perron", ok,
                   f"minimizer nonnegative for H <= 1/2; {high.sign_changes} "
                   "sign changes at H = 0.9", t0)


def check_entry_bound(ov):
    t0 = time.perf_counter()
    worst = math.inf
    for h in _H_GRID_LOW:
        worst = min(worst, curvature.min_entry_bound(h, 100))
    return _result("entry-bound", worst >= 0.5,
                   f"smallest covariance entry {worst:.6f}", t0)


def check_drift_shift(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    worst = 0.0
    for i in range(20):
        rng = rng_for(seed, 9400 + i)
        w2 = float(rng.uniform(0.0, 2.0))
        x = float(rng.uniform(0.0, 2.0 * np.pi))
        for n in (2, 5, 10, 20):
            r = fbm_matrix(0.5, n)
            r2 = hadamard_power(r, 2)
            free = gen_eigen_spd(r2, r, want_vectors=False).values
            shifted = gen_eigen_spd(
                r2 + 0.5 * w2 * math.cos(x) * r, r, want_vectors=False
            ).values
            gap = shifted - free - 0.5 * w2 * math.cos(x)
            worst = max(worst, float(np.max(np.abs(gap))))
    return _result("drift-shift", worst <= 1e-9,
                   f"drifted minus free eigenvalues equal the scalar shift "
                   f"to {worst:.2e}", t0)


def check_drift_global(ov):
    t0 = time.perf_counter()
    worst = 0.0
    for w2 in (0.5, 1.0, 1.9):
        rep = curvature.drift_spectrum(w2, 20, 1.0)
        worst = max(worst, abs(rep.global_kappa - (1.0 - 0.5 * w2)))
    return _result("drift-global", worst <= 1e-6,
                   f"global constant matches 1 - w/2 to {worst:.2e}", t0)


def check_real_curvature(ov):
    t0 = time.perf_counter()
    rc = curvature.real_curvature(1.0, 6)
    ok = abs(rc.pencil_kappa - 1.0) <= 1e-6
    ok &= abs(rc.constrained_kappa - 1.0) <= 1e-6
    for g in (0.5, 1.5):
        single = curvature.real_curvature(g, 1)
        ok &= abs(single.constrained_kappa - curvature.single_mode_kappa(g)) <= 1e-9
    return _result("real-curvature", ok,
                   f"Cauchy point: pencil {rc.pencil_kappa:.9f}, constrained "
                   f"{rc.constrained_kappa:.9f}; single-mode closed form "
                   "matched at N=1", t0)


def check_hadamard_identity(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    cases = int(ov.get("cases", 200))
    worst = 0.0
    for i in range(cases):
        rng = rng_for(seed, i)
        g = float(rng.uniform(0.05, 1.95))
        f = oracle.random_poly(rng, max_freq=8, max_terms=8)
        worst = max(worst, oracle.coeff_distance(
            oracle.gamma2_direct(g, f), oracle.gamma2_hadamard(g, f)
        ))
    return _result("hadamard-identity", worst <= 1e-10,
                   f"worst coefficient gap over {cases} draws: {worst:.2e}", t0)


def check_matrix_oracle(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    xs = 2.0 * np.pi * np.arange(64) / 64
    worst = 0.0
    for i in range(12):
        rng = rng_for(seed, 9500 + i)
        n = int(rng.integers(2, 13))
        g = float(rng.uniform(0.1, 1.9))
        a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        f = TrigPoly({k + 1: a[k] for k in range(n)})
        r = fbm_matrix(g / 2.0, n)
        r2 = hadamard_power(r, 2)
        gamma1 = oracle.carre_du_champ(g, f, f)
        gamma2 = oracle.gamma2_direct(g, f)
        for x in xs:
            v = a * np.exp(1j * np.arange(1, n + 1) * x)
            worst = max(worst, abs(gamma1.evaluate(float(x)) - np.vdot(v, r @ v)))
            worst = max(worst, abs(gamma2.evaluate(float(x)) - np.vdot(v, r2 @ v)))
    return _result("matrix-oracle", worst <= 1e-10,
                   f"pointwise forms match the covariance route to {worst:.2e}", t0)


def check_reality(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    xs = 2.0 * np.pi * np.arange(64) / 64
    worst = 0.0
    for i in range(10):
        rng = rng_for(seed, 9600 + i)
        g = float(rng.uniform(0.1, 1.9))
        w2 = float(rng.uniform(0.0, 2.0))
        f = oracle.random_poly(rng, max_freq=8, real=True)
        scale = max(f.max_abs(), 1.0)
        for poly in (oracle.carre_du_champ(g, f, f),
                     oracle.gamma2_direct(g, f),
                     oracle.gamma2_drift(g, w2, f)):
            vals = poly.evaluate(xs)
            worst = max(worst, float(np.max(np.abs(vals.imag))) / scale)
    return _result("reality", worst <= 1e-12,
                   f"imaginary residue on real inputs {worst:.2e}", t0)


def check_drift_scalar(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    worst = 0.0
    for i in range(20):
        rng = rng_for(seed, 9700 + i)
        w2 = float(rng.uniform(0.0, 2.0))
        f = oracle.random_poly(rng, max_freq=12, max_terms=8, positive_only=True)
        corr = oracle.drift_correction(1.0, w2, f)
        gff = oracle.carre_du_champ(1.0, f, f)
        ref = (TrigPoly({k + 1: 0.25 * w2 * v for k, v in gff.items()})
               + TrigPoly({k - 1: 0.25 * w2 * v for k, v in gff.items()}))
        worst = max(worst, oracle.coeff_distance(corr, ref))
    _, dev = oracle.drift_correction_matrix(1.3, 6, 0.8)
    ok = worst <= 1e-10 and dev <= 1e-12
    return _result("drift-scalar", ok,
                   f"correction equals (w/2) cos(x) G coefficientwise to "
                   f"{worst:.2e}; stripped matrix deviation {dev:.2e}", t0)


def check_drift_decoupling(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    worst = 0.0
    for i in range(20):
        rng = rng_for(seed, 9800 + i)
        w2 = float(rng.uniform(0.0, 2.0))
        f = oracle.random_poly(rng, max_freq=10, positive_only=True)
        g_neg = TrigPoly({-k: v for k, v in
                          oracle.random_poly(rng, max_freq=10,
                                             positive_only=True).items()})
        cross = oracle.carre_du_champ(1.0, f, oracle.drift_gradient(w2, g_neg))
        worst = max(worst, cross.max_abs())
    return _result("drift-decoupling", worst <= 1e-12,
                   f"drifted cross terms between T+ and T-: {worst:.2e}", t0)


def check_single_mode(ov):
    t0 = time.perf_counter()
    xs = 2.0 * np.pi * np.arange(100) / 100
    worst = 0.0
    for g in (0.5, 1.0, 1.3, 1.7):
        for n in (1, 2, 3):
            f = TrigPoly({n: 0.5, -n: 0.5})
            g2 = oracle.gamma2_direct(g, f)
            g1 = oracle.carre_du_champ(g, f, f)
            for x in xs:
                v = g2.evaluate(float(x)) / g1.evaluate(float(x))
                worst = max(worst, abs(oracle.single_mode_ratio(g, n, float(x)) - v))
        for w2 in (0.0, 0.5, 1.5):
            f = TrigPoly({1: 0.5, -1: 0.5})
            g2 = oracle.gamma2_drift(g, w2, f)
            g1 = oracle.carre_du_champ(g, f, f)
            for x in xs:
                v = g2.evaluate(float(x)) / g1.evaluate(float(x))
                worst = max(worst,
                            abs(oracle.drift_single_mode_ratio(g, w2, float(x)) - v))
    ok = worst <= 1e-10
    ok &= curvature.single_mode_kappa(1.0) == 1.0
    return _result("single-mode", ok,
                   f"closed forms match the oracle pointwise to {worst:.2e}", t0)


def check_gamma2_positivity(ov):
    t0 = time.perf_counter()
    seed = int(ov.get("seed", DEFAULT_SEED))
    xs = 2.0 * np.pi * np.arange(64) / 64
    ok = True
    for i in range(15):
        rng = rng_for(seed, 9900 + i)
        g = float(rng.uniform(0.1, 1.9))
        f = oracle.random_poly(rng, max_freq=8, real=True)
        norm_sq = sum(abs(v) ** 2 for _, v in f.items())
        vals = oracle.gamma2_direct(g, f).evaluate(xs).real
        ok &= float(vals.min()) >= -1e-10 * norm_sq
    return _result("gamma2-positivity", ok,
                   "iterated form nonnegative on the grid for random real "
                   "polynomials", t0)


CHECKS: dict[str, Callable] = {
    "correspondence": check_correspondence,
    "cross-sign": check_cross_sign,
    "kernel-psd": check_kernel_psd,
    "alpha-beta": check_alpha_beta,
    "cholesky-reconstruct": check_cholesky_reconstruct,
    "cholesky-sign": check_cholesky_sign,
    "exact-curvature-matrix": check_exact_curvature_matrix,
    "unit-determinant": check_unit_determinant,
    "hadamard-positivity": check_hadamard_positivity,
    "double-factorial": check_double_factorial,
    "eigen-crosscheck": check_eigen_crosscheck,
    "residual-contract": check_residual_contract,
    "similarity-invariance": check_similarity_invariance,
    "psd-pencil": check_psd_pencil,
    "odd-spectrum": check_odd_spectrum,
    "kappa-bounds": check_kappa_bounds,
    "monotone": check_monotone,
    "z-matrix": check_zmatrix,
    "perron": check_perron,
    "entry-bound": check_entry_bound,
    "drift-shift": check_drift_shift,
    "drift-global": check_drift_global,
    "real-curvature": check_real_curvature,
    "hadamard-identity": check_hadamard_identity,
    "matrix-oracle": check_matrix_oracle,
    "reality": check_reality,
    "drift-scalar": check_drift_scalar,
    "drift-decoupling": check_drift_decoupling,
    "single-mode": check_single_mode,
    "gamma2-positivity": check_gamma2_positivity,
}


def run_checks(only: str | None = None, overrides: dict | None = None,
               progress=None) -> list[CheckResult]:
    """Run the named checks (all by default; substring filter via ``only``)."""
    overrides = overrides or {}
    selected = {name: fn for name, fn in CHECKS.items()
                if only is None or only in name}
    if not selected:
        raise KeyError(f"no check matches {only!r}")
    results = []
    for name, fn in selected.items():
        if progress is not None:
            progress(name)
        results.append(fn(overrides))
    return results


# ---------------------------------------------------------------------------
# report claims
# ---------------------------------------------------------------------------

def _claim(claim, location, expected, computed, tolerance, pass_mode="abs"):
    if pass_mode == "abs":
        ok = abs(computed - expected) <= tolerance
    elif pass_mode == "ge":
        ok = computed >= expected - tolerance
    elif pass_mode == "gt":
        ok = computed > expected
    elif pass_mode == "le":
        ok = computed <= expected + tolerance
    else:
        raise ValueError(pass_mode)
    return {
        "claim": claim,
        "paper_location": location,
        "expected": expected,
        "computed": computed,
        "tolerance": tolerance,
        "pass": bool(ok),
    }


def run_report(n_max: int = 300, seed: int = DEFAULT_SEED,
               progress=None) -> list[dict]:
    """Recompute every headline number the package reproduces."""
    rows: list[dict] = []

    def step(msg):
        if progress is not None:
            progress(msg)

    step("scalar kernels")
    rows.append(_claim("min kernel at the Cauchy point: K(3,5) = 3",
                       "kernel-cauchy", 3.0, cdc_kernel(1.0, 3.0, 5.0), 0.0))
    rows.append(_claim("Brownian covariance: R(2,7) = 2 at H = 1/2",
                       "kernel-brownian", 2.0, fbm_covariance(0.5, 2.0, 7.0), 0.0))
    worst = max(abs(cross_sign(1.0, n, m)[0])
                for n in range(1, 51) for m in range(1, 51))
    rows.append(_claim("cross-sign kernel vanishes identically at g = 1",
                       "cross-sign-zero", 0.0, worst, 0.0))
    rows.append(_claim("alpha coefficient vanishes at g = 1",
                       "single-mode-alpha", 0.0, alpha_coeff(1.0), 0.0))
    rows.append(_claim("beta coefficient vanishes at g = 1",
                       "drift-beta", 0.0, beta_coeff(1.0), 0.0))
    rows.append(_claim("increment correlation increases with the index",
                       "correlation-monotone", 0.0,
                       increment_correlation(1.5, 1, 2)
                       - increment_correlation(0.5, 1, 2), 0.0, "gt"))

    step("integer curvature matrix")
    gap = float(np.max(np.abs(
        fbm_matrix(0.5, 3) - np.array([[1, 1, 1], [1, 2, 2], [1, 2, 3.0]])
    )))
    rows.append(_claim("Brownian covariance matrix is min(i,j) at N = 3",
                       "min-matrix", 0.0, gap, 0.0))
    m3 = exact_curvature_matrix(3)
    gap = float(np.max(np.abs(
        m3 - np.array([[1, -2, -2], [0, 3, -2], [0, 0, 5]])
    )))
    rows.append(_claim("curvature matrix at N = 3: diag {1,3,5}, upper -2",
                       "curvature-matrix", 0.0, gap, 0.0))
    gap = float(np.max(np.abs(np.diag(exact_curvature_matrix(4))
                              - np.array([1, 3, 5, 7]))))
    rows.append(_claim("curvature matrix diagonal {1,3,5,7} at N = 4",
                       "curvature-matrix", 0.0, gap, 0.0))
    worst = 0.0
    for n in range(1, 101):
        r = fbm_matrix(0.5, n)
        worst = max(worst, float(np.max(np.abs(
            inverse_times(r, hadamard_power(r, 2)) - exact_curvature_matrix(n)
        ))))
    rows.append(_claim("float solve matches the integer matrix through N = 100",
                       "exact-vs-float", 0.0, worst, 1e-10))

    step("Z-matrix structure")
    m = inverse_times(fbm_matrix(0.5, 50), hadamard_power(fbm_matrix(0.5, 50), 2))
    iu = np.triu_indices(50, k=1)
    rows.append(_claim("strictly-upper entries equal -2 at H = 1/2",
                       "zmatrix-upper", 0.0,
                       float(np.max(np.abs(m[iu] + 2.0))), 1e-9))
    scan = curvature.zmatrix_scan(_H_GRID_LOW, [200])
    rows.append(_claim("non-positive off-diagonals for H <= 1/2 at N = 200",
                       "zmatrix-low", 0.0,
                       max(r.max_offdiag for r in scan), 1e-10, "le"))
    broken = curvature.zmatrix_scan((0.6, 0.7, 0.8), [10])
    rows.append(_claim("positive off-diagonals appear above H = 1/2",
                       "zmatrix-breakdown", 0.0,
                       min(r.max_offdiag for r in broken), 0.0, "gt"))

    step("determinants")
    worst = max(abs(log_det(fbm_matrix(0.5, n))) for n in range(1, 201))
    rows.append(_claim("unit determinant of the Brownian covariance, N <= 200",
                       "unit-determinant", 0.0, worst, 1e-10))
    prof = curvature.contraction_profile(3)
    rows.append(_claim("volume ratio log is log(15)/2 at N = 3",
                       "volume-ratio", 0.5 * math.log(15.0),
                       prof.volume_ratio_log, 1e-12))
    rows.append(_claim("geometric-mean rate approaches 2N/e (ratio at N = 1000)",
                       "stirling", 1.0,
                       curvature.contraction_profile(1000).stirling_ratio, 0.05))

    step("curvature spectrum")
    worst = 0.0
    for n in range(1, 51):
        r = fbm_matrix(0.5, n)
        values = gen_eigen_spd(hadamard_power(r, 2), r, want_vectors=False).values
        expected = 2.0 * np.arange(1, n + 1) - 1.0
        worst = max(worst, float(np.max(np.abs(values - expected) / expected)))
    rows.append(_claim("odd spectrum {1,3,...,2N-1} through N = 50",
                       "odd-spectrum", 0.0, worst, 1e-9))
    rows.append(_claim("kappa(1, 25) = 1", "cauchy-curvature", 1.0,
                       curvature.kappa(1.0, 25).kappa, 1e-9))

    step("plateaus and sweeps")
    rows.append(_claim("kappa(1.5) limit", "plateau", 0.899,
                       curvature.kappa(1.5, n_max, want_vector=False,
                                       want_flags=False).kappa, 0.005))
    rows.append(_claim("kappa(1.8) limit", "plateau", 0.594,
                       curvature.kappa(1.8, n_max, want_vector=False,
                                       want_flags=False).kappa, 0.005))
    for g in (0.5, 1.5, 1.8):
        step(f"decay fit g={g}")
        fit = curvature.decay_exponent_fit(g, (30, n_max))
        rows.append(_claim(f"decrement decay exponent exceeds 2 at g = {g}",
                           "decay-exponent", 2.0, fit, 0.0, "gt"))
    step("quadratic coefficient")
    c = curvature.peak_quadratic_coeff(curvature.default_epsilon_grid(), 200)
    rows.append(_claim("quadratic coefficient c", "peak-quadratic",
                       0.267, c, 0.03))
    step("lower bound")
    low = math.inf
    for g in (0.2, 0.4, 0.6, 0.8, 1.0):
        reps = curvature.kappa_sequence(g, 200)
        low = min(low, min(r.kappa for r in reps))
    rows.append(_claim("kappa >= 1/2 for g <= 1 through N = 200",
                       "kappa-lower-bound", 0.5, low, 1e-9, "ge"))
    step("landscape")
    grid = np.round(np.arange(0.1, 1.95, 0.1), 10)
    land = curvature.landscape(grid, 60)
    best = max(land, key=lambda row: row.kappa)
    rows.append(_claim("curvature maximized at g = 1 on the landscape grid",
                       "landscape-max", 1.0, best.gamma, 1e-12))
    rows.append(_claim("landscape maximum value is 1", "landscape-max",
                       1.0, best.kappa, 1e-9))

    step("Perron structure")
    rows.append(_claim("minimizing vector nonnegative at H = 0.4, N = 50",
                       "perron", 1.0,
                       float(curvature.perron_check(0.4, 50).nonnegative), 0.0))
    rows.append(_claim("sign changes appear at H = 0.9, N = 50",
                       "perron-breakdown", 0.0,
                       float(curvature.perron_check(0.9, 50).sign_changes),
                       0.0, "gt"))
    rows.append(_claim("covariance entries at least 1/2 for H <= 1/2",
                       "entry-bound", 0.5,
                       min(curvature.min_entry_bound(h, 100)
                           for h in _H_GRID_LOW), 0.0, "ge"))

    step("oracle identities")
    worst = 0.0
    for i in range(200):
        rng = rng_for(seed, i)
        g = float(rng.uniform(0.05, 1.95))
        f = oracle.random_poly(rng, max_freq=8, max_terms=8)
        worst = max(worst, oracle.coeff_distance(
            oracle.gamma2_direct(g, f), oracle.gamma2_hadamard(g, f)))
    rows.append(_claim("iterated kernel is the squared kernel (200 draws)",
                       "hadamard-square", 0.0, worst, 1e-10))
    rows.append(_claim("single-mode curvature equals 1 at g = 1",
                       "single-mode", 1.0, curvature.single_mode_kappa(1.0), 0.0))

    step("drift")
    worst = 0.0
    for i in range(10):
        rng = rng_for(seed, 500 + i)
        w2 = float(rng.uniform(0.0, 2.0))
        x = float(rng.uniform(0.0, 2.0 * np.pi))
        _, dev = oracle.drift_correction_matrix(w2, 20, x)
        worst = max(worst, dev)
    rows.append(_claim("stripped drift correction is (w/2) cos(x) min(i,j), N = 20",
                       "drift-correction", 0.0, worst, 1e-12))
    worst = 0.0
    for w2 in (0.5, 1.0, 1.9):
        rep = curvature.drift_spectrum(w2, 20, 0.7)
        expected = 2.0 * np.arange(1, 21) - 1.0 + 0.5 * w2 * math.cos(0.7)
        worst = max(worst, float(np.max(np.abs(rep.eigenvalues - expected))))
    rows.append(_claim("drifted spectrum is {2k-1 + (w/2) cos x}",
                       "drift-spectrum", 0.0, worst, 1e-9))
    worst = 0.0
    for w2 in (0.5, 1.0, 1.9):
        rep = curvature.drift_spectrum(w2, 20, 0.7)
        worst = max(worst, abs(rep.global_kappa - (1.0 - 0.5 * w2)))
    rows.append(_claim("global drifted curvature is 1 - w/2",
                       "drift-global", 0.0, worst, 1e-6))
    xs = 2.0 * np.pi * np.arange(256) / 256
    vals = [oracle.drift_single_mode_ratio(1.0, 1.0, float(x)) for x in xs]
    rows.append(_claim("single-mode drifted minimum 1 - w/2 attained at x = pi",
                       "drift-single-mode", 0.5, min(vals), 1e-12))

    step("real polynomials")
    rc = curvature.real_curvature(1.0, 10)
    rows.append(_claim("mixed-sign pencil curvature is 1 at g = 1, N = 10",
                       "real-cauchy", 1.0, rc.pencil_kappa, 1e-6))
    rows.append(_claim("constrained real curvature is 1 at g = 1, N = 10",
                       "real-cauchy", 1.0, rc.constrained_kappa, 1e-6))
    return rows
