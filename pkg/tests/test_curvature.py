import math

import numpy as np
import pytest

import fraccurv as fc
from fraccurv import (
    InsufficientData,
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
from fraccurv.curvature import default_epsilon_grid, log_double_factorial_odd

# deepest sweep used by this module; keeps runtime modest
NMAX = 80


@pytest.fixture(scope="module")
def sequences():
    return {g: kappa_sequence(g, NMAX) for g in (0.5, 1.0, 1.2, 1.8)}


class TestKappa:
    def test_cauchy_point(self):
        rep = kappa(1.0, 25)
        assert rep.kappa == pytest.approx(1.0, abs=1e-9)
        assert rep.flags["perron_nonneg"]
        assert rep.flags["z_matrix_pass"]
        assert not rep.flags["below_one"]

    def test_single_mode_is_one(self):
        for g in (0.3, 1.0, 1.7):
            assert kappa(g, 1, want_flags=False).kappa == 1.0

    def test_below_one_above_half(self):
        rep = kappa(0.6, 40)
        assert 0.5 - 1e-9 <= rep.kappa < 1.0
        assert rep.flags["below_one"] and rep.flags["above_half"]

    def test_nonnegative(self):
        for g in (0.2, 0.9, 1.3, 1.9):
            assert kappa(g, 30, want_vector=False, want_flags=False).kappa >= -1e-10

    def test_minimizing_vector_is_generalized_eigenvector(self):
        rep = kappa(0.8, 15)
        r = fc.fbm_matrix(0.4, 15)
        r2 = fc.hadamard_power(r, 2)
        v = rep.minimizing_vector
        assert np.linalg.norm(r2 @ v - rep.kappa * r @ v) <= 1e-9

    def test_strict_suboptimality_at_two_modes(self):
        for g in np.concatenate([np.arange(0.1, 0.999, 0.1),
                                 np.arange(1.001, 1.95, 0.1)]):
            assert kappa(float(g), 2, want_vector=False, want_flags=False).kappa < 1.0


class TestKappaSequence:
    def test_cauchy_all_ones(self):
        reps = kappa_sequence(1.0, 40)
        for rep in reps:
            assert rep.kappa == pytest.approx(1.0, abs=1e-9)
            if rep.decrement is not None:
                assert abs(rep.decrement) <= 1e-9

    def test_monotone_nonincreasing(self, sequences):
        for reps in sequences.values():
            for rep in reps:
                if rep.decrement is not None:
                    assert rep.decrement >= -1e-10

    def test_decrement_definition(self, sequences):
        reps = sequences[1.2]
        for i in range(1, len(reps)):
            assert reps[i].decrement == pytest.approx(
                reps[i - 1].kappa - reps[i].kappa, abs=1e-15
            )

    def test_matches_single_solves(self, sequences):
        reps = sequences[1.8]
        for n in (1, 7, NMAX):
            direct = kappa(1.8, n, want_vector=False, want_flags=False).kappa
            assert reps[n - 1].kappa == pytest.approx(direct, abs=1e-12)


class TestDecayFit:
    def test_exponent_above_two(self, sequences):
        fit = decay_exponent_fit(1.8, (20, NMAX), reports=sequences[1.8])
        assert fit > 2.0

    def test_cauchy_has_no_data(self, sequences):
        with pytest.raises(InsufficientData):
            decay_exponent_fit(1.0, (20, NMAX), reports=sequences[1.0])

    def test_bad_range(self):
        with pytest.raises(ValueError):
            decay_exponent_fit(1.5, (1, 50))


class TestQuadraticCoeff:
    def test_degenerate_grid(self):
        with pytest.raises(ValueError):
            peak_quadratic_coeff([0.05], 100)

    def test_grid_domain(self):
        with pytest.raises(ValueError):
            peak_quadratic_coeff([0.05, 0.3], 100)

    def test_both_flanks_at_small_n(self):
        # the full-size fit lives in the acceptance suite; here just pin the
        # behavior at a cheaper degree
        right = peak_quadratic_coeff(default_epsilon_grid(), 100, side=+1)
        left = peak_quadratic_coeff(default_epsilon_grid(), 100, side=-1)
        assert 0.20 <= right <= 0.34
        assert 0.20 <= left <= 0.34


class TestZMatrixScan:
    def test_brownian_rows_pass(self):
        rows = zmatrix_scan([0.5], [10, 50])
        assert all(r.passed for r in rows)

    def test_low_hurst_passes(self):
        rows = zmatrix_scan([0.1, 0.3, 0.5], [60])
        assert all(r.passed for r in rows)

    def test_breakdown_above_half(self):
        rows = zmatrix_scan([0.6, 0.7, 0.8], [10])
        assert all(not r.passed for r in rows)
        assert all(r.max_offdiag > 1e-10 for r in rows)

    def test_int_argument_expands(self):
        rows = zmatrix_scan([0.4], 6)
        assert [r.n for r in rows] == [2, 3, 4, 5, 6]


class TestPerron:
    def test_nonnegative_at_low_hurst(self):
        for h in (0.1, 0.4, 0.5):
            rep = perron_check(h, 50)
            assert rep.nonnegative
            assert rep.sign_changes == 0

    def test_sign_changes_at_high_hurst(self):
        assert perron_check(0.9, 50).sign_changes >= 1


class TestMinEntryBound:
    def test_brownian(self):
        assert min_entry_bound(0.5, 100) == 1.0

    def test_low_hurst_above_half(self):
        assert min_entry_bound(0.25, 100) >= 0.5

    def test_scan_formula(self):
        # at H just below 1/2 the minimum is (1 + m^{2H} - (m-1)^{2H})/2
        # over m, attained in the first row
        h, n = 0.49, 10
        val = min_entry_bound(h, n)
        candidates = [0.5 * (1 + m ** (2 * h) - (m - 1) ** (2 * h))
                      for m in range(1, n + 1)]
        assert val == pytest.approx(min(candidates), abs=1e-15)
        assert val >= 0.5

    def test_rejects_high_hurst(self):
        with pytest.raises(ValueError):
            min_entry_bound(0.6, 10)


class TestDriftSpectrum:
    def test_free_case(self):
        rep = drift_spectrum(0.0, 6, 1.0)
        assert np.allclose(rep.eigenvalues, [1, 3, 5, 7, 9, 11], atol=1e-10)
        assert rep.global_kappa == pytest.approx(1.0, abs=1e-10)

    def test_quarter_shift(self):
        rep = drift_spectrum(1.0, 4, math.pi)
        assert np.allclose(rep.eigenvalues, [0.5, 2.5, 4.5, 6.5], atol=1e-9)

    @pytest.mark.parametrize("w2", [0.5, 1.0, 1.9])
    def test_global_constant(self, w2):
        rep = drift_spectrum(w2, 12, 0.3)
        assert rep.global_kappa == pytest.approx(1.0 - 0.5 * w2, abs=1e-6)

    def test_global_constant_independent_of_degree(self):
        values = [drift_spectrum(1.3, n, 0.9).global_kappa for n in (3, 8, 15)]
        for v in values:
            assert v == pytest.approx(values[0], abs=1e-9)
            assert v == pytest.approx(1.0 - 0.65, abs=1e-9)

    def test_eigenvalue_shift_identity(self):
        for x in (0.0, 1.1, 2.7):
            rep = drift_spectrum(0.8, 9, x)
            expected = 2.0 * np.arange(1, 10) - 1.0 + 0.4 * math.cos(x)
            assert np.max(np.abs(rep.eigenvalues - expected)) <= 1e-9

    def test_negative_drift_rejected(self):
        with pytest.raises(ValueError):
            drift_spectrum(-1.0, 5, 0.0)


class TestSingleModeKappa:
    def test_cauchy(self):
        assert single_mode_kappa(1.0) == 1.0

    def test_half_index(self):
        assert single_mode_kappa(0.5) == pytest.approx(0.8398113794914795, abs=1e-12)

    def test_three_halves(self):
        assert single_mode_kappa(1.5) == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-12)

    def test_below_one_elsewhere(self):
        for g in (0.2, 0.7, 1.3, 1.9):
            assert single_mode_kappa(g) < 1.0


class TestRealCurvature:
    def test_cauchy_point(self):
        rc = real_curvature(1.0, 6)
        assert rc.pencil_kappa == pytest.approx(1.0, abs=1e-6)
        assert rc.constrained_kappa == pytest.approx(1.0, abs=1e-6)
        assert rc.retained == 12

    def test_single_mode_below_one(self):
        rc = real_curvature(0.5, 1)
        assert rc.constrained_kappa == pytest.approx(0.8398113794914795, abs=1e-9)

    def test_single_mode_above_one(self):
        rc = real_curvature(1.5, 1)
        assert rc.constrained_kappa == pytest.approx(0.5857864376269049, abs=1e-9)

    def test_deterministic(self):
        a = real_curvature(1.3, 3, restarts=6)
        b = real_curvature(1.3, 3, restarts=6)
        assert a.constrained_kappa == b.constrained_kappa
        assert a.pencil_kappa == b.pencil_kappa

    def test_agrees_with_positive_frequencies_at_cauchy(self):
        # cross-sign block vanishes, so the mixed pencil reproduces the
        # positive-frequency constant
        for n in (4, 8):
            mixed = real_curvature(1.0, n, restarts=4).pencil_kappa
            pos = kappa(1.0, n, want_vector=False, want_flags=False).kappa
            assert abs(mixed - pos) <= 1e-9


class TestContractionProfile:
    def test_first_rates(self):
        p = contraction_profile(1)
        assert np.array_equal(p.rates, [1.0])
        assert p.geometric_mean == 1.0

    def test_volume_ratio_n3(self):
        assert contraction_profile(3).volume_ratio_log == pytest.approx(
            0.5 * math.log(15.0), abs=1e-14
        )

    def test_stirling_trend(self):
        r100 = contraction_profile(100).stirling_ratio
        r1000 = contraction_profile(1000).stirling_ratio
        assert 0.95 <= r1000 <= 1.05
        assert abs(r1000 - 1.0) < abs(r100 - 1.0)

    def test_log_double_factorial_routes(self):
        for n in (3, 15, 16, 200):
            direct = 2.0 * contraction_profile(n).volume_ratio_log
            assert abs(direct - log_double_factorial_odd(n)) <= 1e-10


class TestLandscape:
    def test_maximum_at_cauchy(self):
        grid = np.round(np.arange(0.2, 1.85, 0.2), 10)  # includes 1.0
        rows = landscape(grid, 30)
        best = max(rows, key=lambda r: r.kappa)
        assert best.gamma == 1.0
        assert best.kappa == pytest.approx(1.0, abs=1e-9)

    def test_bounded_by_one_and_half(self):
        rows = landscape([0.3, 0.6, 0.9, 1.2, 1.5], 40)
        for row in rows:
            assert row.kappa < 1.0 + 1e-9
            if abs(row.gamma - 1.0) >= 0.05:
                assert row.kappa < 1.0 - 1e-6
            if row.gamma <= 1.0:
                assert row.kappa >= 0.5 - 1e-9
            assert row.kappa_single_mode == single_mode_kappa(row.gamma)
