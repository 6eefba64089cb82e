import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fraccurv import (
    TrigPoly,
    alpha_coeff,
    apply_generator,
    carre_du_champ,
    coeff_distance,
    drift_correction_matrix,
    drift_gradient,
    drift_single_mode_ratio,
    fbm_matrix,
    gamma2_direct,
    gamma2_drift,
    gamma2_hadamard,
    hadamard_power,
    single_mode_ratio,
)
from fraccurv.oracle import drift_correction, dump_pointfield_csv, random_poly


def rng_for(index):
    return np.random.Generator(np.random.Philox(key=np.array([31, index], dtype=np.uint64)))


XS = 2.0 * np.pi * np.arange(64) / 64


class TestTrigPoly:
    def test_zero_coefficients_absent(self):
        f = TrigPoly({1: 0.0, 2: 1.0})
        assert f.support == (2,)

    def test_accumulates_duplicates(self):
        f = TrigPoly([(1, 1.0), (1, 2.0)])
        assert f.coeff(1) == 3.0 + 0j

    def test_pruning(self):
        f = TrigPoly({1: 1.0, 2: 1e-17})
        assert f.support == (1,)

    def test_triples_roundtrip(self):
        f = TrigPoly.from_triples([(1, 0.5, 0.0), (-1, 0.5, 0.0), (3, 0.0, 2.0)])
        assert TrigPoly.from_triples(f.to_triples()).support == f.support
        assert f.coeff(3) == 2j

    def test_is_real(self):
        assert TrigPoly({1: 0.5 - 0.5j, -1: 0.5 + 0.5j}).is_real()
        assert not TrigPoly({1: 1.0}).is_real()
        assert TrigPoly({0: 1.0}).is_real()

    def test_evaluate(self):
        f = TrigPoly({1: 0.5, -1: 0.5})
        assert f.evaluate(0.0) == pytest.approx(1.0)
        vals = f.evaluate(XS)
        assert np.allclose(vals, np.cos(XS), atol=1e-14)

    def test_arithmetic(self):
        f = TrigPoly({1: 1.0})
        g = TrigPoly({1: 1.0, 2: 3.0})
        assert (f + g).coeff(1) == 2.0
        assert (g - f).support == (2,)
        assert (2.0 * f).coeff(1) == 2.0
        assert (-f).coeff(1) == -1.0


class TestApplyGenerator:
    def test_single_mode(self):
        f = TrigPoly({3: 1.0})
        assert apply_generator(1.0, f).coeff(3) == -3.0

    def test_constant_annihilated(self):
        assert len(apply_generator(1.3, TrigPoly({0: 4.0}))) == 0

    def test_cos_half_index(self):
        f = TrigPoly({1: 0.5, -1: 0.5})
        lf = apply_generator(0.5, f)
        assert coeff_distance(lf, -1.0 * f) == 0.0


class TestCarreDuChamp:
    def test_single_exponential(self):
        f = TrigPoly({1: 1.0})
        g = carre_du_champ(1.2, f, f)
        assert g.support == (0,)
        assert g.coeff(0) == 1.0

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 1.4])
    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_cosine_mode(self, gamma, n):
        # (n^g / 2) (1 + alpha cos 2nx)
        f = TrigPoly({n: 0.5, -n: 0.5})
        g = carre_du_champ(gamma, f, f)
        scale = n ** gamma
        a = alpha_coeff(gamma)
        assert g.coeff(0) == pytest.approx(0.5 * scale, rel=1e-14)
        assert g.coeff(2 * n) == pytest.approx(0.25 * a * scale, rel=1e-13, abs=1e-15)
        assert g.coeff(-2 * n) == pytest.approx(0.25 * a * scale, rel=1e-13, abs=1e-15)

    def test_cross_sign_vanishes_at_one(self):
        g = carre_du_champ(1.0, TrigPoly({1: 1.0}), TrigPoly({-1: 1.0}))
        assert len(g) == 0


class TestGamma2:
    def test_single_exponential_is_one(self):
        for gamma in (0.3, 1.0, 1.7):
            g2 = gamma2_direct(gamma, TrigPoly({1: 1.0}))
            assert g2.support == (0,)
            assert g2.coeff(0) == pytest.approx(1.0, abs=1e-14)

    def test_constant_is_zero(self):
        assert len(gamma2_direct(1.0, TrigPoly({0: 2.0}))) == 0

    def test_positive_pair_exact_at_one(self):
        f = TrigPoly({1: 1.0, 2: 1.0})
        assert coeff_distance(gamma2_direct(1.0, f), gamma2_hadamard(1.0, f)) == 0.0

    def test_cos_at_one_is_half(self):
        g2 = gamma2_hadamard(1.0, TrigPoly({1: 0.5, -1: 0.5}))
        assert g2.support == (0,)
        assert g2.coeff(0) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("case", range(25))
    def test_hadamard_identity_fuzz(self, case):
        rng = rng_for(case)
        gamma = float(rng.uniform(0.05, 1.95))
        f = random_poly(rng, max_freq=8, max_terms=8)
        d = coeff_distance(gamma2_direct(gamma, f), gamma2_hadamard(gamma, f))
        assert d <= 1e-10

    def test_matrix_route_agreement(self):
        for case in range(6):
            rng = rng_for(100 + case)
            n = int(rng.integers(2, 13))
            gamma = float(rng.uniform(0.1, 1.9))
            a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            f = TrigPoly({k + 1: a[k] for k in range(n)})
            r = fbm_matrix(gamma / 2.0, n)
            r2 = hadamard_power(r, 2)
            g1 = carre_du_champ(gamma, f, f)
            g2 = gamma2_direct(gamma, f)
            for x in XS:
                v = a * np.exp(1j * np.arange(1, n + 1) * x)
                assert abs(g1.evaluate(float(x)) - np.vdot(v, r @ v)) <= 1e-10
                assert abs(g2.evaluate(float(x)) - np.vdot(v, r2 @ v)) <= 1e-10

    @given(st.integers(min_value=0, max_value=10**6))
    def test_reality_preserved(self, seed_index):
        rng = rng_for(seed_index)
        gamma = float(rng.uniform(0.1, 1.9))
        w2 = float(rng.uniform(0.0, 2.0))
        f = random_poly(rng, max_freq=6, real=True)
        scale = max(f.max_abs(), 1.0)
        for poly in (carre_du_champ(gamma, f, f),
                     gamma2_direct(gamma, f),
                     gamma2_drift(gamma, w2, f)):
            assert poly.is_real()
            vals = poly.evaluate(XS)
            assert np.max(np.abs(vals.imag)) <= 1e-12 * scale

    def test_positivity_on_grid(self):
        for case in range(8):
            rng = rng_for(200 + case)
            gamma = float(rng.uniform(0.1, 1.9))
            f = random_poly(rng, max_freq=8, real=True)
            norm_sq = sum(abs(v) ** 2 for _, v in f.items())
            vals = gamma2_direct(gamma, f).evaluate(XS).real
            assert vals.min() >= -1e-10 * norm_sq


class TestDrift:
    def test_gradient_of_first_mode(self):
        g = drift_gradient(2.0, TrigPoly({1: 1.0}))
        assert g.coeff(0) == 1.0
        assert g.coeff(2) == -1.0
        assert g.support == (0, 2)

    def test_gradient_of_constant(self):
        assert len(drift_gradient(1.5, TrigPoly({0: 3.0}))) == 0

    def test_gradient_keeps_reality(self):
        for case in range(5):
            rng = rng_for(300 + case)
            f = random_poly(rng, max_freq=6, real=True)
            assert drift_gradient(1.2, f).is_real()

    def test_zero_drift_reduces_to_free(self):
        rng = rng_for(400)
        f = random_poly(rng, max_freq=6)
        assert coeff_distance(gamma2_drift(1.3, 0.0, f), gamma2_direct(1.3, f)) == 0.0

    def test_scalar_shift_identity_at_one(self):
        for case in range(10):
            rng = rng_for(500 + case)
            w2 = float(rng.uniform(0.0, 2.0))
            f = random_poly(rng, max_freq=12, max_terms=8, positive_only=True)
            corr = drift_correction(1.0, w2, f)
            gff = carre_du_champ(1.0, f, f)
            ref = (TrigPoly({k + 1: 0.25 * w2 * v for k, v in gff.items()})
                   + TrigPoly({k - 1: 0.25 * w2 * v for k, v in gff.items()}))
            assert coeff_distance(corr, ref) <= 1e-10

    def test_t_plus_minus_decoupling_at_one(self):
        for case in range(10):
            rng = rng_for(600 + case)
            w2 = float(rng.uniform(0.0, 2.0))
            f = random_poly(rng, max_freq=10, positive_only=True)
            g_neg = TrigPoly({-k: v for k, v in
                              random_poly(rng, max_freq=10, positive_only=True).items()})
            cross = carre_du_champ(1.0, f, drift_gradient(w2, g_neg))
            assert cross.max_abs() <= 1e-12

    def test_cos_ratio_at_one(self):
        f = TrigPoly({1: 0.5, -1: 0.5})
        g2 = gamma2_drift(1.0, 1.0, f)
        g1 = carre_du_champ(1.0, f, f)
        for x in XS:
            ratio = g2.evaluate(float(x)) / g1.evaluate(float(x))
            assert ratio.real == pytest.approx(1.0 + 0.5 * math.cos(x), abs=1e-13)


class TestDriftCorrectionMatrix:
    def test_zero_drift(self):
        d0, dev = drift_correction_matrix(0.0, 5, 1.1)
        assert np.max(np.abs(d0)) == 0.0
        assert dev == 0.0

    def test_diagonal_entries(self):
        w2, x = 1.4, 0.7
        d0, _ = drift_correction_matrix(w2, 6, x)
        for k in range(6):
            assert d0[k, k].real == pytest.approx(0.5 * w2 * (k + 1) * math.cos(x),
                                                  abs=1e-13)

    @pytest.mark.parametrize("case", range(5))
    def test_scalar_identity(self, case):
        rng = rng_for(700 + case)
        w2 = float(rng.uniform(0.0, 2.0))
        x = float(rng.uniform(0.0, 2.0 * np.pi))
        _, dev = drift_correction_matrix(w2, 6, x)
        assert dev <= 1e-12


class TestClosedFormRatios:
    def test_cauchy_is_constant(self):
        for x in XS:
            assert single_mode_ratio(1.0, 3, float(x)) == pytest.approx(3.0, abs=1e-14)

    def test_half_index_at_origin(self):
        a = alpha_coeff(0.5)
        assert single_mode_ratio(0.5, 1, 0.0) == pytest.approx(
            (1 + a * a) / (1 + a), abs=1e-15
        )

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 1.3, 1.7])
    def test_oracle_agreement(self, gamma):
        xs = 2.0 * np.pi * np.arange(100) / 100
        for n in (1, 2):
            f = TrigPoly({n: 0.5, -n: 0.5})
            g2 = gamma2_direct(gamma, f)
            g1 = carre_du_champ(gamma, f, f)
            for x in xs:
                v = g2.evaluate(float(x)) / g1.evaluate(float(x))
                assert abs(single_mode_ratio(gamma, n, float(x)) - v) <= 1e-10

    def test_drift_ratio_cauchy(self):
        for w2 in (0.5, 1.9):
            vals = [drift_single_mode_ratio(1.0, w2, float(x)) for x in XS]
            assert min(vals) == pytest.approx(1.0 - 0.5 * w2, abs=1e-12)
            assert vals[32] == pytest.approx(1.0 - 0.5 * w2, abs=1e-15)  # x = pi

    def test_drift_ratio_zero_drift(self):
        for x in XS:
            assert drift_single_mode_ratio(1.3, 0.0, float(x)) == pytest.approx(
                single_mode_ratio(1.3, 1, float(x)), abs=1e-14
            )

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 1.3, 1.7])
    @pytest.mark.parametrize("w2", [0.0, 0.5, 1.5])
    def test_drift_oracle_agreement(self, gamma, w2):
        xs = 2.0 * np.pi * np.arange(100) / 100
        f = TrigPoly({1: 0.5, -1: 0.5})
        g2 = gamma2_drift(gamma, w2, f)
        g1 = carre_du_champ(gamma, f, f)
        for x in xs:
            v = g2.evaluate(float(x)) / g1.evaluate(float(x))
            assert abs(drift_single_mode_ratio(gamma, w2, float(x)) - v) <= 1e-10


def test_dump_pointfield_csv():
    buf = io.StringIO()
    dump_pointfield_csv(TrigPoly({1: 1.0}), [0.0, math.pi], buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "x,re,im"
    assert lines[1].startswith("0,1,")
    assert len(lines) == 3
