import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from torus_harmonics.analysis import (
    asymmetric_sum,
    bessel_parseval_report,
    coefficient_path,
    fourier_coefficients,
    mercer_decay_check,
    riesz_fischer_synthesize,
    symmetric_partial_sum,
    trig_polynomial_from,
)
from torus_harmonics.core import (
    AliasingError,
    CoefficientSequence,
    SampledGrid,
    TorusError,
    TorusGrid,
    TrigPolynomial,
    character,
    constant,
    geometric_pole,
    sign_function,
)

GRID = TorusGrid(1024)


def sign_coeffs(N):
    return fourier_coefficients(sign_function(), N)


class TestCoefficients:
    def test_character_orthogonality(self):
        c = fourier_coefficients(character(3), 5)
        want = np.zeros(11)
        want[3 + 5] = 1
        assert np.allclose(c.values, want, atol=1e-15)

    def test_geometric_pole(self):
        c = fourier_coefficients(geometric_pole(0.5), 4)
        assert np.allclose(c.window(0, 4), [1, 0.5, 0.25, 0.125, 0.0625])
        assert np.all(c.window(-4, -1) == 0)

    def test_geometric_pole_quadrature_path_agrees(self):
        c = fourier_coefficients(geometric_pole(0.5), 4, GRID, method="quadrature")
        assert np.allclose(c.values, fourier_coefficients(geometric_pole(0.5), 4).values, atol=1e-14)

    def test_sign_function(self):
        c = sign_coeffs(5)
        for n in range(-5, 6):
            want = -2j / (math.pi * n) if n % 2 else 0
            assert abs(c[n] - want) < 1e-15

    def test_sampled_uses_dft(self):
        s = SampledGrid(GRID, character(-2).sample(GRID))
        c = fourier_coefficients(s, 3)
        assert abs(c[-2] - 1) < 1e-13 and abs(c[2]) < 1e-13

    def test_quadrature_needs_grid(self):
        with pytest.raises(TorusError):
            fourier_coefficients(geometric_pole(0.5), 4, method="quadrature")

    def test_paths(self):
        assert coefficient_path(sign_function()) == "closed-form"
        assert coefficient_path(geometric_pole(0.2), "quadrature") == "quadrature"
        assert coefficient_path(sign_function(), "quadrature") == "approximate"


class TestPartialSums:
    def test_delta(self):
        c = CoefficientSequence.from_mapping({0: 5.0}, 3)
        assert symmetric_partial_sum(c, 3, 1.0) == 5

    def test_cosine(self):
        c = CoefficientSequence.from_mapping({-1: 1.0, 1: 1.0})
        assert symmetric_partial_sum(c, 1, 0.0) == pytest.approx(2)

    def test_sign_symmetric_sums_vanish(self):
        c = sign_coeffs(300)
        assert max(abs(symmetric_partial_sum(c, N, 0.0)) for N in range(301)) < 1e-13

    def test_sign_asymmetric_sums(self):
        c = sign_coeffs(64)
        assert abs(asymmetric_sum(c, 7, 7)) < 1e-15
        k = 4
        s = asymmetric_sum(c, 4 * k, 2 * k)
        assert abs(s) > 2 / math.pi * k / (4 * k - 1)
        # oracle: the symmetric part cancels, leaving odd n in [-4k, -2k) with |a_n| = 2/(pi |n|)
        oracle = 2 / math.pi * sum(1 / n for n in range(2 * k + 1, 4 * k + 1, 2))
        assert abs(s) == pytest.approx(oracle, rel=1e-14)

    def test_zero_sequence(self):
        c = CoefficientSequence(4, np.zeros(9))
        assert asymmetric_sum(c, 3, 2) == 0

    def test_range_checked(self):
        with pytest.raises(TorusError):
            asymmetric_sum(sign_coeffs(3), 4, 1)
        with pytest.raises(TorusError):
            symmetric_partial_sum(sign_coeffs(3), 4, 0.0)


class TestBesselParseval:
    def test_character(self):
        r = bessel_parseval_report(character(1), 1, GRID)
        assert r.coeff_energy == pytest.approx(1) and r.norm_sq == pytest.approx(1)
        assert abs(r.defect) < 1e-14

    def test_sign_n3(self):
        r = bessel_parseval_report(sign_function(), 3, GRID)
        # |a_n| = 2/(pi |n|) for odd n: 2 (4/pi^2 + 4/(9 pi^2))
        assert r.coeff_energy == pytest.approx(80 / (9 * math.pi**2), rel=1e-14)
        assert r.bessel_holds and r.norm_sq == 1
        assert abs(r.defect) < 1e-4

    def test_zero(self):
        r = bessel_parseval_report(constant(0.0), 3, GRID)
        assert r.coeff_energy == r.norm_sq == r.residual_sq == 0

    def test_aliasing(self):
        with pytest.raises(AliasingError):
            bessel_parseval_report(sign_function(), 10, TorusGrid(16))

    @given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False), min_size=1, max_size=15))
    def test_parseval_for_polynomials(self, coeffs):
        N = len(coeffs) // 2
        p = TrigPolynomial(zip(range(-N, -N + len(coeffs)), coeffs))
        r = bessel_parseval_report(p, N + 1, TorusGrid(64))
        assert abs(r.defect) < 1e-10
        assert r.coeff_energy == pytest.approx(sum(abs(c) ** 2 for c in coeffs), abs=1e-10)


class TestRieszFischer:
    def test_delta(self):
        f = riesz_fischer_synthesize(CoefficientSequence(0, [1.0]), TorusGrid(16))
        assert np.allclose(f.values, 1)

    def test_poisson(self):
        c = CoefficientSequence.from_function(lambda n: 0.5 ** np.abs(n).astype(float), 64)
        f = riesz_fischer_synthesize(c, GRID)
        x = GRID.nodes
        closed = 0.75 / (1.25 - np.cos(x))
        assert np.max(np.abs(f.values - closed)) < 1e-9

    def test_sign_truncation_at_half_pi(self):
        c = sign_coeffs(101)
        f = riesz_fischer_synthesize(c, GRID)
        assert abs(f(math.pi / 2) - 1) < 0.02
        # brute-force partial sum at the same point
        brute = sum(c[n] * np.exp(1j * n * math.pi / 2) for n in range(-101, 102))
        assert abs(f(math.pi / 2) - brute) < 1e-12

    def test_aliasing(self):
        with pytest.raises(AliasingError):
            riesz_fischer_synthesize(CoefficientSequence(8, np.ones(17)), TorusGrid(16))

    @given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False), min_size=1, max_size=21))
    def test_round_trip(self, vals):
        if len(vals) % 2 == 0:
            vals = vals[:-1]
        c = CoefficientSequence(len(vals) // 2, vals)
        back = fourier_coefficients(riesz_fischer_synthesize(c, TorusGrid(64)), c.half_width)
        assert np.allclose(back.values, c.values, atol=1e-12)


class TestMercer:
    def test_polynomial(self):
        p = TrigPolynomial({-3: 1.0, 1: 2.0, 2: 1j})
        t = mercer_decay_check(p, 10)
        assert np.all(t[3:] == 0) and t[2] == 1

    def test_sign(self):
        t = mercer_decay_check(sign_function(), 99)
        assert t[98] == pytest.approx(2 / (99 * math.pi), rel=1e-13)
        assert np.all(np.diff(t) <= 0)

    def test_geometric(self):
        t = mercer_decay_check(geometric_pole(0.9), 50)
        assert t[49] == pytest.approx(0.9**50, rel=1e-13)

    def test_needs_window(self):
        with pytest.raises(TorusError):
            mercer_decay_check(sign_function(), 5)


def test_trig_polynomial_from_drops_zeros():
    p = trig_polynomial_from(CoefficientSequence.from_mapping({-1: 2.0, 2: 0.0}, 3))
    assert p.indices.tolist() == [-1]
