import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from torus_harmonics.core import (
    AliasingError,
    CoefficientSequence,
    GridMismatchError,
    NamedClosedForm,
    PiecewiseConstant,
    SampledGrid,
    Tolerance,
    TorusError,
    TorusGrid,
    TorusMeasure,
    TrigPolynomial,
    character,
    dft_coefficients,
    geometric_pole,
    indicator,
    lp_norm,
    lq_sequence_norm,
    merge_atoms,
    reduce_angle,
    sign_function,
)


def quad_coefficient(f, n, points=None):
    """Oracle: a_n = (1/2pi) int f(x) e^{-inx} dx by adaptive quadrature."""
    re = quad(lambda x: (f(x) * np.exp(-1j * n * x)).real, -math.pi, math.pi, points=points, limit=400)[0]
    im = quad(lambda x: (f(x) * np.exp(-1j * n * x)).imag, -math.pi, math.pi, points=points, limit=400)[0]
    return complex(re, im) / (2 * math.pi)


class TestGrid:
    def test_nodes_start_at_minus_pi(self):
        g = TorusGrid(8)
        assert g.nodes[0] == -math.pi
        assert np.allclose(np.diff(g.nodes), 2 * math.pi / 8)
        assert g.max_frequency == 3

    @pytest.mark.parametrize("size", [2, 5, 7, 0, -4, 4.5])
    def test_rejects_bad_sizes(self, size):
        with pytest.raises(TorusError):
            TorusGrid(size)

    def test_dft_refuses_aliasing(self):
        with pytest.raises(AliasingError):
            dft_coefficients(np.ones(8), 4)


class TestReduceAngle:
    def test_pi_maps_to_minus_pi(self):
        assert reduce_angle(math.pi) == -math.pi

    @given(st.floats(-1e3, 1e3))
    def test_range_and_congruence(self, x):
        r = reduce_angle(x)
        assert -math.pi <= r < math.pi
        k = (x - r) / (2 * math.pi)
        assert abs(k - round(k)) < 1e-9


class TestTolerance:
    def test_bound_combines_parts(self):
        t = Tolerance(1e-3, 1e-2)
        assert t.bound(10.0) == pytest.approx(0.101)
        assert t.close(1.0, 1.005)
        assert not t.close(1.0, 1.2)

    def test_rejects_zero(self):
        with pytest.raises(TorusError):
            Tolerance(0.0, 0.0)


class TestTrigPolynomial:
    def test_character_values(self):
        x = np.linspace(-3, 3, 7)
        assert np.allclose(character(3)(x), np.exp(3j * x))

    def test_duplicate_indices_rejected(self):
        with pytest.raises(TorusError):
            TrigPolynomial([(1, 1.0), (1, 2.0)])

    @given(st.dictionaries(st.integers(-10, 10), st.complex_numbers(max_magnitude=5, allow_nan=False), min_size=1))
    def test_fft_sampling_matches_direct_sum(self, terms):
        p = TrigPolynomial(terms)
        g = TorusGrid(32)
        direct = np.array([sum(c * np.exp(1j * n * x) for n, c in terms.items()) for x in g.nodes])
        assert np.allclose(p.sample(g), direct, atol=1e-10)

    @given(st.dictionaries(st.integers(-6, 6), st.complex_numbers(max_magnitude=5, allow_nan=False), min_size=1),
           st.floats(-10, 10))
    def test_translate_is_shift(self, terms, h):
        p = TrigPolynomial(terms)
        x = np.linspace(-3, 3, 5)
        assert np.allclose(p.translate(h)(x), p(x - h), atol=1e-9)


class TestPiecewise:
    def test_sign_coefficients(self):
        # odd n: -2i/(pi n); even n: 0
        c = sign_function().coefficients(7)
        for n in range(-7, 8):
            want = -2j / (math.pi * n) if n % 2 else 0
            assert abs(c[n + 7] - want) < 1e-15

    @pytest.mark.parametrize("n", [-3, -1, 0, 1, 2, 5])
    def test_indicator_coefficients_against_quadrature(self, n):
        f = indicator(-0.4, 1.3)
        got = f.coefficients(5)[n + 5]
        assert abs(got - quad_coefficient(f, n, points=[-0.4, 1.3])) < 1e-12

    def test_indicator_values_and_right_continuity(self):
        f = indicator(0.0, math.pi)
        assert f(0.0) == 1 and f(-1e-12) == 0 and f(3.0) == 1
        assert f.one_sided_limits(0.0) == (0, 1)
        assert f.one_sided_limits(1.0) == (1, 1)

    def test_wrapping_last_piece(self):
        f = PiecewiseConstant([-1.0, 1.0], [2.0, 5.0])
        assert f(-3.0) == 5 and f(0.0) == 2 and f(3.0) == 5
        assert f.lp_norm(1) == pytest.approx((2 * 2 + 5 * (2 * math.pi - 2)) / (2 * math.pi))

    def test_breakpoints_validated(self):
        with pytest.raises(TorusError):
            PiecewiseConstant([0.0, -1.0], [1, 2])
        with pytest.raises(TorusError):
            PiecewiseConstant([0.0, math.pi], [1, 2])

    def test_from_pieces_requires_full_period(self):
        with pytest.raises(TorusError):
            PiecewiseConstant.from_pieces([(-math.pi, 0.0, 1.0)])

    @given(st.floats(-4, 4))
    def test_translate_matches_shifted_evaluation(self, h):
        f = indicator(-0.5, 1.0)
        x = np.array([-2.9, -0.7, 0.2, 0.9, 2.2])
        # avoid points landing on a breakpoint after the shift
        xs = reduce_angle(x - h)
        if np.min(np.abs(np.subtract.outer(xs, np.array([-0.5, 1.0])))) < 1e-9:
            return
        assert np.array_equal(f.translate(h)(x), f(x - h))

    def test_lp_norms_exact(self):
        f = sign_function()
        for p in (1, 2, 3.5, math.inf):
            assert lp_norm(f, p, TorusGrid(8)) == pytest.approx(1.0, abs=1e-15)
        g = indicator(0.0, math.pi / 2)
        assert lp_norm(g, 2, TorusGrid(8)) == pytest.approx(0.5)

    def test_continuity_flag(self):
        assert not sign_function().is_continuous
        assert PiecewiseConstant([-1.0], [3.0]).is_continuous


class TestNamedForms:
    def test_geometric_pole_coefficients(self):
        f = geometric_pole(0.5)
        c = f.coefficients(4)
        for n in range(-4, 5):
            assert abs(c[n + 4] - quad_coefficient(f, n)) < 1e-12

    @pytest.mark.parametrize("name,params", [("poisson_kernel", {"r": 0.7}), ("fejer_kernel", {"n": 5}),
                                             ("dirichlet_kernel", {"n": 3})])
    def test_kernel_coefficients_against_quadrature(self, name, params):
        f = NamedClosedForm(name, params)
        c = f.coefficients(6)
        for n in range(-6, 7):
            assert abs(c[n + 6] - quad_coefficient(f, n)) < 1e-10

    def test_translate_and_scale_exact(self):
        f = geometric_pole(0.3).translate(0.7).scaled(2.0)
        x = np.array([0.1, -2.0])
        assert np.allclose(f(x), 2 / (1 - 0.3 * np.exp(1j * (x - 0.7))))
        c = f.coefficients(3)
        assert c[3 + 2] == pytest.approx(2 * 0.09 * np.exp(-2j * 0.7))

    def test_parameter_validation(self):
        with pytest.raises(TorusError):
            geometric_pole(1.0)
        with pytest.raises(TorusError):
            NamedClosedForm("fejer_kernel", {"n": 0})
        with pytest.raises(TorusError):
            NamedClosedForm("nope", {})


class TestSampledGrid:
    def test_grid_mismatch(self):
        s = SampledGrid(TorusGrid(8), np.arange(8))
        with pytest.raises(GridMismatchError):
            s.sample(TorusGrid(16))
        with pytest.raises(GridMismatchError):
            SampledGrid(TorusGrid(8), np.arange(7))

    def test_whole_step_translation_only(self):
        g = TorusGrid(8)
        s = SampledGrid(g, np.arange(8))
        assert np.array_equal(s.translate(g.spacing).values, np.roll(np.arange(8), 1))
        with pytest.raises(TorusError):
            s.translate(0.1)

    def test_one_sided_limits_unknown(self):
        with pytest.raises(TorusError):
            SampledGrid(TorusGrid(4), np.zeros(4)).one_sided_limits(0.0)


class TestCoefficientSequence:
    def test_window_and_getitem(self):
        c = CoefficientSequence.from_mapping({-2: 1.0, 1: 3j})
        assert c.half_width == 2
        assert c[1] == 3j and c[0] == 0
        assert np.array_equal(c.window(-2, -1), [1, 0])
        with pytest.raises(IndexError):
            c[3]

    def test_read_only(self):
        c = CoefficientSequence(1, [1, 2, 3])
        with pytest.raises(ValueError):
            c.values[0] = 5

    def test_norms(self):
        c = CoefficientSequence(1, [3, 0, 4j])
        assert lq_sequence_norm(c, 2) == pytest.approx(5)
        assert lq_sequence_norm(c, 1) == pytest.approx(7)
        assert lq_sequence_norm(c, math.inf) == 4


class TestMeasures:
    def test_atoms_merge_cyclically(self):
        atoms = merge_atoms([(math.pi, 0.5), (-math.pi, 0.25), (1.0, 0.0), (0.2, 1j)])
        assert atoms == ((-math.pi, 0.75), (0.2, 1j))

    def test_total_variation(self):
        mu = TorusMeasure(((0.0, 0.5), (1.0, -0.25j)), sign_function())
        assert mu.total_variation() == pytest.approx(1.75)
        assert not mu.is_atomic
        assert TorusMeasure.point(2.0).is_atomic
