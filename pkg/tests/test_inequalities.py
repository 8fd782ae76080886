import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from torus_harmonics.core import (
    CoefficientSequence,
    NamedClosedForm,
    TorusError,
    TorusGrid,
    TrigPolynomial,
    character,
    sign_function,
)
from torus_harmonics.inequalities import (
    HY_SEED,
    dual_synthesis,
    forbid_range_probe,
    hausdorff_young_check,
    hausdorff_young_sweep,
    interpolation_endpoint_report,
)

GRID = TorusGrid(512)


@pytest.mark.parametrize("p", [1.0, 4 / 3, 1.5, 2.0])
def test_single_mode_equality(p):
    r = hausdorff_young_check(character(5), p, GRID)
    assert r.ratio == pytest.approx(1, abs=1e-13)


def test_one_plus_character_p1():
    l1 = quad(lambda x: abs(1 + np.exp(1j * x)), -math.pi, math.pi, epsabs=1e-14)[0] / (2 * math.pi)
    assert l1 == pytest.approx(4 / math.pi, rel=1e-12)
    r = hausdorff_young_check(TrigPolynomial({0: 1.0, 1: 1.0}), 1, GRID)
    assert r.q == math.inf and r.lhs == pytest.approx(1)
    # |1 + e^{ix}| has a kink at pi, so grid quadrature is only O(G^-2) accurate
    assert r.rhs == pytest.approx(4 / math.pi, rel=1e-5)


def test_seeded_sweep():
    ratios = hausdorff_young_sweep(100, [1.0, 4 / 3, 1.5, 2.0], TorusGrid(128), seed=HY_SEED)
    assert ratios.shape == (100, 4)
    assert np.all(ratios <= 1 + 1e-10)
    assert np.allclose(ratios[:, 3], 1, atol=1e-12)  # Parseval


@given(st.dictionaries(st.integers(-30, 30), st.complex_numbers(max_magnitude=5, allow_nan=False),
                       min_size=1, max_size=10).filter(lambda d: any(abs(v) > 1e-6 for v in d.values())),
       st.floats(1.0, 2.0))
def test_ratio_at_most_one(coeffs, p):
    assert hausdorff_young_check(TrigPolynomial(coeffs), p, TorusGrid(128)).ratio <= 1 + 1e-10


def test_p_out_of_range():
    for p in (0.9, 2.5):
        with pytest.raises(TorusError):
            hausdorff_young_check(character(1), p, GRID)


class TestDualSynthesis:
    def test_delta(self):
        d = dual_synthesis(CoefficientSequence(0, np.array([1.0])), 2, GRID)
        assert np.allclose(d.f.values, 1) and d.f_norm_q == pytest.approx(1) and d.c_norm_p == 1

    def test_harmonic_coefficients(self):
        c = CoefficientSequence.from_function(lambda n: np.where(n > 0, 1 / np.maximum(n, 1), 0.0), 64)
        d = dual_synthesis(c, 2, GRID)
        zeta = sum(1 / k**2 for k in range(1, 65))
        assert d.f_norm_q**2 == pytest.approx(zeta, rel=1e-12)
        assert d.recovery_error < 1e-13

    def test_power_decay(self):
        c = CoefficientSequence.from_function(lambda n: np.where(n > 0, np.maximum(n, 1) ** -0.8, 0.0), 128)
        d = dual_synthesis(c, 1.5, TorusGrid(1024))
        assert d.q == pytest.approx(3) and d.holds
        ref = sum(k ** -1.2 for k in range(1, 129)) ** (1 / 1.5)
        assert d.c_norm_p == pytest.approx(ref, rel=1e-12)

    def test_p_range(self):
        for p in (1.0, 2.1):
            with pytest.raises(TorusError):
                dual_synthesis(CoefficientSequence(0, np.array([1.0])), p, GRID)


class TestEndpoints:
    def test_character(self):
        r = interpolation_endpoint_report(character(1), GRID)
        assert [r.coeff_sup, r.f_l1, r.coeff_l2, r.f_l2] == pytest.approx([1, 1, 1, 1])

    def test_sign(self):
        r = interpolation_endpoint_report(sign_function(), TorusGrid(4096))
        assert r.coeff_sup == pytest.approx(2 / math.pi, rel=1e-5)
        assert r.f_l1 == pytest.approx(1) and r.slack_1 > 0 and r.slack_2 >= 0

    def test_fejer_equality(self):
        r = interpolation_endpoint_report(NamedClosedForm("fejer_kernel", {"n": 8}), GRID)
        assert r.coeff_sup == pytest.approx(1) and r.f_l1 == pytest.approx(1)
        assert r.slack_1 == pytest.approx(0, abs=1e-12)


def test_forbidden_range_witness():
    w = forbid_range_probe(4, GRID)
    assert w is not None
    assert w.report.lhs > w.report.rhs
    assert w.f.degree == 1  # the 1 + e^{ix} candidate is tried first
    with pytest.raises(TorusError):
        forbid_range_probe(2, GRID)
