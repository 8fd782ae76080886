import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from torus_harmonics.analysis import fourier_coefficients
from torus_harmonics.core import (
    NamedClosedForm,
    TorusError,
    TorusGrid,
    TrigPolynomial,
    character,
    geometric_pole,
    indicator,
    sign_function,
)
from torus_harmonics.summability import (
    ABEL_CUTOFF,
    abel_half_width,
    abel_mean,
    cesaro_mean,
    cesaro_weights,
    fejer_average_of_partial_sums,
    jump_midpoint_check,
    lebesgue_point_convergence,
    mean_at,
    norm_convergence_report,
)

GRID = TorusGrid(256)


def test_cesaro_of_character():
    got = cesaro_mean(character(1), 4, GRID)
    assert np.allclose(got.values, 0.75 * np.exp(1j * GRID.nodes), atol=1e-15)


def test_cesaro_weights_shape():
    w = cesaro_weights(4, 5)
    assert w.tolist() == [0, 0, 0.25, 0.5, 0.75, 1, 0.75, 0.5, 0.25, 0, 0]


def test_abel_half_width():
    assert abel_half_width(0) == 0
    K = abel_half_width(0.9)
    assert 0.9**K < ABEL_CUTOFF <= 0.9 ** (K - 1)


@given(st.integers(1, 40))
def test_cesaro_coefficients_damped_exactly(n):
    f = geometric_pole(0.6)
    got = fourier_coefficients(cesaro_mean(f, n, GRID), 60)
    ref = fourier_coefficients(f, 60)
    w = np.clip(1 - np.abs(ref.indices) / n, 0, None)
    assert np.allclose(got.values, w * ref.values, atol=1e-13)


@given(st.floats(0.0, 0.95))
def test_abel_coefficients_damped(r):
    f = TrigPolynomial({-3: 1.0, 0: 2.0, 5: 1j})
    got = fourier_coefficients(abel_mean(f, r, TorusGrid(2048)), 8)
    for k, a in ((-3, 1.0), (0, 2.0), (5, 1j)):
        assert got[k] == pytest.approx(r ** abs(k) * a, abs=1e-13)


def test_abel_band_cap():
    # 0.75^128 is below the band slack, so the 256 grid suffices; 0.875^128 is not
    assert np.allclose(abel_mean(character(1), 0.75, GRID).values, 0.75 * np.exp(1j * GRID.nodes))
    with pytest.raises(TorusError):
        abel_mean(character(1), 0.875, GRID)


def test_abel_rejects_r_one():
    with pytest.raises(TorusError):
        abel_mean(character(1), 1.0, GRID)


def test_sign_methods_agree_at_lipschitz_point():
    f = sign_function()
    x = math.pi / 2
    assert abs(mean_at(f, "cesaro", 4096, x) - 1) < 0.01
    assert abs(mean_at(f, "abel", 0.99, x) - 1) < 0.02
    assert abs(mean_at(f, "raw-partial-sum", 4096, x) - 1) < 0.02


def test_jump_midpoint_at_zero():
    for fam, sched in (("fejer", [8, 64, 512]), ("poisson", [0.5, 0.9, 0.99])):
        rep = jump_midpoint_check(sign_function(), 0.0, fam, sched)
        assert np.all(rep.errors < 1e-15)


def test_jump_midpoint_indicator():
    rep = jump_midpoint_check(indicator(0.0, math.pi), 0.0, "fejer", [16, 256, 4096])
    assert rep.final < 1e-12


def test_lebesgue_point():
    rep = lebesgue_point_convergence(indicator(0.0, math.pi), math.pi / 2, 1.0, [64, 256, 2048])
    assert rep.final <= 0.01 and rep.decreased()


def test_sup_error_for_polynomial():
    coeffs = {-3: 0.5, -1: 1.0, 0: 2.0, 2: 0.25, 3: 1.5}
    f = TrigPolynomial(coeffs)
    n = 5
    rep = norm_convergence_report(f, "sup", "cesaro", [n], GRID)
    expect = sum(abs(k) / n * abs(a) for k, a in coeffs.items())
    assert rep.final == pytest.approx(expect, rel=1e-12)


def test_l1_fejer_convergence_for_sign():
    sched = [8, 16, 32, 64, 128, 256, 512, 1024]
    rep = norm_convergence_report(sign_function(), 1, "cesaro", sched, TorusGrid(4096))
    assert rep.decreased() and rep.trend_ok() and rep.final < 0.02


def test_sup_rejected_for_jumps():
    with pytest.raises(TorusError):
        norm_convergence_report(sign_function(), "sup", "raw-partial-sum", [8], GRID)
    with pytest.raises(TorusError):
        norm_convergence_report(sign_function(), math.inf, "cesaro", [8], GRID)


def test_average_of_partial_sums_cross_check():
    f = NamedClosedForm("poisson_kernel", {"r": 0.7})
    for n in (1, 5, 20):
        a = fejer_average_of_partial_sums(f, n, GRID)
        assert np.allclose(a, cesaro_mean(f, n, GRID).values, atol=1e-10)


def test_unknown_method():
    with pytest.raises(TorusError):
        norm_convergence_report(sign_function(), 1, "borel", [2], GRID)
