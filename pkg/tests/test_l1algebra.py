import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from torus_harmonics.core import TorusError, TorusGrid
from torus_harmonics.l1algebra import (
    L1Sequence,
    bounded_powers_test,
    four_norm_lemma_check,
    homomorphism_apply,
    l1_convolve,
    l1_power,
    parseval_power_check,
    residual,
    symbol_probe,
    wiener_inverse,
)

E = L1Sequence.atom
DELTA = L1Sequence.delta()

seqs = st.builds(
    L1Sequence,
    st.integers(-10, 10),
    st.lists(st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False),
             min_size=1, max_size=8),
)


class TestSequence:
    def test_trims_zero_fringe(self):
        s = L1Sequence(-2, [0, 0, 1, 2, 0])
        assert (s.lo, s.hi, s.values.tolist()) == (0, 1, [1, 2])
        assert L1Sequence(5, [0, 0]).is_zero

    def test_read_only(self):
        with pytest.raises(ValueError):
            DELTA.values[0] = 2

    def test_norms(self):
        s = L1Sequence(0, [3, -4j])
        assert s.norm(1) == 7 and s.norm(2) == 5 and s.norm(math.inf) == 4

    def test_from_mapping(self):
        s = L1Sequence.from_mapping({-1: 2.0, 2: 1j})
        assert s.as_dict() == {-1: 2, 0: 0, 1: 0, 2: 1j} and s[5] == 0


class TestConvolve:
    @given(seqs)
    def test_delta_identity(self, s):
        assert l1_convolve(DELTA, s).equals(s) and l1_convolve(s, DELTA).equals(s)

    def test_basis(self):
        assert l1_convolve(E(3), E(-5)).equals(E(-2))

    def test_binomial(self):
        a = L1Sequence(0, [1, 1])
        assert l1_convolve(a, a).values.tolist() == [1, 2, 1]

    @given(seqs, seqs)
    def test_submultiplicative(self, a, b):
        assert l1_convolve(a, b).norm() <= a.norm() * b.norm() * (1 + 1e-12) + 1e-12

    @given(seqs, seqs)
    def test_symbol_is_multiplicative(self, a, b):
        g = TorusGrid(64)
        lhs = symbol_probe(l1_convolve(a, b), g).values
        rhs = symbol_probe(a, g).values * symbol_probe(b, g).values
        assert np.allclose(lhs, rhs, atol=1e-12 * max(1.0, a.norm() * b.norm()))

    def test_seeded_pairs_submultiplicative(self):
        rng = np.random.default_rng(1939)
        for _ in range(50):
            a = L1Sequence(int(rng.integers(-5, 5)), rng.standard_normal(6) + 1j * rng.standard_normal(6))
            b = L1Sequence(int(rng.integers(-5, 5)), rng.standard_normal(9))
            assert l1_convolve(a, b).norm() <= a.norm() * b.norm()


class TestPower:
    def test_unimodular_atom(self):
        w = np.exp(0.3j)
        r = l1_power(E(2, w), 7)
        assert r.lo == 14 and r[14] == pytest.approx(w**7) and r.norm() == pytest.approx(1)

    def test_delta_negative(self):
        assert l1_power(DELTA, -5).equals(DELTA)

    def test_binomial_profile(self):
        r = l1_power(L1Sequence(0, [0.5, 0.5]), 10)
        assert np.allclose(r.values, [comb(10, k) / 2**10 for k in range(11)], atol=1e-15)
        assert r.norm() == pytest.approx(1)

    @given(st.integers(-64, 64), st.integers(-3, 3), st.floats(0, 2 * math.pi))
    def test_atom_power_law(self, n, p, t):
        w = complex(math.cos(t), math.sin(t))
        r = l1_power(E(p, w), n)
        assert r.lo == n * p and r.values.size == 1
        assert r[n * p] == pytest.approx(w**n, abs=1e-12)

    def test_negative_uses_inverse(self):
        mu = L1Sequence(0, [2, 1])
        a = l1_power(mu, -3)
        b = l1_power(wiener_inverse(mu, 64), 3)
        assert a.equals(b, atol=1e-14)
        assert residual(l1_power(mu, 3), a) < 1e-9

    def test_zero_atom_not_invertible(self):
        with pytest.raises(TorusError):
            l1_power(L1Sequence(3, [0.0]), -1)


class TestSymbol:
    def test_delta(self):
        p = symbol_probe(DELTA, TorusGrid(16))
        assert np.allclose(p.values, 1) and p.min_modulus == 1

    def test_vanishing(self):
        p = symbol_probe(L1Sequence(0, [1, 1]))
        assert p.min_modulus < 1e-12 and p.argmin == pytest.approx(-math.pi)

    def test_two_plus(self):
        assert symbol_probe(L1Sequence(0, [2, 1])).min_modulus == pytest.approx(1)


class TestWienerInverse:
    def test_delta(self):
        assert wiener_inverse(DELTA, 8).equals(DELTA, atol=1e-15)

    def test_geometric(self):
        nu = wiener_inverse(L1Sequence(0, [2, 1]), 64)
        assert residual(L1Sequence(0, [2, 1]), nu) <= 1e-10
        for k in range(11):
            assert nu[k] == pytest.approx(0.5 * (-0.5) ** k, abs=1e-12)
        for k in range(-10, 0):
            assert abs(nu[k]) < 1e-12

    def test_vanishing_symbol(self):
        with pytest.raises(TorusError, match="vanishes"):
            wiener_inverse(L1Sequence(0, [1, 1]), 64)

    def test_truncation_too_short(self):
        with pytest.raises(TorusError, match="truncation"):
            wiener_inverse(L1Sequence(0, [1, 0.9]), 8)

    def test_grid_too_coarse(self):
        with pytest.raises(TorusError):
            wiener_inverse(L1Sequence(0, [2, 1]), 64, grid=TorusGrid(256))

    @given(st.complex_numbers(max_magnitude=0.5, allow_nan=False), st.complex_numbers(max_magnitude=0.5, allow_nan=False))
    def test_residual_decays(self, b, c):
        mu = L1Sequence(-1, [c, 2.0, b])  # |m| >= 2 - |b| - |c| >= 1
        r16 = residual(mu, wiener_inverse(mu, 16, tol=1.0))
        r64 = residual(mu, wiener_inverse(mu, 64, tol=1.0))
        assert r64 <= r16 or r64 < 1e-14  # both at rounding level


class TestFourNorm:
    def test_delta(self):
        v = four_norm_lemma_check(DELTA, 1)
        assert v.l4 == pytest.approx(1) and v.holds

    def test_pair_equality(self):
        v = four_norm_lemma_check(L1Sequence(0, [0.5, 0.5]), math.sqrt(2))
        assert v.l4 == pytest.approx(2**-0.25) and v.holds

    def test_flat_sixteen(self):
        v = four_norm_lemma_check(L1Sequence(0, np.ones(16)), 4)
        assert v.scale == pytest.approx(0.25) and v.l1 == pytest.approx(4)
        assert v.l4 == pytest.approx(0.5) and v.bound == pytest.approx(0.5) and v.holds

    @given(seqs)
    def test_lemma_property(self, f):
        if f.is_zero:
            return
        K = f.norm(1) / f.norm(2)
        assert four_norm_lemma_check(f, K * (1 + 1e-9)).holds

    def test_errors(self):
        with pytest.raises(TorusError):
            four_norm_lemma_check(L1Sequence(0, []), 1)
        with pytest.raises(TorusError):
            four_norm_lemma_check(L1Sequence(0, np.ones(16)), 3)


class TestBoundedPowers:
    def test_characterized(self):
        v = bounded_powers_test(E(3, 1j), 8, 2)
        assert (v.kind, v.p, v.w) == ("characterized", 3, 1j)
        assert all(norm == pytest.approx(1) for _, norm in v.norms)
        assert {n for n, _ in v.norms} == set(range(-8, 9)) - {0}

    def test_not_invertible(self):
        v = bounded_powers_test(L1Sequence(0, [0.5, 0.5]), 10, 2)
        assert v.kind == "not-invertible"
        assert all(norm == pytest.approx(1) for _, norm in v.norms)
        assert "two-sided" in v.note

    def test_unbounded(self):
        v = bounded_powers_test(L1Sequence(0, [0.9, 0.4]), 32, 10)
        assert v.kind == "unbounded" and v.exceed_at is not None and v.exceed_at < 0
        assert symbol_probe(L1Sequence(0, [0.9, 0.4])).min_modulus == pytest.approx(0.5)

    def test_json(self):
        d = bounded_powers_test(E(1, -1), 2, 2).to_json()
        assert d["kind"] == "characterized" and d["w"] == [-1, 0] and len(d["norms"]) == 4

    def test_n_max(self):
        with pytest.raises(TorusError):
            bounded_powers_test(DELTA, 1, 2)


class TestHomomorphism:
    def test_delta(self):
        assert homomorphism_apply(DELTA, 5, 1j).equals(DELTA)

    def test_basis(self):
        assert homomorphism_apply(E(1), 2, 1j).equals(E(2, 1j))

    def test_reflection(self):
        rho = L1Sequence(1, [1, 1])
        out = homomorphism_apply(rho, -1, 1)
        assert out.equals(L1Sequence(-2, [1, 1]))
        lhs = homomorphism_apply(l1_convolve(rho, rho), -1, 1)
        assert lhs.equals(l1_convolve(out, out))

    @given(seqs, seqs, st.integers(-3, 3), st.floats(0, 2 * math.pi))
    def test_multiplicative(self, a, b, p, t):
        w = complex(math.cos(t), math.sin(t))
        lhs = homomorphism_apply(l1_convolve(a, b), p, w)
        rhs = l1_convolve(homomorphism_apply(a, p, w), homomorphism_apply(b, p, w))
        scale = max(1.0, a.norm() * b.norm())
        assert lhs.equals(rhs, atol=1e-11 * scale)

    def test_non_unimodular(self):
        with pytest.raises(TorusError):
            homomorphism_apply(DELTA, 1, 2.0)


@given(st.lists(st.floats(-1, 1), min_size=2, max_size=5), st.integers(0, 6))
def test_parseval_powers(vals, n):
    mu = L1Sequence(0, vals)
    scale = max(1.0, mu.norm() ** (2 * n))
    assert parseval_power_check(mu, n) <= 1e-10 * scale
