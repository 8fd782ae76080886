"""Hausdorff-Young on T, its dual synthesis form, and the endpoint norms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import fourier_coefficients, riesz_fischer_synthesize
from .core import (
    CoefficientSequence,
    SampledGrid,
    TorusError,
    TorusFunction,
    TorusGrid,
    TrigPolynomial,
    lp_norm,
    lq_sequence_norm,
)
from .convolution import conjugate_exponent

HY_SEED = 20240531


@dataclass(frozen=True)
class HYReport:
    p: float
    q: float
    lhs: float    # ||f_hat||_q
    rhs: float    # ||f||_p

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else math.nan

    def row(self):
        return (self.p, self.q, self.lhs, self.rhs, self.ratio)


def _coefficients_for(f: TorusFunction, grid: TorusGrid) -> CoefficientSequence:
    if isinstance(f, TrigPolynomial) and f.degree <= grid.max_frequency:
        return fourier_coefficients(f, f.degree)
    return fourier_coefficients(f, grid.max_frequency, grid)


def hausdorff_young_check(f: TorusFunction, p: float, grid: TorusGrid) -> HYReport:
    """||f_hat||_q against ||f||_p for 1 <= p <= 2, q the conjugate exponent.

    Coefficients are taken over the grid's band, so for band-limited f the
    check is the exact discrete inequality.
    """
    if not 1 <= p <= 2:
        raise TorusError(f"Hausdorff-Young needs 1 <= p <= 2, got {p}")
    q = conjugate_exponent(p)
    c = _coefficients_for(f, grid)
    return HYReport(p, q, lq_sequence_norm(c, q), lp_norm(f, p, grid))


def random_trig_polynomial(rng: np.random.Generator, max_degree: int = 32) -> TrigPolynomial:
    """i.i.d. complex Gaussian coefficients on |n| <= d, d uniform in 0..max_degree."""
    d = int(rng.integers(0, max_degree + 1))
    n = np.arange(-d, d + 1)
    c = rng.standard_normal(n.size) + 1j * rng.standard_normal(n.size)
    return TrigPolynomial(zip(n.tolist(), c))


def hausdorff_young_sweep(count: int, ps, grid: TorusGrid, seed: int = HY_SEED,
                          max_degree: int = 32) -> np.ndarray:
    """Ratios for ``count`` seeded random polynomials; shape (count, len(ps))."""
    rng = np.random.default_rng(seed)
    out = np.empty((count, len(ps)))
    for i in range(count):
        f = random_trig_polynomial(rng, max_degree)
        for j, p in enumerate(ps):
            out[i, j] = hausdorff_young_check(f, p, grid).ratio
    return out


@dataclass(frozen=True)
class DualSynthesis:
    f: SampledGrid
    p: float
    q: float
    f_norm_q: float
    c_norm_p: float
    recovery_error: float

    @property
    def holds(self) -> bool:
        return self.f_norm_q <= self.c_norm_p * (1 + 1e-12) + 1e-12


def dual_synthesis(c: CoefficientSequence, p: float, grid: TorusGrid) -> DualSynthesis:
    """f = sum c_k e^{ikx} with ||f||_q <= ||c||_p for 1 < p <= 2."""
    if not 1 < p <= 2:
        raise TorusError(f"dual synthesis needs 1 < p <= 2, got {p}")
    q = conjugate_exponent(p)
    f = riesz_fischer_synthesize(c, grid)
    back = fourier_coefficients(f, c.half_width)
    return DualSynthesis(
        f=f, p=p, q=q,
        f_norm_q=lp_norm(f, q, grid),
        c_norm_p=lq_sequence_norm(c, p),
        recovery_error=float(np.max(np.abs(back.values - c.values))),
    )


@dataclass(frozen=True)
class EndpointReport:
    coeff_sup: float     # ||f_hat||_inf
    f_l1: float          # ||f||_1
    coeff_l2: float      # ||f_hat||_2
    f_l2: float          # ||f||_2

    @property
    def slack_1(self) -> float:
        return self.f_l1 - self.coeff_sup

    @property
    def slack_2(self) -> float:
        return self.f_l2 - self.coeff_l2


def interpolation_endpoint_report(f: TorusFunction, grid: TorusGrid) -> EndpointReport:
    """The (1, inf) and (2, 2) endpoint norms."""
    c = _coefficients_for(f, grid)
    return EndpointReport(
        coeff_sup=lq_sequence_norm(c, math.inf),
        f_l1=lp_norm(f, 1, grid),
        coeff_l2=lq_sequence_norm(c, 2),
        f_l2=lp_norm(f, 2, grid),
    )


@dataclass(frozen=True)
class ForbiddenRangeWitness:
    p: float
    f: TrigPolynomial
    report: HYReport


def forbid_range_probe(p: float, grid: TorusGrid, trials: int = 200, seed: int = HY_SEED,
                       max_degree: int = 8) -> ForbiddenRangeWitness | None:
    """Look for f with ||f_hat||_q > ||f||_p when p > 2.

    Tries 1 + e^{ix} first, then seeded random polynomials.  Returns None when
    no witness turns up; that is not evidence that the inequality holds.
    """
    if p <= 2:
        raise TorusError("the probe targets p > 2")
    q = conjugate_exponent(p)
    rng = np.random.default_rng(seed)
    candidates = [TrigPolynomial({0: 1.0, 1: 1.0})]
    candidates += [random_trig_polynomial(rng, max_degree) for _ in range(trials)]
    for f in candidates:
        c = _coefficients_for(f, grid)
        rep = HYReport(p, q, lq_sequence_norm(c, q), lp_norm(f, p, grid))
        if rep.lhs > rep.rhs * (1 + 1e-9):
            return ForbiddenRangeWitness(p, f, rep)
    return None
