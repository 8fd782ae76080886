"""Fourier coefficients, partial sums, Bessel/Parseval bookkeeping and synthesis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    AliasingError,
    CoefficientSequence,
    SampledGrid,
    TorusError,
    TorusFunction,
    TorusGrid,
    TrigPolynomial,
    check_grid,
    dft_coefficients,
    lp_norm,
    sample_norm,
    synthesize_on_grid,
)


def fourier_coefficients(f: TorusFunction, N: int, grid: TorusGrid | None = None,
                         method: str = "auto") -> CoefficientSequence:
    """a_n(f) = int f chi^{-n} dsigma for n = -N..N.

    ``method="auto"`` uses the closed form when the function has one and the
    trapezoid rule otherwise; ``method="quadrature"`` forces the grid sum.
    """
    if N < 0:
        raise TorusError("N must be nonnegative")
    if method not in ("auto", "quadrature"):
        raise TorusError(f"unknown method {method!r}")
    if isinstance(f, SampledGrid):
        if grid is not None:
            check_grid(f, grid)
        return CoefficientSequence(N, dft_coefficients(f.values, N))
    if method == "auto" and f.closed_form_coefficients:
        return CoefficientSequence(N, f.coefficients(N))
    if grid is None:
        raise TorusError("quadrature coefficients need a grid")
    return CoefficientSequence(N, dft_coefficients(f.sample(grid), N))


def coefficient_path(f: TorusFunction, method: str = "auto") -> str:
    if isinstance(f, SampledGrid) or method == "quadrature" or not f.closed_form_coefficients:
        return "quadrature" if f.is_continuous else "approximate"
    return "closed-form"


def symmetric_partial_sum(c: CoefficientSequence, N: int, x):
    """S_N(x) = sum_{n=-N}^{N} c_n e^{inx}."""
    if N < 0 or N > c.half_width:
        raise TorusError(f"N = {N} exceeds available coefficients (half width {c.half_width})")
    n = np.arange(-N, N + 1)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    vals = np.exp(1j * np.outer(x_arr, n)) @ c.window(-N, N)
    return vals if np.ndim(x) else complex(vals[0])


def asymmetric_sum(c: CoefficientSequence, M: int, N: int) -> complex:
    """sum_{n=-M}^{N} c_n."""
    if M < 0 or N < 0 or M > c.half_width or N > c.half_width:
        raise TorusError(f"range [-{M}, {N}] exceeds half width {c.half_width}")
    return complex(np.sum(c.window(-M, N)))


@dataclass(frozen=True)
class PartialSumReport:
    half_width: int
    value_at_x: complex
    residual_sq: float    # ||f - f_N||_2^2
    norm_sq: float        # ||f||_2^2
    coeff_energy: float   # sum_{|n|<=N} |a_n|^2
    defect: float         # residual_sq - (norm_sq - coeff_energy)
    path: str

    @property
    def bessel_holds(self) -> bool:
        return self.coeff_energy <= self.norm_sq * (1 + 1e-12) + 1e-15


def bessel_parseval_report(f: TorusFunction, N: int, grid: TorusGrid, x: float = 0.0) -> PartialSumReport:
    """Check ||f - f_N||^2 = ||f||^2 - sum |a_n|^2 with f_N the symmetric partial sum.

    ||f - f_N||^2 is measured on the grid, so the defect is at rounding level
    for band-limited inputs and O(1/grid) for step functions.
    """
    if 2 * N + 1 > grid.size:
        raise AliasingError(f"N = {N} is not resolved by grid {grid.size}")
    c = fourier_coefficients(f, N, grid)
    fN = synthesize_on_grid(c.indices, c.values, grid)
    residual = sample_norm(f.sample(grid) - fN, 2) ** 2
    norm_sq = lp_norm(f, 2, grid) ** 2
    energy = c.energy()
    return PartialSumReport(
        half_width=N,
        value_at_x=symmetric_partial_sum(c, N, x),
        residual_sq=residual,
        norm_sq=norm_sq,
        coeff_energy=energy,
        defect=residual - (norm_sq - energy),
        path=coefficient_path(f),
    )


def riesz_fischer_synthesize(c: CoefficientSequence, grid: TorusGrid) -> SampledGrid:
    """Samples of sum c_n e^{inx}; the grid must exceed 2 * half_width."""
    if grid.size <= 2 * c.half_width or c.half_width > grid.max_frequency:
        raise AliasingError(f"grid {grid.size} too small for half width {c.half_width}")
    return SampledGrid(grid, synthesize_on_grid(c.indices, c.values, grid))


def mercer_decay_check(f: TorusFunction, N_max: int, grid: TorusGrid | None = None) -> np.ndarray:
    """Tail profile t_k = max_{k <= |n| <= N_max} |a_n|, k = 1..N_max.

    The tail is read over the finite window up to N_max, so t is nonincreasing
    by construction.
    """
    if N_max < 8:
        raise TorusError("N_max must be at least 8")
    c = fourier_coefficients(f, N_max, grid)
    a = np.abs(c.values)
    m = np.maximum(a[N_max + 1:], a[:N_max][::-1])  # |a_n| vs |a_-n|, n = 1..N_max
    return np.maximum.accumulate(m[::-1])[::-1]


def trig_polynomial_from(c: CoefficientSequence) -> TrigPolynomial:
    return TrigPolynomial.from_sequence(c)
