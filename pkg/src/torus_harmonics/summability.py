"""Cesaro (Fejer) and Abel (Poisson) means with convergence diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .analysis import fourier_coefficients
from .core import (
    AliasingError,
    SampledGrid,
    TorusError,
    TorusFunction,
    TorusGrid,
    sample_norm,
    synthesize_on_grid,
)

ABEL_CUTOFF = 1e-16
ABEL_BAND_SLACK = 1e-12
METHODS = ("cesaro", "abel", "raw-partial-sum")


def cesaro_weights(n: int, half_width: int) -> np.ndarray:
    """1 - |k|/n for |k| < n, zero beyond, on k = -half_width..half_width."""
    k = np.arange(-half_width, half_width + 1)
    return np.clip(1 - np.abs(k) / n, 0.0, None)


def abel_half_width(r: float) -> int:
    """Smallest K with r^K below the cutoff (0 for r = 0)."""
    if r == 0:
        return 0
    return int(math.ceil(math.log(ABEL_CUTOFF) / math.log(r)))


def _check_r(r):
    if not 0 <= r < 1:
        raise TorusError(f"Abel means need 0 <= r < 1, got {r}")


def _weighted(f: TorusFunction, method: str, param, grid: TorusGrid | None, band: int | None = None):
    """(indices, weighted coefficients) of the requested mean.

    ``band`` caps the Abel degree when the dropped weights are below
    ABEL_BAND_SLACK; otherwise the full cutoff degree is kept.
    """
    if method == "cesaro":
        if param < 1:
            raise TorusError("Cesaro means need n >= 1")
        K = int(param) - 1
        w = cesaro_weights(param, K)
    elif method == "abel":
        _check_r(param)
        K = abel_half_width(param)
        if band is not None and K > band and param ** (band + 1) < ABEL_BAND_SLACK:
            K = band
        w = param ** np.abs(np.arange(-K, K + 1)).astype(float)
    elif method == "raw-partial-sum":
        K = int(param)
        w = np.ones(2 * K + 1)
    else:
        raise TorusError(f"unknown method {method!r}")
    c = fourier_coefficients(f, K, grid)
    return c.indices, c.values * w


def mean_on_grid(f: TorusFunction, method: str, param, grid: TorusGrid) -> SampledGrid:
    idx, vals = _weighted(f, method, param, grid, band=grid.max_frequency)
    if idx.size and idx[-1] > grid.max_frequency:
        raise AliasingError(f"grid {grid.size} does not resolve degree {idx[-1]}")
    return SampledGrid(grid, synthesize_on_grid(idx, vals, grid))


def mean_at(f: TorusFunction, method: str, param, x, grid: TorusGrid | None = None):
    """Value of the mean at arbitrary points (direct series evaluation)."""
    idx, vals = _weighted(f, method, param, grid)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.array([np.sum(vals * np.exp(1j * idx * xi)) for xi in xa])
    return out if np.ndim(x) else complex(out[0])


def cesaro_mean(f: TorusFunction, n: int, grid: TorusGrid) -> SampledGrid:
    """K_n * f, i.e. coefficients damped by 1 - |k|/n."""
    return mean_on_grid(f, "cesaro", n, grid)


def abel_mean(f: TorusFunction, r: float, grid: TorusGrid) -> SampledGrid:
    """P_r * f, i.e. coefficients damped by r^|k| (dropped below 1e-16)."""
    _check_r(r)
    return mean_on_grid(f, "abel", r, grid)


def fejer_average_of_partial_sums(f: TorusFunction, n: int, grid: TorusGrid) -> np.ndarray:
    """(1/n) sum_{j<n} S_j(f) on the grid, summed term by term (cross-check path)."""
    c = fourier_coefficients(f, n - 1, grid)
    total = np.zeros(grid.size, dtype=complex)
    for j in range(n):
        part = c.truncate(j)
        total += synthesize_on_grid(part.indices, part.values, grid)
    return total / n


@dataclass(frozen=True)
class ConvergenceReport:
    method: str
    norm: str                # "sup" | "lp(p)" | "pointwise(x)"
    schedule: tuple
    errors: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = np.asarray(self.errors, dtype=float)
        if e.shape != (len(self.schedule),) or not np.all(np.isfinite(e)):
            raise TorusError("errors must be finite and match the schedule")
        object.__setattr__(self, "errors", e)

    @property
    def final(self) -> float:
        return float(self.errors[-1])

    def decreased(self, atol: float = 1e-12) -> bool:
        """Last error no larger than the first (strictly smaller unless both are at rounding level)."""
        first, last = self.errors[0], self.errors[-1]
        return bool(last < first or last <= atol)

    def trend_ok(self, jitter: float = 0.05, atol: float = 1e-12) -> bool:
        """Each step may rise by at most ``jitter`` relative to the previous error."""
        e = self.errors
        return bool(np.all(e[1:] <= e[:-1] * (1 + jitter) + atol))

    def rows(self):
        return [(p, float(e)) for p, e in zip(self.schedule, self.errors)]


def _family_method(family: str) -> str:
    if family in ("fejer", "cesaro"):
        return "cesaro"
    if family in ("poisson", "abel"):
        return "abel"
    raise TorusError(f"unknown family {family!r}")


def jump_midpoint_check(f: TorusFunction, x: float, family: str, schedule: Sequence,
                        grid: TorusGrid | None = None) -> ConvergenceReport:
    """|mean(x) - (f(x-) + f(x+))/2| along the schedule.

    Needs one-sided limits, so sampled functions are rejected.
    """
    left, right = f.one_sided_limits(x)
    mid = (left + right) / 2
    method = _family_method(family)
    errs = [abs(mean_at(f, method, p, x, grid) - mid) for p in schedule]
    return ConvergenceReport(method, f"pointwise({x})", tuple(schedule), np.array(errs))


def lebesgue_point_convergence(f: TorusFunction, x: float, L: complex, schedule: Sequence[int],
                               grid: TorusGrid | None = None) -> ConvergenceReport:
    """|K_n * f(x) - L| per n; the Lebesgue-point hypothesis is the caller's."""
    errs = [abs(mean_at(f, "cesaro", n, x, grid) - L) for n in schedule]
    return ConvergenceReport("cesaro", f"pointwise({x})", tuple(schedule), np.array(errs))


def norm_convergence_report(f: TorusFunction, norm, method: str, schedule: Sequence,
                            grid: TorusGrid) -> ConvergenceReport:
    """||mean - f|| along the schedule; ``norm`` is "sup" or p in [1, inf).

    Sup mode is refused for discontinuous step functions.
    """
    if method not in METHODS:
        raise TorusError(f"unknown method {method!r}")
    if norm == "sup" or (not isinstance(norm, str) and math.isinf(norm)):
        if not f.is_continuous:
            raise TorusError("uniform convergence fails for discontinuous f; sup mode rejected")
        p, label = math.inf, "sup"
    else:
        p = float(norm)
        if not 1 <= p < math.inf:
            raise TorusError("p must lie in [1, inf)")
        label = f"lp({p:g})"
    fs = f.sample(grid)
    errs = [sample_norm(mean_on_grid(f, method, s, grid).values - fs, p) for s in schedule]
    return ConvergenceReport(method, label, tuple(schedule), np.array(errs))
