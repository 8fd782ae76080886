"""Fourier-Stieltjes coefficients, Wiener's atom test, Herglotz reconstruction and
Poisson extension of measures on T."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import toeplitz

from .analysis import fourier_coefficients
from .core import (
    CoefficientSequence,
    ContractViolation,
    TorusError,
    TorusGrid,
    TorusMeasure,
    TrigPolynomial,
    check_grid,
    sample_norm,
    synthesize_on_grid,
)
from .summability import abel_half_width

PSD_TOL = 1e-10


def stieltjes_coefficients(mu: TorusMeasure, N: int, grid: TorusGrid | None = None,
                           check: bool = True) -> CoefficientSequence:
    """mu_hat(n) = int e^{-inx} dmu for n = -N..N."""
    if N < 0:
        raise TorusError("N must be nonnegative")
    n = np.arange(-N, N + 1)
    vals = np.zeros(n.size, dtype=complex)
    if mu.atoms:
        vals += np.exp(-1j * np.outer(n, mu.atom_angles)) @ mu.atom_masses
    if mu.density is not None:
        if grid is not None:
            check_grid(mu.density, grid)
        vals += fourier_coefficients(mu.density, N, grid).values
    out = CoefficientSequence(N, vals)
    if check:
        tv = mu.total_variation(grid)
        worst = float(np.max(np.abs(vals))) if vals.size else 0.0
        if worst > tv * (1 + 1e-9) + 1e-12:
            raise ContractViolation(f"|mu_hat(n)| = {worst} exceeds ||mu|| = {tv}")
    return out


def wiener_mass_estimate(mu_hat: CoefficientSequence, N: int) -> float:
    """(1/(2N+1)) sum_{|n|<=N} |mu_hat(n)|^2; tends to the sum of squared atom masses."""
    if N < 0 or N > mu_hat.half_width:
        raise TorusError(f"N = {N} exceeds available coefficients ({mu_hat.half_width})")
    w = mu_hat.window(-N, N)
    return float(np.sum(np.abs(w) ** 2) / (2 * N + 1))


@dataclass(frozen=True)
class ContinuityVerdict:
    continuous: bool
    atom_mass_sq: float
    trend: tuple

    def to_json(self) -> dict:
        return {"continuous": self.continuous, "atom_mass_sq": self.atom_mass_sq,
                "trend": [list(t) for t in self.trend]}


def continuity_test(mu_hat: CoefficientSequence, schedule: Sequence[int], tol: float) -> ContinuityVerdict:
    """Continuous iff the final Wiener estimate is below tol."""
    schedule = list(schedule)
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise TorusError("schedule must be increasing")
    if schedule[-1] > mu_hat.half_width:
        raise TorusError(f"schedule reaches {schedule[-1]} but only {mu_hat.half_width} coefficients are known")
    trend = tuple((N, wiener_mass_estimate(mu_hat, N)) for N in schedule)
    final = trend[-1][1]
    return ContinuityVerdict(final < tol, final, trend)


# ---------------------------------------------------------------------------
# positive definite sequences

@dataclass(frozen=True, eq=False)
class PositiveDefiniteSequence:
    """Candidate positive definite sequence u_n, n = -N..N (Hermitian, |u_n| <= u_0)."""

    u: CoefficientSequence
    atol: float = 1e-12

    def __post_init__(self):
        v, N = self.u.values, self.u.half_width
        if np.max(np.abs(v - np.conj(v[::-1]))) > self.atol * max(1.0, np.max(np.abs(v))):
            raise TorusError("sequence is not Hermitian: u_{-n} != conj(u_n)")
        u0 = v[N]
        if abs(u0.imag) > self.atol or u0.real < -self.atol:
            raise TorusError("u_0 must be real and nonnegative")

    @classmethod
    def from_rule(cls, rule, half_width: int) -> "PositiveDefiniteSequence":
        return cls(CoefficientSequence.from_function(rule, half_width))

    @property
    def necessary_conditions(self) -> bool:
        v, N = self.u.values, self.u.half_width
        return bool(np.all(np.abs(v) <= v[N].real * (1 + 1e-12) + self.atol))


def toeplitz_section(u: PositiveDefiniteSequence | CoefficientSequence, N: int) -> np.ndarray:
    """T[m, n] = u_{m-n}, 0 <= m, n <= N."""
    c = u.u if isinstance(u, PositiveDefiniteSequence) else u
    if N > c.half_width:
        raise TorusError(f"N = {N} exceeds half width {c.half_width}")
    col = c.window(0, N)                 # u_0, u_1, ..., u_N  (T[m, 0] = u_m)
    row = c.window(-N, 0)[::-1]          # u_0, u_-1, ..., u_-N (T[0, n] = u_-n)
    return toeplitz(col, row)


@dataclass(frozen=True)
class PSDVerdict:
    positive_semidefinite: bool
    min_eigenvalue: float
    size: int


def positive_definite_check(u: PositiveDefiniteSequence, N: int, tol: float = PSD_TOL) -> PSDVerdict:
    """Smallest eigenvalue of the (N+1)x(N+1) Toeplitz section against -tol."""
    if not isinstance(u, PositiveDefiniteSequence):
        u = PositiveDefiniteSequence(u)
    lam = float(np.linalg.eigvalsh(toeplitz_section(u, N))[0])
    return PSDVerdict(lam >= -tol, lam, N + 1)


def herglotz_weights(N: int) -> np.ndarray:
    """1 - |k|/(N+1) on k = -N..N."""
    k = np.arange(-N, N + 1)
    return 1 - np.abs(k) / (N + 1)


def herglotz_reconstruct(u: PositiveDefiniteSequence, N: int, grid: TorusGrid | None = None,
                         tol: float = PSD_TOL) -> TrigPolynomial:
    """Fejer-weighted density sum_{|k|<=N} (1 - |k|/(N+1)) u_k e^{ikx}.

    A nonnegative trig polynomial whenever u is positive definite; its mass
    is u_0 and its coefficients tend to u_k as N grows.  With ``grid`` the
    nonnegativity is verified on the nodes.
    """
    verdict = positive_definite_check(u, N, tol)
    if not verdict.positive_semidefinite:
        raise TorusError(f"sequence is not positive definite at N = {N} (min eigenvalue {verdict.min_eigenvalue:.3e})")
    c = u.u.truncate(N)
    sigma = TrigPolynomial(zip(c.indices.tolist(), c.values * herglotz_weights(N)))
    if grid is not None:
        low = float(np.min(sigma.sample(grid).real))
        if low < -tol * max(1.0, abs(c[0])):
            raise ContractViolation(f"reconstructed density dips to {low}")
    return sigma


# ---------------------------------------------------------------------------
# harmonic extension

@dataclass(frozen=True, eq=False)
class HarmonicExtensionProbe:
    r: float
    A_r: float
    values: np.ndarray = field(repr=False)


def _poisson_of_measure(mu: TorusMeasure, r: float, grid: TorusGrid) -> np.ndarray:
    x = grid.nodes
    vals = np.zeros(grid.size, dtype=complex)
    for theta, mass in mu.atoms:
        vals += mass * (1 - r * r) / (1 - 2 * r * np.cos(x - theta) + r * r)
    if mu.density is not None:
        K = min(abel_half_width(r), grid.max_frequency)
        c = fourier_coefficients(mu.density, K, grid)
        vals += synthesize_on_grid(c.indices, c.values * r ** np.abs(c.indices).astype(float), grid)
    return vals


def poisson_extension_probe(mu: TorusMeasure, rs: Sequence[float], grid: TorusGrid,
                            check: bool = True, slack: float = 1e-9) -> list[HarmonicExtensionProbe]:
    """Samples of P_r * mu on the circle of radius r and A_r = int |P_r * mu| dsigma.

    ``check`` enforces A_r nondecreasing in r and A_r <= ||mu||, up to
    ``slack`` plus the grid's aliasing error for P_r.
    """
    rs = list(rs)
    if any(not 0 <= r < 1 for r in rs) or any(b <= a for a, b in zip(rs, rs[1:])):
        raise TorusError("r-schedule must be increasing in [0, 1)")
    probes = []
    for r in rs:
        vals = _poisson_of_measure(mu, r, grid)
        probes.append(HarmonicExtensionProbe(r, sample_norm(vals, 1), vals))
    if check:
        tv = mu.total_variation(grid)
        A = np.array([p.A_r for p in probes])
        # grid means of P_r alias with weight r^G: the mean of P_r is (1 + r^G)/(1 - r^G)
        alias = np.array([2 * r**grid.size / (1 - r**grid.size) for r in rs])
        allow = (slack + alias) * max(1.0, tv)
        if np.any(np.diff(A) < -(allow[1:] + allow[:-1])):
            raise ContractViolation(f"A_r decreased along the schedule: {A}")
        if np.any(A > tv + allow):
            raise ContractViolation(f"A_r exceeds ||mu|| = {tv}: {A}")
    return probes


def harmonic_development(a: CoefficientSequence, r: float, theta):
    """sum a_n r^|n| e^{in theta}, dropping terms with r^|n| below 1e-16."""
    if not 0 <= r < 1:
        raise TorusError(f"r must satisfy 0 <= r < 1, got {r}")
    K = min(a.half_width, abel_half_width(r))
    n = np.arange(-K, K + 1)
    w = a.window(-K, K) * r ** np.abs(n).astype(float)
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    vals = np.exp(1j * np.outer(th, n)) @ w
    return vals if np.ndim(theta) else complex(vals[0])


def weak_star_pairing(h: TrigPolynomial, mu: TorusMeasure, r: float, grid: TorusGrid) -> tuple[float, float]:
    """(|int h (P_r*mu) dsigma - int h dmu|, bound (1-r) ||mu|| sum |n| |h_hat(n)|)."""
    d = h.degree
    mu_hat = stieltjes_coefficients(mu, d, grid, check=False)
    n = h.indices
    # int h dmu = sum_n h_n mu_hat(-n); the Poisson side damps by r^|n|
    paired = h.coeffs * np.array([mu_hat[-k] for k in n])
    exact = np.sum(paired)
    smoothed = np.mean(h.sample(grid) * _poisson_of_measure(mu, r, grid))
    bound = (1 - r) * mu.total_variation(grid) * float(np.sum(np.abs(n) * np.abs(h.coeffs)))
    return float(abs(smoothed - exact)), bound


def singular_decay(mu: TorusMeasure, x: float, rs: Sequence[float]) -> np.ndarray:
    """P_r * mu(x) for an atomic mu at a point away from the atoms."""
    if not mu.is_atomic:
        raise TorusError("singular decay is demonstrated on atomic measures only")
    out = []
    for r in rs:
        out.append(sum(m * (1 - r * r) / (1 - 2 * r * math.cos(x - t) + r * r) for t, m in mu.atoms))
    return np.array(out, dtype=complex)
