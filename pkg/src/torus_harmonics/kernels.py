"""Dirichlet, Fejer and Poisson kernels, Lebesgue constants, approximate identities.

All kernels are densities with respect to dsigma = dx / 2pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .core import (
    TWO_PI,
    NamedClosedForm,
    PiecewiseConstant,
    TorusError,
    TorusGrid,
    TrigPolynomial,
    reduce_angle,
)

SINGULAR_RADIUS = 1e-8
FAMILIES = ("dirichlet", "fejer", "poisson", "tailed")


@dataclass(frozen=True)
class KernelSpec:
    family: str
    n: int | None = None
    r: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise TorusError(f"unknown kernel family {self.family!r}")
        if self.family == "poisson":
            if self.r is None or not 0 < self.r < 1:
                raise TorusError(f"Poisson kernel needs 0 < r < 1, got {self.r}")
        else:
            low = 0 if self.family == "dirichlet" else 1
            if self.n is None or int(self.n) != self.n or self.n < low:
                raise TorusError(f"{self.family} kernel needs integer n >= {low}, got {self.n}")

    @classmethod
    def dirichlet(cls, n):
        return cls("dirichlet", n=n)

    @classmethod
    def fejer(cls, n):
        return cls("fejer", n=n)

    @classmethod
    def poisson(cls, r):
        return cls("poisson", r=r)

    @classmethod
    def tailed(cls, n):
        return cls("tailed", n=n)

    @property
    def label(self) -> str:
        return f"{self.family}({self.r if self.family == 'poisson' else self.n})"

    def as_function(self):
        """The kernel as a TorusFunction with closed-form coefficients."""
        if self.family == "poisson":
            return NamedClosedForm("poisson_kernel", {"r": self.r})
        if self.family == "tailed":
            return tailed_identity_kernel(self.n)
        return NamedClosedForm(f"{self.family}_kernel", {"n": self.n})


def dirichlet(n: int, x):
    """D_n(x) = sin((n + 1/2) x) / sin(x / 2), with D_n(0) = 2n + 1."""
    return kernel_value(KernelSpec.dirichlet(n), x)


def fejer(n: int, x):
    """K_n(x) = (1/n) (sin(n x / 2) / sin(x / 2))^2, with K_n(0) = n."""
    return kernel_value(KernelSpec.fejer(n), x)


def poisson(r: float, x):
    """P_r(x) = (1 - r^2) / (1 - 2 r cos x + r^2)."""
    return kernel_value(KernelSpec.poisson(r), x)


def kernel_value(k: KernelSpec, x):
    xr = np.atleast_1d(reduce_angle(x))
    if k.family == "poisson":
        r = k.r
        v = (1 - r * r) / (1 - 2 * r * np.cos(xr) + r * r)
    elif k.family == "tailed":
        v = tailed_identity_kernel(k.n).evaluate(xr).real
    else:
        s = np.sin(xr / 2)
        small = np.abs(s) < SINGULAR_RADIUS
        safe = np.where(small, 1.0, s)
        if k.family == "dirichlet":
            v = np.where(small, 2.0 * k.n + 1, np.sin((k.n + 0.5) * xr) / safe)
        else:
            v = np.where(small, float(k.n), (np.sin(k.n * xr / 2) / safe) ** 2 / k.n)
    return v if np.ndim(x) else float(v[0])


def fejer_majorant(n: int, x):
    """Bell-shaped majorant 2 pi^2 n / (1 + n^2 x^2) of K_n on [-pi, pi]."""
    if n < 1:
        raise TorusError("majorant needs n >= 1")
    x = np.asarray(x, dtype=float)
    v = 2 * math.pi**2 * n / (1 + (n * x) ** 2)
    return v if v.ndim else float(v)


# ---------------------------------------------------------------------------
# Lebesgue constants

_GAUSS_ORDER = 24


@lru_cache(maxsize=None)
def _gauss_legendre(order: int):
    return np.polynomial.legendre.leggauss(order)


def lebesgue_constant(n: int) -> float:
    """L_n = int |D_n| dsigma.

    Gauss-Legendre on each cell between consecutive zeros j pi / (n + 1/2) of
    D_n in [0, pi], so the integrand is smooth on every cell.
    """
    if n < 0 or int(n) != n:
        raise TorusError("n must be a nonnegative integer")
    if n == 0:
        return 1.0
    edges = np.append(np.arange(n + 1) * math.pi / (n + 0.5), math.pi)
    a, b = edges[:-1], edges[1:]
    t, w = _gauss_legendre(_GAUSS_ORDER)
    half = (b - a) / 2
    x = (a + b)[:, None] / 2 + half[:, None] * t[None, :]
    vals = np.abs(np.sin((n + 0.5) * x) / np.sin(x / 2))
    return float(np.sum(half * (vals @ w)) / math.pi)


def lebesgue_constant_closed_form(n: int) -> float:
    """Fejer's finite-sum formula, used as an independent cross-check.

    L_n = 1/(2n+1) + (2/pi) sum_{k=1}^{n} tan(pi k / (2n+1)) / k
    """
    k = np.arange(1, n + 1)
    return float(1 / (2 * n + 1) + 2 / math.pi * np.sum(np.tan(math.pi * k / (2 * n + 1)) / k))


@dataclass(frozen=True)
class LebesgueFit:
    ns: np.ndarray
    values: np.ndarray
    slope: float
    intercept: float

    @property
    def monotone(self) -> bool:
        return bool(np.all(np.diff(self.values) > 0))


def lebesgue_fit(ns: Iterable[int]) -> LebesgueFit:
    """Least-squares line L_n ~ slope * ln n + intercept."""
    ns = np.asarray(list(ns), dtype=int)
    vals = np.array([lebesgue_constant(int(n)) for n in ns])
    slope, intercept = np.polyfit(np.log(ns), vals, 1)
    return LebesgueFit(ns, vals, float(slope), float(intercept))


# ---------------------------------------------------------------------------
# approximate identities

@dataclass(frozen=True)
class ApproximateIdentityReport:
    kernel: KernelSpec
    nonnegativity_violation: float
    mass_defect: float
    tail_mass: dict = field(default_factory=dict)
    l1_norm: float = 1.0
    note: str = ""


def tail_mass(k: KernelSpec, delta: float) -> float:
    """int_{delta < |x| <= pi} k dsigma, in closed form."""
    if not 0 < delta < math.pi:
        raise TorusError(f"delta must lie in (0, pi), got {delta}")
    if k.family == "poisson":
        r = k.r
        return float(1 - 2 / math.pi * math.atan((1 + r) / (1 - r) * math.tan(delta / 2)))
    if k.family == "tailed":
        return _tailed_tail_mass(k.n, delta)
    # even trig polynomial sum_k w_k e^{ikx}: (1/pi)[(pi - delta) - 2 sum w_k sin(k delta)/k]
    kk = np.arange(1, (k.n if k.family == "dirichlet" else k.n - 1) + 1)
    w = np.ones(kk.size) if k.family == "dirichlet" else 1 - kk / k.n
    return float(((math.pi - delta) - 2 * np.sum(w * np.sin(kk * delta) / kk)) / math.pi)


def approximate_identity_report(family: Sequence[KernelSpec], deltas: Sequence[float],
                                grid: TorusGrid) -> list[ApproximateIdentityReport]:
    """Nonnegativity, unit mass and tail masses for each kernel in the family."""
    for d in deltas:
        if not 0 < d < math.pi:
            raise TorusError(f"delta must lie in (0, pi), got {d}")
    out = []
    for k in family:
        vals = kernel_value(k, grid.nodes)
        mass = tailed_mass(k.n) if k.family == "tailed" else float(np.mean(vals))
        l1 = lebesgue_constant(k.n) if k.family == "dirichlet" else mass
        note = ""
        if k.family == "dirichlet":
            note = "L1 norm equals the Lebesgue constant, which grows like (4/pi^2) ln n: not an approximate identity"
        out.append(ApproximateIdentityReport(
            kernel=k,
            nonnegativity_violation=float(max(0.0, -np.min(vals))),
            mass_defect=abs(mass - 1.0),
            tail_mass={d: tail_mass(k, d) for d in deltas},
            l1_norm=l1,
            note=note,
        ))
    return out


def poisson_schedule(count: int) -> list[float]:
    """r_k = 1 - 2^-k, k = 1..count."""
    return [1 - 2.0**-k for k in range(1, count + 1)]


def dyadic_schedule(start: int, stop: int) -> list[int]:
    """Powers of two from start to stop inclusive."""
    out, n = [], start
    while n <= stop:
        out.append(n)
        n *= 2
    return out


def kernel_relation_check(n: int, grid: TorusGrid) -> float:
    """max over nodes of |K_{2n+1} - D_n^2 / (2n+1)|."""
    if grid.size < 16 * (n + 1):
        raise TorusError(f"grid {grid.size} too coarse for n = {n}; need >= {16 * (n + 1)}")
    x = grid.nodes
    return float(np.max(np.abs(fejer(2 * n + 1, x) - dirichlet(n, x) ** 2 / (2 * n + 1))))


# ---------------------------------------------------------------------------
# the tailed approximate identity and the unbounded function it defeats
#
# Kernel (density w.r.t. dsigma, even): pi (n - sqrt n) on [0, 1/n),
# pi sqrt n on [pi - 1/n, pi), zero elsewhere.  Function (even): sqrt m on
# [pi - 1/m, pi - 1/(m+1)), m >= 1, zero on [0, pi - 1).

def tailed_identity_kernel(n: int) -> PiecewiseConstant:
    if n < 1:
        raise TorusError("n must be >= 1")
    rn = math.sqrt(n)
    lo, hi = 1.0 / n, math.pi - 1.0 / n
    if lo >= hi:
        raise TorusError("pieces overlap")
    body, tail = math.pi * (n - rn), math.pi * rn
    breaks = [-math.pi, -math.pi + 1.0 / n, -1.0 / n, 1.0 / n, hi]
    values = [tail, 0.0, body, 0.0, tail]
    return PiecewiseConstant(breaks, values)


def tailed_mass(n: int) -> float:
    """int e_n dsigma from the piece widths."""
    k = tailed_identity_kernel(n)
    starts, ends = k.intervals()
    return float(np.sum(k.values.real * (ends - starts)) / TWO_PI)


def _tailed_tail_mass(n: int, delta: float) -> float:
    k = tailed_identity_kernel(n)
    starts, ends = k.intervals()
    # |x| > delta: clip each piece against [-pi, -delta) and (delta, pi)
    total = 0.0
    for a, b, v in zip(starts, ends, k.values.real):
        for lo, hi in ((-math.pi, -delta), (delta, math.pi)):
            total += v * max(0.0, min(b, hi) - max(a, lo))
    return total / TWO_PI


def tailed_function(pieces: int) -> PiecewiseConstant:
    """The even unbounded L^1 function, truncated after ``pieces`` steps per side."""
    breaks, values = [-math.pi], [0.0]
    for m in range(pieces, 0, -1):
        breaks.append(-math.pi + 1.0 / (m + 1))
        values.append(math.sqrt(m))
    breaks.append(-math.pi + 1.0)
    values.append(0.0)
    for m in range(1, pieces + 1):
        breaks.append(math.pi - 1.0 / m)
        values.append(math.sqrt(m))
    breaks.append(math.pi - 1.0 / (pieces + 1))
    values.append(0.0)
    return PiecewiseConstant(breaks, values)


def _series_tail(start: int, terms: int = 1 << 16) -> float:
    """sum_{m >= start} 1 / (sqrt(m) (m + 1)).

    Explicit sum of ``terms`` terms; the remainder from M on is
    int_M^inf g + g(M)/2 - g'(M)/12 (Euler-Maclaurin), with
    int_M^inf g = 2 arctan(1/sqrt(M)).
    """
    m = np.arange(start, start + terms, dtype=float)
    M = float(start + terms)
    head = math.fsum(1.0 / (np.sqrt(m) * (m + 1)))
    g = 1 / (math.sqrt(M) * (M + 1))
    dg = -0.5 * M**-1.5 / (M + 1) - M**-0.5 / (M + 1) ** 2
    return head + 2 * math.atan(1 / math.sqrt(M)) + g / 2 - dg / 12


@dataclass(frozen=True)
class TailedCounterexample:
    n: int
    value: float          # (e_n * f)(0) = int e_n f dsigma
    kernel_mass: float    # int e_n dsigma
    kernel_tail: float    # int_{|x| > 1/n} e_n dsigma = 1/sqrt(n)
    f_l1_norm: float      # int |f| dsigma


def tailed_identity_counterexample(n: int) -> TailedCounterexample:
    """(e_n * f)(0) for the tailed identity; at least 1 for every n.

    Against dsigma the kernel's right tail meets the steps of f with m >= n, so
    the value is sqrt(n) * sum_{m >= n} sqrt(m) (1/m - 1/(m+1)).
    """
    if n < 1:
        raise TorusError("n must be >= 1")
    value = math.sqrt(n) * _series_tail(n)
    return TailedCounterexample(
        n=n,
        value=value,
        kernel_mass=tailed_mass(n),
        kernel_tail=_tailed_tail_mass(n, 1.0 / n),
        f_l1_norm=_series_tail(1) / math.pi,
    )


def fejer_polynomial(n: int) -> TrigPolynomial:
    k = np.arange(-(n - 1), n)
    return TrigPolynomial(zip(k.tolist(), 1 - np.abs(k) / n))


def dirichlet_polynomial(n: int) -> TrigPolynomial:
    return TrigPolynomial({k: 1.0 for k in range(-n, n + 1)})
