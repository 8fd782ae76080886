"""Plane geometry of numbers: Minkowski lattice-point search, the 2-D Parseval
identity, simultaneous approximation and Diophantine approximation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .core import AliasingError, TorusError

Indicator = Callable[[np.ndarray, np.ndarray], np.ndarray]

MC_SAMPLES = 1_000_000
DET_SLACK = 1e-12  # rounding in ad - bc for unimodular input


class SearchExhausted(TorusError):
    """No nonzero lattice point found inside the search radius."""


@dataclass(frozen=True, eq=False)
class ConvexBody2D:
    """Origin-symmetric convex region given by a vectorized indicator.

    ``indicator(x, y)`` must accept numpy arrays and return a boolean array.
    ``area_stderr`` is zero when the area is exact.
    """

    indicator: Indicator
    bbox: tuple[float, float]
    area: float
    area_stderr: float = 0.0
    name: str = "body"

    def contains(self, x, y) -> np.ndarray:
        return np.asarray(self.indicator(np.asarray(x, float), np.asarray(y, float)), dtype=bool)

    @property
    def guaranteed(self) -> bool:
        """Area exceeds 4 beyond three standard errors."""
        return self.area - 3 * self.area_stderr > 4


def ellipse(a: float, b: float, angle: float = 0.0, closed: bool = True) -> ConvexBody2D:
    """Ellipse with semi-axes a, b rotated by ``angle``."""
    if a <= 0 or b <= 0:
        raise TorusError("semi-axes must be positive")
    c, s = math.cos(angle), math.sin(angle)

    def ind(x, y):
        u = (c * x + s * y) / a
        v = (-s * x + c * y) / b
        q = u * u + v * v
        return q <= 1 if closed else q < 1

    X = math.sqrt((a * c) ** 2 + (b * s) ** 2)
    Y = math.sqrt((a * s) ** 2 + (b * c) ** 2)
    return ConvexBody2D(ind, (X, Y), math.pi * a * b, name=f"ellipse({a:g},{b:g},{angle:g})")


def disk(radius: float, closed: bool = True) -> ConvexBody2D:
    return ellipse(radius, radius, 0.0, closed)


def rectangle(half_width: float, half_height: float, closed: bool = True) -> ConvexBody2D:
    """|x| <= half_width, |y| <= half_height."""
    w, h = half_width, half_height

    def ind(x, y):
        if closed:
            return (np.abs(x) <= w) & (np.abs(y) <= h)
        return (np.abs(x) < w) & (np.abs(y) < h)

    return ConvexBody2D(ind, (w, h), 4 * w * h, name=f"rect({w:g},{h:g})")


def parallelogram(matrix, bounds=(1.0, 1.0), closed: bool = True) -> ConvexBody2D:
    """{v : |(M v)_1| <= s, |(M v)_2| <= t} for an invertible 2x2 M."""
    M = np.asarray(matrix, dtype=float)
    s, t = bounds
    det = float(np.linalg.det(M))
    if det == 0:
        raise TorusError("parallelogram matrix is singular")
    (a, b), (c, d) = M

    def ind(x, y):
        u, v = a * x + b * y, c * x + d * y
        if closed:
            return (np.abs(u) <= s) & (np.abs(v) <= t)
        return (np.abs(u) < s) & (np.abs(v) < t)

    corners = np.linalg.solve(M, np.array([[s, s, -s, -s], [t, -t, t, -t]], dtype=float))
    X, Y = np.max(np.abs(corners), axis=1)
    return ConvexBody2D(ind, (float(X), float(Y)), 4 * s * t / abs(det), name="parallelogram")


def monte_carlo_area(indicator: Indicator, bbox, samples: int = MC_SAMPLES, seed: int = 0,
                     stream: int = 0) -> tuple[float, float]:
    """(estimate, standard error) from uniform samples in the bounding box.

    Philox is counter-based, so ``stream`` picks an independent, reproducible
    substream for concurrent estimates under one seed.
    """
    rng = np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, stream]))
    X, Y = bbox
    x = rng.uniform(-X, X, samples)
    y = rng.uniform(-Y, Y, samples)
    hit = np.asarray(indicator(x, y), dtype=float)
    box = 4 * X * Y
    p = hit.mean()
    return box * p, box * math.sqrt(p * (1 - p) / samples)


def from_indicator(indicator: Indicator, bbox, samples: int = MC_SAMPLES, seed: int = 0,
                   name: str = "body") -> ConvexBody2D:
    area, se = monte_carlo_area(indicator, bbox, samples, seed)
    return ConvexBody2D(indicator, tuple(bbox), area, se, name)


def spot_check(body: ConvexBody2D, trials: int = 2000, seed: int = 0) -> tuple[bool, bool]:
    """(symmetric, midpoint-convex) on random points; probabilistic only."""
    rng = np.random.default_rng(seed)
    X, Y = body.bbox
    x, y = rng.uniform(-X, X, trials), rng.uniform(-Y, Y, trials)
    inside = body.contains(x, y)
    symmetric = bool(np.all(inside == body.contains(-x, -y)))
    xs, ys = x[inside], y[inside]
    if xs.size < 2:
        return symmetric, True
    i, j = rng.integers(0, xs.size, (2, trials))
    convex = bool(np.all(body.contains((xs[i] + xs[j]) / 2, (ys[i] + ys[j]) / 2)))
    return symmetric, convex


# ---------------------------------------------------------------------------
# lattice search

def shell_points(s: int) -> np.ndarray:
    """Integer points with max(|m|, |n|) = s in search order.

    Order: Euclidean length, then the half-plane representative (m > 0, or
    m = 0 and n > 0) before its negative, then descending (m, n).
    """
    if s == 0:
        return np.zeros((1, 2), dtype=np.int64)
    side = np.arange(-s, s + 1)
    inner = np.arange(-s + 1, s)
    m = np.concatenate([np.full(side.size, s), np.full(side.size, -s), inner, inner])
    n = np.concatenate([side, side, np.full(inner.size, s), np.full(inner.size, -s)])
    canonical = (m > 0) | ((m == 0) & (n > 0))
    order = np.lexsort((-n, -m, ~canonical, m * m + n * n))
    return np.stack([m[order], n[order]], axis=1)


@dataclass(frozen=True)
class LatticeHit:
    point: tuple[int, int]
    shell: int


def lattice_search(indicator: Indicator, radius_bound: int, bbox=None) -> LatticeHit | None:
    """First nonzero integer point accepted by the indicator, shell by shell."""
    for s in range(1, int(radius_bound) + 1):
        pts = shell_points(s)
        hits = np.asarray(indicator(pts[:, 0].astype(float), pts[:, 1].astype(float)), dtype=bool)
        if hits.any():
            m, n = (int(v) for v in pts[np.argmax(hits)])
            if bbox is not None and (abs(m) > bbox[0] + 1e-9 or abs(n) > bbox[1] + 1e-9):
                raise TorusError(f"point ({m}, {n}) lies outside the declared bounding box {bbox}")
            if not indicator(np.array([float(-m)]), np.array([float(-n)]))[0]:
                raise TorusError(f"body is not symmetric: ({-m}, {-n}) rejected")
            return LatticeHit((m, n), s)
    return None


def minkowski_search(body: ConvexBody2D, radius_bound: int | None = None) -> LatticeHit | None:
    """Nonzero lattice point in the body, or None when the search radius is exhausted.

    Raises when the area guarantee (area - 3 sigma > 4) holds yet nothing is found.
    """
    need = math.ceil(max(body.bbox))
    R = need if radius_bound is None else radius_bound
    if R < need:
        raise TorusError(f"radius bound {R} smaller than the bounding box extent {need}")
    hit = lattice_search(body.indicator, R, body.bbox)
    if hit is None and body.guaranteed:
        raise SearchExhausted(f"no lattice point in {body.name} of area {body.area} > 4")
    return hit


def boundary_minkowski_search(body: ConvexBody2D, radius_bound: int | None = None) -> LatticeHit | None:
    """Search on a closed body of area exactly 4, where a point lies in the body or on its boundary."""
    need = math.ceil(max(body.bbox))
    return lattice_search(body.indicator, need if radius_bound is None else radius_bound, body.bbox)


@dataclass(frozen=True)
class PairResult:
    m: int
    n: int
    first: float    # |a m + b n|
    second: float   # |c m + d n|


def parallelogram_pair(a: float, b: float, c: float, d: float, k: float,
                       radius_bound: int | None = None) -> PairResult:
    """Integers (m, n) != 0 with |am + bn| <= k and |cm + dn| <= 1/k, given |ad - bc| <= 1.

    A zero determinant makes the region an infinite strip; the search then
    runs to ``radius_bound`` (default 10^4).
    """
    det = a * d - b * c
    if abs(det) > 1 + DET_SLACK:
        raise TorusError(f"|ad - bc| = {abs(det)} exceeds 1")
    if k <= 0:
        raise TorusError("k must be positive")

    def ind(m, n):
        return (np.abs(a * m + b * n) <= k) & (np.abs(c * m + d * n) <= 1 / k)

    if det != 0:
        corners = np.linalg.solve(np.array([[a, b], [c, d]], dtype=float),
                                  np.array([[k, k, -k, -k], [1 / k, -1 / k, 1 / k, -1 / k]]))
        extent = math.ceil(float(np.max(np.abs(corners))))
        R = max(extent, 1) if radius_bound is None else radius_bound
    else:
        R = 10_000 if radius_bound is None else radius_bound
    hit = lattice_search(ind, R)
    if hit is None:
        raise SearchExhausted(f"no pair within radius {R}; enlarge radius_bound")
    m, n = hit.point
    return PairResult(m, n, abs(a * m + b * n), abs(c * m + d * n))


# ---------------------------------------------------------------------------
# 2-D Parseval

@dataclass(frozen=True, eq=False)
class Torus2Function:
    """Samples on the N x N grid (j/N, l/N) of the unit square."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        N = v.shape[0]
        if v.ndim != 2 or v.shape[1] != N or N < 4 or N % 2:
            raise TorusError("need an N x N array with N even and >= 4")
        object.__setattr__(self, "values", v)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_coefficients(cls, coeffs: dict, size: int) -> "Torus2Function":
        """Samples of sum a_{m,n} e^{2 pi i (m x + n y)}."""
        t = np.arange(size) / size
        x, y = np.meshgrid(t, t, indexing="ij")
        v = np.zeros((size, size), dtype=complex)
        for (m, n), a in coeffs.items():
            v += a * np.exp(2j * np.pi * (m * x + n * y))
        return cls(v)

    def coefficients(self) -> np.ndarray:
        return np.fft.fft2(self.values) / self.size**2


def parseval_2d_check(f: Torus2Function, degree: int | None = None) -> float:
    """|sum |a_{m,n}|^2 - mean |f|^2| on the grid."""
    if degree is not None and f.size <= 2 * degree:
        raise AliasingError(f"grid {f.size} does not resolve degree {degree}")
    lhs = float(np.sum(np.abs(f.coefficients()) ** 2))
    rhs = float(np.mean(np.abs(f.values) ** 2))
    return abs(lhs - rhs)


def random_2d_polynomial(degree: int, seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    return {(m, n): complex(rng.standard_normal(), rng.standard_normal())
            for m in range(-degree, degree + 1) for n in range(-degree, degree + 1)}


# ---------------------------------------------------------------------------
# Diophantine approximation

def continued_fraction(a: float | Fraction, max_terms: int = 64) -> list[int]:
    """Partial quotients of the exact rational value of ``a``."""
    x = Fraction(a)
    out = []
    while len(out) < max_terms:
        q = math.floor(x)
        out.append(q)
        x -= q
        if x == 0:
            break
        x = 1 / x
    return out


def convergents(terms: list[int]):
    """Yield (p, q) for the continued fraction [a0; a1, ...]."""
    p0, q0, p1, q1 = 1, 0, terms[0], 1
    yield p1, q1
    for t in terms[1:]:
        p0, q0, p1, q1 = p1, q1, t * p1 + p0, t * q1 + q0
        yield p1, q1


@dataclass(frozen=True)
class DiophantinePair:
    m: int
    n: int
    error: float          # |a - n/m|
    scaled_error: float   # |a - n/m| m^2 (at most 1)


NAMED_CONSTANTS = {"pi": math.pi, "e": math.e, "sqrt2": math.sqrt(2)}


def _pair(a: Fraction, m: int, n: int) -> DiophantinePair:
    err = abs(a - Fraction(n, m))
    return DiophantinePair(m, n, float(err), float(err * m * m))


def diophantine_approx(a: float, count: int, method: str = "convergents",
                       pigeonhole_N: int | None = None) -> list[DiophantinePair]:
    """Pairs (m, n), m strictly increasing, with |a - n/m| <= 1/m^2.

    The default engine walks the continued-fraction convergents of a, skipping
    the integer part a0/1 (it can share the denominator 1 with the next
    convergent).  A rational a stops early at its exact convergent.  With
    ``method="pigeonhole"`` each N in 1..pigeonhole_N (or until ``count``
    distinct pairs) contributes the box-principle pair for that N.
    """
    if count < 1:
        raise TorusError("count must be >= 1")
    exact = Fraction(a)
    if method == "pigeonhole":
        return _pigeonhole_pairs(exact, count, pigeonhole_N)
    if method != "convergents":
        raise TorusError(f"unknown method {method!r}")
    conv = list(convergents(continued_fraction(exact, max_terms=count + 2)))
    # a0/1 is skipped; afterwards the denominators strictly increase
    if len(conv) > 1:
        conv = conv[1:]
    return [_pair(exact, q, p) for p, q in conv[:count]]


def pigeonhole_pair(a: Fraction | float, N: int) -> DiophantinePair:
    """Box principle: among frac(j a), j = 0..N, two share one of N+1 boxes, so
    some 1 <= m <= N has |m a - n| <= 1/(N+1)."""
    if N < 1:
        raise TorusError("N must be >= 1")
    a = Fraction(a)
    best = None
    for m in range(1, N + 1):
        n = round(m * a)
        d = abs(m * a - n)
        if d <= Fraction(1, N + 1):
            best = (m, int(n))
            break
    if best is None:  # the box principle forbids this
        raise TorusError("pigeonhole search failed")
    return _pair(a, *best)


def _pigeonhole_pairs(a: Fraction, count: int, N_max: int | None) -> list[DiophantinePair]:
    N_max = N_max or 10**6
    out: dict[int, DiophantinePair] = {}
    N = 1
    while len(out) < count and N <= N_max:
        p = pigeonhole_pair(a, N)
        out.setdefault(p.m, p)
        if p.error == 0:
            break
        # next N with 1/(N+1) < |m a - n|, so the same m no longer qualifies
        N = max(N + 1, int(1 / (p.error * p.m)) + 1)
    return [out[m] for m in sorted(out)][:count]
