"""The convolution algebra l1(Z) on finite windows: powers, symbols, Wiener
inversion, the 4-norm lemma, bounded powers and the homomorphisms of l1."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import ContractViolation, TorusError, TorusGrid

SYMBOL_THRESHOLD = 1e-6
OVERSAMPLE = 8


@dataclass(frozen=True, eq=False)
class L1Sequence:
    """Finitely supported mu: Z -> C, stored as values on lo..hi.

    Exact zeros at both ends are trimmed, so the window is minimal; the zero
    sequence is stored as an empty window.
    """

    lo: int
    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=complex))
        if v.ndim != 1:
            raise TorusError("values must be one-dimensional")
        if not np.all(np.isfinite(v)):
            raise TorusError("values must be finite")
        nz = np.flatnonzero(v)
        lo = int(self.lo)
        if nz.size == 0:
            v = v[:0]
        else:
            lo += int(nz[0])
            v = v[nz[0]:nz[-1] + 1]
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "values", v)

    @classmethod
    def delta(cls) -> "L1Sequence":
        return cls(0, [1.0])

    @classmethod
    def atom(cls, p: int, w: complex = 1.0) -> "L1Sequence":
        """w e^{(p)}."""
        return cls(p, [w])

    @classmethod
    def from_mapping(cls, terms: Mapping[int, complex]) -> "L1Sequence":
        if not terms:
            return cls(0, [])
        lo, hi = min(terms), max(terms)
        v = np.zeros(hi - lo + 1, dtype=complex)
        for k, c in terms.items():
            v[k - lo] = c
        return cls(lo, v)

    @property
    def hi(self) -> int:
        return self.lo + self.values.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.lo, self.lo + self.values.size)

    @property
    def is_zero(self) -> bool:
        return self.values.size == 0

    def __getitem__(self, k: int) -> complex:
        i = k - self.lo
        return complex(self.values[i]) if 0 <= i < self.values.size else 0j

    def norm(self, p: float = 1) -> float:
        if self.is_zero:
            return 0.0
        a = np.abs(self.values)
        top = float(a.max())
        if math.isinf(p) or top == 0:
            return top
        # scaling by the largest entry keeps a**p clear of under/overflow
        return top * float(np.sum((a / top) ** p) ** (1 / p))

    def as_dict(self) -> dict:
        return {int(k): complex(c) for k, c in zip(self.indices, self.values)}

    def equals(self, other: "L1Sequence", atol: float = 0.0) -> bool:
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        if hi < lo:
            return True
        a = np.array([self[k] for k in range(lo, hi + 1)])
        b = np.array([other[k] for k in range(lo, hi + 1)])
        return bool(np.all(np.abs(a - b) <= atol))

    def __sub__(self, other: "L1Sequence") -> "L1Sequence":
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        if hi < lo:
            return L1Sequence(0, [])
        return L1Sequence(lo, [self[k] - other[k] for k in range(lo, hi + 1)])

    def scaled(self, c: complex) -> "L1Sequence":
        return L1Sequence(self.lo, self.values * c)


def l1_convolve(mu: L1Sequence, nu: L1Sequence) -> L1Sequence:
    """(mu*nu)(j) = sum_k mu(k) nu(j-k)."""
    if mu.is_zero or nu.is_zero:
        return L1Sequence(0, [])
    out = L1Sequence(mu.lo + nu.lo, np.convolve(mu.values, nu.values))
    bound = mu.norm() * nu.norm()
    if out.norm() > bound * (1 + 1e-12) + 1e-300:  # floor covers subnormal inputs
        raise ContractViolation(f"||mu*nu||_1 = {out.norm()} exceeds {bound}")
    return out


def _single_atom(mu: L1Sequence) -> tuple[int, complex] | None:
    if mu.values.size == 1:
        return mu.lo, complex(mu.values[0])
    return None


def l1_power(mu: L1Sequence, n: int, inverse: L1Sequence | None = None,
             N: int = 64, grid: TorusGrid | None = None, tol: float = 1e-10) -> L1Sequence:
    """mu^{*n} by repeated squaring; negative n uses (mu^{-1})^{*|n|}.

    A single atom w e^{(p)} is powered exactly to w^n e^{(np)}.  Otherwise a
    negative power needs ``inverse`` or falls back to wiener_inverse(mu, N).
    """
    atom = _single_atom(mu)
    if atom is not None:
        p, w = atom
        if n < 0 and w == 0:
            raise TorusError("zero has no inverse")
        return L1Sequence(n * p, [w**n])
    if n < 0:
        base = inverse if inverse is not None else wiener_inverse(mu, N, grid, tol)
        n = -n
    else:
        base = mu
    result = L1Sequence.delta()
    while n:
        if n & 1:
            result = l1_convolve(result, base)
        n >>= 1
        if n:
            base = l1_convolve(base, base)
    return result


@dataclass(frozen=True, eq=False)
class SymbolProbe:
    """m(x) = sum mu(k) e^{ikx} on grid nodes.

    The grid minimum certifies nonvanishing only up to the grid resolution.
    """

    grid: TorusGrid
    values: np.ndarray = field(repr=False)
    min_modulus: float
    argmin: float


def _symbol_on(mu: L1Sequence, grid: TorusGrid) -> np.ndarray:
    x = grid.nodes
    if mu.is_zero:
        return np.zeros(grid.size, dtype=complex)
    return np.exp(1j * np.outer(x, mu.indices)) @ mu.values


def symbol_probe(mu: L1Sequence, grid: TorusGrid | None = None) -> SymbolProbe:
    grid = grid or _default_grid(mu)
    vals = _symbol_on(mu, grid)
    a = np.abs(vals)
    j = int(np.argmin(a))
    return SymbolProbe(grid, vals, float(a[j]), float(grid.nodes[j]))


def _default_grid(mu: L1Sequence, N: int = 0) -> TorusGrid:
    width = max(mu.values.size, 2 * N + 1, 8)
    G = 1 << math.ceil(math.log2(OVERSAMPLE * width))
    return TorusGrid(max(G, 1024))


def wiener_inverse(mu: L1Sequence, N: int, grid: TorusGrid | None = None,
                   tol: float = 1e-10, threshold: float = SYMBOL_THRESHOLD) -> L1Sequence:
    """nu(k) = int e^{-ikx} / m(x) dsigma for |k| <= N.

    Refuses when the symbol drops below ``threshold`` on the grid (at least
    8x the window width) and when ||mu*nu - delta||_1 exceeds ``tol``.
    """
    grid = grid or _default_grid(mu, N)
    if grid.size < OVERSAMPLE * max(mu.values.size, 2 * N + 1):
        raise TorusError(f"grid {grid.size} is below {OVERSAMPLE}x the window width")
    probe = symbol_probe(mu, grid)
    if probe.min_modulus < threshold:
        raise TorusError(f"symbol vanishes: min |m| = {probe.min_modulus:.3e} at x = {probe.argmin:.6f}")
    G = grid.size
    # 1/m sampled at x_j = -pi + 2 pi j/G; coefficient k is (-1)^k fft(...)[k]/G
    inv = np.fft.fft(1 / probe.values) / G
    k = np.arange(-N, N + 1)
    nu = L1Sequence(-N, inv[k % G] * np.where(k % 2, -1.0, 1.0))
    res = residual(mu, nu)
    if res > tol:
        raise TorusError(f"truncation N = {N} leaves ||mu*nu - delta||_1 = {res:.3e} > {tol:g}")
    return nu


def residual(mu: L1Sequence, nu: L1Sequence) -> float:
    """||mu*nu - delta||_1."""
    return (l1_convolve(mu, nu) - L1Sequence.delta()).norm()


@dataclass(frozen=True)
class FourNormVerdict:
    scale: float      # factor applied so ||f||_2 = 1
    l1: float
    l4: float
    bound: float      # K^{-1/2}
    holds: bool


def four_norm_lemma_check(f: L1Sequence, K: float, atol: float = 1e-12) -> FourNormVerdict:
    """After scaling to ||f||_2 = 1 with ||f||_1 <= K, ||f||_4 >= K^{-1/2}."""
    if f.is_zero:
        raise TorusError("zero sequence")
    s = 1 / f.norm(2)
    g = f.scaled(s)
    l1 = g.norm(1)
    if l1 > K * (1 + 1e-12):
        raise TorusError(f"||f||_1 = {l1} exceeds K = {K} after normalization")
    l4, bound = g.norm(4), K**-0.5
    return FourNormVerdict(s, l1, l4, bound, l4 >= bound - atol)


@dataclass(frozen=True)
class BoundedPowersVerdict:
    kind: str                       # characterized | bounded-window | unbounded | not-invertible
    p: int | None = None
    w: complex | None = None
    norms: tuple = ()               # ((n, ||mu^{*n}||_1), ...)
    exceed_at: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "norms": [[n, v] for n, v in self.norms], "note": self.note}
        if self.p is not None:
            out["p"] = self.p
            out["w"] = [self.w.real, self.w.imag]
        if self.exceed_at is not None:
            out["exceed_at"] = self.exceed_at
        return out


def _positive_power_norms(mu: L1Sequence, n_max: int) -> list[tuple[int, float]]:
    out, power = [], L1Sequence.delta()
    for n in range(1, n_max + 1):
        power = l1_convolve(power, mu)
        out.append((n, power.norm()))
    return out


def bounded_powers_test(mu: L1Sequence, n_max: int, K: float, N: int = 256,
                        grid: TorusGrid | None = None) -> BoundedPowersVerdict:
    """Three-way verdict on sup_n ||mu^{*n}||_1 over |n| <= n_max.

    A single unimodular atom is characterized exactly.  A vanishing symbol
    means negative powers do not exist.  Otherwise the norms of mu^{*n} for
    n = +-1..+-n_max are swept (inverse via wiener_inverse with half width N)
    and the first n with norm above K is reported.  No exceedance inside the
    window is evidence, not proof, of boundedness.
    """
    if n_max < 2:
        raise TorusError("n_max must be >= 2")
    if mu.is_zero:
        return BoundedPowersVerdict("not-invertible", note="zero sequence")
    atom = _single_atom(mu)
    if atom is not None and abs(abs(atom[1]) - 1) <= 1e-12:
        p, w = atom
        norms = tuple((n, l1_power(mu, n).norm()) for n in range(-n_max, n_max + 1) if n)
        return BoundedPowersVerdict("characterized", p, w, norms, note="single unimodular atom")
    probe = symbol_probe(mu, grid or _default_grid(mu, N))
    if probe.min_modulus < SYMBOL_THRESHOLD:
        pos = _positive_power_norms(mu, n_max)
        return BoundedPowersVerdict(
            "not-invertible", norms=tuple(pos),
            note=f"symbol vanishes near x = {probe.argmin:.6f}; negative powers undefined, "
                 "so the two-sided hypothesis cannot hold")
    inverse = wiener_inverse(mu, N, grid, tol=1e-8)
    norms = []
    pos, neg = L1Sequence.delta(), L1Sequence.delta()
    exceed = None
    for n in range(1, n_max + 1):
        pos = l1_convolve(pos, mu)
        neg = l1_convolve(neg, inverse)
        for m, v in ((n, pos.norm()), (-n, neg.norm())):
            norms.append((m, v))
            if exceed is None and v > K:
                exceed = m
    if exceed is not None:
        return BoundedPowersVerdict("unbounded", norms=tuple(norms), exceed_at=exceed,
                                    note=f"||mu^(*{exceed})||_1 exceeds K = {K}")
    tail = [v for m, v in norms[-8:]]
    growing = all(b > a for a, b in zip(tail[::2], tail[2::2])) and tail[-1] > 1 + 1e-9
    kind = "unbounded" if growing else "bounded-window"
    return BoundedPowersVerdict(kind, norms=tuple(norms),
                                note="growth over the window" if growing else "no exceedance within the window")


def homomorphism_apply(rho: L1Sequence, p: int, w: complex, atol: float = 1e-12) -> L1Sequence:
    """h(rho) = sum_j rho(j) w^j e^{(jp)}; p = 0 collapses everything onto index 0."""
    if abs(abs(w) - 1) > atol:
        raise TorusError(f"|w| = {abs(w)} is not 1")
    if rho.is_zero:
        return rho
    j = rho.indices
    terms = rho.values * np.array([complex(w) ** int(k) for k in j])
    if p == 0:
        return L1Sequence(0, [terms.sum()])
    out: dict[int, complex] = {}
    for k, t in zip(j, terms):
        out[int(k) * p] = out.get(int(k) * p, 0) + t
    return L1Sequence.from_mapping(out)


def parseval_power_check(mu: L1Sequence, n: int, grid: TorusGrid | None = None) -> float:
    """|sum_k |mu^{*n}(k)|^2 - int |m|^{2n} dsigma| for n >= 0."""
    if n < 0:
        raise TorusError("n must be nonnegative")
    power = l1_power(mu, n)
    width = max(power.values.size, 1)
    grid = grid or TorusGrid(max(16, 1 << math.ceil(math.log2(2 * width + 2))))
    lhs = power.norm(2) ** 2
    rhs = float(np.mean(np.abs(_symbol_on(mu, grid)) ** (2 * n)))
    return abs(lhs - rhs)
