"""Grids, periodic function specs, coefficient sequences, measures and norms on T.

Angles live in [-pi, pi).  Integrals are against the normalized measure
dsigma = dx / 2pi, so the constant function 1 has unit mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

# chunk size (elements) for dense exp(i n x) evaluations
_CHUNK = 1 << 22


class TorusError(ValueError):
    """Base class for domain errors raised by this package."""


class AliasingError(TorusError):
    """Requested frequencies are not resolved by the grid."""


class GridMismatchError(TorusError):
    """Sampled data on one grid was combined with another grid."""


class ContractViolation(AssertionError):
    """A checked inequality or identity failed."""


def reduce_angle(x):
    """Reduce angles into [-pi, pi); pi itself maps to -pi."""
    x = np.asarray(x, dtype=float)
    r = np.mod(x + math.pi, TWO_PI) - math.pi
    # mod can round up to exactly pi for tiny negative inputs
    r = np.where(r >= math.pi, r - TWO_PI, r)
    # in-range angles are returned untouched (the shift above rounds)
    r = np.where((x >= -math.pi) & (x < math.pi), x, r)
    return r if r.ndim else float(r)


@dataclass(frozen=True)
class Tolerance:
    absolute: float = 1e-10
    relative: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.absolute) and math.isfinite(self.relative)):
            raise TorusError("tolerances must be finite")
        if self.absolute < 0 or self.relative < 0:
            raise TorusError("tolerances must be nonnegative")
        if self.absolute == 0 and self.relative == 0:
            raise TorusError("at least one tolerance must be positive")

    def bound(self, reference: float) -> float:
        return self.absolute + self.relative * abs(reference)

    def close(self, a, b) -> bool:
        return bool(np.all(np.abs(np.asarray(a) - np.asarray(b)) <= self.bound(np.max(np.abs(b)))))


@dataclass(frozen=True)
class TorusGrid:
    """Uniform grid x_j = -pi + 2 pi j / N, j = 0..N-1."""

    size: int

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 4 or self.size % 2:
            raise TorusError(f"grid size must be an even integer >= 4, got {self.size!r}")

    @property
    def spacing(self) -> float:
        return TWO_PI / self.size

    @property
    def nodes(self) -> np.ndarray:
        return -math.pi + self.spacing * np.arange(self.size)

    @property
    def max_frequency(self) -> int:
        """Largest |n| whose character is resolved without aliasing."""
        return self.size // 2 - 1

    def mean(self, values) -> complex:
        return np.mean(values)


# ---------------------------------------------------------------------------
# discrete Fourier helpers

def dft_coefficients(samples: np.ndarray, half_width: int) -> np.ndarray:
    """Trapezoid-rule coefficients a_n, n = -N..N, of samples on a TorusGrid."""
    G = samples.shape[-1]
    if 2 * half_width + 1 > G:
        raise AliasingError(f"half width {half_width} needs a grid of at least {2 * half_width + 1} nodes, got {G}")
    spectrum = np.fft.fft(samples) / G
    n = np.arange(-half_width, half_width + 1)
    # nodes start at -pi, hence the (-1)^n phase
    return spectrum[..., n % G] * np.where(n % 2, -1.0, 1.0)


def synthesize_on_grid(indices: np.ndarray, coeffs: np.ndarray, grid: TorusGrid) -> np.ndarray:
    """Samples of sum_n c_n e^{inx} on the grid (requires |n| <= grid.max_frequency)."""
    indices = np.asarray(indices, dtype=np.int64)
    if indices.size and np.max(np.abs(indices)) > grid.max_frequency:
        raise AliasingError(f"degree {np.max(np.abs(indices))} not resolved by grid of size {grid.size}")
    G = grid.size
    b = np.zeros(G, dtype=complex)
    np.add.at(b, indices % G, np.asarray(coeffs, dtype=complex) * np.where(indices % 2, -1.0, 1.0))
    return np.fft.ifft(b) * G


def trig_sum(indices, coeffs, x) -> np.ndarray:
    """Direct evaluation of sum_n c_n e^{inx} at arbitrary points, chunked."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    indices = np.asarray(indices, dtype=float)
    coeffs = np.asarray(coeffs, dtype=complex)
    out = np.empty(x.shape, dtype=complex)
    flat = x.ravel()
    res = out.reshape(-1)
    step = max(1, _CHUNK // max(1, indices.size))
    for s in range(0, flat.size, step):
        res[s:s + step] = np.exp(1j * np.outer(flat[s:s + step], indices)) @ coeffs
    return out


# ---------------------------------------------------------------------------
# function specs

class TorusFunction:
    """A periodic function on T, evaluated in the angle variable."""

    kind: str = "abstract"
    #: True when the exact Fourier coefficients are available in closed form
    closed_form_coefficients: bool = False

    def evaluate(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.evaluate(x)

    def sample(self, grid: TorusGrid) -> np.ndarray:
        return np.asarray(self.evaluate(grid.nodes), dtype=complex)

    def coefficients(self, half_width: int) -> np.ndarray:
        """Closed-form coefficients a_n for n = -N..N."""
        raise NotImplementedError(f"no closed-form coefficients for {self.kind}")

    def translate(self, h: float) -> "TorusFunction":
        """Return x -> f(x - h)."""
        raise NotImplementedError

    def scaled(self, c: complex) -> "TorusFunction":
        raise NotImplementedError

    def one_sided_limits(self, x: float) -> tuple[complex, complex]:
        """(f(x-), f(x+)); continuous specs return f(x) twice."""
        v = complex(self.evaluate(x))
        return v, v

    @property
    def is_continuous(self) -> bool:
        return True


def _scalar_or_array(values, x):
    return values if np.ndim(x) else complex(values.reshape(-1)[0])


@dataclass(frozen=True, eq=False)
class TrigPolynomial(TorusFunction):
    """sum over (n, c) of c e^{inx}."""

    indices: np.ndarray
    coeffs: np.ndarray
    kind = "trig_poly"
    closed_form_coefficients = True

    def __init__(self, terms: Mapping[int, complex] | Iterable[tuple[int, complex]]):
        pairs = list(terms.items()) if isinstance(terms, Mapping) else [tuple(t) for t in terms]
        idx = np.array([int(n) for n, _ in pairs], dtype=np.int64)
        if len(set(idx.tolist())) != idx.size:
            raise TorusError("trig polynomial indices must be distinct")
        order = np.argsort(idx, kind="stable")
        c = np.array([complex(v) for _, v in pairs], dtype=complex)
        object.__setattr__(self, "indices", idx[order])
        object.__setattr__(self, "coeffs", c[order] if c.size else c)

    @classmethod
    def from_sequence(cls, c: "CoefficientSequence") -> "TrigPolynomial":
        keep = c.values != 0
        return cls(zip(c.indices[keep].tolist(), c.values[keep]))

    @property
    def degree(self) -> int:
        return int(np.max(np.abs(self.indices))) if self.indices.size else 0

    def evaluate(self, x):
        if not self.indices.size:
            return _scalar_or_array(np.zeros(np.shape(x) or (1,), dtype=complex), x)
        return _scalar_or_array(trig_sum(self.indices, self.coeffs, x), x)

    def sample(self, grid):
        if not self.indices.size:
            return np.zeros(grid.size, dtype=complex)
        if self.degree <= grid.max_frequency:
            return synthesize_on_grid(self.indices, self.coeffs, grid)
        return trig_sum(self.indices, self.coeffs, grid.nodes)

    def coefficients(self, half_width):
        out = np.zeros(2 * half_width + 1, dtype=complex)
        inside = np.abs(self.indices) <= half_width
        out[self.indices[inside] + half_width] = self.coeffs[inside]
        return out

    def translate(self, h):
        return TrigPolynomial(zip(self.indices.tolist(), self.coeffs * np.exp(-1j * self.indices * h)))

    def scaled(self, c):
        return TrigPolynomial(zip(self.indices.tolist(), self.coeffs * c))


@dataclass(frozen=True, eq=False)
class PiecewiseConstant(TorusFunction):
    """Step function: ``values[i]`` on [breaks[i], breaks[i+1]), the last piece wrapping to breaks[0] + 2pi.

    Breakpoints take the right-limit value.
    """

    breaks: np.ndarray
    values: np.ndarray
    kind = "piecewise"
    closed_form_coefficients = True

    def __init__(self, breaks: Sequence[float], values: Sequence[complex]):
        b = np.asarray(breaks, dtype=float)
        v = np.asarray(values, dtype=complex)
        if b.ndim != 1 or b.size == 0 or b.shape != v.shape:
            raise TorusError("piecewise constant needs matching non-empty breaks and values")
        if np.any(b < -math.pi) or np.any(b >= math.pi):
            raise TorusError("breakpoints must lie in [-pi, pi)")
        if np.any(np.diff(b) <= 0):
            raise TorusError("breakpoints must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise TorusError("piece values must be finite")
        object.__setattr__(self, "breaks", b)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_pieces(cls, pieces: Sequence[tuple[float, float, complex]], atol: float = 1e-12):
        """Build from contiguous (start, end, value) pieces covering one full period."""
        pieces = sorted(pieces, key=lambda p: p[0])
        for (a0, b0, _), (a1, _, _) in zip(pieces, pieces[1:]):
            if abs(b0 - a1) > atol:
                raise TorusError(f"pieces are not contiguous at {b0} / {a1}")
        total = pieces[-1][1] - pieces[0][0]
        if abs(total - TWO_PI) > atol:
            raise TorusError(f"pieces must cover a full period, got length {total}")
        starts = [reduce_angle(p[0]) for p in pieces]
        order = np.argsort(starts)
        return cls(np.asarray(starts)[order], np.asarray([p[2] for p in pieces])[order])

    def intervals(self) -> tuple[np.ndarray, np.ndarray]:
        ends = np.roll(self.breaks, -1)
        ends[-1] += TWO_PI
        return self.breaks.copy(), ends

    def evaluate(self, x):
        xr = np.atleast_1d(reduce_angle(x))
        idx = np.searchsorted(self.breaks, xr, side="right") - 1
        return _scalar_or_array(self.values[idx], x)

    def coefficients(self, half_width):
        starts, ends = self.intervals()
        n = np.arange(-half_width, half_width + 1)
        out = np.empty(n.size, dtype=complex)
        out[half_width] = np.sum(self.values * (ends - starts)) / TWO_PI
        nz = n[n != 0].astype(float)
        pos = np.flatnonzero(n != 0)
        step = max(1, _CHUNK // max(1, starts.size))
        for s in range(0, nz.size, step):
            k = nz[s:s + step, None]
            diff = np.exp(-1j * k * starts) - np.exp(-1j * k * ends)
            out[pos[s:s + step]] = (diff @ self.values) / (TWO_PI * 1j * k[:, 0])
        return out

    def translate(self, h):
        nb = np.atleast_1d(reduce_angle(self.breaks + h))
        order = np.argsort(nb, kind="stable")
        return PiecewiseConstant(nb[order], self.values[order])

    def scaled(self, c):
        return PiecewiseConstant(self.breaks, self.values * c)

    def combine(self, other: "PiecewiseConstant", op: Callable) -> "PiecewiseConstant":
        """Pointwise op(self, other) on the union of breakpoints."""
        b = np.union1d(self.breaks, other.breaks)
        return PiecewiseConstant(b, op(self.evaluate(b), other.evaluate(b)))

    def lp_norm(self, p: float) -> float:
        starts, ends = self.intervals()
        w = (ends - starts) / TWO_PI
        a = np.abs(self.values)
        if math.isinf(p):
            return float(np.max(a[w > 0]))
        return float(np.sum(w * a**p) ** (1.0 / p))

    def one_sided_limits(self, x):
        xr = reduce_angle(x)
        i = int(np.searchsorted(self.breaks, xr, side="right") - 1)
        right = complex(self.values[i])
        left = complex(self.values[i - 1]) if self.breaks[i % self.breaks.size] == xr else right
        return left, right

    @property
    def is_continuous(self) -> bool:
        return bool(np.all(self.values == self.values[0]))


def _geometric_pole(x, p):
    return 1.0 / (1.0 - p["r"] * np.exp(1j * x))


def _geometric_pole_coeffs(n, p):
    n = n.astype(float)
    return np.where(n >= 0, p["r"] ** np.abs(n), 0.0).astype(complex)


def _poisson(x, p):
    r = p["r"]
    return (1 - r * r) / (1 - 2 * r * np.cos(x) + r * r) + 0j


def _dirichlet(x, p):
    n = int(p["n"])
    s = np.sin(x / 2)
    small = np.abs(s) < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.sin((n + 0.5) * x) / s
    return np.where(small, 2.0 * n + 1.0, v) + 0j


def _fejer(x, p):
    n = int(p["n"])
    s = np.sin(x / 2)
    small = np.abs(s) < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        v = (np.sin(n * x / 2) / s) ** 2 / n
    return np.where(small, float(n), v) + 0j


def _positive_r(p):
    if not 0 <= p["r"] < 1:
        raise TorusError(f"parameter r must satisfy 0 <= r < 1, got {p['r']}")


def _nonneg_n(low):
    def check(p):
        if int(p["n"]) != p["n"] or p["n"] < low:
            raise TorusError(f"parameter n must be an integer >= {low}, got {p['n']}")
    return check


# name -> (required params, validator, evaluator, coefficient rule)
NAMED_FORMS: dict[str, tuple] = {
    "geometric_pole": (("r",), _positive_r, _geometric_pole, _geometric_pole_coeffs),
    "poisson_kernel": (("r",), _positive_r, _poisson,
                       lambda n, p: (p["r"] ** np.abs(n).astype(float)).astype(complex)),
    "dirichlet_kernel": (("n",), _nonneg_n(0), _dirichlet,
                         lambda n, p: (np.abs(n) <= p["n"]).astype(complex)),
    "fejer_kernel": (("n",), _nonneg_n(1), _fejer,
                     lambda n, p: np.clip(1 - np.abs(n) / p["n"], 0, None).astype(complex)),
}


@dataclass(frozen=True, eq=False)
class NamedClosedForm(TorusFunction):
    """A closed-form function from :data:`NAMED_FORMS`.

    Every form accepts an optional ``shift`` (evaluates f(x - shift)) and
    ``scale`` (constant factor) so that translation stays exact.
    """

    name: str
    params: dict = field(default_factory=dict)
    kind = "named"
    closed_form_coefficients = True

    def __post_init__(self):
        if self.name not in NAMED_FORMS:
            raise TorusError(f"unknown named form {self.name!r}; known: {sorted(NAMED_FORMS)}")
        required, check, _, _ = NAMED_FORMS[self.name]
        params = dict(self.params)
        for key in required:
            if key not in params:
                raise TorusError(f"named form {self.name!r} needs parameter {key!r}")
        params.setdefault("shift", 0.0)
        params.setdefault("scale", 1.0)
        check(params)
        object.__setattr__(self, "params", params)

    def evaluate(self, x):
        p = self.params
        xr = np.atleast_1d(reduce_angle(np.asarray(x, dtype=float) - p["shift"]))
        return _scalar_or_array(p["scale"] * NAMED_FORMS[self.name][2](xr, p), x)

    def coefficients(self, half_width):
        p = self.params
        n = np.arange(-half_width, half_width + 1)
        return p["scale"] * NAMED_FORMS[self.name][3](n, p) * np.exp(-1j * n * p["shift"])

    def translate(self, h):
        return NamedClosedForm(self.name, {**self.params, "shift": self.params["shift"] + h})

    def scaled(self, c):
        return NamedClosedForm(self.name, {**self.params, "scale": self.params["scale"] * c})


@dataclass(frozen=True, eq=False)
class SampledGrid(TorusFunction):
    """Samples on a TorusGrid; evaluation snaps to the nearest node."""

    grid: TorusGrid
    values: np.ndarray
    kind = "samples"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.size,):
            raise GridMismatchError(f"expected {self.grid.size} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise TorusError("samples must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def node_index(self, x):
        xr = np.atleast_1d(reduce_angle(x))
        return np.rint((xr + math.pi) / self.grid.spacing).astype(np.int64) % self.grid.size

    def evaluate(self, x):
        return _scalar_or_array(self.values[self.node_index(x)], x)

    def sample(self, grid):
        if grid.size != self.grid.size:
            raise GridMismatchError(f"samples live on grid {self.grid.size}, requested {grid.size}")
        return self.values.copy()

    def coefficients(self, half_width):
        return dft_coefficients(self.values, half_width)

    def translate(self, h):
        k = h / self.grid.spacing
        if abs(k - round(k)) > 1e-9:
            raise TorusError("sampled functions translate only by whole grid steps")
        return SampledGrid(self.grid, np.roll(self.values, int(round(k))))

    def scaled(self, c):
        return SampledGrid(self.grid, self.values * c)

    def one_sided_limits(self, x):
        raise TorusError("one-sided limits are unknown for sampled functions")

    @property
    def is_continuous(self) -> bool:
        # unknown; callers treat samples as admissible
        return True


def check_grid(f: TorusFunction, grid: TorusGrid) -> None:
    if isinstance(f, SampledGrid) and f.grid.size != grid.size:
        raise GridMismatchError(f"function sampled on grid {f.grid.size}, operation uses grid {grid.size}")


def constant(c: complex = 1.0) -> TrigPolynomial:
    return TrigPolynomial({0: c})


def character(n: int = 1) -> TrigPolynomial:
    """chi^n: x -> e^{inx}."""
    return TrigPolynomial({n: 1.0})


def sign_function() -> PiecewiseConstant:
    """-1 on (-pi, 0), +1 on (0, pi)."""
    return PiecewiseConstant([-math.pi, 0.0], [-1.0, 1.0])


def indicator(a: float, b: float) -> PiecewiseConstant:
    """Indicator of [a, b) with -pi <= a < b <= pi."""
    if not -math.pi <= a < b <= math.pi:
        raise TorusError("indicator needs -pi <= a < b <= pi")
    breaks, values = [], []
    if a > -math.pi:
        breaks.append(-math.pi)
        values.append(0.0)
    breaks.append(a)
    values.append(1.0)
    if b < math.pi:
        breaks.append(b)
        values.append(0.0)
    return PiecewiseConstant(breaks, values)


def geometric_pole(r: float) -> NamedClosedForm:
    """1 / (1 - r e^{ix}), coefficients r^n for n >= 0."""
    return NamedClosedForm("geometric_pole", {"r": r})


def evaluate(f: TorusFunction, x):
    """F(x) = f(e^{ix}) with x reduced into [-pi, pi)."""
    return f.evaluate(x)


def lp_norm(f: TorusFunction, p: float, grid: TorusGrid) -> float:
    """||f||_p against dsigma; p = inf gives the sup over nodes.

    Step functions use exact interval lengths and trig polynomials use the
    Parseval sum at p = 2; everything else is the grid average.
    """
    p = float(p)
    if p < 1:
        raise TorusError(f"p must be >= 1, got {p}")
    if isinstance(f, PiecewiseConstant):
        return f.lp_norm(p)
    if isinstance(f, TrigPolynomial) and p == 2:
        return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))
    check_grid(f, grid)
    return sample_norm(f.sample(grid), p)


def sample_norm(samples: np.ndarray, p: float) -> float:
    """Grid L^p norm of samples w.r.t. the normalized measure."""
    a = np.abs(samples)
    if math.isinf(p):
        return float(np.max(a))
    if p == 1:
        return float(np.mean(a))
    if p == 2:
        return float(np.sqrt(np.mean(a * a)))
    return float(np.mean(a**p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# coefficient sequences

@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """Complex values c_n for n = -N..N."""

    half_width: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if self.half_width < 0 or v.shape != (2 * self.half_width + 1,):
            raise TorusError(f"expected {2 * self.half_width + 1} values for half width {self.half_width}, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise TorusError("coefficient sequences must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_mapping(cls, terms: Mapping[int, complex], half_width: int | None = None):
        N = max((abs(n) for n in terms), default=0) if half_width is None else half_width
        v = np.zeros(2 * N + 1, dtype=complex)
        for n, c in terms.items():
            if abs(n) <= N:
                v[n + N] = c
        return cls(N, v)

    @classmethod
    def from_function(cls, rule: Callable[[np.ndarray], np.ndarray], half_width: int):
        """Values rule(n) for n = -N..N (rule is vectorized over integer arrays)."""
        n = np.arange(-half_width, half_width + 1)
        return cls(half_width, np.asarray(rule(n), dtype=complex))

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width + 1)

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.half_width:
            raise IndexError(f"index {n} outside [-{self.half_width}, {self.half_width}]")
        return complex(self.values[n + self.half_width])

    def __len__(self):
        return self.values.size

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Values for n = lo..hi (must lie inside the stored range)."""
        if lo < -self.half_width or hi > self.half_width:
            raise TorusError(f"range [{lo}, {hi}] exceeds half width {self.half_width}")
        return self.values[lo + self.half_width: hi + self.half_width + 1]

    def truncate(self, half_width: int) -> "CoefficientSequence":
        return CoefficientSequence(half_width, self.window(-half_width, half_width))

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


def lq_sequence_norm(c: CoefficientSequence | np.ndarray, q: float) -> float:
    """(sum |c_n|^q)^(1/q); q = inf is the max modulus."""
    q = float(q)
    if q < 1:
        raise TorusError(f"q must be >= 1, got {q}")
    a = np.abs(c.values if isinstance(c, CoefficientSequence) else np.asarray(c))
    if a.size == 0:
        return 0.0
    if math.isinf(q):
        return float(np.max(a))
    return float(np.sum(a**q) ** (1.0 / q))


# ---------------------------------------------------------------------------
# measures

ATOM_MERGE_TOL = 1e-12


def merge_atoms(atoms: Iterable[tuple[float, complex]], tol: float = ATOM_MERGE_TOL):
    """Reduce angles, merge atoms closer than tol (cyclically), drop zero masses."""
    items = sorted(((reduce_angle(t), complex(m)) for t, m in atoms), key=lambda a: a[0])
    merged: list[list] = []
    for t, m in items:
        if merged and abs(t - merged[-1][0]) <= tol:
            merged[-1][1] += m
        else:
            merged.append([t, m])
    if len(merged) > 1 and merged[0][0] + TWO_PI - merged[-1][0] <= tol:
        merged[0][1] += merged.pop()[1]
    return tuple((float(t), complex(m)) for t, m in merged if m != 0)


@dataclass(frozen=True, eq=False)
class TorusMeasure:
    """Finite complex measure: point masses plus an absolutely continuous part f dsigma."""

    atoms: tuple = ()
    density: TorusFunction | None = None

    def __post_init__(self):
        atoms = merge_atoms(self.atoms)
        for t, m in atoms:
            if not (math.isfinite(t) and np.isfinite(m)):
                raise TorusError("atom angles and masses must be finite")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def point(cls, theta: float = 0.0, mass: complex = 1.0) -> "TorusMeasure":
        return cls(((theta, mass),))

    @classmethod
    def from_density(cls, f: TorusFunction) -> "TorusMeasure":
        return cls((), f)

    @property
    def atom_angles(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms], dtype=float)

    @property
    def atom_masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms], dtype=complex)

    def total_variation(self, grid: TorusGrid | None = None) -> float:
        tv = float(np.sum(np.abs(self.atom_masses)))
        if self.density is not None:
            tv += lp_norm(self.density, 1, grid or TorusGrid(4096))
        return tv

    @property
    def is_atomic(self) -> bool:
        return self.density is None
