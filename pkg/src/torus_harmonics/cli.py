"""Command-line front end.

Every subcommand prints a table (CSV with a header row, or JSON carrying
``schema_version``).  Exit codes: 0 success, 1 contract violation, 2 usage
error or malformed input.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import acceptance
from .analysis import (
    asymmetric_sum,
    bessel_parseval_report,
    fourier_coefficients,
)
from .convolution import (
    convolve_functions,
    convolve_measure_function,
    convolve_measures,
    young_bounds_report,
)
from .core import ContractViolation, TorusError, TorusGrid, TorusMeasure
from .inequalities import dual_synthesis, forbid_range_probe, hausdorff_young_check, random_trig_polynomial
from .io import (
    BUILTINS,
    SpecError,
    coefficients_from_json,
    function_from_json,
    load_json,
    loads,
    measure_from_json,
    resolve_function,
    sequence_from_json,
    to_csv,
    to_json,
)
from .kernels import (
    KernelSpec,
    approximate_identity_report,
    dyadic_schedule,
    kernel_value,
    lebesgue_constant,
    poisson_schedule,
)
from .l1algebra import bounded_powers_test, residual, wiener_inverse
from .lattice import (
    NAMED_CONSTANTS,
    ConvexBody2D,
    boundary_minkowski_search,
    diophantine_approx,
    ellipse,
    minkowski_search,
    parallelogram,
    parallelogram_pair,
    rectangle,
)
from .measures import (
    PositiveDefiniteSequence,
    continuity_test,
    herglotz_reconstruct,
    poisson_extension_probe,
    positive_definite_check,
    stieltjes_coefficients,
)
from .summability import jump_midpoint_check, norm_convergence_report

THREADS_ENV = "TORUS_HARMONICS_THREADS"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    grid_size: int = 4096
    tol_abs: float = 1e-10
    seed: int = 0
    output: str = "json"
    out_path: str | None = None
    threads: int = 1

    def __post_init__(self):
        if self.grid_size < 4 or self.grid_size % 2:
            raise UsageError(f"--grid-size must be even and >= 4, got {self.grid_size}")
        if not self.tol_abs > 0:
            raise UsageError(f"--tol must be positive, got {self.tol_abs}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")

    @property
    def grid(self) -> TorusGrid:
        return TorusGrid(self.grid_size)


@dataclass
class Table:
    columns: list
    rows: list
    payload: dict
    ok: bool = True
    message: str = ""


# ---------------------------------------------------------------------------
# argument helpers

def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _json_arg(text: str):
    """Inline JSON (starts with '{' or '[') or a path to a JSON file."""
    if text.lstrip()[:1] in "{[":
        return loads(text, "<inline>")
    return load_json(text)


def _function(ref: str):
    if ref.lstrip().startswith("{"):
        return function_from_json(loads(ref, "<inline>"))
    return resolve_function(ref)


def _measure(ref: str) -> TorusMeasure:
    if ref.startswith("point:"):
        try:
            theta, mass = (float(t) for t in ref[6:].split(","))
        except ValueError:
            raise SpecError(f"expected point:theta,mass, got {ref!r}") from None
        return TorusMeasure.point(theta, mass)
    if ref.startswith("density:"):
        return TorusMeasure.from_density(_function(ref[8:]))
    return measure_from_json(_json_arg(ref))


def _kernel(ref: str) -> KernelSpec:
    fam, _, arg = ref.partition(":")
    try:
        if fam == "poisson":
            return KernelSpec.poisson(float(arg))
        if fam in ("dirichlet", "fejer", "tailed"):
            return getattr(KernelSpec, fam)(int(arg))
    except ValueError:
        raise UsageError(f"bad kernel parameter in {ref!r}") from None
    raise UsageError(f"unknown kernel {ref!r}; use dirichlet:n, fejer:n, poisson:r or tailed:n")


def _alpha(text: str) -> float:
    if text in NAMED_CONSTANTS:
        return NAMED_CONSTANTS[text]
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--alpha must be a number or one of {sorted(NAMED_CONSTANTS)}") from None


def _body(ref: str, closed: bool) -> ConvexBody2D:
    kind, _, arg = ref.partition(":")
    if kind in ("ellipse", "rect") and arg:
        try:
            vals = [float(v) for v in arg.split(",")]
        except ValueError:
            raise UsageError(f"bad body parameters in {ref!r}") from None
        if kind == "ellipse":
            return ellipse(*vals, closed=closed)
        return rectangle(*vals, closed=closed)
    spec = _json_arg(ref)
    if not isinstance(spec, dict):
        raise SpecError(f"{ref}: body spec must be an object")
    try:
        return _body_from_json(spec, bool(spec.get("closed", closed)))
    except KeyError as e:
        raise SpecError(f"{ref}: missing field {e.args[0]!r}") from None
    except (TypeError, ValueError) as e:
        raise SpecError(f"{ref}: {e}") from None


def _body_from_json(spec: dict, closed: bool) -> ConvexBody2D:
    kind = spec.get("kind")
    if kind == "ellipse":
        return ellipse(spec["a"], spec["b"], spec.get("angle", 0.0), closed=closed)
    if kind == "rect":
        return rectangle(spec["w"], spec["h"], closed=closed)
    if kind == "disk":
        return ellipse(spec["r"], spec["r"], closed=closed)
    if kind == "parallelogram":
        return parallelogram(spec["matrix"], tuple(spec.get("bounds", (1.0, 1.0))), closed=closed)
    if kind == "quadratic":
        # x^T A x <= 1 for symmetric positive definite A
        A = np.asarray(spec["matrix"], dtype=float)
        w, V = np.linalg.eigh(A)
        if np.any(w <= 0):
            raise SpecError("quadratic body needs a positive definite matrix")
        ext = np.sqrt(np.sum(V**2 / w, axis=1))
        area = math.pi / math.sqrt(float(np.prod(w)))
        ind = (lambda x, y: A[0, 0] * x * x + 2 * A[0, 1] * x * y + A[1, 1] * y * y <= 1) if closed \
            else (lambda x, y: A[0, 0] * x * x + 2 * A[0, 1] * x * y + A[1, 1] * y * y < 1)
        return ConvexBody2D(ind, (float(ext[0]), float(ext[1])), area, name="quadratic")
    raise SpecError(f"body kind must be ellipse, rect, disk, parallelogram or quadratic, got {kind!r}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_coeffs(a, cfg):
    f = _function(a.fn)
    c = fourier_coefficients(f, a.N, cfg.grid, method=a.method)
    rows = [(int(n), v.real, v.imag, abs(v)) for n, v in zip(c.indices, c.values)]
    return Table(["n", "re", "im", "abs"], rows, {"half_width": a.N, "function": a.fn})


def cmd_partial_sums(a, cfg):
    f = _function(a.fn)
    rows, ok = [], True
    for N in a.N:
        r = bessel_parseval_report(f, N, cfg.grid, a.x)
        ok &= r.bessel_holds
        rows.append((N, r.value_at_x.real, r.value_at_x.imag, r.residual_sq, r.norm_sq, r.coeff_energy, r.defect))
    payload = {"x": a.x, "function": a.fn}
    if a.M is not None:
        c = fourier_coefficients(f, max(max(a.N), a.M), cfg.grid)
        payload["asymmetric"] = [{"M": a.M, "N": N, "value": asymmetric_sum(c, a.M, N)} for N in a.N]
    return Table(["N", "re", "im", "residual_sq", "norm_sq", "coeff_energy", "defect"], rows, payload,
                 ok, "" if ok else "Bessel inequality violated")


def cmd_kernel_table(a, cfg):
    k = _kernel(a.kernel)
    x = TorusGrid(a.points).nodes if a.points else cfg.grid.nodes
    v = kernel_value(k, x)
    return Table(["x", "value"], [(float(t), float(np.real(y))) for t, y in zip(x, v)], {"kernel": k.label})


def cmd_lebesgue(a, cfg):
    ns = list(range(a.n_min, a.n_max + 1)) if a.all else dyadic_schedule(a.n_min, a.n_max)
    if not ns:
        raise UsageError("empty n range")
    vals = _map(cfg, lebesgue_constant, ns)
    rows = [(n, L, math.log(n)) for n, L in zip(ns, vals)]
    payload = {}
    if len(ns) >= 2 and ns[0] > 0:
        slope, intercept = np.polyfit(np.log(ns), vals, 1)
        payload = {"fit": {"slope": slope, "intercept": intercept, "target": 4 / math.pi**2}}
    return Table(["n", "L_n", "ln_n"], rows, payload)


def cmd_approx_identity(a, cfg):
    if a.family == "poisson":
        fam = [KernelSpec.poisson(r) for r in poisson_schedule(a.count)]
    else:
        fam = [getattr(KernelSpec, a.family)(n) for n in dyadic_schedule(1, 2 ** (a.count - 1))]
    reps = approximate_identity_report(fam, a.deltas, cfg.grid)
    cols = ["kernel", "nonnegativity_violation", "mass_defect", "l1_norm"] + [f"tail_{d:g}" for d in a.deltas]
    rows = [[r.kernel.label, r.nonnegativity_violation, r.mass_defect, r.l1_norm]
            + [r.tail_mass[d] for d in a.deltas] for r in reps]
    notes = sorted({r.note for r in reps if r.note})
    return Table(cols, rows, {"notes": notes})


def cmd_convolve(a, cfg):
    grid = cfg.grid
    if a.mu is not None and a.nu is not None:
        res = convolve_measures(_measure(a.mu), _measure(a.nu), grid)
        m = res.value
        rows = [(t, w.real, w.imag) for t, w in m.atoms]
        return Table(["theta", "re", "im"], rows,
                     {"path": res.path, "multiplicativity_defect": res.cross_check,
                      "has_density": m.density is not None, "total_variation": m.total_variation(grid)})
    if a.f is None:
        raise UsageError("convolve needs --f with --g or --mu, or --mu with --nu")
    f = _function(a.f)
    payload = {}
    if a.mu is not None:
        h = convolve_measure_function(_measure(a.mu), f, grid)
        payload["path"] = "measure-function"
        ok, msg = True, ""
    else:
        if a.g is None:
            raise UsageError("convolve needs --g")
        g = _function(a.g)
        res = convolve_functions(f, g, grid, cross_check=a.cross_check)
        h = res.value
        payload.update(path=res.path, cross_check=res.cross_check)
        young = young_bounds_report(f, g, a.p, grid, slack=cfg.tol_abs)
        payload["young"] = {k: getattr(young, k) for k in ("p", "conv_p", "young_bound", "conv_sup", "holder_bound")}
        ok, msg = young.holds, "" if young.holds else "Young/Hoelder bound violated"
    rows = [(float(t), v.real, v.imag) for t, v in zip(grid.nodes, h.values)]
    return Table(["x", "re", "im"], rows, payload, ok, msg)


def cmd_summability(a, cfg):
    f = _function(a.fn)
    if a.norm.startswith("point:"):
        x = float(a.norm[6:])
        family = {"cesaro": "fejer", "abel": "poisson"}.get(a.method)
        if family is None:
            raise UsageError("pointwise mode supports cesaro and abel")
        rep = jump_midpoint_check(f, x, family, a.schedule, cfg.grid)
    else:
        norm = "sup" if a.norm == "sup" else float(a.norm)
        rep = norm_convergence_report(f, norm, a.method, a.schedule, cfg.grid)
    return Table(["parameter", "error"], rep.rows(),
                 {"method": rep.method, "norm": rep.norm, "trend_ok": rep.trend_ok()})


def _schedule(text: str, kind: str):
    return _floats(text) if kind == "abel" else _ints(text)


def cmd_wiener(a, cfg):
    mu = _measure(a.measure)
    N = max(a.schedule)
    c = stieltjes_coefficients(mu, N, cfg.grid)
    v = continuity_test(c, a.schedule, a.threshold)
    return Table(["N", "estimate"], [list(t) for t in v.trend], v.to_json())


def _pd_sequence(a):
    if a.rule is not None:
        kind, _, arg = a.rule.partition(":")
        if kind != "geometric":
            raise UsageError("--rule supports geometric:r")
        r = float(arg)
        return PositiveDefiniteSequence.from_rule(lambda n: r ** np.abs(n).astype(float), a.N)
    if a.seq is None:
        raise UsageError("herglotz needs --rule or --seq")
    return PositiveDefiniteSequence(coefficients_from_json(_json_arg(a.seq)))


def cmd_herglotz(a, cfg):
    u = _pd_sequence(a)
    v = positive_definite_check(u, a.N, cfg.tol_abs)
    payload = {"positive_semidefinite": v.positive_semidefinite, "min_eigenvalue": v.min_eigenvalue,
               "size": v.size}
    if not v.positive_semidefinite:
        return Table(["x", "density"], [], payload, False,
                     f"Toeplitz section not PSD (min eigenvalue {v.min_eigenvalue:.3e})")
    sigma = herglotz_reconstruct(u, a.N, cfg.grid, cfg.tol_abs)
    vals = sigma.sample(cfg.grid).real
    payload["mass"] = float(np.mean(vals))
    return Table(["x", "density"], [(float(x), float(y)) for x, y in zip(cfg.grid.nodes, vals)], payload)


def cmd_poisson_extend(a, cfg):
    mu = _measure(a.measure)
    probes = poisson_extension_probe(mu, a.rs, cfg.grid)
    return Table(["r", "A_r"], [(p.r, p.A_r) for p in probes],
                 {"total_variation": mu.total_variation(cfg.grid)})


def cmd_hy_check(a, cfg):
    grid = cfg.grid
    if a.forbid_range is not None:
        w = forbid_range_probe(a.forbid_range, grid, trials=a.random, seed=cfg.seed)
        payload = {"p": a.forbid_range, "witness_found": w is not None}
        if w is None:
            payload["note"] = "no witness found; this is not evidence that the inequality holds"
            return Table(["n", "re", "im"], [], payload)
        r = w.report
        payload.update(q=r.q, lhs=r.lhs, rhs=r.rhs)
        return Table(["n", "re", "im"], [(int(n), c.real, c.imag) for n, c in zip(w.f.indices, w.f.coeffs)],
                     payload)
    if a.fn is not None:
        fs = [_function(a.fn)]
    else:
        rng = np.random.default_rng(cfg.seed)
        fs = [random_trig_polynomial(rng, a.max_degree) for _ in range(a.random)]
    jobs = [(i, f, p) for i, f in enumerate(fs) for p in a.p]
    reps = _map(cfg, lambda job: hausdorff_young_check(job[1], job[2], grid), jobs)
    rows = [(i, r.p, r.q, r.lhs, r.rhs, r.ratio) for (i, _, _), r in zip(jobs, reps)]
    worst = max(r.ratio for r in reps)
    ok = worst <= 1 + cfg.tol_abs
    return Table(["index", "p", "q", "lhs", "rhs", "ratio"], rows, {"max_ratio": worst}, ok,
                 "" if ok else f"Hausdorff-Young ratio {worst} exceeds 1")


def cmd_dual_synth(a, cfg):
    c = coefficients_from_json(_json_arg(a.coeffs))
    d = dual_synthesis(c, a.p, cfg.grid)
    row = (d.p, d.q, d.f_norm_q, d.c_norm_p, d.recovery_error)
    return Table(["p", "q", "f_norm_q", "c_norm_p", "recovery_error"], [row], {"holds": d.holds},
                 d.holds, "" if d.holds else "||f||_q exceeds ||c||_p")


def cmd_minkowski(a, cfg):
    body = _body(a.body, a.closed)
    search = boundary_minkowski_search if a.closed else minkowski_search
    hit = search(body, a.radius)
    payload = {"body": body.name, "area": body.area, "area_stderr": body.area_stderr,
               "found": hit is not None}
    rows = [(hit.point[0], hit.point[1], hit.shell)] if hit else []
    if hit is None:
        payload["status"] = "exhausted"
    return Table(["m", "n", "shell"], rows, payload)


def cmd_dioph(a, cfg):
    alpha = _alpha(a.alpha)
    pairs = diophantine_approx(alpha, a.count, a.method, a.pigeonhole_N)
    rows = [(p.m, p.n, p.error, p.scaled_error) for p in pairs]
    ok = all(p.scaled_error <= 1 for p in pairs)
    return Table(["m", "n", "error", "scaled_error"], rows, {"alpha": alpha, "method": a.method}, ok)


def cmd_parallelogram(a, cfg):
    r = parallelogram_pair(a.a, a.b, a.c, a.d, a.k, a.radius)
    ok = r.first <= a.k and r.second <= 1 / a.k
    return Table(["m", "n", "first", "second"], [(r.m, r.n, r.first, r.second)],
                 {"det": a.a * a.d - a.b * a.c, "k": a.k}, ok)


def cmd_l1_powers(a, cfg):
    mu = sequence_from_json(_json_arg(a.seq))
    v = bounded_powers_test(mu, a.n_max, a.K)
    rows = sorted(v.norms)
    return Table(["n", "norm"], rows, v.to_json())


def cmd_l1_inverse(a, cfg):
    mu = sequence_from_json(_json_arg(a.seq))
    nu = wiener_inverse(mu, a.N, tol=a.residual_tol)
    rows = [(int(k), v.real, v.imag) for k, v in zip(nu.indices, nu.values)]
    return Table(["k", "re", "im"], rows, {"residual": residual(mu, nu), "lo": nu.lo})


def cmd_acceptance(a, cfg):
    try:
        numbers = acceptance.parse_suite(a.suite)
    except ValueError as e:
        raise UsageError(str(e)) from None
    results = [acceptance.run_criterion(n) for n in numbers]
    if not a.quiet:
        for r in results:
            print(acceptance.format_line(r), file=sys.stderr)
    rows = [(r.number, r.name, "pass" if r.passed else "fail", r.detail) for r in results]
    ok = all(r.passed for r in results)
    failed = [r.number for r in results if not r.passed]
    return Table(["criterion", "name", "status", "detail"], rows, {"failed": failed}, ok,
                 "" if ok else f"criteria failed: {failed}")


# ---------------------------------------------------------------------------

def _map(cfg: RunConfig, fn, items):
    """Order-preserving map, threaded up to cfg.threads."""
    items = list(items)
    if cfg.threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
        return list(ex.map(fn, items))


def _threads_from_env() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-size", type=int, default=4096, help="quadrature grid size (even, >= 4)")
    common.add_argument("--tol", type=float, default=1e-10, help="absolute tolerance for contracts")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    p = argparse.ArgumentParser(prog="torus-harmonics", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    fn_help = f"builtin ({', '.join(BUILTINS)}), inline JSON or a function JSON file"

    s = add("coeffs", cmd_coeffs, "Fourier coefficients a_n, |n| <= N")
    s.add_argument("--fn", required=True, help=fn_help)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--method", choices=("auto", "quadrature"), default="auto")

    s = add("partial-sums", cmd_partial_sums, "symmetric partial sums and the Bessel/Parseval report")
    s.add_argument("--fn", required=True, help=fn_help)
    s.add_argument("--N", type=_ints, required=True, help="comma-separated half widths")
    s.add_argument("--x", type=float, default=0.0)
    s.add_argument("--M", type=int, help="also report sum_{n=-M}^{N} a_n")

    s = add("kernel-table", cmd_kernel_table, "kernel values on grid nodes")
    s.add_argument("--kernel", required=True, help="dirichlet:n, fejer:n, poisson:r or tailed:n")
    s.add_argument("--points", type=int, help="number of nodes (default: grid size)")

    s = add("lebesgue", cmd_lebesgue, "Lebesgue constants L_n")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--n-min", type=int, default=16)
    s.add_argument("--all", action="store_true", help="every n instead of powers of two")

    s = add("approx-identity", cmd_approx_identity, "approximate-identity diagnostics for a kernel family")
    s.add_argument("--family", choices=("fejer", "poisson", "dirichlet", "tailed"), required=True)
    s.add_argument("--deltas", type=_floats, default=[0.1, 0.5, 1.0])
    s.add_argument("--count", type=int, default=8)

    s = add("convolve", cmd_convolve, "convolution of functions and measures")
    s.add_argument("--f", help=fn_help)
    s.add_argument("--g", help=fn_help)
    s.add_argument("--mu", help="measure: point:theta,mass, density:<fn>, inline JSON or file")
    s.add_argument("--nu", help="second measure")
    s.add_argument("--p", type=float, default=2.0, help="exponent for the Young bound")
    s.add_argument("--cross-check", action="store_true")

    s = add("summability", cmd_summability, "Cesaro / Abel convergence reports")
    s.add_argument("--fn", required=True, help=fn_help)
    s.add_argument("--method", choices=("cesaro", "abel", "raw-partial-sum"), default="cesaro")
    s.add_argument("--norm", default="2", help="sup, p in [1, inf) or point:x")
    s.add_argument("--schedule", required=True, help="comma-separated n (or r for abel)")

    s = add("wiener", cmd_wiener, "Wiener atom test on a measure")
    s.add_argument("--measure", required=True)
    s.add_argument("--schedule", type=_ints, default=[64, 128, 256, 512, 1024])
    s.add_argument("--threshold", type=float, default=1e-3)

    s = add("herglotz", cmd_herglotz, "Toeplitz PSD check and Fejer-weighted density")
    s.add_argument("--rule", help="geometric:r for u_n = r^|n|")
    s.add_argument("--seq", help="coefficient JSON (inline or file)")
    s.add_argument("--N", type=int, default=64)

    s = add("poisson-extend", cmd_poisson_extend, "A_r = ||P_r * mu||_1 along an r schedule")
    s.add_argument("--measure", required=True)
    s.add_argument("--rs", type=_floats, default=[0.5, 0.75, 0.875, 0.9375])

    s = add("hy-check", cmd_hy_check, "Hausdorff-Young ratios")
    s.add_argument("--fn", help=fn_help)
    s.add_argument("--random", type=int, default=100, help="number of seeded random polynomials")
    s.add_argument("--max-degree", type=int, default=32)
    s.add_argument("--p", type=_floats, default=[1.0, 4 / 3, 1.5, 2.0])
    s.add_argument("--forbid-range", type=float, metavar="P",
                   help="search for a witness that the inequality fails at this p > 2")

    s = add("dual-synth", cmd_dual_synth, "synthesize f from c and compare ||f||_q with ||c||_p")
    s.add_argument("--coeffs", required=True)
    s.add_argument("--p", type=float, default=1.5)

    s = add("minkowski", cmd_minkowski, "lattice-point search in a symmetric convex body")
    s.add_argument("--body", required=True, help="ellipse:a,b[,angle] | rect:w,h | body JSON")
    s.add_argument("--radius", type=int)
    s.add_argument("--closed", action="store_true", help="closed body, area-4 boundary case")

    s = add("dioph", cmd_dioph, "pairs (m, n) with |a - n/m| <= 1/m^2")
    s.add_argument("--alpha", required=True, help="number or one of pi, e, sqrt2")
    s.add_argument("--count", type=int, default=5)
    s.add_argument("--method", choices=("convergents", "pigeonhole"), default="convergents")
    s.add_argument("--pigeonhole-N", type=int)

    s = add("parallelogram", cmd_parallelogram, "|am + bn| <= k, |cm + dn| <= 1/k")
    for name in "abcd":
        s.add_argument(f"--{name}", type=float, required=True)
    s.add_argument("--k", type=float, default=1.0)
    s.add_argument("--radius", type=int)

    s = add("l1-powers", cmd_l1_powers, "norms of mu^{*n} and the bounded-powers verdict")
    s.add_argument("--seq", required=True, help='sequence JSON, e.g. {"lo":0,"values":[[2,0],[1,0]]}')
    s.add_argument("--n-max", type=int, default=32)
    s.add_argument("--K", type=float, default=10.0)

    s = add("l1-inverse", cmd_l1_inverse, "Wiener inverse on a finite window")
    s.add_argument("--seq", required=True)
    s.add_argument("--N", type=int, default=64)
    s.add_argument("--residual-tol", type=float, default=1e-10)

    s = add("acceptance", cmd_acceptance, "run the acceptance criteria")
    s.add_argument("--suite", default="all", help="all, or numbers such as 1,3,5-7")
    s.add_argument("--quiet", action="store_true", help="suppress the per-criterion lines on stderr")
    return p


def _emit(table: Table, cfg: RunConfig, command: str) -> None:
    if cfg.output == "csv":
        text = to_csv(table.columns, table.rows)
    else:
        text = to_json({"command": command, "ok": table.ok, **table.payload}, table.columns, table.rows)
    if cfg.out_path:
        Path(cfg.out_path).write_text(text, newline="")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "summability":
            args.schedule = _schedule(args.schedule, args.method)
        cfg = RunConfig(args.grid_size, args.tol, args.seed, args.output, args.out, _threads_from_env())
        table = args.func(args, cfg)
    except (UsageError, SpecError, argparse.ArgumentTypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ContractViolation as e:
        print(f"contract violation: {e}", file=sys.stderr)
        return 1
    except TorusError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit(table, cfg, args.command)
    if not table.ok:
        print(f"contract violation: {table.message}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
