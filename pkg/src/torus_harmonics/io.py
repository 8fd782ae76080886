"""JSON specs for functions, coefficients, measures and sequences; table emitters."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .core import (
    CoefficientSequence,
    NamedClosedForm,
    PiecewiseConstant,
    SampledGrid,
    TorusError,
    TorusFunction,
    TorusGrid,
    TorusMeasure,
    TrigPolynomial,
    character,
    constant,
    geometric_pole,
    indicator,
    sign_function,
)
from .l1algebra import L1Sequence

SCHEMA_VERSION = 1


class SpecError(TorusError):
    """Malformed JSON spec; the message names the offending field or line."""


# ---------------------------------------------------------------------------
# parsing helpers

def _need(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise SpecError(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SpecError(f"{where}: missing field {key!r}")
    return obj[key]


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SpecError(f"{where}: expected a number, got {v!r}")
    return float(v)


def _pair(v, where: str) -> complex:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise SpecError(f"{where}: expected [re, im], got {v!r}")
    return complex(_number(v[0], where + "[0]"), _number(v[1], where + "[1]"))


def _reim(obj: dict, where: str) -> complex:
    re = _number(_need(obj, "re", where), where + ".re")
    im = _number(obj.get("im", 0.0), where + ".im")
    return complex(re, im)


def _list(v, where: str) -> list:
    if not isinstance(v, list):
        raise SpecError(f"{where}: expected a list, got {type(v).__name__}")
    return v


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise SpecError(f"{path}: {e.strerror}") from None
    return loads(text, str(path))


# ---------------------------------------------------------------------------
# functions

def function_from_json(obj: Any, where: str = "function") -> TorusFunction:
    kind = _need(obj, "kind", where)
    try:
        if kind == "trig_poly":
            terms = []
            for i, t in enumerate(_list(_need(obj, "coeffs", where), where + ".coeffs")):
                w = f"{where}.coeffs[{i}]"
                n = _need(t, "n", w)
                if isinstance(n, bool) or not isinstance(n, int):
                    raise SpecError(f"{w}.n: expected an integer, got {n!r}")
                terms.append((n, _reim(t, w)))
            return TrigPolynomial(terms)
        if kind == "piecewise":
            pieces = []
            for i, t in enumerate(_list(_need(obj, "pieces", where), where + ".pieces")):
                w = f"{where}.pieces[{i}]"
                pieces.append((_number(_need(t, "from", w), w + ".from"),
                               _number(_need(t, "to", w), w + ".to"), _reim(t, w)))
            if not pieces:
                raise SpecError(f"{where}.pieces: empty")
            return PiecewiseConstant.from_pieces(pieces)
        if kind == "named":
            params = obj.get("params", {})
            if not isinstance(params, dict):
                raise SpecError(f"{where}.params: expected an object")
            return NamedClosedForm(_need(obj, "name", where),
                                   {k: _number(v, f"{where}.params.{k}") for k, v in params.items()})
        if kind == "samples":
            G = _need(obj, "grid_size", where)
            vals = [_pair(v, f"{where}.values[{i}]")
                    for i, v in enumerate(_list(_need(obj, "values", where), where + ".values"))]
            return SampledGrid(TorusGrid(int(G)), np.array(vals))
    except SpecError:
        raise
    except TorusError as e:
        raise SpecError(f"{where}: {e}") from None
    raise SpecError(f"{where}.kind: unknown kind {kind!r} (trig_poly, piecewise, named, samples)")


def function_to_json(f: TorusFunction) -> dict:
    if isinstance(f, TrigPolynomial):
        return {"kind": "trig_poly",
                "coeffs": [{"n": int(n), "re": c.real, "im": c.imag} for n, c in zip(f.indices, f.coeffs)]}
    if isinstance(f, PiecewiseConstant):
        starts, ends = f.intervals()
        return {"kind": "piecewise",
                "pieces": [{"from": float(a), "to": float(b), "re": v.real, "im": v.imag}
                           for a, b, v in zip(starts, ends, f.values)]}
    if isinstance(f, NamedClosedForm):
        return {"kind": "named", "name": f.name, "params": dict(f.params)}
    if isinstance(f, SampledGrid):
        return {"kind": "samples", "grid_size": f.grid.size,
                "values": [[v.real, v.imag] for v in f.values]}
    raise SpecError(f"cannot serialize {type(f).__name__}")


def _builtin(name: str, arg: str | None) -> TorusFunction:
    def num(default=None):
        if arg is None:
            if default is None:
                raise SpecError(f"builtin {name!r} needs a parameter, e.g. {name}:4")
            return default
        try:
            return float(arg)
        except ValueError:
            raise SpecError(f"builtin {name!r}: bad parameter {arg!r}") from None

    def integer(default=None):
        v = num(default)
        if v != int(v):
            raise SpecError(f"builtin {name!r}: parameter must be an integer")
        return int(v)

    if name == "sign":
        return sign_function()
    if name == "indicator":
        if arg is None:
            return indicator(0.0, math.pi)
        try:
            a, b = (float(s) for s in arg.split(","))
        except ValueError:
            raise SpecError(f"builtin 'indicator' expects indicator:a,b, got {arg!r}") from None
        return indicator(a, b)
    if name == "chi":
        return character(integer(1))
    if name == "one":
        return constant(1.0)
    if name == "fejer":
        return NamedClosedForm("fejer_kernel", {"n": integer()})
    if name == "dirichlet":
        return NamedClosedForm("dirichlet_kernel", {"n": integer()})
    if name == "poisson":
        return NamedClosedForm("poisson_kernel", {"r": num()})
    if name == "geometric":
        return geometric_pole(num())
    raise SpecError(f"unknown builtin {name!r}")


BUILTINS = ("sign", "indicator[:a,b]", "chi[:n]", "one", "fejer:n", "dirichlet:n", "poisson:r", "geometric:r")


def resolve_function(ref: str) -> TorusFunction:
    """A builtin shortcut (``sign``, ``fejer:8``, ...) or a path to a function JSON file."""
    name, _, arg = ref.partition(":")
    if name in ("sign", "indicator", "chi", "one", "fejer", "dirichlet", "poisson", "geometric") \
            and not Path(ref).exists():
        try:
            return _builtin(name, arg or None)
        except SpecError:
            raise
        except TorusError as e:
            raise SpecError(f"builtin {ref!r}: {e}") from None
    return function_from_json(load_json(ref), where=ref)


# ---------------------------------------------------------------------------
# coefficients, measures, sequences

def coefficients_to_json(c: CoefficientSequence) -> dict:
    return {"half_width": c.half_width, "values": [[v.real, v.imag] for v in c.values]}


def coefficients_from_json(obj: Any, where: str = "coefficients") -> CoefficientSequence:
    N = _need(obj, "half_width", where)
    if isinstance(N, bool) or not isinstance(N, int) or N < 0:
        raise SpecError(f"{where}.half_width: expected a nonnegative integer, got {N!r}")
    vals = [_pair(v, f"{where}.values[{i}]")
            for i, v in enumerate(_list(_need(obj, "values", where), where + ".values"))]
    if len(vals) != 2 * N + 1:
        raise SpecError(f"{where}.values: expected {2 * N + 1} entries, got {len(vals)}")
    return CoefficientSequence(N, np.array(vals))


def measure_from_json(obj: Any, where: str = "measure") -> TorusMeasure:
    atoms = []
    for i, a in enumerate(_list(obj.get("atoms", []) if isinstance(obj, dict) else obj, where + ".atoms")):
        w = f"{where}.atoms[{i}]"
        atoms.append((_number(_need(a, "theta", w), w + ".theta"), _reim(a, w)))
    dens = obj.get("density")
    density = None if dens is None else function_from_json(dens, where + ".density")
    return TorusMeasure(tuple(atoms), density)


def measure_to_json(mu: TorusMeasure) -> dict:
    return {"atoms": [{"theta": t, "re": m.real, "im": m.imag} for t, m in mu.atoms],
            "density": None if mu.density is None else function_to_json(mu.density)}


def sequence_from_json(obj: Any, where: str = "sequence") -> L1Sequence:
    lo = _need(obj, "lo", where)
    if isinstance(lo, bool) or not isinstance(lo, int):
        raise SpecError(f"{where}.lo: expected an integer, got {lo!r}")
    vals = [_pair(v, f"{where}.values[{i}]")
            for i, v in enumerate(_list(_need(obj, "values", where), where + ".values"))]
    return L1Sequence(lo, np.array(vals, dtype=complex))


def sequence_to_json(s: L1Sequence) -> dict:
    return {"lo": s.lo, "values": [[v.real, v.imag] for v in s.values]}


# ---------------------------------------------------------------------------
# emitters

def format_number(v) -> str:
    """17 significant digits in scientific notation; integers and strings verbatim."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.16e" % (float(v) + 0.0)  # no negative zero
    return str(v)


def to_csv(columns: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_number(v) for v in r])
    return buf.getvalue()


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.ndarray):
        return _plain(v.tolist())
    if isinstance(v, (complex, np.complexfloating)):
        return [_plain(float(v.real)), _plain(float(v.imag))]
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        v = float(v)
    if isinstance(v, float):
        return v + 0.0 if math.isfinite(v) else str(v)  # + 0.0 drops negative zero
    return v


def to_json(payload: dict, columns: Sequence[str] | None = None, rows=None) -> str:
    out = {"schema_version": SCHEMA_VERSION}
    if columns is not None:
        out["columns"] = list(columns)
        out["rows"] = [list(r) for r in rows]
    out.update(payload)
    return json.dumps(_plain(out), indent=2, sort_keys=False) + "\n"
