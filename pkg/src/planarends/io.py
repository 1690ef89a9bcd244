"""Deterministic JSON serialization of the package's values and reports.

Exact scalars are written as ``{"re": "p/q", "im": "p/q"}``; extended-precision
numbers as decimal strings with their precision.  Keys are sorted so equal
inputs give byte-identical files.
"""

from __future__ import annotations

import dataclasses
import json
import math
from fractions import Fraction

import numpy as np
from mpmath.libmp import repr_dps

from .algebra import ExactComplex, Polynomial, RationalFunction, context
from .algebra.numeric import is_numeric_scalar
from .contact import BranchDivisor, BranchPoint, ProjectiveCurve4
from .geometry import EnergyReport
from .klein import MeroMap3, NullCurve5, Pluecker6, Pole
from .weierstrass import PengXiaoParams

__all__ = ["to_jsonable", "from_jsonable", "dumps", "loads", "write_json"]


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _mp_str(x, dps: int) -> str:
    ctx = context(dps)
    return ctx.nstr(x, repr_dps(ctx.prec))  # enough digits to round-trip the binary value


def _scalar(x):
    if isinstance(x, ExactComplex):
        return {"re": _frac(x.re), "im": _frac(x.im)}
    if is_numeric_scalar(x):
        dps = x.context.dps
        c = x.context.mpc(x)
        return {"re": _mp_str(c.real, dps), "im": _mp_str(c.imag, dps), "precision": dps}
    raise TypeError(f"not a scalar: {type(x).__name__}")


def _poly(p: Polynomial):
    out = {"type": "Polynomial", "exact": p.exact, "coeffs": [_scalar(c) for c in p.coeffs]}
    if not p.exact:
        out["precision"] = p.ctx.dps
    return out


def to_jsonable(obj):
    """Plain JSON data for any package value (recursing through containers)."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else str(float(obj))
    if isinstance(obj, Fraction):
        return _frac(obj)
    if isinstance(obj, ExactComplex) or is_numeric_scalar(obj):
        return _scalar(obj)
    if isinstance(obj, Polynomial):
        return _poly(obj)
    if isinstance(obj, RationalFunction):
        return {"type": "RationalFunction", "num": _poly(obj.num), "den": _poly(obj.den)}
    if isinstance(obj, MeroMap3):
        return {"type": "MeroMap3", "planar_ends": obj.planar_ends, "F": [to_jsonable(f) for f in obj.F]}
    if isinstance(obj, NullCurve5):
        return {"type": "NullCurve5", "reduced": obj.reduced, "w": [_poly(p) for p in obj.w]}
    if isinstance(obj, Pluecker6):
        return {"type": "Pluecker6", "coords": [_poly(p) for p in obj.coords]}
    if isinstance(obj, ProjectiveCurve4):
        return {"type": "ProjectiveCurve4", "lift": [_poly(p) for p in obj.lift]}
    if isinstance(obj, PengXiaoParams):
        return {"type": "PengXiaoParams", "k": obj.k, "precision": obj.precision,
                **{name: _scalar(getattr(obj, name)) for name in ("a", "b", "c", "lam")}}
    if isinstance(obj, BranchDivisor):
        return {"type": "BranchDivisor", "total": obj.total,
                "entries": [to_jsonable(e) for e in obj.entries]}
    if isinstance(obj, (BranchPoint, Pole, EnergyReport)) or dataclasses.is_dataclass(obj):
        data = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        data.pop("exact_factor", None)
        return {"type": type(obj).__name__, **data}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _load_scalar(d):
    if "precision" in d:
        return context(d["precision"]).mpc(d["re"], d["im"])
    return ExactComplex(Fraction(d["re"]), Fraction(d["im"]))


def _load_poly(d) -> Polynomial:
    coeffs = [_load_scalar(c) for c in d["coeffs"]]
    ctx = None if d["exact"] else context(d["precision"])
    return Polynomial(coeffs, ctx)


def from_jsonable(d):
    """Inverse of :func:`to_jsonable` for scalars, polynomials, maps, null curves and parameters."""
    if isinstance(d, list):
        return [from_jsonable(x) for x in d]
    if not isinstance(d, dict):
        return d
    kind = d.get("type")
    if kind is None and set(d) >= {"re", "im"}:
        return _load_scalar(d)
    if kind == "Polynomial":
        return _load_poly(d)
    if kind == "RationalFunction":
        num, den = _load_poly(d["num"]), _load_poly(d["den"])
        return RationalFunction(num, den, reduce=num.exact and den.exact)
    if kind == "MeroMap3":
        return MeroMap3(tuple(from_jsonable(f) for f in d["F"]), planar_ends=d["planar_ends"])
    if kind == "NullCurve5":
        return NullCurve5(tuple(_load_poly(p) for p in d["w"]), reduced=d["reduced"])
    if kind == "Pluecker6":
        return Pluecker6(*(_load_poly(p) for p in d["coords"]))
    if kind == "ProjectiveCurve4":
        return ProjectiveCurve4(tuple(_load_poly(p) for p in d["lift"]))
    if kind == "PengXiaoParams":
        vals = [_load_scalar(d[name]) for name in ("a", "b", "c", "lam")]
        return PengXiaoParams(d["k"], *vals, precision=d["precision"])
    return {k: from_jsonable(v) for k, v in d.items()}


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def loads(text: str):
    return from_jsonable(json.loads(text))


def write_json(obj, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps(obj))
