"""JSON problem and certificate files.

Problem file::

    {"name": "exam1",                                  # optional
     "n": 2,
     "objective": [1, 1],
     "index_set": {"kind": "interval", "lo": 0, "hi": 1},
     "constraints": {"kind": "polynomial",
                     "a": [[0, -1], [-1, 1]],          # ascending degree
                     "b": [0, -1, 1]}}

``index_set.kind`` is ``interval``, ``countable`` (k = 1, 2, ...) or
``finite``.  Finite index sets take ``{"kind": "explicit", "rows": [{"a":
[...], "b": ...}, ...]}`` constraints and optional ``index_set.values``
labels (default 1..m).

Certificate file::

    {"support": [{"index": 0.5, "lambda": 2}], "point": [0.25, 0.25], "alpha": 0.5}
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from numbers import Real

from .duals import DualCertificate
from .model import (
    CountablePoly,
    ExplicitFinite,
    IndexRangeError,
    IntervalPoly,
    LinearSIP,
    ScalarPoly,
    eval_constraint,
)


class ProblemFileError(ValueError):
    """A problem or certificate document is malformed or inconsistent."""


def _loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ProblemFileError("line 1: top-level value must be an object")
    return doc


def _get(doc: dict, key: str, where: str):
    if key not in doc:
        raise ProblemFileError(f"field '{where}{key}' is missing")
    return doc[key]


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, Real) or not math.isfinite(v):
        raise ProblemFileError(f"field '{where}' must be a finite number, got {v!r}")
    return float(v)


def _numbers(v, where: str) -> tuple[float, ...]:
    if not isinstance(v, list):
        raise ProblemFileError(f"field '{where}' must be an array of numbers")
    return tuple(_number(x, f"{where}[{i}]") for i, x in enumerate(v))


def _poly(v, where: str) -> ScalarPoly:
    coeffs = _numbers(v, where)
    if not coeffs:
        raise ProblemFileError(f"field '{where}' needs at least one coefficient")
    return ScalarPoly(coeffs)


def parse_problem(text: str) -> LinearSIP:
    doc = _loads(text)
    n = _get(doc, "n", "")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ProblemFileError(f"field 'n' must be a positive integer, got {n!r}")
    c = _numbers(_get(doc, "objective", ""), "objective")
    if len(c) != n:
        raise ProblemFileError(f"validation: 'objective' has length {len(c)}, expected n={n}")
    iset = _get(doc, "index_set", "")
    cons = _get(doc, "constraints", "")
    if not isinstance(iset, dict) or not isinstance(cons, dict):
        raise ProblemFileError("fields 'index_set' and 'constraints' must be objects")
    ikind = _get(iset, "kind", "index_set.")
    ckind = _get(cons, "kind", "constraints.")

    if ikind in ("interval", "countable"):
        if ckind != "polynomial":
            raise ProblemFileError(f"validation: index_set '{ikind}' needs polynomial constraints")
        a_raw = _get(cons, "a", "constraints.")
        if not isinstance(a_raw, list) or len(a_raw) != n:
            raise ProblemFileError(f"validation: 'constraints.a' must hold n={n} coefficient arrays")
        a_polys = tuple(_poly(v, f"constraints.a[{i}]") for i, v in enumerate(a_raw))
        b_poly = _poly(_get(cons, "b", "constraints."), "constraints.b")
        if ikind == "interval":
            lo = _number(_get(iset, "lo", "index_set."), "index_set.lo")
            hi = _number(_get(iset, "hi", "index_set."), "index_set.hi")
            if not lo < hi:
                raise ProblemFileError(f"validation: interval needs lo < hi, got [{lo}, {hi}]")
            gen = IntervalPoly(lo, hi, a_polys, b_poly)
        else:
            gen = CountablePoly(a_polys, b_poly)
    elif ikind == "finite":
        if ckind != "explicit":
            raise ProblemFileError("validation: index_set 'finite' needs explicit constraints")
        raw_rows = _get(cons, "rows", "constraints.")
        if not isinstance(raw_rows, list) or not raw_rows:
            raise ProblemFileError("field 'constraints.rows' must be a non-empty array")
        rows = []
        for i, r in enumerate(raw_rows):
            where = f"constraints.rows[{i}]"
            if not isinstance(r, dict):
                raise ProblemFileError(f"field '{where}' must be an object")
            a = _numbers(_get(r, "a", where + "."), where + ".a")
            if len(a) != n:
                raise ProblemFileError(f"validation: '{where}.a' has length {len(a)}, expected n={n}")
            rows.append((a, _number(_get(r, "b", where + "."), where + ".b")))
        labels = iset.get("values")
        if labels is not None:
            if not isinstance(labels, list) or len(labels) != len(rows):
                raise ProblemFileError("validation: 'index_set.values' needs one label per row")
            labels = tuple(_label(v, f"index_set.values[{i}]") for i, v in enumerate(labels))
            if len(set(labels)) != len(labels):
                raise ProblemFileError("validation: 'index_set.values' must be distinct")
        gen = ExplicitFinite(tuple(rows), labels)
    else:
        raise ProblemFileError(f"field 'index_set.kind' must be interval, countable or finite, got {ikind!r}")

    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ProblemFileError("field 'name' must be a string")
    return LinearSIP(c, gen, name)


def _label(v, where):
    if isinstance(v, bool) or not isinstance(v, Real):
        raise ProblemFileError(f"field '{where}' must be a number")
    return int(v) if isinstance(v, int) else float(v)


def render_problem(p: LinearSIP) -> str:
    gen = p.gen
    doc: dict = {}
    if p.name is not None:
        doc["name"] = p.name
    doc["n"] = p.n
    doc["objective"] = list(p.c)
    if isinstance(gen, IntervalPoly):
        doc["index_set"] = {"kind": "interval", "lo": gen.lo, "hi": gen.hi}
    elif isinstance(gen, CountablePoly):
        doc["index_set"] = {"kind": "countable"}
    else:
        doc["index_set"] = {"kind": "finite", "values": list(gen.labels)}
    if isinstance(gen, ExplicitFinite):
        doc["constraints"] = {"kind": "explicit", "rows": [{"a": list(a), "b": b} for a, b in gen.rows]}
    else:
        doc["constraints"] = {
            "kind": "polynomial",
            "a": [list(q.coeffs) for q in gen.a_polys],
            "b": list(gen.b_poly.coeffs),
        }
    return json.dumps(doc, indent=2) + "\n"


@dataclass(frozen=True)
class CertificateFile:
    cert: DualCertificate
    point: tuple[float, ...] | None = None
    alpha: float | None = None


def parse_certificate(text: str, p: LinearSIP) -> CertificateFile:
    """Parse a certificate document and check its indices against ``p``."""
    doc = _loads(text)
    support = _get(doc, "support", "")
    if not isinstance(support, list):
        raise ProblemFileError("field 'support' must be an array")
    entries = []
    for i, e in enumerate(support):
        where = f"support[{i}]"
        if not isinstance(e, dict):
            raise ProblemFileError(f"field '{where}' must be an object")
        idx = _label(_get(e, "index", where + "."), where + ".index")
        lam = _number(_get(e, "lambda", where + "."), where + ".lambda")
        if lam < 0:
            raise ProblemFileError(f"validation: '{where}.lambda' must be >= 0, got {lam}")
        if isinstance(p.gen, CountablePoly) and isinstance(idx, float) and idx.is_integer():
            idx = int(idx)
        try:
            eval_constraint(p.gen, idx)
        except IndexRangeError as err:
            raise ProblemFileError(f"validation: '{where}.index': {err}") from None
        entries.append((idx, lam))
    try:
        cert = DualCertificate(tuple(entries))
    except ValueError as err:
        raise ProblemFileError(f"validation: {err}") from None
    point = doc.get("point")
    if point is not None:
        point = _numbers(point, "point")
        if len(point) != p.n:
            raise ProblemFileError(f"validation: 'point' has length {len(point)}, expected n={p.n}")
    alpha = doc.get("alpha")
    if alpha is not None:
        alpha = _number(alpha, "alpha")
    return CertificateFile(cert, point, alpha)


def render_certificate(cf: CertificateFile) -> str:
    doc: dict = {"support": [{"index": t, "lambda": lam} for t, lam in cf.cert.support]}
    if cf.point is not None:
        doc["point"] = list(cf.point)
    if cf.alpha is not None:
        doc["alpha"] = cf.alpha
    return json.dumps(doc, indent=2) + "\n"
