"""Linear semi-infinite programs and index families.

A problem is ``min c.x  s.t.  a(t).x <= b(t)`` for every index ``t`` of some
set ``T``.  Three kinds of index sets are supported: an explicit finite list
of rows, a real interval with polynomial data, and the positive integers
with polynomial data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from numbers import Integral, Real
from typing import Iterable, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly


class IndexRangeError(ValueError):
    """An index lies outside the range of a constraint generator."""


class UnsupportedError(ValueError):
    """The requested operation is not available for this kind of input."""


IndexValue = Union[float, int]


@dataclass(frozen=True)
class ScalarPoly:
    """Univariate polynomial with ascending-degree coefficients."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(v) for v in self.coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        if not all(np.isfinite(coeffs)):
            raise ValueError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, t):
        return npoly.polyval(t, self.coeffs)

    @property
    def degree(self) -> int:
        """Degree after dropping zero leading coefficients (0 for the zero polynomial)."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def deriv(self, order: int = 1) -> ScalarPoly:
        d = npoly.polyder(self.coeffs, order)
        return ScalarPoly(tuple(d) if len(d) else (0.0,))


def _as_poly(p) -> ScalarPoly:
    return p if isinstance(p, ScalarPoly) else ScalarPoly(tuple(p))


@dataclass(frozen=True)
class ExplicitFinite:
    """A finite list of rows ``(a, b)``.

    Rows are addressed by ``labels``; when none are given they are the
    positions ``1..m`` so that prefixes read like the countable case.
    """

    rows: tuple[tuple[tuple[float, ...], float], ...]
    labels: tuple[IndexValue, ...] | None = None

    def __post_init__(self):
        rows = tuple((tuple(float(v) for v in a), float(b)) for a, b in self.rows)
        if not rows:
            raise ValueError("explicit generator needs at least one row")
        n = len(rows[0][0])
        if any(len(a) != n for a, _ in rows):
            raise ValueError("explicit rows have inconsistent lengths")
        labels = self.labels
        if labels is None:
            labels = tuple(range(1, len(rows) + 1))
        labels = tuple(labels)
        if len(labels) != len(rows):
            raise ValueError("need exactly one label per row")
        if len(set(labels)) != len(labels):
            raise ValueError("row labels must be distinct")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.rows[0][0])

    @property
    def kind(self) -> str:
        return "finite"


@dataclass(frozen=True)
class IntervalPoly:
    """Rows ``a(t), b(t)`` polynomial in ``t`` over ``[lo, hi]``."""

    lo: float
    hi: float
    a_polys: tuple[ScalarPoly, ...]
    b_poly: ScalarPoly

    def __post_init__(self):
        if not float(self.lo) < float(self.hi):
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")
        if not self.a_polys:
            raise ValueError("need at least one coefficient polynomial")
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "a_polys", tuple(_as_poly(p) for p in self.a_polys))
        object.__setattr__(self, "b_poly", _as_poly(self.b_poly))

    @property
    def n(self) -> int:
        return len(self.a_polys)

    @property
    def kind(self) -> str:
        return "interval"


@dataclass(frozen=True)
class CountablePoly:
    """Rows ``a(k), b(k)`` polynomial in the integer ``k = 1, 2, 3, ...``."""

    a_polys: tuple[ScalarPoly, ...]
    b_poly: ScalarPoly

    def __post_init__(self):
        if not self.a_polys:
            raise ValueError("need at least one coefficient polynomial")
        object.__setattr__(self, "a_polys", tuple(_as_poly(p) for p in self.a_polys))
        object.__setattr__(self, "b_poly", _as_poly(self.b_poly))

    @property
    def n(self) -> int:
        return len(self.a_polys)

    @property
    def kind(self) -> str:
        return "countable"


ConstraintGenerator = Union[ExplicitFinite, IntervalPoly, CountablePoly]


def _check_index(gen: ConstraintGenerator, idx) -> None:
    if isinstance(gen, IntervalPoly):
        if not isinstance(idx, Real) or not gen.lo <= idx <= gen.hi:
            raise IndexRangeError(f"index {idx!r} outside [{gen.lo}, {gen.hi}]")
    elif isinstance(gen, CountablePoly):
        ok = isinstance(idx, Integral) or (isinstance(idx, Real) and float(idx).is_integer())
        if not ok or idx < 1:
            raise IndexRangeError(f"index {idx!r} is not a positive integer")
    elif idx not in gen.labels:
        raise IndexRangeError(f"index {idx!r} is not a row label")


def eval_constraint(gen: ConstraintGenerator, idx: IndexValue) -> tuple[np.ndarray, float]:
    """Return the row ``(a, b)`` of ``gen`` at index ``idx``."""
    _check_index(gen, idx)
    if isinstance(gen, ExplicitFinite):
        a, b = gen.rows[gen.labels.index(idx)]
        return np.array(a), b
    a = np.array([float(p(idx)) for p in gen.a_polys])
    return a, float(gen.b_poly(idx))


def eval_rows(gen: ConstraintGenerator, indices: Sequence[IndexValue]) -> tuple[np.ndarray, np.ndarray]:
    """Stack ``eval_constraint`` over ``indices`` into a matrix and a vector."""
    if not len(indices):
        return np.zeros((0, gen.n)), np.zeros(0)
    for idx in indices:
        _check_index(gen, idx)
    if isinstance(gen, ExplicitFinite):
        pos = {lab: i for i, lab in enumerate(gen.labels)}
        A = np.array([gen.rows[pos[i]][0] for i in indices], dtype=float)
        b = np.array([gen.rows[pos[i]][1] for i in indices], dtype=float)
        return A, b
    t = np.asarray(indices, dtype=float)
    A = np.column_stack([p(t) for p in gen.a_polys])
    return A, np.asarray(gen.b_poly(t), dtype=float)


def sample_interval(lo: float, hi: float, N: int) -> list[float]:
    """``N`` equally spaced points of ``[lo, hi]``, both endpoints included exactly."""
    if N < 2:
        raise ValueError(f"need N >= 2 sample points, got {N}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    pts = np.linspace(lo, hi, N)
    pts[0], pts[-1] = lo, hi
    return [float(v) for v in pts]


@dataclass(frozen=True)
class LinearSIP:
    """``min c.x`` subject to the rows produced by ``gen``."""

    c: tuple[float, ...]
    gen: ConstraintGenerator
    name: str | None = None

    def __post_init__(self):
        c = tuple(float(v) for v in self.c)
        if len(c) != self.gen.n:
            raise ValueError(f"objective has length {len(c)} but constraints have n={self.gen.n}")
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def cvec(self) -> np.ndarray:
        return np.array(self.c)

    def sample(self, N: int) -> list[IndexValue]:
        """A default finite sample of ``T``.

        Interval: ``N`` grid points.  Countable: ``1..N``.  Explicit: all labels.
        """
        g = self.gen
        if isinstance(g, IntervalPoly):
            return sample_interval(g.lo, g.hi, N)
        if isinstance(g, CountablePoly):
            return list(range(1, N + 1))
        return list(g.labels)


@dataclass(frozen=True)
class IndexFamily:
    """Which family of finite index subsets a dual is allowed to use.

    ``kind`` is one of ``"h1"`` (singletons), ``"hn"`` (prefixes ``{1..m}``),
    ``"ft"`` (all finite subsets) or ``"explicit"``.
    """

    kind: str
    subsets: tuple[frozenset, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in ("h1", "hn", "ft", "explicit"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        subsets = tuple(frozenset(s) for s in self.subsets)
        if self.kind == "explicit":
            if not subsets or any(len(s) == 0 for s in subsets):
                raise ValueError("explicit family needs non-empty subsets")
        elif subsets:
            raise ValueError(f"family {self.kind!r} takes no explicit subsets")
        object.__setattr__(self, "subsets", subsets)

    @classmethod
    def explicit(cls, subsets: Iterable[Iterable[IndexValue]]) -> IndexFamily:
        return cls("explicit", tuple(frozenset(s) for s in subsets))


H1 = IndexFamily("h1")
HN = IndexFamily("hn")
FT = IndexFamily("ft")


def _explicit_T(T) -> list:
    if isinstance(T, (IntervalPoly, CountablePoly)):
        raise UnsupportedError(f"index set of kind {T.kind!r} is not explicit and finite")
    if isinstance(T, ExplicitFinite):
        return list(T.labels)
    return list(T)


def family_is_covering(family: IndexFamily, T) -> bool:
    """Whether the union of the family's members is all of ``T``.

    ``T`` is a finite list of indices or an explicit generator.
    """
    T = _explicit_T(T)
    if family.kind in ("h1", "hn", "ft"):
        return True
    covered = set().union(*family.subsets)
    return covered == set(T)


def family_is_directed(family: IndexFamily, T=None) -> bool:
    """Whether any two members are contained in a common member."""
    if family.kind in ("hn", "ft"):
        return True
    if family.kind == "h1":
        # singletons are directed only over a one-point index set
        return T is not None and len(set(_explicit_T(T))) <= 1
    members = family.subsets
    for G, H in combinations(members, 2):
        union = G | H
        if not any(union <= L for L in members):
            return False
    return True


def expand_family(family: IndexFamily, sampled_T: Sequence[IndexValue], max_count: int | None = None) -> list[tuple]:
    """Materialize the members of ``family`` over a finite ordered sample of ``T``."""
    if not len(sampled_T):
        raise ValueError("sampled index list is empty")
    T = list(sampled_T)
    if family.kind == "h1":
        out = [(t,) for t in T]
    elif family.kind == "hn":
        out = [tuple(T[:m]) for m in range(1, len(T) + 1)]
    elif family.kind == "ft":
        out = [tuple(T)]
    else:
        order = {t: i for i, t in enumerate(T)}
        out = [tuple(sorted(s, key=lambda t: order.get(t, len(order)))) for s in family.subsets]
    if max_count is not None:
        out = out[:max_count]
    return out
