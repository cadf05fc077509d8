"""Relaxed Lagrangian duals restricted to a family of finite index sets.

For a fixed finite index set ``H`` the dual value is the LP
``max -b_H.lam  s.t.  A_H.T lam = -c,  lam >= 0`` (``-inf`` when infeasible).
The value over a family is the supremum over its members.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .lp import REPORT_TOL, TOL, DenseLP, Status, solve_dual_lp, solve_lp
from .model import (
    CountablePoly,
    ExplicitFinite,
    IndexFamily,
    IndexValue,
    IntervalPoly,
    LinearSIP,
    UnsupportedError,
    eval_rows,
    expand_family,
)

GAP_TOL = 1e-6
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class DualCertificate:
    """Finitely many indices with nonnegative multipliers."""

    support: tuple[tuple[IndexValue, float], ...] = ()

    def __post_init__(self):
        support = tuple((t.item() if isinstance(t, np.generic) else t, float(lam)) for t, lam in self.support)
        if any(not lam >= 0 for _, lam in support):
            raise ValueError("certificate multipliers must be nonnegative")
        idx = [t for t, _ in support]
        if len(set(idx)) != len(idx):
            raise ValueError("certificate indices must be distinct")
        object.__setattr__(self, "support", support)

    @property
    def indices(self) -> list[IndexValue]:
        return [t for t, _ in self.support]

    @property
    def multipliers(self) -> np.ndarray:
        return np.array([lam for _, lam in self.support])

    def combination(self, p: LinearSIP) -> tuple[np.ndarray, float]:
        """``(sum lam_t a_t, sum lam_t b_t)``."""
        if not self.support:
            return np.zeros(p.n), 0.0
        A, b = eval_rows(p.gen, self.indices)
        lam = self.multipliers
        return lam @ A, float(lam @ b)


@dataclass(frozen=True)
class TracePoint:
    m: int
    primal: float
    dual: float


def ext_sub(a: float, b: float) -> float:
    """``a - b`` on the extended reals; ``nan`` when both are the same infinity."""
    if math.isinf(a) and math.isinf(b) and (a > 0) == (b > 0):
        return math.nan
    return a - b


def finite_subproblem(p: LinearSIP, H: Sequence[IndexValue]) -> DenseLP:
    """The LP keeping only the constraints indexed by ``H``, in the given order."""
    if not len(H):
        raise ValueError("index set H is empty")
    A, b = eval_rows(p.gen, list(H))
    return DenseLP(p.cvec, A, b)


def _certificate(H, lam, cutoff=1e-12) -> DualCertificate:
    return DualCertificate(tuple((t, float(v)) for t, v in zip(H, lam) if v > cutoff))


def finite_dual(p: LinearSIP, H: Sequence[IndexValue], tol: float = TOL):
    """Dual value for the fixed index set ``H`` and, when finite, a certificate."""
    H = list(H)
    out = solve_dual_lp(finite_subproblem(p, H), tol)
    if out.status is Status.OPTIMAL:
        return out.value, _certificate(H, out.x)
    return out.value, None


def _parallel_residual(A, b, c):
    """Best ``lam >= 0`` for ``lam a_t = -c`` per row, and the residual norm."""
    sq = np.einsum("ij,ij->i", A, A)
    proj = -(A @ c)
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = np.where(sq > 0, np.maximum(0.0, proj / np.where(sq > 0, sq, 1.0)), 0.0)
    r = np.linalg.norm(lam[:, None] * A + c, axis=1)
    return lam, r


def _golden_min(f, lo, hi, width):
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > width:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    return x1 if f1 <= f2 else x2


def _local_minima(r):
    n = len(r)
    out = []
    for i in range(n):
        left = r[i - 1] if i > 0 else np.inf
        right = r[i + 1] if i < n - 1 else np.inf
        if r[i] <= left and r[i] <= right:
            out.append(i)
    return out


def sup_dual_h1(p: LinearSIP, grid: Sequence[IndexValue], eps_par: float = 1e-8, refine: bool = False):
    """Singleton-family dual ``sup_t sup_{lam>=0} inf_x c.x + lam (a_t.x - b_t)``.

    For a single row the inner infimum is finite only when ``lam a_t = -c``,
    so each index is tested for anti-parallelism with residual below
    ``eps_par``.  With ``refine`` on an interval problem, local minima of the
    residual on the grid are polished by golden-section search before the
    test.  Returns ``(value, certificate, t_best)``.
    """
    if not len(grid):
        raise ValueError("grid is empty")
    c = p.cvec
    grid = list(grid)
    A, b = eval_rows(p.gen, grid)
    lam, r = _parallel_residual(A, b, c)
    cand_t = list(grid)
    cand_lam = list(lam)
    cand_r = list(r)
    cand_b = list(b)
    cand_zero = list(~A.any(axis=1))

    gen = p.gen
    if refine and isinstance(gen, IntervalPoly) and len(grid) > 1:
        def resid(t):
            a_t, _ = eval_rows(gen, [t])
            return float(_parallel_residual(a_t, None, c)[1][0])

        for i in _local_minima(r):
            if r[i] == 0.0:
                continue
            lo = grid[max(i - 1, 0)]
            hi = grid[min(i + 1, len(grid) - 1)]
            t = _golden_min(resid, lo, hi, 1e-10)
            a_t, b_t = eval_rows(gen, [t])
            l_t, r_t = _parallel_residual(a_t, b_t, c)
            cand_t.append(t)
            cand_lam.append(float(l_t[0]))
            cand_r.append(float(r_t[0]))
            cand_b.append(float(b_t[0]))
            cand_zero.append(not a_t.any())

    best, best_i = -np.inf, None
    for i, (lam_t, r_t, b_t) in enumerate(zip(cand_lam, cand_r, cand_b)):
        if r_t > eps_par:
            continue
        if cand_zero[i] and b_t < 0:
            # the row reads 0 <= b_t < 0, so every multiplier is admissible
            val = np.inf
        else:
            val = -lam_t * b_t
        if val > best:
            best, best_i = val, i
    if best_i is None:
        return -np.inf, None, None
    t = cand_t[best_i]
    t = t.item() if isinstance(t, np.generic) else t
    cert = DualCertificate(((t, float(cand_lam[best_i])),)) if np.isfinite(best) else None
    return float(best), cert, t


def _prefix_indices(p: LinearSIP, max_m: int) -> list[IndexValue]:
    if isinstance(p.gen, CountablePoly):
        return list(range(1, max_m + 1))
    if isinstance(p.gen, ExplicitFinite):
        return list(p.gen.labels[:max_m])
    raise UnsupportedError("prefix traces need a countable or explicit ordered index set")


def sup_dual_prefix(p: LinearSIP, max_m: int, tol: float = TOL) -> list[TracePoint]:
    """Primal and dual values of the truncations to ``{1..m}``, ``m = 1..max_m``."""
    if max_m < 1:
        raise ValueError("max_m must be at least 1")
    idx = _prefix_indices(p, max_m)
    trace = []
    for m in range(1, len(idx) + 1):
        lp = finite_subproblem(p, idx[:m])
        primal = solve_lp(lp, tol).value
        dual = solve_dual_lp(lp, tol).value
        trace.append(TracePoint(m, float(primal), float(dual)))
    return trace


def sup_dual_full(p: LinearSIP, sampled_T: Sequence[IndexValue], tol: float = TOL):
    """Dual over all finite subsets of the sample: one LP over every sampled row.

    A finite value comes with the basic certificate (at most ``n`` positive
    multipliers).
    """
    if not len(sampled_T):
        raise ValueError("sampled index list is empty")
    return finite_dual(p, sampled_T, tol)


@dataclass
class DualityReport:
    primal: float
    dual: float
    gap: float
    certificate: DualCertificate | None = None
    t_best: IndexValue | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def indeterminate(self) -> bool:
        return math.isnan(self.gap)

    @property
    def zero_gap(self) -> bool:
        return math.isfinite(self.gap) and abs(self.gap) <= GAP_TOL


# Values known in closed form for the bundled problems, keyed by problem name.
KNOWN_VALUES = {
    "exam2": "true inf(P_N) = 0 (not attained); every finite truncation is unbounded below",
}


def duality_report(
    p: LinearSIP,
    family: IndexFamily,
    grid: int = 1001,
    max_m: int = 50,
    eps_par: float = 1e-8,
    refine: bool = True,
    tol: float = TOL,
) -> DualityReport:
    """Primal value on the sampled index set, dual value for ``family`` and their gap."""
    if isinstance(p.gen, CountablePoly):
        sample = p.sample(max_m)
    else:
        sample = p.sample(grid)
    cert, t_best = None, None
    if family.kind == "h1":
        dual, cert, t_best = sup_dual_h1(p, sample, eps_par, refine)
    elif family.kind == "hn":
        trace = sup_dual_prefix(p, len(sample), tol)
        dual = max(tp.dual for tp in trace)
    elif family.kind == "ft":
        dual, cert = sup_dual_full(p, sample, tol)
    else:
        dual = -np.inf
        for H in expand_family(family, sample):
            v, c = finite_dual(p, H, tol)
            if v > dual:
                dual, cert = v, c
    if t_best is not None and t_best not in sample:
        # refinement left the grid; keep the dual support inside the primal sample
        sample = sorted([*sample, t_best])
    primal = solve_lp(finite_subproblem(p, sample), tol).value
    rep = DualityReport(float(primal), float(dual), ext_sub(primal, dual), cert, t_best)
    rep.notes.append(f"primal and dual computed on a sample of {len(sample)} indices")
    if rep.indeterminate:
        rep.notes.append("gap indeterminate: primal and dual are the same infinity")
    if dual > primal + REPORT_TOL:
        rep.notes.append("weak duality violated on the sample (numerical failure)")
    if p.name in KNOWN_VALUES:
        rep.notes.append(KNOWN_VALUES[p.name])
    return rep
