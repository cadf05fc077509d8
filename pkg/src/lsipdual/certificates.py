"""Checking Farkas and optimality certificates for linear semi-infinite programs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from .duals import DualCertificate
from .model import IndexValue, IntervalPoly, LinearSIP, eval_rows

CERT_TOL = 1e-8


@dataclass(frozen=True)
class OptimalityCertificate:
    x_bar: tuple[float, ...]
    cert: DualCertificate

    def __post_init__(self):
        object.__setattr__(self, "x_bar", tuple(float(v) for v in self.x_bar))


@dataclass
class VerificationReport:
    stationarity_ok: bool
    complementarity_ok: bool
    feasibility_ok: bool
    residuals: dict[str, float] = field(default_factory=dict)
    worst_index: IndexValue | None = None

    @property
    def ok(self) -> bool:
        return self.stationarity_ok and self.complementarity_ok and self.feasibility_ok


def _feasibility_poly(gen, x) -> Polynomial:
    g = Polynomial([0.0])
    for xi, a in zip(x, gen.a_polys):
        g = g + xi * Polynomial(a.coeffs)
    return g - Polynomial(gen.b_poly.coeffs)


def _local_max_points(g: Polynomial, lo: float, hi: float, n_samples: int) -> list[float]:
    dg = g.deriv()
    s = np.linspace(lo, hi, n_samples)
    v = dg(s)
    pts = list(s[v == 0.0])
    for k in np.flatnonzero((v[:-1] > 0) & (v[1:] < 0)):
        pts.append(brentq(dg, s[k], s[k + 1], xtol=1e-12))
    return pts


def check_feasibility(
    p: LinearSIP, x, tol: float = CERT_TOL, grid: int = 1001, refine: bool = True
) -> tuple[bool, IndexValue, float]:
    """Largest constraint violation ``max_t a_t.x - b_t`` over the sampled index set.

    For interval problems with ``refine``, interior local maxima of the
    polynomial ``t -> a(t).x - b(t)`` are located from sign changes of its
    derivative on ``4*grid`` points.  Returns ``(feasible, worst_index, margin)``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (p.n,):
        raise ValueError(f"point has shape {x.shape}, expected ({p.n},)")
    idx = p.sample(grid)
    A, b = eval_rows(p.gen, idx)
    g = A @ x - b
    i = int(np.argmax(g))
    worst, margin = idx[i], float(g[i])
    if refine and isinstance(p.gen, IntervalPoly):
        gen = p.gen
        poly = _feasibility_poly(gen, x)
        for t in _local_max_points(poly, gen.lo, gen.hi, 4 * grid):
            a_t, b_t = eval_rows(gen, [float(t)])
            val = float(a_t[0] @ x - b_t[0])
            if val > margin:
                worst, margin = float(t), val
    return margin <= tol, worst, margin


def verify_farkas(p: LinearSIP, cert: DualCertificate, alpha: float, tol: float = CERT_TOL) -> bool:
    """``sum lam_t a_t = -c`` and ``-sum lam_t b_t >= alpha``, both up to ``tol``."""
    comb_a, comb_b = cert.combination(p)
    return bool(np.abs(comb_a + p.cvec).max(initial=0.0) <= tol and -comb_b >= alpha - tol)


def _stationarity(p, oc):
    comb_a, comb_b = oc.cert.combination(p)
    return float(np.abs(comb_a + p.cvec).max(initial=0.0)), comb_b


def verify_optimality(
    p: LinearSIP, oc: OptimalityCertificate, tol: float = CERT_TOL, grid: int = 1001, refine: bool = True
) -> VerificationReport:
    """Aggregate check: ``sum lam a = -c`` and ``sum lam b = -c.x_bar``, plus feasibility of ``x_bar``."""
    x = np.array(oc.x_bar)
    stat, comb_b = _stationarity(p, oc)
    compl = abs(comb_b + float(p.cvec @ x))
    feasible, worst, margin = check_feasibility(p, x, tol, grid, refine)
    return VerificationReport(
        stat <= tol,
        compl <= tol,
        feasible,
        {"stationarity": stat, "complementarity": compl, "feasibility_margin": margin},
        worst,
    )


def check_kkt(
    p: LinearSIP, oc: OptimalityCertificate, tol: float = CERT_TOL, grid: int = 1001, refine: bool = True
) -> VerificationReport:
    """Like ``verify_optimality`` but with complementarity ``|lam_t (a_t.x - b_t)| <= tol``
    checked for each multiplier separately."""
    x = np.array(oc.x_bar)
    stat, _ = _stationarity(p, oc)
    if oc.cert.support:
        A, b = eval_rows(p.gen, oc.cert.indices)
        compl = float(np.abs(oc.cert.multipliers * (A @ x - b)).max())
    else:
        compl = 0.0
    feasible, worst, margin = check_feasibility(p, x, tol, grid, refine)
    return VerificationReport(
        stat <= tol,
        compl <= tol,
        feasible,
        {"stationarity": stat, "complementarity": compl, "feasibility_margin": margin},
        worst,
    )


class OptimalityConditions(NamedTuple):
    """The three equivalent primal-dual optimality statements, linear forms."""

    optimal_pair: bool
    lagrangian_attained: bool
    stationary_complementary: bool

    @property
    def agree(self) -> bool:
        return len(set(self)) == 1


def optimality_conditions(
    p: LinearSIP,
    x_bar,
    cert: DualCertificate,
    primal_value: float,
    dual_value: float,
    tol: float = 1e-6,
) -> OptimalityConditions:
    """Evaluate, for a feasible ``x_bar`` and a certificate, whether

    * ``x_bar`` is primal optimal, ``cert`` is dual optimal and there is no gap;
    * ``c.x_bar`` equals the infimum of the Lagrangian and each
      ``lam_t (a_t.x_bar - b_t)`` vanishes;
    * the Lagrangian gradient ``c + sum lam_t a_t`` is zero and each
      ``lam_t (a_t.x_bar - b_t)`` vanishes.

    ``primal_value`` and ``dual_value`` are the optimal values found by
    independent solves.
    """
    x = np.asarray(x_bar, dtype=float)
    c = p.cvec
    comb_a, comb_b = cert.combination(p)
    stationary = np.abs(comb_a + c).max(initial=0.0) <= tol
    cert_value = -comb_b if stationary else -math.inf
    fx = float(c @ x)

    first = (
        math.isfinite(primal_value)
        and abs(fx - primal_value) <= tol
        and abs(cert_value - dual_value) <= tol
        and abs(primal_value - dual_value) <= tol
    )

    if cert.support:
        A, b = eval_rows(p.gen, cert.indices)
        slack_ok = bool(np.all(np.abs(cert.multipliers * (A @ x - b)) <= tol))
    else:
        slack_ok = True
    # inf_x of the Lagrangian is -sum lam b when stationary, -inf otherwise
    lagr_inf = cert_value
    second = math.isfinite(lagr_inf) and abs(fx - lagr_inf) <= tol and slack_ok
    third = bool(stationary) and slack_ok
    return OptimalityConditions(bool(first), bool(second), bool(third))
