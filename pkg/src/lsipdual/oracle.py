"""Ground-truth helpers: dense grid values, Farkas certificates from the full
dual, and seeded random instances for property tests."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .duals import DualCertificate, finite_subproblem, sup_dual_full
from .lp import solve_lp
from .model import ExplicitFinite, IntervalPoly, LinearSIP, UnsupportedError


def dense_grid_value(p: LinearSIP, N: int) -> float:
    """Optimal value of the problem restricted to an ``N``-point grid.

    A relaxation, hence a lower bound on the true value.
    """
    if not isinstance(p.gen, IntervalPoly):
        raise UnsupportedError("dense_grid_value needs an interval index set")
    return solve_lp(finite_subproblem(p, p.sample(N))).value


def farkas_oracle(p: LinearSIP, sampled_T, alpha: float) -> DualCertificate | None:
    """A certificate for ``c.x >= alpha`` on the sampled system, if the full dual reaches ``alpha``."""
    value, cert = sup_dual_full(p, sampled_T)
    if cert is None or value < alpha:
        return None
    return cert


@dataclass(frozen=True)
class InstanceSpec:
    seed: int
    n: int = 2
    m: int = 3
    lo: int = -5
    hi: int = 5

    def __post_init__(self):
        if not 1 <= self.n <= 4:
            raise ValueError(f"n must be in 1..4, got {self.n}")
        if not 1 <= self.m <= 10:
            raise ValueError(f"m must be in 1..10, got {self.m}")
        if self.lo > self.hi:
            raise ValueError("empty coefficient range")


def random_finite_lsip(spec: InstanceSpec) -> LinearSIP:
    """Seeded random explicit instance with integer data.

    With probability 1/2 the rows ``-x_i <= 1`` are appended, which keeps
    many instances bounded.
    """
    rng = np.random.default_rng(spec.seed)
    A = rng.integers(spec.lo, spec.hi + 1, size=(spec.m, spec.n))
    b = rng.integers(spec.lo, spec.hi + 1, size=spec.m)
    c = rng.integers(spec.lo, spec.hi + 1, size=spec.n)
    rows = [(tuple(map(float, a)), float(bi)) for a, bi in zip(A, b)]
    if rng.random() < 0.5:
        for i in range(spec.n):
            e = [0.0] * spec.n
            e[i] = -1.0
            rows.append((tuple(e), 1.0))
    return LinearSIP(tuple(map(float, c)), ExplicitFinite(tuple(rows)), name=f"random-{spec.seed}")
