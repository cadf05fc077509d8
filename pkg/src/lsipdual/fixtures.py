"""The two worked problems used throughout the tests and the data/ files.

``exam1(c)``: ``min c.x  s.t.  -t x1 + (t-1) x2 + t - t^2 <= 0``, ``t in [0, 1]``.
For ``c > 0`` the optimum is ``c1 c2 / (c1 + c2)``, attained at
``((c2/s)^2, (c1/s)^2)`` with ``s = c1 + c2`` and a single active index
``t = c1/s`` carrying multiplier ``s``.

``exam2()``: ``min x2  s.t.  x1 + k(k+1) x2 >= 2k + 1``, ``k = 1, 2, ...``.
The infimum is 0 and is not attained, while every dual is ``-inf``.
"""
from __future__ import annotations

from .duals import DualCertificate
from .model import CountablePoly, IntervalPoly, LinearSIP, ScalarPoly


def exam1(c=(1.0, 1.0)) -> LinearSIP:
    gen = IntervalPoly(
        0.0,
        1.0,
        (ScalarPoly((0.0, -1.0)), ScalarPoly((-1.0, 1.0))),
        ScalarPoly((0.0, -1.0, 1.0)),
    )
    return LinearSIP(tuple(c), gen, name="exam1")


def exam1_solution(c):
    """``(value, x_bar, t_bar, multiplier)`` in closed form, for ``c`` with positive entries."""
    c1, c2 = map(float, c)
    s = c1 + c2
    return c1 * c2 / s, ((c2 / s) ** 2, (c1 / s) ** 2), c1 / s, s


def exam1_certificate(c) -> DualCertificate:
    _, _, t_bar, lam = exam1_solution(c)
    return DualCertificate(((t_bar, lam),))


def exam2() -> LinearSIP:
    # x1 + k(k+1) x2 >= 2k+1  rewritten as  -x1 - (k + k^2) x2 <= -1 - 2k
    gen = CountablePoly(
        (ScalarPoly((-1.0,)), ScalarPoly((0.0, -1.0, -1.0))),
        ScalarPoly((-1.0, -2.0)),
    )
    return LinearSIP((0.0, 1.0), gen, name="exam2")
