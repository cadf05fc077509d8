"""Dense linear programming and polyhedral cone probes.

``solve_lp`` handles ``min c.x  s.t.  A x <= b`` with free ``x`` by splitting
``x = x+ - x-`` and running a two-phase tableau simplex with Bland's rule.
Phase one uses a single artificial column, so tall problems (many rows, few
variables) stay cheap.

Sign convention for multipliers: an optimal ``lam >= 0`` satisfies
``A.T @ lam = -c`` and ``-b @ lam`` equals the optimal value.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

import numpy as np

TOL = 1e-9
REPORT_TOL = 1e-7


class SolverError(RuntimeError):
    """The simplex method stopped without reaching a verdict."""


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class DenseLP:
    """``min c.x  s.t.  A x <= b`` with ``x`` free."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        A = np.asarray(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(len(b), len(c))
        if A.ndim != 2 or A.shape != (len(b), len(c)):
            raise ValueError(f"inconsistent LP dimensions: c {c.shape}, A {A.shape}, b {b.shape}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def m(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class LPOutcome:
    """Result of a finite LP.

    ``value`` is an extended real: ``-inf`` for an unbounded minimization,
    ``+inf`` for an infeasible one (the dual solver flips these, see
    ``solve_dual_lp``).
    """

    status: Status
    value: float
    x: np.ndarray | None = None
    duals: np.ndarray | None = None
    ray: np.ndarray | None = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    basis[row] = col


def _simplex(T, basis, n_rows, obj_row, allowed, tol, max_iter):
    """Bland's-rule iterations on a primal feasible tableau.

    The last column of ``T`` is the right-hand side; row ``obj_row`` holds
    reduced costs.  Returns ``(status, entering_col, iterations)``.
    """
    rhs = T[:n_rows, -1]
    for it in range(max_iter):
        cand = np.flatnonzero((T[obj_row, :-1] < -tol) & allowed)
        if cand.size == 0:
            return Status.OPTIMAL, None, it
        col = cand[0]
        column = T[:n_rows, col]
        pos = column > tol
        if not pos.any():
            return Status.UNBOUNDED, col, it
        ratios = np.full(n_rows, np.inf)
        ratios[pos] = np.maximum(rhs[pos], 0.0) / column[pos]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + tol * max(1.0, abs(best)))
        row = ties[np.argmin(basis[ties])]
        _pivot(T, basis, row, col)
        rhs = T[:n_rows, -1]
        rhs[(rhs < 0) & (rhs > -tol)] = 0.0
    raise SolverError(f"simplex iteration limit ({max_iter}) reached")


def _default_iters(rows, cols):
    return 50 * (rows + cols) + 1000


def solve_lp(lp: DenseLP, tol: float = TOL, max_iter: int | None = None) -> LPOutcome:
    """Solve ``min c.x  s.t.  A x <= b`` by the two-phase simplex method.

    On optimality ``duals`` holds ``lam >= 0`` with ``A.T @ lam = -c``.  On
    unboundedness ``ray`` is a direction ``d`` with ``A d <= 0`` and
    ``c.d < 0``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    c, A, b = lp.c, lp.A, lp.b
    m, n = A.shape
    if m == 0:
        if np.all(np.abs(c) <= tol):
            return LPOutcome(Status.OPTIMAL, 0.0, np.zeros(n), np.zeros(0))
        return LPOutcome(Status.UNBOUNDED, -np.inf, ray=-c.copy())

    n2 = 2 * n
    art = n2 + m
    ncols = art + 1
    T = np.zeros((m + 2, ncols + 1))
    T[:m, :n] = A
    T[:m, n:n2] = -A
    T[:m, n2:art] = np.eye(m)
    T[:m, art] = -1.0
    T[:m, -1] = b
    T[m, :n] = c
    T[m, n:n2] = -c
    T[m + 1, art] = 1.0
    basis = np.arange(n2, art)
    iters = 0
    limit = max_iter or _default_iters(m, ncols)
    allowed = np.ones(ncols, dtype=bool)

    scale = max(1.0, float(np.abs(b).max()))
    if b.min() < -tol:
        # one artificial column entering at the most violated row makes every
        # right-hand side nonnegative at once
        _pivot(T, basis, int(np.argmin(b)), art)
        status, _, k = _simplex(T, basis, m, m + 1, allowed, tol, limit)
        iters += k
        if -T[m + 1, -1] > tol * scale:
            return LPOutcome(Status.INFEASIBLE, np.inf, iterations=iters)
        where = np.flatnonzero(basis == art)
        if where.size:
            r = where[0]
            entries = np.abs(T[r, :art])
            _pivot(T, basis, r, int(np.argmax(entries)))
    allowed[art] = False
    T[:, art] = 0.0

    status, col, k = _simplex(T, basis, m, m, allowed, tol, limit)
    iters += k
    if status is Status.UNBOUNDED:
        d = np.zeros(ncols)
        d[col] = 1.0
        d[basis] = -T[:m, col]
        return LPOutcome(Status.UNBOUNDED, -np.inf, ray=d[:n] - d[n:n2], iterations=iters)
    z = np.zeros(ncols)
    z[basis] = T[:m, -1]
    x = z[:n] - z[n:n2]
    lam = np.maximum(T[m, n2:art], 0.0)
    return LPOutcome(Status.OPTIMAL, float(c @ x), x, lam, iterations=iters)


def _solve_standard(A_eq, b_eq, cost, tol, max_iter=None):
    """``min cost.z  s.t.  A_eq z = b_eq, z >= 0``.

    Returns ``(status, z, basic_cols, iterations)``; ``z`` is None unless
    optimal.
    """
    A_eq = np.asarray(A_eq, dtype=float)
    b_eq = np.asarray(b_eq, dtype=float).copy()
    k, N = A_eq.shape
    A_eq = A_eq.copy()
    flip = b_eq < 0
    A_eq[flip] *= -1
    b_eq[flip] *= -1

    ncols = N + k
    T = np.zeros((k + 2, ncols + 1))
    T[:k, :N] = A_eq
    T[:k, N:ncols] = np.eye(k)
    T[:k, -1] = b_eq
    T[k, :N] = cost
    T[k + 1, :N] = -A_eq.sum(axis=0)
    T[k + 1, -1] = -b_eq.sum()
    basis = np.arange(N, ncols)
    limit = max_iter or _default_iters(k, ncols)
    allowed = np.ones(ncols, dtype=bool)

    _, _, iters = _simplex(T, basis, k, k + 1, allowed, tol, limit)
    scale = max(1.0, float(b_eq.max(initial=0.0)))
    if -T[k + 1, -1] > tol * scale:
        return Status.INFEASIBLE, None, None, iters

    keep = np.ones(k + 2, dtype=bool)
    for r in range(k):
        if basis[r] >= N:
            entries = np.abs(T[r, :N])
            j = int(np.argmax(entries)) if N else -1
            if N and entries[j] > tol:
                _pivot(T, basis, r, j)
            else:
                keep[r] = False  # redundant equality
    T = T[keep]
    basis = basis[keep[:k]]
    k = len(basis)
    allowed[N:] = False

    status, _, more = _simplex(T, basis, k, k, allowed, tol, limit)
    iters += more
    if status is Status.UNBOUNDED:
        return Status.UNBOUNDED, None, None, iters
    z = np.zeros(ncols)
    z[basis] = T[:k, -1]
    return Status.OPTIMAL, np.maximum(z[:N], 0.0), basis, iters


def solve_dual_lp(lp: DenseLP, tol: float = TOL, max_iter: int | None = None) -> LPOutcome:
    """Solve the Lagrangian dual ``max -b.lam  s.t.  A.T lam = -c, lam >= 0``.

    ``x`` carries the optimal ``lam``; ``duals`` carries a primal point
    recovered from the final basis.  ``value`` is ``-inf`` when no ``lam``
    is feasible and ``+inf`` when the dual is unbounded.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    c, A, b = lp.c, lp.A, lp.b
    m, n = A.shape
    if m == 0:
        if np.all(np.abs(c) <= tol):
            return LPOutcome(Status.OPTIMAL, 0.0, np.zeros(0), np.zeros(n))
        return LPOutcome(Status.INFEASIBLE, -np.inf)
    status, lam, basis, iters = _solve_standard(A.T, -c, b, tol, max_iter)
    if status is Status.INFEASIBLE:
        return LPOutcome(Status.INFEASIBLE, -np.inf, iterations=iters)
    if status is Status.UNBOUNDED:
        return LPOutcome(Status.UNBOUNDED, np.inf, iterations=iters)
    cols = basis[basis < m]
    if cols.size:
        x = np.linalg.lstsq(A[cols], b[cols], rcond=None)[0]
    else:
        x = np.zeros(n)
    return LPOutcome(Status.OPTIMAL, float(-b @ lam), lam, x, iterations=iters)


# ---------------------------------------------------------------------------
# brute-force oracle

def basic_points(A, b, tol: float = 1e-9) -> list[np.ndarray]:
    """Feasible points of ``{A x <= b}`` lying on its minimal faces.

    Each is the least-squares solution of ``A_S x = b_S`` for a row set ``S``
    of size ``rank(A)`` with full row rank.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    r = np.linalg.matrix_rank(A) if m else 0
    if r == 0:
        return [np.zeros(n)] if np.all(b >= -tol) else []
    pts = []
    for S in combinations(range(m), r):
        AS = A[list(S)]
        if np.linalg.matrix_rank(AS) < r:
            continue
        x = np.linalg.lstsq(AS, b[list(S)], rcond=None)[0]
        if np.all(A @ x <= b + tol * max(1.0, np.abs(b).max())):
            pts.append(x)
    return pts


def in_cone_enumerated(v, generators, tol: float = 1e-9) -> bool:
    """Carathéodory enumeration: is ``v`` a nonnegative combination of
    linearly independent generators?"""
    v = np.asarray(v, dtype=float)
    G = np.asarray(generators, dtype=float).reshape(-1, len(v))
    if np.all(np.abs(v) <= tol):
        return True
    for size in range(1, min(len(v), len(G)) + 1):
        for S in combinations(range(len(G)), size):
            GS = G[list(S)].T
            if np.linalg.matrix_rank(GS) < size:
                continue
            mu = np.linalg.lstsq(GS, v, rcond=None)[0]
            if np.all(mu >= -tol) and np.linalg.norm(GS @ mu - v) <= tol * max(1.0, np.linalg.norm(v)):
                return True
    return False


def vertex_oracle(lp: DenseLP) -> LPOutcome:
    """Exhaustive-enumeration LP solver used as an independent check.

    Feasibility comes from enumerating minimal faces; boundedness from
    testing ``-c`` for membership in the cone of the constraint rows.
    """
    if lp.n > 6 or lp.m > 12:
        raise ValueError(f"vertex_oracle limited to n <= 6, m <= 12 (got n={lp.n}, m={lp.m})")
    pts = basic_points(lp.A, lp.b)
    if not pts:
        return LPOutcome(Status.INFEASIBLE, np.inf)
    if not in_cone_enumerated(-lp.c, lp.A):
        return LPOutcome(Status.UNBOUNDED, -np.inf)
    vals = [float(lp.c @ x) for x in pts]
    i = int(np.argmin(vals))
    return LPOutcome(Status.OPTIMAL, vals[i], pts[i])


# ---------------------------------------------------------------------------
# cone probes

def _unit_rows(rows):
    R = np.atleast_2d(np.asarray(rows, dtype=float))
    norms = np.linalg.norm(R, axis=1)
    return R[norms > 0] / norms[norms > 0, None]


def cone_row_subspace_test(rows) -> bool:
    """Is ``{x : rows @ x <= 0}`` a linear subspace?

    Every normalized row ``r`` satisfies ``r.x <= 0`` on the cone, so the
    cone is a subspace iff their sum is bounded below (by 0) over it.
    """
    R = _unit_rows(rows)
    if not len(R):
        return True
    out = solve_lp(DenseLP(R.sum(axis=0), R, np.zeros(len(R))))
    return out.status is Status.OPTIMAL


def cone_has_nonzero(ineq_rows, eq_rows, tol: float = REPORT_TOL):
    """Look for ``x != 0`` with ``ineq_rows @ x <= 0`` and ``eq_rows @ x = 0``.

    Runs the ``2n`` probes ``max s*x_j`` (``s = +-1``) with the normalizing
    bound ``s*x_j <= 1``.  Returns ``(found, witness)``.
    """
    ineq = np.asarray(ineq_rows, dtype=float)
    eq = np.asarray(eq_rows, dtype=float)
    n = ineq.shape[1] if ineq.size else eq.shape[1]
    ineq = ineq.reshape(-1, n)
    eq = eq.reshape(-1, n)
    base = np.vstack([ineq, eq, -eq])
    for j in range(n):
        for s in (1.0, -1.0):
            e = np.zeros(n)
            e[j] = s
            A = np.vstack([base, e])
            b = np.zeros(len(A))
            b[-1] = 1.0
            out = solve_lp(DenseLP(-e, A, b))
            if out.optimal and out.value < -tol:
                return True, out.x
    return False, None


def cone_membership(v, generators, tol: float = TOL) -> bool:
    """Is ``v`` in the cone generated by ``generators`` (``G mu = v``, ``mu >= 0``)?"""
    v = np.asarray(v, dtype=float)
    G = np.asarray(generators, dtype=float).reshape(-1, len(v))
    if np.all(v == 0):
        return True
    status, *_ = _solve_standard(G.T, v, np.zeros(len(G)), tol)
    return status is Status.OPTIMAL


def orthonormal_basis(vectors, drop_tol: float = 1e-10) -> np.ndarray:
    """Modified Gram–Schmidt; vectors whose residual norm is below
    ``drop_tol`` (relative to their own norm) are dropped."""
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    basis: list[np.ndarray] = []
    for v in vecs:
        norm0 = np.linalg.norm(v)
        if norm0 == 0:
            continue
        w = v.copy()
        for _ in range(2):
            for q in basis:
                w -= (q @ w) * q
        norm = np.linalg.norm(w)
        if norm > drop_tol * max(1.0, norm0):
            basis.append(w / norm)
    if not basis:
        dim = len(vecs[0]) if vecs else 0
        return np.zeros((0, dim))
    return np.array(basis)


def orthogonal_complement(vectors, dim: int, drop_tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of ``span(vectors)`` in R^dim."""
    Q = orthonormal_basis(list(vectors), drop_tol)
    full = orthonormal_basis(list(Q) + list(np.eye(dim)), drop_tol)
    return full[len(Q):]


def lineality_and_pointed(generators, tol: float = TOL):
    """Split ``cone(generators)`` into lineality space and pointed part.

    Returns ``(lineality_basis, projected)`` where ``projected`` are the
    generators projected onto the orthogonal complement of the lineality
    space.
    """
    G = np.atleast_2d(np.asarray(generators, dtype=float))
    lin = [g for g in G if np.any(g != 0) and cone_membership(-g, G, tol)]
    Q = orthonormal_basis(lin) if lin else np.zeros((0, G.shape[1]))
    P = np.eye(G.shape[1]) - Q.T @ Q
    return Q, G @ P
