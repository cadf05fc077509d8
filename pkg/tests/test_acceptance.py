"""Acceptance gate.  Each test carries a ``criterion`` marker; the conftest
prints one PASS/FAIL line per criterion at the end of the run."""
import csv
import io
import json
import math
import time
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

from lsipdual import cli
from lsipdual.certificates import OptimalityCertificate, optimality_conditions, verify_optimality
from lsipdual.conditions import corollary_report
from lsipdual.duals import DualCertificate, duality_report, finite_dual, finite_subproblem, sup_dual_full, sup_dual_h1
from lsipdual.fixtures import exam1
from lsipdual.lp import DenseLP, Status, basic_points, cone_membership, solve_lp, vertex_oracle
from lsipdual.model import FT, H1, HN, IndexFamily, eval_rows, sample_interval
from lsipdual.oracle import InstanceSpec, random_finite_lsip

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    buf = io.StringIO()
    code = cli.run_command([str(a) for a in argv], buf)
    return code, buf.getvalue()


def field(text, key):
    for line in text.splitlines():
        if line.startswith(key + ": "):
            return float(line.split(": ", 1)[1])
    raise KeyError(key)


@pytest.mark.criterion(1, "Exam1 value via oracle and refined H1 dual")
def test_exam1_value():
    start = time.perf_counter()
    code, out = run("oracle", DATA / "exam1.json", "--grid", 1001)
    assert code == 0
    assert field(out, "value") == pytest.approx(0.5, abs=1e-6)
    code, out = run("dual", DATA / "exam1.json", "--family", "h1", "--grid", 1001, "--refine")
    assert code == 0
    assert field(out, "value") == pytest.approx(0.5, abs=1e-6)
    assert field(out, "t_bar") == pytest.approx(0.5, abs=1e-6)
    assert field(out, "lambda") == pytest.approx(2.0, abs=1e-6)
    assert time.perf_counter() - start < 5.0


@pytest.mark.criterion(2, "Exam1 formula sweep over 10 seeded objectives")
def test_exam1_formula_sweep():
    start = time.perf_counter()
    rng = np.random.default_rng(20240611)
    grid = sample_interval(0.0, 1.0, 1001)
    for c1, c2 in rng.uniform(0.05, 10.0, size=(10, 2)):
        s = c1 + c2
        p = exam1((c1, c2))
        value, cert, _ = sup_dual_h1(p, grid, 1e-8, refine=True)
        assert abs(value - c1 * c2 / s) <= 1e-5, (c1, c2, value)
        x_bar = ((c2 / s) ** 2, (c1 / s) ** 2)
        rep = verify_optimality(p, OptimalityCertificate(x_bar, cert))
        assert rep.ok, (c1, c2, rep)
    assert time.perf_counter() - start < 30.0


@pytest.mark.criterion(3, "Exam1 condition case split with pairwise agreement")
@pytest.mark.parametrize("c, expected", [((1.0, 1.0), True), ((1.0, 0.0), False), ((0.0, 1.0), False)])
def test_exam1_case_split(c, expected):
    rep = corollary_report(exam1(c), sample_interval(0.0, 1.0, 1001), H1)
    verdicts = (rep.e_prime, rep.e_dprime, rep.e_tprime, rep.h_prime)
    assert verdicts == (expected,) * 4


@pytest.mark.criterion(4, "Exam2 divergence: -inf trace, failed checks, indeterminate gap")
def test_exam2_divergence(tmp_path):
    path = tmp_path / "trace.csv"
    code, _ = run("trace", DATA / "exam2.json", "--max-m", 50, "--out", path)
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 50
    assert all(r["primal"] == "-inf" and r["dual"] == "-inf" for r in rows)
    code, out = run("check", DATA / "exam2.json", "--max-m", 50, "--json")
    d = json.loads(out)
    assert code == 1
    assert d["e_prime"] is False and d["e_tprime"] is False
    assert d["duality"]["gap"] == "indeterminate"
    assert d["duality"]["zero_gap"] is False


@pytest.mark.criterion(5, "weak duality and family monotonicity on 100 random LSIPs")
def test_weak_duality_and_monotonicity():
    rng = np.random.default_rng(5)
    for seed in range(1, 101):
        p = random_finite_lsip(InstanceSpec(seed, n=1 + seed % 3, m=2 + seed % 5))
        T = p.sample(0)
        G = [tuple(rng.choice(T, size=rng.integers(1, len(T) + 1), replace=False)) for _ in range(2)]
        H = G + [tuple(rng.choice(T, size=rng.integers(1, len(T) + 1), replace=False))]
        dG = duality_report(p, IndexFamily.explicit(G)).dual
        dH = duality_report(p, IndexFamily.explicit(H)).dual
        assert dG <= dH + 1e-9, seed
        for fam in (H1, HN, FT, IndexFamily.explicit(G)):
            rep = duality_report(p, fam)
            assert rep.dual <= rep.primal + 1e-7, (seed, fam.kind)


@pytest.mark.criterion(6, "solve_lp agrees with vertex enumeration on 200 random LPs")
def test_solver_vs_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(99)
    for _ in range(200):
        n, m = rng.integers(1, 5), rng.integers(1, 9)
        lp = DenseLP(
            rng.integers(-5, 6, size=n).astype(float),
            rng.integers(-5, 6, size=(m, n)).astype(float),
            rng.integers(-5, 6, size=m).astype(float),
        )
        got, ref = solve_lp(lp), vertex_oracle(lp)
        assert got.status is ref.status
        if ref.status is Status.OPTIMAL:
            assert abs(got.value - ref.value) <= 1e-7
    assert time.perf_counter() - start < 60.0


def _dual_basic_certs(p, T):
    A, _ = eval_rows(p.gen, T)
    c = p.cvec
    certs = [DualCertificate()] if np.allclose(c, 0) else []
    for size in range(1, min(len(T), p.n) + 1):
        for S in combinations(range(len(T)), size):
            AS = A[list(S)].T
            if np.linalg.matrix_rank(AS) < size:
                continue
            lam = np.linalg.lstsq(AS, -c, rcond=None)[0]
            if np.all(lam >= -1e-12) and np.allclose(AS @ lam, -c, atol=1e-9):
                certs.append(DualCertificate(tuple((T[i], max(v, 0.0)) for i, v in zip(S, lam))))
    return certs


@pytest.mark.criterion(7, "optimality condition equivalence harness")
def test_equivalence_harness():
    instances = 0
    seen = set()
    for seed in range(1, 201):
        p = random_finite_lsip(InstanceSpec(seed, n=2 + seed % 2, m=2 + seed % 5))
        T = p.sample(0)
        primal = solve_lp(finite_subproblem(p, T))
        dual_value, best = sup_dual_full(p, T)
        if not primal.optimal or best is None:
            continue
        instances += 1
        A, b = eval_rows(p.gen, T)
        for x in basic_points(A, b) + [primal.x]:
            for cert in _dual_basic_certs(p, T) + [best, finite_dual(p, T[:1])[1] or DualCertificate()]:
                conds = optimality_conditions(p, x, cert, primal.value, dual_value)
                assert conds.agree, (seed, x, cert, conds)
                seen.add(conds.optimal_pair)
    assert instances >= 50 and seen == {True, False}


@pytest.mark.criterion(8, "moment cone membership matches the epigraph of psi")
def test_moment_cone_psi():
    grid = sample_interval(0.0, 1.0, 1001)
    assert 0.5 in grid
    A, b = eval_rows(exam1().gen, grid)
    G = np.vstack([np.column_stack([A, b]), [0.0, 0.0, 1.0]])
    psi = -0.5  # x1 x2 / (x1 + x2) at (-1, -1)
    for r in psi + np.array([1e-6, 1e-4, 0.01, 0.5, 3.0]):
        assert cone_membership([-1.0, -1.0, r], G), r
    for r in psi - np.array([1e-3, 0.01, 0.1, 2.0]):
        assert not cone_membership([-1.0, -1.0, r], G), r
    assert math.isclose(psi, (-1.0) * (-1.0) / (-2.0))
