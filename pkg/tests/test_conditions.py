import numpy as np
import pytest

from lsipdual.conditions import (
    SAMPLING_CAVEAT,
    check_h_prime,
    check_pointed_halfline,
    check_recession_subspace,
    check_sign_implication,
    check_slater,
    concavity_in_index,
    corollary_report,
    pointed_ray,
)
from lsipdual.fixtures import exam1, exam2
from lsipdual.lp import DenseLP, Status, solve_lp
from lsipdual.model import (
    H1,
    HN,
    ExplicitFinite,
    IntervalPoly,
    LinearSIP,
    ScalarPoly,
    eval_rows,
    sample_interval,
)
from lsipdual.oracle import InstanceSpec, random_finite_lsip

S101 = sample_interval(0, 1, 101)
S20 = list(range(1, 21))
BOUNDARY = [(1.0, 0.0), (0.0, 1.0)]


def _explicit(rows, c):
    return LinearSIP(c, ExplicitFinite(tuple((tuple(a), float(b)) for a, b in rows)))


def _max_violation(p, sample, x):
    A, b = eval_rows(p.gen, sample)
    return float(np.max(A @ x - b))


def test_slater_exam1():
    ok, w = check_slater(exam1(), S101)
    assert ok
    assert _max_violation(exam1(), S101, w) <= -0.74
    # the hand-checked point (1, 1) has margin -3/4
    assert _max_violation(exam1(), [0.5], np.array([1.0, 1.0])) == pytest.approx(-0.75)


def test_slater_two_sided_row():
    p = _explicit([((1.0,), 0.0), ((-1.0,), 0.0)], (1.0,))
    assert check_slater(p, [1, 2]) == (False, None)


def test_slater_single_row():
    p = _explicit([((1.0,), -1.0)], (1.0,))
    ok, w = check_slater(p, [1])
    assert ok and w[0] < -1.0


def test_slater_witness_re_evaluated_on_random_instances():
    seen = 0
    for seed in range(1, 101):
        p = random_finite_lsip(InstanceSpec(seed, n=1 + seed % 3, m=1 + seed % 6))
        T = p.sample(0)
        ok, w = check_slater(p, T)
        if ok:
            assert _max_violation(p, T, w) < -1e-9
            seen += 1
    assert seen > 20


@pytest.mark.parametrize(
    "p, sample, expected",
    [
        (exam1((1.0, 1.0)), S101, True),
        (exam1((1.0, 0.0)), S101, False),
        (exam1((0.0, 1.0)), S101, False),
        (exam2(), S20, False),
    ],
)
def test_recession_subspace_examples(p, sample, expected):
    assert check_recession_subspace(p, sample) is expected
    assert check_sign_implication(p, sample) is expected
    assert check_h_prime(p, sample) is expected
    assert check_pointed_halfline(p, sample) is expected


def test_pointed_ray_exam1_is_vertical():
    ok, ray = pointed_ray(exam1(), S101)
    assert ok
    np.testing.assert_allclose(ray, [0.0, 0.0, 1.0], atol=1e-9)


def test_pointed_cone_exam1_boundary_is_two_dimensional():
    assert pointed_ray(exam1((1.0, 0.0)), S101) == (False, None)


def test_concavity():
    assert concavity_in_index(exam1(), S101) == (True, True)
    assert concavity_in_index(exam2(), S20) == (False, True)
    cubic = IntervalPoly(0, 1, (ScalarPoly((0.0, 1.0)),), ScalarPoly((0.0, 0.0, 1.0, 1.0)))
    assert concavity_in_index(LinearSIP((1.0,), cubic), S101) == (True, False)
    concave_b = IntervalPoly(0, 1, (ScalarPoly((0.0, 1.0)),), ScalarPoly((0.0, 0.0, -1.0)))
    assert concavity_in_index(LinearSIP((1.0,), concave_b), S101) == (False, True)


def test_corollary_report_exam1_interior():
    rep = corollary_report(exam1(), S101, H1)
    assert rep.corollary_flags["cor5"]
    assert rep.relevant_corollary == "cor5"
    assert rep.tprime_ray_is_vertical
    assert rep.sample_size == 101
    assert SAMPLING_CAVEAT in rep.notes
    assert rep.to_dict()["checks_agree"] is True


@pytest.mark.parametrize("c", BOUNDARY)
def test_corollary_report_exam1_boundary(c):
    rep = corollary_report(exam1(c), S101, H1)
    assert not rep.corollary_flags["cor5"]
    assert not rep.e_prime
    assert rep.checks_agree


def test_corollary_report_exam2():
    rep = corollary_report(exam2(), S20, HN)
    assert not rep.corollary_flags["cor7"]
    assert rep.relevant_corollary == "cor7"
    assert (rep.e_prime, rep.e_dprime, rep.e_tprime, rep.h_prime) == (False,) * 4


def test_checker_agreement_random():
    verdicts = set()
    for seed in range(1, 101):
        p = random_finite_lsip(InstanceSpec(seed, n=1 + seed % 3, m=1 + seed % 6))
        T = p.sample(0)
        e1 = check_recession_subspace(p, T)
        e2 = check_sign_implication(p, T)
        e3 = check_pointed_halfline(p, T)
        h = check_h_prime(p, T)
        assert e1 == e2 == e3 == h, (seed, e1, e2, e3, h)
        verdicts.add(e1)
    assert verdicts == {True, False}


@pytest.mark.parametrize("c", [(1.0, 1.0), *BOUNDARY])
def test_exam1_verdicts_stable_in_sample_size(c):
    p = exam1(c)
    reps = [corollary_report(p, sample_interval(0, 1, N), H1) for N in (11, 101, 1001)]
    keys = {(r.e_prime, r.e_dprime, r.e_tprime, r.h_prime) for r in reps}
    assert len(keys) == 1


def _non_subspace_witness(R):
    """A direction in {R x <= 0} on which some row is strictly negative."""
    for r in R:
        out = solve_lp(DenseLP(r, np.vstack([R, -r]), np.append(np.zeros(len(R)), 1.0)))
        if out.status is Status.OPTIMAL and out.value < -1e-7:
            return out.x
    return None


def test_witness_persistence():
    persisted = 0
    for seed in range(1, 101):
        p = random_finite_lsip(InstanceSpec(seed, n=2 + seed % 2, m=2 + seed % 5))
        T = p.sample(0)
        sub = T[: max(1, len(T) // 2)]
        A, _ = eval_rows(p.gen, sub)
        x = _non_subspace_witness(np.vstack([p.cvec, A]))
        if x is None:
            assert check_recession_subspace(p, sub)
            continue
        assert not check_recession_subspace(p, sub)
        A_full, _ = eval_rows(p.gen, T)
        if np.all(A_full @ x <= 1e-9):
            assert not check_recession_subspace(p, T)
            assert not check_pointed_halfline(p, T)
            persisted += 1
    assert persisted > 5
