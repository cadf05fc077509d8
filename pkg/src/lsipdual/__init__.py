"""Relaxed Lagrangian duals, Farkas certificates and reverse strong duality
checks for linear semi-infinite programs."""
from .certificates import (
    OptimalityCertificate,
    check_feasibility,
    check_kkt,
    verify_farkas,
    verify_optimality,
)
from .conditions import corollary_report
from .duals import (
    DualCertificate,
    duality_report,
    finite_dual,
    finite_subproblem,
    sup_dual_full,
    sup_dual_h1,
    sup_dual_prefix,
)
from .lp import DenseLP, LPOutcome, SolverError, Status, solve_dual_lp, solve_lp
from .model import (
    FT,
    H1,
    HN,
    CountablePoly,
    ExplicitFinite,
    IndexFamily,
    IntervalPoly,
    LinearSIP,
    ScalarPoly,
    eval_constraint,
)

__all__ = [
    "CountablePoly",
    "DenseLP",
    "DualCertificate",
    "ExplicitFinite",
    "FT",
    "H1",
    "HN",
    "IndexFamily",
    "IntervalPoly",
    "LPOutcome",
    "LinearSIP",
    "OptimalityCertificate",
    "ScalarPoly",
    "SolverError",
    "Status",
    "check_feasibility",
    "check_kkt",
    "corollary_report",
    "duality_report",
    "eval_constraint",
    "finite_dual",
    "finite_subproblem",
    "solve_dual_lp",
    "solve_lp",
    "sup_dual_full",
    "sup_dual_h1",
    "sup_dual_prefix",
    "verify_farkas",
    "verify_optimality",
]
