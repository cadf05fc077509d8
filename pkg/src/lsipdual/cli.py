"""Command line interface.

Exit codes: 0 success, 1 a requested verification failed, 2 bad input,
3 solver failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import certificates, conditions, duals, oracle
from .files import ProblemFileError, parse_certificate, parse_problem
from .lp import SolverError, solve_lp
from .model import FT, H1, HN, CountablePoly, IntervalPoly, UnsupportedError

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3


def fmt(v) -> str:
    """Extended reals as ``-inf``/``inf``, everything else with 12 significant digits."""
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".12g")


def _vec(v) -> str:
    return "[" + ", ".join(fmt(x) for x in v) + "]"


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise ProblemFileError(f"cannot read {path}: {e.strerror}") from None


def _sample(p, args):
    if isinstance(p.gen, CountablePoly):
        return p.sample(args.max_m)
    return p.sample(args.grid)


def cmd_solve(args, out) -> int:
    p = parse_problem(_read(args.file))
    sample = _sample(p, args)
    res = solve_lp(duals.finite_subproblem(p, sample))
    print(f"status: {res.status.value}", file=out)
    print(f"value: {fmt(res.value)}", file=out)
    if res.x is not None:
        print(f"x: {_vec(res.x)}", file=out)
    print(f"sample_size: {len(sample)}", file=out)
    return EXIT_OK


def cmd_dual(args, out) -> int:
    p = parse_problem(_read(args.file))
    sample = _sample(p, args)
    t_best = None
    if args.family == "h1":
        value, cert, t_best = duals.sup_dual_h1(p, sample, args.eps_par, args.refine)
    elif args.family == "hn":
        trace = duals.sup_dual_prefix(p, args.max_m)
        value, cert = max(tp.dual for tp in trace), None
    else:
        value, cert = duals.sup_dual_full(p, sample)
    print(f"family: {args.family}", file=out)
    print(f"value: {fmt(value)}", file=out)
    if t_best is not None:
        print(f"t_bar: {fmt(t_best)}", file=out)
    if cert is not None:
        if len(cert.support) == 1:
            print(f"lambda: {fmt(cert.support[0][1])}", file=out)
        for t, lam in cert.support:
            print(f"support: index={fmt(t)} lambda={fmt(lam)}", file=out)
    print(f"sample_size: {len(sample)}", file=out)
    return EXIT_OK


def write_trace(trace, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["m", "primal", "dual"])
    for tp in trace:
        w.writerow([tp.m, fmt(tp.primal), fmt(tp.dual)])


def cmd_trace(args, out) -> int:
    p = parse_problem(_read(args.file))
    trace = duals.sup_dual_prefix(p, args.max_m)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_trace(trace, fh)
        print(f"wrote {len(trace)} rows to {args.out}", file=out)
    else:
        write_trace(trace, out)
    return EXIT_OK


_FAMILIES = {"h1": H1, "hn": HN, "full": FT}


def cmd_check(args, out) -> int:
    p = parse_problem(_read(args.file))
    family = args.family or ("hn" if isinstance(p.gen, CountablePoly) else "h1")
    sample = _sample(p, args)
    rep = conditions.corollary_report(p, sample, _FAMILIES[family])
    dual_rep = duals.duality_report(
        p, _FAMILIES[family], args.grid, args.max_m, args.eps_par, True
    )
    verdicts = (rep.e_prime, rep.e_dprime, rep.e_tprime, rep.h_prime)
    if args.json:
        d = rep.to_dict()
        d["duality"] = {
            "primal": fmt(dual_rep.primal),
            "dual": fmt(dual_rep.dual),
            "gap": "indeterminate" if dual_rep.indeterminate else fmt(dual_rep.gap),
            "zero_gap": dual_rep.zero_gap,
            "notes": dual_rep.notes,
        }
        print(json.dumps(d, indent=2), file=out)
    else:
        yn = lambda b: "true" if b else "false"  # noqa: E731
        print(f"sample_size: {rep.sample_size}", file=out)
        print(f"slater: {yn(rep.slater)}" + (f" witness={_vec(rep.slater_witness)}" if rep.slater_witness else ""), file=out)
        print(f"e_prime (recession cone is a subspace): {yn(rep.e_prime)}", file=out)
        print(f"e_dprime (sign implication): {yn(rep.e_dprime)}", file=out)
        print(f"e_tprime (pointed cone is a half-line): {yn(rep.e_tprime)}"
              + (" [ray R+(0,...,0,1)]" if rep.tprime_ray_is_vertical else ""), file=out)
        print(f"h_prime: {yn(rep.h_prime)}", file=out)
        for k, v in rep.corollary_flags.items():
            mark = " <- family " + family if k == rep.relevant_corollary else ""
            print(f"{k} hypotheses verified on sample: {yn(v)}{mark}", file=out)
        gap = "indeterminate" if dual_rep.indeterminate else fmt(dual_rep.gap)
        print(f"primal: {fmt(dual_rep.primal)}  dual: {fmt(dual_rep.dual)}  gap: {gap}"
              f"  zero_gap: {yn(dual_rep.zero_gap)}", file=out)
        for note in rep.notes + dual_rep.notes:
            print(f"note: {note}", file=out)
    return EXIT_OK if all(verdicts) else EXIT_FAILED


def _print_report(name, rep, out):
    status = "PASS" if rep.ok else "FAIL"
    print(f"{name}: {status}", file=out)
    print(f"  stationarity: {rep.stationarity_ok} ({fmt(rep.residuals['stationarity'])})", file=out)
    print(f"  complementarity: {rep.complementarity_ok} ({fmt(rep.residuals['complementarity'])})", file=out)
    print(f"  feasibility: {rep.feasibility_ok} (margin {fmt(rep.residuals['feasibility_margin'])}"
          f" at index {fmt(rep.worst_index)})", file=out)


def cmd_verify(args, out) -> int:
    p = parse_problem(_read(args.file))
    cf = parse_certificate(_read(args.cert), p)
    alpha = args.alpha if args.alpha is not None else cf.alpha
    if cf.point is None and alpha is None:
        raise ProblemFileError("nothing to verify: certificate has no 'point' and no alpha was given")
    ok = True
    if alpha is not None:
        farkas = certificates.verify_farkas(p, cf.cert, alpha, args.tol)
        print(f"farkas (alpha={fmt(alpha)}): {'PASS' if farkas else 'FAIL'}", file=out)
        ok &= farkas
    if cf.point is not None:
        oc = certificates.OptimalityCertificate(cf.point, cf.cert)
        grid = args.grid if isinstance(p.gen, IntervalPoly) else args.max_m
        rep = certificates.verify_optimality(p, oc, args.tol, grid)
        kkt = certificates.check_kkt(p, oc, args.tol, grid)
        _print_report("optimality", rep, out)
        _print_report("kkt", kkt, out)
        ok &= rep.ok and kkt.ok
    print(f"overall: {'PASS' if ok else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_oracle(args, out) -> int:
    p = parse_problem(_read(args.file))
    if isinstance(p.gen, IntervalPoly):
        value = oracle.dense_grid_value(p, args.grid)
    else:
        value = solve_lp(duals.finite_subproblem(p, _sample(p, args))).value
    print(f"value: {fmt(value)}", file=out)
    if args.alpha is not None:
        cert = oracle.farkas_oracle(p, _sample(p, args), args.alpha)
        if cert is None:
            print("farkas_certificate: none", file=out)
        else:
            for t, lam in cert.support:
                print(f"farkas_certificate: index={fmt(t)} lambda={fmt(lam)}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="problem file (JSON)")
    common.add_argument("--grid", type=int, default=1001, help="interval grid size (default 1001)")
    common.add_argument("--max-m", type=int, default=50, help="countable truncation (default 50)")
    common.add_argument("--eps-par", type=float, default=1e-8, help="parallelism tolerance for h1")
    common.add_argument("--tol", type=float, default=1e-8, help="certificate tolerance (default 1e-8)")

    parser = argparse.ArgumentParser(prog="lsipdual", description="Relaxed Lagrangian duals of linear semi-infinite programs")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="solve the sampled primal")
    d = sub.add_parser("dual", parents=[common], help="dual value for a family")
    d.add_argument("--family", choices=["h1", "hn", "full"], required=True)
    d.add_argument("--refine", action="store_true", help="golden-section refinement (h1)")
    t = sub.add_parser("trace", parents=[common], help="prefix primal/dual trace as CSV")
    t.add_argument("--out", help="CSV output path (default stdout)")
    c = sub.add_parser("check", parents=[common], help="condition checks and corollary report")
    c.add_argument("--family", choices=["h1", "hn", "full"])
    c.add_argument("--json", action="store_true", help="machine-readable output")
    v = sub.add_parser("verify", parents=[common], help="verify a certificate file")
    v.add_argument("--cert", required=True)
    v.add_argument("--alpha", type=float)
    o = sub.add_parser("oracle", parents=[common], help="dense-grid primal value")
    o.add_argument("--alpha", type=float, help="also extract a Farkas certificate for this bound")
    return parser


_COMMANDS = {
    "solve": cmd_solve,
    "dual": cmd_dual,
    "trace": cmd_trace,
    "check": cmd_check,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def run_command(argv, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    if args.tol <= 0 or args.grid < 2 or args.max_m < 1:
        print("error: need --tol > 0, --grid >= 2, --max-m >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return _COMMANDS[args.command](args, out)
    except (ProblemFileError, UnsupportedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as e:
        print(f"solver failure: {e}", file=sys.stderr)
        return EXIT_SOLVER


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
