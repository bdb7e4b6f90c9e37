"""Command line front end.

Subcommands:
  analyze     full report for one scenario file
  verify      run a verification suite, exit 1 on any violation
  tables      exceptional-level and base-change-degree tables
  oracle      exhaustive root-of-unity membership sweep
  cohomology  one degree-k vanishing verdict for a scenario

Exit codes: 0 success, 1 a suite or sweep found violations, 2 bad
usage or unusable input.
"""

import argparse
import sys
from typing import List, Optional

from .cyclotomic import (
    exceptional_prime_powers,
    quasi_unipotence_sweep,
    semistability_degree,
)
from .cohomology import higher_cohomology_criterion
from .inertia import InertiaError
from .matrices import MatrixError
from .reports import build_report, canonical_json, render_text
from .scenarios import ScenarioError, load_scenario
from .suites import SUITE_IDS, SuiteError, run_suite

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monodromy",
        description="Semistable-reduction criteria and component-group "
        "invariants for symplectic inertia actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="full report for a scenario file")
    analyze.add_argument("scenario", help="path to a scenario JSON file")
    analyze.add_argument("--n", type=int, default=None,
                         help="torsion level for the criterion battery")
    analyze.add_argument("--format", choices=("text", "json"), default="text")

    verify = sub.add_parser("verify", help="run one verification suite")
    verify.add_argument("--suite", required=True,
                        help="suite id; one of: " + ", ".join(SUITE_IDS))
    verify.add_argument("--trials", type=int, default=200)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--dmax", type=int, default=2)
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--format", choices=("text", "json"), default="text")

    tables = sub.add_parser("tables", help="print exceptional levels or degrees")
    which = tables.add_mutually_exclusive_group(required=True)
    which.add_argument("--nk", type=int, metavar="KMAX",
                       help="exceptional level sets N(k) for k <= KMAX")
    which.add_argument("--r", type=int, nargs=2, metavar=("KMAX", "NMAX"),
                       help="semistability degrees R(k, n) for k <= KMAX, "
                       "n <= NMAX")
    tables.add_argument("--nbound", type=int, default=1000,
                        help="largest root-of-unity order searched for --r")

    oracle = sub.add_parser("oracle", help="exhaustive consistency oracles")
    oracle_sub = oracle.add_subparsers(dest="oracle_command", required=True)
    sweep = oracle_sub.add_parser(
        "sweep", help="root-of-unity membership sweep outside the "
        "exceptional levels")
    sweep.add_argument("--kmax", type=int, required=True)
    sweep.add_argument("--nmax", type=int, required=True)
    sweep.add_argument("--Nmax", type=int, required=True, dest="order_max")

    cohomology = sub.add_parser(
        "cohomology", help="degree-k vanishing verdict for a scenario")
    cohomology.add_argument("scenario", help="path to a scenario JSON file")
    cohomology.add_argument("--k", type=int, required=True)
    cohomology.add_argument("--n", type=int, required=True)
    cohomology.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _cmd_analyze(args) -> int:
    scenario = load_scenario(args.scenario)
    report = build_report(scenario, level=args.n)
    if args.format == "json":
        sys.stdout.write(canonical_json(report))
    else:
        print(render_text(report))
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, trials=args.trials, seed=args.seed,
                       d_max=args.dmax, jobs=args.jobs)
    if args.format == "json":
        sys.stdout.write(canonical_json(report.to_json_dict()))
    else:
        status = "passed" if report.passed else "FAILED"
        print(f"suite {report.suite}: {status}")
        print(f"  checked {report.checked} properties, "
              f"{report.violations} violations "
              f"(trials={report.trials} seed={report.seed} "
              f"d_max={report.d_max})")
        for failure in report.failures:
            print(f"  {failure}")
        if report.violations > len(report.failures):
            print(f"  ... and {report.violations - len(report.failures)} more")
    return 0 if report.passed else 1


def _cmd_tables(args) -> int:
    if args.nk is not None:
        if args.nk < 1:
            raise SuiteError("KMAX must be >= 1")
        for k in range(1, args.nk + 1):
            members = ", ".join(str(n) for n in exceptional_prime_powers(k))
            print(f"N({k}) = {{{members}}}")
        return 0
    k_max, n_max = args.r
    if k_max < 1 or n_max < 1:
        raise SuiteError("KMAX and NMAX must be >= 1")
    for k in range(1, k_max + 1):
        for n in range(1, n_max + 1):
            cert = semistability_degree(k, n, args.nbound)
            if cert.unbounded:
                print(f"R({k}, {n}) unbounded (every order admissible)")
            else:
                orders = ", ".join(str(o) for o in cert.admissible)
                print(f"R({k}, {n}) = {cert.degree} [orders {orders}]")
    return 0


def _cmd_oracle_sweep(args) -> int:
    report = quasi_unipotence_sweep(args.kmax, args.nmax, args.order_max)
    print(f"checked {report.checked} triples with k <= {report.k_max}, "
          f"n <= {report.n_max}, order <= {report.order_max}")
    for order, k, n in report.boundary_memberships:
        print(f"  boundary membership at order {order}, k = {k}, n = {n}")
    if report.ok:
        print("no memberships outside the exceptional levels")
        return 0
    for order, k, n in report.violations:
        print(f"VIOLATION: membership at order {order}, k = {k}, n = {n}")
    return 1


def _cmd_cohomology(args) -> int:
    scenario = load_scenario(args.scenario)
    gen = scenario.generator()
    verdict = higher_cohomology_criterion(
        gen, args.k, args.n, strictly_henselian=scenario.strictly_henselian)
    if args.format == "json":
        sys.stdout.write(canonical_json({
            "id": verdict.criterion,
            "hypothesis": verdict.hypothesis,
            "conclusion": verdict.conclusion,
            "agree": verdict.agree,
            "citation": verdict.citation,
        }))
    else:
        print(f"{verdict.criterion}: reduction side {verdict.hypothesis}, "
              f"vanishing {verdict.conclusion}, agree {verdict.agree}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "tables":
            return _cmd_tables(args)
        if args.command == "oracle":
            return _cmd_oracle_sweep(args)
        return _cmd_cohomology(args)
    except (ScenarioError, SuiteError, InertiaError, MatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
