"""Command-line front end.

Exit codes::

    0   success (SAT for ks-verify; no violations for axioms and laws)
    1   axioms or laws found violations
    2   invalid input (parse, validation or dimension errors)
    3   request outside the supported scope (frame of a degenerate observable)
    10  ks-verify: the ray system admits no colouring (UNSAT)
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from . import datasets
from .bub_clifton import NonMaximalObservable, boolean_frame, enumerate_homs, membership
from .events import EventFamily, check_axioms, orthogonal_closure
from .io import InputError, Workspace
from .ks import RaySystem, export_cnf, find_coloring
from .laws import lattice_law_failures
from .linalg import DimensionMismatch, join
from .reports import AxiomReport, BCReport, KSReport, LawReport, ValuationReport, dumps
from .truth import (
    MeasurementContext,
    TwoValuedHom,
    contextual_state,
    expectation,
    global_valuate,
    pcc_valuate,
)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT = 2
EXIT_SCOPE = 3
EXIT_UNSAT = 10


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(report, args) -> None:
    sys.stdout.write(dumps(report.to_json()) if args.json else report.render())


def _ray_system(args) -> RaySystem:
    if args.builtin:
        try:
            return datasets.builtin_dataset(args.builtin)
        except KeyError as exc:
            raise _Fail(EXIT_INPUT, str(exc.args[0])) from None
    if not args.input:
        raise _Fail(EXIT_INPUT, "give an input file or --builtin NAME")
    return Workspace().load_ray_system(args.input)


def cmd_ks_verify(args) -> int:
    rs = _ray_system(args)
    if args.cnf:
        Path(args.cnf).write_text(export_cnf(rs))
    report = KSReport.build(rs, find_coloring(rs))
    _emit(report, args)
    return EXIT_OK if report.satisfiable else EXIT_UNSAT


def _context(args) -> tuple[Workspace, MeasurementContext]:
    ws = Workspace()
    obs = ws.load_observable(args.observable)
    state = ws.load_state(args.state)
    return ws, MeasurementContext(state, obs)


def cmd_bc(args) -> int:
    ws, ctx = _context(args)
    ds = ctx.structure
    frame = None
    if args.frame:
        try:
            frame = boolean_frame(ds)
        except NonMaximalObservable as exc:
            raise _Fail(EXIT_SCOPE, str(exc)) from None
    homs = enumerate_homs(ds)
    _emit(BCReport.build(ds, homs, frame, ws.radicand or 1), args)
    return EXIT_OK


def cmd_valuate(args) -> int:
    ws, ctx = _context(args)
    prop = ws.load_proposition(args.proposition)
    ds = ctx.structure
    rho = contextual_state(ctx)
    verdicts = tuple(pcc_valuate(ctx, TwoValuedHom(i), prop) for i in range(ds.k))
    report = ValuationReport(
        ws.radicand or 1,
        ctx.state,
        ctx.observable,
        prop,
        global_valuate(ctx.state, prop),
        membership(ds, prop),
        verdicts,
        rho.weights,
        rho.degenerate,
        expectation(ctx.state, ctx.observable),
        expectation(rho, ctx.observable),
    )
    _emit(report, args)
    return EXIT_OK


def _ray_family(rs: RaySystem) -> EventFamily:
    """Rays, joins within each context, closed under ortho and orthogonal joins."""
    seeds = list(rs.rays)
    for ctx in rs.contexts:
        for a in range(len(ctx)):
            for b in range(a + 1, len(ctx)):
                seeds.append(join(rs.rays[ctx[a]], rs.rays[ctx[b]]))
    return EventFamily.of(orthogonal_closure(seeds, rs.ambient_dim), rs.ambient_dim)


def cmd_axioms(args) -> int:
    rs = _ray_system(args)
    family = _ray_family(rs)
    violations = tuple(check_axioms(family))
    report = AxiomReport(rs.name, rs.ambient_dim, len(family), family.closed_under_ortho, violations)
    _emit(report, args)
    return EXIT_VIOLATIONS if violations else EXIT_OK


def cmd_laws(args) -> int:
    dims = tuple(sorted(set(args.dims)))
    if not dims or min(dims) < 1:
        raise _Fail(EXIT_INPUT, "dimensions must be positive")
    failures = lattice_law_failures(random.Random(args.seed), args.trials, dims)
    report = LawReport(args.seed, args.trials, dims, tuple(sorted(failures.items())))
    _emit(report, args)
    return EXIT_VIOLATIONS if any(failures.values()) else EXIT_OK


def cmd_datasets_list(args) -> int:
    items = datasets.list_datasets()
    if args.json:
        sys.stdout.write(dumps({"command": "datasets", "datasets": [{"name": n, "description": d} for n, d in items]}))
    else:
        width = max(len(n) for n, _ in items)
        sys.stdout.write("".join(f"{n.ljust(width)}  {d}\n" for n, d in items))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the machine-readable JSON report")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomised commands (default 0)")

    parser = argparse.ArgumentParser(prog="qlattice", parents=[common],
                                     description="Exact quantum-logic toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    ks = sub.add_parser("ks-verify", parents=[common], help="search a ray system for a 0/1 colouring")
    ks.add_argument("input", nargs="?", help="ray-system JSON file")
    ks.add_argument("--builtin", metavar="NAME", help="use a built-in dataset instead of a file")
    ks.add_argument("--cnf", metavar="OUT", help="also write the DIMACS CNF encoding")
    ks.set_defaults(func=cmd_ks_verify)

    bc = sub.add_parser("bc", parents=[common], help="determinate sublattice of a state and observable")
    bc.add_argument("state")
    bc.add_argument("observable")
    bc.add_argument("--frame", action="store_true", help="list the Boolean frame (maximal observables only)")
    bc.set_defaults(func=cmd_bc)

    val = sub.add_parser("valuate", parents=[common], help="global and per-context truth values of a proposition")
    val.add_argument("state")
    val.add_argument("observable")
    val.add_argument("proposition")
    val.set_defaults(func=cmd_valuate)

    ax = sub.add_parser("axioms", parents=[common], help="check event-algebra axioms on a ray-system family")
    ax.add_argument("input", nargs="?", help="ray-system JSON file")
    ax.add_argument("--builtin", metavar="NAME")
    ax.set_defaults(func=cmd_axioms)

    laws = sub.add_parser("laws", parents=[common], help="random sweep of the lattice laws")
    laws.add_argument("--trials", type=int, default=1000)
    laws.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5])
    laws.set_defaults(func=cmd_laws)

    ds = sub.add_parser("datasets", parents=[common], help="built-in datasets")
    ds_sub = ds.add_subparsers(dest="datasets_command", required=True)
    ds_list = ds_sub.add_parser("list", parents=[common])
    ds_list.set_defaults(func=cmd_datasets_list)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", 0)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InputError, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
