"""Command-line interface: ``krein-csym <command> ...``.

Commands
--------
verify A J C
    Print the three C-symmetry defects and PASS/FAIL.
construct A J
    Build C from the eigenvectors of A and write it; on an obstruction
    write a JSON report instead.
hermitize A J C
    Write ``H = sqrt(JC) A sqrt(JC)^-1`` and print its Hermiticity defect.
sweep
    Coupling sweep of the point-interaction model, CSV
    ``gamma,max_im_lambda,norm_C,cond_F,status``.
direct-sum
    Norm growth of direct-sum truncations, CSV ``M,norm_T,norm_C,cond_F``.

Exit codes: 0 pass, 2 semantic failure (no C-symmetry, check failed),
1 operational error (I/O, parse, shape, bad arguments).

Matrix files are read and written by :mod:`krein_csym.matrix_io`; the
format follows the extension (``.csv`` or anything else for JSON) unless
``--format`` is given.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .csymmetry import (SPEC_TOL, VER_TOL, construct_c, hermiticity_defect, hermitize,
                        verify_c_symmetry)
from .direct_sum import RULES, unboundedness_table
from .exceptions import CSymmetryObstruction, FNotPositive, KreinError, NotJSelfAdjoint
from .krein_core import KreinStructure
from .matrix_io import (format_float, matrix_to_csv, matrix_to_json, read_matrix, rows_to_csv,
                        write_matrix)
from .point_interaction import DISC_TOL, SymmetricGrid, gamma_sweep

EXIT_PASS, EXIT_ERROR, EXIT_FAIL = 0, 1, 2

SWEEP_HEADER = ("gamma", "max_im_lambda", "norm_C", "cond_F", "status")
DIRECT_SUM_HEADER = ("M", "norm_T", "norm_C", "cond_F")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    ver_tol: float = VER_TOL
    spec_tol: float = SPEC_TOL
    disc_tol: float = DISC_TOL
    grid_l: float = 20.0
    grid_n: int = 200
    out: str | None = None
    fmt: str | None = None

    def __post_init__(self):
        for name in ("ver_tol", "spec_tol", "disc_tol", "grid_l"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise UsageError(f"{name} must be positive, got {v}")
        if self.grid_n < 4:
            raise UsageError(f"grid N must be >= 4, got {self.grid_n}")
        if self.fmt not in (None, "csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.fmt}")

    @property
    def grid(self):
        return SymmetricGrid(L=self.grid_l, N=self.grid_n)


def _emit(text, cfg):
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path, cfg):
    return read_matrix(path, cfg.fmt)


def _krein(path, cfg):
    return KreinStructure(_load(path, cfg))


def _fmt_opt(x):
    return "none" if x is None else format_float(x)


def cmd_verify(a_path, j_path, c_path, cfg):
    ks = _krein(j_path, cfg)
    a, c = _load(a_path, cfg), _load(c_path, cfg)
    rep = verify_c_symmetry(ks, a, c, cfg.ver_tol).report
    lines = [
        f"involution_defect {format_float(rep.involution_defect)}",
        f"hermiticity_defect {format_float(rep.hermiticity_defect)}",
        f"positivity_margin {format_float(rep.positivity_margin)}",
        f"commutation_defect {_fmt_opt(rep.commutation_defect)}",
    ]
    if rep.passed:
        lines.append("PASS")
    else:
        lines.append(f"FAIL clause ({rep.failed_clause})")
    print("\n".join(lines))
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _report_json(d):
    return json.dumps(d, sort_keys=True) + "\n"


def cmd_construct(a_path, j_path, cfg):
    ks = _krein(j_path, cfg)
    a = _load(a_path, cfg)
    try:
        op = construct_c(ks, a, spec_tol=cfg.spec_tol, tol=cfg.ver_tol)
    except (CSymmetryObstruction, NotJSelfAdjoint) as exc:
        if isinstance(exc, CSymmetryObstruction):
            d = exc.as_dict()
        else:
            d = {"status": "NotJSelfAdjoint", "message": str(exc),
                 "offending_eigenvalue": None, "neutrality_margin": None}
        _emit(_report_json(d), cfg)
        return EXIT_FAIL
    if not op.passed:
        d = {"status": "VerificationFailed", "offending_eigenvalue": None,
             "neutrality_margin": None, "report": op.report.as_dict()}
        _emit(_report_json(d), cfg)
        return EXIT_FAIL
    if cfg.out:
        write_matrix(cfg.out, op.C, cfg.fmt)
    else:
        sys.stdout.write(matrix_to_csv(op.C) if cfg.fmt == "csv" else matrix_to_json(op.C) + "\n")
    return EXIT_PASS


def cmd_hermitize(a_path, j_path, c_path, cfg):
    ks = _krein(j_path, cfg)
    a, c = _load(a_path, cfg), _load(c_path, cfg)
    try:
        h = hermitize(ks, a, c)
    except FNotPositive as exc:
        print(f"FAIL {exc}")
        return EXIT_FAIL
    defect = hermiticity_defect(h)
    if cfg.out:
        write_matrix(cfg.out, h, cfg.fmt)
    print(f"hermiticity_defect {format_float(defect)}")
    return EXIT_PASS if defect <= cfg.ver_tol else EXIT_FAIL


def _table(header, rows, cfg):
    if cfg.fmt == "json":
        clean = [[None if isinstance(v, float) and math.isnan(v) else v for v in r] for r in rows]
        return json.dumps([dict(zip(header, r)) for r in clean]) + "\n"
    return rows_to_csv(header, rows)


def cmd_sweep(gammas, cfg, critical_coupling=1.0):
    rows = gamma_sweep(cfg.grid, gammas, critical_coupling, disc_tol=cfg.disc_tol,
                       spec_tol=cfg.spec_tol)
    out = [(r.gamma, r.max_im_lambda, r.norm_C, r.cond_F, r.status) for r in rows]
    _emit(_table(SWEEP_HEADER, out, cfg), cfg)
    return EXIT_PASS


def cmd_direct_sum(rule, m_values, cfg):
    rows = unboundedness_table(rule, m_values, cfg.grid)
    out = [(r.M, r.norm_T, r.norm_C, r.cond_F) for r in rows]
    _emit(_table(DIRECT_SUM_HEADER, out, cfg), cfg)
    return EXIT_PASS if all(r.passed for r in rows) else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for "no C-symmetry"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=VER_TOL, help="verification tolerance")
    common.add_argument("--spec-tol", type=float, default=SPEC_TOL,
                        help="relative size of Im(lambda) counted as non-real")
    common.add_argument("--disc-tol", type=float, default=DISC_TOL,
                        help="allowed discretisation P-self-adjointness defect")
    common.add_argument("--grid-n", type=int, default=None, help="nodes per half-line")
    common.add_argument("--grid-l", type=float, default=20.0, help="half-width of the box")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output file (default stdout)")

    p = _Parser(prog="krein-csym", description="C-symmetries of J-self-adjoint matrices")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", parents=[common], help="check C^2=I, JC>0, AC=CA")
    s.add_argument("A"), s.add_argument("J"), s.add_argument("C")

    s = sub.add_parser("construct", parents=[common], help="construct C from A and J")
    s.add_argument("A"), s.add_argument("J")

    s = sub.add_parser("hermitize", parents=[common], help="similarity to a Hermitian matrix")
    s.add_argument("A"), s.add_argument("J"), s.add_argument("C")

    s = sub.add_parser("sweep", parents=[common], help="point-interaction coupling sweep")
    s.add_argument("--gamma-min", type=float, default=0.0)
    s.add_argument("--gamma-max", type=float, default=4.0)
    s.add_argument("--steps", type=int, default=41)
    s.add_argument("--gammas", type=_floats, default=None,
                   help="explicit comma-separated couplings (overrides the range)")
    s.add_argument("--critical-coupling", type=float, default=1.0,
                   help="interface coupling used at gamma = 2")

    s = sub.add_parser("direct-sum", parents=[common], help="direct-sum norm growth table")
    s.add_argument("--rule", choices=sorted(RULES), default="above",
                   help="above: gamma_i = 2 + 1/i; below: gamma_i = 2 - 1/i")
    s.add_argument("--m", type=_ints, default=[5, 10, 20, 100],
                   help="comma-separated truncation sizes")
    return p


def _config(args, default_n):
    return RunConfig(ver_tol=args.tol, spec_tol=args.spec_tol, disc_tol=args.disc_tol,
                     grid_l=args.grid_l, grid_n=default_n if args.grid_n is None else args.grid_n,
                     out=args.out, fmt=args.format)


def _sweep_gammas(args):
    if args.gammas is not None:
        gammas = args.gammas
        if not gammas or min(gammas) < 0:
            raise UsageError("--gammas must be a non-empty list of values >= 0")
        return gammas
    if not 0 <= args.gamma_min < args.gamma_max:
        raise UsageError("need 0 <= gamma-min < gamma-max")
    if args.steps < 2:
        raise UsageError("need steps >= 2")
    return list(np.linspace(args.gamma_min, args.gamma_max, args.steps))


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args.A, args.J, args.C, _config(args, 200))
        if args.command == "construct":
            return cmd_construct(args.A, args.J, _config(args, 200))
        if args.command == "hermitize":
            return cmd_hermitize(args.A, args.J, args.C, _config(args, 200))
        if args.command == "sweep":
            cfg = _config(args, 200)
            return cmd_sweep(_sweep_gammas(args), cfg, args.critical_coupling)
        if args.command == "direct-sum":
            cfg = _config(args, 20)
            if not args.m or min(args.m) < 1:
                raise UsageError("--m needs sizes >= 1")
            return cmd_direct_sum(args.rule, args.m, cfg)
    except (OSError, UsageError, KreinError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
