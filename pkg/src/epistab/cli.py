"""Command-line front end.

Subcommands: simulate, equilibria, r0, stability, seir, compound, cubic,
paper-check.  Deterministic by construction: no environment configuration,
no network, numeric output capped at 12 significant digits.

Exit codes: 0 success, 1 usage error, 2 numeric failure, 3 infeasible request.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import covid, paper_check, seir, sim
from .compound import add_compound, mult_compound
from .linalg import ConvergenceError, SingularMatrixError, as_matrix, inverse, spectral_radius
from .stability import cardano, cubic_stability

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; route through UsageError for exit code 1
    def error(self, message):
        raise UsageError(message)


def _fmt(value):
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _fmt(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    return value


def _emit(obj, stream=None):
    json.dump(_fmt(obj), stream or sys.stdout, indent=2, sort_keys=True)
    (stream or sys.stdout).write("\n")


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_covid_config(path):
    return covid.CovidParams.from_dict(_load_json(path))


def load_seir_config(path):
    return seir.SeirParams.from_dict(_load_json(path))


def read_matrix(path):
    """Matrix text format: one row per line, comma-separated entries, no header."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(tok) for tok in line.split(",")])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise UsageError(f"malformed matrix file {path}: ragged or empty rows")
    return as_matrix(rows)


def format_matrix(m):
    return "\n".join(",".join(f"{v:.12g}" for v in row) for row in np.atleast_2d(m)) + "\n"


def _parse_sweep(text):
    try:
        name, spec = text.split("=", 1)
        lo, hi, step = (float(t) for t in spec.split(":"))
    except ValueError as exc:
        raise UsageError(f"bad sweep spec {text!r}, expected name=lo:hi:step") from exc
    if step <= 0 or lo > hi:
        raise UsageError("sweep needs positive step and lo <= hi")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return name.strip(), [lo + k * step for k in range(count)]


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_state(text, length):
    vals = [float(t) for t in text.split(",")]
    if len(vals) != length:
        raise UsageError(f"state must have {length} comma-separated values")
    return np.array(vals)


def build_parser():
    parser = _Parser(prog="epistab",
                     description="Compound-matrix stability toolkit for small epidemic models.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="integrate the five-compartment model (RK4)")
    sp.add_argument("--config", required=True, help="JSON parameter file")
    sp.add_argument("--x0", required=True, help="initial state E,I,C,H,D")
    sp.add_argument("--dt", type=float, default=0.01)
    sp.add_argument("--t-end", type=float, default=50.0)
    sp.add_argument("--out", default=None, help="trajectory CSV path ('-' for stdout)")

    sp = sub.add_parser("equilibria", help="disease-free and endemic points")
    sp.add_argument("--config", required=True)

    sp = sub.add_parser("r0", help="reproduction number, optionally swept over a parameter")
    sp.add_argument("--config", required=True)
    sp.add_argument("--sweep", default=None, help="e.g. mu=0.005:0.74:0.015")
    sp.add_argument("--out", default=None, help="sweep CSV path ('-' for stdout)")

    sp = sub.add_parser("stability", help="full stability report at both equilibria")
    sp.add_argument("--config", required=True)
    sp.add_argument("--measure", choices=["one", "two", "inf"], default=None,
                    help="restrict the sufficient-criterion verdicts to one measure")

    seir_p = sub.add_parser("seir", help="same analyses for the three-compartment system")
    seir_sub = seir_p.add_subparsers(dest="seir_command", required=True)
    sp = seir_sub.add_parser("r0")
    sp.add_argument("--config", required=True)
    sp.add_argument("--sweep", default=None)
    sp.add_argument("--out", default=None)
    sp = seir_sub.add_parser("equilibria")
    sp.add_argument("--config", required=True)
    sp = seir_sub.add_parser("stability")
    sp.add_argument("--config", required=True)
    sp = seir_sub.add_parser("simulate")
    sp.add_argument("--config", required=True)
    sp.add_argument("--x0", required=True, help="initial state S,I1,I2")
    sp.add_argument("--dt", type=float, default=0.01)
    sp.add_argument("--t-end", type=float, default=50.0)
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("compound", help="k-th compound of a matrix file")
    sp.add_argument("--matrix", required=True, help="matrix file, one comma-separated row per line")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mode", choices=["additive", "multiplicative"], default="additive")

    sp = sub.add_parser("cubic", help="Cardano roots and Routh-Hurwitz verdict")
    sp.add_argument("coefficients", nargs=4, type=float, metavar=("a", "b", "c", "d"))

    sp = sub.add_parser("paper-check", help="transcription-check report")
    sp.add_argument("--config", required=True)
    sp.add_argument("--seir-config", default=None)
    return parser


def _cmd_simulate(args):
    p = load_covid_config(args.config)
    x0 = covid.state(*_parse_state(args.x0, 5))
    traj = sim.simulate_covid(p, x0, args.dt, args.t_end)
    csv_text = sim.trajectory_to_csv(traj, "t,E,I,C,H,D")
    _write_text(args.out, csv_text)
    audit = sim.invariance_audit(traj, p)
    _emit(audit, sys.stdout if args.out not in (None, "-") else sys.stderr)
    return EXIT_OK


def _cmd_equilibria(args):
    p = load_covid_config(args.config)
    if p.beta1 < p.beta10:
        sys.stderr.write(
            "infeasible: beta1 < beta10, so the disease-free point is the unique equilibrium\n")
        return EXIT_INFEASIBLE
    out = {"dfe": covid.dfe(p).to_dict()}
    out["endemic"] = covid.endemic(p).to_dict()
    _emit(out)
    return EXIT_OK


def _sweep_csv(name, values, fn):
    lines = [f"{name},R0"]
    for v in values:
        lines.append(f"{v:.12g},{fn(v):.12g}")
    return "\n".join(lines) + "\n"


def _cmd_r0(args):
    p = load_covid_config(args.config)
    if args.sweep:
        name, values = _parse_sweep(args.sweep)
        if name not in covid.PARAM_KEYS:
            raise UsageError(f"unknown sweep parameter {name!r}")
        text = _sweep_csv(name, values, lambda v: covid.r0_reduced(p.replace(**{name: v})))
        _write_text(args.out, text)
        return EXIT_OK
    parts = covid.ngm_full(p, covid.dfe(p).state)
    _emit({"reduced": covid.r0_reduced(p), "full_dfe": parts.r0})
    return EXIT_OK


def _cmd_stability(args):
    p = load_covid_config(args.config)
    report = covid.stability_report(p)
    if args.measure:
        for spot in report["verdicts"].values():
            suff = spot.get("li_wang_sufficient", {})
            spot["li_wang_sufficient"] = {args.measure: suff[args.measure]}
    _emit(report)
    return EXIT_OK


def _cmd_seir(args):
    sp = load_seir_config(args.config)
    if args.seir_command == "r0":
        if args.sweep:
            name, values = _parse_sweep(args.sweep)
            if name not in seir.SEIR_KEYS:
                raise UsageError(f"unknown sweep parameter {name!r}")
            text = _sweep_csv(name, values, lambda v: seir.r0_seir(sp.replace(**{name: v})))
            _write_text(args.out, text)
        else:
            fm, vm = seir.seir_ngm_matrices(sp)
            _emit({"r0": seir.r0_seir(sp),
                   "ngm_spectral_radius": spectral_radius(-fm @ inverse(vm))})
        return EXIT_OK
    if args.seir_command == "equilibria":
        out = {"dfe": seir.dfe3(sp).to_dict(), "endemic": seir.endemic3(sp).to_dict()}
        _emit(out)
        return EXIT_OK
    if args.seir_command == "stability":
        _emit(seir.seir_stability(sp))
        return EXIT_OK
    traj = sim.integrate(lambda x: seir.rhs3(sp, x), _parse_state(args.x0, 3),
                         args.dt, args.t_end)
    _write_text(args.out, sim.trajectory_to_csv(traj, "t,S,I1,I2"))
    return EXIT_OK


def _cmd_compound(args):
    m = read_matrix(args.matrix)
    if args.mode == "additive":
        out = add_compound(m, args.k)
    else:
        out = mult_compound(m, args.k)
    sys.stdout.write(format_matrix(out))
    return EXIT_OK


def _cmd_cubic(args):
    a, b, c, d = args.coefficients
    roots = cardano(a, b, c, d)
    verdict = cubic_stability(b / a, c / a, d / a)
    _emit({"roots": roots.to_dict(), "routh_hurwitz": verdict.to_dict()})
    return EXIT_OK


def _cmd_paper_check(args):
    p = load_covid_config(args.config)
    sp = load_seir_config(args.seir_config) if args.seir_config else None
    claims = paper_check.build_report(p, sp)
    _emit(paper_check.report_to_dicts(claims))
    return EXIT_OK


_HANDLERS = {
    "simulate": _cmd_simulate,
    "equilibria": _cmd_equilibria,
    "r0": _cmd_r0,
    "stability": _cmd_stability,
    "seir": _cmd_seir,
    "compound": _cmd_compound,
    "cubic": _cmd_cubic,
    "paper-check": _cmd_paper_check,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        if isinstance(exc, covid.InfeasibleError):
            sys.stderr.write(f"infeasible: {exc}\n")
            return EXIT_INFEASIBLE
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (SingularMatrixError, ConvergenceError, sim.DivergenceError,
            ArithmeticError, np.linalg.LinAlgError) as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
