"""Command-line entry point: ``squidtransfer <command> [flags]``.

Exit statuses: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__, acceptance, circuit, experiments
from .dynamics import assemble_density, coefficients
from .errors import SquidTransferError
from .kernels import BACKEND
from .measures import report
from .oracle import ProductPreparation, evolve_many
from .spectrum import DEFAULT_EPSILON_TAIL, build_spectrum

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CSV_COLUMNS = ("r", "tau", "e_npt", "concurrence", "eof", "s_linear", "purity")


class UsageError(Exception):
    pass


def fmt(x):
    """12 significant digits; booleans and None pass through as JSON literals."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def _json_value(x):
    if isinstance(x, str):
        return json.dumps(x)
    return fmt(x)


def dump_flat(obj):
    """Serialise a flat dict with fixed key order and fixed float formatting."""
    body = ",\n".join(f"  {json.dumps(k)}: {_json_value(v)}" for k, v in obj.items())
    return "{\n" + body + "\n}\n"


def dump_rows_json(rows):
    return "[\n" + ",\n".join(
        "  {" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in row.items()) + "}"
        for row in rows
    ) + "\n]\n"


def dump_rows_csv(columns, rows):
    lines = [",".join(columns)]
    lines.extend(",".join(fmt(row[c]) for c in columns) for row in rows)
    return "\n".join(lines) + "\n"


def finite_float(flag):
    def parse(text):
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if not math.isfinite(v):
            raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
        return v

    return parse


def int_at_least(flag, lo):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {v}")
        return v

    return parse


def range_spec(flag):
    def parse(text):
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"expected MIN:MAX:STEPS, got {text!r}")
        lo = finite_float(flag)(parts[0])
        hi = finite_float(flag)(parts[1])
        steps = int_at_least(flag, 2)(parts[2])
        if not hi > lo:
            raise argparse.ArgumentTypeError(f"MAX must exceed MIN in {text!r}")
        if lo < 0:
            raise argparse.ArgumentTypeError(f"MIN must be >= 0 in {text!r}")
        return lo, hi, steps

    return parse


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--epsilon-tail", type=finite_float("--epsilon-tail"), default=DEFAULT_EPSILON_TAIL)
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--workers", type=int_at_least("--workers", 1), default=1)

    point = _Parser(add_help=False)
    point.add_argument("--r", type=finite_float("--r"), required=True)
    point.add_argument("--tau", type=finite_float("--tau"), required=True)

    prep = _Parser(add_help=False)
    prep.add_argument("--alpha", type=finite_float("--alpha"), default=0.0)
    prep.add_argument("--beta", type=finite_float("--beta"), default=0.0)

    parser = _Parser(prog="squidtransfer", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("point", parents=[common, point, prep], help="report at one (r, tau)")
    p = sub.add_parser("sweep", parents=[common, prep], help="grid over (r, tau)")
    p.add_argument("--r-range", type=range_spec("--r-range"), default=(0.0, 2.0, 200))
    p.add_argument("--tau-range", type=range_spec("--tau-range"), default=(0.0, 3 * math.pi, 200))
    p = sub.add_parser("average", parents=[common, point], help="preparation-averaged state")
    p.add_argument("--grid-n", type=int_at_least("--grid-n", 16), default=64)
    p = sub.add_parser("prep-scan", parents=[common, point], help="E_NPT over (alpha, beta)")
    p.add_argument("--grid-n", type=int_at_least("--grid-n", 2), default=33)
    p = sub.add_parser("circuit", parents=[common], help="derived circuit parameters")
    p.add_argument("--circuit", metavar="FILE", help="key = value parameter file (SI units)")
    p.add_argument("--temperature", type=finite_float("--temperature"), default=0.02)
    sub.add_parser("verify", parents=[common], help="run the reproduction checks")
    return parser


def _preparation(args):
    try:
        return ProductPreparation(args.alpha, args.beta)
    except SquidTransferError as exc:
        raise UsageError(str(exc)) from None


def _provenance(epsilon_tail, n_max=None):
    out = {"version": __version__, "kernel": BACKEND, "epsilon_tail": epsilon_tail}
    if n_max is not None:
        out["n_max"] = n_max
    return out


def _check_point(args):
    if args.r < 0:
        raise UsageError(f"--r must be >= 0, got {args.r}")
    if args.tau < 0:
        raise UsageError(f"--tau must be >= 0, got {args.tau}")
    if not 0 < args.epsilon_tail < 1:
        raise UsageError("--epsilon-tail must lie in (0, 1)")


def cmd_point(args):
    _check_point(args)
    prep = _preparation(args)
    s = build_spectrum(args.r, args.epsilon_tail)
    out = {"r": args.r, "tau": args.tau, "alpha": args.alpha, "beta": args.beta}
    if prep.is_ground:
        co = coefficients(s, args.tau)
        rho = assemble_density(co)
        out.update(path="closed_form", A=co.A, B=co.B, C=co.C, D=co.D)
    else:
        rho = evolve_many([prep], s, args.tau)[0]
        out.update(path="oracle", A=None, B=None, C=None, D=None)
    out.update(report(rho).as_dict())
    out.update(_provenance(args.epsilon_tail, s.n_max))
    return dump_flat(out)


def cmd_sweep(args):
    r_lo, r_hi, r_n = args.r_range
    t_lo, t_hi, t_n = args.tau_range
    spec = experiments.SweepSpec(
        r_min=r_lo, r_max=r_hi, r_steps=r_n,
        tau_min=t_lo, tau_max=t_hi, tau_steps=t_n,
        preparation=_preparation(args),
        epsilon_tail=args.epsilon_tail,
    )
    try:
        spec.validate()
    except SquidTransferError as exc:
        raise UsageError(str(exc)) from None
    result = experiments.run_sweep(spec, workers=args.workers)
    rows = [dict(r=r, tau=t, **rep.as_dict()) for r, t, rep in result.rows()]
    if args.format == "json":
        return dump_rows_json([{c: row[c] for c in CSV_COLUMNS} for row in rows])
    return dump_rows_csv(CSV_COLUMNS, rows)


def cmd_average(args):
    _check_point(args)
    rho = experiments.averaged_density(args.r, args.tau, args.grid_n, args.epsilon_tail)
    rep = report(rho)
    out = {"r": args.r, "tau": args.tau, "grid_n": args.grid_n}
    for i in range(4):
        for j in range(4):
            out[f"rho_{i}{j}_re"] = rho[i, j].real
            out[f"rho_{i}{j}_im"] = rho[i, j].imag
    out.update(rep.as_dict())
    out["convergence"] = experiments.averaged_convergence(args.r, args.tau, args.grid_n, args.epsilon_tail)
    out.update(_provenance(args.epsilon_tail))
    return dump_flat(out)


def cmd_prep_scan(args):
    _check_point(args)
    scan = experiments.preparation_scan(args.r, args.tau, args.grid_n, args.grid_n, args.epsilon_tail)
    rows = [{"alpha": a, "beta": b, "e_npt": e} for a, b, e in scan.rows()]
    if args.format == "json":
        return dump_rows_json(rows)
    return dump_rows_csv(("alpha", "beta", "e_npt"), rows)


def cmd_circuit(args):
    if args.circuit:
        try:
            params = circuit.load_circuit_file(args.circuit)
        except OSError as exc:
            raise OSError(f"cannot read circuit file: {exc}") from exc
        except (ValueError, SquidTransferError) as exc:
            raise UsageError(f"--circuit: {exc}") from None
        d = circuit.derive(params)
    else:
        d = circuit.nominal()
    out = {k: getattr(d, k) for k in (
        "cap_c", "cap_c1", "cap_c2", "det_d", "omega", "rabi_omega",
        "e_j", "t_per_tau", "charging_energy", "gate_offset",
    )}
    out["t_peak_seconds"] = circuit.tau_to_seconds(acceptance.PEAK_TAU, d)
    for check in circuit.regime_check(d, args.temperature):
        out[f"{check.name}_ratio"] = check.ratio
        out[f"{check.name}_pass"] = check.passed
    return dump_flat(out)


def cmd_verify(args):
    checks = acceptance.run_all(epsilon_tail=args.epsilon_tail)
    lines = [c.line() for c in checks]
    failed = [c for c in checks if not c.passed]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    for c in failed:
        lines.append(f"FAILED: {c.name}")
    return "\n".join(lines) + "\n", (EXIT_VERIFY if failed else EXIT_OK)


COMMANDS = {
    "point": cmd_point,
    "sweep": cmd_sweep,
    "average": cmd_average,
    "prep-scan": cmd_prep_scan,
    "circuit": cmd_circuit,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "point" and args.format == "csv":
            raise UsageError("point emits JSON only")
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SquidTransferError as exc:
        print(f"squidtransfer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"squidtransfer: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(result)
        else:
            sys.stdout.write(result)
    except OSError as exc:
        print(f"squidtransfer: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
