"""Command-line interface: factorizations, leaf coordinates, verification suites.

stdout carries exactly one JSON payload; diagnostics go to stderr.  Exit
codes: 0 success/pass, 1 verification or residual failure, 2 usage or input
errors.  The env var LIEPOISSON_TOL_SCALE (float) uniformly scales all
tolerances.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import group_case
from .core import SpaceInstance, membership_residual
from .factorization import (
    FactorizationError,
    OffTopStratumError,
    birkhoff,
    bruhat_cell,
    cartan_embed,
    cell_length,
    iwasawa,
)
from .jsonio import matrix_from_json, matrix_to_json, parse_complex, plain_matrix_to_json
from .verify import run_suite
from .weyl import is_reduced

__all__ = ["main"]


class UsageError(Exception):
    pass


def _tol_scale():
    raw = os.environ.get("LIEPOISSON_TOL_SCALE", "1")
    try:
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"bad LIEPOISSON_TOL_SCALE value {raw!r}") from exc


def _read_matrix(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
        return matrix_from_json(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}") from exc


def _emit(payload, path=None):
    text = json.dumps(payload, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_word(text):
    try:
        return [int(v) for v in text.split()]
    except ValueError as exc:
        raise UsageError(f"bad word {text!r}") from exc


def _parse_zetas(text):
    try:
        return [parse_complex(part) for part in text.split(",")] if text else []
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_factor(args):
    inst, g = _read_matrix(args.input)
    if args.instance and str(SpaceInstance.parse(args.instance)) != str(inst):
        raise UsageError("instance flag disagrees with the input file")
    tol = args.tol * _tol_scale()
    if args.what == "iwasawa":
        try:
            f = iwasawa(inst, g)
        except FactorizationError as exc:
            raise UsageError(str(exc)) from exc
        res = f.residual(g)
        payload = {
            "l": matrix_to_json(inst, f.l),
            "a": matrix_to_json(inst, f.a),
            "u": matrix_to_json(inst, f.u),
            "a0": matrix_to_json(inst, f.a0),
            "a1": matrix_to_json(inst, f.a1),
            "residual": res,
        }
        _emit(payload, args.output)
        return 0 if res <= tol else 1
    if args.what == "birkhoff":
        if membership_residual(inst, "U", g) > 1e-8 * max(1.0, float(np.linalg.norm(g))):
            raise UsageError("birkhoff input must be unitary")
        try:
            f = birkhoff(inst, g)
        except OffTopStratumError as exc:
            raise UsageError(f"off top stratum: cell {exc.cell}") from exc
        res = f.residual(g)
        payload = {
            "cell": [list(p) for p in f.w],
            "l": matrix_to_json(inst, f.l),
            "m": matrix_to_json(inst, f.m),
            "a": matrix_to_json(inst, f.a),
            "u_plus": matrix_to_json(inst, f.u_plus),
            "residual": res,
        }
        _emit(payload, args.output)
        return 0 if res <= tol else 1
    if args.what == "bruhat-cell":
        try:
            cell = bruhat_cell(inst, g)
        except FactorizationError as exc:
            raise UsageError(str(exc)) from exc
        _emit({"cell": [list(p) for p in cell], "length": cell_length(cell)}, args.output)
        return 0
    if args.what == "cartan-embed":
        y = cartan_embed(inst, g)
        res = float(np.linalg.norm(np.linalg.inv(y) - inst.theta(y)))
        _emit({"result": matrix_to_json(inst, y), "involution_residual": res}, args.output)
        return 0 if res <= tol else 1
    raise UsageError(f"unknown factor subcommand {args.what!r}")


def cmd_leaf(args):
    n = args.n
    word = _parse_word(args.word)
    zeta = _parse_zetas(args.zeta)
    if word and not is_reduced(n, word):
        raise UsageError(f"word {word} is not reduced for rank {n}")
    if len(word) != len(zeta):
        raise UsageError("word and zeta must have the same length")
    if args.what == "coords":
        if word:
            l = group_case.lu_coordinates_to_l(n, word, zeta)
        else:
            l = np.eye(n, dtype=complex)
        _emit({"word": word, "zeta": [[z.real, z.imag] for z in zeta],
               "l": plain_matrix_to_json(l)}, args.output)
        return 0
    rep = group_case.density_report(n, word, zeta) if word else None
    payload = {
        "word": word,
        "zeta": [[z.real, z.imag] for z in zeta],
        "coeffs": list(rep.form_coefficients) if rep else [],
        "a": [float(v) for v in np.diag(rep.a_value).real] if rep is not None
             else [1.0] * n,
        "haar": rep.haar_density if rep else 1.0,
        "momentum": list(rep.momentum) if rep else [0.0] * (n - 1),
    }
    if args.what == "form":
        _emit({k: payload[k] for k in ("word", "zeta", "coeffs")}, args.output)
        return 0
    if args.what == "density":
        _emit(payload, args.output)
        return 0
    if args.what == "momentum":
        _emit({k: payload[k] for k in ("word", "zeta", "momentum")}, args.output)
        return 0
    raise UsageError(f"unknown leaf subcommand {args.what!r}")


def cmd_verify(args):
    inst = SpaceInstance.parse(args.instance)
    report = run_suite(args.suite, inst, samples=args.samples, seed=args.seed,
                       tol_scale=_tol_scale(), step=args.step)
    _emit(report.to_dict(), args.output)
    return 0 if report.passed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="liepoisson",
                                description="Poisson structures on symmetric spaces at desk scale")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="matrix factorizations")
    f.add_argument("what", choices=["iwasawa", "birkhoff", "bruhat-cell", "cartan-embed"])
    f.add_argument("--instance", help="grass:p,q or group:n (checked against the input)")
    f.add_argument("--input", required=True, help="matrix JSON file")
    f.add_argument("--output", help="write JSON here instead of stdout")
    f.add_argument("--tol", type=float, default=1e-10)
    f.set_defaults(fn=cmd_factor)

    l = sub.add_parser("leaf", help="leaf coordinates and closed-form leaf data")
    l.add_argument("what", choices=["coords", "form", "density", "momentum"])
    l.add_argument("--n", type=int, required=True, help="rank parameter of SU(n)")
    l.add_argument("--word", default="", help="space-separated simple reflection indices")
    l.add_argument("--zeta", default="", help="comma-separated a+bi literals")
    l.add_argument("--output")
    l.set_defaults(fn=cmd_leaf)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True,
                   choices=["core", "factorization", "hamiltonian", "noncompact",
                            "compact", "iso", "group", "all"])
    v.add_argument("--instance", required=True, help="grass:p,q or group:n")
    v.add_argument("--samples", type=int, default=50)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--step", type=float, default=1e-4)
    v.add_argument("--output")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
