"""Command line front end.

    nullhom <subcommand> [flags]

Reports go to stdout (or ``--output``), diagnostics to stderr.  Exit status is
0 on success, 1 when a check fails and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .acceptance import CRITERIA, SuiteConfig, randomized_spot_checks
from .arrowcat import ArrMorphism, ArrObject, check_universal, gamma_functor
from .completion import check_extension, extend_functor
from .dold_kan import (
    RGObject,
    denormalize,
    denormalize_morphism,
    dk_iso,
    normalize,
    two_cell_correspondence,
)
from .instance import Instance, InstanceError, parse_instance
from .matfp import MatFp
from .nullhomotopy import UniversalityError
from .report import Report
from .serialize import dumps, encode, report_dict

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Result:
    """One entry of the output: a check report, possibly with a construction attached."""

    report: Report
    output: Any = None
    wall_time: float | None = None
    extra: dict = field(default_factory=dict)


def emit_report(results: list[Result], fmt: str, meta: dict, timing: bool = False) -> bytes:
    if fmt == "text":
        lines = []
        for res in results:
            r = res.report
            word = {"pass": "PASS", "fail": "FAIL", "error": "ERROR"}[_status(res)]
            line = f"{word} {r.name} ({r.cases} cases)"
            if timing and res.wall_time is not None:
                line += f" [{res.wall_time:.3f}s]"
            lines.append(line)
            if not r.passed and r.witness:
                lines.append(f"  witness: {json.dumps(encode(r.witness), sort_keys=True)}")
        return ("\n".join(lines) + "\n").encode() if lines else b""
    checks = []
    for res in results:
        d = report_dict(res.report, res.wall_time if timing else None)
        d["status"] = _status(res)
        if res.output is not None:
            d["output"] = encode(res.output)
        d.update(res.extra)
        checks.append(d)
    return dumps({**meta, "checks": checks}).encode()


def _status(res: Result) -> str:
    if res.extra.get("error"):
        return "error"
    return res.report.status


def _meta(args) -> dict:
    params = {"probe_max": args.probe_max_size, "prime": args.prime, "max_dim": args.max_dim,
              "seed": args.seed}
    return {"tool": "nullhom", "version": __version__, "command": args.command, "params": params}


def _load(args) -> Instance:
    if not args.input:
        raise UsageError(f"{args.command} needs --input")
    try:
        data = Path(args.input).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {args.input}: {e.strerror}") from e
    return parse_instance(data)


def _named(inst: Instance, args):
    if not args.name:
        raise UsageError(f"{args.command} needs --name")
    return inst.lookup(args.name)


def _construction(check: str, output, **params) -> Result:
    return Result(Report(check, True, 1, None, params), output)


def _square(x, args) -> ArrMorphism:
    if not isinstance(x, ArrMorphism):
        raise UsageError(f"{args.name!r} is not a square")
    return x


def _matrix_arrow(x, args):
    if isinstance(x, (ArrObject, ArrMorphism, MatFp)):
        probe = x.a if isinstance(x, ArrObject) else (x.f if isinstance(x, ArrMorphism) else x)
        if isinstance(probe, MatFp):
            return x
    raise UsageError(f"{args.name!r} is not a matrix arrow, object or square")


# subcommands


def cmd_validate(args) -> list[Result]:
    inst = _load(args)
    counts = {k: len(getattr(inst, k)) for k in
              ("morphisms", "objects", "graphs", "squares", "spans", "nullhomotopies")}
    base = "finset" if inst.prime is None else f"mat{inst.prime}"
    return [Result(Report("validate", True, sum(counts.values()), None, {"base": base}),
                   {"base": base, "counts": counts})]


def cmd_cokernel(args) -> list[Result]:
    inst = _load(args)
    m = _square(_named(inst, args), args)
    s = inst.category
    return [_construction("cokernel", s.theta_cokernel(m), name=args.name)]


def cmd_check_universal(args) -> list[Result]:
    inst = _load(args)
    m = _square(_named(inst, args), args)
    s = inst.category
    t = s.theta_cokernel(m)
    r = check_universal(t, args.probe_max_size, s)
    r.params["name"] = args.name
    return [Result(r, t)]


def cmd_extend(args) -> list[Result]:
    inst = _load(args)
    s = inst.category
    k = args.probe_max_size
    if k is None:
        # dims <= 2 over F_p makes every extension clause quantify over millions of squares
        k = 1 if inst.prime is not None else 2
        print(f"nullhom extend: probing at size {k}", file=sys.stderr)
        args.probe_max_size = k
    try:
        fhat = extend_functor(gamma_functor(inst.base), s, validate=k)
    except UniversalityError as e:
        return [Result(Report("extend", False, 0, {"reason": str(e)}, {"probe_max": k}))]
    out = []
    if args.name:
        x = _named(inst, args)
        if isinstance(x, ArrObject):
            image = fhat.obj(x)
        elif isinstance(x, ArrMorphism):
            image = fhat.arr(x)
        elif isinstance(x, tuple) and isinstance(x[0], ArrMorphism) and not isinstance(x[1], ArrMorphism):
            image = fhat.tok(*x)
        else:
            raise UsageError(f"{args.name!r} is not an object, square or diagonal")
        out.append(_construction("extend", image, name=args.name))
    out.extend(Result(r) for r in check_extension(fhat, k))
    return out


def cmd_normalize(args) -> list[Result]:
    inst = _load(args)
    g = _named(inst, args)
    if isinstance(g, RGObject):
        return [_construction("normalize", normalize(g), name=args.name)]
    raise UsageError(f"{args.name!r} is not a reflexive graph")


def cmd_denormalize(args) -> list[Result]:
    inst = _load(args)
    x = _matrix_arrow(_named(inst, args), args)
    out = denormalize_morphism(x) if isinstance(x, ArrMorphism) else denormalize(x)
    return [_construction("denormalize", out, name=args.name)]


def cmd_dk_iso(args) -> list[Result]:
    inst = _load(args)
    g = _named(inst, args)
    if not isinstance(g, RGObject):
        raise UsageError(f"{args.name!r} is not a reflexive graph")
    try:
        return [_construction("dk-iso", dk_iso(g), name=args.name)]
    except (ArithmeticError, ValueError) as e:
        return [Result(Report("dk-iso", False, 1, {"reason": str(e)}, {"name": args.name}))]


def cmd_two_cells(args) -> list[Result]:
    inst = _load(args)
    m = _square(_matrix_arrow(_named(inst, args), args), args)
    return [Result(two_cell_correspondence(m))]


def cmd_suite(args) -> list[Result]:
    cfg = SuiteConfig(probe_max=args.probe_max_size, max_dim=args.max_dim, prime=args.prime,
                      seed=args.seed)
    out = []
    for name, fn in CRITERIA:
        t0 = time.perf_counter()
        r = fn(cfg)
        out.append(Result(r, wall_time=time.perf_counter() - t0))
    t0 = time.perf_counter()
    r = randomized_spot_checks(cfg)
    out.append(Result(r, wall_time=time.perf_counter() - t0))
    return out


COMMANDS = {
    "validate": (cmd_validate, "parse and validate an instance file"),
    "cokernel": (cmd_cokernel, "construct the cokernel of a named square"),
    "check-universal": (cmd_check_universal, "probe the universal property of a cokernel"),
    "extend": (cmd_extend, "extend Gamma to the arrow category and check the extension"),
    "normalize": (cmd_normalize, "normalize a named reflexive graph"),
    "denormalize": (cmd_denormalize, "denormalize a named matrix arrow or square"),
    "dk-iso": (cmd_dk_iso, "the isomorphism between a graph and D(K(graph))"),
    "two-cells": (cmd_two_cells, "count diagonals, graph nullhomotopies and 2-cells"),
    "suite": (cmd_suite, "run the acceptance suite"),
}


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a natural number")
    return v


def _prime(text: str) -> int:
    v = int(text)
    if v < 2 or any(v % q == 0 for q in range(2, int(v**0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="instance file (JSON)")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--name", help="entry of the instance file to act on")
    common.add_argument("--probe-max-size", type=_natural, default=None,
                        help="largest component size of probe objects (default 2; "
                             "1 for extend over a matrix base)")
    common.add_argument("--prime", type=_prime, default=2, help="field size for the suite (default 2)")
    common.add_argument("--max-dim", type=_natural, default=2,
                        help="largest dimension for matrix corpora (default 2)")
    common.add_argument("--seed", type=int, default=0, help="seed for the randomized layer")
    common.add_argument("--timing", action="store_true",
                        help="include wall times (makes output run-dependent)")
    parser = argparse.ArgumentParser(prog="nullhom", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"nullhom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    fn = COMMANDS[args.command][0]
    if args.probe_max_size is None and args.command != "extend":
        args.probe_max_size = 2
    try:
        results = fn(args)
    except (UsageError, InstanceError, ValueError, TypeError) as e:
        # anything raised on account of the input is a usage error, never a traceback
        print(f"nullhom {args.command}: {e}", file=sys.stderr)
        err = Result(Report(args.command, False, 0, {"reason": str(e)}, {}), extra={"error": str(e)})
        _write(args, emit_report([err], args.format, _meta(args)))
        return EXIT_USAGE
    _write(args, emit_report(results, args.format, _meta(args), args.timing))
    return EXIT_OK if all(r.report.passed for r in results) else EXIT_FAIL


def _write(args, data: bytes):
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main():
    sys.exit(run())
