"""Command-line front end: ``shadowjones build | jones | vcscan | verify``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import mpmath

from . import builders as B
from .qring import DEFAULT_PRECISION, POLE, ZERO_VALUE, IndeterminateError
from .shadow import InfiniteShadowError, InternalRegionWarning, ShadowError, load_shadow
from .statesum import jones_numeric, jones_symbolic, vc_csv, vc_record
from .verify import SUITES, run_suite
from .volume import vc_sequence, vc_sequence_csv, vc_target

EXIT_INPUT = 3
EXIT_INFINITE = 4
EXIT_POLE = 5
EXIT_FAILED = 1


@dataclass(frozen=True)
class CliConfig:
    precision_bits: int = DEFAULT_PRECISION
    threads: int = 1
    output: str | None = None
    format: str = "pretty"

    def __post_init__(self):
        if self.precision_bits < 53:
            raise ValueError("precision must be at least 53 bits")
        if self.threads < 1:
            raise ValueError("threads must be positive")


def _default_precision() -> int:
    env = os.environ.get("SHADOWJONES_PRECISION")
    return int(env) if env else DEFAULT_PRECISION


def _emit(cfg: CliConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output and cfg.output != "-":
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def resolve_shadow(source: str):
    """A shadow from a JSON file or a builder name (``universal-<c>`` included)."""
    path = Path(source)
    if path.exists():
        return load_shadow(path)
    if source in B.BUILDERS:
        return B.BUILDERS[source]()
    if source.startswith("universal-") and source[len("universal-"):].isdigit():
        return B.universal_for(int(source[len("universal-"):]))
    raise ShadowError(f"no shadow file or builder named {source!r}")


def cmd_build(args, cfg: CliConfig) -> int:
    if args.kind == "universal":
        if args.arg is None or not args.arg.isdigit():
            raise ShadowError("build universal needs the number of vertices c")
        p = B.universal_for(int(args.arg))
    elif args.kind == "from-diagram":
        if args.arg is None:
            raise ShadowError("build from-diagram needs a diagram JSON file")
        p = B.diagram_to_shadow(B.load_diagram(args.arg))
    elif args.kind == "from-graph":
        if args.arg is None:
            raise ShadowError("build from-graph needs a graph JSON file")
        p = B.universal_shadow(B.FourValentGraph.from_json(json.loads(Path(args.arg).read_text())))
    else:
        p = B.BUILDERS[args.kind]()
    _emit(cfg, p.dumps())
    return 0


def cmd_jones(args, cfg: CliConfig) -> int:
    p = resolve_shadow(args.shadow)
    if args.numeric is None:
        f = jones_symbolic(p, args.d, workers=cfg.threads)
        if cfg.format == "json":
            _emit(cfg, json.dumps({"d": args.d, "shadow": p.label, "jones": f.to_json(),
                                   "canonical": f.to_canonical_text()}, indent=2))
        elif cfg.format == "csv":
            _emit(cfg, f"d,jones\n{args.d},\"{f.to_canonical_text()}\"")
        else:
            _emit(cfg, f.to_pretty())
        return 0
    r = args.numeric
    val = jones_numeric(p, args.d, r, cfg.precision_bits, workers=cfg.threads)
    if val is POLE or val is ZERO_VALUE:
        status, log_mag, phase = ("pole" if val is POLE else "zero"), "", ""
    else:
        status = "ok"
        with mpmath.workprec(cfg.precision_bits):
            log_mag = mpmath.nstr(val.log_mag, 30)
            phase = mpmath.nstr(val.phase, 30)
    if cfg.format == "json":
        _emit(cfg, json.dumps({"d": args.d, "r": r, "status": status, "log_mag": log_mag, "phase": phase}, indent=2))
    elif cfg.format == "csv":
        _emit(cfg, f"d,r,status,log_mag,phase\n{args.d},{r},{status},{log_mag},{phase}")
    elif status == "ok":
        with mpmath.workprec(cfg.precision_bits):
            z = val.to_complex()
            _emit(cfg, f"{mpmath.nstr(z.real, 20)} {'+' if z.imag >= 0 else '-'} "
                       f"{mpmath.nstr(abs(z.imag), 20)}i  (log|J| = {log_mag}, arg = {phase})")
    else:
        _emit(cfg, status)
    return EXIT_POLE if status == "pole" else 0


def cmd_vcscan(args, cfg: CliConfig) -> int:
    if args.c < 1 or args.d_max < 3:
        raise ShadowError("vcscan needs c >= 1 and d_max >= 3")
    if args.engine == "statesum":
        p = B.universal_for(args.c)
        target = vc_target(args.c)
        recs = [vc_record(p, d, cfg.precision_bits, cfg.threads) for d in range(3, args.d_max + 1, 2)]
        text = vc_csv(recs, {"target": lambda rec: repr(target),
                             "gap": lambda rec: "" if rec.a_d is None else repr(target - float(rec.a_d))})
    else:
        precision = cfg.precision_bits if args.exact_log else None
        text = vc_sequence_csv(vc_sequence(args.c, args.d_max, precision))
    _emit(cfg, text)
    return 0


def cmd_verify(args, cfg: CliConfig) -> int:
    results = run_suite(args.suite, cfg.precision_bits)
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    _emit(cfg, "\n".join(lines))
    return EXIT_FAILED if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shadowjones",
                                 description="Colored Jones invariants from shadow state sums.")
    ap.add_argument("--precision", type=int, default=_default_precision(),
                    help="working precision in bits (default 128, or $SHADOWJONES_PRECISION)")
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                    help="worker processes for state sums (default: all cores)")
    ap.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    ap.add_argument("--output", default=None, help="output file (default stdout)")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a shadow as JSON")
    b.add_argument("kind", choices=sorted(B.BUILDERS) + ["universal", "from-diagram", "from-graph"])
    b.add_argument("arg", nargs="?", help="c for universal, a JSON file for from-diagram/from-graph")
    b.set_defaults(func=cmd_build)

    j = sub.add_parser("jones", help="compute J_d of a shadow")
    j.add_argument("shadow", help="shadow JSON file or builder name (e.g. unknot, universal-2)")
    j.add_argument("d", type=int)
    mode = j.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true", help="exact rational function (default)")
    mode.add_argument("--numeric", type=int, metavar="R", help="evaluate at t = exp(2 pi i / R)")
    j.set_defaults(func=cmd_jones)

    v = sub.add_parser("vcscan", help="growth rates (1/d) log|J_d| of universal links as CSV")
    v.add_argument("c", type=int)
    v.add_argument("d_max", type=int)
    v.add_argument("--engine", choices=("closed-form", "statesum"), default="closed-form")
    v.add_argument("--exact-log", action="store_true", help="sum logarithms at --precision bits")
    v.set_defaults(func=cmd_vcscan)

    c = sub.add_parser("verify", help="run the acceptance checks")
    c.add_argument("suite", nargs="?", choices=SUITES, default="all")
    c.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = CliConfig(args.precision, args.threads, args.output, args.format)
    except ValueError as exc:
        ap.error(str(exc))
    warnings.simplefilter("ignore", InternalRegionWarning)
    try:
        return args.func(args, cfg)
    except InfiniteShadowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFINITE
    except IndeterminateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POLE
    except (ShadowError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
