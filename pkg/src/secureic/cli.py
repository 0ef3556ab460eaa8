"""Command-line front end.

Subcommands: det-bounds, sym-capacity, audit, sweep, gauss.

Exit codes: 0 success, 1 audit failure, 2 usage error, 3 I/O error.
Every subcommand accepts ``--config FILE``, a JSON object keyed by flag
name (``m11`` or ``alpha-min`` style); explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .audit import TooLarge, audit_scheme
from .bounds import GaussianParams, det_report, gauss_report, sym_report
from .detchannel import DetChannelParams
from .schemes import UnsupportedParameters, cj_scheme, wocj_scheme
from .sweep import sweep_rows, write_csv

EXIT_OK, EXIT_AUDIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# flags whose values come from the command line or the config file
_FIELDS = {
    "det-bounds": ("m11", "m12", "m21", "m22"),
    "sym-capacity": ("md", "mc"),
    "audit": ("scheme", "m11", "m12", "m21", "m22", "md", "mc", "workers"),
    "sweep": ("alpha_min", "alpha_max", "steps", "out", "figure"),
    "gauss": ("a11", "a12", "a21", "a22", "P"),
}
_DEFAULTS = {
    "sweep": {"alpha_min": "0", "alpha_max": "3", "steps": 301},
    "audit": {"workers": 1},
}


class UsageError(Exception):
    pass


def _nonneg_int(text) -> int:
    try:
        v = int(str(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _finite_float(text) -> float:
    try:
        v = float(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return v


def _rational(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")


def _plain(x: Fraction):
    return int(x) if x.denominator == 1 else float(x)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secureic",
        description="Secure two-user interference channel: schemes, exact audits, capacity bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        p.add_argument("--config", metavar="FILE", help="JSON file with flag values")
        p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
        return p

    p = command("det-bounds", "Deterministic outer bounds, sum bound and WoCJ optimality verdict")
    for m in _FIELDS["det-bounds"]:
        p.add_argument(f"--{m}", type=_nonneg_int, metavar="N")

    p = command("sym-capacity", "Symmetric deterministic secure / non-secure / WoCJ sum rates")
    p.add_argument("--md", type=_rational, metavar="X")
    p.add_argument("--mc", type=_rational, metavar="X")

    p = command("audit", "Exhaustive leakage and decoding-error audit of a one-shot scheme")
    p.add_argument("--scheme", choices=("wocj", "cj"))
    for m in ("m11", "m12", "m21", "m22", "md", "mc"):
        p.add_argument(f"--{m}", type=_nonneg_int, metavar="N")
    p.add_argument("--workers", type=_nonneg_int, metavar="N", help="enumeration threads")
    p.add_argument("--show-layout", action="store_true", help="include the scheme layout")

    p = command("sweep", "Write the normalized sum-capacity curves vs. alpha to CSV")
    p.add_argument("--alpha-min", type=_rational, metavar="A")
    p.add_argument("--alpha-max", type=_rational, metavar="A")
    p.add_argument("--steps", type=_nonneg_int, metavar="N")
    p.add_argument("--out", metavar="FILE", help="CSV output path")
    p.add_argument("--figure", metavar="FILE", help="also render the curves to an image file")

    p = command("gauss", "GWC-TIN rates, upper bounds, constant gap and GDoF")
    for a in ("a11", "a12", "a21", "a22"):
        p.add_argument(f"--{a}", type=_finite_float, metavar="X")
    p.add_argument("--P", type=_finite_float, metavar="X")
    return parser


_CONVERTERS = {
    "m11": _nonneg_int, "m12": _nonneg_int, "m21": _nonneg_int, "m22": _nonneg_int,
    "md": _nonneg_int, "mc": _nonneg_int, "steps": _nonneg_int, "workers": _nonneg_int,
    "alpha_min": _rational, "alpha_max": _rational,
    "a11": _finite_float, "a12": _finite_float, "a21": _finite_float, "a22": _finite_float, "P": _finite_float,
    "scheme": str, "out": str, "figure": str,
}


def _merge_config(args: argparse.Namespace) -> None:
    names = _FIELDS[args.command]
    config: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        if not isinstance(raw, dict):
            raise UsageError("config must be a JSON object")
        config = {k.replace("-", "_"): v for k, v in raw.items()}
        unknown = set(config) - set(names) - {"json"}
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if config.get("json") and not args.json:
            args.json = True
    defaults = _DEFAULTS.get(args.command, {})
    for name in names:
        if getattr(args, name, None) is not None:
            continue
        if name in config:
            value = config[name]
        elif name in defaults:
            value = defaults[name]
        else:
            continue
        conv = _rational if args.command == "sym-capacity" else _CONVERTERS.get(name, str)
        try:
            setattr(args, name, conv(value))
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"config value for {name}: {exc}")


def _require(args, *names) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing required flag(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _flatten(record: dict, prefix: str = "") -> list[tuple[str, Any]]:
    out = []
    for k, v in record.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.extend(_flatten(v, key + "."))
        else:
            out.append((key, v))
    return out


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def emit(record: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(record, indent=2) + "\n")
        return
    items = _flatten(record)
    width = max(len(k) for k, _ in items)
    for k, v in items:
        out.write(f"{k.ljust(width)}  {_fmt(v)}\n")


# ----------------------------------------------------------------- commands

def cmd_det_bounds(args) -> int:
    _require(args, "m11", "m12", "m21", "m22")
    p = DetChannelParams(args.m11, args.m12, args.m21, args.m22)
    emit(det_report(p), args.json)
    return EXIT_OK


def cmd_sym_capacity(args) -> int:
    _require(args, "md", "mc")
    if args.md <= 0 or args.mc < 0:
        raise UsageError("need md > 0 and mc >= 0")
    rec = sym_report(args.md, args.mc)
    rec["md"], rec["mc"] = _plain(args.md), _plain(args.mc)
    emit(rec, args.json)
    return EXIT_OK


def cmd_audit(args) -> int:
    _require(args, "scheme")
    try:
        if args.scheme == "cj":
            _require(args, "md", "mc")
            scheme = cj_scheme(args.md, args.mc)
        elif args.md is not None or args.mc is not None:
            _require(args, "md", "mc")
            scheme = wocj_scheme(DetChannelParams.symmetric(args.md, args.mc))
        else:
            _require(args, "m11", "m12", "m21", "m22")
            scheme = wocj_scheme(DetChannelParams(args.m11, args.m12, args.m21, args.m22))
        report = audit_scheme(scheme, workers=max(1, args.workers or 1))
    except (UnsupportedParameters, TooLarge) as exc:
        raise UsageError(str(exc))
    rec = {"scheme": scheme.name, "params": scheme.params.as_dict(), **report.to_dict()}
    if args.show_layout:
        d = scheme.to_dict()
        rec["layout"] = {k: d[k] for k in ("layout1", "layout2", "read_map1", "read_map2")}
    emit(rec, args.json)
    return EXIT_OK if report.passed else EXIT_AUDIT_FAIL


def cmd_sweep(args) -> int:
    _require(args, "out")
    try:
        rows = sweep_rows(args.alpha_min, args.alpha_max, args.steps)
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
        if args.figure:
            from .plotting import plot_sweep

            plot_sweep(rows, args.figure)
    except OSError as exc:
        print(f"secureic sweep: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    summary = {"rows": len(rows), "out": str(Path(args.out))}
    if args.figure:
        summary["figure"] = str(Path(args.figure))
    emit(summary, args.json)
    return EXIT_OK


def cmd_gauss(args) -> int:
    _require(args, "a11", "a12", "a21", "a22", "P")
    try:
        g = GaussianParams(args.a11, args.a12, args.a21, args.a22, args.P)
    except ValueError as exc:
        raise UsageError(str(exc))
    emit(gauss_report(g), args.json)
    return EXIT_OK


COMMANDS = {
    "det-bounds": cmd_det_bounds,
    "sym-capacity": cmd_sym_capacity,
    "audit": cmd_audit,
    "sweep": cmd_sweep,
    "gauss": cmd_gauss,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"secureic {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
