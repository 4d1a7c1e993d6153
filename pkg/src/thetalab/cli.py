"""Command-line front end: eval | verify | list.

Complex literals use the shell-safe form "a+bi" / "a-bi" (no spaces).
Values print as "re<TAB>im" with 15 decimal places.  Exit codes: 0 success,
2 parse or usage failure, 3 domain error, 4 precision unattainable.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Optional

from .types import (
    CharPair,
    CharQuad,
    DomainError,
    IdentityReport,
    PeriodMatrix2,
    PrecisionError,
    Tolerance,
    as_fraction,
)
from .cubic import abc_series
from .genus1 import dedekind_eta, theta_char_g1, theta_j
from .genus2 import theta_char_g2
from .landen import landen_ratio, landen_rhs
from .registry import (
    SchemaError,
    UnknownIdentityError,
    entry_ids,
    get_entry,
    list_entries,
    parse_complex,
    run_entry,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_PRECISION = 4

#: eval prints 15 decimals; evaluate well below that by default
_EVAL_EPS = 1e-15


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _fmt_value(v: complex) -> str:
    v = complex(v)
    return f"{v.real:.15f}\t{v.imag:.15f}"


def _fmt_complex_compact(v: complex) -> str:
    v = complex(v)
    re = f"{v.real:g}"
    im = f"{v.imag:+g}"
    return f"{re}{im}i"


def _parse_kv(pairs: list[str]) -> dict[str, str]:
    out = {}
    for item in pairs:
        if "=" not in item:
            raise CliError(f"expected key=value, got {item!r}")
        key, _, value = item.partition("=")
        if not key or not value:
            raise CliError(f"expected key=value, got {item!r}")
        out[key] = value
    return out


def _need(kv: dict, key: str) -> str:
    if key not in kv:
        raise CliError(f"missing required argument {key}=...")
    return kv.pop(key)


def _opt(kv: dict, key: str, default: Optional[str] = None) -> Optional[str]:
    return kv.pop(key, default)


def _complex_arg(kv: dict, key: str, required=True, default="0+0i") -> complex:
    raw = _need(kv, key) if required else _opt(kv, key, default)
    try:
        return parse_complex(raw)
    except (ValueError, TypeError) as exc:
        raise CliError(f"bad complex value for {key}: {raw!r} ({exc})") from exc


def _fraction_arg(kv: dict, key: str, required=True, default="0") -> Fraction:
    raw = _need(kv, key) if required else _opt(kv, key, default)
    try:
        return as_fraction(raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliError(f"bad fraction value for {key}: {raw!r} ({exc})") from exc


def _fraction_pair(kv: dict, key: str, required=True, default="0,0") -> tuple[Fraction, Fraction]:
    raw = _need(kv, key) if required else _opt(kv, key, default)
    parts = raw.split(",")
    if len(parts) != 2:
        raise CliError(f"{key} needs two comma-separated fractions, got {raw!r}")
    try:
        return as_fraction(parts[0]), as_fraction(parts[1])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliError(f"bad fraction pair for {key}: {raw!r} ({exc})") from exc


def _int_arg(kv: dict, key: str) -> int:
    raw = _need(kv, key)
    try:
        return int(raw)
    except ValueError as exc:
        raise CliError(f"bad integer value for {key}: {raw!r}") from exc


def _cmd_eval(args) -> int:
    kv = _parse_kv(args.args)
    tol = Tolerance(args.tol if args.tol is not None else _EVAL_EPS)
    fn = args.function

    if fn in ("theta1", "theta2", "theta3", "theta4"):
        j = int(fn[-1])
        u = _complex_arg(kv, "u", required=False)
        tau = _complex_arg(kv, "tau")
        value = theta_j(j, u, tau, tol)
    elif fn == "theta_char_g1":
        alpha = _fraction_arg(kv, "alpha")
        beta = _fraction_arg(kv, "beta")
        u = _complex_arg(kv, "u", required=False)
        tau = _complex_arg(kv, "tau")
        value = theta_char_g1(CharPair(alpha, beta), u, tau, tol)
    elif fn == "theta_char_g2":
        alpha = _fraction_pair(kv, "alpha")
        beta = _fraction_pair(kv, "beta")
        zeta_raw = _opt(kv, "zeta", "0+0i,0+0i")
        zparts = zeta_raw.split(",")
        if len(zparts) != 2:
            raise CliError(f"zeta needs two comma-separated complex values, got {zeta_raw!r}")
        try:
            zeta = (parse_complex(zparts[0]), parse_complex(zparts[1]))
        except ValueError as exc:
            raise CliError(f"bad zeta: {zeta_raw!r} ({exc})") from exc
        pm = PeriodMatrix2(_complex_arg(kv, "t11"), _complex_arg(kv, "t12"),
                           _complex_arg(kv, "t22"))
        value = theta_char_g2(CharQuad(alpha, beta), zeta, pm, tol)
    elif fn == "eta":
        value = dedekind_eta(_complex_arg(kv, "tau"), tol)
    elif fn in ("a", "b", "c"):
        q = _complex_arg(kv, "q")
        rised = _opt(kv, "r")
        r = parse_complex(rised) if rised is not None else None
        window_raw = _opt(kv, "window")
        window = int(window_raw) if window_raw is not None else None
        value = abc_series(fn, q, r, window, tol)
    elif fn == "landen_ratio":
        p = _int_arg(kv, "p")
        u = _complex_arg(kv, "u", required=False)
        tau = _complex_arg(kv, "tau")
        value = landen_ratio(p, u, tau, tol)
    elif fn == "landen_rhs":
        p = _int_arg(kv, "p")
        tau = _complex_arg(kv, "tau")
        value = landen_rhs(p, tau, tol)
    else:
        raise CliError(f"unknown function {fn!r}; see README for the eval surface")

    if kv:
        raise CliError(f"unexpected arguments: {', '.join(sorted(kv))}")
    print(_fmt_value(value))
    return EXIT_OK


def _json_safe(value):
    if value is None:
        return None
    if isinstance(value, str):
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, float)):
        return value
    return str(value)


def _params_compact(params: dict) -> str:
    parts = []
    for key in sorted(params):
        v = params[key]
        if isinstance(v, complex):
            parts.append(f"{key}={_fmt_complex_compact(v)}")
        else:
            parts.append(f"{key}={v}")
    return ";".join(parts)


def _report_json(report: IdentityReport, anchor: str) -> str:
    obj = {
        "id": report.identity_id,
        "params": {k: _json_safe(v) for k, v in report.params.items()},
        "lhs": _json_safe(report.lhs),
        "rhs": _json_safe(report.rhs),
        "residual": _json_safe(report.residual),
        "tolerance": report.tolerance,
        "verdict": report.verdict,
        "paper_anchor": anchor,
    }
    return json.dumps(obj, ensure_ascii=True)


def _cmd_verify(args) -> int:
    if args.all:
        ids = entry_ids()
    elif args.id:
        ids = [args.id]
    else:
        raise CliError("verify needs an identity id or --all")

    overrides = {}
    if args.tau is not None:
        overrides["tau"] = args.tau
    if args.order is not None:
        overrides["order"] = args.order

    all_ok = True
    for identity_id in ids:
        try:
            entry = get_entry(identity_id)
        except UnknownIdentityError as exc:
            raise CliError(str(exc)) from exc
        usable = {k: v for k, v in overrides.items() if k in entry.param_schema}
        if not args.all and len(usable) != len(overrides):
            extra = sorted(set(overrides) - set(usable))
            raise CliError(f"{identity_id} takes no parameter {extra[0]!r}")
        try:
            reports = run_entry(identity_id, usable, tolerance=args.tol)
        except SchemaError as exc:
            raise CliError(str(exc)) from exc
        for rep in reports:
            if not rep.ok:
                all_ok = False
            if args.json:
                print(_report_json(rep, entry.paper_anchor))
            else:
                residual = rep.residual
                res_txt = f"{residual:.3e}" if math.isfinite(residual) else "error"
                print(f"{rep.identity_id}\t{_params_compact(rep.params)}\t{res_txt}\t{rep.verdict}")
    return EXIT_OK if all_ok else 1


def _cmd_list(args) -> int:
    rows = list_entries(args.filter)
    for entry_id, anchor, schema in rows:
        print(f"{entry_id}\t{anchor}\t{schema}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetalab",
        description="Evaluate theta functions and verify the identity catalog.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a function at key=value arguments")
    p_eval.add_argument("function")
    p_eval.add_argument("args", nargs="*", metavar="key=value")
    p_eval.add_argument("--tol", type=float, default=None, help="series tail target")

    p_verify = sub.add_parser("verify", help="run catalog entries and report residuals")
    p_verify.add_argument("id", nargs="?", help="registry identity id")
    p_verify.add_argument("--all", action="store_true", help="run the whole catalog")
    p_verify.add_argument("--json", action="store_true", help="one JSON object per report line")
    p_verify.add_argument("--tol", type=float, default=None, help="override entry tolerance")
    p_verify.add_argument("--tau", type=parse_complex, default=None,
                          help="override the tau grid (complex, a+bi)")
    p_verify.add_argument("--order", type=int, default=None,
                          help="override the series order for formal.* entries")

    p_list = sub.add_parser("list", help="list catalog entries")
    p_list.add_argument("--filter", default=None, help="substring filter on ids")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed the usage message
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "list":
            return _cmd_list(args)
        raise CliError(f"unknown command {args.command!r}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
