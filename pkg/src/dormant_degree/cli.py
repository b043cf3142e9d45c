"""Command-line front end with a persistent exact-value cache.

Exit codes: 0 success, 2 invalid parameters, 3 formula-domain errors
(sign-invalid parameters, non-rational sums), 4 precision failures.

Stdout payloads contain no floating point and no timestamps; apart from
the ``cache_hit`` flag they are byte-identical across repeated runs with
the same arguments, whether values come from the cache or are computed.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .analysis import generate_table, polynomiality_check
from .cache import ValueCache, canonical_key
from .errors import FormulaDomainError, ParameterError, PrecisionError
from .opers import (
    dormant_degree,
    dormant_degree_float,
    frobenius_fiber_degree,
    frobenius_fiber_degree_float,
    sl_oper_degree,
    subbundle_invariants,
)
from .report import to_csv, to_json, to_markdown, value_dict
from .verlinde import check_verlinde_equivalence, verlinde_dim_fusion, verlinde_dim_trig
from .vi import vi_degree, vi_degree_float


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad usage through the normal error channel."""

    def error(self, message):
        raise ParameterError(message)


def _parse_int_list(text: str) -> list[int]:
    """Comma-separated integers, with 'a..b' inclusive ranges allowed."""
    out: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo, hi = chunk.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    return out


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--backend", choices=["exact", "float"], default="exact")
    parser.add_argument("--precision-bits", type=int, default=192)
    parser.add_argument("--format", choices=["json", "csv", "md"], default="json")
    parser.add_argument("--cache-dir", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dormant-degree", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, **params) -> argparse.ArgumentParser:
        p = sub.add_parser(name)
        for flag, kind in params.items():
            p.add_argument(f"--{flag}", type=kind, required=True)
        _add_common_flags(p)
        return p

    command("dormant", p=int, r=int, g=int)
    command("sl-dormant", p=int, r=int, g=int)
    command("vi", n=int, d=int, r=int, g=int)
    frob = command("frobenius", p=int, r=int, g=int)
    frob.add_argument(
        "--convention",
        choices=["as-written", "with-factorial"],
        default="as-written",
    )
    ver = command("verlinde", r=int, k=int, g=int)
    ver.add_argument("--method", choices=["fusion", "trig"], default="fusion")
    command("check-verlinde", p=int, r=int, g=int)
    command("invariants", n=int, d=int, r=int, g=int)

    polyfit = sub.add_parser("polyfit")
    polyfit.add_argument("--g", type=int, required=True)
    polyfit.add_argument("--fit-primes", type=_parse_int_list, required=True)
    polyfit.add_argument("--verify-primes", type=_parse_int_list, required=True)
    _add_common_flags(polyfit)

    table = sub.add_parser("table")
    table.add_argument("--g", type=_parse_int_list, required=True)
    table.add_argument("--r", type=_parse_int_list, required=True)
    table.add_argument("--p", type=_parse_int_list, required=True)
    _add_common_flags(table)

    cache = sub.add_parser("cache")
    cache.add_argument("action", choices=["stats"])
    _add_common_flags(cache)

    return parser


@dataclass(frozen=True)
class CommandResult:
    """A computed value plus provenance; ``payload`` is the stable section."""

    command: str
    params: dict
    value: Fraction
    reductions: tuple[str, ...]
    cache_hit: bool
    warnings: tuple[str, ...]
    duration_s: float

    def payload(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "value": value_dict(self.value),
            "integer": self.value.denominator == 1,
            "reductions": list(self.reductions),
            "cache_hit": self.cache_hit,
            "warnings": list(self.warnings),
        }


def _flat_rows(payload: dict) -> tuple[list[str], dict]:
    row: dict[str, object] = {}
    for key, value in payload.items():
        if key == "params":
            for name in sorted(value):
                row[f"param.{name}"] = value[name]
        elif isinstance(value, dict):
            for name in sorted(value):
                row[f"{key}.{name}"] = value[name]
        elif isinstance(value, list):
            row[key] = "|".join(str(v) for v in value)
        else:
            row[key] = value
    return list(row.keys()), row


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(payload)
    columns, row = _flat_rows(payload)
    if fmt == "csv":
        return to_csv(columns, [row])
    return to_markdown(columns, [row])


def _run_value_command(
    args,
    command: str,
    params: dict,
    exact: Callable[[], Fraction],
    float_backend: Callable[[], Fraction],
    reductions: tuple[str, ...],
) -> str:
    cache = ValueCache(args.cache_dir)
    key = canonical_key(command, params)
    compute = exact if args.backend == "exact" else float_backend
    if args.backend == "float":
        reductions = reductions + ("certified_rounding",)
    start = time.perf_counter()
    value, hit, warnings = cache.lookup_or_compute(
        key, compute, backend=args.backend, tool_version=__version__
    )
    result = CommandResult(
        command=command,
        params=params,
        value=value,
        reductions=reductions,
        cache_hit=hit,
        warnings=tuple(warnings),
        duration_s=time.perf_counter() - start,
    )
    return _render(result.payload(), args.format)


def _dispatch(args) -> str:
    bits = args.precision_bits
    if args.command == "dormant":
        params = {"p": args.p, "r": args.r, "g": args.g}
        return _run_value_command(
            args,
            "dormant",
            params,
            lambda: dormant_degree(args.p, args.r, args.g),
            lambda: dormant_degree_float(args.p, args.r, args.g, bits),
            ("rotation_and_permutation",),
        )
    if args.command == "sl-dormant":
        params = {"p": args.p, "r": args.r, "g": args.g}
        return _run_value_command(
            args,
            "sl-dormant",
            params,
            lambda: sl_oper_degree(args.p, args.r, args.g),
            lambda: args.r ** (2 * args.g)
            * dormant_degree_float(args.p, args.r, args.g, bits),
            ("rotation_and_permutation",),
        )
    if args.command == "vi":
        params = {"n": args.n, "d": args.d, "r": args.r, "g": args.g}
        return _run_value_command(
            args,
            "vi",
            params,
            lambda: vi_degree(args.n, args.d, args.r, args.g),
            lambda: vi_degree_float(args.n, args.d, args.r, args.g, bits),
            ("rotation_and_permutation",),
        )
    if args.command == "frobenius":
        convention = args.convention.replace("-", "_")
        params = {"p": args.p, "r": args.r, "g": args.g, "convention": args.convention}
        return _run_value_command(
            args,
            "frobenius",
            params,
            lambda: frobenius_fiber_degree(args.p, args.r, args.g, convention),
            lambda: frobenius_fiber_degree_float(
                args.p, args.r, args.g, convention, bits, reduction="auto"
            ),
            ("rotation_and_permutation",),
        )
    if args.command == "verlinde":
        if args.method == "fusion" and args.r != 2:
            raise ParameterError("the fusion oracle is implemented for rank 2 only")
        params = {"r": args.r, "k": args.k, "g": args.g, "method": args.method}
        exact = (
            (lambda: Fraction(verlinde_dim_fusion(args.k, args.g)))
            if args.method == "fusion"
            else (lambda: Fraction(verlinde_dim_trig(args.r, args.k, args.g, bits)))
        )
        return _run_value_command(
            args, "verlinde", params, exact, exact, (args.method,)
        )
    if args.command == "check-verlinde":
        report = check_verlinde_equivalence(args.p, args.r, args.g, bits)
        payload = {
            "command": "check-verlinde",
            "params": {"p": args.p, "r": args.r, "g": args.g},
            "lhs": value_dict(report.lhs),
            "rhs": value_dict(report.rhs),
            "dimension": report.dimension,
            "method": report.method,
            "equal": report.equal,
            "warnings": [],
        }
        return _render(payload, args.format)
    if args.command == "invariants":
        inv = subbundle_invariants(args.n, args.d, args.r, args.g)
        payload = {
            "command": "invariants",
            "params": {"n": args.n, "d": args.d, "r": args.r, "g": args.g},
            "mukai_bound": inv.mukai_bound,
            "s_r": inv.s_r,
            "epsilon": inv.epsilon,
            "e_max": value_dict(inv.e_max),
            "warnings": [],
        }
        return _render(payload, args.format)
    if args.command == "polyfit":
        report = polynomiality_check(args.g, args.fit_primes, args.verify_primes)
        payload = {
            "command": "polyfit",
            "params": {
                "g": args.g,
                "fit_primes": args.fit_primes,
                "verify_primes": args.verify_primes,
            },
            "coefficients": [value_dict(c) for c in report.poly.coefficients],
            "degree": report.poly.degree,
            "degree_ok": report.degree_ok,
            "verified": report.verified,
            "predictions": [
                {
                    "p": p,
                    "predicted": value_dict(predicted),
                    "actual": value_dict(actual),
                    "match": predicted == actual,
                }
                for p, predicted, actual in report.predictions
            ],
            "warnings": [],
        }
        return _render(payload, args.format)
    if args.command == "table":
        return generate_table(args.g, args.r, args.p, args.format, bits).serialize()
    if args.command == "cache":
        stats = ValueCache(args.cache_dir).stats()
        payload = {
            "command": "cache",
            "action": args.action,
            "entries": stats["entries"],
            "file_bytes": stats["file_bytes"],
            "path": stats["path"],
            "warnings": stats["warnings"],
        }
        return _render(payload, args.format)
    raise ParameterError(f"unknown command {args.command!r}")  # pragma: no cover


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    """Parse argv, dispatch, print the result; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(list(argv))
        out.write(_dispatch(args))
        return 0
    except ParameterError as exc:
        err.write(to_json({"error": {"exit_code": 2, "reason": str(exc)}}))
        return 2
    except FormulaDomainError as exc:
        err.write(to_json({"error": {"exit_code": 3, "reason": str(exc)}}))
        return 3
    except PrecisionError as exc:
        err.write(to_json({"error": {"exit_code": 4, "reason": str(exc)}}))
        return 4


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
