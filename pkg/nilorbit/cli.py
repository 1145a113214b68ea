"""Command-line front end.

Polynomials are given constant-first, so ``--poly=-3,7,-2`` is
-2x^2 + 7x - 3. Data goes to stdout (or ``--output``); diagnostics go to
stderr as ``nilorbit: error[<code>]: <message>``.

Exit codes: 0 success, 1 suite failure, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from . import __version__
from .classify import classify
from .config import DEFAULT_PATH, cfg_or_env, int_setting, load_config
from .errors import NilorbitError, ParseError
from .modp import m_p, residue_trajectory, weak_local_scan
from .numtheory import is_prime, make_support
from .orbits import orbit
from .polynomial import Polynomial
from .reports import scan_to_csv, to_json, to_text
from .verify import scan_Nu_LNu, suite_names, theorem_suite

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_SUITE_FAILED, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

# flags whose values may start with "-" (negative coefficients, base points)
_VALUE_FLAGS = {
    "--poly",
    "--r",
    "--exclude",
    "--mod",
    "--p",
    "--coeffs",
    "--primes-up-to",
    "--max-steps",
    "--range",
    "--seed",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ParseError(message)


def _normalize_argv(argv: list[str]) -> list[str]:
    """Join ``--flag value`` into ``--flag=value`` for value flags."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _poly(text: str) -> Polynomial:
    return Polynomial.parse(text)


def _primes(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ParseError(f"invalid prime list: {text!r}") from exc
    for p in values:
        if not is_prime(p):
            raise ParseError(f"--exclude entry {p} is not a prime")
    return values


def _pair(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(part) for part in text.split(","))
    except ValueError as exc:
        raise ParseError(f"expected LO,HI, got {text!r}") from exc
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nilorbit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", default=None, help="JSON config file")
    parser.add_argument("--format", choices=["json", "csv", "text"], default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--debug", action="store_true")
    parser.add_argument("--output", default=None, help="write data to this file")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("orbit", help="orbit over Z, or mod P with --mod")
    p.add_argument("--poly", type=_poly, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--mod", type=int, default=None)

    p = sub.add_parser("mp", help="m_p and cycle shape for one prime")
    p.add_argument("--poly", type=_poly, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("scan", help="m_p for every prime up to a bound")
    p.add_argument("--poly", type=_poly, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--exclude", type=_primes, default=())
    p.add_argument("--primes-up-to", type=int, default=None)
    p.add_argument("--decide", action="store_true", help="stop at the first witness")

    p = sub.add_parser("classify", help="theorem-backed verdict")
    p.add_argument("--poly", type=_poly, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--exclude", type=_primes, default=())
    p.add_argument("--primes-up-to", type=int, default=None)

    p = sub.add_parser("verify", help="run a theorem suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--primes-up-to", type=int, default=None)
    p.add_argument("--coeffs", type=_pair, default=None)

    p = sub.add_parser("explore", help="scan N(u) and LN(u) on [-R, R]")
    p.add_argument("--poly", type=_poly, required=True)
    p.add_argument("--range", type=int, required=True)
    p.add_argument("--primes-up-to", type=int, default=None)

    sub.add_parser("suites", help="list suite names")
    return parser


def _render(obj: Any, fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        if hasattr(obj, "results"):
            return scan_to_csv(obj)
        raise ParseError("csv output is only available for scan")
    if fmt == "text":
        return to_text(obj)
    if extra:
        data = json.loads(to_json(obj))
        data.update(extra)
        return json.dumps(data, sort_keys=True, indent=2)
    return to_json(obj)


def _dispatch(args: argparse.Namespace, cfg: dict[str, Any]) -> tuple[str, int]:
    fmt = args.format or cfg_or_env(cfg, "format")
    bound = getattr(args, "primes_up_to", None)
    if bound is None:
        bound = int_setting(cfg, "prime_bound")
    workers = args.workers or int_setting(cfg, "workers")
    if bound < 2:
        raise ParseError(f"--primes-up-to must be at least 2, got {bound}")

    if args.command == "orbit":
        if args.mod is not None:
            res = m_p(args.poly, args.r, args.mod)
            trajectory = residue_trajectory(args.poly, args.r, args.mod)
            return _render(res, fmt, {"trajectory": trajectory}), EXIT_OK
        steps = args.max_steps or int_setting(cfg, "max_steps")
        return _render(orbit(args.poly, args.r, steps), fmt), EXIT_OK
    if args.command == "mp":
        return _render(m_p(args.poly, args.r, args.p), fmt), EXIT_OK
    if args.command == "scan":
        mode = "decision" if args.decide else "table"
        report = weak_local_scan(
            args.poly, args.r, make_support(args.exclude), bound, mode, workers
        )
        return _render(report, fmt), EXIT_OK
    if args.command == "classify":
        c = classify(args.poly, args.r, make_support(args.exclude), bound)
        return _render(c, fmt), EXIT_OK
    if args.command == "verify":
        seed = args.seed if args.seed is not None else int_setting(cfg, "seed")
        overrides: dict[str, Any] = {"seed": seed, "coeffs": args.coeffs}
        if args.primes_up_to:
            overrides["prime_bound"] = args.primes_up_to
        report = theorem_suite(args.suite, workers=workers, **overrides)
        code = EXIT_OK if report.passed else EXIT_SUITE_FAILED
        return _render(report, fmt), code
    if args.command == "explore":
        return _render(scan_Nu_LNu(args.poly, args.range, bound), fmt), EXIT_OK
    # suites
    if fmt == "json":
        return json.dumps({"suites": suite_names()}, indent=2), EXIT_OK
    return "\n".join(suite_names()), EXIT_OK


def _diagnose(code: str, message: str) -> None:
    sys.stderr.write(f"nilorbit: error[{code}]: {message}\n")


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_normalize_argv(argv))
        cfg = load_config(Path(args.config)) if args.config else load_config(DEFAULT_PATH)
        if args.debug or cfg.get("debug"):
            if not logging.getLogger().handlers:
                logging.basicConfig(level=logging.DEBUG)
            logging.getLogger().setLevel(logging.DEBUG)
        output, code = _dispatch(args, cfg)
    except ParseError as exc:
        _diagnose(exc.code, exc.message)
        return EXIT_USAGE
    except NilorbitError as exc:
        logger.debug("domain error", exc_info=True)
        _diagnose(exc.code, exc.message)
        return EXIT_DOMAIN
    if not output.endswith("\n"):
        output += "\n"
    if args.output:
        Path(args.output).write_text(output)
    else:
        sys.stdout.write(output)
    return code


def main() -> None:
    sys.exit(run())
