"""MCP tools wrapping the orbit, scan and classification operations."""

from __future__ import annotations

import logging
import os
from typing import Any, Callable, Iterable

from . import verify
from .classify import classify as _classify
from .config import int_setting
from .constants import SCHEMA
from .errors import NilorbitError
from .modp import m_p, residue_trajectory, weak_local_scan
from .numtheory import make_support
from .orbits import orbit as _orbit
from .polynomial import Polynomial
from .reports import to_dict

logger = logging.getLogger(__name__)
if os.getenv("NILORBIT_DEBUG") and not logging.getLogger().handlers:
    logging.basicConfig(level=logging.DEBUG)  # pragma: no cover - config

_CFG: dict[str, Any] = {}


def configure(cfg: dict[str, Any]) -> None:
    """Store configuration values used as tool defaults."""
    _CFG.clear()
    _CFG.update(cfg)


def _bound(value: int | None) -> int:
    return value if value is not None else int_setting(_CFG, "prime_bound")


def _exclude(text: str | None) -> tuple[int, ...]:
    if not text or not text.strip():
        return ()
    return tuple(int(part) for part in text.split(","))


def _payload(obj: Any, **extra: Any) -> dict:
    data = {"schema": SCHEMA, **to_dict(obj)}
    data.update(extra)
    return data


def _guard(name: str, call: Callable[[], dict]) -> dict:
    try:
        return call()
    except NilorbitError as exc:
        logger.info("%s rejected: %s", name, exc)
        return exc.to_dict()
    except ValueError as exc:
        logger.exception("%s failed", name)
        return {"error": str(exc), "code": "invalid-argument"}


def orbit(poly: str, r: int, max_steps: int | None = None, mod: int | None = None) -> dict:
    """Iterate a polynomial from a base point.

    Parameters
    ----------
    poly:
        Coefficients constant-first, e.g. ``"-3,7,-2"`` for -2x^2 + 7x - 3.
    r:
        Base point.
    max_steps:
        Step cap for maps that neither hit zero nor cycle (linear maps).
    mod:
        When given, iterate modulo this prime instead of over the integers.

    Returns
    -------
    dict
        The orbit outcome, or ``error``/``code`` on invalid input.
    """
    logger.debug("orbit(%s, %s, max_steps=%s, mod=%s)", poly, r, max_steps, mod)

    def call() -> dict:
        u = Polynomial.parse(poly)
        if mod is not None:
            return _payload(m_p(u, r, mod), trajectory=residue_trajectory(u, r, mod))
        steps = max_steps if max_steps is not None else int_setting(_CFG, "max_steps")
        return _payload(_orbit(u, r, steps))

    return _guard("orbit", call)


def mod_p(poly: str, r: int, p: int) -> dict:
    """Return m_p, the first step at which the orbit of r vanishes mod p."""
    logger.debug("mod_p(%s, %s, %s)", poly, r, p)
    return _guard("mod_p", lambda: _payload(m_p(Polynomial.parse(poly), r, p)))


def scan(
    poly: str,
    r: int,
    exclude: str | None = None,
    primes_up_to: int | None = None,
    decide: bool = True,
) -> dict:
    """Compute m_p for every prime up to a bound, skipping ``exclude``.

    With ``decide`` the scan stops at the first witness prime.
    """
    logger.debug("scan(%s, %s, exclude=%s, P=%s)", poly, r, exclude, primes_up_to)

    def call() -> dict:
        report = weak_local_scan(
            Polynomial.parse(poly),
            r,
            make_support(_exclude(exclude)),
            _bound(primes_up_to),
            "decision" if decide else "table",
            int_setting(_CFG, "workers"),
        )
        return _payload(report)

    return _guard("scan", call)


def classify(
    poly: str, r: int, exclude: str | None = None, primes_up_to: int | None = None
) -> dict:
    """Classify a polynomial at r: nilpotent, locally nilpotent, or not.

    Each verdict names the theorem case it comes from. Non-members carry a
    witness prime p at which the orbit never reaches 0 mod p.
    """
    logger.debug("classify(%s, %s, exclude=%s)", poly, r, exclude)

    def call() -> dict:
        c = _classify(
            Polynomial.parse(poly), r, make_support(_exclude(exclude)), _bound(primes_up_to)
        )
        return _payload(c)

    return _guard("classify", call)


def explore(poly: str, window: int, primes_up_to: int | None = None) -> dict:
    """List base points in [-window, window] where the polynomial is (locally) nilpotent."""
    logger.debug("explore(%s, %s)", poly, window)
    return _guard(
        "explore",
        lambda: _payload(
            verify.scan_Nu_LNu(Polynomial.parse(poly), window, _bound(primes_up_to))
        ),
    )


def verify_suite(
    name: str,
    primes_up_to: int | None = None,
    coeff_min: int | None = None,
    coeff_max: int | None = None,
) -> dict:
    """Run a theorem suite, optionally on a smaller coefficient box."""
    logger.debug("verify_suite(%s)", name)

    def call() -> dict:
        coeffs = None
        if coeff_min is not None and coeff_max is not None:
            coeffs = (coeff_min, coeff_max)
        report = verify.theorem_suite(
            name,
            workers=int_setting(_CFG, "workers"),
            prime_bound=primes_up_to,
            coeffs=coeffs,
            seed=int_setting(_CFG, "seed"),
        )
        return _payload(report)

    return _guard("verify_suite", call)


def list_suites() -> dict:
    """Return the recognised suite ids."""
    return {"schema": SCHEMA, "suites": verify.suite_names()}


TOOLS = [
    ("orbit", orbit),
    ("mod_p", mod_p),
    ("scan", scan),
    ("classify", classify),
    ("explore", explore),
    ("verify_suite", verify_suite),
    ("list_suites", list_suites),
]


def register(mcp: Any, enabled: Iterable[str] | None = None) -> None:
    """Register the enabled tools (all of them by default) on a FastMCP server."""
    enabled_set = set(enabled or [])
    if not enabled_set:
        enabled_set = {name for name, _ in TOOLS}
    for name, func in TOOLS:
        if name in enabled_set:
            mcp.tool()(func)
            logger.debug("Registered tool %s", name)
