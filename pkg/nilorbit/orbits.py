"""Orbits over the integers and the exact nilpotency decision."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

from .constants import DEFAULT_MAX_STEPS, TRAJECTORY_CAP
from .errors import InvalidArgumentError, WrongDegreeError
from .numtheory import is_power_ratio
from .polynomial import Polynomial, eval, require_dynamical

logger = logging.getLogger(__name__)


class OutcomeKind(str, enum.Enum):
    HITS_ZERO = "hits-zero"
    ENTERS_CYCLE = "enters-cycle"
    ESCAPES = "escapes"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class OrbitOutcome:
    """Terminal status of the orbit of ``base_point`` under a polynomial.

    ``trajectory`` holds the iterates u(r), u(u(r)), ... up to the step that
    decided the outcome, truncated to ``TRAJECTORY_CAP`` values. ``preperiod``
    counts from the base point itself (x_0 = r).
    """

    kind: OutcomeKind
    base_point: int
    steps: int
    trajectory: tuple[int, ...] = ()
    index: int | None = None
    preperiod: int | None = None
    period: int | None = None
    cycle: tuple[int, ...] = field(default=())
    escape_bound: int | None = None
    max_steps: int | None = None


def escape_bound(u: Polynomial) -> int:
    """Return B such that ``|x| >= B`` implies ``|u(x)| >= 2|x|``."""
    if u.degree <= 1:
        raise WrongDegreeError("escape bound needs degree at least 2")
    tail = 2 + sum(abs(c) for c in u.coefficients[:-1])
    lead = abs(u.leading)
    return max(1, -(-tail // lead))


def orbit(
    u: Polynomial, r: int, max_steps: int | None = DEFAULT_MAX_STEPS
) -> OrbitOutcome:
    """Iterate ``u`` from ``r`` until a zero, a repeat, an escape or the step cap.

    The step cap only applies to linear maps; higher degree orbits always end
    by a zero, a cycle or an escape.
    """
    require_dynamical(u)
    if max_steps is not None and max_steps < 1:
        raise InvalidArgumentError("max_steps must be positive")
    bound = escape_bound(u) if u.degree >= 2 else None
    if bound is not None and abs(r) >= bound:
        return OrbitOutcome(OutcomeKind.ESCAPES, r, 0, escape_bound=bound)

    history = [r]
    positions = {r: 0}
    trajectory: list[int] = []
    x = r
    step = 0
    while True:
        step += 1
        x = eval(u, x)
        if len(trajectory) < TRAJECTORY_CAP:
            trajectory.append(x)
        if x == 0:
            return OrbitOutcome(
                OutcomeKind.HITS_ZERO, r, step, tuple(trajectory), index=step
            )
        if x in positions:
            mu = positions[x]
            return OrbitOutcome(
                OutcomeKind.ENTERS_CYCLE,
                r,
                step,
                tuple(trajectory),
                preperiod=mu,
                period=step - mu,
                cycle=tuple(history[mu:step]),
            )
        if bound is not None and abs(x) >= bound:
            return OrbitOutcome(
                OutcomeKind.ESCAPES, r, step, tuple(trajectory), escape_bound=bound
            )
        positions[x] = step
        history.append(x)
        if bound is None and max_steps is not None and step >= max_steps:
            return OrbitOutcome(
                OutcomeKind.EXHAUSTED, r, step, tuple(trajectory), max_steps=max_steps
            )


def _linear_index(a: int, b: int, r: int) -> int | None:
    if a == 1:
        if b == 0:
            return 1 if r == 0 else None
        if r % b == 0 and -r // b >= 1:
            return -r // b
        return None
    if a == -1:
        # u(u(x)) = x
        if b == r:
            return 1
        return 2 if r == 0 else None
    if b == 0:
        return 1 if r == 0 else None
    g = r * (a - 1) + b
    if g == 0:
        # r is a fixed point and r != 0 here
        return None
    k = is_power_ratio(a, b, g)
    return k if k is not None and k >= 1 else None


def nilpotency_index(u: Polynomial, r: int) -> int | None:
    """Least n >= 1 with u^(n)(r) = 0, or None when no iterate vanishes."""
    require_dynamical(u)
    if u.is_linear:
        return _linear_index(u.a, u.b, r)
    outcome = orbit(u, r, max_steps=None)
    return outcome.index if outcome.kind is OutcomeKind.HITS_ZERO else None


def nilpotent_set(u: Polynomial, lo: int, hi: int) -> list[int]:
    """Base points r in ``[lo, hi]`` at which ``u`` is nilpotent."""
    if lo > hi:
        raise InvalidArgumentError(f"empty window [{lo}, {hi}]")
    return [r for r in range(lo, hi + 1) if nilpotency_index(u, r) is not None]
