"""Integer polynomials, evaluation, and the conjugation/reduction transforms."""

from __future__ import annotations

import logging
import operator
from dataclasses import dataclass

from .errors import (
    DivisibilityError,
    InvalidArgumentError,
    InvalidModulusError,
    NotDynamicalError,
    ParseError,
)
from .numtheory import is_prime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial stored constant-term first.

    ``Polynomial((-3, 7, -2))`` is -2x^2 + 7x - 3. Trailing zero coefficients
    are dropped, so the last stored coefficient is the leading one.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        try:
            coeffs = [operator.index(c) for c in self.coefficients]
        except TypeError as exc:
            raise InvalidArgumentError("coefficients must be integers") from exc
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def linear(cls, a: int, b: int) -> "Polynomial":
        return cls((b, a))

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        """Parse the constant-first text form ``"c0,c1,...,cd"``."""
        parts = [p.strip() for p in str(text).split(",")]
        if not parts or any(not p for p in parts):
            raise ParseError(f"invalid polynomial text: {text!r}")
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ParseError(f"invalid polynomial text: {text!r}") from exc

    from_text = parse

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    @property
    def is_linear(self) -> bool:
        return self.degree == 1

    @property
    def a(self) -> int:
        """Slope of a linear polynomial ax + b."""
        return self.coefficients[1] if self.degree >= 1 else 0

    @property
    def b(self) -> int:
        return self.coefficients[0]

    def __call__(self, x: int) -> int:
        return eval(self, x)

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coefficients)

    def __str__(self) -> str:
        return self.pretty()

    def pretty(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                coef = "" if mag == 1 else str(mag)
                body = coef + ("x" if i == 1 else f"x^{i}")
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def eval(u: Polynomial, x: int) -> int:  # noqa: A001 - mirrors u(x)
    """Exact Horner evaluation of ``u`` at ``x``."""
    acc = 0
    for c in reversed(u.coefficients):
        acc = acc * x + c
    return acc


def eval_mod(u: Polynomial, x: int, p: int) -> int:
    """Evaluate ``u`` at ``x`` modulo the prime ``p``."""
    if p < 2 or not is_prime(p):
        raise InvalidModulusError(f"{p} is not a prime modulus")
    acc = 0
    x %= p
    for c in reversed(u.coefficients):
        acc = (acc * x + c) % p
    return acc


def require_dynamical(u: Polynomial) -> None:
    if u.degree < 1:
        raise NotDynamicalError(f"{u.to_text()} is constant; degree must be at least 1")


def iterate(u: Polynomial, x: int, n: int) -> int:
    """Return u^(n)(x) by n successive evaluations."""
    if n < 0:
        raise InvalidArgumentError("iteration count must be non-negative")
    for _ in range(n):
        x = eval(u, x)
    return x


def conjugate(u: Polynomial) -> Polynomial:
    """Return v(x) = -u(-x)."""
    require_dynamical(u)
    return Polynomial(
        tuple(c if i % 2 else -c for i, c in enumerate(u.coefficients))
    )


def reduce_at(u: Polynomial, r: int) -> Polynomial:
    """Return v(x) = u(rx) / r, defined when r >= 1 divides u(0)."""
    require_dynamical(u)
    if r <= 0:
        raise InvalidArgumentError(f"reduction needs r >= 1, got {r}")
    c0 = u.coefficients[0]
    if c0 % r:
        raise DivisibilityError(f"{r} does not divide u(0) = {c0}")
    coeffs = [c0 // r]
    coeffs.extend(c * r ** (i - 1) for i, c in enumerate(u.coefficients) if i >= 1)
    return Polynomial(tuple(coeffs))


def linear_closed_form(a: int, b: int, r: int, n: int) -> int:
    """n-th iterate of ax + b at r: a^n r + b (a^(n-1) + ... + a + 1)."""
    if a == 0:
        raise NotDynamicalError("a = 0 gives a constant map")
    if n < 1:
        raise InvalidArgumentError("n must be at least 1")
    if a == 1:
        geometric = n
    else:
        geometric = (a**n - 1) // (a - 1)
    return a**n * r + b * geometric
