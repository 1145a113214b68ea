"""Orbits modulo primes: m_p, cycle structure, and prime-range scans."""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .constants import (
    CYCLE_CAP,
    DEFAULT_PRIME_BOUND,
    INT64_SAFE_MODULUS,
    SCAN_BLOCK_GROWTH,
    SEQUENTIAL_SCAN_LIMIT,
)
from .errors import InvalidArgumentError, InvalidModulusError
from .numtheory import PrimeSupport, is_prime, make_support, primes_up_to
from .polynomial import Polynomial, require_dynamical

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModPResult:
    """Orbit of r under u modulo p.

    ``m_p`` is the first step at which the orbit reaches 0, or ``None``.
    ``preperiod`` and ``period`` describe the orbit's eventual cycle; they are
    ``None`` on records produced by batched decision scans, which only track
    the first zero. Such records report ``partial``.
    """

    p: int
    m_p: int | None
    preperiod: int | None = None
    period: int | None = None
    cycle: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.m_p is not None and not 1 <= self.m_p <= self.p:
            raise InvalidArgumentError(f"m_p={self.m_p} out of range for p={self.p}")
        if self.preperiod is not None and self.period is not None:
            if self.period < 1 or self.preperiod + self.period > self.p:
                raise InvalidArgumentError(
                    f"orbit shape ({self.preperiod}, {self.period}) impossible mod {self.p}"
                )

    @property
    def partial(self) -> bool:
        return self.preperiod is None or self.period is None


def _step_fn(u: Polynomial, p: int) -> Callable[[int], int]:
    coeffs = [c % p for c in reversed(u.coefficients)]

    def step(x: int) -> int:
        acc = 0
        for c in coeffs:
            acc = (acc * x + c) % p
        return acc

    return step


def _brent(f: Callable[[int], int], x0: int) -> tuple[int, int]:
    """Return (preperiod, period) of the sequence x0, f(x0), ..."""
    power = lam = 1
    tortoise, hare = x0, f(x0)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
    tortoise = hare = x0
    for _ in range(lam):
        hare = f(hare)
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        mu += 1
    return mu, lam


def m_p(u: Polynomial, r: int, p: int) -> ModPResult:
    """Least m >= 1 with u^(m)(r) = 0 mod p, with the orbit's cycle shape."""
    require_dynamical(u)
    if p < 2 or not is_prime(p):
        raise InvalidModulusError(f"{p} is not a prime modulus")
    f = _step_fn(u, p)
    x0 = r % p
    mu, lam = _brent(f, x0)
    # x_1 .. x_{mu+lam} visit every residue the orbit reaches after step 0
    first = None
    x = x0
    cycle: list[int] = []
    for step in range(1, mu + lam + 1):
        x = f(x)
        if first is None and x == 0:
            first = step
        if step > mu and len(cycle) < CYCLE_CAP:
            cycle.append(x)
    # rotate so the cycle starts at x_mu
    if cycle and len(cycle) == lam:
        cycle = cycle[-1:] + cycle[:-1]
    return ModPResult(p, first, mu, lam, tuple(cycle))


def residue_trajectory(u: Polynomial, r: int, p: int) -> list[int]:
    """Residues x_1, ..., x_{preperiod+period} of the orbit of r mod p."""
    res = m_p(u, r, p)
    f = _step_fn(u, p)
    x = r % p
    out = []
    for _ in range(res.preperiod + res.period):
        x = f(x)
        out.append(x)
    return out


def first_zero_batch(u: Polynomial, r: int, primes: Sequence[int]) -> list[int | None]:
    """m_p for many primes at once, iterating every residue class in lockstep.

    Only the first zero is tracked. A prime leaves the batch when its orbit
    hits 0 or after p steps.
    """
    require_dynamical(u)
    if len(primes) == 0:
        return []
    dtype = np.int64 if max(primes) < INT64_SAFE_MODULUS else object
    mods = np.array(list(primes), dtype=dtype)
    coeffs = np.array(
        [[c % int(p) for p in primes] for c in reversed(u.coefficients)], dtype=dtype
    )
    x = np.array([r % int(p) for p in primes], dtype=dtype)
    slots = np.arange(len(primes))
    out: list[int | None] = [None] * len(primes)
    step = 0
    while slots.size:
        step += 1
        acc = np.zeros_like(x)
        for row in coeffs:
            acc = (acc * x % mods + row) % mods
        x = acc
        hit = x == 0
        for i in slots[hit].tolist():
            out[i] = step
        keep = ~hit & (mods > step)
        if not keep.all():
            slots, mods, x, coeffs = slots[keep], mods[keep], x[keep], coeffs[:, keep]
    return out


class ScanStatus(str, enum.Enum):
    ALL_FOUND = "all-found-up-to-bound"
    WITNESS_FOUND = "witness-found"


@dataclass(frozen=True)
class ScanReport:
    poly: Polynomial
    r: int
    excluded: PrimeSupport
    bound: int
    mode: str
    results: tuple[ModPResult, ...]
    witnesses: tuple[int, ...]
    status: ScanStatus

    @property
    def first_witness(self) -> int | None:
        return self.witnesses[0] if self.witnesses else None

    @property
    def certainty(self) -> str:
        """A witness proves non-membership; its absence is only evidence."""
        return "proved" if self.witnesses else "inconclusive"

    @property
    def prime_count(self) -> int:
        return len(self.results)


def _table_chunk(u: Polynomial, r: int, primes: list[int]) -> list[ModPResult]:
    return [m_p(u, r, p) for p in primes]


def _table_results(
    u: Polynomial, r: int, primes: list[int], workers: int
) -> list[ModPResult]:
    if workers <= 1 or len(primes) < 2 * workers:
        return _table_chunk(u, r, primes)
    size = -(-len(primes) // (workers * 4))
    chunks = [primes[i : i + size] for i in range(0, len(primes), size)]
    gathered: dict[int, list[ModPResult]] = {}
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {
            executor.submit(_table_chunk, u, r, chunk): i
            for i, chunk in enumerate(chunks)
        }
        for future in as_completed(futures):
            gathered[futures[future]] = future.result()
    return [res for i in sorted(gathered) for res in gathered[i]]


def _decision_results(u: Polynomial, r: int, primes: list[int]) -> list[ModPResult]:
    results: list[ModPResult] = []
    pos = 0
    while pos < len(primes) and primes[pos] <= SEQUENTIAL_SCAN_LIMIT:
        res = m_p(u, r, primes[pos])
        results.append(res)
        if res.m_p is None:
            return results
        pos += 1
    block = SEQUENTIAL_SCAN_LIMIT
    while pos < len(primes):
        chunk = primes[pos : pos + block]
        for p, m in zip(chunk, first_zero_batch(u, r, chunk)):
            if m is None:
                results.append(m_p(u, r, p))
                return results
            results.append(ModPResult(p, m))
        pos += len(chunk)
        block *= SCAN_BLOCK_GROWTH
    return results


def weak_local_scan(
    u: Polynomial,
    r: int,
    A: Iterable[int] | PrimeSupport = (),
    P: int = DEFAULT_PRIME_BOUND,
    mode: str = "decision",
    workers: int = 1,
) -> ScanReport:
    """Compute m_p for every prime p <= P outside ``A``.

    ``mode="decision"`` stops at the first prime without an m_p;
    ``mode="table"`` records every prime.
    """
    require_dynamical(u)
    if mode not in ("decision", "table"):
        raise InvalidArgumentError(f"unknown scan mode {mode!r}")
    excluded = make_support(A)
    primes = [p for p in primes_up_to(P) if p not in excluded]
    logger.debug(
        "weak_local_scan(%s, r=%d, A=%s, P=%d, mode=%s)",
        u.to_text(),
        r,
        list(excluded),
        P,
        mode,
    )
    if mode == "table":
        results = _table_results(u, r, primes, workers)
    else:
        results = _decision_results(u, r, primes)
    witnesses = tuple(res.p for res in results if res.m_p is None)
    status = ScanStatus.WITNESS_FOUND if witnesses else ScanStatus.ALL_FOUND
    logger.debug("scan finished: %d primes, witnesses=%s", len(results), witnesses[:5])
    return ScanReport(
        u, r, excluded, P, mode, tuple(results), witnesses, status
    )
