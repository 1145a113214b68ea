"""Primes, factorisation, prime supports and the power-ratio solver."""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from sympy import factorint, isprime

from .constants import SIEVE_CACHE_FLOOR, SIEVE_SEGMENT, TRIAL_DIVISION_LIMIT
from .errors import EmptyRangeError, InvalidArgumentError, UndefinedSupportError

logger = logging.getLogger(__name__)


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p : limit + 1 : p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _segmented_sieve(limit: int, segment: int = SIEVE_SEGMENT) -> np.ndarray:
    """Sieve ``[2, limit]`` one segment at a time using base primes up to sqrt(limit)."""
    base = _simple_sieve(math.isqrt(limit) + 1)
    chunks = [base[base <= limit]]
    low = int(base[-1]) + 1 if base.size else 2
    while low <= limit:
        high = min(low + segment, limit + 1)
        mask = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low :: p] = False
        chunks.append(np.flatnonzero(mask).astype(np.int64) + low)
        low = high
    return np.concatenate(chunks)


class _SieveCache:
    """Process-wide cache of the primes below the largest bound requested so far."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._limit = 1
        self._primes = np.array([], dtype=np.int64)

    def primes(self, bound: int) -> np.ndarray:
        with self._lock:
            if bound > self._limit:
                limit = max(bound, SIEVE_CACHE_FLOOR)
                logger.debug("Extending sieve cache to %d", limit)
                if limit > SIEVE_SEGMENT:
                    self._primes = _segmented_sieve(limit)
                else:
                    self._primes = _simple_sieve(limit)
                self._limit = limit
            stop = int(np.searchsorted(self._primes, bound, side="right"))
            return self._primes[:stop]


_CACHE = _SieveCache()


def prime_array(bound: int) -> np.ndarray:
    """Primes in ``[2, bound]`` as an int64 array (shared, do not mutate)."""
    if bound < 2:
        raise EmptyRangeError(f"no primes below {bound}")
    return _CACHE.primes(bound)


def primes_up_to(bound: int) -> list[int]:
    """Return the primes in ``[2, bound]`` in ascending order."""
    return prime_array(bound).tolist()


def is_prime(n: int) -> bool:
    return bool(isprime(int(n)))


@dataclass(frozen=True)
class PrimeSupport:
    """A finite, sorted set of positive primes.

    ``excluded`` records the set A a support was taken relative to, so that
    ``primes`` is P_A(a). It is empty for a plain P(a) or an exclusion set.
    """

    primes: tuple[int, ...] = ()
    excluded: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        primes = tuple(sorted(set(int(p) for p in self.primes)))
        excluded = tuple(sorted(set(int(p) for p in self.excluded)))
        for p in primes + excluded:
            if not is_prime(p):
                raise InvalidArgumentError(f"{p} is not a prime")
        if set(primes) & set(excluded):
            raise InvalidArgumentError("support and excluded primes overlap")
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "excluded", excluded)

    def __contains__(self, p: object) -> bool:
        return p in self.primes

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __bool__(self) -> bool:
        return bool(self.primes)

    def issubset(self, other: "PrimeSupport | Iterable[int]") -> bool:
        return set(self.primes) <= set(other)

    def union(self, other: "PrimeSupport | Iterable[int]") -> "PrimeSupport":
        return PrimeSupport(self.primes + tuple(other))


EMPTY = PrimeSupport()


def make_support(primes: Iterable[int] | PrimeSupport | None) -> PrimeSupport:
    """Build a validated PrimeSupport from any iterable of primes."""
    if primes is None:
        return EMPTY
    if isinstance(primes, PrimeSupport):
        return primes
    return PrimeSupport(tuple(primes))


def prime_support(a: int, excluded: Iterable[int] | PrimeSupport = ()) -> PrimeSupport:
    """Return P_A(a), the primes dividing ``a`` that are not in ``excluded``."""
    if a == 0:
        raise UndefinedSupportError("prime support of 0 is undefined")
    skip = set(make_support(excluded))
    found = tuple(p for p, _ in factorize(a) if p not in skip)
    return PrimeSupport(found, tuple(sorted(skip)))


def support_subset(a: int, b: int) -> bool:
    """Return True iff every prime dividing ``a`` also divides ``b``."""
    if a == 0 or b == 0:
        raise UndefinedSupportError("prime support of 0 is undefined")
    a, b = abs(a), abs(b)
    # strip from a every prime it shares with b; what is left has primes outside P(b)
    g = math.gcd(a, b)
    while g > 1:
        a //= g
        g = math.gcd(a, g)
    return a == 1


def _exact_log(base: int, value: int) -> int | None:
    """Return k >= 0 with base**k == value, or None."""
    k = 0
    while value % base == 0 and value != 1 and value != -1:
        value //= base
        k += 1
    if value == 1:
        return k
    return None


def is_power_ratio(alpha: int, beta: int, gamma: int) -> int | None:
    """Solve ``gamma * alpha**k == beta`` for an integer k.

    Parameters
    ----------
    alpha, beta, gamma:
        Nonzero integers.

    Returns
    -------
    int | None
        The exponent k (negative when ``gamma == beta * alpha**-k``), or
        ``None`` when no exponent exists. For ``|alpha| == 1`` the smallest
        non-negative solution is returned.
    """
    if alpha == 0 or beta == 0 or gamma == 0:
        raise InvalidArgumentError("is_power_ratio needs nonzero arguments")
    if alpha == 1:
        return 0 if beta == gamma else None
    if alpha == -1:
        if beta == gamma:
            return 0
        return 1 if beta == -gamma else None
    if beta % gamma == 0:
        return _exact_log(alpha, beta // gamma)
    if gamma % beta == 0:
        k = _exact_log(alpha, gamma // beta)
        return -k if k is not None else None
    return None


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Return the prime factorisation of ``|n|`` as sorted ``(prime, exponent)`` pairs."""
    if n == 0:
        raise InvalidArgumentError("cannot factorize 0")
    n = abs(int(n))
    out: dict[int, int] = {}
    limit = min(TRIAL_DIVISION_LIMIT, math.isqrt(n) + 1)
    if limit >= 2:
        for p in prime_array(limit).tolist():
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out[p] = e
    if n > 1:
        if n < TRIAL_DIVISION_LIMIT**2:
            out[n] = out.get(n, 0) + 1
        else:
            logger.debug("Splitting large cofactor %d", n)
            for p, e in factorint(n).items():
                out[int(p)] = out.get(int(p), 0) + int(e)
    return tuple(sorted(out.items()))


def unreached_primes(alpha: int, beta: int, gamma: int, primes: Iterable[int]) -> list[int]:
    """Primes p dividing no ``gamma * alpha**n - beta`` with n >= 1.

    The residues ``gamma * alpha**n mod p`` are eventually periodic within p
    steps, so each prime is decided exactly.
    """
    found = []
    for p in primes:
        target = beta % p
        x = gamma * alpha % p
        seen = set()
        while x not in seen:
            if x == target:
                break
            seen.add(x)
            x = x * alpha % p
        else:
            found.append(p)
    return found
