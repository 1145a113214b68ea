"""Exact membership decisions for N_r, L_{r,A} and S_r.

Every verdict names the result that produced it in ``provenance``. Witness
primes are certificates found by scanning; a non-membership verdict stays
exact even when no witness turns up below the bound.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, replace
from typing import Iterable

from .constants import DEFAULT_PRIME_BOUND
from .errors import InvalidArgumentError, OutOfRangeError
from .modp import ScanReport, m_p, weak_local_scan
from .numtheory import (
    PrimeSupport,
    factorize,
    is_prime,
    is_power_ratio,
    make_support,
    prime_support,
)
from .orbits import nilpotency_index
from .polynomial import Polynomial, conjugate, reduce_at, require_dynamical

logger = logging.getLogger(__name__)

L_R_READING = "L_r read as L_{r,∅}"


class Verdict(str, enum.Enum):
    NILPOTENT = "nilpotent"
    IN_SR = "in-S_r"
    WLN_OUTSIDE_A = "weakly-locally-nilpotent-outside-A"
    NOT_WLN = "not-weakly-locally-nilpotent"
    OUT_OF_SCOPE = "out-of-exact-scope"


MEMBER_VERDICTS = frozenset({Verdict.NILPOTENT, Verdict.IN_SR, Verdict.WLN_OUTSIDE_A})


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    provenance: str
    poly: Polynomial
    r: int
    excluded: PrimeSupport
    index: int | None = None
    witness: int | None = None
    scan: ScanReport | None = None
    reading: str | None = None

    @property
    def is_member(self) -> bool:
        return self.verdict in MEMBER_VERDICTS

    @property
    def certainty(self) -> str:
        return "inconclusive" if self.verdict is Verdict.OUT_OF_SCOPE else "proved"


def _search_witness(
    u: Polynomial,
    r: int,
    excluded: PrimeSupport,
    bound: int,
    hint: int | None = None,
) -> tuple[int | None, ScanReport]:
    """Smallest witness prime up to ``bound``, else ``hint`` if it checks out."""
    report = weak_local_scan(u, r, excluded, bound, mode="decision")
    if report.first_witness is not None:
        return report.first_witness, report
    if hint is not None and hint not in excluded and m_p(u, r, hint).m_p is None:
        return hint, report
    return None, report


def _smallest_prime_factor(n: int) -> int | None:
    if abs(n) < 2:
        return None
    return factorize(n)[0][0]


def _not_member(
    u: Polynomial,
    r: int,
    excluded: PrimeSupport,
    provenance: str,
    bound: int,
    hint: int | None = None,
) -> Classification:
    witness, report = _search_witness(u, r, excluded, bound, hint)
    if witness is None:
        logger.info("No witness up to %d for %s at r=%d", bound, u.to_text(), r)
    return Classification(
        Verdict.NOT_WLN, provenance, u, r, excluded, witness=witness, scan=report
    )


def _member(
    u: Polynomial, r: int, excluded: PrimeSupport, provenance: str
) -> Classification:
    if excluded:
        return Classification(Verdict.WLN_OUTSIDE_A, provenance, u, r, excluded)
    return Classification(
        Verdict.IN_SR, provenance, u, r, excluded, reading=L_R_READING
    )


def _relabel(
    c: Classification, poly: Polynomial, r: int, via: str, old: str = "", new: str = ""
) -> Classification:
    """Carry a verdict obtained on a transformed query back to the original one."""
    return replace(
        c,
        poly=poly,
        r=r,
        provenance=c.provenance.replace(old, new) + f" via {via}",
        scan=None,
    )


def classify_L1(u: Polynomial, bound: int = DEFAULT_PRIME_BOUND) -> Classification:
    """Decide membership of ``u`` in L_{1,∅}."""
    require_dynamical(u)
    excluded = make_support(())
    u1 = u(1)
    if u1 == 0:
        return Classification(Verdict.NILPOTENT, "Thm4.1(1)", u, 1, excluded, index=1)
    if u1 == 2:
        u2 = u(2)
        if u2 == 0:
            return Classification(
                Verdict.NILPOTENT, "Thm4.1(2)", u, 1, excluded, index=2
            )
        if u2 == 3 and u(3) == 0:
            return Classification(
                Verdict.NILPOTENT, "Thm4.1(3)", u, 1, excluded, index=3
            )
    if u.coefficients == (1, 1):
        return _member(u, 1, excluded, "Thm4.1(4)")
    # u(1) = 1 mod every prime dividing u(1) - 1, so the orbit never leaves 1 there
    hint = 2 if u1 == 1 else _smallest_prime_factor(u1 - 1)
    return _not_member(u, 1, excluded, "Thm4.1", bound, hint)


def classify_Lminus1(u: Polynomial, bound: int = DEFAULT_PRIME_BOUND) -> Classification:
    """Decide membership in L_{-1,∅} through v(x) = -u(-x) at 1."""
    c = classify_L1(conjugate(u), bound)
    return _relabel(c, u, -1, "Fact3.1", "Thm4.1", "Cor4.2")


def classify_L0(
    u: Polynomial,
    excluded: Iterable[int] | PrimeSupport = (),
    bound: int = DEFAULT_PRIME_BOUND,
) -> Classification:
    """Decide membership in L_{0,A}.

    With ``A`` empty this is the complete list for base point 0. For a
    nonempty ``A`` the linear case extends directly: ax + b with |a| >= 2 is
    weakly locally nilpotent at 0 outside A iff every prime dividing a but not
    b lies in A.
    """
    require_dynamical(u)
    excluded = make_support(excluded)
    u0 = u(0)
    if u0 == 0:
        return Classification(Verdict.NILPOTENT, "Thm4.4(3)", u, 0, excluded, index=1)
    if u(u0) == 0:
        return Classification(Verdict.NILPOTENT, "Thm4.4(4)", u, 0, excluded, index=2)
    if not u.is_linear:
        tag = "Fact1.1" if excluded else "Thm4.4"
        return _not_member(u, 0, excluded, tag, bound)
    a, b = u.a, u.b
    if a == 1:
        return _member(u, 0, excluded, "Thm4.4(1)")
    # a = -1 is nilpotent of index 2 and was caught above, so |a| >= 2 here
    tag = "Thm4.4(2)+A" if excluded else "Thm4.4(2)"
    outside = [p for p in prime_support(a, excluded) if b % p != 0]
    if not outside:
        return _member(u, 0, excluded, tag)
    # the orbit stays at b mod p for p | a, p ∤ b
    return Classification(Verdict.NOT_WLN, tag, u, 0, excluded, witness=outside[0])


def _nilpotent_tag_L1A(a: int, b: int) -> str:
    if b == -a:
        return "Thm5.1(2)"
    if (a, b) == (-2, 4):
        return "Thm5.1(5)"
    return "Def(3)"


def classify_L1A_linear(
    a: int,
    b: int,
    A: Iterable[int] | PrimeSupport = (),
    bound: int = DEFAULT_PRIME_BOUND,
) -> Classification:
    """Decide membership of ax + b in L^1_{1,A}."""
    if a == 0:
        raise InvalidArgumentError("a must be nonzero")
    u = Polynomial.linear(a, b)
    excluded = make_support(A)
    index = nilpotency_index(u, 1)
    if index is not None:
        return Classification(
            Verdict.NILPOTENT, _nilpotent_tag_L1A(a, b), u, 1, excluded, index=index
        )
    if a == 1 and b != 0 and prime_support(b).issubset(excluded):
        return _member(u, 1, excluded, "Thm5.1(1)")
    if b == 1 and abs(a) >= 2 and prime_support(a).issubset(excluded):
        return _member(u, 1, excluded, "Thm5.1(3)")
    if (a, b) == (-2, -1) and 2 in excluded:
        return _member(u, 1, excluded, "Thm5.1(4)")
    hint = None
    if a == 1 and b != 0:
        # 1 + nb = 1 mod p for p | b
        outside = list(prime_support(b, excluded))
        hint = outside[0] if outside else None
    return _not_member(u, 1, excluded, "Thm5.1", bound, hint)


def _first_prime_not_dividing(n: int) -> int:
    p = 2
    while n % p == 0 or not is_prime(p):
        p += 1
    return p


def _missed_primes(a: int, b: int, r: int) -> list[int]:
    """Primes where the orbit of r under ax + b misses 0, given b = g a^k, k <= 0.

    Off a(a - 1) the congruence a^n = a^(-k) mod p has a solution n >= 1, so
    only primes of a (where u = b) and of a - 1 (where u = x + b) can fail.
    """
    missed = [p for p in prime_support(a) if b % p != 0]
    missed += [p for p in prime_support(a - 1) if b % p == 0 and r % p != 0]
    return sorted(missed)


def _sr_power_case(u: Polynomial, r: int, bound: int) -> Classification:
    a, b = u.a, u.b
    excluded = make_support(())
    g = r * (a - 1) + b
    if b == 0:
        # the orbit is r a^n
        hint = _first_prime_not_dividing(a * r)
        return _not_member(u, r, excluded, "Thm5.3", bound, hint)
    if g == 0:
        # r is a fixed point
        return _not_member(u, r, excluded, "Thm5.3", bound, _first_prime_not_dividing(r))
    # (a - 1) u^(n)(r) = g a^n - b
    if is_power_ratio(a, b, g) is None:
        return _not_member(u, r, excluded, "Lemma3.2", bound)
    missed = _missed_primes(a, b, r)
    if missed:
        return _not_member(u, r, excluded, "Thm5.3", bound, missed[0])
    if b == r:
        tag = "Thm5.3(3)"
    elif (a, b) == (-2, -r):
        tag = "Thm5.3(4)"
    else:
        tag = "Thm5.3(ext)"
    return _member(u, r, excluded, tag)


def _sr_positive(a: int, b: int, r: int, bound: int) -> Classification:
    u = Polynomial.linear(a, b)
    excluded = make_support(())
    index = nilpotency_index(u, r)
    if index is not None:
        return Classification(Verdict.NILPOTENT, "Def(3)", u, r, excluded, index=index)
    if abs(a) >= 2:
        return _sr_power_case(u, r, bound)
    support_r = prime_support(r)
    if a == 1 and b != 0 and prime_support(b).issubset(support_r):
        if b > 0:
            return _member(u, r, excluded, "Thm5.3(1)")
        exponents_r = dict(factorize(r))
        if any(s > exponents_r.get(q, 0) for q, s in factorize(-b)):
            return _member(u, r, excluded, "Thm5.3(2)")
    hint = None
    if a == 1 and b != 0:
        # r + nb = r mod p for p | b with p ∤ r
        outside = [p for p in prime_support(b) if r % p != 0]
        hint = outside[0] if outside else None
    return _not_member(u, r, excluded, "Thm5.3", bound, hint)


def classify_Sr_linear(
    a: int, b: int, r: int, bound: int = DEFAULT_PRIME_BOUND
) -> Classification:
    """Decide membership of ax + b in S_r for |r| >= 2."""
    if a == 0:
        raise InvalidArgumentError("a must be nonzero")
    if abs(r) <= 1:
        raise OutOfRangeError(
            f"r={r}: use classify_L0, classify_L1 or classify_Lminus1 for |r| <= 1"
        )
    if r > 0:
        return _sr_positive(a, b, r, bound)
    c = _sr_positive(a, -b, -r, bound)
    return _relabel(c, Polynomial.linear(a, b), r, "Fact3.1", "Thm5.3", "Cor5.4")


def remark_filter(a: int, b: int, r: int) -> bool:
    """Necessary condition for ax + b in S_r with |a| >= 2: a^m b = b + ar - r, m >= 0."""
    if b == 0:
        return False
    target = b + a * r - r
    if target == 0:
        return False
    k = is_power_ratio(a, target, b)
    return k is not None and k >= 0


def classify_by_reduction(
    a: int,
    b: int,
    r: int,
    A: Iterable[int] | PrimeSupport = (),
    bound: int = DEFAULT_PRIME_BOUND,
) -> Classification:
    """Classify ax + b at r through v(x) = u(rx)/r at 1, outside A ∪ P(r).

    Negative r is conjugated first. Requires r | b.
    """
    if a == 0:
        raise InvalidArgumentError("a must be nonzero")
    if r == 0:
        raise OutOfRangeError("reduction needs r != 0")
    excluded = make_support(A)
    original, original_r = Polynomial.linear(a, b), r
    via = "reduction"
    if r < 0:
        b, r = -b, -r
        via = "Fact3.1 and reduction"
    v = reduce_at(Polynomial.linear(a, b), r)
    c = classify_L1A_linear(v.a, v.b, excluded.union(prime_support(r)), bound)
    verdict = c.verdict
    reading = None
    if verdict is Verdict.WLN_OUTSIDE_A or verdict is Verdict.IN_SR:
        if excluded:
            verdict = Verdict.WLN_OUTSIDE_A
        else:
            verdict, reading = Verdict.IN_SR, L_R_READING
    return Classification(
        verdict,
        f"{c.provenance} via {via}",
        original,
        original_r,
        excluded,
        index=c.index,
        witness=c.witness,
        reading=reading,
    )


def classify(
    u: Polynomial,
    r: int,
    A: Iterable[int] | PrimeSupport = (),
    bound: int = DEFAULT_PRIME_BOUND,
) -> Classification:
    """Dispatch a query (u, r, A) to the procedure that decides it exactly."""
    require_dynamical(u)
    excluded = make_support(A)
    logger.debug("classify(%s, r=%d, A=%s)", u.to_text(), r, list(excluded))
    if u.degree >= 2:
        if not excluded and r in (0, 1, -1):
            return {0: classify_L0, 1: classify_L1, -1: classify_Lminus1}[r](
                u, bound=bound
            )
        index = nilpotency_index(u, r)
        if index is not None:
            return Classification(Verdict.NILPOTENT, "Def(3)", u, r, excluded, index=index)
        return _not_member(u, r, excluded, "Fact1.1", bound)

    a, b = u.a, u.b
    if not excluded:
        if r == 0:
            return classify_L0(u, bound=bound)
        if r == 1:
            return classify_L1(u, bound)
        if r == -1:
            return classify_Lminus1(u, bound)
        return classify_Sr_linear(a, b, r, bound)
    if r == 0:
        return classify_L0(u, excluded, bound)
    if r == 1:
        return classify_L1A_linear(a, b, excluded, bound)
    if r == -1:
        c = classify_L1A_linear(a, -b, excluded, bound)
        return _relabel(c, u, -1, "Fact3.1")
    if b % r == 0:
        return classify_by_reduction(a, b, r, excluded, bound)
    index = nilpotency_index(u, r)
    if index is not None:
        return Classification(Verdict.NILPOTENT, "Def(3)", u, r, excluded, index=index)
    report = weak_local_scan(u, r, excluded, bound, mode="decision")
    return Classification(
        Verdict.OUT_OF_SCOPE,
        "none",
        u,
        r,
        excluded,
        witness=report.first_witness,
        scan=report,
    )
