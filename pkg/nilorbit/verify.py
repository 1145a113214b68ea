"""Enumeration and cross-validation harness for the classification results.

Each suite enumerates a finite box of polynomials, classifies every member,
checks the verdict against an independent mod-p scan, and compares the
member set with a direct enumeration of the theorem's forms.
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Iterable, Iterator

from .classify import (
    Classification,
    Verdict,
    classify,
    classify_by_reduction,
    remark_filter,
)
from .constants import DEFAULT_PRIME_BOUND, SUITES
from .errors import InvalidArgumentError, UnknownSuiteError
from .modp import m_p, weak_local_scan
from .numtheory import (
    PrimeSupport,
    factorize,
    is_power_ratio,
    make_support,
    primes_up_to,
    unreached_primes,
)
from .orbits import nilpotent_set
from .polynomial import Polynomial, conjugate, iterate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoefficientBox:
    degree_min: int
    degree_max: int
    coeff_min: int
    coeff_max: int
    r: int = 0
    excluded: PrimeSupport = field(default_factory=PrimeSupport)
    prime_bound: int = DEFAULT_PRIME_BOUND

    def __post_init__(self) -> None:
        if self.degree_min < 1 or self.degree_min > self.degree_max:
            raise InvalidArgumentError(
                f"bad degree range [{self.degree_min}, {self.degree_max}]"
            )
        if self.coeff_min > self.coeff_max:
            raise InvalidArgumentError(
                f"bad coefficient range [{self.coeff_min}, {self.coeff_max}]"
            )
        if self.coeff_min == self.coeff_max == 0:
            raise InvalidArgumentError("coefficient range admits no leading term")
        object.__setattr__(self, "excluded", make_support(self.excluded))


def enumerate_polynomials(box: CoefficientBox) -> Iterator[Polynomial]:
    """Every polynomial in the box, degree-major, lexicographic on c_0..c_d."""
    values = range(box.coeff_min, box.coeff_max + 1)
    leads = [v for v in values if v != 0]
    for d in range(box.degree_min, box.degree_max + 1):
        for coeffs in itertools.product(*([values] * d), leads):
            yield Polynomial(coeffs)


@dataclass(frozen=True)
class Contradiction:
    poly: Polynomial
    r: int
    excluded: tuple[int, ...]
    verdict: Verdict
    evidence: str


@dataclass(frozen=True)
class MemberRecord:
    poly: Polynomial
    r: int
    excluded: tuple[int, ...]
    verdict: Verdict
    index: int | None
    provenance: str


@dataclass
class ValidationReport:
    """Outcome of a suite or a single box.

    ``failures`` holds theorem-specific assertion failures; the report passes
    when it has neither contradictions nor failures.
    """

    suite: str
    boxes: tuple[CoefficientBox, ...] = ()
    counts: dict[str, int] = field(default_factory=dict)
    contradictions: list[Contradiction] = field(default_factory=list)
    inconclusives: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    members: list[MemberRecord] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.contradictions and not self.failures

    def merge(self, other: "ValidationReport") -> None:
        self.boxes += other.boxes
        for key, value in other.counts.items():
            self.counts[key] = self.counts.get(key, 0) + value
        self.contradictions.extend(other.contradictions)
        self.inconclusives.extend(other.inconclusives)
        self.failures.extend(other.failures)
        self.members.extend(other.members)


@dataclass(frozen=True)
class _Row:
    classification: Classification
    contradiction: Contradiction | None
    inconclusive: bool


def _check_one(u: Polynomial, r: int, excluded: PrimeSupport, bound: int) -> _Row:
    c = classify(u, r, excluded, bound)
    scan = c.scan
    if scan is None or (scan.mode, scan.bound, scan.r, scan.excluded) != (
        "decision",
        bound,
        r,
        excluded,
    ):
        scan = weak_local_scan(u, r, excluded, bound, mode="decision")
    contradiction = None
    inconclusive = False
    a_tuple = tuple(excluded)
    if c.is_member and scan.first_witness is not None:
        contradiction = Contradiction(
            u, r, a_tuple, c.verdict, f"m_p absent at p={scan.first_witness}"
        )
    elif c.verdict is Verdict.NOT_WLN:
        if c.witness is None:
            inconclusive = True
        elif m_p(u, r, c.witness).m_p is not None:
            contradiction = Contradiction(
                u, r, a_tuple, c.verdict, f"claimed witness {c.witness} has an m_p"
            )
    elif c.verdict is Verdict.OUT_OF_SCOPE and c.witness is None:
        inconclusive = True
    # keep rows small when shipped back from worker processes
    return _Row(replace(c, scan=None), contradiction, inconclusive)


def _check_chunk(
    polys: list[Polynomial], r: int, excluded: PrimeSupport, bound: int
) -> list[_Row]:
    return [_check_one(u, r, excluded, bound) for u in polys]


def _rows(box: CoefficientBox, workers: int) -> list[_Row]:
    polys = list(enumerate_polynomials(box))
    if workers <= 1 or len(polys) < 2 * workers:
        return _check_chunk(polys, box.r, box.excluded, box.prime_bound)
    size = -(-len(polys) // (workers * 4))
    chunks = [polys[i : i + size] for i in range(0, len(polys), size)]
    gathered: dict[int, list[_Row]] = {}
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {
            executor.submit(_check_chunk, chunk, box.r, box.excluded, box.prime_bound): i
            for i, chunk in enumerate(chunks)
        }
        for future in as_completed(futures):
            gathered[futures[future]] = future.result()
    return [row for i in sorted(gathered) for row in gathered[i]]


def cross_validate(box: CoefficientBox, workers: int = 1) -> ValidationReport:
    """Classify every polynomial in ``box`` and check each verdict by scanning."""
    logger.debug("cross_validate(%s)", box)
    start = time.perf_counter()
    report = ValidationReport(suite="", boxes=(box,))
    for row in _rows(box, workers):
        c = row.classification
        report.counts[c.verdict.value] = report.counts.get(c.verdict.value, 0) + 1
        if row.contradiction is not None:
            logger.error("Contradiction: %s", row.contradiction)
            report.contradictions.append(row.contradiction)
        if row.inconclusive:
            report.inconclusives.append(c.poly.to_text())
        if c.is_member:
            report.members.append(
                MemberRecord(
                    c.poly, c.r, tuple(c.excluded), c.verdict, c.index, c.provenance
                )
            )
    total_scope = not box.excluded or box.r in (-1, 0, 1)
    if total_scope and report.inconclusives:
        report.failures.append(
            f"{len(report.inconclusives)} inconclusive verdicts at r={box.r} "
            f"where classification is total"
        )
    report.elapsed = time.perf_counter() - start
    return report


# -- template forms -------------------------------------------------------


def _divide_by_root(coeffs: tuple[int, ...], rho: int) -> tuple[tuple[int, ...], int]:
    """Synthetic division of a constant-first coefficient tuple by (x - rho)."""
    high_first = list(reversed(coeffs))
    out = [high_first[0]]
    for c in high_first[1:]:
        out.append(c + rho * out[-1])
    remainder = out.pop()
    return tuple(reversed(out)), remainder


def _minus(u: Polynomial, base: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(u.coefficients), len(base))
    left = u.coefficients + (0,) * (n - len(u.coefficients))
    right = base + (0,) * (n - len(base))
    diff = [x - y for x, y in zip(left, right)]
    while diff and diff[-1] == 0:
        diff.pop()
    return tuple(diff)


def _in_family(u: Polynomial, base: tuple[int, ...], roots: Iterable[int]) -> bool:
    """True iff u = base + p(x) * prod(x - rho) for some integer polynomial p."""
    w = _minus(u, base)
    for rho in roots:
        if not w:
            return True
        w, rem = _divide_by_root(w, rho)
        if rem:
            return False
    return True


_L1_FAMILIES = (((0,), (1,), 1), ((4, -2), (1, 2), 2), ((-3, 7, -2), (1, 2, 3), 3))
_LM1_FAMILIES = (((0,), (-1,), 1), ((-4, -2), (-1, -2), 2), ((3, 7, 2), (-1, -2, -3), 3))


def _unit_line_template(u: Polynomial, r: int) -> tuple[str, int | None] | None:
    families, special = (
        (_L1_FAMILIES, (1, 1)) if r == 1 else (_LM1_FAMILIES, (-1, 1))
    )
    for base, roots, index in families:
        if _in_family(u, base, roots):
            return f"({index})", index
    if u.coefficients == special:
        return "(4)", None
    return None


def _zero_template(u: Polynomial) -> tuple[str, int | None] | None:
    c0 = u.coefficients[0]
    if c0 == 0:
        return "(3)", 1
    quotient, rem = _divide_by_root(u.coefficients, c0)
    if rem == 0 and quotient and quotient[0] == -1:
        return "(4)", 2
    if u.is_linear:
        a, b = u.a, u.b
        if a == 1:
            return "(1)", None
        if abs(a) >= 2 and all(b % q == 0 for q, _ in factorize(a)):
            return "(2)", None
    return None


def _smooth(primes: Iterable[int], limit: int) -> list[int]:
    """All products of the given primes (exponents >= 0) not exceeding ``limit``."""
    values = [1]
    for q in primes:
        grown = []
        for v in values:
            while v <= limit:
                grown.append(v)
                v *= q
        values = grown
    return sorted(v for v in values if v <= limit)


def _in_box(ab: tuple[int, int], lo: int, hi: int) -> bool:
    return ab[0] != 0 and lo <= ab[0] <= hi and lo <= ab[1] <= hi


def _l1a_forms(A: tuple[int, ...], lo: int, hi: int, nilpotent: bool) -> set[tuple[int, int]]:
    """Linear members of L_{1,A} as (a, b) pairs; nilpotent forms only if asked."""
    limit = max(abs(lo), abs(hi))
    smooth = _smooth(A, limit)
    forms: set[tuple[int, int]] = set()
    for s in smooth:
        forms.add((1, s))
        if nilpotent or s > 1:
            forms.add((1, -s))
        if s > 1:
            forms.add((s, 1))
            forms.add((-s, 1))
    if 2 in A:
        forms.add((-2, -1))
    if nilpotent:
        forms.add((-2, 4))
        forms.update((alpha, -alpha) for alpha in range(lo, hi + 1) if alpha)
    return {ab for ab in forms if _in_box(ab, lo, hi)}


def _sr_forms(r: int, lo: int, hi: int) -> set[tuple[int, int]]:
    """Members of S_r for r >= 2 as (a, b) pairs.

    For |a| >= 2 a member satisfies g = b a^j with g = r(a - 1) + b and j >= 1,
    so b = r(a - 1) / (a^j - 1); a candidate survives when every prime of a
    divides b and every prime of a - 1 that divides b also divides r.
    """
    support = [q for q, _ in factorize(r)]
    smooth = _smooth(support, max(abs(lo), abs(hi)))
    forms: set[tuple[int, int]] = set()
    for s in smooth:
        forms.add((1, s))
        if r % s:
            forms.add((1, -s))
    for a in range(lo, hi + 1):
        if abs(a) < 2:
            continue
        top = r * (a - 1)
        j = 1
        while abs(a**j - 1) <= abs(top):
            b, rem = divmod(top, a**j - 1)
            j += 1
            if rem or b == 0:
                continue
            if any(b % q for q, _ in factorize(a)):
                continue
            if any(b % q == 0 and r % q for q, _ in factorize(a - 1)):
                continue
            forms.add((a, b))
    return {ab for ab in forms if _in_box(ab, lo, hi)}


def _linear_pairs(records: Iterable[MemberRecord], verdicts: set[Verdict]) -> set[tuple[int, int]]:
    return {(m.poly.a, m.poly.b) for m in records if m.verdict in verdicts}


def _compare(label: str, found: set, expected: set, report: ValidationReport) -> None:
    if found != expected:
        extra = sorted(found - expected)[:5]
        missing = sorted(expected - found)[:5]
        report.failures.append(
            f"{label}: classified-only {extra}, template-only {missing}"
        )


# -- suites ---------------------------------------------------------------


def _boxes(params: dict[str, Any]) -> list[CoefficientBox]:
    d_lo, d_hi = params["degrees"]
    c_lo, c_hi = params["coeffs"]
    return [
        CoefficientBox(d_lo, d_hi, c_lo, c_hi, r, make_support(A), params["prime_bound"])
        for r in params["r_values"]
        for A in params["exclusions"]
    ]


def _run_boxes(
    name: str, params: dict[str, Any], workers: int
) -> list[tuple[CoefficientBox, ValidationReport]]:
    return [(box, cross_validate(box, workers)) for box in _boxes(params)]


def _suite_unit_lines(name, params, workers) -> ValidationReport:
    report = ValidationReport(suite=name)
    for box, sub in _run_boxes(name, params, workers):
        report.merge(sub)
        members = {m.poly: m for m in sub.members}
        expected = {}
        for u in enumerate_polynomials(box):
            match = _unit_line_template(u, box.r)
            if match is not None:
                expected[u] = match
        _compare(f"r={box.r} members", set(members), set(expected), report)
        for u, (form, index) in expected.items():
            m = members.get(u)
            if m is not None and m.index != index:
                report.failures.append(
                    f"{u.to_text()}: form {form} expects index {index}, got {m.index}"
                )
    return report


def _suite_singletons(name, params, workers) -> ValidationReport:
    report = ValidationReport(suite=name)
    expected = {1: Polynomial((1, 1)), -1: Polynomial((-1, 1))}
    for box, sub in _run_boxes(name, params, workers):
        report.merge(sub)
        in_sr = [m.poly for m in sub.members if m.verdict is Verdict.IN_SR]
        if in_sr != [expected[box.r]]:
            report.failures.append(
                f"S_{box.r} should be {{{expected[box.r]}}}, got {[str(u) for u in in_sr]}"
            )
    return report


def _suite_zero(name, params, workers) -> ValidationReport:
    report = ValidationReport(suite=name)
    only_sr = name == "cor4.5"
    for box, sub in _run_boxes(name, params, workers):
        report.merge(sub)
        wanted = {Verdict.IN_SR} if only_sr else {Verdict.IN_SR, Verdict.NILPOTENT}
        found = {m.poly for m in sub.members if m.verdict in wanted}
        expected = set()
        for u in enumerate_polynomials(box):
            match = _zero_template(u)
            if match is None:
                continue
            if only_sr and match[1] is not None:
                continue
            expected.add(u)
        _compare("r=0 members", found, expected, report)
        for m in sub.members:
            if m.verdict is Verdict.NILPOTENT and m.index not in (1, 2):
                report.failures.append(
                    f"{m.poly.to_text()}: nilpotent at 0 with index {m.index}"
                )
            if m.verdict is Verdict.IN_SR and not m.poly.is_linear:
                report.failures.append(f"{m.poly.to_text()}: nonlinear member of S_0")
    return report


def _suite_l1a(name, params, workers) -> ValidationReport:
    report = ValidationReport(suite=name)
    with_nilpotent = name == "thm5.1"
    lo, hi = params["coeffs"]
    for box, sub in _run_boxes(name, params, workers):
        report.merge(sub)
        A = tuple(box.excluded)
        verdicts = {Verdict.IN_SR, Verdict.WLN_OUTSIDE_A}
        if with_nilpotent:
            verdicts.add(Verdict.NILPOTENT)
        found = _linear_pairs(sub.members, verdicts)
        _compare(f"A={list(A)}", found, _l1a_forms(A, lo, hi, with_nilpotent), report)
        if _in_box((-2, -1), lo, hi):
            member = (-2, -1) in found
            if member != (2 in A):
                report.failures.append(f"-2x-1 membership wrong for A={list(A)}")
    return report


def _suite_sr(name, params, workers) -> ValidationReport:
    report = ValidationReport(suite=name)
    lo, hi = params["coeffs"]
    for box, sub in _run_boxes(name, params, workers):
        report.merge(sub)
        r = box.r
        found = _linear_pairs(sub.members, {Verdict.IN_SR})
        if r > 0:
            expected = _sr_forms(r, lo, hi)
        else:
            mirrored = _sr_forms(-r, min(lo, -hi), max(hi, -lo))
            expected = {(a, -b) for a, b in mirrored}
            expected = {ab for ab in expected if _in_box(ab, lo, hi)}
        _compare(f"S_{r}", found, expected, report)
        for a, b in found:
            if abs(a) >= 2 and not remark_filter(a, b, r):
                report.failures.append(f"{a}x{b:+d} in S_{r} fails the power filter")
        for u in enumerate_polynomials(box):
            a, b = u.a, u.b
            direct = classify(u, r, (), box.prime_bound)
            if b % r == 0:
                reduced = classify_by_reduction(a, b, r, (), box.prime_bound)
                if (reduced.verdict, reduced.index) != (direct.verdict, direct.index):
                    report.failures.append(
                        f"{u.to_text()} at r={r}: reduction gives {reduced.verdict.value}"
                    )
            if name == "cor5.4":
                mirror = classify(conjugate(u), -r, (), box.prime_bound)
                if (mirror.verdict, mirror.index) != (direct.verdict, direct.index):
                    report.failures.append(
                        f"{u.to_text()}: conjugation changes verdict at r={r}"
                    )
    return report


def _suite_conjugation(name, params, workers) -> ValidationReport:
    report = ValidationReport(suite=name)
    rng = random.Random(params.get("seed", 0))
    lo, hi = params["coeffs"]
    r_lo, r_hi = params["r_range"]
    mismatches = 0
    for _ in range(params["samples"]):
        degree = rng.randint(1, params["max_degree"])
        coeffs = [rng.randint(lo, hi) for _ in range(degree)]
        coeffs.append(rng.choice([c for c in range(lo, hi + 1) if c]))
        u = Polynomial(tuple(coeffs))
        v = conjugate(u)
        r = rng.randint(r_lo, r_hi)
        n = rng.randint(1, params["max_iterations"])
        if iterate(v, -r, n) != -iterate(u, r, n):
            mismatches += 1
            report.failures.append(f"{u.to_text()} at r={r}, n={n}")
    report.counts = {"instances": params["samples"], "mismatches": mismatches}
    return report


def _suite_power_ratio(name, params, workers) -> ValidationReport:
    report = ValidationReport(suite=name)
    primes = primes_up_to(params["prime_bound"])
    for alpha, beta, gamma in params["triples"]:
        label = f"({alpha},{beta},{gamma})"
        if is_power_ratio(alpha, beta, gamma) is not None:
            report.failures.append(f"{label} has a power relation")
            continue
        missed = unreached_primes(alpha, beta, gamma, primes)
        report.counts[label] = len(missed)
        if len(missed) < params["min_unreached"]:
            report.failures.append(
                f"{label}: only {len(missed)} unreached primes up to {params['prime_bound']}"
            )
    return report


_RUNNERS: dict[str, Callable[[str, dict[str, Any], int], ValidationReport]] = {
    "thm4.1": _suite_unit_lines,
    "cor4.2": _suite_unit_lines,
    "cor4.3": _suite_singletons,
    "thm4.4": _suite_zero,
    "cor4.5": _suite_zero,
    "thm5.1": _suite_l1a,
    "cor5.2": _suite_l1a,
    "thm5.3": _suite_sr,
    "cor5.4": _suite_sr,
    "fact3.1": _suite_conjugation,
    "lemma3.2-contrapositive": _suite_power_ratio,
}


def suite_names() -> list[str]:
    return list(SUITES)


def theorem_suite(name: str, workers: int = 1, **overrides: Any) -> ValidationReport:
    """Run a named suite on its canonical box, or on the box given by ``overrides``.

    Recognised overrides are the keys of the suite's entry in
    ``constants.SUITES`` (``coeffs``, ``degrees``, ``r_values``,
    ``exclusions``, ``prime_bound``, ``samples``, ``seed`` ...). ``None``
    values are ignored.
    """
    if name not in _RUNNERS:
        raise UnknownSuiteError(f"unknown suite {name!r}; try one of {suite_names()}")
    params = dict(SUITES[name])
    params.update({k: v for k, v in overrides.items() if v is not None})
    logger.debug("theorem_suite(%s, %s)", name, params)
    start = time.perf_counter()
    report = _RUNNERS[name](name, params, workers)
    report.elapsed = time.perf_counter() - start
    logger.info(
        "Suite %s %s in %.2fs", name, "passed" if report.passed else "FAILED", report.elapsed
    )
    return report


@dataclass(frozen=True)
class LocalEntry:
    r: int
    verdict: Verdict
    certainty: str
    provenance: str


@dataclass(frozen=True)
class ExploreResult:
    """Finite window scan of N(u) and LN(u)."""

    poly: Polynomial
    window: int
    bound: int
    nilpotent: tuple[int, ...]
    locally_nilpotent: tuple[LocalEntry, ...]


def scan_Nu_LNu(u: Polynomial, R: int, P: int = DEFAULT_PRIME_BOUND) -> ExploreResult:
    """Base points in [-R, R] where u is nilpotent, and where it is locally nilpotent.

    The nilpotent part is exact. Locally nilpotent entries carry the
    certainty of the verdict that admitted them.
    """
    if R < 1:
        raise InvalidArgumentError("window radius must be at least 1")
    nilpotent = tuple(nilpotent_set(u, -R, R))
    entries = []
    for r in range(-R, R + 1):
        c = classify(u, r, (), P)
        if c.is_member or (c.verdict is Verdict.OUT_OF_SCOPE and c.witness is None):
            entries.append(LocalEntry(r, c.verdict, c.certainty, c.provenance))
    return ExploreResult(u, R, P, nilpotent, tuple(entries))
