"""Defaults, limits and the canonical theorem-suite boxes."""

import logging
import os

logger = logging.getLogger(__name__)
if os.getenv("NILORBIT_DEBUG") and not logging.getLogger().handlers:
    logging.basicConfig(level=logging.DEBUG)  # pragma: no cover - config
logger.debug("constants module loaded")

SCHEMA = "nilorbit/1"

# CLI decisions scan primes up to this bound unless told otherwise.
DEFAULT_PRIME_BOUND = 10_000
# Degree-1 orbits are displayed for this many steps; decisions never use it.
DEFAULT_MAX_STEPS = 64
# Longest trajectory prefix stored on an OrbitOutcome.
TRAJECTORY_CAP = 256
# Longest list of cycle residues stored on a ModPResult.
CYCLE_CAP = 64

# Sieving switches to segments of this size above it.
SIEVE_SEGMENT = 1 << 20
# Primes kept in the process-wide sieve cache at minimum.
SIEVE_CACHE_FLOOR = 1 << 16
# Trial division runs over primes up to this bound; larger cofactors go to sympy.
TRIAL_DIVISION_LIMIT = 10**6

# Decision scans walk primes up to this bound one at a time, then switch to
# batched numpy iteration over growing blocks of primes.
SEQUENTIAL_SCAN_LIMIT = 64
SCAN_BLOCK_GROWTH = 16
# Batched iteration stays in int64 while p * p fits.
INT64_SAFE_MODULUS = 3_037_000_499

# Canonical boxes for every theorem suite. ``r_values`` and ``exclusions`` are
# crossed; ``prime_bound`` is P.
SUITES: dict[str, dict] = {
    "thm4.1": {
        "title": "Theorem 4.1: every polynomial locally nilpotent at 1",
        "degrees": (1, 2),
        "coeffs": (-6, 6),
        "r_values": (1,),
        "exclusions": ((),),
        "prime_bound": 1_000,
    },
    "cor4.2": {
        "title": "Corollary 4.2: every polynomial locally nilpotent at -1",
        "degrees": (1, 2),
        "coeffs": (-6, 6),
        "r_values": (-1,),
        "exclusions": ((),),
        "prime_bound": 1_000,
    },
    "cor4.3": {
        "title": "Corollary 4.3: S_1 = {x+1} and S_-1 = {x-1}",
        "degrees": (1, 1),
        "coeffs": (-100, 100),
        "r_values": (1, -1),
        "exclusions": ((),),
        "prime_bound": 10_000,
    },
    "thm4.4": {
        "title": "Theorem 4.4: every polynomial locally nilpotent at 0",
        "degrees": (1, 3),
        "coeffs": (-5, 5),
        "r_values": (0,),
        "exclusions": ((),),
        "prime_bound": 1_000,
    },
    "cor4.5": {
        "title": "Corollary 4.5: the set S_0",
        "degrees": (1, 3),
        "coeffs": (-5, 5),
        "r_values": (0,),
        "exclusions": ((),),
        "prime_bound": 1_000,
    },
    "thm5.1": {
        "title": "Theorem 5.1: linear polynomials weakly locally nilpotent at 1 outside A",
        "degrees": (1, 1),
        "coeffs": (-40, 40),
        "r_values": (1,),
        "exclusions": ((), (2,), (2, 3), (5,)),
        "prime_bound": 10_000,
    },
    "cor5.2": {
        "title": "Corollary 5.2: non-nilpotent members of L_{1,A}^1",
        "degrees": (1, 1),
        "coeffs": (-40, 40),
        "r_values": (1,),
        "exclusions": ((), (2,), (2, 3), (5,)),
        "prime_bound": 10_000,
    },
    "thm5.3": {
        "title": "Theorem 5.3: the sets S_r for r >= 2",
        "degrees": (1, 1),
        "coeffs": (-30, 30),
        "r_values": tuple(range(2, 13)),
        "exclusions": ((),),
        "prime_bound": 10_000,
    },
    "cor5.4": {
        "title": "Corollary 5.4: the sets S_r for r <= -2",
        "degrees": (1, 1),
        "coeffs": (-30, 30),
        "r_values": tuple(range(-2, -13, -1)),
        "exclusions": ((),),
        "prime_bound": 10_000,
    },
    "fact3.1": {
        "title": "Fact 3.1: v(x) = -u(-x) satisfies v^(n)(-r) = -u^(n)(r)",
        "samples": 1_000,
        "max_degree": 4,
        "coeffs": (-9, 9),
        "r_range": (-12, 12),
        "max_iterations": 8,
    },
    "lemma3.2-contrapositive": {
        "title": "Lemma 3.2 contrapositive: triples without a power relation miss infinitely many primes",
        "triples": ((-2, 1, 2), (2, -1, 1), (-2, -2, -1), (-3, 1, 3), (3, -1, 1)),
        "prime_bound": 10_000,
        "min_unreached": 10,
    },
}
