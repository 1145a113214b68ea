import random

import pytest

from nilorbit import modp
from nilorbit.errors import InvalidArgumentError, InvalidModulusError, NotDynamicalError
from nilorbit.modp import (
    ModPResult,
    ScanStatus,
    first_zero_batch,
    m_p,
    residue_trajectory,
    weak_local_scan,
)
from nilorbit.numtheory import primes_up_to
from nilorbit.orbits import nilpotency_index
from nilorbit.polynomial import Polynomial, conjugate

U = Polynomial((-2, 4))  # 4x - 2


def test_m_p_examples():
    assert m_p(U, 0, 2).m_p == 1
    assert m_p(U, 0, 3).m_p == 3


def test_m_p_cycle_without_zero():
    res = m_p(U, 1, 5)
    assert res.m_p is None
    assert (res.preperiod, res.period) == (0, 2)
    assert res.cycle == (1, 2)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101, 997])
def test_m_p_shift(p):
    assert m_p(Polynomial((1, 1)), 1, p).m_p == p - 1


def test_m_p_bounds_hold():
    u = Polynomial((3, 1, 2))
    for p in primes_up_to(200):
        res = m_p(u, 4, p)
        assert res.preperiod + res.period <= p
        if res.m_p is not None:
            assert 1 <= res.m_p <= p


@pytest.mark.parametrize("b", [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
def test_m_p_translation_law(b):
    # r + n b = 0 mod p has its least solution at n = -r / b mod p
    u = Polynomial((b, 1))
    for p in primes_up_to(100):
        for r in range(-5, 6):
            if b % p:
                n = -r * pow(b, -1, p) % p
                expected = n or p
            else:
                expected = 1 if r % p == 0 else None
            assert m_p(u, r, p).m_p == expected, (b, r, p)


def test_m_p_conjugation_bridge():
    rng = random.Random(17)
    primes = primes_up_to(200)
    for _ in range(200):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(1, 3))]
        coeffs.append(rng.choice([-3, -2, -1, 1, 2, 3]))
        u = Polynomial(tuple(coeffs))
        r = rng.randint(-12, 12)
        p = rng.choice(primes)
        assert m_p(u, r, p).m_p == m_p(conjugate(u), -r, p).m_p, (coeffs, r, p)


@pytest.mark.parametrize(
    "coeffs,r",
    [((25, -25, 9, -1), 2), ((-3, 7, -2), 1), ((-1, 1), 5), ((-4, -2), -1)],
)
def test_nilpotent_orbit_bounds_m_p(coeffs, r):
    u = Polynomial(coeffs)
    n = nilpotency_index(u, r)
    assert n is not None
    found = first_zero_batch(u, r, primes_up_to(1000))
    assert all(m is not None and m <= n for m in found)


def test_m_p_invalid_modulus():
    with pytest.raises(InvalidModulusError):
        m_p(U, 0, 4)
    with pytest.raises(InvalidModulusError):
        m_p(U, 0, 1)
    with pytest.raises(NotDynamicalError):
        m_p(Polynomial((7,)), 0, 5)


def test_mod_p_result_validates():
    with pytest.raises(InvalidArgumentError):
        ModPResult(5, 6)
    with pytest.raises(InvalidArgumentError):
        ModPResult(5, None, 3, 3)


def test_residue_trajectory():
    assert residue_trajectory(U, 1, 5) == [2, 1]
    assert residue_trajectory(U, 0, 3) == [1, 2, 0]


@pytest.mark.parametrize(
    "coeffs,r",
    [((-2, 4), 0), ((-2, 4), 1), ((1, 1), 1), ((-3, 7, -2), 5), ((25, -25, 9, -1), 2)],
)
def test_first_zero_batch_matches_m_p(coeffs, r):
    u = Polynomial(coeffs)
    primes = primes_up_to(500)
    assert first_zero_batch(u, r, primes) == [m_p(u, r, p).m_p for p in primes]


def test_first_zero_batch_large_primes():
    u = Polynomial((1, 1))
    primes = [4_294_967_291, 4_294_967_311]
    # the orbit of p - 2 under x + 1 reaches 0 at step 2 for every p
    assert first_zero_batch(u, -2, primes) == [2, 2]


def test_scan_witness_found():
    report = weak_local_scan(U, 1, P=100)
    assert report.status is ScanStatus.WITNESS_FOUND
    assert report.first_witness == 5
    assert report.certainty == "proved"
    assert report.results[-1].cycle == (1, 2)


def test_scan_table_records_every_prime():
    report = weak_local_scan(U, 1, P=100, mode="table")
    assert report.prime_count == 25
    assert report.first_witness == 5
    assert [res.p for res in report.results] == primes_up_to(100)


def test_scan_all_found():
    report = weak_local_scan(Polynomial((1, 1)), 1, P=10_000)
    assert report.status is ScanStatus.ALL_FOUND
    assert report.certainty == "inconclusive"
    assert report.prime_count == 1229
    assert all(res.m_p == res.p - 1 for res in report.results)


def test_scan_excludes_primes():
    report = weak_local_scan(U, 1, A=(5,), P=100, mode="table")
    assert 5 not in [res.p for res in report.results]
    assert report.excluded.primes == (5,)


def test_scan_unknown_mode():
    with pytest.raises(InvalidArgumentError):
        weak_local_scan(U, 1, P=10, mode="fast")


def test_table_scan_is_worker_independent(monkeypatch):
    class InlineFuture:
        def __init__(self, value):
            self._value = value

        def result(self):
            return self._value

    class InlineExecutor:
        def __init__(self, max_workers=None):
            pass

        def __enter__(self):
            return self

        def __exit__(self, *exc):
            return False

        def submit(self, fn, *args):
            return InlineFuture(fn(*args))

    monkeypatch.setattr(modp, "ProcessPoolExecutor", InlineExecutor)
    monkeypatch.setattr(modp, "as_completed", lambda fs: list(reversed(list(fs))))
    u = Polynomial((-3, 7, -2))
    one = weak_local_scan(u, 5, P=300, mode="table", workers=1)
    four = weak_local_scan(u, 5, P=300, mode="table", workers=4)
    assert one.results == four.results


def test_decision_records_past_sequential_limit_are_partial():
    report = weak_local_scan(Polynomial((1, 1)), 1, P=1000)
    for res in report.results:
        assert res.partial is (res.p > modp.SEQUENTIAL_SCAN_LIMIT)
    witness = weak_local_scan(U, 1, P=100).results[-1]
    assert not witness.partial
    assert (witness.preperiod, witness.period) == (0, 2)
