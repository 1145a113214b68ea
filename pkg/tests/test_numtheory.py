import pytest

from nilorbit import numtheory
from nilorbit.errors import EmptyRangeError, InvalidArgumentError, UndefinedSupportError
from nilorbit.numtheory import (
    PrimeSupport,
    factorize,
    is_power_ratio,
    make_support,
    prime_support,
    primes_up_to,
    support_subset,
    unreached_primes,
)


def test_primes_up_to_small():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(2) == [2]


def test_primes_up_to_count():
    assert len(primes_up_to(10_000)) == 1229


@pytest.mark.parametrize("bound", [1, 0, -5])
def test_primes_up_to_empty(bound):
    with pytest.raises(EmptyRangeError):
        primes_up_to(bound)


def test_segmented_sieve_matches_simple():
    simple = numtheory._simple_sieve(5000).tolist()
    segmented = numtheory._segmented_sieve(5000, segment=128).tolist()
    assert segmented == simple


@pytest.mark.parametrize(
    "n,expected",
    [
        (360, ((2, 3), (3, 2), (5, 1))),
        (-12, ((2, 2), (3, 1))),
        (1, ()),
        (97, ((97, 1),)),
        (2**61 - 1, ((2**61 - 1, 1),)),
        ((10**6 + 3) * (10**6 + 33), ((10**6 + 3, 1), (10**6 + 33, 1))),
        ((10**6 + 3) ** 3, ((10**6 + 3, 3),)),
        (-(2**5) * (10**6 + 33) ** 2, ((2, 5), (10**6 + 33, 2))),
    ],
)
def test_factorize(n, expected):
    assert factorize(n) == expected


def test_factorize_round_trip():
    for n in range(2, 100_001):
        pairs = factorize(n)
        product = 1
        for p, e in pairs:
            assert numtheory.is_prime(p) and e >= 1
            product *= p**e
        assert product == n
        assert [p for p, _ in pairs] == sorted({p for p, _ in pairs})


def test_factorize_zero():
    with pytest.raises(InvalidArgumentError):
        factorize(0)


def test_prime_support_examples():
    assert list(prime_support(12)) == [2, 3]
    assert list(prime_support(-30, excluded=(3,))) == [2, 5]
    assert list(prime_support(1)) == []
    assert prime_support(-30, excluded=(3,)).excluded == (3,)


def test_prime_support_zero():
    with pytest.raises(UndefinedSupportError):
        prime_support(0)


@pytest.mark.parametrize(
    "a,b,expected",
    [(12, 6, True), (8, 6, True), (10, 6, False), (1, 7, True), (-9, 3, True)],
)
def test_support_subset(a, b, expected):
    assert support_subset(a, b) is expected


def test_support_subset_exhaustive():
    supports = {n: {p for p, _ in factorize(n)} for n in range(1, 201)}
    values = [n for n in range(-200, 201) if n]
    for a in values:
        for b in values:
            assert support_subset(a, b) is (supports[abs(a)] <= supports[abs(b)])


def test_prime_support_rejects_composites():
    with pytest.raises(InvalidArgumentError):
        PrimeSupport((4,))
    with pytest.raises(InvalidArgumentError):
        make_support([2, 9])


def test_prime_support_sorted_and_union():
    s = make_support([5, 2, 5])
    assert s.primes == (2, 5)
    assert 5 in s and 3 not in s
    assert list(s.union([3])) == [2, 3, 5]
    assert make_support([2]).issubset(s)
    assert not make_support(None)


@pytest.mark.parametrize(
    "alpha,beta,gamma,expected",
    [
        (2, 8, 1, 3),
        (2, 1, 8, -3),
        (-2, 1, 2, None),
        (-2, -8, 1, 3),
        (3, 5, 5, 0),
        (1, 4, 4, 0),
        (1, 4, 5, None),
        (-1, -7, 7, 1),
        (-1, 7, 7, 0),
    ],
)
def test_is_power_ratio(alpha, beta, gamma, expected):
    assert is_power_ratio(alpha, beta, gamma) == expected


def test_is_power_ratio_rejects_zero():
    with pytest.raises(InvalidArgumentError):
        is_power_ratio(2, 0, 1)


def test_unreached_primes():
    # 2(-2)^n - 1 is odd and never 0 mod 3
    missed = unreached_primes(-2, 1, 2, primes_up_to(50))
    assert 2 in missed and 3 in missed
    # 2^n - 8 vanishes at n = 3, so every prime is reached
    assert unreached_primes(2, 8, 1, [3, 5, 7, 11]) == []


def _power_ratio_by_search(alpha, beta, gamma):
    for k in range(65):
        if gamma * alpha**k == beta:
            return k
        if beta * alpha**k == gamma:
            return -k
        if abs(gamma * alpha**k) > abs(beta) and abs(beta * alpha**k) > abs(gamma):
            return None
    return None


def test_is_power_ratio_matches_search():
    values = [v for v in range(-40, 41) if v]
    for alpha in (-3, -2, 2, 3, 5):
        for beta in values:
            for gamma in values:
                assert is_power_ratio(alpha, beta, gamma) == _power_ratio_by_search(
                    alpha, beta, gamma
                )


@pytest.mark.parametrize("alpha", [-3, 2, 7])
@pytest.mark.parametrize("k", [1, 17, 64])
def test_is_power_ratio_large_exponents(alpha, k):
    assert is_power_ratio(alpha, 5 * alpha**k, 5) == k
    assert is_power_ratio(alpha, -3, -3 * alpha**k) == -k
    assert is_power_ratio(alpha, 5 * alpha**k + 1, 5) is None
