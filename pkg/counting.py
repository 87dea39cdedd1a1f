import threading
from fractions import Fraction
from functools import lru_cache, reduce
from math import isqrt
from operator import mul
from typing import Dict, Iterator, List, Sequence, Tuple

from scipy.special import comb

# Python ints are unbounded, so every count below is exact.
BigCount = int
OrderedFactorization = Tuple[int, ...]
PrimeFactorization = List[Tuple[int, int]]

DEFAULT_BUDGET = 10 ** 7

_TRIAL_DIVISION_LIMIT = 10 ** 6
_MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MILLER_RABIN_LIMIT = 3_317_044_064_679_887_385_961_981


class BudgetExceededError(ValueError):
    """Enumeration would emit more tuples than the configured budget."""


class NotPrimeError(ValueError):
    pass


class NotSquarefreeError(ValueError):
    pass


def check_positive(n, name="n"):
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"{name} must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")


def _trial_division_is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality check.

    Trial division below 10^6, Miller-Rabin with the first twelve prime bases
    up to 3.3e24 (exact there), trial division again beyond that.
    """
    if n < _TRIAL_DIVISION_LIMIT or n >= _MILLER_RABIN_LIMIT:
        return _trial_division_is_prime(n)
    for p in _MILLER_RABIN_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MILLER_RABIN_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> PrimeFactorization:
    """Prime factorization by trial division, primes strictly increasing."""
    check_positive(n)
    pairs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        pairs.append((n, 1))
    return pairs


def euler_phi(n: int) -> BigCount:
    check_positive(n)
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def mobius(n: int) -> int:
    check_positive(n)
    pairs = factorize(n)
    if any(e > 1 for _, e in pairs):
        return 0
    return -1 if len(pairs) % 2 else 1


@lru_cache(maxsize=4096)
def _divisors(n):
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def divisors(n: int) -> List[int]:
    """All divisors of n in increasing order."""
    check_positive(n)
    return list(_divisors(n))


@lru_cache(maxsize=None)
def _factorization_count(n):
    if n == 1:
        return 1
    return sum(_factorization_count(n // d) for d in _divisors(n)[1:])


def ordered_factorization_count(n: int) -> BigCount:
    """Number of ordered factorizations of n into parts > 1 (1 for n = 1)."""
    check_positive(n)
    # fill the cache bottom-up so deep divisor chains never recurse far
    for d in _divisors(n):
        _factorization_count(d)
    return _factorization_count(n)


def _check_budget(n, budget, what="ordered factorizations"):
    count = ordered_factorization_count(n)
    if budget is not None and count > budget:
        raise BudgetExceededError(
            f"n={n} has {count} {what}, more than the budget of {budget}"
        )
    return count


def _iter_factorizations(n):
    if n == 1:
        yield ()
        return
    for d in _divisors(n)[1:]:
        for rest in _iter_factorizations(n // d):
            yield (d,) + rest


def iter_ordered_factorizations(n: int, budget: int = DEFAULT_BUDGET) -> Iterator[OrderedFactorization]:
    """Lazily yield the ordered factorizations of n, lexicographic by parts."""
    check_positive(n)
    _check_budget(n, budget)
    return _iter_factorizations(n)


def ordered_factorizations(n: int, budget: int = DEFAULT_BUDGET) -> List[OrderedFactorization]:
    return list(iter_ordered_factorizations(n, budget=budget))


def molecule_count_direct(n: int, budget: int = DEFAULT_BUDGET) -> BigCount:
    """M(n) as the sum over ordered factorizations of the totient products."""
    parts_iter = iter_ordered_factorizations(n, budget=budget)
    phi = {d: euler_phi(d) for d in _divisors(n)}
    total = 0
    for parts in parts_iter:
        total += reduce(mul, (phi[d] for d in parts), 1)
    return total


def molecule_count_recursive(n: int) -> BigCount:
    """M(n) by M(1) = 1, M(n) = sum over d | n, d > 1 of phi(d) M(n/d).

    Memoized over the divisor lattice of n within this call.
    """
    check_positive(n)
    divs = _divisors(n)
    phi = {d: euler_phi(d) for d in divs}
    memo = {1: 1}
    for d in divs[1:]:
        memo[d] = sum(phi[e] * memo[d // e] for e in divs[1:] if e <= d and d % e == 0)
    return memo[n]


def molecule_count_prime_power(p: int, k: int) -> BigCount:
    check_positive(k, "k")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return (p - 1) * (2 * p - 1) ** (k - 1)


def _check_distinct_primes(primes):
    for p in primes:
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
    if len(set(primes)) != len(primes):
        raise NotSquarefreeError(f"primes {list(primes)} repeat, product is not squarefree")


def ordered_bell(m: int) -> BigCount:
    """Ordered Bell (Fubini) number N(m): N(0) = 1, N(m) = sum C(m,k) N(m-k)."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise ValueError(f"m must be a nonnegative integer, got {m!r}")
    return _ordered_bell_table(m)[m]


_bell_cache = [1]
_bell_lock = threading.Lock()


def _ordered_bell_table(m):
    table = _bell_cache
    if len(table) > m:
        return table
    with _bell_lock:
        while len(table) <= m:
            j = len(table)
            table.append(sum(int(comb(j, k, exact=True)) * table[j - k] for k in range(1, j + 1)))
    return table


def ordered_set_partitions(m: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """All ordered partitions of {1, ..., m} into nonempty blocks."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")

    def partitions(items):
        if not items:
            yield ()
            return
        # choose the first block as any nonempty subset, encoded by a bitmask
        for mask in range(1, 1 << len(items)):
            block = tuple(x for i, x in enumerate(items) if mask >> i & 1)
            rest = tuple(x for i, x in enumerate(items) if not mask >> i & 1)
            for tail in partitions(rest):
                yield (block,) + tail

    return list(partitions(tuple(range(1, m + 1))))


def molecule_count_squarefree(primes: Sequence[int]) -> BigCount:
    """N(m) * (p_1 - 1) ... (p_m - 1) for distinct primes p_i."""
    primes = list(primes)
    _check_distinct_primes(primes)
    return ordered_bell(len(primes)) * reduce(mul, (p - 1 for p in primes), 1)


def molecule_count_totient_form(primes: Sequence[int]) -> BigCount:
    """N(m) * phi(p_1 ... p_m); same value as molecule_count_squarefree."""
    primes = list(primes)
    _check_distinct_primes(primes)
    return ordered_bell(len(primes)) * euler_phi(reduce(mul, primes, 1))


def molecule_count_closed(n: int) -> BigCount:
    """Closed form for prime powers and squarefree n, ValueError otherwise."""
    check_positive(n)
    pairs = factorize(n)
    if len(pairs) == 1:
        p, k = pairs[0]
        return molecule_count_prime_power(p, k)
    if all(e == 1 for _, e in pairs):
        return molecule_count_squarefree([p for p, _ in pairs])
    raise ValueError(f"closed form needs a prime power or squarefree n, got {n}")


def asymptotic_ratio(primes: Sequence[int]) -> Fraction:
    """M(n) / (N(m) n) for n the product of the given distinct primes."""
    primes = list(primes)
    _check_distinct_primes(primes)
    n = reduce(mul, primes, 1)
    return Fraction(molecule_count_recursive(n), ordered_bell(len(primes)) * n)


def total_component_count(n: int) -> BigCount:
    """nu(n): hyperbolic components of exact period n in the whole Mandelbrot set."""
    check_positive(n)
    return sum(mobius(n // d) * 2 ** (d - 1) for d in _divisors(n))


def molecule_count_by_first_link(n: int) -> Dict[int, BigCount]:
    """Split M(n) by the period d of the first satellite off the cardioid.

    Each of the phi(d) period-d satellites carries M(n/d) of the components.
    """
    check_positive(n)
    return {d: euler_phi(d) * molecule_count_recursive(n // d) for d in _divisors(n)[1:]}
