import math
import sys
import threading
from fractions import Fraction

import counting
from counting import (
    BudgetExceededError,
    NotPrimeError,
    NotSquarefreeError,
    asymptotic_ratio,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    mobius,
    molecule_count_by_first_link,
    molecule_count_closed,
    molecule_count_direct,
    molecule_count_prime_power,
    molecule_count_recursive,
    molecule_count_squarefree,
    molecule_count_totient_form,
    ordered_bell,
    ordered_factorization_count,
    ordered_factorizations,
    ordered_set_partitions,
    total_component_count,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def raises(exc, fn, *args, **kwargs):
    try:
        fn(*args, **kwargs)
    except exc:
        return True
    return False


def brute_factorizations(n):
    if n == 1:
        return [()]
    out = []
    for d in range(2, n + 1):
        if n % d == 0:
            out.extend((d,) + rest for rest in brute_factorizations(n // d))
    return out


def test_euler_phi():
    assert [euler_phi(n) for n in (1, 2, 9, 12)] == [1, 1, 6, 4]
    for n in range(1, 201):
        assert euler_phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    assert raises(ValueError, euler_phi, 0)
    assert raises(ValueError, euler_phi, -4)


def test_phi_multiplicative():
    for a in range(1, 501):
        for b in range(1, 501):
            if math.gcd(a, b) == 1:
                assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


def test_divisors_and_factorize():
    assert divisors(1) == [1]
    assert divisors(7) == [1, 7]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(1) == []
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_is_prime():
    assert [n for n in range(40) if is_prime(n)] == SMALL_PRIMES
    assert not is_prime(561)
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(2 ** 61 + 1)
    assert not is_prime(1_000_003 * 1_000_033)


def test_ordered_factorizations_examples():
    assert ordered_factorizations(1) == [()]
    assert ordered_factorizations(6) == [(2, 3), (3, 2), (6,)]
    assert sorted(ordered_factorizations(12)) == sorted(
        [(2, 2, 3), (2, 3, 2), (3, 2, 2), (2, 6), (6, 2), (3, 4), (4, 3), (12,)]
    )


def test_ordered_factorizations_complete():
    for n in range(1, 201):
        found = ordered_factorizations(n)
        assert len(found) == len(set(found))
        assert sorted(found) == sorted(brute_factorizations(n))
        assert len(found) == ordered_factorization_count(n)
        for t in found:
            assert math.prod(t) == n and all(f >= 2 for f in t)


def test_molecule_count_examples():
    assert molecule_count_direct(1) == 1
    assert molecule_count_direct(6) == 6
    assert molecule_count_direct(8) == 9
    assert molecule_count_direct(12) == 22
    assert molecule_count_recursive(12) == 22
    assert [molecule_count_recursive(n) for n in range(1, 9)] == [1, 1, 2, 3, 4, 6, 6, 9]


def test_direct_equals_recursive():
    for n in range(1, 2001):
        assert molecule_count_direct(n) == molecule_count_recursive(n), n


def test_recursion_term_by_term():
    for n in range(2, 301):
        expected = sum(euler_phi(d) * molecule_count_direct(n // d) for d in divisors(n) if d > 1)
        assert molecule_count_recursive(n) == expected


def test_prime_power_form():
    assert molecule_count_prime_power(3, 1) == 2
    assert molecule_count_prime_power(3, 2) == 10
    assert molecule_count_prime_power(2, 3) == 9
    for p in (2, 3, 5, 7):
        k = 1
        while p ** k <= 3000:
            assert molecule_count_prime_power(p, k) == molecule_count_direct(p ** k)
            k += 1
    assert raises(NotPrimeError, molecule_count_prime_power, 4, 2)
    assert raises(ValueError, molecule_count_prime_power, 3, 0)


def test_squarefree_form():
    assert molecule_count_squarefree([2, 3]) == 6
    assert molecule_count_squarefree([5]) == 4
    assert molecule_count_squarefree([2, 3, 5]) == 104
    for n in range(2, 1001):
        pairs = factorize(n)
        if all(e == 1 for _, e in pairs):
            primes = [p for p, _ in pairs]
            assert molecule_count_squarefree(primes) == molecule_count_direct(n)
            assert molecule_count_totient_form(primes) == molecule_count_direct(n)
    assert raises(NotSquarefreeError, molecule_count_squarefree, [2, 2])
    assert raises(NotPrimeError, molecule_count_squarefree, [2, 9])


def test_closed_dispatch():
    assert molecule_count_closed(1) == 1
    assert molecule_count_closed(125) == 324
    assert molecule_count_closed(30) == 104
    assert raises(ValueError, molecule_count_closed, 12)


def test_ordered_bell():
    assert [ordered_bell(m) for m in range(5)] == [1, 1, 3, 13, 75]
    for m in range(10, 17):
        approx = ordered_bell(m) * 2 * math.log(2) ** (m + 1) / math.factorial(m)
        assert 0.9 <= approx <= 1.1
    for m in range(7):
        partitions = ordered_set_partitions(m)
        assert len(partitions) == ordered_bell(m)
        assert len(set(partitions)) == len(partitions)
    assert raises(ValueError, ordered_bell, -1)


def bell_table_reference(m):
    table = [1]
    for j in range(1, m + 1):
        table.append(sum(math.comb(j, k) * table[j - k] for k in range(1, j + 1)))
    return table


def test_ordered_bell_threads():
    reference = bell_table_reference(304)
    interval = sys.getswitchinterval()
    sys.setswitchinterval(1e-6)
    try:
        for _ in range(5):
            del counting._bell_cache[1:]
            results = {}

            def worker(i):
                results[i] = ordered_bell(300 + i % 5)

            threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
            assert all(results[i] == reference[300 + i % 5] for i in range(8))
            assert counting._bell_cache == reference
    finally:
        sys.setswitchinterval(interval)


def test_total_component_count():
    assert total_component_count(1) == 1
    assert total_component_count(3) == 3
    assert total_component_count(6) == 27
    for n in range(1, 25):
        assert molecule_count_recursive(n) <= total_component_count(n)
        assert (molecule_count_recursive(n) == total_component_count(n)) == (n in (1, 2))


def test_asymptotic_ratio():
    assert asymptotic_ratio([]) == 1
    assert asymptotic_ratio([2, 3]) == Fraction(1, 3)
    assert asymptotic_ratio([2, 3, 5]) == Fraction(4, 15)
    ratios = [asymptotic_ratio(SMALL_PRIMES[:m]) for m in range(1, 8)]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    for m, ratio in enumerate(ratios, 1):
        assert ratio == math.prod(Fraction(p - 1, p) for p in SMALL_PRIMES[:m])


def test_budget():
    assert raises(BudgetExceededError, molecule_count_direct, 12, budget=5)
    assert molecule_count_direct(12, budget=8) == 22
    # the recursive method has no budget and stays exact for huge n
    assert molecule_count_recursive(2 ** 40) == 3 ** 39
    assert str(molecule_count_recursive(2 ** 40)) == str(3 ** 39)


def test_first_link_breakdown():
    split = molecule_count_by_first_link(12)
    assert split == {2: 6, 3: 6, 4: 4, 6: 2, 12: 4}
    assert sum(split.values()) == 22
    assert molecule_count_by_first_link(1) == {}


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name} passed")
