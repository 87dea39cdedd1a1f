from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from operator import mul
from typing import Iterator, List, Sequence, Tuple

from counting import (
    DEFAULT_BUDGET,
    BigCount,
    BudgetExceededError,
    check_positive,
    divisors,
    molecule_count_recursive,
)


@dataclass(frozen=True)
class RotationNumber:
    """Internal angle p/q at which a satellite is attached to its parent."""
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise ValueError(f"rotation number needs integers, got {self.p!r}/{self.q!r}")
        if self.q < 2 or not 0 < self.p < self.q or gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not a reduced fraction in (0, 1) with q >= 2")

    def conjugate(self) -> "RotationNumber":
        return RotationNumber(self.q - self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class SatelliteAddress:
    """Chain of rotation numbers read from the main cardioid outward.

    The empty chain is the main cardioid itself.
    """
    rotations: Tuple[RotationNumber, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rotations", tuple(self.rotations))

    @property
    def period(self) -> int:
        return address_period(self)

    def sort_key(self):
        return tuple(x for r in self.rotations for x in (r.q, r.p))

    def prefixes(self) -> List["SatelliteAddress"]:
        """Proper prefixes, shortest first, starting with the cardioid."""
        return [SatelliteAddress(self.rotations[:k]) for k in range(len(self.rotations))]

    def __len__(self):
        return len(self.rotations)

    def __str__(self):
        return "<" + ", ".join(str(r) for r in self.rotations) + ">"


def address_period(a: SatelliteAddress) -> int:
    return reduce(mul, (r.q for r in a.rotations), 1)


@lru_cache(maxsize=None)
def _rotations_with_denominator(q):
    return tuple(RotationNumber(p, q) for p in range(1, q) if gcd(p, q) == 1)


def _iter_addresses(n):
    if n == 1:
        yield ()
        return
    for q in divisors(n)[1:]:
        for r in _rotations_with_denominator(q):
            for rest in _iter_addresses(n // q):
                yield (r,) + rest


def iter_addresses(n: int, budget: int = DEFAULT_BUDGET) -> Iterator[SatelliteAddress]:
    check_positive(n)
    count = address_count(n)
    if budget is not None and count > budget:
        raise BudgetExceededError(f"n={n} has {count} molecule addresses, more than the budget of {budget}")
    return (SatelliteAddress(rotations) for rotations in _iter_addresses(n))


def enumerate_addresses(n: int, budget: int = DEFAULT_BUDGET) -> List[SatelliteAddress]:
    """One address per period-n component of the main molecule.

    Order is lexicographic in (q1, p1, q2, p2, ...).
    """
    return list(iter_addresses(n, budget=budget))


def address_count(n: int) -> BigCount:
    check_positive(n)
    return molecule_count_recursive(n)


def tune(outer: SatelliteAddress, inner: SatelliteAddress) -> SatelliteAddress:
    """Address of the image of `inner` under tuning by the component `outer`."""
    return SatelliteAddress(outer.rotations + inner.rotations)


def conjugate(a: SatelliteAddress) -> SatelliteAddress:
    return SatelliteAddress(tuple(r.conjugate() for r in a.rotations))


def address_to_json(a: SatelliteAddress) -> List[List[int]]:
    return [[r.p, r.q] for r in a.rotations]


def parse_address(data: Sequence[Sequence[int]]) -> SatelliteAddress:
    """Inverse of address_to_json: [[1, 2], [1, 3]] is <1/2, 1/3>."""
    rotations = []
    for pair in data:
        if len(pair) != 2:
            raise ValueError(f"rotation must be a [p, q] pair, got {pair!r}")
        rotations.append(RotationNumber(int(pair[0]), int(pair[1])))
    return SatelliteAddress(tuple(rotations))

