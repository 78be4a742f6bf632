"""Integer partitions viewed as cycle types.

A partition is a plain tuple of positive ints in non-increasing order, so it
can be used directly as a dict key or set member.
"""

from __future__ import annotations

import enum
from collections import Counter
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Iterator, NamedTuple

Partition = tuple[int, ...]


class SplitAction(str, enum.Enum):
    """Effect of a power map on the pair of halves of a split class."""

    IDENTITY = "identity"
    EXCHANGE = "exchange"

    def compose(self, other: "SplitAction") -> "SplitAction":
        if self is other:
            return SplitAction.IDENTITY
        return SplitAction.EXCHANGE


def make_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in parts):
        raise ValueError(f"partition parts must be positive, got {parts}")
    return parts


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, sorted lexicographically (identity type first)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_partitions_cached(n))


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(sorted(_gen(n, n)))


def _gen(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _gen(n - first, first):
            yield (first,) + rest


def partition_power(p: Partition, r: int) -> Partition:
    """Cycle type of x**r when x has cycle type p.

    A cycle of length l raised to the r-th power breaks into gcd(r, l)
    cycles of length l / gcd(r, l); r = 0 gives the identity type.
    """
    if r < 0:
        raise ValueError("exponent must be non-negative")
    out: list[int] = []
    for part in p:
        g = gcd(r, part)  # gcd(0, l) = l
        out.extend([part // g] * g)
    return tuple(sorted(out, reverse=True))


def partition_order(p: Partition) -> int:
    return lcm(*p) if p else 1


def parity_is_even(p: Partition) -> bool:
    """True when the permutations of type p are even."""
    return sum(1 for part in p if part % 2 == 0) % 2 == 0


def is_square_sn(p: Partition) -> bool:
    """Whether a permutation of type p is a square in S_n.

    Odd cycles square to cycles of the same length and a 2k-cycle squares to
    a pair of k-cycles, so p is a square iff every even part has even
    multiplicity.
    """
    counts = Counter(p)
    return all(m % 2 == 0 for part, m in counts.items() if part % 2 == 0)


def _is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def enum_p2star(n: int) -> set[Partition]:
    """Partitions of n whose order is 2**k with k >= 1."""
    return {
        p for p in partitions_of(n)
        if all(_is_power_of_two(part) for part in p) and p[0] > 1
    }


def enum_p2star_odd(n: int) -> set[Partition]:
    """Members of enum_p2star(n) with some part > 1 of odd multiplicity."""
    out = set()
    for p in enum_p2star(n):
        counts = Counter(p)
        if any(m % 2 == 1 for part, m in counts.items() if part > 1):
            out.add(p)
    return out


def enum_p2star_odd_bar(n: int) -> set[Partition]:
    """The even-permutation members of enum_p2star_odd(n)."""
    return {p for p in enum_p2star_odd(n) if parity_is_even(p)}


def is_split_type(p: Partition) -> bool:
    """True iff the S_n class of type p breaks into two A_n classes.

    The partition has to be even; then the class splits exactly when all
    parts are odd and pairwise distinct.
    """
    if not parity_is_even(p):
        raise ValueError(f"{list(p)} is an odd permutation type, not in A_n")
    return all(part % 2 == 1 for part in p) and len(set(p)) == len(p)


def split_square_sign(p: Partition) -> SplitAction:
    """Action of squaring on the two halves of a split class of type p.

    With parts 2*m_i + 1, squaring fixes the halves iff
    sum(m_i * (m_i + 1) / 2) is even.
    """
    if not is_split_type(p):
        raise ValueError(f"{list(p)} does not split in A_n")
    m = sum(((part - 1) // 2) * ((part + 1) // 2) // 2 for part in p)
    return SplitAction.IDENTITY if m % 2 == 0 else SplitAction.EXCHANGE


class ThreeAdic(NamedTuple):
    exponents: tuple[int, ...]

    @property
    def exponent_sum(self) -> int:
        return sum(self.exponents)

    @property
    def odd(self) -> bool:
        return self.exponent_sum % 2 == 1


def three_adic_decomposition(n: int) -> ThreeAdic | None:
    """Write n as a sum of distinct powers of 3, if possible.

    Returns the increasing exponent list, or None when some base-3 digit of
    n equals 2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    exps = []
    k = 0
    while n:
        n, digit = divmod(n, 3)
        if digit == 2:
            return None
        if digit == 1:
            exps.append(k)
        k += 1
    return ThreeAdic(tuple(exps))


def three_power_partition(n: int) -> Partition | None:
    """The partition of n into distinct powers of 3, if it exists."""
    dec = three_adic_decomposition(n)
    if dec is None:
        return None
    return make_partition(3**k for k in dec.exponents)


def to_json(p: Partition) -> list[int]:
    return list(p)


def from_json(data: Iterable[int]) -> Partition:
    return make_partition(data)
