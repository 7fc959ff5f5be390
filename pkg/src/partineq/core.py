"""Exact partition numbers, enumeration of P(n) and the multiplicative extension p(mu).

``p(n)`` is computed from Euler's pentagonal number recurrence

    p(n) = sum_{k >= 1} (-1)^(k+1) [ p(n - k(3k-1)/2) + p(n - k(3k+1)/2) ]

over an append-only memo table, with ``p(0) = 1``.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Raised by :func:`parse_partition` for a malformed partition string."""

    def __init__(self, message: str, position: int, token: str):
        super().__init__(f"{message} (token {position}: {token!r})")
        self.position = position
        self.token = token


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts.

    Construct with :meth:`of` to canonicalize arbitrary part order; the plain
    constructor validates but does not sort.
    """

    parts: tuple[int, ...] = ()
    weight: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        for i, x in enumerate(parts):
            if not isinstance(x, int) or isinstance(x, bool) or x < 1:
                raise ValueError(f"part {i} is not a positive integer: {x!r}")
            if i and parts[i - 1] < x:
                raise ValueError(f"parts are not weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weight", sum(parts))

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(sorted(parts, reverse=True)))

    def multiplicity(self, j: int) -> int:
        return self.parts.count(j)

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __add__(self, other: "Partition") -> "Partition":
        # multiset union (concatenation of parts)
        return Partition.of(self.parts + tuple(other))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


class PartitionTable:
    """Append-only memo of exact partition numbers ``p(0), p(1), ...``.

    Reads never block; extension is serialized by a lock, so concurrent
    callers always observe a consistent prefix.
    """

    def __init__(self) -> None:
        self._values: list[int] = [1]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        if n >= len(self._values):
            self.extend_to(n)
        return self._values[n]

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(self._values)

    def extend_to(self, n: int) -> None:
        with self._lock:
            vals = self._values
            for m in range(len(vals), n + 1):
                total = 0
                k = 1
                while True:
                    g1 = k * (3 * k - 1) // 2
                    if g1 > m:
                        break
                    term = vals[m - g1]
                    g2 = g1 + k
                    if g2 <= m:
                        term += vals[m - g2]
                    total += term if k & 1 else -term
                    k += 1
                vals.append(total)


_DEFAULT_TABLE = PartitionTable()


def default_table() -> PartitionTable:
    return _DEFAULT_TABLE


def p_exact(n: int, table: PartitionTable | None = None) -> int:
    """Number of partitions of ``n`` (``p(0) == 1``)."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"p_exact needs a nonnegative integer, got {n!r}")
    table = _DEFAULT_TABLE if table is None else table
    try:
        return table[n]
    except MemoryError as exc:
        raise MemoryError(f"cannot tabulate p(n) up to n={n}") from exc


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, in reverse lexicographic order.

    ``(n)`` comes first and ``(1,)*n`` last; ``n == 0`` yields the empty
    partition only.
    """
    for parts in partition_tuples(n):
        yield Partition(parts)


def partition_tuples(n: int) -> Iterator[tuple[int, ...]]:
    """Same stream as :func:`enumerate_partitions`, as bare tuples."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        yield ()
        return
    # successor: decrement the rightmost part > 1, refill greedily
    parts = [n]
    while True:
        yield tuple(parts)
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        k = parts.pop() - 1
        rest = ones + 1
        parts.append(k)
        while rest > k:
            parts.append(k)
            rest -= k
        if rest:
            parts.append(rest)


def p_extended(mu: Partition | Sequence[int], table: PartitionTable | None = None) -> int:
    """``p(mu) = prod p(mu_j)``; the empty partition gives 1."""
    table = _DEFAULT_TABLE if table is None else table
    return prod(p_exact(x, table) for x in mu)


def parse_partition(text: str) -> Partition:
    """Parse ``"4,4,3"`` (any order) into a canonical :class:`Partition`.

    An empty or all-blank string is the empty partition.
    """
    if not text.strip():
        return Partition()
    parts = []
    for pos, tok in enumerate(text.split(",")):
        tok = tok.strip()
        try:
            x = int(tok)
        except ValueError:
            raise ParseError("not an integer", pos, tok) from None
        if x < 1:
            raise ParseError("parts must be positive", pos, tok)
        parts.append(x)
    return Partition.of(parts)


def format_partition(mu: Partition) -> str:
    return ",".join(map(str, mu.parts))
