"""Slow, independent reference implementations used only by the tests."""

from functools import lru_cache


def count_partitions_dp(n: int) -> int:
    # coin-change count over part sizes 1..n
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def partitions_recursive(n: int, largest: int | None = None):
    """All partitions of n with parts <= largest, largest-first."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_recursive(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def p_dp(n: int) -> int:
    return count_partitions_dp(n)
