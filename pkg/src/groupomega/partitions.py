"""Integer partitions: exact counts, enumeration and hook lengths."""

from __future__ import annotations

import math
from typing import Iterator

_counts = [1]


def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence (exact, memoized)."""
    if n < 0:
        return 0
    while len(_counts) <= n:
        m = len(_counts)
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * _counts[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * _counts[m - g2]
            k += 1
        _counts.append(total)
    return _counts[n]


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as nonincreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def conjugate(shape: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(1 for row in shape if row > j) for j in range(shape[0])) if shape else ()


def hook_lengths(shape: tuple[int, ...]) -> list[int]:
    cols = conjugate(shape)
    return [shape[i] - j + cols[j] - i - 1 for i in range(len(shape)) for j in range(shape[i])]


def hook_dimension(shape: tuple[int, ...]) -> int:
    """Number of standard tableaux of the shape: n! / prod(hooks)."""
    return math.factorial(sum(shape)) // math.prod(hook_lengths(shape))
