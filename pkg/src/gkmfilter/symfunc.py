"""Elementary symmetric polynomials evaluated at integer points."""

from __future__ import annotations

from collections.abc import Sequence


def elementary_symmetric(xs: Sequence[int], i: int) -> int:
    """Return S_i(xs), the sum over all i-subsets of products of their elements.

    Uses the prefix recurrence e_j <- e_j + x * e_{j-1}, so the cost is
    O(n * i) big-integer operations. S_0 is 1 and S_i is 0 for i > len(xs).
    """
    if i < 0:
        raise ValueError(f"order must be nonnegative, got {i}")
    n = len(xs)
    if i > n:
        return 0
    e = [1] + [0] * i
    for m, x in enumerate(xs, start=1):
        for j in range(min(m, i), 0, -1):
            e[j] += x * e[j - 1]
    return e[i]


def elementary_symmetric_all(xs: Sequence[int]) -> list[int]:
    """All of S_0..S_n at once, i.e. the coefficients of prod(1 + x t)."""
    e = [1] + [0] * len(xs)
    for m, x in enumerate(xs, start=1):
        for j in range(m, 0, -1):
            e[j] += x * e[j - 1]
    return e


def shifted_seq(xs: Sequence[int], delta: int) -> tuple[int, ...]:
    return tuple(x + delta for x in xs)


def r_poly(xs: Sequence[int], i: int) -> int:
    """R_i(X) = sum_{j<=i} S_j(X - 1)."""
    if i < 0:
        raise ValueError(f"order must be nonnegative, got {i}")
    e = elementary_symmetric_all(shifted_seq(xs, -1))
    return sum(e[: i + 1])
