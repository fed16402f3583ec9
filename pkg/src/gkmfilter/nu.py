"""The function nu_B on pairs of (possibly gapped) words, and its identities.

Each position carries the total order 0 < 1 < ... < b-1 < gap; nu_B is the
product of the per-position values

    nu_i(g, g) = -b_i,  nu_i(x, x) = -x,  nu_i(x, y) = 1 if x < y,  0 if x > y.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np

from .words import GAP, AlphabetSpec, Word, agree_disagree, gap_set


def _rank(c: int, b: int) -> int:
    # position of a symbol in the per-position order, gap last
    return b if c == GAP else c


def nu_pos(spec: AlphabetSpec, i: int, x: int, y: int) -> int:
    b = spec.B[i]
    for c in (x, y):
        if c != GAP and not 0 <= c < b:
            raise ValueError(f"position {i}: letter {c} out of range 0..{b - 1}")
    rx, ry = _rank(x, b), _rank(y, b)
    if rx == ry:
        return -b if x == GAP else -x
    return 1 if rx < ry else 0


def nu_B(spec: AlphabetSpec, v1: Word, v2: Word) -> int:
    out = 1
    for i, (x, y) in enumerate(zip(v1, v2)):
        out *= nu_pos(spec, i, x, y)
        if out == 0:
            return 0
    return out


def nu_table(b: int) -> np.ndarray:
    """(b+1) x (b+1) table of nu_i indexed by rank (gap has rank b)."""
    t = np.zeros((b + 1, b + 1), dtype=np.int64)
    for x in range(b + 1):
        for y in range(b + 1):
            if x == y:
                t[x, y] = -b if x == b else -x
            elif x < y:
                t[x, y] = 1
    return t


def symbol_ranks(spec: AlphabetSpec, words: Sequence[Word]) -> np.ndarray:
    """Words as an int array with gaps replaced by their rank b_i."""
    arr = np.array(words, dtype=np.int64).reshape(len(words), spec.ell)
    B = np.array(spec.B, dtype=np.int64)
    return np.where(arr == GAP, B, arr)


def nu_matrix(spec: AlphabetSpec, rows: Sequence[Word], cols: Sequence[Word]) -> np.ndarray:
    """Integer matrix M[r, c] = nu_B(rows[r], cols[c]).

    Entries are bounded by prod(B) in absolute value, so int64 is exact at
    any size where the dense matrix fits in memory.
    """
    R, C = symbol_ranks(spec, rows), symbol_ranks(spec, cols)
    out = np.ones((len(rows), len(cols)), dtype=np.int64)
    for i, b in enumerate(spec.B):
        out *= nu_table(b)[R[:, i][:, None], C[:, i][None, :]]
    return out


def precedes(spec: AlphabetSpec, x: Word, y: Word) -> bool:
    """Product order on words: x <= y at every position (gap is the maximum)."""
    return all(_rank(a, b) <= _rank(c, b) for a, c, b in zip(x, y, spec.B))


def interval(spec: AlphabetSpec, x: Word, y: Word) -> Iterable[Word]:
    """All z with x <= z <= y, by iterating per-position ranges."""
    ranges = []
    for a, c, b in zip(x, y, spec.B):
        lo, hi = _rank(a, b), _rank(c, b)
        ranges.append([GAP if r == b else r for r in range(lo, hi + 1)])
    return itertools.product(*ranges)


def mobius_interval_sum(spec: AlphabetSpec, v1: Word, v2: Word) -> int:
    """Sum of nu_B(v1, z) over the interval [v1, v2], by enumeration."""
    return sum(nu_B(spec, v1, z) for z in interval(spec, v1, v2))


def mobius_closed_form(spec: AlphabetSpec, v1: Word, v2: Word) -> int:
    if not precedes(spec, v1, v2):
        return 0
    return math.prod(_rank(c, b) - 2 * _rank(a, b) for a, c, b in zip(v1, v2, spec.B))


def phi(spec: AlphabetSpec, i: int, u: Word, v: Word) -> Fraction:
    """sum_{j=max(1, v_i)}^{b_i - 1} nu_i(v_i, j) nu_i(u_i, j) / (j (j + 1))."""
    if GAP in u:
        raise ValueError("u must be gap-free")
    if v[i] == GAP:
        raise ValueError(f"phi is undefined at gapped position {i}")
    total = Fraction(0)
    for j in range(max(1, v[i]), spec.B[i]):
        total += Fraction(nu_pos(spec, i, v[i], j) * nu_pos(spec, i, u[i], j), j * (j + 1))
    return total


def weighted_pair_sum(spec: AlphabetSpec, u: Word, v: Word, G: Iterable[int]) -> Fraction:
    """Closed form of sum_{v' in Gamma_B, gaps(v') = G} nu(v, v') nu(u, v') / prod(v'_i + v'_i^2).

    Requires the gaps of ``v`` to lie inside ``G``.
    """
    G = frozenset(G)
    Gv = gap_set(v)
    if not Gv <= G:
        raise ValueError("gap set of v must be contained in G")
    P, Q = agree_disagree(u, v)
    num = (-1) ** (len(Q - G) + len(Gv))
    num *= math.prod(spec.B[i] for i in Gv)
    num *= math.prod(spec.B[i] - 1 for i in P - G)
    den = math.prod(b for i, b in enumerate(spec.B) if i not in G)
    return Fraction(num, den)


def weighted_pair_sum_direct(spec: AlphabetSpec, u: Word, v: Word, G: Iterable[int]) -> Fraction:
    """Same sum as :func:`weighted_pair_sum`, by enumerating the words v'."""
    G = frozenset(G)
    ranges = [(GAP,) if i in G else range(1, b) for i, b in enumerate(spec.B)]
    total = Fraction(0)
    for vp in itertools.product(*ranges):
        weight = math.prod(c + c * c for c in vp if c != GAP)
        total += Fraction(nu_B(spec, v, vp) * nu_B(spec, u, vp), weight)
    return total
