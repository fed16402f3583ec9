"""Entries of the pseudo-inverse W = A^+ and of the filter H = W A.

Both depend on a pair of words only through the gap set of the row word and
the sets P (agreeing positions) and Q (disagreeing positions), so entry
evaluation is memoised on those sets.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache

from .incidence import build_A
from .ratmat import RationalMatrix
from .symfunc import elementary_symmetric
from .words import (
    AlphabetSpec,
    Word,
    agree_disagree,
    enumerate_U,
    enumerate_V,
    gap_set,
)

DEFAULT_MAX_ENTRIES = 10**6


class SizeLimitExceeded(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _esym_on(B: tuple[int, ...], order: int, G: frozenset[int]) -> int:
    return elementary_symmetric([B[i] for i in sorted(G)], order)


def _term(B, G, P, Q) -> int:
    sign = -1 if len(Q - G) % 2 else 1
    return sign * math.prod(B[i] - 1 for i in P - G)


@lru_cache(maxsize=None)
def _w_value(B: tuple[int, ...], k: int, Gv: frozenset, P: frozenset, Q: frozenset) -> Fraction:
    ell = len(B)
    free = [i for i in range(ell) if i not in Gv]
    total = Fraction(0)
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            G = Gv.union(extra)
            total += Fraction(_term(B, G, P, Q), _esym_on(B, ell - k, G))
    return total / math.prod(B[i] for i in free)


@lru_cache(maxsize=None)
def _h_value(B: tuple[int, ...], k: int, P: frozenset, Q: frozenset) -> Fraction:
    ell = len(B)
    total = 0
    for r in range(ell - k, ell + 1):
        for G in itertools.combinations(range(ell), r):
            total += _term(B, frozenset(G), P, Q)
    return Fraction(total, math.prod(B))


def _check_k(spec: AlphabetSpec, k: int) -> None:
    if not 0 <= k <= spec.ell:
        raise ValueError(f"k must satisfy 0 <= k <= {spec.ell}, got {k}")


def w_entry(spec: AlphabetSpec, k: int, u: Word, v: Word) -> Fraction:
    """W(u, v) for gap-free ``u`` and ``v`` with exactly ell - k gaps."""
    _check_k(spec, k)
    u = spec.check_word(u, gapped=False)
    v = spec.check_word(v)
    Gv = gap_set(v)
    if len(Gv) != spec.ell - k:
        raise ValueError(f"{spec.format_word(v)} does not have {spec.ell - k} gaps")
    P, Q = agree_disagree(u, v)
    return _w_value(spec.B, k, Gv, P, Q)


def h_entry(spec: AlphabetSpec, k: int, u: Word, w: Word) -> Fraction:
    _check_k(spec, k)
    u = spec.check_word(u, gapped=False)
    w = spec.check_word(w, gapped=False)
    P, Q = agree_disagree(u, w)
    return _h_value(spec.B, k, P, Q)


def _guard(n_entries: int, max_entries: int | None) -> None:
    if max_entries is not None and n_entries > max_entries:
        raise SizeLimitExceeded(
            f"refusing to materialise {n_entries} entries (limit {max_entries})"
        )


def w_matrix(spec: AlphabetSpec, k: int, max_entries: int | None = DEFAULT_MAX_ENTRIES) -> RationalMatrix:
    """W as an exact matrix: rows are gap-free words, columns are gapped words."""
    _check_k(spec, k)
    U, V = enumerate_U(spec), enumerate_V(spec, k)
    _guard(len(U) * len(V), max_entries)
    gaps = [gap_set(v) for v in V]
    rows = []
    for u in U:
        rows.append([_w_value(spec.B, k, g, *agree_disagree(u, v)) for v, g in zip(V, gaps)])
    return RationalMatrix.from_rows(rows, U, V)


def h_matrix(spec: AlphabetSpec, k: int, max_entries: int | None = DEFAULT_MAX_ENTRIES) -> RationalMatrix:
    _check_k(spec, k)
    U = enumerate_U(spec)
    _guard(len(U) ** 2, max_entries)
    rows = [[_h_value(spec.B, k, *agree_disagree(u, w)) for w in U] for u in U]
    return RationalMatrix.from_rows(rows, U, U)


def estimate_counts(spec: AlphabetSpec, k: int, raw: Sequence[int], mode: str = "project") -> list[Fraction]:
    """Filtered l-mer counts from raw counts in canonical column order.

    ``project`` applies H to the raw counts; ``from_gapped`` first collapses
    them to gapped k-mer counts c = A raw and returns W c. Only nonzero inputs
    are visited, so neither matrix is materialised.
    """
    _check_k(spec, k)
    U = enumerate_U(spec)
    if len(raw) != len(U):
        raise ValueError(f"count vector has length {len(raw)}, expected {len(U)}")
    B = spec.B
    if mode == "project":
        support = [(w, c) for w, c in zip(U, raw) if c]
        return [
            sum((_h_value(B, k, *agree_disagree(u, w)) * c for w, c in support), start=Fraction(0))
            for u in U
        ]
    if mode == "from_gapped":
        A = build_A(spec, k)
        gapped = A.apply(list(raw))
        support = [(v, gap_set(v), c) for v, c in zip(A.row_words, gapped) if c]
        return [
            sum((_w_value(B, k, g, *agree_disagree(u, v)) * c for v, g, c in support), start=Fraction(0))
            for u in U
        ]
    raise ValueError(f"unknown mode {mode!r}; expected 'project' or 'from_gapped'")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def format_decimal(q: Fraction, digits: int = 12) -> str:
    """Fixed-point rendering with round-half-even, computed in integers."""
    q = Fraction(q)
    scaled, rem = divmod(abs(q.numerator) * 10**digits, q.denominator)
    if 2 * rem > q.denominator or (2 * rem == q.denominator and scaled % 2):
        scaled += 1
    neg = q < 0 and scaled != 0
    whole, frac = divmod(scaled, 10**digits)
    body = f"{whole}.{frac:0{digits}d}" if digits > 0 else str(whole)
    return ("-" if neg else "") + body


def matrix_csv(M: RationalMatrix, spec: AlphabetSpec, exact: bool = True, digits: int = 12) -> str:
    """CSV with word labels, a trailing row_sum column and a col_sum footer."""
    fmt = format_rational if exact else (lambda q: format_decimal(q, digits))
    rows = M.rows()
    col_sums = M.col_sums()
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["word"] + [spec.format_word(c) for c in M.col_labels] + ["row_sum"])
    for label, row in zip(M.row_labels, rows):
        writer.writerow([spec.format_word(label)] + [fmt(q) for q in row] + [fmt(sum(row, Fraction(0)))])
    writer.writerow(["col_sum"] + [fmt(q) for q in col_sums] + [fmt(sum(col_sums, Fraction(0)))])
    return out.getvalue()

