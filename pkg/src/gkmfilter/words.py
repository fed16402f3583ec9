"""Words over a heterogeneous alphabet, with or without gaps.

A word is a plain tuple of ints of length ell. Entry i is either a letter
``0 <= c < B[i]`` or the sentinel :data:`GAP`. Positions are 0-based
throughout the package.

Canonical orders
----------------
* Gap-free words (the column index set) are in mixed-radix order, i.e.
  ``index(u) = sum_i u_i * prod_{j>i} B[j]``.
* Gapped word lists (``enumerate_V``, ``enumerate_Vprime``) are ordered by
  the set of non-gap positions (lexicographic over sorted index tuples, which
  is the same as ordering the gap indicator vectors lexicographically), then
  by the mixed-radix order of the non-gap letters.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

GAP = -1
GAP_GLYPH = "-"
GAP_ALIAS = "g"  # also read as a gap wherever it is not a symbol name
SEPARATOR = "|"

Word = tuple[int, ...]


@dataclass(frozen=True)
class AlphabetSpec:
    """Per-position alphabet sizes ``B`` plus optional symbol names."""

    B: tuple[int, ...]
    symbols: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        B = tuple(int(b) for b in self.B)
        object.__setattr__(self, "B", B)
        if len(B) == 0:
            raise ValueError("alphabet needs at least one position")
        for i, b in enumerate(B):
            if b < 2:
                raise ValueError(f"position {i}: alphabet size must be >= 2, got {b}")
        if self.symbols is not None:
            tables = tuple(tuple(str(s) for s in t) for t in self.symbols)
            if len(tables) != len(B):
                raise ValueError(f"expected {len(B)} symbol tables, got {len(tables)}")
            for i, (t, b) in enumerate(zip(tables, B)):
                if len(t) != b:
                    raise ValueError(f"position {i}: symbol table has {len(t)} names, expected {b}")
                if len(set(t)) != b:
                    raise ValueError(f"position {i}: symbol names are not distinct")
                for s in t:
                    if not s or s == GAP_GLYPH or SEPARATOR in s or s.strip() != s:
                        raise ValueError(f"position {i}: invalid symbol name {s!r}")
            object.__setattr__(self, "symbols", tables)

    @property
    def ell(self) -> int:
        return len(self.B)

    @property
    def size(self) -> int:
        """Number of gap-free words, prod(B)."""
        return math.prod(self.B)

    def table(self, i: int) -> tuple[str, ...]:
        if self.symbols is not None:
            return self.symbols[i]
        return tuple(str(c) for c in range(self.B[i]))

    @property
    def uses_separator(self) -> bool:
        return any(len(s) > 1 for i in range(self.ell) for s in self.table(i))

    def check_word(self, w: Sequence[int], gapped: bool = True) -> Word:
        w = tuple(w)
        if len(w) != self.ell:
            raise ValueError(f"word {w} has length {len(w)}, expected {self.ell}")
        for i, (c, b) in enumerate(zip(w, self.B)):
            if c == GAP:
                if not gapped:
                    raise ValueError(f"word {self.format_word(w)} must be gap-free")
            elif not 0 <= c < b:
                raise ValueError(f"position {i}: letter {c} out of range 0..{b - 1}")
        return w

    def format_word(self, w: Sequence[int]) -> str:
        parts = [GAP_GLYPH if c == GAP else self.table(i)[c] for i, c in enumerate(w)]
        return (SEPARATOR if self.uses_separator else "").join(parts)

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if SEPARATOR in text:
            parts = [p.strip() for p in text.split(SEPARATOR)]
        else:
            parts = list(text)
        if len(parts) != self.ell:
            raise ValueError(f"cannot parse {text!r}: expected {self.ell} symbols, got {len(parts)}")
        w = []
        for i, p in enumerate(parts):
            if p == GAP_GLYPH or (p == GAP_ALIAS and p not in self.table(i)):
                w.append(GAP)
                continue
            try:
                w.append(self.table(i).index(p))
            except ValueError:
                raise ValueError(f"cannot parse {text!r}: unknown symbol {p!r} at position {i}") from None
        return tuple(w)


def is_gap_free(w: Word) -> bool:
    return GAP not in w


def n_gaps(w: Word) -> int:
    return sum(1 for c in w if c == GAP)


def _check_order(spec: AlphabetSpec, k: int) -> None:
    if not 0 <= k <= spec.ell:
        raise ValueError(f"k must satisfy 0 <= k <= {spec.ell}, got {k}")


def enumerate_U(spec: AlphabetSpec) -> list[Word]:
    return list(itertools.product(*(range(b) for b in spec.B)))


def u_index(spec: AlphabetSpec, u: Word) -> int:
    """Mixed-radix index of a gap-free word."""
    idx = 0
    for c, b in zip(u, spec.B):
        idx = idx * b + c
    return idx


def _gapped_words(spec: AlphabetSpec, k: int, lo: int) -> Iterator[Word]:
    ell = spec.ell
    for keep in itertools.combinations(range(ell), k):
        ranges = [range(lo, spec.B[i]) for i in keep]
        for letters in itertools.product(*ranges):
            w = [GAP] * ell
            for i, c in zip(keep, letters):
                w[i] = c
            yield tuple(w)


def enumerate_V(spec: AlphabetSpec, k: int) -> list[Word]:
    """Words with exactly ``ell - k`` gaps, in canonical row order."""
    _check_order(spec, k)
    return list(_gapped_words(spec, k, 0))


def enumerate_Vprime(spec: AlphabetSpec, n: int) -> list[Word]:
    """Words with ``ell - n`` gaps and only nonzero letters."""
    _check_order(spec, n)
    return list(_gapped_words(spec, n, 1))


def enumerate_Vprime_upto(spec: AlphabetSpec, k: int) -> list[Word]:
    _check_order(spec, k)
    return [w for n in range(k + 1) for w in _gapped_words(spec, n, 1)]


def enumerate_Gamma(spec: AlphabetSpec) -> list[Word]:
    """All nonzero-letter words (gaps allowed), grouped by number of letters."""
    return enumerate_Vprime_upto(spec, spec.ell)


def enumerate_Delta(spec: AlphabetSpec) -> list[Word]:
    """Every word, gapped or not, in plain product order (gap last)."""
    return list(itertools.product(*(list(range(b)) + [GAP] for b in spec.B)))


def index_map(words: Iterable[Word]) -> dict[Word, int]:
    return {w: i for i, w in enumerate(words)}


def matches(u: Word, v: Word) -> bool:
    """True when every non-gap position of ``v`` agrees with gap-free ``u``."""
    if GAP in u:
        raise ValueError("first argument must be gap-free")
    return all(c == GAP or c == d for c, d in zip(v, u))


def match_set_M(spec: AlphabetSpec, u: Word, k: int) -> list[Word]:
    """Rows of A(k) matching ``u``: keep any k positions of ``u``, gap the rest."""
    u = spec.check_word(u, gapped=False)
    _check_order(spec, k)
    out = []
    for keep in itertools.combinations(range(spec.ell), k):
        w = [GAP] * spec.ell
        for i in keep:
            w[i] = u[i]
        out.append(tuple(w))
    return out


def match_set_N(spec: AlphabetSpec, v: Word) -> list[Word]:
    """Gap-free words matching ``v``, in mixed-radix order."""
    v = spec.check_word(v)
    ranges = [range(b) if c == GAP else (c,) for c, b in zip(v, spec.B)]
    return list(itertools.product(*ranges))


def gap_set(v: Word) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(v) if c == GAP)


def nongap_set(v: Word) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(v) if c != GAP)


def restrict_B(spec: AlphabetSpec, X: Iterable[int]) -> tuple[int, ...]:
    return tuple(spec.B[i] for i in sorted(X))


def agree_disagree(u: Word, v: Word) -> tuple[frozenset[int], frozenset[int]]:
    """Return (P, Q): non-gap positions of ``v`` that agree / disagree with ``u``."""
    if GAP in u:
        raise ValueError("first argument must be gap-free")
    P = frozenset(i for i, (a, c) in enumerate(zip(u, v)) if c != GAP and c == a)
    Q = frozenset(i for i, (a, c) in enumerate(zip(u, v)) if c != GAP and c != a)
    return P, Q


def gap_partition(v1: Word, v2: Word) -> tuple[frozenset[int], ...]:
    """Split positions into (both gapped, only v1 gapped, only v2 gapped, neither)."""
    g1, g2 = gap_set(v1), gap_set(v2)
    everything = frozenset(range(len(v1)))
    return g1 & g2, g1 - g2, g2 - g1, (everything - g1) & (everything - g2)
