"""The 0/1 match matrices between gapped words (rows) and gap-free words (columns)."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .words import (
    GAP,
    AlphabetSpec,
    Word,
    enumerate_U,
    enumerate_V,
    index_map,
)


def _row_columns(spec: AlphabetSpec, v: Word) -> list[int]:
    # columns matching v, in increasing mixed-radix order
    idx = [0]
    for c, b in zip(v, spec.B):
        digits = range(b) if c == GAP else (c,)
        idx = [i * b + d for i in idx for d in digits]
    return idx


@dataclass(frozen=True)
class SparseIncidence:
    spec: AlphabetSpec
    k: int
    row_words: tuple[Word, ...]
    col_words: tuple[Word, ...]
    rows: tuple[tuple[int, ...], ...]
    _row_index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_row_index", index_map(self.row_words))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.col_words)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def row_of(self, w: Word) -> int:
        try:
            return self._row_index[tuple(w)]
        except KeyError:
            raise KeyError(f"{self.spec.format_word(w)} is not a row label") from None

    def to_dense(self, dtype=np.int64) -> np.ndarray:
        out = np.zeros(self.shape, dtype=dtype)
        for r, cols in enumerate(self.rows):
            out[r, list(cols)] = 1
        return out

    def apply(self, x):
        """y_v = sum of x_u over columns u matching row v."""
        if len(x) != len(self.col_words):
            raise ValueError(f"vector has length {len(x)}, expected {len(self.col_words)}")
        if isinstance(x, np.ndarray):
            return np.array([x[list(cols)].sum(axis=0) for cols in self.rows])
        return [sum((x[j] for j in cols), start=0) for cols in self.rows]

    def apply_transpose(self, y):
        if len(y) != len(self.rows):
            raise ValueError(f"vector has length {len(y)}, expected {len(self.rows)}")
        if isinstance(y, np.ndarray):
            out = np.zeros((len(self.col_words),) + y.shape[1:], dtype=np.result_type(y, np.int64))
            for r, cols in enumerate(self.rows):
                out[list(cols)] += y[r]
            return out
        acc = [0] * len(self.col_words)
        for r, cols in enumerate(self.rows):
            for j in cols:
                acc[j] += y[r]
        return acc

    def with_flipped_entry(self, row: int, col: int) -> "SparseIncidence":
        """Copy with one entry toggled; used as a negative control by the checks."""
        cols = set(self.rows[row])
        cols ^= {col}
        rows = list(self.rows)
        rows[row] = tuple(sorted(cols))
        return SparseIncidence(self.spec, self.k, self.row_words, self.col_words, tuple(rows))


@dataclass(frozen=True)
class StackedIncidence:
    blocks: tuple[SparseIncidence, ...]

    @property
    def spec(self) -> AlphabetSpec:
        return self.blocks[0].spec

    @property
    def row_words(self) -> tuple[Word, ...]:
        return tuple(w for blk in self.blocks for w in blk.row_words)

    @property
    def col_words(self) -> tuple[Word, ...]:
        return self.blocks[0].col_words

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r for blk in self.blocks for r in blk.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return sum(b.shape[0] for b in self.blocks), len(self.col_words)

    @property
    def nnz(self) -> int:
        return sum(b.nnz for b in self.blocks)

    def to_dense(self, dtype=np.int64) -> np.ndarray:
        return np.vstack([b.to_dense(dtype) for b in self.blocks])


def build_A(spec: AlphabetSpec, k: int) -> SparseIncidence:
    row_words = enumerate_V(spec, k)
    rows = tuple(tuple(_row_columns(spec, v)) for v in row_words)
    return SparseIncidence(spec, k, tuple(row_words), tuple(enumerate_U(spec)), rows)


def build_A_upto(spec: AlphabetSpec, k: int) -> StackedIncidence:
    if not 0 <= k <= spec.ell:
        raise ValueError(f"k must satisfy 0 <= k <= {spec.ell}, got {k}")
    return StackedIncidence(tuple(build_A(spec, i) for i in range(k + 1)))


def row_vector(A_upto: StackedIncidence, w: Word) -> list[int]:
    """The 0/1 row of the stacked matrix labelled by ``w``."""
    w = tuple(w)
    for blk in A_upto.blocks:
        if w in blk._row_index:
            cols = blk.rows[blk.row_of(w)]
            out = [0] * len(blk.col_words)
            for j in cols:
                out[j] = 1
            return out
    raise KeyError(f"{A_upto.spec.format_word(w)} is not a row label")


def to_matrix_market(A: SparseIncidence | StackedIncidence) -> str:
    rows, cols = A.rows, A.col_words
    out = io.StringIO()
    out.write("%%MatrixMarket matrix coordinate pattern general\n")
    out.write(f"{len(rows)} {len(cols)} {sum(len(r) for r in rows)}\n")
    for r, js in enumerate(rows, start=1):
        for j in js:
            out.write(f"{r} {j + 1}\n")
    return out.getvalue()


def to_csv(A: SparseIncidence | StackedIncidence) -> str:
    rows, row_words, col_words = A.rows, A.row_words, A.col_words
    spec = A.spec
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["word"] + [spec.format_word(u) for u in col_words])
    for v, js in zip(row_words, rows):
        line = [0] * len(col_words)
        for j in js:
            line[j] = 1
        writer.writerow([spec.format_word(v)] + line)
    return out.getvalue()


def gap_split_rows(A_upto: StackedIncidence, w: Word, pos: int) -> tuple[list[int], list[list[int]]]:
    """Row of ``w`` and the rows obtained by filling gap ``pos`` with each letter."""
    if w[pos] != GAP:
        raise ValueError(f"position {pos} of the word is not a gap")
    b = A_upto.spec.B[pos]
    fills = [w[:pos] + (c,) + w[pos + 1:] for c in range(b)]
    return row_vector(A_upto, w), [row_vector(A_upto, f) for f in fills]
