"""Dense exact rational matrices with word labels on both axes."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import flint
import numpy as np

from .words import Word


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, (int, np.integer)):
        return flint.fmpq(int(x))
    if isinstance(x, flint.fmpq):
        return x
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _fraction(q: flint.fmpq) -> Fraction:
    return Fraction(int(q.p), int(q.q))


class RationalMatrix:
    """An exact matrix of rationals.

    Arithmetic is delegated to FLINT's ``fmpq_mat``; entries come back out as
    :class:`fractions.Fraction`.
    """

    def __init__(self, mat: flint.fmpq_mat, row_labels: Sequence[Word], col_labels: Sequence[Word]):
        if (mat.nrows(), mat.ncols()) != (len(row_labels), len(col_labels)):
            raise ValueError(
                f"matrix is {mat.nrows()}x{mat.ncols()} but labels are "
                f"{len(row_labels)}x{len(col_labels)}"
            )
        self.mat = mat
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)

    @classmethod
    def from_rows(cls, rows, row_labels, col_labels) -> "RationalMatrix":
        nr, nc = len(row_labels), len(col_labels)
        flat = [_fmpq(x) for row in rows for x in row]
        if len(flat) != nr * nc:
            raise ValueError("entry count does not match labels")
        return cls(flint.fmpq_mat(nr, nc, flat), row_labels, col_labels)

    @classmethod
    def from_integer_array(cls, arr: np.ndarray, row_labels, col_labels) -> "RationalMatrix":
        nr, nc = arr.shape
        mat = flint.fmpq_mat(flint.fmpz_mat(nr, nc, [int(x) for x in arr.ravel()]))
        return cls(mat, row_labels, col_labels)

    @property
    def shape(self) -> tuple[int, int]:
        return self.mat.nrows(), self.mat.ncols()

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return _fraction(self.mat[ij])

    def entry(self, row: Word, col: Word) -> Fraction:
        return self[self.row_labels.index(tuple(row)), self.col_labels.index(tuple(col))]

    def rows(self) -> list[list[Fraction]]:
        nr, nc = self.shape
        return [[_fraction(self.mat[i, j]) for j in range(nc)] for i in range(nr)]

    def to_float(self) -> np.ndarray:
        nr, nc = self.shape
        out = np.empty((nr, nc))
        for i in range(nr):
            for j in range(nc):
                q = self.mat[i, j]
                out[i, j] = int(q.p) / int(q.q)
        return out

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.mat.transpose(), self.col_labels, self.row_labels)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return RationalMatrix(self.mat * other.mat, self.row_labels, other.col_labels)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self.mat - other.mat, self.row_labels, self.col_labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.mat == other.mat

    __hash__ = None

    def is_zero(self) -> bool:
        nr, nc = self.shape
        return self.mat == flint.fmpq_mat(nr, nc)

    def matvec(self, x: Sequence) -> list[Fraction]:
        nr, nc = self.shape
        if len(x) != nc:
            raise ValueError(f"vector has length {len(x)}, expected {nc}")
        col = flint.fmpq_mat(nc, 1, [_fmpq(v) for v in x])
        y = self.mat * col
        return [_fraction(y[i, 0]) for i in range(nr)]

    def row_sums(self) -> list[Fraction]:
        return self.matvec([1] * self.shape[1])

    def col_sums(self) -> list[Fraction]:
        return self.T.matvec([1] * self.shape[0])

    def rank(self) -> int:
        return self.mat.rank()

    def __repr__(self) -> str:
        return f"RationalMatrix({self.shape[0]}x{self.shape[1]})"
