"""Closed-form eigen-structure of A^T A and A A^T.

For every label v' (a word with nonzero letters and any gaps) there is a pair
of integer vectors

    x_{v'}(w) = (-1)^(ell-k) nu_B(w, v')   over the rows of A,
    z_{v'}(u) = nu_B(u, v')                over the columns of A,

with A z = x and A^T x = lambda z, where lambda = S_{ell-k}(B restricted to
the gaps of v'). The z vectors form a complete orthogonal eigenbasis of A^T A;
the x vectors with lambda > 0 span the nonzero eigenspaces of A A^T.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass

import flint
import numpy as np

from .incidence import build_A, build_A_upto, row_vector
from .nu import nu_matrix
from .ratmat import RationalMatrix
from .symfunc import elementary_symmetric
from .words import (
    GAP,
    AlphabetSpec,
    Word,
    enumerate_Gamma,
    enumerate_U,
    enumerate_V,
    enumerate_Vprime,
    enumerate_Vprime_upto,
    gap_set,
    restrict_B,
)


@dataclass(frozen=True)
class EigenPair:
    label: Word
    n: int
    eigenvalue: int
    x_vec: np.ndarray
    z_vec: np.ndarray
    sq_norm_x: int
    sq_norm_z: int


@dataclass(frozen=True)
class SpectralSystem:
    spec: AlphabetSpec
    k: int
    pairs: tuple[EigenPair, ...]
    X: np.ndarray  # rows of A x labels
    Z: np.ndarray  # columns of A x labels

    @property
    def nonzero_count(self) -> int:
        return sum(1 for p in self.pairs if p.eigenvalue > 0)

    @property
    def labels(self) -> tuple[Word, ...]:
        return tuple(p.label for p in self.pairs)


@dataclass(frozen=True)
class ReducedSVD:
    labels: tuple[Word, ...]
    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray


def _check_k(spec: AlphabetSpec, k: int) -> None:
    if not 0 <= k <= spec.ell:
        raise ValueError(f"k must satisfy 0 <= k <= {spec.ell}, got {k}")


def _check_label(spec: AlphabetSpec, vp: Word) -> Word:
    vp = spec.check_word(vp)
    if 0 in vp:
        raise ValueError(f"{spec.format_word(vp)} has a zero letter; eigen labels use letters >= 1")
    return vp


def eigenvalue_of(spec: AlphabetSpec, k: int, vp: Word) -> int:
    _check_k(spec, k)
    vp = _check_label(spec, vp)
    return elementary_symmetric(restrict_B(spec, gap_set(vp)), spec.ell - k)


def _letter_weight(vp: Word) -> int:
    return math.prod(c + c * c for c in vp if c != GAP)


def sq_norm_x(spec: AlphabetSpec, k: int, vp: Word) -> int:
    G = gap_set(vp)
    return (
        elementary_symmetric(restrict_B(spec, G), spec.ell - k)
        * _letter_weight(vp)
        * math.prod(spec.B[i] for i in G)
    )


def build_spectral_system(spec: AlphabetSpec, k: int) -> SpectralSystem:
    _check_k(spec, k)
    labels = enumerate_Gamma(spec)
    sign = -1 if (spec.ell - k) % 2 else 1
    X = sign * nu_matrix(spec, enumerate_V(spec, k), labels)
    Z = nu_matrix(spec, enumerate_U(spec), labels)
    pairs = []
    for c, vp in enumerate(labels):
        pairs.append(EigenPair(
            label=vp,
            n=spec.ell - len(gap_set(vp)),
            eigenvalue=eigenvalue_of(spec, k, vp),
            x_vec=X[:, c],
            z_vec=Z[:, c],
            sq_norm_x=sq_norm_x(spec, k, vp),
            sq_norm_z=sq_norm_x(spec, spec.ell, vp),
        ))
    return SpectralSystem(spec, k, tuple(pairs), X, Z)


def null_space_basis(spec: AlphabetSpec, k: int) -> list[list[int]]:
    _check_k(spec, k)
    labels = [vp for n in range(k + 1, spec.ell + 1) for vp in enumerate_Vprime(spec, n)]
    if not labels:
        return []
    Z = nu_matrix(spec, enumerate_U(spec), labels)
    return [[int(v) for v in Z[:, c]] for c in range(len(labels))]


def row_space_basis(spec: AlphabetSpec, k: int) -> list[tuple[Word, list[int]]]:
    A_upto = build_A_upto(spec, k)
    return [(w, row_vector(A_upto, w)) for w in enumerate_Vprime_upto(spec, k)]


def reduced_svd(spec: AlphabetSpec, k: int, system: SpectralSystem | None = None) -> ReducedSVD:
    """Unit-norm reduced SVD, sorted by decreasing singular value.

    Left vectors are x/|x|, right vectors z/|z|, and sigma = |x|/|z|, which
    squares to the eigenvalue. Ties keep the canonical label order.
    """
    system = system or build_spectral_system(spec, k)
    A = build_A(spec, k)
    kept = [p for p in system.pairs if p.eigenvalue > 0]
    kept.sort(key=lambda p: -p.eigenvalue)
    Ucols, Vcols, sigma = [], [], []
    for p in kept:
        if p.sq_norm_x != p.eigenvalue * p.sq_norm_z:
            raise ArithmeticError(f"norm mismatch for {spec.format_word(p.label)}")
        if not np.array_equal(A.apply(p.z_vec), p.x_vec):
            raise ArithmeticError(f"A z != x for {spec.format_word(p.label)}")
        Ucols.append(p.x_vec / math.sqrt(p.sq_norm_x))
        Vcols.append(p.z_vec / math.sqrt(p.sq_norm_z))
        sigma.append(math.sqrt(p.sq_norm_x / p.sq_norm_z))
    nr, nc = A.shape
    U = np.column_stack(Ucols) if Ucols else np.zeros((nr, 0))
    V = np.column_stack(Vcols) if Vcols else np.zeros((nc, 0))
    return ReducedSVD(tuple(p.label for p in kept), U, np.array(sigma), V)


def spectral_pinv(spec: AlphabetSpec, k: int, system: SpectralSystem | None = None) -> RationalMatrix:
    """Exact pseudo-inverse A^T Y D Y^T, where the columns of Y are the x vectors
    with nonzero eigenvalue and D = diag(1 / (|x|^2 lambda))."""
    system = system or build_spectral_system(spec, k)
    A = build_A(spec, k)
    kept = [c for c, p in enumerate(system.pairs) if p.eigenvalue > 0]
    Y = system.X[:, kept]
    AtY = A.apply_transpose(Y)
    nu_, r = AtY.shape
    d = [flint.fmpq(1, system.pairs[c].sq_norm_x * system.pairs[c].eigenvalue) for c in kept]
    left = flint.fmpq_mat(nu_, r, [int(AtY[i, j]) * d[j] for i in range(nu_) for j in range(r)])
    right = flint.fmpq_mat(flint.fmpz_mat(r, Y.shape[0], [int(v) for v in Y.T.ravel()]))
    return RationalMatrix(left * right, A.col_words, A.row_words)


def spectrum_csv(system: SpectralSystem) -> str:
    spec = system.spec
    mult = Counter(p.eigenvalue for p in system.pairs)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["label", "n", "eigenvalue", "multiplicity", "nonzero", "sq_norm_x", "sq_norm_z"])
    for p in system.pairs:
        writer.writerow([
            spec.format_word(p.label), p.n, p.eigenvalue, mult[p.eigenvalue],
            int(p.eigenvalue > 0), p.sq_norm_x, p.sq_norm_z,
        ])
    return out.getvalue()
