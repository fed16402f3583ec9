import math

import numpy as np
import pytest
from hypothesis import given

from conftest import spec_and_k, words
from gkmfilter import oracle
from gkmfilter.filter import w_matrix
from gkmfilter.incidence import build_A
from gkmfilter.ratmat import RationalMatrix
from gkmfilter.spectral import (
    build_spectral_system,
    eigenvalue_of,
    null_space_basis,
    reduced_svd,
    row_space_basis,
    spectral_pinv,
    spectrum_csv,
    sq_norm_x,
)
from gkmfilter.symfunc import elementary_symmetric
from gkmfilter.words import GAP, AlphabetSpec, enumerate_U

S23 = AlphabetSpec((2, 3))


def test_eigenvalue_examples():
    assert eigenvalue_of(S23, 1, words(S23, "1g")) == 3
    assert eigenvalue_of(S23, 1, words(S23, "gg")) == 5
    assert eigenvalue_of(S23, 1, (1, 2)) == 0
    with pytest.raises(ValueError):
        eigenvalue_of(S23, 1, (0, GAP))


def test_nonzero_spectrum_example():
    system = build_spectral_system(S23, 1)
    nonzero = sorted((p.eigenvalue for p in system.pairs if p.eigenvalue), reverse=True)
    assert nonzero == [5, 3, 2, 2]
    A = build_A(S23, 1).to_dense()
    w, _ = oracle.jacobi_eigh(A @ A.T)
    assert np.allclose(w, [5, 3, 2, 2, 0], atol=1e-9)


def test_x_vector_for_g1():
    system = build_spectral_system(S23, 1)
    p = system.pairs[system.labels.index(words(S23, "g1"))]
    # rows 0-,1-,-0,-1,-2 with the (-1)^(l-k) sign applied
    assert list(p.x_vec) == [0, 0, 2, -2, 0]
    assert p.sq_norm_x == 8 == sq_norm_x(S23, 1, p.label)


def test_all_gap_label():
    spec = AlphabetSpec((2, 3, 2))
    for k in range(4):
        system = build_spectral_system(spec, k)
        p = system.pairs[0]
        assert p.label == (GAP,) * 3
        assert p.eigenvalue == elementary_symmetric(spec.B, 3 - k)
        assert set(p.z_vec) == {1}
    last = build_spectral_system(spec, 3)
    assert np.array_equal(last.X, last.Z)


@given(spec_and_k())
def test_matrix_identities(sk):
    spec, k = sk
    A = build_A(spec, k).to_dense()
    system = build_spectral_system(spec, k)
    lam = np.array([p.eigenvalue for p in system.pairs])
    X, Z = system.X, system.Z
    assert np.array_equal(A.T @ X, Z * lam)
    assert np.array_equal(A @ Z, X)
    assert np.array_equal(A @ A.T @ X, X * lam)
    assert np.array_equal(A.T @ A @ Z, Z * lam)


@given(spec_and_k())
def test_orthogonality_and_norms(sk):
    spec, k = sk
    system = build_spectral_system(spec, k)
    gx = system.X.T @ system.X
    gz = system.Z.T @ system.Z
    assert np.array_equal(gx, np.diag(np.diag(gx)))
    assert np.array_equal(gz, np.diag(np.diag(gz)))
    assert list(np.diag(gx)) == [p.sq_norm_x for p in system.pairs]
    assert list(np.diag(gz)) == [p.sq_norm_z for p in system.pairs]
    for p in system.pairs:
        assert p.sq_norm_x == p.eigenvalue * p.sq_norm_z
        assert (p.eigenvalue > 0) == (p.n <= k)


@given(spec_and_k())
def test_trace_identity(sk):
    spec, k = sk
    A = build_A(spec, k)
    system = build_spectral_system(spec, k)
    trace = sum(math.prod(spec.B[i] for i, c in enumerate(v) if c == GAP) for v in A.row_words)
    assert sum(p.eigenvalue for p in system.pairs) == trace


def test_null_space_examples():
    assert null_space_basis(S23, 2) == []
    basis = null_space_basis(S23, 1)
    assert len(basis) == 2
    A = build_A(S23, 1)
    assert all(not any(A.apply(z)) for z in basis)
    assert len(null_space_basis(AlphabetSpec((2, 2)), 0)) == 3


@given(spec_and_k())
def test_null_space_is_annihilated(sk):
    spec, k = sk
    A = build_A(spec, k)
    basis = null_space_basis(spec, k)
    assert len(basis) == spec.size - oracle.numeric_rank(A.to_dense())
    for z in basis:
        assert not any(A.apply(z))


def test_row_space_examples():
    rows = row_space_basis(S23, 1)
    assert [S23.format_word(w) for w, _ in rows] == ["--", "1-", "-1", "-2"]
    assert oracle.numeric_rank(np.array([r for _, r in rows])) == 4
    assert row_space_basis(S23, 0) == [((GAP, GAP), [1] * 6)]
    rows = row_space_basis(AlphabetSpec((2, 2, 2)), 2)
    assert len(rows) == 7 and oracle.numeric_rank(np.array([r for _, r in rows])) == 7


def test_reduced_svd_example():
    svd = reduced_svd(S23, 1)
    A = build_A(S23, 1).to_dense()
    assert np.max(np.abs(A - (svd.U * svd.singular_values) @ svd.V.T)) <= 1e-10
    assert np.allclose(svd.singular_values, np.sqrt([5, 3, 2, 2]), atol=1e-10)
    assert np.allclose(svd.singular_values, np.linalg.svd(A, compute_uv=False)[:4], atol=1e-10)


def test_reduced_svd_identity_case():
    svd = reduced_svd(AlphabetSpec((3, 2)), 2)
    assert np.allclose(svd.singular_values, 1.0)


@given(spec_and_k())
def test_reduced_svd_properties(sk):
    spec, k = sk
    svd = reduced_svd(spec, k)
    r = len(svd.labels)
    assert np.max(np.abs(svd.U.T @ svd.U - np.eye(r)), initial=0) <= 1e-10
    assert np.max(np.abs(svd.V.T @ svd.V - np.eye(r)), initial=0) <= 1e-10
    assert np.all(np.diff(svd.singular_values) <= 0)


def test_spectral_pinv_examples():
    W = spectral_pinv(AlphabetSpec((2,)), 0)
    assert W.rows() == [[0.5], [0.5]]
    spec = AlphabetSpec((2, 3))
    assert spectral_pinv(spec, 2) == RationalMatrix.from_integer_array(
        np.eye(6, dtype=np.int64), enumerate_U(spec), enumerate_U(spec))
    W = spectral_pinv(spec, 1)
    assert W == w_matrix(spec, 1)
    A = build_A(spec, 1).to_dense()
    assert np.max(np.abs(W.to_float() - oracle.numeric_pinv(A))) <= 1e-10


def test_spectrum_csv():
    lines = spectrum_csv(build_spectral_system(S23, 1)).splitlines()
    assert lines[0] == "label,n,eigenvalue,multiplicity,nonzero,sq_norm_x,sq_norm_z"
    assert len(lines) == 7
    assert sum(int(line.split(",")[4]) for line in lines[1:]) == 4
    assert sum(int(line.split(",")[2]) for line in lines[1:]) == 12
