"""Cross-checks of every closed form against enumeration or the numeric oracle.

Each check yields a :class:`CheckResult` tagged with a group:

    nu        identities of nu_B (exact)
    incidence row/column counts and the gap-splitting row identity
    spectral  eigen-system identities, norms, trace, oracle eigenvalues
    rank      rank and null/row-space bases
    pinv      closed-form W vs spectral W vs oracle, Penrose conditions
    filter    H = W A, symmetry, idempotence, unit row/column sums
    svd       reduced SVD reconstruction and orthonormality
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import oracle
from .filter import estimate_counts, h_matrix, w_matrix
from .incidence import SparseIncidence, build_A, build_A_upto
from .nu import (
    mobius_closed_form,
    mobius_interval_sum,
    nu_matrix,
    phi,
    symbol_ranks,
    weighted_pair_sum,
)
from .ratmat import RationalMatrix
from .spectral import (
    build_spectral_system,
    null_space_basis,
    reduced_svd,
    row_space_basis,
    spectral_pinv,
)
from .symfunc import elementary_symmetric, r_poly
from .words import (
    GAP,
    AlphabetSpec,
    enumerate_Delta,
    enumerate_Gamma,
    enumerate_U,
    enumerate_V,
    enumerate_Vprime_upto,
    gap_set,
    index_map,
    match_set_M,
    match_set_N,
    restrict_B,
    u_index,
)

PAIR_SAMPLE = 2000
SVD_TOL = 1e-10
EIG_TOL = 1e-8


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"[{status}] {self.group:<9} {self.name}{extra}"


def _sign(spec: AlphabetSpec, k: int) -> int:
    return -1 if (spec.ell - k) % 2 else 1


def _esym_gaps(spec: AlphabetSpec, order: int, w) -> int:
    return elementary_symmetric(restrict_B(spec, gap_set(w)), order)


def _sq_norm_closed(spec: AlphabetSpec, k: int, vp) -> int:
    G = gap_set(vp)
    return (
        _esym_gaps(spec, spec.ell - k, vp)
        * math.prod(c + c * c for c in vp if c != GAP)
        * math.prod(spec.B[i] for i in G)
    )


def _max_abs(M) -> float:
    return float(np.max(np.abs(M), initial=0.0))


# -- nu identities -----------------------------------------------------------

def nu_pair_checks(spec: AlphabetSpec, exhaustive: bool = True, seed: int = 0) -> Iterator[CheckResult]:
    """Identities over pairs of words; independent of k."""
    delta = enumerate_Delta(spec)
    rng = np.random.default_rng(seed)
    if exhaustive:
        pairs = list(itertools.product(range(len(delta)), repeat=2))
    else:
        pairs = [tuple(p) for p in rng.integers(0, len(delta), size=(PAIR_SAMPLE, 2))]
    scope = "all pairs" if exhaustive else f"{len(pairs)} sampled pairs"

    N = nu_matrix(spec, delta, delta)
    R = symbol_ranks(spec, delta)
    bad = 0
    for a, b in pairs:
        if N[a, b] != 0 and not np.all(R[a] <= R[b]):
            bad += 1
    yield CheckResult("nu", "support: nu(x,y) = 0 unless x <= y", bad == 0, scope)

    bad = sum(
        mobius_interval_sum(spec, delta[a], delta[b]) != mobius_closed_form(spec, delta[a], delta[b])
        for a, b in pairs
    )
    yield CheckResult("nu", "interval sums of nu match the product formula", bad == 0, scope)

    bad = 0
    for i, b in enumerate(spec.B):
        for ui in range(b):
            for vi in range(b):
                u = tuple(ui if j == i else 0 for j in range(spec.ell))
                v = tuple(vi if j == i else 0 for j in range(spec.ell))
                want = Fraction(b - 1, b) if ui == vi else Fraction(-1, b)
                bad += phi(spec, i, u, v) != want
    yield CheckResult("nu", "phi_i takes (b-1)/b on agreement and -1/b otherwise", bad == 0)

    U = enumerate_U(spec)
    if exhaustive:
        u_idx = list(range(len(U)))
    else:
        u_idx = sorted(set(rng.integers(0, len(U), size=min(len(U), 16)).tolist()))
    bad = checked = 0
    for r in range(spec.ell + 1):
        for Gt in itertools.combinations(range(spec.ell), r):
            G = frozenset(Gt)
            ranges = [(GAP,) if i in G else range(1, b) for i, b in enumerate(spec.B)]
            labels = list(itertools.product(*ranges))
            weights = [math.prod(c + c * c for c in vp if c != GAP) for vp in labels]
            L = math.lcm(*weights)
            scale = np.array([L // w for w in weights], dtype=object)
            vs = [v for v in delta if gap_set(v) <= G]
            Nv = nu_matrix(spec, vs, labels).astype(object) * scale
            Nu = nu_matrix(spec, [U[j] for j in u_idx], labels).astype(object)
            left = Nv.dot(Nu.T)
            for a, v in enumerate(vs):
                for b_, j in enumerate(u_idx):
                    checked += 1
                    if Fraction(int(left[a, b_]), L) != weighted_pair_sum(spec, U[j], v, G):
                        bad += 1
    yield CheckResult("nu", "weighted pair sums match their closed form", bad == 0, f"{checked} triples")


def nu_sum_checks(spec: AlphabetSpec, k: int) -> Iterator[CheckResult]:
    """Sums of nu over the gapped words with k letters, by direct enumeration."""
    ell = spec.ell
    sign = _sign(spec, k)
    V, U, labels = enumerate_V(spec, k), enumerate_U(spec), enumerate_Gamma(spec)
    Nv = nu_matrix(spec, V, labels)
    Nu = nu_matrix(spec, U, labels)
    lam = np.array([_esym_gaps(spec, ell - k, vp) for vp in labels], dtype=np.int64)

    all_gaps = (GAP,) * ell
    # only the all-gap label survives: letters cancel at each position
    total = sign * math.comb(ell, k) * math.prod(spec.B)
    want = np.array([total if vp == all_gaps else 0 for vp in labels])
    yield CheckResult("nu", "column sums of nu over gapped words", np.array_equal(Nv.sum(axis=0), want))

    gram = Nv.T @ Nv
    want = np.diag([_sq_norm_closed(spec, k, vp) for vp in labels])
    yield CheckResult("nu", "products of nu columns are diagonal with closed-form diagonal",
                      np.array_equal(gram, want))

    vidx = index_map(V)
    M = np.array([[vidx[y] for y in match_set_M(spec, u, k)] for u in U], dtype=np.intp)
    lhs = Nv[M].sum(axis=1)
    yield CheckResult("nu", "sum of nu over the match set M(u)",
                      np.array_equal(lhs, sign * lam[None, :] * Nu))

    lhs = np.array([Nu[[u_index(spec, u) for u in match_set_N(spec, v)]].sum(axis=0) for v in V])
    yield CheckResult("nu", "sum of nu over the match set N(v)", np.array_equal(lhs, sign * Nv))


# -- incidence ---------------------------------------------------------------

def incidence_checks(spec: AlphabetSpec, k: int, A: SparseIncidence) -> Iterator[CheckResult]:
    row_sums = [len(r) for r in A.rows]
    want = [math.prod(spec.B[i] for i in gap_set(v)) for v in A.row_words]
    yield CheckResult("incidence", "row sums equal the product of gapped alphabet sizes", row_sums == want)
    col = np.asarray(A.apply_transpose(np.ones(A.shape[0], dtype=np.int64)))
    yield CheckResult("incidence", "column sums equal C(l, k)", bool(np.all(col == math.comb(spec.ell, k))))

    stack = build_A_upto(spec, k)
    D = stack.to_dense()
    idx = index_map(stack.row_words)
    bad = 0
    for w in stack.row_words:
        if sum(1 for c in w if c != GAP) >= k:
            continue
        for pos in (i for i, c in enumerate(w) if c == GAP):
            fills = [idx[w[:pos] + (c,) + w[pos + 1:]] for c in range(spec.B[pos])]
            bad += not np.array_equal(D[idx[w]], D[fills].sum(axis=0))
    yield CheckResult("incidence", "a gapped row is the sum of its single-gap fillings", bad == 0)


# -- spectral ----------------------------------------------------------------

def spectral_checks(spec, k, A, system, eig_full) -> Iterator[CheckResult]:
    X, Z = system.X, system.Z
    lam = np.array([p.eigenvalue for p in system.pairs], dtype=np.int64)
    AtX = A.apply_transpose(X)
    AZ = A.apply(Z)
    yield CheckResult("spectral", "A^T x = lambda z", np.array_equal(AtX, Z * lam))
    yield CheckResult("spectral", "A z = x", np.array_equal(AZ, X))
    yield CheckResult("spectral", "A A^T x = lambda x", np.array_equal(A.apply(AtX), X * lam))
    yield CheckResult("spectral", "A^T A z = lambda z", np.array_equal(A.apply_transpose(AZ), Z * lam))

    XtX, ZtZ = X.T @ X, Z.T @ Z
    off = ~np.eye(len(lam), dtype=bool)
    yield CheckResult("spectral", "x vectors are pairwise orthogonal", not XtX[off].any())
    yield CheckResult("spectral", "z vectors are pairwise orthogonal", not ZtZ[off].any())
    sqx = np.array([p.sq_norm_x for p in system.pairs], dtype=np.int64)
    sqz = np.array([p.sq_norm_z for p in system.pairs], dtype=np.int64)
    yield CheckResult("spectral", "|x|^2 matches closed form",
                      np.array_equal(np.diag(XtX), sqx)
                      and sqx.tolist() == [_sq_norm_closed(spec, k, p.label) for p in system.pairs])
    yield CheckResult("spectral", "|z|^2 matches closed form", np.array_equal(np.diag(ZtZ), sqz))

    nonzero = lam > 0
    n_letters = np.array([p.n for p in system.pairs])
    yield CheckResult("spectral", "eigenvalue is nonzero exactly when label has <= k letters",
                      np.array_equal(nonzero, n_letters <= k)
                      and int(nonzero.sum()) == r_poly(spec.B, k))
    yield CheckResult("spectral", "one eigenpair per gap-free word, z vectors nonzero",
                      len(system.pairs) == spec.size and bool(np.all(sqz > 0)))

    trace = sum(len(r) for r in A.rows)
    trace_formula = sum(math.prod(spec.B[i] for i in gap_set(v)) for v in A.row_words)
    yield CheckResult("spectral", "sum of nonzero eigenvalues equals trace(A A^T)",
                      int(lam[nonzero].sum()) == trace == trace_formula,
                      f"sum={int(lam[nonzero].sum())}, trace={trace}")

    closed = np.sort(np.concatenate([lam[nonzero], np.zeros(A.shape[0] - int(nonzero.sum()))]))[::-1]
    numeric = np.sort(eig_full)[::-1]
    err = _max_abs(closed - numeric) if closed.shape == numeric.shape else math.inf
    yield CheckResult("spectral", "eigenvalues of A A^T agree with Jacobi oracle", err <= EIG_TOL,
                      f"max err {err:.2e}")


# -- rank and bases ----------------------------------------------------------

def rank_checks(spec, k, A, eig) -> Iterator[CheckResult]:
    R = r_poly(spec.B, k)
    rank = oracle.numeric_rank(A.to_dense(), eig=eig)
    yield CheckResult("rank", "numeric rank of A equals R_k(B)", rank == R, f"rank={rank}, R_k={R}")
    yield CheckResult("rank", "R_k(B) counts the nonzero-letter words with <= k letters",
                      len(enumerate_Vprime_upto(spec, k)) == R)

    basis = null_space_basis(spec, k)
    zero = all(not any(A.apply(z)) for z in basis)
    yield CheckResult("rank", "null-space basis is annihilated by A",
                      zero and len(basis) == spec.size - R, f"{len(basis)} vectors")

    rows = row_space_basis(spec, k)
    M = np.array([r for _, r in rows], dtype=float)
    nrank = oracle.numeric_rank(M)
    yield CheckResult("rank", "row-space basis has R_k(B) independent rows",
                      len(rows) == R and nrank == R, f"numeric rank {nrank}")


# -- pseudo-inverse and filter -----------------------------------------------

def _rational_A(A: SparseIncidence) -> RationalMatrix:
    return RationalMatrix.from_integer_array(A.to_dense(), A.row_words, A.col_words)


def pinv_checks(spec, k, A, W, W_spec, eig, tol) -> Iterator[CheckResult]:
    yield CheckResult("pinv", "closed-form W equals spectral-path W exactly", W == W_spec)
    Ad = A.to_dense().astype(float)
    Wnum = oracle.numeric_pinv(Ad, eig=eig)
    Wf = W.to_float()
    err = _max_abs(Wf - Wnum)
    yield CheckResult("pinv", "closed-form W matches oracle pseudo-inverse", err <= tol, f"max err {err:.2e}")
    err = _max_abs(W_spec.to_float() - Wnum)
    yield CheckResult("pinv", "spectral-path W matches oracle pseudo-inverse", err <= tol, f"max err {err:.2e}")

    Ar = _rational_A(A)
    AW, WA = Ar @ W, W @ Ar
    exact = (AW @ Ar == Ar) and (WA @ W == W) and (AW.T == AW) and (WA.T == WA)
    yield CheckResult("pinv", "Penrose conditions hold exactly", exact)
    res = oracle.penrose_residuals(Ad, Wf)
    yield CheckResult("pinv", "Penrose residuals in floating point", max(res) <= tol,
                      "max " + ", ".join(f"{r:.1e}" for r in res))


def filter_checks(spec, k, A, W, H, tol) -> Iterator[CheckResult]:
    Ar = _rational_A(A)
    yield CheckResult("filter", "closed-form H equals W A exactly", H == W @ Ar)
    yield CheckResult("filter", "H is symmetric", H == H.T)
    yield CheckResult("filter", "H is idempotent", H @ H == H)
    ones = [Fraction(1)] * spec.size
    yield CheckResult("filter", "rows and columns of H sum to 1",
                      H.row_sums() == ones and H.col_sums() == ones)
    R = r_poly(spec.B, k)
    nrank = oracle.numeric_rank(H.to_float())
    yield CheckResult("filter", "rank of H equals R_k(B)", nrank == R == H.rank(), f"numeric rank {nrank}")

    raw = [(7 * j + 3) % 5 for j in range(spec.size)]
    est_p = estimate_counts(spec, k, raw, "project")
    est_g = estimate_counts(spec, k, raw, "from_gapped")
    yield CheckResult("filter", "estimates from both modes agree and preserve mass",
                      est_p == est_g and sum(est_p) == sum(raw) and est_p == H.matvec(raw))


def svd_checks(spec, k, A, system, tol: float = SVD_TOL) -> Iterator[CheckResult]:
    svd = reduced_svd(spec, k, system)
    Ad = A.to_dense().astype(float)
    recon = _max_abs(Ad - (svd.U * svd.singular_values) @ svd.V.T)
    r = len(svd.labels)
    orth = max(_max_abs(svd.U.T @ svd.U - np.eye(r)), _max_abs(svd.V.T @ svd.V - np.eye(r)))
    lam = np.array([system.pairs[system.labels.index(l)].eigenvalue for l in svd.labels], dtype=float)
    sv = _max_abs(svd.singular_values - np.sqrt(lam))
    yield CheckResult("svd", "A = U S V^T", recon <= tol, f"max err {recon:.2e}")
    yield CheckResult("svd", "U and V have orthonormal columns", orth <= tol, f"max err {orth:.2e}")
    yield CheckResult("svd", "singular values are sqrt(lambda), non-increasing",
                      sv <= tol and bool(np.all(np.diff(svd.singular_values) <= 0)), f"max err {sv:.2e}")


# -- driver ------------------------------------------------------------------

def run_checks(
    spec: AlphabetSpec,
    k: int,
    tol: float = 1e-9,
    A: SparseIncidence | None = None,
    pair_checks: bool | None = None,
    svd_max_rows: int = 500,
) -> list[CheckResult]:
    """Run every check for one (B, k).

    ``A`` may be supplied to test a modified matrix; closed forms are always
    computed from ``spec`` alone. ``pair_checks`` controls the k-independent
    nu identities: None runs them exhaustively for ell <= 3 and on a sample
    otherwise, False skips them.
    """
    A = A if A is not None else build_A(spec, k)
    results: list[CheckResult] = []
    if pair_checks is None or pair_checks:
        results += nu_pair_checks(spec, exhaustive=spec.ell <= 3)
    results += nu_sum_checks(spec, k)
    results += incidence_checks(spec, k, A)

    system = build_spectral_system(spec, k)
    Ad = A.to_dense().astype(float)
    w_full, Q_full = oracle.jacobi_eigh(Ad @ Ad.T)
    keep = w_full > oracle.RANK_CUTOFF * max(w_full[0], 0.0)
    eig = (w_full[keep], Q_full[:, keep])
    results += spectral_checks(spec, k, A, system, w_full)
    results += rank_checks(spec, k, A, eig)

    W = w_matrix(spec, k, max_entries=None)
    W_spec = spectral_pinv(spec, k, system)
    results += pinv_checks(spec, k, A, W, W_spec, eig, tol)
    H = h_matrix(spec, k, max_entries=None)
    results += filter_checks(spec, k, A, W, H, tol)
    if A.shape[0] <= svd_max_rows:
        results += svd_checks(spec, k, A, system)
    return results


def format_report(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines)

