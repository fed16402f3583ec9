"""Brute-force floating-point ground truth for the closed forms.

Nothing here uses the structure of the incidence matrices: eigenvalues come
from a plain cyclic Jacobi iteration on the Gram matrix, and the
pseudo-inverse and rank are read off that decomposition.
"""

from __future__ import annotations

import numpy as np

RANK_CUTOFF = 1e-10


class JacobiNonConvergence(ArithmeticError):
    pass


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint index pairs covering every pair exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for a, b in zip(players[: m // 2], reversed(players[m // 2:])):
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=np.intp), np.array(q, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(S, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once; pairs are scheduled in
    round-robin order so that the rotations inside a round act on disjoint
    rows and columns and can be applied together. Iteration stops once the
    off-diagonal Frobenius norm is at most ``tol * |S|_F``; rotations whose
    pivot is already below ``tol * |S|_F / n`` are skipped.

    Returns eigenvalues in decreasing order and the matching orthonormal
    eigenvectors as columns.
    """
    S = np.array(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {S.shape}")
    n = S.shape[0]
    norm = np.linalg.norm(S)
    if np.max(np.abs(S - S.T), initial=0.0) > 1e-12 * max(norm, 1.0):
        raise ValueError("matrix is not symmetric")
    A = S.copy()
    Vt = np.eye(n)  # eigenvectors as rows while iterating
    rounds = _round_robin(n)
    # entries below this cannot keep the off-diagonal norm above tol * norm
    skip = tol * norm / max(n, 1)
    converged = False
    for _ in range(max_sweeps + 1):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * norm:
            converged = True
            break
        for p, q in rounds:
            if p.size == 0:
                continue
            apq = A[p, q]
            active = np.abs(apq) > skip
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (A[q, q] - A[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = (1.0 / np.sqrt(t * t + 1.0))[:, None]
            s = t[:, None] * c
            # J^T A J as a row rotation, a transpose, and the same row rotation;
            # rows are contiguous so this avoids strided column access
            for M in (A, Vt):
                Mp, Mq = M[p], M[q]
                M[p] = c * Mp - s * Mq
                M[q] = s * Mp + c * Mq
            A = A.T.copy()
            Ap, Aq = A[p], A[q]
            A[p] = c * Ap - s * Aq
            A[q] = s * Ap + c * Aq
    if not converged:
        raise JacobiNonConvergence(f"no convergence after {max_sweeps} sweeps (off-norm {off:.3e})")
    V = Vt.T
    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]
    resid = np.max(np.abs(S @ V - V * w), initial=0.0)
    if resid > 1e-9 * max(norm, 1.0):
        raise JacobiNonConvergence(f"eigen-residual {resid:.3e} too large")
    return w, V


def gram_eigh(A) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-pairs of A A^T above the relative cutoff ``RANK_CUTOFF * lambda_max``."""
    A = np.asarray(A, dtype=float)
    w, Q = jacobi_eigh(A @ A.T)
    cutoff = RANK_CUTOFF * max(w[0], 0.0) if w.size else 0.0
    keep = w > cutoff
    return w[keep], Q[:, keep]


def numeric_pinv(A, eig: tuple[np.ndarray, np.ndarray] | None = None) -> np.ndarray:
    """A^+ = A^T Q diag(1/lambda) Q^T from the nonzero eigen-pairs of A A^T."""
    A = np.asarray(A, dtype=float)
    w, Q = eig if eig is not None else gram_eigh(A)
    return A.T @ (Q / w) @ Q.T


def numeric_rank(A, eig: tuple[np.ndarray, np.ndarray] | None = None) -> int:
    w, _ = eig if eig is not None else gram_eigh(A)
    return int(w.size)


def penrose_residuals(A, W) -> tuple[float, float, float, float]:
    """Max-abs residuals of AWA - A, WAW - W, (AW)^T - AW, (WA)^T - WA."""
    A = np.asarray(A, dtype=float)
    W = np.asarray(W, dtype=float)
    if W.shape != A.T.shape:
        raise ValueError(f"W has shape {W.shape}, expected {A.T.shape}")
    AW, WA = A @ W, W @ A

    def mx(M):
        return float(np.max(np.abs(M), initial=0.0))

    return mx(AW @ A - A), mx(WA @ W - W), mx(AW.T - AW), mx(WA.T - WA)
