"""Householder QR with a column-wise rank check."""

from __future__ import annotations

import numpy as np

RANK_TOL = 1e-10


class RankDeficient(ValueError):
    def __init__(self, column: str, detail: str = "is collinear with preceding columns"):
        super().__init__(f"column {column!r} {detail}")
        self.column = column


def householder_qr(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Thin QR of an n x k matrix (n >= k): returns Q (n x k) and upper-triangular R (k x k)."""
    R = np.array(A, dtype=float, copy=True)
    n, k = R.shape
    if n < k:
        raise ValueError("householder_qr needs at least as many rows as columns")
    vs = []
    for j in range(k):
        x = R[j:, j]
        normx = np.linalg.norm(x)
        v = x.copy()
        if normx == 0.0:
            vs.append(None)
            continue
        alpha = -normx if x[0] >= 0 else normx
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            vs.append(None)
            continue
        v /= vnorm
        R[j:, j:] -= 2.0 * np.outer(v, v @ R[j:, j:])
        vs.append(v)
    Q = np.eye(n, k)
    for j in range(k - 1, -1, -1):
        v = vs[j]
        if v is not None:
            Q[j:, :] -= 2.0 * np.outer(v, v @ Q[j:, :])
    return Q, np.triu(R[:k, :k])


def back_substitute(R: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve R x = b for upper-triangular R (b may be a matrix)."""
    k = R.shape[0]
    x = np.array(b, dtype=float, copy=True)
    for i in range(k - 1, -1, -1):
        x[i] = (x[i] - R[i, i + 1 :] @ x[i + 1 :]) / R[i, i]
    return x


def check_rank(X: np.ndarray, names: list[str], tol: float = RANK_TOL) -> None:
    """Raise RankDeficient naming the first column that adds no new direction.

    Columns are scaled to unit norm first so that the diagonal of R compares
    directions rather than magnitudes.
    """
    norms = np.linalg.norm(X, axis=0)
    for j, nrm in enumerate(norms):
        if nrm == 0.0:
            raise RankDeficient(names[j], "is identically zero")
    _, R = householder_qr(X / norms)
    diag = np.abs(np.diag(R))
    scale = diag.max()
    for j, dj in enumerate(diag):
        if dj < tol * scale:
            raise RankDeficient(names[j])
