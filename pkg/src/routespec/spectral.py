"""Singular value decomposition of the route matrix and what it yields:
path/activity relevance, spectral networks, the exact nullspace, the
pseudoinverse and reachability of target path durations."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DimensionError, NumericalError
from .paths import RouteMatrix

RANK_EPS = 2.0 ** -46


@dataclass(frozen=True)
class SvdDecomposition:
    """Thin SVD ``R = U diag(sigma) Vt`` truncated to the numerical rank.

    Signs are normalized so that the largest-magnitude entry of each column
    of U is positive (lowest row index on ties).
    """

    U: np.ndarray
    sigma: np.ndarray
    Vt: np.ndarray
    numerical_rank: int
    rank_tol: float
    matrix: np.ndarray
    activity_ids: tuple[str, ...] = ()

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.sigma) @ self.Vt


@dataclass(frozen=True)
class RelevanceReport:
    dominant_index: int
    path_scores: np.ndarray
    activity_scores: np.ndarray
    top_paths: tuple[int, ...]
    top_activities: tuple[int, ...]
    activity_ids: tuple[str, ...] = ()

    @property
    def top_activity_ids(self) -> tuple[str, ...]:
        return tuple(self.activity_ids[j] for j in self.top_activities)


@dataclass(frozen=True)
class SpectralExpansion:
    terms: tuple[np.ndarray, ...]
    cumulative: tuple[np.ndarray, ...]
    matrix: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class NullspaceBasis:
    vectors: tuple[tuple[int, ...], ...]
    dimension: int

    def as_array(self) -> np.ndarray:
        n = len(self.vectors[0]) if self.vectors else 0
        return np.array(self.vectors, dtype=np.int64).reshape(self.dimension, n)


@dataclass(frozen=True)
class Reachability:
    reachable: bool
    residual: float


def _matrix(R):
    if isinstance(R, RouteMatrix):
        return R.matrix, R.activity_ids
    M = np.asarray(R)
    if M.ndim != 2:
        raise DimensionError(f"route matrix must be 2-D, got shape {M.shape}")
    return M, ()


def default_rank_tol(shape, sigma_max: float) -> float:
    return max(shape) * sigma_max * RANK_EPS


def _lead_index(col, rtol=1e-12):
    mag = np.abs(col)
    return int(np.flatnonzero(mag >= mag.max() * (1 - rtol))[0])


def svd(R, rank_tol: float | None = None) -> SvdDecomposition:
    M, ids = _matrix(R)
    if M.size == 0:
        raise DimensionError("cannot decompose an empty matrix")
    A = np.asarray(M, dtype=float)
    try:
        U, s, Vt = np.linalg.svd(A, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from None
    tol = default_rank_tol(A.shape, float(s[0])) if rank_tol is None else rank_tol
    r = int(np.count_nonzero(s > tol))
    U, s, Vt = U[:, :r].copy(), s[:r].copy(), Vt[:r].copy()
    for i in range(r):
        if U[_lead_index(U[:, i]), i] < 0:
            U[:, i] *= -1
            Vt[i] *= -1
    residual = float(np.abs((U * s) @ Vt - A).max()) if r else float(np.abs(A).max())
    if residual > 1e-9 * max(1.0, float(s[0]) if r else 1.0):
        raise NumericalError(f"SVD reconstruction residual {residual:.3e} too large")
    for a in (U, s, Vt):
        a.setflags(write=False)
    return SvdDecomposition(U, s, Vt, r, tol, np.asarray(M), tuple(ids))


def relevance(dec: SvdDecomposition, score_tol: float = 1e-6) -> RelevanceReport:
    """Rank paths and activities by the dominant singular triplet.

    Scores are magnitudes of the dominant left/right singular vector entries,
    since the sign of a singular vector pair is arbitrary.  If the largest
    singular value is repeated the singular vectors are only defined up to a
    rotation of that subspace, so each score becomes the norm of the entry's
    row (column) across the whole dominant block instead.
    """
    if dec.numerical_rank < 1:
        raise NumericalError("relevance needs a matrix of rank >= 1")
    i = int(np.argmax(dec.sigma))
    block = np.flatnonzero(dec.sigma >= dec.sigma[i] * (1 - 1e-9))
    ps = np.linalg.norm(dec.U[:, block], axis=1)
    acs = np.linalg.norm(dec.Vt[block], axis=0)
    top_p = tuple(int(k) for k in np.flatnonzero(ps >= ps.max() - score_tol))
    top_a = tuple(int(k) for k in np.flatnonzero(acs >= acs.max() - score_tol))
    return RelevanceReport(i, ps, acs, top_p, top_a, dec.activity_ids)


def spectral_networks(dec: SvdDecomposition) -> SpectralExpansion:
    """Rank-one terms ``sigma_i u_i v_i`` and their running sums."""
    terms = tuple(dec.sigma[i] * np.outer(dec.U[:, i], dec.Vt[i]) for i in range(dec.numerical_rank))
    cumulative = tuple(np.cumsum(np.stack(terms), axis=0)) if terms else ()
    return SpectralExpansion(terms, cumulative, dec.matrix)


def threshold_reconstruct(expansion: SpectralExpansion, k: int, threshold: float = 0.5) -> np.ndarray:
    """0/1 matrix of entries of the k-term partial sum with magnitude >= threshold."""
    if not 1 <= k <= expansion.rank:
        raise ValueError(f"k must lie in 1..{expansion.rank}, got {k}")
    return (np.abs(expansion.cumulative[k - 1]) >= threshold).astype(np.int64)


def minimal_spectral_order(expansion: SpectralExpansion, threshold: float = 0.5) -> int | None:
    """Smallest k whose thresholded partial sum reproduces the route matrix."""
    for k in range(1, expansion.rank + 1):
        if np.array_equal(threshold_reconstruct(expansion, k, threshold), expansion.matrix):
            return k
    return None


# -- exact nullspace -----------------------------------------------------------

def _row_gcd(row):
    g = reduce(math.gcd, (abs(x) for x in row), 0)
    return [x // g for x in row] if g > 1 else row


def integer_rref(M):
    """Fraction-free reduced row echelon form of an integer matrix.

    Rows stay integral (each is divided by the gcd of its entries after every
    update).  Returns ``(rows, pivot_columns)`` for the nonzero rows.
    """
    rows = [[int(x) for x in r] for r in np.asarray(M).tolist()]
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        p = rows[r][c]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = _row_gcd([p * a - f * b for a, b in zip(rows[i], rows[r])])
        rows[r] = _row_gcd(rows[r])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace_basis(R) -> NullspaceBasis:
    """Exact integer basis of the nullspace of R.

    One vector per free column; each is scaled to coprime integers with its
    first nonzero entry negative.
    """
    M, _ = _matrix(R)
    n = M.shape[1]
    rows, pivots = integer_rref(M)
    free = [c for c in range(n) if c not in set(pivots)]
    piv_vals = [rows[i][c] for i, c in enumerate(pivots)]
    L = reduce(math.lcm, piv_vals, 1)
    vectors = []
    for f in free:
        v = [0] * n
        v[f] = L
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f] * (L // piv_vals[i])
        v = _row_gcd(v)
        first = next(x for x in v if x != 0)
        if first > 0:
            v = [-x for x in v]
        vectors.append(tuple(v))
    return NullspaceBasis(tuple(vectors), len(vectors))


def svd_nullspace(R, rank_tol: float | None = None) -> np.ndarray:
    """Orthonormal nullspace basis (rows) from the trailing right singular vectors."""
    M, _ = _matrix(R)
    A = np.asarray(M, dtype=float)
    _, s, Vt = np.linalg.svd(A, full_matrices=True)
    tol = default_rank_tol(A.shape, float(s[0]) if s.size else 0.0) if rank_tol is None else rank_tol
    r = int(np.count_nonzero(s > tol))
    return Vt[r:].copy()


# -- pseudoinverse ---------------------------------------------------------------

def pseudoinverse(R, rank_tol: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse ``V diag(1/sigma) U^T`` over the numerical rank."""
    dec = R if isinstance(R, SvdDecomposition) else svd(R, rank_tol)
    return (dec.Vt.T / dec.sigma) @ dec.U.T


def least_squares_durations(R, tau, rank_tol: float | None = None) -> np.ndarray:
    """Minimum-norm least-squares durations ``R+ tau`` for target path durations.

    Negative entries are possible; a RuntimeWarning is issued when they occur
    since such a vector cannot be scheduled as is.
    """
    P = pseudoinverse(R, rank_tol)
    tau = np.asarray(tau, dtype=float)
    if tau.shape != (P.shape[1],):
        raise DimensionError(f"target vector has shape {tau.shape}, expected ({P.shape[1]},)")
    t = P @ tau
    if (t < 0).any():
        warnings.warn("least-squares durations contain negative entries", RuntimeWarning, stacklevel=2)
    return t


def reachability(R, tau, rank_tol: float | None = None) -> Reachability:
    """Whether ``tau`` lies in the column space of R, with the projection residual."""
    dec = R if isinstance(R, SvdDecomposition) else svd(R, rank_tol)
    tau = np.asarray(tau, dtype=float)
    m = dec.matrix.shape[0]
    if tau.shape != (m,):
        raise DimensionError(f"target vector has shape {tau.shape}, expected ({m},)")
    proj = dec.U @ (dec.U.T @ tau)
    residual = float(np.linalg.norm(proj - tau))
    if dec.numerical_rank == m:
        return Reachability(True, residual)
    return Reachability(residual <= 1e-9 * max(1.0, float(np.linalg.norm(tau))), residual)
