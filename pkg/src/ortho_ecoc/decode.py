"""Turn binary decision values into class probabilities.

Decision values follow the convention ``r_j = P_j(+1|x) - P_j(-1|x)`` so
that ``A^T p = r`` holds exactly for consistent inputs.  Every decoder
returns a point on the probability simplex.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np
import scipy.linalg

from .codes import CodingMatrix, MatrixKind
from .exceptions import InvalidCodingMatrix, NotOrthogonalError

__all__ = [
    "SolverKind",
    "simplex_adjust",
    "unconstrained_orthogonal",
    "decode_orthogonal",
    "vote",
    "decode_constrained_lsq",
    "decode_one_vs_one",
    "default_solver",
    "check_solver",
    "decode_batch",
]

_RIDGE = 1e-10
_STEP_EPS = 1e-13


class SolverKind(str, Enum):
    ORTHOGONAL_FAST = "fast"
    CONSTRAINED_LSQ = "lsq"
    ONE_VS_ONE_KKT = "kkt"
    VOTE_ONLY = "vote"


def _as_matrix(A) -> CodingMatrix:
    return A if isinstance(A, CodingMatrix) else CodingMatrix(A)


def _as_decisions(A: CodingMatrix, r) -> np.ndarray:
    r = np.asarray(r, dtype=np.float64)
    if r.shape[-1] != A.n_codes:
        raise ValueError(f"expected {A.n_codes} decision values, got {r.shape[-1]}")
    if not math.isfinite(float(r.sum())):
        raise ValueError("decision values must be finite")
    return r


# --------------------------------------------------------------------------
# simplex adjustment


def simplex_adjust(p0, *, return_steps: bool = False):
    """Move ``p0`` to the nearest point of the probability simplex.

    Repeatedly shifts the still-active coordinates by their mean excess so
    they sum to one, then pins any coordinate that went negative to zero and
    drops it from the active set.  The loop ends on the first shift that
    leaves no negative coordinate; the result is the Euclidean projection.

    ``p0`` may be a single vector or a 2-D array of row vectors.  With
    ``return_steps=True`` (1-D input only) the successive nonzero
    displacements between normalized iterates are returned as well; they
    are mutually orthogonal.  Shifts at rounding level are not reported.
    """
    p = np.array(p0, dtype=np.float64)
    if p.ndim not in (1, 2) or p.shape[-1] < 1:
        raise ValueError("expected a non-empty vector or 2-D array")
    if not math.isfinite(float(p.sum())):
        raise ValueError("input must be finite")
    single = p.ndim == 1
    if return_steps and not single:
        raise ValueError("return_steps requires a single vector")
    if single:
        return _adjust_vector(p, return_steps)
    P = p
    active = np.ones(P.shape, dtype=bool)
    todo = np.arange(P.shape[0])
    while todo.size:
        sub = P[todo]
        act = active[todo]
        excess = (np.where(act, sub, 0.0).sum(axis=1) - 1.0) / act.sum(axis=1)
        sub -= excess[:, None] * act
        # pinned coordinates sit at exactly 0, so only active ones can be < 0
        neg = sub < 0.0
        sub[neg] = 0.0
        P[todo] = sub
        active[todo] = act & ~neg
        todo = todo[np.any(neg, axis=1)]
    return P


def _adjust_vector(p, return_steps):
    # plain floats: per-call numpy overhead dominates for short vectors
    vals = p.tolist()
    active = list(range(len(vals)))
    steps = []
    prev = list(vals)
    while True:
        shift = (sum([vals[i] for i in active]) - 1.0) / len(active)
        for i in active:
            vals[i] -= shift
        if return_steps:
            step = np.subtract(vals, prev)
            # skip shifts that only undo rounding in the running sum
            if np.max(np.abs(step)) > _STEP_EPS * (1.0 + np.max(np.abs(prev))):
                steps.append(step)
            prev = list(vals)
        keep = [i for i in active if vals[i] >= 0.0]
        if len(keep) == len(active):
            break
        for i in active:
            if vals[i] < 0.0:
                vals[i] = 0.0
        active = keep
    out = np.array(vals)
    if return_steps:
        return out, steps
    return out


# --------------------------------------------------------------------------
# orthogonal fast path


def _require_dense_orthogonal(A: CodingMatrix):
    if not A.is_dense_orthogonal:
        raise NotOrthogonalError("fast decoding needs a matrix with no zeros and A A^T = n I")


def unconstrained_orthogonal(A, r) -> np.ndarray:
    """``A r / n``: the unconstrained least-squares solution for orthogonal ``A``.

    The result may be negative or fail to sum to one.
    """
    A = _as_matrix(A)
    _require_dense_orthogonal(A)
    r = _as_decisions(A, r)
    return (r @ A.as_float.T) / A.n_codes


def decode_orthogonal(A, r) -> np.ndarray:
    A = _as_matrix(A)
    if A.n_classes == 1:
        return np.ones(np.shape(r)[:-1] + (1,))
    return simplex_adjust(unconstrained_orthogonal(A, r))


def vote(A, r):
    """``argmax A r`` with ties going to the lowest class index."""
    A = _as_matrix(A)
    r = _as_decisions(A, r)
    return np.argmax(r @ A.as_float.T, axis=-1)


# --------------------------------------------------------------------------
# general constrained least squares


class _LsqContext:
    """Per-matrix quantities reused across decodes."""

    def __init__(self, A: CodingMatrix):
        a = A.as_float
        m = A.n_classes
        self.a = a
        self.G = a @ a.T
        self.seed_map = np.linalg.pinv(a.T)
        # strict convexity on {sum p = 1}: G restricted to 1-perp is definite
        basis = np.linalg.svd(np.ones((1, m)))[2][1:].T
        if basis.size:
            h = basis.T @ self.G @ basis
            eig = np.linalg.eigvalsh(h)
            scale = max(1.0, float(np.abs(eig).max()))
            self.strict = bool(eig.min() > 1e-9 * scale)
        else:
            self.strict = True


def _context(A: CodingMatrix, name, factory):
    ctx = A.__dict__.get(name)
    if ctx is None:
        ctx = factory(A)
        A.__dict__[name] = ctx
    return ctx


def _equality_qp(G, c, free, strict):
    """Minimize ``p^T G p - 2 c^T p`` on the free set with ``sum p = 1``."""
    k = free.size
    K = np.empty((k + 1, k + 1))
    K[:k, :k] = G[np.ix_(free, free)]
    K[:k, k] = 1.0
    K[k, :k] = 1.0
    K[k, k] = 0.0
    rhs = np.append(c[free], 1.0)
    singular = False
    if not strict and np.linalg.cond(K) > 1e12:
        singular = True
        K[:k, :k] += _RIDGE * np.eye(k)
    try:
        sol = np.linalg.solve(K, rhs)
    except np.linalg.LinAlgError:
        singular = True
        K[:k, :k] += _RIDGE * np.eye(k)
        sol = np.linalg.solve(K, rhs)
    return sol[:k], singular


def decode_constrained_lsq(A, r, *, tol: float = 1e-9, return_info: bool = False):
    """Minimize ``|A^T p - r|^2`` over the simplex with a primal active set.

    Starts from the simplex-adjusted least-squares solution.  Each pass
    solves the equality-constrained problem on the free coordinates; if
    that leaves a coordinate negative the iterate moves as far as
    feasibility allows and pins the blocking coordinate at zero, otherwise
    the most negative multiplier of a pinned coordinate releases it.  Stops
    when the KKT conditions hold to ``tol`` or after ``10 m`` passes.

    With ``return_info=True`` also returns a dict with ``n_iter``,
    ``converged`` and ``degenerate`` (a singular subproblem was
    ridge-regularized).
    """
    A = _as_matrix(A)
    r = _as_decisions(A, r)
    if r.ndim != 1:
        raise ValueError("decode_constrained_lsq decodes one vector at a time")
    m = A.n_classes
    if m == 1:
        p = np.ones(1)
        return (p, {"n_iter": 0, "converged": True, "degenerate": False}) if return_info else p
    ctx = _context(A, "_lsq_ctx", _LsqContext)
    G = ctx.G
    c = ctx.a @ r

    p = simplex_adjust(ctx.seed_map @ r)
    free = p > 0.0
    degenerate = False
    converged = False
    n_iter = 0
    for n_iter in range(1, 10 * m + 1):
        idx = np.flatnonzero(free)
        q, singular = _equality_qp(G, c, idx, ctx.strict)
        degenerate |= singular
        if np.all(q >= 0.0):
            p = np.zeros(m)
            p[idx] = q
            grad = G @ p - c
            mu = grad[idx].mean()
            pinned = np.flatnonzero(~free)
            if pinned.size == 0:
                converged = True
                break
            mult = grad[pinned] - mu
            worst = np.argmin(mult)
            if mult[worst] >= -tol:
                converged = True
                break
            free[pinned[worst]] = True
        else:
            cur = p[idx]
            d = q - cur
            shrinking = d < 0.0
            ratios = np.full(idx.size, np.inf)
            ratios[shrinking] = cur[shrinking] / -d[shrinking]
            alpha = min(1.0, ratios.min())
            p[idx] = cur + alpha * d
            hit = idx[shrinking & (ratios <= alpha)]
            p[hit] = 0.0
            free[hit] = False
            if not free.any():
                free[np.argmax(q)] = True

    p = np.maximum(p, 0.0)
    p /= p.sum()
    if return_info:
        return p, {"n_iter": n_iter, "converged": converged, "degenerate": degenerate}
    return p


# --------------------------------------------------------------------------
# one-vs-one with a Lagrange multiplier


def _is_one_vs_one(A: CodingMatrix) -> bool:
    if A.kind is MatrixKind.ONE_VS_ONE:
        return True
    a = A.entries
    return bool(np.all(np.sum(a == 1, axis=0) == 1) and np.all(np.sum(a == -1, axis=0) == 1))


class _KktContext:
    def __init__(self, A: CodingMatrix):
        a = A.as_float
        m = A.n_classes
        K = np.zeros((m + 1, m + 1))
        K[:m, :m] = 2.0 * (a @ a.T)
        K[:m, m] = 1.0
        K[m, :m] = 1.0
        self.degenerate = np.linalg.cond(K) > 1e12
        if self.degenerate:
            K[:m, :m] += _RIDGE * np.eye(m)
        self.lu = scipy.linalg.lu_factor(K)
        self.a = a


def _kkt_raw(A: CodingMatrix, R: np.ndarray) -> np.ndarray:
    ctx = _context(A, "_kkt_ctx", _KktContext)
    R2 = np.atleast_2d(R)
    rhs = np.empty((A.n_classes + 1, R2.shape[0]))
    rhs[:-1] = 2.0 * (ctx.a @ R2.T)
    rhs[-1] = 1.0
    raw = scipy.linalg.lu_solve(ctx.lu, rhs)[:-1].T
    return raw[0] if R.ndim == 1 else raw


def decode_one_vs_one(A, r, *, return_raw: bool = False):
    """Least squares with only the sum-to-one constraint, via its KKT system.

    Solves ``[[2 A A^T, 1], [1^T, 0]] [p; lam] = [2 A r; 1]``.  A raw
    solution with negative entries is passed through :func:`simplex_adjust`.
    With ``return_raw=True`` returns ``(p, raw, clipped)``.  Accepts one
    vector or a 2-D batch.
    """
    A = _as_matrix(A)
    if not _is_one_vs_one(A):
        raise InvalidCodingMatrix("the KKT decoder needs a one-vs-one matrix")
    r = _as_decisions(A, r)
    raw = _kkt_raw(A, r)
    clipped = raw < 0.0
    clipped = clipped.any(axis=-1)
    p = simplex_adjust(raw) if np.any(clipped) else raw.copy()
    if return_raw:
        return p, raw, clipped
    return p


# --------------------------------------------------------------------------
# dispatch


def default_solver(A) -> SolverKind:
    A = _as_matrix(A)
    if A.is_dense_orthogonal:
        return SolverKind.ORTHOGONAL_FAST
    if A.kind is MatrixKind.ONE_VS_ONE:
        return SolverKind.ONE_VS_ONE_KKT
    return SolverKind.CONSTRAINED_LSQ


def check_solver(A, solver) -> SolverKind:
    """Resolve ``solver`` (``None``/"auto" picks a default) and check it fits ``A``."""
    A = _as_matrix(A)
    if solver is None or solver == "auto":
        return default_solver(A)
    solver = SolverKind(solver)
    if solver is SolverKind.ORTHOGONAL_FAST:
        _require_dense_orthogonal(A)
    elif solver is SolverKind.ONE_VS_ONE_KKT and not _is_one_vs_one(A):
        raise InvalidCodingMatrix("the KKT decoder needs a one-vs-one matrix")
    return solver


def decode_batch(A, R, solver=None) -> np.ndarray:
    """Decode a vector or a batch (rows) of decision values.

    Returns probabilities of shape ``(..., n_classes)``; for the vote-only
    solver returns class indices instead.
    """
    A = _as_matrix(A)
    solver = check_solver(A, solver)
    R = _as_decisions(A, R)
    if solver is SolverKind.VOTE_ONLY:
        return vote(A, R)
    if solver is SolverKind.ORTHOGONAL_FAST:
        return decode_orthogonal(A, R)
    if solver is SolverKind.ONE_VS_ONE_KKT:
        return decode_one_vs_one(A, R)
    if R.ndim == 1:
        return decode_constrained_lsq(A, R)
    return np.array([decode_constrained_lsq(A, row) for row in R]).reshape(R.shape[0], A.n_classes)
