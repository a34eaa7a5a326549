"""Slow reference solvers, used only to check the fast paths in tests.

Nothing here shares code with :mod:`ortho_ecoc.decode`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import OracleNotConverged

__all__ = ["OracleConfig", "project_simplex_by_sort", "qp_decode_oracle", "objective"]


@dataclass(frozen=True)
class OracleConfig:
    step_size: float | None = None
    max_iters: int = 100_000
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.step_size is not None and self.step_size <= 0:
            raise ValueError("step_size must be positive")


def project_simplex_by_sort(x) -> np.ndarray:
    """Euclidean projection onto the probability simplex by sorted thresholding."""
    x = np.asarray(x, dtype=np.float64)
    u = np.sort(x)[::-1]
    css = np.cumsum(u)
    ks = np.arange(1, x.size + 1)
    rho = np.nonzero(u - (css - 1.0) / ks > 0)[0][-1]
    tau = (css[rho] - 1.0) / (rho + 1)
    return np.maximum(x - tau, 0.0)


def objective(A, r, p) -> float:
    """Squared residual ``|A^T p - r|^2``."""
    a = np.asarray(getattr(A, "entries", A), dtype=np.float64)
    res = a.T @ np.asarray(p, dtype=np.float64) - np.asarray(r, dtype=np.float64)
    return float(res @ res)


def qp_decode_oracle(A, r, cfg: OracleConfig | None = None, *, history: list | None = None) -> np.ndarray:
    """Projected gradient descent on ``|A^T p - r|^2`` over the simplex.

    The default step ``1 / (2 |A|_F^2)`` is below ``1/L`` for the gradient
    Lipschitz constant ``L = 2 sigma_max(A)^2``, so the objective never
    increases.  Iteration stops once the gradient-mapping norm drops below
    ``cfg.tolerance``; hitting ``cfg.max_iters`` first raises
    :class:`OracleNotConverged`.  Pass a list as ``history`` to collect the
    objective at every iterate.
    """
    cfg = cfg or OracleConfig()
    a = np.asarray(getattr(A, "entries", A), dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    m = a.shape[0]
    step = cfg.step_size if cfg.step_size is not None else 1.0 / (2.0 * np.sum(a * a))
    p = np.full(m, 1.0 / m)
    for _ in range(cfg.max_iters):
        res = a.T @ p - r
        if history is not None:
            history.append(float(res @ res))
        grad = 2.0 * (a @ res)
        nxt = project_simplex_by_sort(p - step * grad)
        if np.linalg.norm(nxt - p) / step < cfg.tolerance:
            return nxt
        p = nxt
    raise OracleNotConverged(f"projected gradient did not converge in {cfg.max_iters} iterations")
