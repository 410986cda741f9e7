"""Linear trend plus seasonal-dummy regression, solved by QR least squares."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .series import InsufficientDataError, as_array


@dataclass(frozen=True)
class RegressionFit:
    s: int
    c0: float
    t0: float
    betas: np.ndarray  # offsets of seasons 2..s relative to season 1
    fitted: np.ndarray

    @property
    def n(self) -> int:
        return self.fitted.size

    @property
    def coefficients(self) -> np.ndarray:
        return np.concatenate([[self.c0, self.t0], self.betas])


def design_matrix(n: int, s: int, start: int = 1) -> np.ndarray:
    """Columns ``[1, t, d_2, ..., d_s]`` for ``t = start .. start+n-1``.

    Season of ``t`` is ``((t - 1) mod s) + 1``; season 1 has no dummy column.
    """
    if s < 2:
        raise ValueError("seasonal period must be at least 2")
    if start == 1 and n < s + 1:
        raise InsufficientDataError(f"underdetermined design: n={n} < s+1={s + 1}")
    t = np.arange(start, start + n, dtype=float)
    season = (np.arange(start, start + n) - 1) % s + 1
    X = np.zeros((n, s + 1))
    X[:, 0] = 1.0
    X[:, 1] = t
    for j in range(2, s + 1):
        X[:, j] = season == j
    return X


def ols_fit(X, y) -> np.ndarray:
    """Least-squares coefficients via a reduced QR factorization.

    Raises:
        ValueError: if ``X`` is rank deficient.
    """
    X = np.asarray(X, dtype=float)
    y = as_array(y)
    if X.shape[0] != y.size:
        raise ValueError("design rows and observations differ in length")
    if X.shape[0] < X.shape[1]:
        raise ValueError("rank-deficient design: more columns than rows")
    Q, R = np.linalg.qr(X, mode="reduced")
    diag = np.abs(np.diag(R))
    col_scale = np.linalg.norm(X, axis=0)
    if np.any(diag <= 1e-10 * col_scale):
        raise ValueError("rank-deficient design matrix")
    return solve_triangular(R, Q.T @ y)


def fit_regression(train, s: int) -> RegressionFit:
    y = as_array(train)
    X = design_matrix(y.size, s)
    coef = ols_fit(X, y)
    return RegressionFit(s=s, c0=float(coef[0]), t0=float(coef[1]), betas=coef[2:].copy(), fitted=X @ coef)


def forecast_regression(fit: RegressionFit, horizon: int) -> np.ndarray:
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    X = design_matrix(horizon, fit.s, start=fit.n + 1)
    return X @ fit.coefficients
