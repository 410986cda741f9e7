"""Seasonal ARIMA estimated by conditional sum of squares.

Sign conventions follow Box and Jenkins:

    phi(B) Phi(B^s) (w_t - mu) = theta(B) Theta(B^s) e_t

with ``phi(B) = 1 - phi_1 B - ...`` and ``theta(B) = 1 - theta_1 B - ...``,
where ``w`` is the series after ``(1 - B)^d (1 - B^s)^D`` differencing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

from ._search import coordinate_search
from .series import InsufficientDataError, as_array

BOUND = 0.99
START_POINTS = (-0.5, 0.0, 0.5)


@dataclass(frozen=True, order=True)
class SarimaOrder:
    p: int = 0
    d: int = 0
    q: int = 0
    P: int = 0
    D: int = 0
    Q: int = 0
    s: int = 12

    def __post_init__(self):
        if min(self.p, self.d, self.q, self.P, self.D, self.Q) < 0:
            raise ValueError("orders must be non-negative")
        if self.s < 2:
            raise ValueError("seasonal period must be at least 2")

    @property
    def n_coef(self) -> int:
        return self.p + self.q + self.P + self.Q

    @property
    def n_diff(self) -> int:
        return self.d + self.D * self.s

    @property
    def has_mean(self) -> bool:
        return self.d + self.D == 0

    @property
    def min_length(self) -> int:
        return self.n_diff + self.s * max(self.P, self.Q) + max(self.p, self.q) + 5

    def __str__(self) -> str:
        return f"({self.p},{self.d},{self.q})({self.P},{self.D},{self.Q})[{self.s}]"


@dataclass(frozen=True)
class SarimaFit:
    order: SarimaOrder
    phi: np.ndarray
    theta: np.ndarray
    Phi_s: np.ndarray
    Theta_s: np.ndarray
    mu: float
    sigma2: float
    residuals: np.ndarray  # on the differenced scale
    fitted: np.ndarray  # original scale, NaN where differencing consumed data
    history: np.ndarray = field(repr=False)
    converged: bool = True
    degenerate: bool = False

    @property
    def params(self) -> np.ndarray:
        return np.concatenate([self.phi, self.theta, self.Phi_s, self.Theta_s])

    def param_dict(self) -> dict[str, float]:
        out = {}
        for name, arr in (("phi", self.phi), ("theta", self.theta), ("Phi", self.Phi_s), ("Theta", self.Theta_s)):
            for i, v in enumerate(arr, 1):
                out[f"{name}{i}"] = float(v)
        out["mu"] = self.mu
        out["sigma2"] = self.sigma2
        return out


def _diff_poly(d: int, D: int, s: int) -> np.ndarray:
    poly = np.array([1.0])
    for _ in range(d):
        poly = np.convolve(poly, [1.0, -1.0])
    seasonal = np.zeros(s + 1)
    seasonal[0], seasonal[s] = 1.0, -1.0
    for _ in range(D):
        poly = np.convolve(poly, seasonal)
    return poly


def difference(values, d: int, D: int = 0, s: int = 12) -> np.ndarray:
    """Apply ``(1 - B)^d (1 - B^s)^D``; output is ``d + D*s`` shorter."""
    y = as_array(values)
    r = d + D * s
    if y.size <= r:
        raise InsufficientDataError(f"differencing needs more than {r} values, got {y.size}")
    poly = _diff_poly(d, D, s)
    return np.convolve(y, poly, mode="valid")


def undifference(w, head, d: int, D: int = 0, s: int = 12) -> np.ndarray:
    """Invert :func:`difference` given the first ``d + D*s`` original values."""
    poly = _diff_poly(d, D, s)
    r = poly.size - 1
    head = as_array(head)
    if head.size != r:
        raise ValueError(f"need exactly {r} initial values")
    out = np.concatenate([head, np.zeros(len(w))])
    for t, wt in enumerate(as_array(w), start=r):
        out[t] = wt - np.dot(poly[1:], out[t - 1 :: -1][:r]) if r else wt
    return out


def _split(params, order: SarimaOrder):
    x = np.asarray(params, dtype=float)
    p, q, P = order.p, order.q, order.P
    return x[:p], x[p : p + q], x[p + q : p + q + P], x[p + q + P :]


def _product_poly(coefs, seasonal, s: int) -> np.ndarray:
    # coefficients of (1 - sum c_i B^i)(1 - sum C_j B^{j s})
    base = np.zeros(len(coefs) + 1)
    base[0] = 1.0
    base[1:] = -np.asarray(coefs)
    poly = np.zeros(base.size + len(seasonal) * s)
    poly[: base.size] = base
    for j, c in enumerate(seasonal, 1):
        poly[j * s : j * s + base.size] -= c * base
    return poly


def _polys(params, order: SarimaOrder):
    phi, theta, Phi, Theta = _split(params, order)
    return _product_poly(phi, Phi, order.s), _product_poly(theta, Theta, order.s)


def _admissible(coefs) -> bool:
    # stationarity/invertibility region of 1 - c1 B - c2 B^2
    if len(coefs) < 2:
        return True
    c1, c2 = coefs[0], coefs[1]
    return c1 + c2 < 1.0 and c2 - c1 < 1.0 and abs(c2) < 1.0


class _CSS:
    """CSS objective bound to one differenced series and order."""

    def __init__(self, w: np.ndarray, order: SarimaOrder):
        self.order = order
        self.mu = float(w.mean()) if order.has_mean else 0.0
        self.z = w - self.mu

    def residuals(self, params) -> np.ndarray:
        ar, ma = _polys(params, self.order)
        return lfilter(ar, ma, self.z)

    def __call__(self, params) -> float:
        order = self.order
        if len(params) and np.max(np.abs(params)) > BOUND + 1e-12:
            return math.inf
        if (order.p == 2 and not _admissible(params[:2])) or (
            order.q == 2 and not _admissible(params[order.p : order.p + 2])
        ):
            return math.inf
        e = self.residuals(params)
        value = float(np.dot(e, e))
        return value if math.isfinite(value) else math.inf


def css_objective(params, w, order: SarimaOrder) -> float:
    """Conditional sum of squares of the one-step residuals.

    Pre-sample residuals are zero and pre-sample observations sit at the
    mean, so the recursion starts at the first observation. Parameters
    outside the admissible region score ``inf``.
    """
    params = np.asarray(params, dtype=float)
    if params.size != order.n_coef:
        raise ValueError(f"expected {order.n_coef} parameters, got {params.size}")
    return _CSS(as_array(w), order)(params)


def fit_sarima(train, order: SarimaOrder, tol: float = 1e-7, n_starts: int = 3, max_evals: int = 20_000) -> SarimaFit:
    """Fit by minimizing the CSS with coordinate search inside ``[-0.99, 0.99]``.

    The objective is evaluated on a 3-point-per-coefficient start grid; the
    ``n_starts`` best grid points are refined and the best result is kept.
    """
    y = as_array(train)
    if y.size < order.min_length:
        raise InsufficientDataError(
            f"SARIMA{order} needs at least {order.min_length} observations, got {y.size}"
        )
    w = difference(y, order.d, order.D, order.s)
    objective = _CSS(w, order)
    mu = objective.mu
    k = order.n_coef

    converged = True
    if k == 0:
        best_x = np.zeros(0)
    else:
        starts = [np.array(p, dtype=float) for p in itertools.product(START_POINTS, repeat=k)]
        scores = [objective(x) for x in starts]
        ranked = sorted(range(len(starts)), key=lambda i: (scores[i], i))[:n_starts]
        best_x, best_f = None, math.inf
        for i in ranked:
            res = coordinate_search(objective, starts[i], -BOUND, BOUND, 0.25, tol, max_evals, f0=scores[i])
            if res.fun < best_f:
                best_x, best_f, converged = res.x, res.fun, res.converged
        if best_x is None:
            raise ValueError(f"SARIMA{order}: no admissible starting point")
    e = objective.residuals(best_x)
    sigma2 = float(np.dot(e, e) / w.size)
    fitted = np.full(y.size, np.nan)
    fitted[order.n_diff :] = y[order.n_diff :] - e
    phi, theta, Phi, Theta = _split(best_x, order)
    scale = max(float(np.mean(y**2)), 1e-300)
    return SarimaFit(
        order=order,
        phi=phi.copy(),
        theta=theta.copy(),
        Phi_s=Phi.copy(),
        Theta_s=Theta.copy(),
        mu=mu,
        sigma2=sigma2,
        residuals=e,
        fitted=fitted,
        history=y.copy(),
        converged=converged,
        degenerate=sigma2 <= 1e-20 * scale,
    )


def forecast_sarima(fit: SarimaFit, horizon: int) -> np.ndarray:
    """Iterate the ARMA recursion with zero future shocks, then undo differencing."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    order = fit.order
    ar, ma = _polys(fit.params, order)
    w = difference(fit.history, order.d, order.D, order.s)
    z = np.concatenate([w - fit.mu, np.zeros(horizon)])
    e = np.concatenate([fit.residuals, np.zeros(horizon)])
    n = w.size
    for t in range(n, n + horizon):
        acc = 0.0
        for k in range(1, ar.size):
            if t - k >= 0:
                acc -= ar[k] * z[t - k]
        for k in range(1, ma.size):
            if t - k >= 0:
                acc += ma[k] * e[t - k]
        z[t] = acc
    w_future = z[n:] + fit.mu
    poly = _diff_poly(order.d, order.D, order.s)
    ext = np.concatenate([fit.history, np.zeros(horizon)])
    m = fit.history.size
    for j in range(horizon):
        t = m + j
        ext[t] = w_future[j] - np.dot(poly[1:], ext[t - 1 :: -1][: poly.size - 1])
    return ext[m:]


def aicc(fit: SarimaFit, window: int | None = None) -> float:
    """Small-sample AIC from the Gaussian CSS variance.

    ``window`` restricts the variance to the last ``window`` one-step
    residuals, which puts fits with different differencing orders on the
    same observations.
    """
    e = fit.residuals if window is None else fit.residuals[-window:]
    n = e.size
    k = fit.order.n_coef + int(fit.order.has_mean) + 1
    if n - k - 1 <= 0:
        return math.inf
    sigma2 = max(float(np.dot(e, e)) / n, 1e-300)
    return n * math.log(sigma2) + 2 * k + 2 * k * (k + 1) / (n - k - 1)


def candidate_orders(n: int, s: int) -> list[SarimaOrder]:
    """Orders on the search grid that the series length can support."""
    out = []
    for p, d, q, P, D, Q in itertools.product(range(3), range(2), range(3), range(2), range(2), range(2)):
        order = SarimaOrder(p, d, q, P, D, Q, s)
        if n < order.min_length:
            continue
        n_eff = n - order.n_diff
        if order.n_coef + int(order.has_mean) >= n_eff / 3:
            continue
        out.append(order)
    return out


PARSIMONY_BAND = 2.0


def select_order(train, s: int = 12, tol: float = 1e-3, band: float = PARSIMONY_BAND) -> SarimaOrder:
    """Exhaustive AICc search over p, q <= 2; P, Q, d, D <= 1.

    Every candidate is scored on the residuals of the observations left
    after the largest differencing among the candidates. Among the orders
    within ``band`` AICc units of the minimum, the one with the fewest ARMA
    coefficients wins, then the least differencing, then the lower AICc.
    With ``band=0`` this is plain minimum-AICc selection.
    """
    y = as_array(train)
    candidates = candidate_orders(y.size, s)
    if not candidates:
        raise InsufficientDataError(f"no SARIMA candidate can be fitted to {y.size} observations")
    window = y.size - max(order.n_diff for order in candidates)
    scored = []
    for order in candidates:
        try:
            fit = fit_sarima(y, order, tol=tol, n_starts=1)
        except ValueError:
            continue
        value = aicc(fit, window)
        if math.isfinite(value):
            scored.append((value, order))
    if not scored:
        raise ValueError("no SARIMA candidate could be fitted")
    best = min(v for v, _ in scored)
    # many near-equivalent candidates: prefer the simplest well-supported one
    eligible = [(o.n_coef, o.d + o.D, v, o) for v, o in scored if v <= best + band]
    return min(eligible)[3]
