"""Scalar functionals of the threshold-ratio optimization problems.

Every functional is available in two modes:

* Explore: a fast plain discretization (node minima, composite Simpson)
  used to rank candidates during the search;
* Certify: a guaranteed lower bound obtained from shifted-quotient
  minima and one-sided rectangle rules, valid because every numerator
  and denominator involved is monotone on the discretized interval.

Certified values are mathematical lower bounds of the target up to the
1e-13 error-function kernel error and round-off. All operations are
pure; concurrent use is unrestricted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cutoff import CutoffQ1, Infeasible, build_q1, eval_q1
from .model import ProblemParams, derive_constants, mu0
from .specfun import erf

__all__ = [
    "BoundMode",
    "BoundValue",
    "SingularityReached",
    "S",
    "H_bound",
    "G_bound",
    "delta",
    "Ytilde",
    "Lambda_lower",
    "u_tilde",
    "W",
    "Gstar_bound",
    "rho2",
]


class SingularityReached(Exception):
    """The integrand's barrier factor left its domain; candidate rejected."""


@dataclass(frozen=True)
class BoundMode:
    """Evaluation mode: certified lower bound or fast exploration."""

    certified: bool
    n_points: int

    def __post_init__(self) -> None:
        if self.n_points < 2:
            raise ValueError("n_points must be >= 2")

    @staticmethod
    def explore(n_points: int) -> "BoundMode":
        return BoundMode(certified=False, n_points=n_points)

    @staticmethod
    def certify(n_points: int) -> "BoundMode":
        return BoundMode(certified=True, n_points=n_points)


@dataclass(frozen=True)
class BoundValue:
    """A bound evaluation: value, certification flag, and, when certified,
    an a-posteriori estimate of the discretization error."""

    value: float
    certified: bool
    error_estimate: float | None = None


def S(t: float, beta: float, d0: float, *, sharp: bool = False) -> float:
    """Heat-semigroup retention factor S(t, beta) in (0, 1).

    The default uses a conservative decay exponent 4*pi^2*t/(d0+1)^2; with
    sharp=True the proven exponent pi^2*t/(4*(d0+1)^2) is used. Both are
    valid lower bounds of the true factor (conservative <= sharp <= true).
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if not 0 <= beta < d0:
        raise ValueError("need 0 <= beta < d0")
    rate = math.pi**2 / (4 * (d0 + 1) ** 2) if sharp else 4 * math.pi**2 / (d0 + 1) ** 2
    return math.exp(-rate * t) * (1 - math.exp(-d0 * (d0 - beta) / t))


def _shifted_min(N: np.ndarray, D: np.ndarray) -> tuple[float, float]:
    """Certified min over quotients N[i+1]/D[i] plus its error estimate.

    Valid lower bound of inf N/D on the interval when both N and D are
    nonincreasing. D must be strictly positive on all but the last node.
    """
    Dm = D[:-1]
    assert (Dm > 0).all()
    q = N[1:] / Dm
    i0 = int(np.argmin(q))
    return float(q[i0]), float((N[i0] - N[i0 + 1]) / Dm[i0])


def _NH_DH(x: np.ndarray, t, beta: float, p: float) -> tuple[np.ndarray, np.ndarray]:
    sq = np.sqrt(t)
    N = erf((1 + beta * x / 2) / sq) - erf(beta * x / (2 * sq))
    D = (1 - x) ** (p + 1)
    return N, D


def H_bound(t: float, beta: float, p: float, mode: BoundMode) -> BoundValue:
    """Bound of H(t, beta) = inf_{0<x<1} N_H(x)/D_H(x)."""
    if t <= 0 or beta <= 0:
        raise ValueError("need t > 0 and beta > 0")
    n = mode.n_points
    x = np.linspace(0.0, 1.0, n + 1)
    N, D = _NH_DH(x, t, beta, p)
    if mode.certified:
        v, err = _shifted_min(N, D)
        return BoundValue(v, True, err)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(D > 0, N / D, np.inf)
    return BoundValue(float(np.min(q)), False)


def H_explore_over_t(ts: np.ndarray, beta: float, p: float, n: int) -> np.ndarray:
    """Vectorized exploration of H over an array of times (search hot path)."""
    x = np.linspace(0.0, 1.0, n + 1)[None, :]
    N, D = _NH_DH(x, np.asarray(ts)[:, None], beta, p)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(D > 0, N / D, np.inf)
    return np.min(q, axis=1)


def _g_consts(beta: float, K: float, eta: float, p: float, mu: float):
    L = 1 + (p + 1) * K * eta**p
    Gam = math.sqrt((p + 1) * eta * L / (p * K * mu * beta**2))
    A = math.atan(Gam)
    alpha = 1 + p / L
    dlt = A * (1 + K * eta**p) * math.sqrt((p + 1) * eta / (p * L * K * mu))
    return L, Gam, A, alpha, dlt


def delta(beta: float, K: float, eta: float, p: float, mu: float) -> float:
    """Feasibility width delta(beta, K, eta); the candidate is usable iff <= 1."""
    if min(beta, K, eta, p, mu) <= 0:
        raise ValueError("all arguments must be positive")
    return _g_consts(beta, K, eta, p, mu)[4]


def _NG_DG(x: np.ndarray, t, beta: float, K: float, eta: float, p: float, mu: float):
    _, Gam, A, alpha, dlt = _g_consts(beta, K, eta, p, mu)
    if dlt > 1:
        raise Infeasible(f"delta = {dlt:.6g} exceeds 1")
    sq = np.sqrt(t)
    N = erf((2 - (1 - x) * dlt) / (2 * sq)) + erf((1 - x) * dlt / (2 * sq))
    D = (Gam**2 + 1) ** (alpha / 2) * np.cos(A * x) ** alpha
    return N, D


def G_bound(t: float, beta: float, K: float, eta: float, p: float, mu: float,
            mode: BoundMode) -> BoundValue:
    """Bound of G(t, beta, K, eta); raises Infeasible when delta > 1."""
    if t <= 0:
        raise ValueError("t must be positive")
    n = mode.n_points
    x = np.linspace(0.0, 1.0, n + 1)
    N, D = _NG_DG(x, t, beta, K, eta, p, mu)
    if mode.certified:
        v, err = _shifted_min(N, D)
        return BoundValue(v, True, err)
    return BoundValue(float(np.min(N / D)), False)


def G_explore_over_t(ts: np.ndarray, beta: float, K: float, eta: float, p: float,
                     mu: float, n: int) -> np.ndarray:
    """Vectorized exploration of G over an array of times (search hot path)."""
    x = np.linspace(0.0, 1.0, n + 1)[None, :]
    N, D = _NG_DG(x, np.asarray(ts)[:, None], beta, K, eta, p, mu)
    return np.min(N / D, axis=1)


def Ytilde(t: float, s: float, p: float, mu: float, d0: float) -> float:
    """Lower barrier proxy Ytilde(t, s), increasing in s; Ytilde(t, 0) = 0."""
    if not 0 <= s < t:
        raise ValueError("need 0 <= s < t")
    if s == 0:
        return 0.0
    return S(t, 0.0, d0, sharp=True) * erf(1 / math.sqrt(s)) * (p + 1) * mu / 2 * s


def Lambda_lower(t: float, r: float, p: float, mu: float, beta: float, n_t: int,
                 mode: BoundMode, d0: float) -> float:
    """Bound of the memory integral Lambda(t, r).

    Certify uses a left-endpoint rectangle rule with every factor bounded
    from below (barrier weight at the left node, the moving error-function
    bracket at its minimizing endpoint, negative brackets clipped at 0).
    Explore uses composite Simpson on the same integrand. Raises
    SingularityReached when the barrier weight leaves its domain.
    """
    if t <= 0 or not 0 < r <= 1 + beta:
        raise ValueError("need t > 0 and r in (0, 1+beta]")
    if mode.certified:
        tj = np.linspace(0.0, t, n_t + 1)
        tl = tj[:-1]
        Yt = np.zeros(n_t)
        pos = tl > 0
        Yt[pos] = (S(t, 0.0, d0, sharp=True) * erf(1 / np.sqrt(tl[pos]))
                   * (p + 1) * mu / 2 * tl[pos])
        if (1 - Yt <= 0).any():
            raise SingularityReached("barrier weight 1 - Ytilde reached 0")
        w = (1 - Yt) ** (-p / (p + 1) - 1)
        tau_j = tl if r <= 1 else tj[1:]
        e1 = erf((r + 1) / (2 * np.sqrt(t - tl)))
        dtm = t - tau_j
        e2 = np.where(dtm > 0, erf((1 - r) / (2 * np.sqrt(np.where(dtm > 0, dtm, 1.0)))),
                      np.sign(1 - r))
        br = np.maximum(e1 + e2, 0.0)
        return float(0.5 * np.sum((t / n_t) * w * br))
    return float(_Lambda_simpson(t, np.array([r]), p, mu, d0, n_t)[0])


def _Lambda_simpson(t: float, rs: np.ndarray, p: float, mu: float, d0: float,
                    n_t: int) -> np.ndarray:
    """Simpson exploration of Lambda(t, r) for a vector of radii."""
    if n_t % 2:
        n_t += 1
    s = np.linspace(0.0, t, n_t + 1)
    Y = np.zeros_like(s)
    Y[1:] = (S(t, 0.0, d0, sharp=True) * erf(1 / np.sqrt(s[1:]))
             * (p + 1) * mu / 2 * s[1:])
    if (1 - Y <= 0).any():
        raise SingularityReached("barrier weight 1 - Y reached 0")
    w = (1 - Y) ** (-p / (p + 1) - 1)
    rs = np.asarray(rs, dtype=np.float64)[:, None]
    dtm = (t - s)[None, :]
    good = dtm > 0
    safe = np.where(good, dtm, 1.0)
    e1 = np.where(good, erf((rs + 1) / (2 * np.sqrt(safe))), 1.0)
    e2 = np.where(good, erf((1 - rs) / (2 * np.sqrt(safe))), np.sign(1 - rs))
    integ = w[None, :] * (e1 + e2)
    wts = np.ones(n_t + 1)
    wts[1:-1:2] = 4.0
    wts[2:-1:2] = 2.0
    return 0.5 * (t / n_t / 3) * (integ * wts[None, :]).sum(axis=1)


def u_tilde(r, lam: float, mu: float, f_inf: float, d: float, p: float):
    """Comparison sub-solution profile in (0, 1]; equals 1 for r <= 1 + d."""
    if not 0 < lam * mu <= f_inf:
        raise ValueError("need 0 < lambda*mu <= f_inf")
    cp = (p + 1) ** (p + 1) / p**p
    base = lam * mu / f_inf
    arg = math.sqrt(cp * f_inf) * np.maximum(np.asarray(r, dtype=np.float64) - 1 - d, 0.0)
    out = base + (1 - base) / np.cosh(np.minimum(arg, 700.0))
    return float(out) if np.isscalar(r) else out


def W(r, tau: float, K: float, lam: float, p: float, mu: float, f_inf: float,
      d: float):
    """Denominator weight W(r) = K z + z^(-p) with z = 1 - (1-tau) u_tilde(r).

    Nonincreasing in r for K <= p, which the admissible set enforces.
    """
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    if K > p:
        raise ValueError("need K <= p for monotonicity")
    z = 1 - (1 - tau) * u_tilde(r, lam, mu, f_inf, d, p)
    out = K * z + z ** (-p)
    return float(out) if np.isscalar(r) else out


def Gstar_bound(tau: float, t: float, beta: float, K: float, lam: float,
                n_r: int, n_t: int, mode: BoundMode, params: ProblemParams,
                cut: CutoffQ1 | None = None) -> BoundValue:
    """Bound of the sharpened ratio G*(tau, t, beta, K, lambda).

    The infimum over r in (r0, 1+beta) of a quotient whose numerator
    (memory-corrected error-function bracket) and denominator (W times
    the q = 1 cut-off) are both nonincreasing, so Certify uses the
    shifted-quotient minimum with certified Lambda values in the
    numerator. Raises Infeasible (cut-off) or SingularityReached.
    """
    p, mu, d0 = params.p, params.mu, params.effective_d0()
    if cut is None:
        cut = build_q1(p, mu, beta, K)
    s = S(t, beta, d0, sharp=True)
    r = np.linspace(cut.r0, 1 + beta, n_r + 1)
    if mode.certified:
        lam_vals = np.array([Lambda_lower(t, ri, p, mu, beta, n_t,
                                          BoundMode.certify(n_t), d0)
                             for ri in r])
    else:
        lam_vals = _Lambda_simpson(t, r, p, mu, d0, n_t)
    sq = math.sqrt(t)
    N = (1 + p * mu * s * lam_vals) * (erf((r + 1) / (2 * sq)) + erf((1 - r) / (2 * sq)))
    D = W(r, tau, K, lam, p, mu, params.f_inf, params.d) * eval_q1(cut, r)
    if mode.certified:
        v, err = _shifted_min(N, D)
        return BoundValue(v, True, err)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(D > 0, N / D, np.inf)
    return BoundValue(float(np.min(q)), False)


def rho2(tau: float, params: ProblemParams) -> float:
    """Second objective term rho2(tau) = tau^(p+1) / ((p+1)(Tbar - t0) mu).

    Tbar, an a-priori upper bound of the quenching time, stands in for
    the unknown true time, which keeps the value a valid lower bound.
    """
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    if params.mu <= mu0(params.p):
        raise ValueError("rho2 requires mu > mu0")
    dc = derive_constants(params)
    p = params.p
    t = (1 - tau ** (p + 1)) / ((p + 1) * params.f_inf)
    gap = dc.t_bar - t
    assert gap > 0
    return tau ** (p + 1) / ((p + 1) * gap * params.mu)
