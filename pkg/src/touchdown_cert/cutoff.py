"""Explicit piecewise cut-off weights a(r) on [0, 1+beta].

Two closed-form families are provided, indexed by the interpolation
parameter q of the auxiliary weight h(u) = (1-u)^(-p) + K (1-u)^q:

* q = 0 (with an extra scale eta in (0,1]): a plateau, a cosine-power
  arc, and a polynomial tail;
* q = 1 (eta = 1): a plateau, two cosine-power arcs with distinct
  exponents, and the same polynomial tail.

Both satisfy a(1) = 1, a(1+beta) = 0, a nonincreasing, and are C^1
across every junction with slope -(p+1)/beta at r = 1. Construction
fails with Infeasible when the defining angle widths exceed the unit
interval; the search treats that as ordinary pruning, not an error.

Cut-offs are immutable and evaluation is pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Infeasible",
    "CutoffQ0",
    "CutoffQ1",
    "build_q0",
    "eval_q0",
    "build_q1",
    "eval_q1",
]


class Infeasible(Exception):
    """The requested cut-off does not exist for these parameters."""


@dataclass(frozen=True)
class CutoffQ0:
    """Constants of the q = 0 cut-off.

    m in (0,1) and M > 0 are the coefficients of the interior Riccati
    branch a''/a = m (a'/a)^2 - M; delta0 is the arc width, r0 = 1 - delta0
    the plateau edge, and D >= 1 the plateau height.
    """

    p: float
    mu: float
    beta: float
    K: float
    eta: float
    m: float
    M: float
    delta0: float
    r0: float
    D: float


@dataclass(frozen=True)
class CutoffQ1:
    """Constants of the q = 1 cut-off.

    A0..A3 are angle constants, delta1/delta2 the widths of the two
    cosine arcs, r0 = 1 - delta1 - delta2 and r1 = 1 - delta2 the
    junctions, alpha the exponent of the first arc, and D1, D2 (with
    factors D11, D12) the amplitudes. L = p(p+2) - K.
    """

    p: float
    mu: float
    beta: float
    K: float
    L: float
    A0: float
    A1: float
    A2: float
    A3: float
    delta1: float
    delta2: float
    r0: float
    r1: float
    alpha: float
    D1: float
    D2: float
    D11: float
    D12: float


def _check_positive(**kwargs: float) -> None:
    for name, v in kwargs.items():
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v}")


def build_q0(p: float, mu: float, beta: float, K: float, eta: float = 1.0) -> CutoffQ0:
    """Construct the q = 0 cut-off; raises Infeasible when it does not exist.

    Feasibility requires K >= p*eta/(mu*beta^2) - 1/((p+1)*eta^p) and the
    arc width delta0 <= 1.
    """
    _check_positive(p=p, mu=mu, beta=beta, K=K)
    if not 0 < eta <= 1:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")
    if K < p * eta / (mu * beta**2) - 1 / ((p + 1) * eta**p):
        raise Infeasible("K below the admissibility threshold")
    m = p / ((p + 1) * (1 + K * eta**p))
    M = p * K * mu / (eta * (1 + K * eta**p))
    slope_arg = ((p + 1) / beta) * math.sqrt((1 - m) / M)
    delta0 = math.atan(slope_arg) / math.sqrt(M * (1 - m))
    if delta0 > 1:
        raise Infeasible(f"arc width delta0 = {delta0:.6g} exceeds 1")
    D = (1 + (1 - m) / M * ((p + 1) / beta) ** 2) ** (1 / (2 * (1 - m)))
    return CutoffQ0(p=p, mu=mu, beta=beta, K=K, eta=eta, m=m, M=M,
                    delta0=delta0, r0=1 - delta0, D=D)


def eval_q0(c: CutoffQ0, r):
    """Evaluate the q = 0 cut-off at r (scalar or ndarray) in [0, 1+beta].

    Junction points r0 and 1 belong to the cosine branch; r > 1 uses the
    polynomial tail.
    """
    scalar = np.isscalar(r) or (isinstance(r, np.ndarray) and r.ndim == 0)
    rr = np.asarray(r, dtype=np.float64)
    if (rr < 0).any() or (rr > 1 + c.beta + 1e-12).any():
        raise ValueError("r outside [0, 1+beta]")
    out = np.empty_like(rr)
    plateau = rr < c.r0
    arc = (rr >= c.r0) & (rr <= 1.0)
    tail = rr > 1.0
    out[plateau] = c.D
    if arc.any():
        theta = math.sqrt(c.M * (1 - c.m)) * (rr[arc] - c.r0)
        # Feasibility pins theta within [0, pi/2); log-space power keeps
        # non-integer exponents exact and NaN-free.
        assert (theta >= 0).all() and (theta < math.pi / 2).all()
        out[arc] = c.D * np.exp(np.log(np.cos(theta)) / (1 - c.m))
    out[tail] = (np.clip(1 + c.beta - rr[tail], 0.0, None) / c.beta) ** (c.p + 1)
    return float(out) if scalar else out


def build_q1(p: float, mu: float, beta: float, K: float) -> CutoffQ1:
    """Construct the q = 1 cut-off; raises Infeasible when it does not exist.

    Requires K <= p, K*mu*beta^2 <= (p(p+2)-K)/p, and delta1 + delta2 <= 1.
    """
    _check_positive(p=p, mu=mu, beta=beta, K=K)
    if K > p:
        raise Infeasible(f"K = {K} exceeds p = {p}")
    L = p * (p + 2) - K
    if K * mu * beta**2 > L / p:
        raise Infeasible("K*mu*beta^2 exceeds (p(p+2)-K)/p")
    A0 = math.sqrt((p * (1 + K) + K * L) / (p * (1 + K) ** 2))
    A1 = math.atan(math.sqrt(p * (1 + K) / L + K))
    A2 = math.atan(math.sqrt(p / L))
    A3 = math.atan(1 / math.sqrt(K * mu * beta**2))
    delta1 = A1 / (A0 * math.sqrt(K * mu))
    delta2 = (A3 - A2) / math.sqrt(K * mu)
    if delta1 + delta2 > 1:
        raise Infeasible(f"arc widths delta1+delta2 = {delta1 + delta2:.6g} exceed 1")
    alpha = (p + 1) / ((1 + K) * A0**2)
    D2 = (1 + 1 / (K * mu * beta**2)) ** ((p + 1) / 2)
    D11 = math.sqrt(1 + K + p * (1 + K) / L)
    D12 = math.sqrt(1 + p / L)
    D1 = D2 * D11**alpha / D12 ** (p + 1)
    return CutoffQ1(p=p, mu=mu, beta=beta, K=K, L=L, A0=A0, A1=A1, A2=A2, A3=A3,
                    delta1=delta1, delta2=delta2, r0=1 - delta1 - delta2,
                    r1=1 - delta2, alpha=alpha, D1=D1, D2=D2, D11=D11, D12=D12)


def eval_q1(c: CutoffQ1, r):
    """Evaluate the q = 1 cut-off at r (scalar or ndarray) in [0, 1+beta].

    Junction points r0 and r1 belong to the piece on their right; r = 1
    belongs to the second cosine arc and r > 1 to the polynomial tail.
    """
    scalar = np.isscalar(r) or (isinstance(r, np.ndarray) and r.ndim == 0)
    rr = np.asarray(r, dtype=np.float64)
    if (rr < 0).any() or (rr > 1 + c.beta + 1e-12).any():
        raise ValueError("r outside [0, 1+beta]")
    out = np.empty_like(rr)
    root = math.sqrt(c.K * c.mu)
    plateau = rr < c.r0
    arc1 = (rr >= c.r0) & (rr < c.r1)
    arc2 = (rr >= c.r1) & (rr <= 1.0)
    tail = rr > 1.0
    out[plateau] = c.D1
    if arc1.any():
        theta = c.A0 * root * (rr[arc1] - c.r0)
        assert (theta >= 0).all() and (theta < math.pi / 2).all()
        out[arc1] = c.D1 * np.exp(c.alpha * np.log(np.cos(theta)))
    if arc2.any():
        theta = root * (rr[arc2] - 1.0) + c.A3
        assert (theta > 0).all() and (theta < math.pi / 2).all()
        out[arc2] = c.D2 * np.exp((c.p + 1) * np.log(np.cos(theta)))
    out[tail] = (np.clip(1 + c.beta - rr[tail], 0.0, None) / c.beta) ** (c.p + 1)
    return float(out) if scalar else out
