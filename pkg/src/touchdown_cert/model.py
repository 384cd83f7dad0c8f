"""Problem parameters, derived constants, and hypothesis validation.

All types are immutable values and all operations are pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .specfun import overline_cot

__all__ = [
    "ProblemParams",
    "TheoremId",
    "DerivedConstants",
    "HypothesisReport",
    "mu0",
    "mu1",
    "derive_constants",
    "t0",
    "validate_hypotheses",
]


class TheoremId(Enum):
    """Which finite-dimensional optimization problem to solve.

    OP1: three parameters (tau, beta, K); requires mu > mu1.
    OP2: four parameters (tau, beta, K, eta); requires only mu > mu0.
    OP3: four parameters (beta, K, tau, lambda); sharper ratios, requires
         mu > max(mu0, arctan^2(sqrt(p+1))/p) and d < sqrt((p+1)/(p mu)) < d0.
    """

    OP1 = "op1"
    OP2 = "op2"
    OP3 = "op3"


@dataclass(frozen=True)
class ProblemParams:
    """Physical and geometric inputs of the touchdown-exclusion problem.

    p: singularity exponent (> 0).
    mu: lower bound of the permittivity on the bump(s).
    f_inf: global supremum bound for the permittivity profile.
    d: exclusion margin between the bump and the protected region.
    d0: boundary clearance (distance from bump edge to the boundary, minus 1).
    d1: optional half-gap between bumps minus 1 (multi-bump geometries only).
    """

    p: float
    mu: float
    f_inf: float
    d: float
    d0: float
    d1: float | None = None

    def __post_init__(self) -> None:
        if not self.p > 0:
            raise ValueError("p must be positive")
        if not 0 < self.mu <= self.f_inf:
            raise ValueError("need 0 < mu <= f_inf")
        if not 0 < self.d < self.d0:
            raise ValueError("need 0 < d < d0")
        if self.d1 is not None and not self.d1 > 0:
            raise ValueError("d1 must be positive when given")

    def effective_d0(self) -> float:
        """d0 for the checks: min(d0, d1) when a multi-bump gap is declared."""
        if self.d1 is None:
            return self.d0
        return min(self.d0, self.d1)


@dataclass(frozen=True)
class DerivedConstants:
    """Closed-form constants derived from ProblemParams."""

    mu0: float
    mu1: float
    cp: float
    t_star: float
    t_bar: float


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of the per-theorem hypothesis check.

    Failures are reported, not thrown, so a front end can explain which
    theorem applies to a given input.
    """

    theorem: TheoremId
    passed: bool
    violations: tuple[str, ...]


def mu0(p: float) -> float:
    """mu0(p) = (p^p/(p+1)^(p+1)) * pi^2/4, the weaker permittivity threshold."""
    return p**p / (p + 1) ** (p + 1) * math.pi**2 / 4


def mu1(p: float) -> float:
    """mu1(p) = 2*mu0(p), the stronger permittivity threshold."""
    return 2 * mu0(p)


def derive_constants(params: ProblemParams) -> DerivedConstants:
    """Compute all derived constants; requires mu > mu0 (else t_bar is undefined)."""
    m0 = mu0(params.p)
    if params.mu <= m0:
        raise ValueError(f"mu={params.mu} <= mu0={m0}: t_bar undefined")
    p = params.p
    return DerivedConstants(
        mu0=m0,
        mu1=2 * m0,
        cp=(p + 1) ** (p + 1) / p**p,
        t_star=1.0 / ((p + 1) * params.f_inf),
        t_bar=1.0 / ((p + 1) * (params.mu - m0)),
    )


def t0(tau: float, params: ProblemParams) -> float:
    """t0(tau) = (1 - tau^(p+1)) / ((p+1) * f_inf), in (0, t_star)."""
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    p = params.p
    return (1 - tau ** (p + 1)) / ((p + 1) * params.f_inf)


def validate_hypotheses(theorem: TheoremId, params: ProblemParams) -> HypothesisReport:
    """Check the applicability hypotheses of the selected theorem.

    For OP3 with a multi-bump geometry, d0 is replaced by min(d0, d1) before
    checking. Returns a report naming each violated inequality.
    """
    p, mu = params.p, params.mu
    violations: list[str] = []
    if theorem is TheoremId.OP1:
        m1 = mu1(p)
        if not mu > m1:
            violations.append(f"mu={mu} <= mu1(p)={m1:.6g}")
        thr = (p + 1) / math.sqrt(p * mu) * overline_cot(math.sqrt(p * mu)) if mu > 0 else math.inf
        if not params.d0 > thr:
            violations.append(f"d0={params.d0} <= ((p+1)/sqrt(p*mu))*cotbar(sqrt(p*mu))={thr:.6g}")
    elif theorem is TheoremId.OP2:
        m0 = mu0(p)
        if not mu > m0:
            violations.append(f"mu={mu} <= mu0(p)={m0:.6g}")
    elif theorem is TheoremId.OP3:
        d0_eff = params.effective_d0()
        m0 = mu0(p)
        thr = max(m0, math.atan(math.sqrt(p + 1)) ** 2 / p)
        if not mu > thr:
            violations.append(f"mu={mu} <= max(mu0, arctan^2(sqrt(p+1))/p)={thr:.6g}")
        window = math.sqrt((p + 1) / (p * mu))
        if not params.d < window:
            violations.append(f"d={params.d} >= sqrt((p+1)/(p*mu))={window:.6g}")
        if not window < d0_eff:
            violations.append(f"sqrt((p+1)/(p*mu))={window:.6g} >= effective d0={d0_eff}")
    else:  # pragma: no cover - closed enumeration
        raise ValueError(f"unknown theorem {theorem}")
    return HypothesisReport(theorem=theorem, passed=not violations, violations=tuple(violations))
