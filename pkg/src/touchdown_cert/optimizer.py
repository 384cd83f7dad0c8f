"""Coarse-to-fine search over the admissible parameter sets.

Three steps per theorem: a coarse exploration grid with sound pruning, a
refinement pass around the best exploration candidates, and a final
certified evaluation of the refined argmax. Only the last step's value
is reported as a lower bound; exploration merely ranks candidates, so
its shortcuts never compromise soundness.

The search is deterministic: fixed grid enumeration order, fixed
tie-breaking (first strict improvement wins, which is the
lexicographically first tuple in enumeration order), no randomness.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .bounds import BoundMode, SingularityReached
from .cutoff import Infeasible
from .model import (ProblemParams, TheoremId, derive_constants, mu1, t0,
                    validate_hypotheses)

__all__ = [
    "SearchConfig",
    "Candidate",
    "CertifiedResult",
    "NoFeasibleCandidate",
    "objective",
    "certify_candidate",
    "prune_admits",
    "search",
]


class NoFeasibleCandidate(Exception):
    """The exploration grid never entered the admissible set."""


@dataclass(frozen=True)
class SearchConfig:
    """Grid sizes and discretization counts for the three-step search."""

    eps_beta: float = 0.1
    eps_K: float = 0.1
    n_tau: int = 10
    n_eta: int = 25
    n_x_explore: int = 20
    n_x_certify_H: int = 50_000
    n_x_certify_G: int = 2_000
    n_r_explore: int = 40
    n_r_certify: int = 5_000
    n_t_explore: int = 10
    n_t_certify: int = 100
    refine_points: int = 10
    lambda_start: float | None = None
    lambda_step: float = 0.01
    top_seeds: int = 3
    max_refine_passes: int = 5

    def __post_init__(self) -> None:
        if min(self.eps_beta, self.eps_K, self.lambda_step) <= 0:
            raise ValueError("steps must be positive")
        if self.n_x_certify_H < self.n_x_explore or self.n_x_certify_G < self.n_x_explore:
            raise ValueError("certify counts must be >= explore counts")
        if self.n_r_certify < self.n_r_explore or self.n_t_certify < self.n_t_explore:
            raise ValueError("certify counts must be >= explore counts")

    def lambda0(self, p: float) -> float:
        if self.lambda_start is not None:
            return self.lambda_start
        return 0.3 if p >= 2 else 0.4


@dataclass(frozen=True)
class Candidate:
    """A point of the finite-dimensional admissible set."""

    theorem: TheoremId
    tau: float
    beta: float
    K: float
    eta: float | None = None
    lam: float | None = None


@dataclass(frozen=True)
class CertifiedResult:
    """Final output: a certified lower bound of the threshold ratio.

    components holds every named factor of the objective so the bound can
    be recomputed; errors holds per-component discretization error
    estimates; explore_value is the Step-2 exploration score at the same
    candidate (diagnostic for the explore-vs-certify gap).
    """

    rho_lower: float
    candidate: Candidate
    components: dict[str, float] = field(default_factory=dict)
    errors: dict[str, float] = field(default_factory=dict)
    config: SearchConfig = field(default_factory=SearchConfig)
    explore_value: float = float("nan")


def prune_admits(c: Candidate, rho_opt: float, params: ProblemParams) -> bool:
    """False only when the candidate provably cannot beat rho_opt.

    Uses the trivial upper bounds on the objective factors (bracket, S,
    H/G all at most 1), so pruning is sound. For OP3 the same role is
    played by the rho2 cut inside the search loop; here only the shared
    tau cut applies.
    """
    if rho_opt <= 0:
        return True
    p, d = params.p, params.d
    two_rho = 2 * rho_opt
    if c.theorem in (TheoremId.OP1, TheoremId.OP2):
        if two_rho < 1 and c.beta < d / (1 - two_rho ** (1 / (p + 1))):
            return False
        if c.K > 1 / two_rho - 1:
            return False
        if c.tau < two_rho ** (1 / p):
            return False
    return True


def _beta_grid(d: float, d0: float, eps: float) -> list[float]:
    """Coarse beta values: start near the bump edge, sweep up then down."""
    b0 = min(1 + d, (d0 + d) / 2)
    out: list[float] = []
    b = b0
    while b < d0 - 1e-12:
        out.append(b)
        b += eps
    b = b0 - eps
    while b > d + 1e-12:
        out.append(b)
        b -= eps
    return out


def _lin(center: float, eps: float, n: int) -> list[float]:
    return [center - eps + 2 * eps * i / n for i in range(n + 1)]


def _dedup_seeds(cands: list[tuple], key_idx: tuple[int, ...], tol: tuple[float, ...],
                 k: int) -> list[tuple]:
    """Top-k candidates, deduplicated by distance in the keyed coordinates."""
    cands = sorted(cands, key=lambda c: -c[0])
    seeds: list[tuple] = []
    for c in cands:
        if all(any(abs(c[i] - s[i]) > t / 2 for i, t in zip(key_idx, tol))
               for s in seeds):
            seeds.append(c)
        if len(seeds) >= k:
            break
    return seeds


# ---------------------------------------------------------------------------
# Objective evaluation
# ---------------------------------------------------------------------------

def _op1_terms(c: Candidate, mode_H: BoundMode, mode_G: BoundMode,
               params: ProblemParams):
    p, d, d0 = params.p, params.d, params.effective_d0()
    t = t0(c.tau, params)
    s = bounds.S(t, c.beta, d0)
    H = bounds.H_bound(t, c.beta, p, mode_H)
    G = bounds.G_bound(t, c.beta, c.K, 1.0, p, params.mu, mode_G)
    bracket = ((c.beta - d) / c.beta) ** (p + 1)
    prefactor = 0.5 * bracket * s / (c.K + c.tau ** (-p))
    rho = prefactor * min(H.value, G.value)
    comps = {"S": s, "H": H.value, "G": G.value, "bracket": bracket}
    errs = {k: v for k, v in (("H", H.error_estimate), ("G", G.error_estimate))
            if v is not None}
    if errs:
        # Error propagated to the final bound: |min(H,G) - min(H_, G_)| is
        # at most the larger per-component estimate.
        errs["rho"] = prefactor * max(errs.values())
    return rho, comps, errs


def _op2_terms(c: Candidate, mode_H: BoundMode, mode_G: BoundMode,
               params: ProblemParams):
    p, d, d0 = params.p, params.d, params.effective_d0()
    eta = c.eta if c.eta is not None else 1.0
    dc = derive_constants(params)
    t = t0(c.tau, params)
    s_T = bounds.S(dc.t_bar, 0.0, d0)
    s_t = bounds.S(t, c.beta, d0)
    G_T = bounds.G_bound(dc.t_bar, c.beta, c.K, eta, p, params.mu, mode_G)
    H_t = bounds.H_bound(t, c.beta, p, mode_H)
    G_t = bounds.G_bound(t, c.beta, c.K, eta, p, params.mu, mode_G)
    bracket = ((c.beta - d) / c.beta) ** (p + 1)
    term1 = s_T / (c.K + eta ** (-p)) * G_T.value
    term2 = s_t / (c.K + c.tau ** (-p)) * min(H_t.value, G_t.value)
    rho1 = 0.5 * bracket * min(term1, term2)
    r2 = bounds.rho2(c.tau, params)
    rho = min(rho1, r2)
    comps = {"S_Tbar": s_T, "S_t0": s_t, "G_Tbar": G_T.value, "H_t0": H_t.value,
             "G_t0": G_t.value, "rho2": r2, "bracket": bracket}
    errs = {k: v for k, v in (("G_Tbar", G_T.error_estimate),
                              ("H_t0", H_t.error_estimate),
                              ("G_t0", G_t.error_estimate)) if v is not None}
    if errs:
        e1 = s_T / (c.K + eta ** (-p)) * errs.get("G_Tbar", 0.0)
        e2 = s_t / (c.K + c.tau ** (-p)) * max(errs.get("H_t0", 0.0),
                                               errs.get("G_t0", 0.0))
        errs["rho"] = 0.5 * bracket * max(e1, e2)
    return rho, comps, errs


def _op3_terms(c: Candidate, mode: BoundMode, n_r: int, n_t: int,
               params: ProblemParams):
    p, d, d0 = params.p, params.d, params.effective_d0()
    t = t0(c.tau, params)
    s = bounds.S(t, c.beta, d0, sharp=True)
    Gs = bounds.Gstar_bound(c.tau, t, c.beta, c.K, c.lam, n_r, n_t, mode, params)
    bracket = ((c.beta - d) / c.beta) ** (p + 1)
    rho1 = 0.5 * bracket * s * Gs.value
    r2 = bounds.rho2(c.tau, params)
    rho = min(rho1, r2, c.lam)
    comps = {"S": s, "Gstar": Gs.value, "rho2": r2, "lambda": c.lam,
             "bracket": bracket}
    errs = {}
    if Gs.error_estimate is not None:
        errs["Gstar"] = Gs.error_estimate
        errs["rho"] = 0.5 * bracket * s * Gs.error_estimate
    return rho, comps, errs


def objective(c: Candidate, mode: BoundMode, params: ProblemParams,
              cfg: SearchConfig = SearchConfig()) -> float:
    """Objective value of a candidate; -inf when it is infeasible.

    The partition counts come from cfg according to mode.certified; the
    mode's own n_points field is ignored so callers cannot desynchronize
    the per-functional counts.
    """
    try:
        if c.theorem is TheoremId.OP1:
            mH, mG = _modes(cfg, mode.certified)
            return _op1_terms(c, mH, mG, params)[0]
        if c.theorem is TheoremId.OP2:
            mH, mG = _modes(cfg, mode.certified)
            return _op2_terms(c, mH, mG, params)[0]
        n_r = cfg.n_r_certify if mode.certified else cfg.n_r_explore
        n_t = cfg.n_t_certify if mode.certified else cfg.n_t_explore
        m = BoundMode(mode.certified, max(n_r, 2))
        return _op3_terms(c, m, n_r, n_t, params)[0]
    except (Infeasible, SingularityReached):
        return float("-inf")


def _modes(cfg: SearchConfig, certified: bool) -> tuple[BoundMode, BoundMode]:
    if certified:
        return (BoundMode.certify(cfg.n_x_certify_H),
                BoundMode.certify(cfg.n_x_certify_G))
    return (BoundMode.explore(cfg.n_x_explore),
            BoundMode.explore(cfg.n_x_explore))


def certify_candidate(c: Candidate, params: ProblemParams,
                      cfg: SearchConfig = SearchConfig(),
                      explore_value: float = float("nan")) -> CertifiedResult:
    """Certified evaluation of a single candidate, with components."""
    if c.theorem is TheoremId.OP1:
        rho, comps, errs = _op1_terms(c, *_modes(cfg, True), params)
    elif c.theorem is TheoremId.OP2:
        rho, comps, errs = _op2_terms(c, *_modes(cfg, True), params)
    else:
        rho, comps, errs = _op3_terms(c, BoundMode.certify(cfg.n_r_certify),
                                      cfg.n_r_certify, cfg.n_t_certify, params)
    return CertifiedResult(rho_lower=rho, candidate=c, components=comps,
                           errors=errs, config=cfg, explore_value=explore_value)


# ---------------------------------------------------------------------------
# Exploration sweeps
# ---------------------------------------------------------------------------

def _op1_explore_block(params: ProblemParams, cfg: SearchConfig, beta: float,
                       K: float, taus: np.ndarray,
                       H_cache: np.ndarray | None = None) -> np.ndarray | None:
    """Exploration objective for all taus at fixed (beta, K); None if infeasible."""
    p, mu, d, d0 = params.p, params.mu, params.d, params.effective_d0()
    if K < p / (mu * beta**2) - 1 / (p + 1):
        return None
    if bounds.delta(beta, K, 1.0, p, mu) > 1:
        return None
    ts = (1 - taus ** (p + 1)) / ((p + 1) * params.f_inf)
    H = (H_cache if H_cache is not None
         else bounds.H_explore_over_t(ts, beta, p, cfg.n_x_explore))
    G = bounds.G_explore_over_t(ts, beta, K, 1.0, p, mu, cfg.n_x_explore)
    s = np.array([bounds.S(t, beta, d0) for t in ts])
    return (0.5 * ((beta - d) / beta) ** (p + 1) * s / (K + taus ** (-p))
            * np.minimum(H, G))


def _op2_explore_block(params: ProblemParams, cfg: SearchConfig, beta: float,
                       K: float, eta: float, taus: np.ndarray,
                       H_cache: np.ndarray | None = None) -> np.ndarray | None:
    p, mu, d, d0 = params.p, params.mu, params.d, params.effective_d0()
    if K < p * eta / (mu * beta**2) - 1 / ((p + 1) * eta**p):
        return None
    if bounds.delta(beta, K, eta, p, mu) > 1:
        return None
    dc = derive_constants(params)
    ts = (1 - taus ** (p + 1)) / ((p + 1) * params.f_inf)
    H = (H_cache if H_cache is not None
         else bounds.H_explore_over_t(ts, beta, p, cfg.n_x_explore))
    G_t = bounds.G_explore_over_t(ts, beta, K, eta, p, mu, cfg.n_x_explore)
    G_T = bounds.G_explore_over_t(np.array([dc.t_bar]), beta, K, eta, p, mu,
                                  cfg.n_x_explore)[0]
    s_T = bounds.S(dc.t_bar, 0.0, d0)
    s_t = np.array([bounds.S(t, beta, d0) for t in ts])
    term1 = s_T / (K + eta ** (-p)) * G_T
    term2 = s_t / (K + taus ** (-p)) * np.minimum(H, G_t)
    rho1 = 0.5 * ((beta - d) / beta) ** (p + 1) * np.minimum(term1, term2)
    r2 = taus ** (p + 1) / ((p + 1) * (dc.t_bar - ts) * mu)
    return np.minimum(rho1, r2)


def _search_op1(params: ProblemParams, cfg: SearchConfig):
    p, d, d0 = params.p, params.d, params.effective_d0()
    tau_min = params.mu / (2 * params.mu - mu1(p))
    eps_tau = (1 - tau_min) / cfg.n_tau
    taus0 = np.array([tau_min + k * eps_tau for k in range(cfg.n_tau)])
    rho_opt = 0.0
    cands: list[tuple] = []

    def sweep(betas, K_values, taus, collect=False):
        nonlocal rho_opt
        best: tuple[float, tuple | None] = (float("-inf"), None)
        taus = np.asarray([x for x in taus if tau_min - 1e-12 <= x < 1])
        if taus.size == 0:
            return best
        ts_all = (1 - taus ** (p + 1)) / ((p + 1) * params.f_inf)
        for beta in betas:
            if not d < beta < d0:
                continue
            cand0 = Candidate(TheoremId.OP1, float(taus[-1]), beta, cfg.eps_K)
            if not prune_admits(cand0, rho_opt, params):
                continue
            H_full = bounds.H_explore_over_t(ts_all, beta, p, cfg.n_x_explore)
            for K in K_values(beta):
                if K <= 0:
                    continue
                if rho_opt > 0 and K > 1 / (2 * rho_opt) - 1:
                    break
                mask = (taus >= (2 * rho_opt) ** (1 / p)) if rho_opt > 0 \
                    else np.ones(taus.size, bool)
                if not mask.any():
                    continue
                vals = _op1_explore_block(params, cfg, beta, K, taus[mask],
                                          H_cache=H_full[mask])
                if vals is None:
                    continue
                i = int(np.argmax(vals))
                v = float(vals[i])
                if v > best[0]:
                    best = (v, (float(taus[mask][i]), beta, K))
                rho_opt = max(rho_opt, v)
                if collect:
                    cands.append((v, float(taus[mask][i]), beta, K))
        return best

    def K_coarse(beta):
        K0 = max(p / (params.mu * beta**2) - 1 / (p + 1), cfg.eps_K)
        return [K0 + i * cfg.eps_K for i in range(1000)]

    sweep(_beta_grid(d, d0, cfg.eps_beta), K_coarse, taus0, collect=True)
    if not cands:
        raise NoFeasibleCandidate(
            "no OP1 grid candidate is admissible (delta <= 1 never held)")
    seeds = _dedup_seeds(cands, (2, 3), (cfg.eps_beta, cfg.eps_K), cfg.top_seeds)

    best_overall: tuple[float, tuple | None] = (float("-inf"), None)
    for _, tau1, b1, K1 in seeds:
        center = (tau1, b1, K1)
        for _ in range(cfg.max_refine_passes):
            tau1, b1, K1 = center
            v, arg = sweep(_lin(b1, cfg.eps_beta, cfg.refine_points),
                           lambda b: _lin(K1, cfg.eps_K, cfg.refine_points),
                           _lin(tau1, eps_tau, cfg.refine_points))
            if arg is None:
                break
            if v > best_overall[0]:
                best_overall = (v, arg)
            t2, b2, K2 = arg
            on_edge = any(abs(abs(a - c) - e) < 1e-9 for a, c, e in
                          [(t2, tau1, eps_tau), (b2, b1, cfg.eps_beta),
                           (K2, K1, cfg.eps_K)])
            if arg == center or not on_edge:
                break
            center = arg
    v, (tau, beta, K) = best_overall
    return v, Candidate(TheoremId.OP1, tau, beta, K)


def _search_op2(params: ProblemParams, cfg: SearchConfig):
    p, d, d0 = params.p, params.d, params.effective_d0()
    eps_tau = 1 / (cfg.n_tau + 1)
    eps_eta = 1 / cfg.n_eta
    taus0 = np.array([(k + 1) * eps_tau for k in range(cfg.n_tau)])
    etas0 = [k / cfg.n_eta for k in range(1, cfg.n_eta)]
    rho_opt = 0.0
    cands: list[tuple] = []

    def sweep(betas, etas, K_values, taus, collect=False):
        nonlocal rho_opt
        best: tuple[float, tuple | None] = (float("-inf"), None)
        taus = np.asarray([x for x in taus if 0 < x < 1])
        if taus.size == 0:
            return best
        ts = (1 - taus ** (p + 1)) / ((p + 1) * params.f_inf)
        for beta in betas:
            if not d < beta < d0:
                continue
            if rho_opt > 0 and 2 * rho_opt < 1 \
                    and beta < d / (1 - (2 * rho_opt) ** (1 / (p + 1))):
                continue
            H_c = bounds.H_explore_over_t(ts, beta, p, cfg.n_x_explore)
            for eta in etas:
                if not 0 < eta < 1:
                    continue
                for K in K_values(beta, eta):
                    if K <= 0:
                        continue
                    if rho_opt > 0 and K > 1 / (2 * rho_opt) - 1:
                        break
                    vals = _op2_explore_block(params, cfg, beta, K, eta, taus,
                                              H_cache=H_c)
                    if vals is None:
                        continue
                    i = int(np.argmax(vals))
                    v = float(vals[i])
                    if v > best[0]:
                        best = (v, (float(taus[i]), eta, beta, K))
                    rho_opt = max(rho_opt, v)
                    if collect:
                        cands.append((v, float(taus[i]), eta, beta, K))
        return best

    def K_coarse(beta, eta):
        K0 = max(p * eta / (params.mu * beta**2) - 1 / ((p + 1) * eta**p),
                 cfg.eps_K)
        return [K0 + i * cfg.eps_K for i in range(1000)]

    sweep(_beta_grid(d, d0, cfg.eps_beta), etas0, K_coarse, taus0, collect=True)
    if not cands:
        raise NoFeasibleCandidate(
            "no OP2 grid candidate is admissible (delta <= 1 never held)")
    seeds = _dedup_seeds(cands, (3, 4, 2), (cfg.eps_beta, cfg.eps_K, eps_eta),
                         cfg.top_seeds)

    best_overall: tuple[float, tuple | None] = (float("-inf"), None)
    for _, tau1, eta1, b1, K1 in seeds:
        center = (tau1, eta1, b1, K1)
        for _ in range(cfg.max_refine_passes):
            tau1, eta1, b1, K1 = center
            v, arg = sweep(_lin(b1, cfg.eps_beta, cfg.refine_points),
                           _lin(eta1, eps_eta, cfg.refine_points),
                           lambda b, e: [k for k in
                                         _lin(K1, cfg.eps_K, cfg.refine_points)
                                         if k > 0],
                           _lin(tau1, eps_tau, cfg.refine_points))
            if arg is None:
                break
            if v > best_overall[0]:
                best_overall = (v, arg)
            t2, e2, b2, K2 = arg
            on_edge = any(abs(abs(a - c) - e) < 1e-9 for a, c, e in
                          [(t2, tau1, eps_tau), (e2, eta1, eps_eta),
                           (b2, b1, cfg.eps_beta), (K2, K1, cfg.eps_K)])
            if arg == center or not on_edge:
                break
            center = arg
    v, (tau, eta, beta, K) = best_overall
    return v, Candidate(TheoremId.OP2, tau, beta, K, eta=eta)


def _op3_explore_value(params: ProblemParams, cfg: SearchConfig, tau: float,
                       beta: float, K: float, lam: float) -> float | None:
    c = Candidate(TheoremId.OP3, tau, beta, K, lam=lam)
    try:
        v = _op3_terms(c, BoundMode.explore(max(cfg.n_r_explore, 2)),
                       cfg.n_r_explore, cfg.n_t_explore, params)[0]
    except (Infeasible, SingularityReached):
        return None
    return v


def _lambda_descent(params: ProblemParams, cfg: SearchConfig, tau: float,
                    beta: float, K: float) -> tuple[float, float] | None:
    """Descend lambda until the ratio estimate dominates it; keep the best
    min(rho_hat, lambda) seen. Returns (value, lambda) or None."""
    lam = cfg.lambda0(params.p)
    prev: tuple[float, float] | None = None
    while lam > cfg.lambda_step:
        rho_hat = _op3_explore_value(params, cfg, tau, beta, K, lam)
        if rho_hat is None:
            return None
        cur = (min(rho_hat, lam), lam)
        if rho_hat >= lam:
            return max(cur, prev) if prev else cur
        prev = cur
        lam -= cfg.lambda_step
    return prev


def _search_op3(params: ProblemParams, cfg: SearchConfig):
    p, d, d0 = params.p, params.d, params.effective_d0()
    eps_tau = 1 / (cfg.n_tau + 1)
    taus0 = [(k + 1) * eps_tau for k in range(cfg.n_tau)]
    rho_opt = 0.0
    cands: list[tuple] = []

    def K_max(beta: float) -> float:
        return min(p, p * (p + 2) / (1 + p * params.mu * beta**2))

    def sweep(betas, K_values, taus, collect=False):
        nonlocal rho_opt
        best: tuple[float, tuple | None] = (float("-inf"), None)
        for beta in betas:
            if not d < beta < d0:
                continue
            for K in K_values(beta):
                if not 0 < K <= K_max(beta):
                    continue
                for tau in taus:
                    if not 0 < tau < 1:
                        continue
                    # rho <= rho2(tau): skip taus that cannot improve.
                    if bounds.rho2(tau, params) <= rho_opt:
                        continue
                    out = _lambda_descent(params, cfg, tau, beta, K)
                    if out is None:
                        continue
                    v, lam = out
                    if v > best[0]:
                        best = (v, (tau, beta, K, lam))
                    rho_opt = max(rho_opt, v)
                    if collect:
                        cands.append((v, tau, beta, K, lam))
        return best

    def K_coarse(beta):
        out, K = [], cfg.eps_K
        top = K_max(beta)
        while K <= top + 1e-12:
            out.append(K)
            K += cfg.eps_K
        return out

    sweep(_beta_grid(d, d0, cfg.eps_beta), K_coarse, taus0, collect=True)
    if not cands:
        raise NoFeasibleCandidate(
            "no OP3 grid candidate is admissible (cut-off arc widths exceed 1)")
    seeds = _dedup_seeds(cands, (2, 3), (cfg.eps_beta, cfg.eps_K), cfg.top_seeds)

    best_overall: tuple[float, tuple | None] = (float("-inf"), None)
    for _, tau1, b1, K1, _ in seeds:
        center = (tau1, b1, K1)
        for _ in range(cfg.max_refine_passes):
            tau1, b1, K1 = center
            v, arg = sweep(_lin(b1, cfg.eps_beta, cfg.refine_points),
                           lambda b: [k for k in _lin(K1, cfg.eps_K, cfg.refine_points)
                                      if k > 0],
                           _lin(tau1, eps_tau, cfg.refine_points))
            if arg is None:
                break
            if v > best_overall[0]:
                best_overall = (v, arg)
            t2, b2, K2, _ = arg
            on_edge = any(abs(abs(a - c) - e) < 1e-9 for a, c, e in
                          [(t2, tau1, eps_tau), (b2, b1, cfg.eps_beta),
                           (K2, K1, cfg.eps_K)])
            if (t2, b2, K2) == center or not on_edge:
                break
            center = (t2, b2, K2)
    v, (tau, beta, K, lam) = best_overall
    return v, Candidate(TheoremId.OP3, tau, beta, K, lam=lam)


def search(theorem: TheoremId, params: ProblemParams,
           cfg: SearchConfig = SearchConfig()) -> CertifiedResult:
    """Run the full three-step search and certify the refined argmax."""
    report = validate_hypotheses(theorem, params)
    if not report.passed:
        raise ValueError("hypotheses not satisfied: " + "; ".join(report.violations))
    if theorem is TheoremId.OP1:
        explore_v, cand = _search_op1(params, cfg)
    elif theorem is TheoremId.OP2:
        explore_v, cand = _search_op2(params, cfg)
    else:
        explore_v, cand = _search_op3(params, cfg)
    return certify_candidate(cand, params, cfg, explore_value=explore_v)
