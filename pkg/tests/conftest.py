"""Shared helpers: random feasible parameter generators for the cut-offs."""
from __future__ import annotations

import numpy as np

from touchdown_cert.cutoff import Infeasible, build_q0, build_q1


def random_q0_sets(rng: np.random.Generator, count: int) -> list:
    """Feasible (p, mu, beta, K, eta) tuples for the q = 0 cut-off."""
    out = []
    while len(out) < count:
        p = rng.uniform(0.5, 3.0)
        mu = rng.uniform(0.5, 10.0)
        beta = rng.uniform(0.3, 3.0)
        eta = rng.uniform(0.2, 1.0)
        K_min = max(p * eta / (mu * beta**2) - 1 / ((p + 1) * eta**p), 0.0)
        K = K_min + rng.uniform(0.05, 3.0)
        try:
            build_q0(p, mu, beta, K, eta)
        except Infeasible:
            continue
        out.append((p, mu, beta, K, eta))
    return out


def random_q1_sets(rng: np.random.Generator, count: int) -> list:
    """Feasible (p, mu, beta, K) tuples for the q = 1 cut-off."""
    out = []
    while len(out) < count:
        p = rng.uniform(0.5, 3.0)
        mu = rng.uniform(0.5, 10.0)
        beta = rng.uniform(0.2, 2.0)
        K = rng.uniform(0.05, 1.0) * p
        if K * mu * beta**2 > (p * (p + 2) - K) / p:
            continue
        try:
            build_q1(p, mu, beta, K)
        except Infeasible:
            continue
        out.append((p, mu, beta, K))
    return out
