"""Acceptance suite: benchmark reproduction, soundness audits, error budgets.

Each section is numbered; together they form the release gate:

1. OP1 benchmark rows reproduce within 2e-3 and the full search attains
   the reference bound within 1e-3 in under 60 s per row.
2. OP2 benchmark rows reproduce within 2e-3 (all component columns).
3. OP3 benchmark rows reproduce within 3e-3 (rho, G*, rho2).
4. The summary benchmark cross-references the OP1/OP3 tables exactly.
5. Certified functional values never exceed independent dense oracles,
   and nested refinement is monotone with zero violations.
6. Random feasible cut-offs satisfy their defining properties: boundary
   values, monotonicity, C^1 junctions, and the interior ODE.
7. Propagated error estimates stay within the 1e-4 budget and the
   exploration surrogate tracks certification within 1e-3.
8. Simulations localize touchdown inside the predicted regions and obey
   the homogeneous comparison envelope, in under 120 s per scenario.
"""
from __future__ import annotations

import math
import time

import numpy as np
import pytest
import scipy.special

from conftest import random_q0_sets, random_q1_sets
from touchdown_cert import bounds, pdesim
from touchdown_cert.bounds import BoundMode
from touchdown_cert.cli import (BENCHMARK_OP1, BENCHMARK_OP2, BENCHMARK_OP3,
                                BENCHMARK_SUMMARY)
from touchdown_cert.cutoff import (build_q0, build_q1, eval_q0, eval_q1)
from touchdown_cert.model import ProblemParams, TheoremId, t0
from touchdown_cert.optimizer import (Candidate, SearchConfig,
                                      certify_candidate, objective, search)

# ---------------------------------------------------------------------------
# 1. OP1 benchmark: certification accuracy and full-search attainment
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("row", BENCHMARK_OP1,
                         ids=[f"p{r[0]}-mu{r[1]}-d{r[3]}-f{r[2]}"
                              for r in BENCHMARK_OP1])
def test_benchmark_op1_row(row):
    p, mu, finf, d, d0, tau, beta, K, H, G, S, rho = row
    start = time.monotonic()
    params = ProblemParams(p=p, mu=mu, f_inf=finf, d=d, d0=d0)
    res = certify_candidate(Candidate(TheoremId.OP1, tau, beta, K), params)
    assert res.rho_lower == pytest.approx(rho, abs=2e-3)
    assert res.components["H"] == pytest.approx(H, abs=2e-3)
    assert res.components["G"] == pytest.approx(G, abs=2e-3)
    assert res.components["S"] == pytest.approx(S, abs=2e-3)
    found = search(TheoremId.OP1, params)
    assert found.rho_lower >= rho - 1e-3
    assert time.monotonic() - start <= 60.0


# ---------------------------------------------------------------------------
# 2. OP2 benchmark
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("row", BENCHMARK_OP2,
                         ids=[f"mu{r[0]}-f{r[1]}" for r in BENCHMARK_OP2])
def test_benchmark_op2_row(row):
    mu, finf, d, d0, tau, eta, beta, K, GT, Ht, Gt, ST, St, r2, rho = row
    start = time.monotonic()
    params = ProblemParams(p=2, mu=mu, f_inf=finf, d=d, d0=d0)
    res = certify_candidate(Candidate(TheoremId.OP2, tau, beta, K, eta=eta),
                            params)
    assert res.rho_lower == pytest.approx(rho, abs=2e-3)
    refs = {"G_Tbar": GT, "H_t0": Ht, "G_t0": Gt, "S_Tbar": ST, "S_t0": St,
            "rho2": r2}
    for key, ref in refs.items():
        assert res.components[key] == pytest.approx(ref, abs=2e-3), key
    assert time.monotonic() - start <= 120.0


# ---------------------------------------------------------------------------
# 3. OP3 benchmark
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("row", BENCHMARK_OP3,
                         ids=[f"p{r[0]}-mu{r[1]}-d{r[3]}-f{r[2]}"
                              for r in BENCHMARK_OP3])
def test_benchmark_op3_row(row):
    p, mu, finf, d, d0, tau, beta, K, Gs, S, r2, lam, rho = row
    start = time.monotonic()
    params = ProblemParams(p=p, mu=mu, f_inf=finf, d=d, d0=d0)
    res = certify_candidate(Candidate(TheoremId.OP3, tau, beta, K, lam=lam),
                            params)
    assert res.rho_lower == pytest.approx(rho, abs=3e-3)
    assert res.components["Gstar"] == pytest.approx(Gs, abs=3e-3)
    assert res.components["rho2"] == pytest.approx(r2, abs=3e-3)
    assert time.monotonic() - start <= 600.0


# ---------------------------------------------------------------------------
# 4. Summary benchmark cross-references the per-theorem tables exactly
# ---------------------------------------------------------------------------


def test_benchmark_summary_crossrefs():
    for mu, finf, d, d0, rho1, rho3 in BENCHMARK_SUMMARY:
        key = (2, mu, finf, d, d0)
        op1 = next(r for r in BENCHMARK_OP1 if r[:5] == key)
        op3 = next(r for r in BENCHMARK_OP3 if r[:5] == key)
        assert op1[-1] == rho1
        assert op3[-1] == rho3


# ---------------------------------------------------------------------------
# 5. Soundness: certified values never exceed independent oracles
# ---------------------------------------------------------------------------


def test_soundness_H_against_dense_scan():
    rng = np.random.default_rng(101)
    x = np.linspace(0.0, 1.0, 1_000_001)
    for _ in range(50):
        t = rng.uniform(0.01, 1.0)
        beta = rng.uniform(0.3, 3.0)
        p = rng.uniform(0.5, 3.0)
        cert = bounds.H_bound(t, beta, p, BoundMode.certify(2000)).value
        N = (scipy.special.erf((1 + beta * x / 2) / math.sqrt(t))
             - scipy.special.erf(beta * x / (2 * math.sqrt(t))))
        D = (1 - x) ** (p + 1)
        dense = np.min(np.where(D > 0, N / np.where(D > 0, D, 1.0), np.inf))
        assert cert <= dense + 1e-12


def test_soundness_G_against_dense_scan():
    rng = np.random.default_rng(103)
    x = np.linspace(0.0, 1.0, 1_000_001)
    done = 0
    while done < 50:
        t = rng.uniform(0.02, 0.8)
        beta = rng.uniform(0.4, 2.5)
        K = rng.uniform(0.2, 2.5)
        eta = rng.uniform(0.4, 1.0)
        p = rng.uniform(0.5, 3.0)
        mu = rng.uniform(0.8, 10.0)
        if bounds.delta(beta, K, eta, p, mu) > 1:
            continue
        done += 1
        cert = bounds.G_bound(t, beta, K, eta, p, mu,
                              BoundMode.certify(2000)).value
        L = 1 + (p + 1) * K * eta**p
        Gam = math.sqrt((p + 1) * eta * L / (p * K * mu * beta**2))
        A = math.atan(Gam)
        alpha = 1 + p / L
        dlt = (A * (1 + K * eta**p)
               * math.sqrt((p + 1) * eta / (p * L * K * mu)))
        N = (scipy.special.erf((2 - (1 - x) * dlt) / (2 * math.sqrt(t)))
             + scipy.special.erf((1 - x) * dlt / (2 * math.sqrt(t))))
        D = (Gam**2 + 1) ** (alpha / 2) * np.cos(A * x) ** alpha
        dense = float(np.min(N / D))
        assert cert <= dense + 1e-12


def test_soundness_Lambda_against_simpson_oracle():
    rng = np.random.default_rng(107)
    done = 0
    while done < 50:
        p = rng.uniform(0.5, 3.0)
        mu = rng.uniform(0.8, 10.0)
        d0 = rng.uniform(2.0, 10.0)
        beta = rng.uniform(0.4, 2.0)
        t = rng.uniform(0.01, 0.3)
        r = rng.uniform(0.1, 1 + beta - 0.01)
        try:
            cert = bounds.Lambda_lower(t, r, p, mu, beta, 100,
                                       BoundMode.certify(100), d0)
        except bounds.SingularityReached:
            continue
        done += 1
        oracle = _lambda_simpson(t, r, p, mu, d0, 10_000)
        assert cert <= oracle + 1e-12


def _lambda_simpson(t, r, p, mu, d0, n):
    s = np.linspace(0, t, n + 1)
    Y = np.zeros_like(s)
    Y[1:] = (bounds.S(t, 0.0, d0, sharp=True)
             * scipy.special.erf(1 / np.sqrt(s[1:])) * (p + 1) * mu / 2 * s[1:])
    w = (1 - Y) ** (-p / (p + 1) - 1)
    dtm = t - s
    good = dtm > 0
    safe = np.where(good, dtm, 1.0)
    e1 = np.where(good, scipy.special.erf((r + 1) / (2 * np.sqrt(safe))), 1.0)
    e2 = np.where(good, scipy.special.erf((1 - r) / (2 * np.sqrt(safe))),
                  np.sign(1 - r))
    wts = np.ones(n + 1)
    wts[1:-1:2] = 4
    wts[2:-1:2] = 2
    return 0.5 * (t / n / 3) * float((w * (e1 + e2) * wts).sum())


def test_soundness_Gstar_against_fine_exploration():
    rng = np.random.default_rng(109)
    sets = random_q1_sets(rng, 80)
    done = 0
    for p, mu, beta, K in sets:
        if done >= 50:
            break
        tau = rng.uniform(0.6, 0.9)
        lam = rng.uniform(0.1, 0.4)
        params = ProblemParams(p=p, mu=mu, f_inf=mu * 1.05, d=0.01, d0=10)
        t = t0(tau, params)
        try:
            cert = bounds.Gstar_bound(tau, t, beta, K, lam, 500, 40,
                                      BoundMode.certify(500), params).value
            fine = bounds.Gstar_bound(tau, t, beta, K, lam, 4000, 160,
                                      BoundMode.explore(4000), params).value
        except bounds.SingularityReached:
            continue
        done += 1
        assert cert <= fine + 1e-12
    assert done == 50


def test_refinement_monotone_zero_violations():
    # H and G: nested dyadic partitions can only raise the shifted minimum.
    for t, beta, p in ((0.05, 0.8, 2.0), (0.2, 1.5, 1.0), (0.6, 2.5, 0.5)):
        prev = -np.inf
        for n in (250, 500, 1000, 2000, 4000):
            v = bounds.H_bound(t, beta, p, BoundMode.certify(n)).value
            assert v >= prev - 1e-14
            prev = v
    for t, beta, K in ((0.05, 1.2, 0.7), (0.3, 1.8, 1.1)):
        prev = -np.inf
        for n in (250, 500, 1000, 2000, 4000):
            v = bounds.G_bound(t, beta, K, 1.0, 2, 2,
                               BoundMode.certify(n)).value
            assert v >= prev - 1e-14
            prev = v
    # Lambda: left rectangles of a weight increasing in s.
    for r in (0.5, 1.0, 1.7):
        prev = -np.inf
        for n_t in (25, 50, 100, 200, 400):
            v = bounds.Lambda_lower(0.06, r, 2, 4, 1.0, n_t,
                                    BoundMode.certify(n_t), 5)
            assert v >= prev - 1e-14
            prev = v
    # G*: both the radial and the time partitions are nested.
    params = ProblemParams(p=2, mu=6, f_inf=6.2, d=0.01, d0=10)
    t = t0(0.78, params)
    prev = -np.inf
    for n_r, n_t in ((250, 25), (500, 50), (1000, 100), (2000, 200)):
        v = bounds.Gstar_bound(0.78, t, 0.73, 0.46, 0.29, n_r, n_t,
                               BoundMode.certify(n_r), params).value
        assert v >= prev - 1e-14
        prev = v


# ---------------------------------------------------------------------------
# 6. Cut-off properties on random feasible parameter sets
# ---------------------------------------------------------------------------


def _fd_slope(f, x, h, side):
    """Second-order one-sided difference from the left (-1) or right (+1)."""
    s = side
    return s * (-3 * f(x) + 4 * f(x + s * h) - f(x + 2 * s * h)) / (2 * h)


def _check_cutoff_shape(f, junctions, beta, p):
    lo, hi = 0.0, 1 + beta
    assert f(1.0) == pytest.approx(1.0, abs=1e-10)
    assert f(hi) == pytest.approx(0.0, abs=1e-12)
    r = np.sort(np.concatenate([np.linspace(lo, hi, 801),
                                np.asarray(junctions)]))
    a = f(r)
    assert (np.diff(a) <= 1e-10).all()
    h = 1e-6
    for rj in junctions:
        left = _fd_slope(f, rj, h, -1)
        right = _fd_slope(f, rj, h, +1)
        assert abs(left - right) <= 1e-7 * (1 + abs(left)), rj
    slope1 = _fd_slope(f, 1.0, h, -1)
    assert slope1 == pytest.approx(-(p + 1) / beta, rel=1e-6)


def _check_ode_branch(f, r_lo, r_hi, m, M, gradient_square, n=5, h=1e-4):
    """Interior residual of a''/a = m (a'/a)^2 - M (or its gradient form)."""
    width = r_hi - r_lo
    if width <= 40 * h:
        return
    for r in np.linspace(r_lo + 0.1 * width, r_hi - 0.1 * width, n):
        a0, ap, am = f(r), f(r + h), f(r - h)
        d1 = (ap - am) / (2 * h)
        d2 = (ap - 2 * a0 + am) / h**2
        g2 = (d1 / a0) ** 2
        target = m * g2 - M
        scale = abs(m) * g2 + abs(M) if not gradient_square else abs(m) * g2
        assert abs(d2 / a0 - target) <= 1e-5 * max(scale, 1.0), r


def test_cutoff_q0_random_feasible_sets():
    rng = np.random.default_rng(211)
    for p, mu, beta, K, eta in random_q0_sets(rng, 30):
        c = build_q0(p, mu, beta, K, eta)
        f = lambda r: eval_q0(c, r)
        _check_cutoff_shape(f, (c.r0, 1.0), beta, p)
        _check_ode_branch(f, c.r0, 1.0, c.m, c.M, False)
        _check_ode_branch(f, 1.0, 1 + 0.8 * beta, p / (p + 1), 0.0, True)


def test_cutoff_q1_random_feasible_sets():
    rng = np.random.default_rng(223)
    for p, mu, beta, K in random_q1_sets(rng, 30):
        c = build_q1(p, mu, beta, K)
        f = lambda r: eval_q1(c, r)
        _check_cutoff_shape(f, (c.r0, c.r1, 1.0), beta, p)
        m1 = (p - K) ** 2 / (p * (p + 1) * (1 + K))
        M1 = (p + 1) * K * mu / (1 + K)
        _check_ode_branch(f, c.r0, c.r1, m1, M1, False)
        _check_ode_branch(f, c.r1, 1.0, p / (p + 1), (p + 1) * K * mu, False)
        _check_ode_branch(f, 1.0, 1 + 0.8 * beta, p / (p + 1), 0.0, True)


# ---------------------------------------------------------------------------
# 7. Error budgets: propagated estimates and exploration tracking
# ---------------------------------------------------------------------------


def test_propagated_error_budget_op1():
    for row in BENCHMARK_OP1:
        p, mu, finf, d, d0, tau, beta, K = row[:8]
        params = ProblemParams(p=p, mu=mu, f_inf=finf, d=d, d0=d0)
        res = certify_candidate(Candidate(TheoremId.OP1, tau, beta, K), params)
        assert res.errors["rho"] <= 1e-4, row


def test_exploration_tracks_certification_op3():
    cfg = SearchConfig()
    for row in BENCHMARK_OP3:
        p, mu, finf, d, d0, tau, beta, K = row[:8]
        lam = row[11]
        params = ProblemParams(p=p, mu=mu, f_inf=finf, d=d, d0=d0)
        c = Candidate(TheoremId.OP3, tau, beta, K, lam=lam)
        explored = objective(c, BoundMode.explore(2), params, cfg)
        certified = certify_candidate(c, params, cfg).rho_lower
        gap = explored - certified
        assert -1e-6 <= gap <= 1e-3, row


# ---------------------------------------------------------------------------
# 8. Simulation: localization and the comparison envelope
# ---------------------------------------------------------------------------


def test_simulation_pull_in_dichotomy():
    start = time.monotonic()
    low = pdesim.build_profile("constant", R=1.0, level=0.25)
    res = pdesim.simulate(low, 2, pdesim.SimConfig(n_grid=96, t_max=30.0))
    assert not res.quenched
    high = pdesim.build_profile("constant", R=1.0, level=0.40)
    res = pdesim.simulate(high, 2, pdesim.SimConfig(n_grid=96))
    assert res.quenched
    assert time.monotonic() - start <= 120.0


def test_simulation_localization_one_bump():
    start = time.monotonic()
    prof = pdesim.build_profile("one-bump", R=6.0, bumps=((-2.0, 0.0),),
                                level=2.0, plateau=0.42, ramp=0.1, f_inf=2.25)
    rep = pdesim.verify_localization(prof, 2, ((-2.1, 0.1),),
                                     pdesim.SimConfig(n_grid=192, t_max=10.0))
    assert rep.localized, rep.details
    assert len(rep.results) == 2
    assert time.monotonic() - start <= 120.0


def test_simulation_localization_two_bump():
    start = time.monotonic()
    prof = pdesim.build_profile("two-bump", R=10.0,
                                bumps=((-1.0, 1.0), (4.0, 6.0)), level=2.0,
                                plateau=0.42, ramp=0.1, f_inf=2.25)
    rep = pdesim.verify_localization(prof, 2, ((-1.1, 1.1), (3.9, 6.1)),
                                     pdesim.SimConfig(n_grid=256, t_max=10.0))
    assert rep.localized, rep.details
    assert time.monotonic() - start <= 120.0


def test_simulation_comparison_envelope():
    prof = pdesim.build_profile("constant", R=1.0, level=0.40)
    res = pdesim.simulate(prof, 2, pdesim.SimConfig(n_grid=128, snap_every=50))
    t_star = 1 / (3 * prof.f_inf)
    checked = 0
    for t, m in res.history:
        if t < t_star:
            y = 1 - (1 - 3 * prof.f_inf * t) ** (1 / 3)
            assert 1 - m <= y + 10 * res.dx**2
            checked += 1
    assert checked > 0
