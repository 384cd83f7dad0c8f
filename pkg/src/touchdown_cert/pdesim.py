"""Finite-difference solver for u_t - u_xx = f(x) (1-u)^(-p).

Dirichlet conditions on (-R, R), zero initial data. The diffusion term
is treated implicitly (tridiagonal solve per step) and the singular
reaction explicitly, with an adaptive time step capped so the known
a-priori growth envelope of the max norm cannot be overshot within one
step. Quenching is declared when 1 - max u falls below a threshold; the
quenching time is then extrapolated using the known temporal rate
(1 - u) ~ (T - t)^(1/(p+1)).

The simulator is corroborating evidence only: rigorous guarantees live
in the certified optimizer.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

__all__ = [
    "Profile",
    "SimConfig",
    "SimResult",
    "VerificationReport",
    "NonConvergence",
    "build_profile",
    "simulate",
    "verify_localization",
]


class NonConvergence(Exception):
    """Time step underflowed before reaching the quench threshold."""


@dataclass(frozen=True)
class Profile:
    """Piecewise-linear permittivity profile on [-R, R].

    bumps lists the flat high-level intervals; values(x) evaluates f.
    """

    R: float
    bumps: tuple[tuple[float, float], ...]
    level: float
    plateau: float
    ramp: float
    f_inf: float

    def values(self, x: np.ndarray) -> np.ndarray:
        f = np.full_like(x, self.plateau, dtype=np.float64)
        for a, b in self.bumps:
            f = np.maximum(f, np.where((x >= a) & (x <= b), self.level, self.plateau))
            if self.ramp > 0:
                up = (x > a - self.ramp) & (x < a)
                dn = (x > b) & (x < b + self.ramp)
                f = np.maximum(f, np.where(
                    up, self.plateau + (self.level - self.plateau)
                    * (x - (a - self.ramp)) / self.ramp, self.plateau))
                f = np.maximum(f, np.where(
                    dn, self.plateau + (self.level - self.plateau)
                    * ((b + self.ramp) - x) / self.ramp, self.plateau))
        return np.minimum(f, self.f_inf)


@dataclass(frozen=True)
class SimConfig:
    """Solver settings."""

    n_grid: int = 256
    dt_safety: float = 0.9
    quench_threshold: float = 1e-4
    t_max: float = 50.0
    snap_every: int = 2000

    def __post_init__(self) -> None:
        if self.n_grid < 64:
            raise ValueError("n_grid must be >= 64")
        if not 0 < self.quench_threshold < 1:
            raise ValueError("quench_threshold must lie in (0, 1)")


@dataclass(frozen=True)
class SimResult:
    """Simulation outcome.

    snapshots holds sampled (t, u(.)) profile pairs; history holds the
    denser (t, max u) trace used for the quenching-time extrapolation.
    """

    quenched: bool
    t_final: float
    T_est: float | None
    x: np.ndarray
    u: np.ndarray
    touchdown_set: tuple[tuple[float, float], ...]
    snapshots: tuple[tuple[float, np.ndarray], ...]
    history: tuple[tuple[float, float], ...]
    steps: int
    dx: float


@dataclass(frozen=True)
class VerificationReport:
    """Localization check across two grid resolutions."""

    localized: bool
    results: tuple[SimResult, ...]
    allowed: tuple[tuple[float, float], ...]
    details: tuple[str, ...] = field(default_factory=tuple)


def build_profile(kind: str, *, R: float, bumps=(), level: float = 1.0,
                  plateau: float = 0.0, ramp: float = 0.0,
                  f_inf: float | None = None) -> Profile:
    """Build a trapezoidal profile of the requested kind.

    kind: 'constant' (level everywhere), 'one-bump', 'two-bump', or
    'custom' (any number of bumps).
    """
    if kind == "constant":
        bumps = ((-R, R),)
        plateau = level
        ramp = 0.0
    expected = {"one-bump": 1, "two-bump": 2}.get(kind)
    if expected is not None and len(bumps) != expected:
        raise ValueError(f"{kind} profile needs exactly {expected} bump(s)")
    bumps = tuple((float(a), float(b)) for a, b in bumps)
    prev_end = -np.inf
    for a, b in bumps:
        if not -R <= a < b <= R:
            raise ValueError(f"bump ({a}, {b}) not inside [-{R}, {R}]")
        if a - ramp < prev_end:
            raise ValueError("bumps (with ramps) overlap or are unordered")
        prev_end = b + ramp
    if kind != "constant" and ramp <= 0:
        raise ValueError("ramp width must be positive")
    if f_inf is None:
        f_inf = level
    if level > f_inf or plateau < 0:
        raise ValueError("need 0 <= plateau and level <= f_inf")
    return Profile(R=R, bumps=bumps, level=level, plateau=plateau, ramp=ramp,
                   f_inf=f_inf)


def _touchdown_intervals(x: np.ndarray, u: np.ndarray) -> tuple[tuple[float, float], ...]:
    """Level-set extraction: points where 1-u is within factor 2 of its min."""
    m = 1.0 - u
    mask = m <= 2 * m.min()
    out: list[tuple[float, float]] = []
    i = 0
    while i < len(x):
        if mask[i]:
            j = i
            while j + 1 < len(x) and mask[j + 1]:
                j += 1
            out.append((float(x[i]), float(x[j])))
            i = j + 1
        else:
            i += 1
    return tuple(out)


def simulate(profile: Profile, p: float, cfg: SimConfig = SimConfig()) -> SimResult:
    """Integrate the problem until quenching, t_max, or NonConvergence."""
    n = cfg.n_grid
    x = np.linspace(-profile.R, profile.R, n + 1)
    dx = x[1] - x[0]
    f = profile.values(x)
    f_inf = profile.f_inf
    u = np.zeros(n + 1)
    t = 0.0
    steps = 0
    hist: list[tuple[float, float]] = []
    snaps: list[tuple[float, np.ndarray]] = []
    quenched = False
    while t < cfg.t_max:
        m = 1.0 - u.max()
        if m < cfg.quench_threshold:
            quenched = True
            break
        dt = cfg.dt_safety * min(dx * dx / 2, m ** (p + 1) / ((p + 1) * f_inf))
        if dt < 1e-15:
            if m > 10 * cfg.quench_threshold:
                raise NonConvergence(f"dt underflow at t={t:.6g}, 1-max u={m:.3g}")
            quenched = True
            break
        rhs = u + dt * f * (1.0 - u) ** (-p)
        ab = np.zeros((3, n - 1))
        r = dt / dx**2
        ab[0, 1:] = -r
        ab[1, :] = 1 + 2 * r
        ab[2, :-1] = -r
        u[1:-1] = solve_banded((1, 1), ab, rhs[1:-1])
        u[0] = u[-1] = 0.0
        t += dt
        steps += 1
        if steps % cfg.snap_every == 0 or m < 10 * cfg.quench_threshold:
            hist.append((t, 1.0 - u.max()))
        if steps % cfg.snap_every == 0:
            snaps.append((t, u.copy()))
    snaps.append((t, u.copy()))
    T_est = None
    if quenched and len(hist) >= 2:
        (t1, m1), (t2, m2) = hist[-2], hist[-1]
        if m1 > m2 > 0:
            q = (m1 / m2) ** (p + 1)
            T_est = (q * t2 - t1) / (q - 1)
    return SimResult(quenched=quenched, t_final=t, T_est=T_est, x=x, u=u,
                     touchdown_set=_touchdown_intervals(x, u),
                     snapshots=tuple(snaps), history=tuple(hist),
                     steps=steps, dx=float(dx))


def verify_localization(profile: Profile, p: float,
                        allowed: tuple[tuple[float, float], ...],
                        cfg: SimConfig = SimConfig()) -> VerificationReport:
    """Check that the touchdown set lies in the allowed intervals.

    Runs the simulation at cfg.n_grid and 2*cfg.n_grid; the report passes
    only if every touchdown interval at both resolutions is contained in
    some allowed interval.
    """
    results = []
    details = []
    localized = True
    for n in (cfg.n_grid, 2 * cfg.n_grid):
        res = simulate(profile, p, SimConfig(n_grid=n, dt_safety=cfg.dt_safety,
                                             quench_threshold=cfg.quench_threshold,
                                             t_max=cfg.t_max,
                                             snap_every=cfg.snap_every))
        results.append(res)
        if not res.quenched:
            localized = False
            details.append(f"n={n}: no quenching before t_max={cfg.t_max}")
            continue
        for a, b in res.touchdown_set:
            if not any(lo <= a and b <= hi for lo, hi in allowed):
                localized = False
                details.append(f"n={n}: touchdown interval [{a:.3f}, {b:.3f}] "
                               "escapes the allowed region")
    return VerificationReport(localized=localized, results=tuple(results),
                              allowed=tuple(allowed), details=tuple(details))
