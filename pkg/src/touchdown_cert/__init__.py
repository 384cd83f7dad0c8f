"""Certified lower bounds for touchdown exclusion in a 1-D MEMS model.

The library computes certified lower bounds of the threshold
permittivity ratio rho below which a region of the device provably
never touches down, for the quenching problem
u_t - u_xx = f(x) (1-u)^(-p) with Dirichlet conditions and zero
initial data. A finite-difference simulator provides empirical
cross-checks of the certified localization.
"""
from __future__ import annotations

from .bounds import (BoundMode, BoundValue, Gstar_bound, G_bound, H_bound,
                     Lambda_lower, S, SingularityReached, W, Ytilde, delta,
                     rho2, u_tilde)
from .cutoff import (CutoffQ0, CutoffQ1, Infeasible, build_q0, build_q1,
                     eval_q0, eval_q1)
from .model import (DerivedConstants, HypothesisReport, ProblemParams,
                    TheoremId, derive_constants, mu0, mu1, t0,
                    validate_hypotheses)
from .optimizer import (Candidate, CertifiedResult, NoFeasibleCandidate,
                        SearchConfig, certify_candidate, objective,
                        prune_admits, search)
from .pdesim import (NonConvergence, Profile, SimConfig, SimResult,
                     VerificationReport, build_profile, simulate,
                     verify_localization)
from .specfun import erf, overline_cot

__all__ = [
    "erf", "overline_cot",
    "ProblemParams", "TheoremId", "DerivedConstants", "HypothesisReport",
    "mu0", "mu1", "derive_constants", "t0", "validate_hypotheses",
    "Infeasible", "CutoffQ0", "CutoffQ1", "build_q0", "eval_q0", "build_q1",
    "eval_q1",
    "BoundMode", "BoundValue", "SingularityReached", "S", "H_bound", "G_bound",
    "delta", "Ytilde", "Lambda_lower", "u_tilde", "W", "Gstar_bound", "rho2",
    "SearchConfig", "Candidate", "CertifiedResult", "NoFeasibleCandidate",
    "objective", "certify_candidate", "prune_admits", "search",
    "Profile", "SimConfig", "SimResult", "VerificationReport",
    "NonConvergence", "build_profile", "simulate", "verify_localization",
]

__version__ = "0.1.0"
