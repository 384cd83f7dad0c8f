"""Self-contained special functions on double precision.

The error function is implemented as a rational minimax approximation split
over |x| ranges, ported from FreeBSD's msun s_erf.c (originally developed at
SunPro, a Sun Microsystems business; the coefficients are distributed under
the permission notice below). Absolute error is below 1e-13 over all finite
inputs, so the kernel error is negligible relative to the 1e-4 discretization
error budget of the certified bounds.

    Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.
    Developed at SunPro, a Sun Microsystems, Inc. business.
    Permission to use, copy, modify, and distribute this
    software is freely granted, provided that this notice
    is preserved.

All functions are pure and safe for unrestricted concurrent use.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = ["erf", "overline_cot"]

_erx = 8.45062911510467529297e-01
_efx = 1.28379167095512586316e-01

# Coefficient tuples are in ascending order; _poly evaluates them by Horner's
# rule, which avoids the per-call overhead of numpy's Polynomial objects on
# the small arrays dominating this workload.

# erf on [0, 0.84375]
_pp = (
    1.28379167095512558561e-01, -3.25042107247001499370e-01,
    -2.84817495755985104766e-02, -5.77027029648944159157e-03,
    -2.37630166566501626084e-05,
)
_qq = (
    1.0, 3.97917223959155352819e-01, 6.50222499887672944485e-02,
    5.08130628187576562776e-03, 1.32494738004321644526e-04,
    -3.96022827877536812320e-06,
)

# erf on [0.84375, 1.25]
_pa = (
    -2.36211856075265944077e-03, 4.14856118683748331666e-01,
    -3.72207876035701323847e-01, 3.18346619901161753674e-01,
    -1.10894694282396677476e-01, 3.54783043256182359371e-02,
    -2.16637559486879084300e-03,
)
_qa = (
    1.0, 1.06420880400844228286e-01, 5.40397917702171048937e-01,
    7.18286544141962662868e-02, 1.26171219808761642112e-01,
    1.36370839120290507362e-02, 1.19844998467991074170e-02,
)

# erfc on [1.25, 1/0.35]
_ra = (
    -9.86494403484714822705e-03, -6.93858572707181764372e-01,
    -1.05586262253232909814e01, -6.23753324503260060396e01,
    -1.62396669462573470355e02, -1.84605092906711035994e02,
    -8.12874355063065934246e01, -9.81432934416914548592e00,
)
_sa = (
    1.0, 1.96512716674392571292e01, 1.37657754143519042600e02,
    4.34565877475229228821e02, 6.45387271733267880336e02,
    4.29008140027567833386e02, 1.08635005541779435134e02,
    6.57024977031928170135e00, -6.04244152148580987438e-02,
)

# erfc on [1/0.35, 6]
_rb = (
    -9.86494292470009928597e-03, -7.99283237680523006574e-01,
    -1.77579549177547519889e01, -1.60636384855821916062e02,
    -6.37566443368389627722e02, -1.02509513161107724954e03,
    -4.83519191608651397019e02,
)
_sb = (
    1.0, 3.03380607434824582924e01, 3.25792512996573918826e02,
    1.53672958608443695994e03, 3.19985821950859553908e03,
    2.55305040643316442583e03, 4.74528541206955367215e02,
    -2.24409524465858183362e01,
)


def _poly(coeffs, z):
    """Horner evaluation of an ascending coefficient tuple at z (ndarray)."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def erf(x):
    """Error function erf(x) = (2/sqrt(pi)) * integral_0^x exp(-t^2) dt.

    Accepts a float or an ndarray; returns the same shape. Odd symmetry is
    exact up to sign, the result is monotone nondecreasing, and saturates to
    +-1 for |x| >= 6. Absolute error <= 1e-13 on finite inputs.
    """
    scalar = np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0)
    a = np.abs(np.asarray(x, dtype=np.float64))
    sign = np.sign(np.asarray(x, dtype=np.float64))
    out = np.empty_like(a)

    tiny = a < 2.0**-28
    small1 = (a >= 2.0**-28) & (a < 0.84375)
    small2 = (a >= 0.84375) & (a < 1.25)
    med1 = (a >= 1.25) & (a < 1.0 / 0.35)
    med2 = (a >= 1.0 / 0.35) & (a < 6.0)
    big = a >= 6.0

    if tiny.any():
        v = a[tiny]
        out[tiny] = v + _efx * v
    if small1.any():
        v = a[small1]
        z = v * v
        out[small1] = v + v * (_poly(_pp, z) / _poly(_qq, z))
    if small2.any():
        s = a[small2] - 1.0
        out[small2] = _erx + _poly(_pa, s) / _poly(_qa, s)
    if med1.any():
        v = a[med1]
        s = 1.0 / (v * v)
        r = np.exp(-v * v - 0.5625) * np.exp(_poly(_ra, s) / _poly(_sa, s))
        out[med1] = 1.0 - r / v
    if med2.any():
        v = a[med2]
        s = 1.0 / (v * v)
        r = np.exp(-v * v - 0.5625) * np.exp(_poly(_rb, s) / _poly(_sb, s))
        out[med2] = 1.0 - r / v
    if big.any():
        out[big] = 1.0
    nan = np.isnan(a)
    if nan.any():
        out[nan] = np.nan

    out = sign * out
    return float(out) if scalar else out


def overline_cot(s: float) -> float:
    """Truncated cotangent: cot(s) for 0 < s <= pi/2 and 0 for s > pi/2."""
    if s <= 0.0:
        raise ValueError("overline_cot requires s > 0")
    if s > math.pi / 2:
        return 0.0
    return math.cos(s) / math.sin(s)
