"""Error-function kernel and truncated cotangent."""
from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from touchdown_cert.specfun import erf, overline_cot


def test_erf_absolute_error_vs_mpmath():
    mpmath.mp.dps = 30
    mags = np.logspace(-8, np.log10(6.0), 5000)
    xs = np.concatenate([-mags[::-1], mags])
    ours = erf(xs)
    worst = 0.0
    for x, v in zip(xs, ours):
        ref = float(mpmath.erf(mpmath.mpf(float(x))))
        worst = max(worst, abs(v - ref))
    assert worst <= 1e-13


def test_erf_odd_symmetry_bit_exact():
    rng = np.random.default_rng(7)
    xs = rng.uniform(-8, 8, 2000)
    assert np.array_equal(erf(-xs), -erf(xs))


def test_erf_monotone_and_saturating():
    xs = np.linspace(-7.5, 7.5, 20001)
    ys = erf(xs)
    assert (np.diff(ys) >= 0).all()
    assert erf(6.0) == 1.0 and erf(-6.0) == -1.0
    assert erf(0.0) == 0.0


def test_erf_scalar_matches_vector():
    xs = np.array([1e-30, 0.3, 0.9, 1.5, 3.0, 5.9, 7.0])
    vec = erf(xs)
    for x, v in zip(xs, vec):
        s = erf(float(x))
        assert isinstance(s, float)
        assert s == v


def test_erf_nan_passthrough():
    assert math.isnan(erf(float("nan")))


@given(st.floats(min_value=-6, max_value=6, allow_nan=False))
def test_erf_bounded(x):
    assert -1.0 <= erf(x) <= 1.0


def test_overline_cot_values():
    assert overline_cot(math.pi / 4) == pytest.approx(1.0, abs=1e-15)
    assert overline_cot(math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert overline_cot(math.pi / 2 + 1e-9) == 0.0
    assert overline_cot(10.0) == 0.0
    with pytest.raises(ValueError):
        overline_cot(0.0)
    with pytest.raises(ValueError):
        overline_cot(-1.0)
