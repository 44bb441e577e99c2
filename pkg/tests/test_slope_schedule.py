"""Tests for the odd-slope schedule construction."""

import json

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcglue.errors import ConfigError, RangeError
from qcglue.slope_schedule import TWO_PI, SlopeSchedule, build_schedule


# hand-checked small cases: (gamma, k0, p_2, n_2)
WORKED = [
    (2.0, 1, 26, 25),
    (1.25, 1, 4, 3),
    (5.0, 1, 49874, 49873),
]


@pytest.mark.parametrize("gamma,k0,p2,n2", WORKED)
def test_worked_values(gamma, k0, p2, n2):
    s = build_schedule(gamma, 64)
    assert s.k0 == k0
    assert s.p[1] == 1
    assert s.p[2] == p2
    assert s.n[1] == n2


def _targets(gamma, ks):
    with mp.workdps(60):
        g = mp.mpf(gamma)
        return [(2 * mp.pi * k) ** g / (2 * mp.pi) for k in ks]


@pytest.mark.parametrize("gamma", [1.25, 1.6, 2.0, 3.0, 5.0])
def test_breakpoints_track_power_law(gamma):
    s = build_schedule(gamma, 200)
    ks = range(s.k0 + 1, 201)
    for k, t in zip(ks, _targets(gamma, ks)):
        assert abs(t - s.p[k]) <= 1


@pytest.mark.parametrize("gamma", [1.25, 2.0, 5.0])
def test_parity_alternates_and_slopes_odd(gamma):
    s = build_schedule(gamma, 200)
    for k in range(1, 201):
        nk = s.p[k] - s.p[k - 1]
        assert nk >= 1 and nk % 2 == 1
    assert s.n[0] == 1  # first strip has unit slope


def test_threshold_is_minimal():
    # at k0 the 4*pi increment condition fails (unless clamped to 1), at
    # k0 + 1 it holds
    for gamma in (1.1, 1.25, 1.5, 3.0):
        s = build_schedule(gamma, 8)
        with mp.workdps(60):
            g = mp.mpf(gamma)
            inc = lambda k: (2 * mp.pi * k) ** g - (2 * mp.pi * (k - 1)) ** g
            assert inc(s.k0 + 1) >= 4 * mp.pi
            if s.k0 > 1:
                assert inc(s.k0) < 4 * mp.pi


def test_prefix_is_identity():
    s = build_schedule(1.05, 64)
    assert s.k0 > 64  # steep threshold: whole range is prefix
    assert s.p == tuple(range(65))
    x = np.linspace(0.0, TWO_PI * 64, 101)
    assert np.allclose(s.eval_h(x), x, rtol=0, atol=1e-9)


def test_h_hits_breakpoints():
    for gamma in (1.25, 2.0, 5.0):
        s = build_schedule(gamma, 120)
        ks = np.arange(1, min(120, s._k_exact) + 1)
        got = s.eval_h(TWO_PI * ks)
        want = np.array([float(v) for v in s.p[1:len(ks) + 1]]) * TWO_PI
        assert np.max(np.abs(got - want) / want) < 5e-15


def test_h_g_roundtrip():
    for gamma in (1.25, 2.0, 3.5):
        s = build_schedule(gamma, 400)
        xmax = (0.99 * float(s.p[min(400, s._k_exact)]) * TWO_PI) ** (1.0 / gamma)
        x = np.geomspace(0.3, xmax, 400)
        rel = np.abs(s.eval_h(s.eval_g(x)) - x**gamma) / x**gamma
        assert rel.max() < 1e-12


def test_g_is_plain_power_below_first_breakpoint():
    s = build_schedule(2.0, 16)
    x = np.linspace(0.05, TWO_PI**0.5 * 0.999, 50)
    assert np.allclose(s.eval_g(x), x**2.0, rtol=1e-15, atol=0)
    assert s.eval_g(1.0) == 1.0


@pytest.mark.parametrize("gamma", [1.25, 2.0, 5.0])
def test_h_stays_near_power_law(gamma):
    # |h(x) - x^gamma| <= C (x^(gamma-2) + 1): the breakpoint rounding
    # contributes 2*pi, chord interpolation gamma*(gamma-1)*x^(gamma-2)*pi^2/2
    s = build_schedule(gamma, 300)
    khi = min(300, s._k_exact)
    x = np.linspace(TWO_PI, TWO_PI * khi, 4000)
    w = np.abs(s.eval_h(x) - x**gamma) / (x ** (gamma - 2.0) + 1.0)
    C = 2 * np.pi + 6.0 * gamma * (gamma - 1.0)
    assert w.max() <= C


@pytest.mark.parametrize("gamma", [1.25, 2.0, 5.0])
def test_g_near_identity_at_scale(gamma):
    s = build_schedule(gamma, 300)
    khi = min(300, s._k_exact)
    xmax = (0.99 * float(s.p[khi]) * TWO_PI) ** (1.0 / gamma)
    x = np.geomspace(4.0, xmax, 2000)
    bound = (2 * np.pi + 6.0 * gamma * (gamma - 1.0)) * (1.0 / x + x ** (1.0 - gamma))
    assert np.all(np.abs(s.eval_g(x) - x) <= bound)


@pytest.mark.parametrize("gamma", [1.25, 2.0, 5.0])
def test_slope_density(gamma):
    # window means of n_k track the derivative gamma*(2 pi k)^(gamma-1)
    s = build_schedule(gamma, 2000)
    khi = min(2000, s._k_exact)
    half = 25
    for k in range(max(s.k0 + half + 1, khi // 2), khi - half, 97):
        mean = (s.p[k + half] - s.p[k - half - 1]) / (2 * half + 1)
        target = gamma * (TWO_PI * k) ** (gamma - 1.0)
        assert 0.93 < mean / target < 1.07


def test_g_prime_matches_difference_quotient():
    for gamma in (1.25, 2.0, 3.5):
        s = build_schedule(gamma, 400)
        xmax = (0.9 * float(s.p[min(400, s._k_exact)]) * TWO_PI) ** (1.0 / gamma)
        x = np.geomspace(2.0, xmax, 200)
        u = s.eval_g(x)
        # keep the stencil inside one strip
        dist = np.abs(u / TWO_PI - np.round(u / TWO_PI))
        ok = dist > 1e-3
        x = x[ok]
        h = 1e-7 * np.maximum(1.0, x)
        fd = (s.eval_g(x + h) - s.eval_g(x - h)) / (2 * h)
        an = s.eval_g_prime(x)
        assert np.max(np.abs(fd - an) / an) < 1e-5


def test_g_prime_sides_bracket_breakpoints():
    s = build_schedule(2.0, 64)
    for k in (1, 3, 10):
        xstar = (float(s.p[k]) * TWO_PI) ** 0.5
        left = s.eval_g_prime(xstar, side="left")
        right = s.eval_g_prime(xstar, side="right")
        assert left >= right  # slope jumps up across a breakpoint
        lo = s.eval_g_prime(xstar * (1 - 1e-9))
        hi = s.eval_g_prime(xstar * (1 + 1e-9))
        assert lo >= hi * 0.999
    with pytest.raises(ValueError):
        s.eval_g_prime(2.0, side="middle")


def test_strip_lookup_and_slope():
    s = build_schedule(2.0, 32)
    assert s.strip_of_x(0.0) == 1
    assert s.strip_of_x(TWO_PI * 0.999) == 1
    assert s.strip_of_x(TWO_PI * 1.001) == 2
    assert s.strip_of_x(TWO_PI * 1e9) == 32  # clamped
    ks = np.arange(1, 33)
    assert np.all(s.slope(ks) == np.array([float(v) for v in s.n]))


def test_range_and_config_errors():
    s = build_schedule(2.0, 16)
    with pytest.raises(RangeError):
        s.eval_h(-0.1)
    with pytest.raises(RangeError):
        s.eval_h(TWO_PI * 16.5)
    with pytest.raises(RangeError):
        s.h_inverse(float(s.p[16]) * TWO_PI * 1.01)
    with pytest.raises(RangeError):
        s.h_inverse(-1.0)
    with pytest.raises(ConfigError):
        build_schedule(1.0, 16)
    with pytest.raises(ConfigError):
        build_schedule(0.7, 16)
    with pytest.raises(ConfigError):
        build_schedule(2.0, 0)


def test_refuses_strips_past_float64_exactness():
    s = build_schedule(5.0, 600)
    assert s._k_exact < s.k_max  # p overflows 2^53 inside this range
    with pytest.raises(RangeError):
        s.eval_h(TWO_PI * (s._k_exact + 5))
    # below the line everything works
    assert np.isfinite(s.eval_h(TWO_PI * (s._k_exact - 1)))


def test_json_roundtrip_and_validation():
    s = build_schedule(1.6, 48)
    text = s.to_json()
    assert text == s.to_json()  # deterministic bytes
    t = SlopeSchedule.from_json(text)
    assert t.p == s.p and t.gamma == s.gamma and t.k0 == s.k0 and t.k_max == s.k_max

    d = json.loads(text)
    d["p"][5] = d["p"][4] + 2  # even slope
    with pytest.raises(ConfigError):
        SlopeSchedule.from_json(json.dumps(d))
    d = json.loads(text)
    d["p"][0] = 1
    with pytest.raises(ConfigError):
        SlopeSchedule.from_json(json.dumps(d))


@settings(max_examples=40, deadline=None)
@given(
    gamma=st.floats(min_value=1.1, max_value=5.0),
    k_max=st.integers(min_value=2, max_value=60),
)
def test_construction_invariants(gamma, k_max):
    s = build_schedule(gamma, k_max)
    assert len(s.p) == k_max + 1 and s.p[0] == 0 and s.p[1] == 1
    # strictly increasing, odd increments
    for a, b in zip(s.p, s.p[1:]):
        assert b > a and (b - a) % 2 == 1
    ks = range(s.k0 + 1, k_max + 1)
    for k, t in zip(ks, _targets(gamma, ks)):
        assert abs(t - s.p[k]) <= 1
