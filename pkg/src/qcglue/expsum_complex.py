"""Complex-plane evaluator for the log of g_m(z) = P_m(e^z) exp(e^z).

g_m is entire in W = e^z and 2*pi*i-periodic in z, so the value is a
function of W alone, but every route below keeps n * z instead of
n * Log W: the two differ by 2*pi*i*n*k with integer n, which the
exponential cannot see, and z stays finite where W underflows.

Four routes partition the W-plane (m >= 1):

  quad      Re W >= -0.27 * 2m.  log(g - 1) through the core integral,
            then g = 1 + (g - 1).  Far from the zero set of g, so the
            log1p-style combination is stable.
  far       |W| >= 1.1 * n.  All zeros of P_m sit in |W| <= 2m
            (Enestroem-Kakeya on the factorial coefficients), so the
            descending expansion of P_m converges geometrically with
            ratio < 1/1.1 and never cancels.
  uniform   2m >= 40, remaining annulus.  Large-degree asymptotics of
            the core integral (._uniform); measured error <= 5.4e-10
            at 2m = 40, improving like the fourth power of the degree.
  ascending 2m < 40, remaining region.  Direct ascending sum of
            P_m(W) with a cancellation monitor; points whose running
            term mass exceeds 1e4 times the result are recomputed in
            arbitrary precision.

Zeros of g are zeros of P_m(W) and live only in the uniform and
ascending regions, plus a thin quad-region sliver near Re W = -0.27*2m.
A point is flagged near_zero when the final combination cannot place
log g to better than float noise; flagged points are first recomputed
in arbitrary precision (certified by the exact degree recurrence of
the core integral), and stay flagged only when they sit within
~1e-12 relative of the actual zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ._quad import core_integral_complex, log1p_any
from ._uniform import uniform_log_core_integral
from .errors import RangeError
from .expsum import ExpPartialSum

_Z_OVERFLOW = 709.782712893384
_QUAD_EDGE = -0.27
_FAR_FACTOR = 1.1
_A_UNIFORM = 40
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class MapValue:
    """log g values with a per-point proximity flag for the zero set."""

    log: np.ndarray
    near_zero: np.ndarray


def _mp_point(ps: ExpPartialSum, z: complex):
    """Arbitrary-precision log g at one point, with the zero-distance ratio.

    Returns (log g, |g| / |g - 1|).  The core integral is taken from the
    confluent hypergeometric form and certified against the exact degree
    recurrence before use.
    """
    import mpmath as mp

    n, nn = ps.n, ps.n - 1
    lam = abs(np.exp(complex(z))) / n
    extra = int(0.22 * n * np.log(lam) ** 2) if lam > 1.0 else 0
    with mp.workdps(60 + extra):
        zm = mp.mpc(z.real, z.imag)
        W = mp.exp(zm)
        I1 = mp.hyp1f1(1, nn + 2, -W) / (nn + 1)
        I0 = mp.hyp1f1(1, nn + 1, -W) / nn
        res = abs(nn * I0 + W * I1 - 1) / max(1.0, abs(W * I1))
        if res > mp.mpf(10) ** -30:
            raise ArithmeticError(f"recurrence check failed at z={z!r}: {res}")
        L1 = W + n * zm + mp.log(n) - mp.loggamma(n + 1) + mp.log(I1)
        e = mp.exp(L1)
        d = 1 + e
        if d == 0:
            return complex(-np.inf, 0.0), 0.0
        return complex(mp.log(d)), float(abs(d) / abs(e))


def _combine(ps, z, L1, tol_rel):
    """log g and flags from L1 = log(g - 1), rescuing ambiguous points."""
    out = np.empty_like(L1)
    flag = np.zeros(L1.shape, dtype=bool)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        big = L1.real > _Z_OVERFLOW
        tiny = L1.real < -_Z_OVERFLOW
        mid = ~big & ~tiny
        out[big] = L1[big] + np.exp(-L1[big])
        out[tiny] = np.exp(L1[tiny])
        if mid.any():
            e = np.exp(L1[mid])
            d = 1.0 + e
            val = np.log(d)
            sus = np.abs(d) <= 32.0 * (_EPS + tol_rel) * np.abs(e)
            if sus.any():
                zm = z[mid]
                vs = val.copy()
                fs = np.zeros(val.shape, dtype=bool)
                for j in np.flatnonzero(sus):
                    vj, ratio = _mp_point(ps, complex(zm[j]))
                    vs[j] = vj
                    fs[j] = ratio <= 1e-12
                val, fl = vs, fs
            else:
                fl = np.zeros(val.shape, dtype=bool)
            out[mid] = val
            flag[mid] = fl
    return out, flag


def _via_quad(ps, z, W):
    n, nn = ps.n, ps.n - 1
    with np.errstate(divide="ignore", invalid="ignore"):
        logI = np.log(np.asarray(core_integral_complex(W, nn), dtype=complex))
    L1 = W + n * z + np.log(n) - gammaln(n + 1) + logI
    return _combine(ps, z, L1, 1e-12)


def _via_uniform(ps, z, W):
    n, nn = ps.n, ps.n - 1
    logI = np.asarray(uniform_log_core_integral(W, nn), dtype=complex)
    L1 = W + n * z + np.log(n) - gammaln(n + 1) + logI
    # measured branch accuracy: 5.4e-10 at nn = 40, ~1e-10 by nn = 60
    return _combine(ps, z, L1, 5e-9 if nn < 60 else 1e-9)


def _via_descending(ps, z, W):
    # P_m by its leading monomials; |W| >= 1.1 n keeps the term ratio
    # below 1/1.1 from the first step, so this cannot cancel.
    nn = ps.n - 1
    invW = 1.0 / W
    t = np.ones_like(W)
    T = np.ones_like(W)
    for i in range(min(nn, 2000)):
        t = t * ((-(nn - i)) * invW)
        T += t
        if np.all(np.abs(t) <= 1e-18):
            break
    out = W + nn * z - gammaln(ps.n) + np.log(T)
    return out, np.zeros(W.shape, dtype=bool)


def _via_ascending(ps, z, W):
    # direct P_m(W); the monitor M tracks total term mass
    nn = ps.n - 1
    t = np.ones_like(W)
    A = np.ones_like(W)
    M = np.ones(W.shape, dtype=float)
    for k in range(1, nn + 1):
        t = t * (-W / k)
        A += t
        M += np.abs(t)
    sus = np.abs(A) <= 1e-4 * M
    flag = np.zeros(W.shape, dtype=bool)
    if sus.any():
        import mpmath as mp

        for j in np.flatnonzero(sus):
            with mp.workdps(60):
                Wm = mp.exp(mp.mpc(z[j].real, z[j].imag))
                tm, Am = mp.mpf(1), mp.mpf(1)
                for k in range(1, nn + 1):
                    tm = tm * (-Wm) / k
                    Am += tm
                flag[j] = abs(Am) <= mp.mpf(1e-12) * M[j]
                A[j] = complex(Am)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = W + np.log(A)
    return out, flag


def log_gm(ps: ExpPartialSum, z) -> MapValue:
    """log g_m(z) for complex z, any branch, with near-zero flags.

    Imaginary parts are only meaningful mod 2*pi; exponentiate before
    comparing values from different routes.  Raises RangeError when
    Re z exceeds the float exponent limit.  NaN propagates.
    """
    za = np.asarray(z, dtype=complex)
    scalar = za.ndim == 0
    zf = np.atleast_1d(za).ravel()
    if np.any(zf.real > _Z_OVERFLOW):
        raise RangeError("Re z past the exp overflow limit")
    out = np.empty(zf.shape, dtype=complex)
    flag = np.zeros(zf.shape, dtype=bool)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        W = np.exp(zf)
    if ps.m == 0:
        out[:] = W
    else:
        nn = ps.n - 1
        quad = W.real >= _QUAD_EDGE * nn
        far = ~quad & (np.abs(W) >= _FAR_FACTOR * ps.n)
        nan = ~np.isfinite(W)
        quad |= nan  # NaN rides the quad route and propagates
        rest = ~quad & ~far
        uni = rest & (nn >= _A_UNIFORM)
        asc = rest & (nn < _A_UNIFORM)
        for mask, fn in ((quad, _via_quad), (far, _via_descending),
                         (uni, _via_uniform), (asc, _via_ascending)):
            if mask.any():
                out[mask], flag[mask] = fn(ps, zf[mask], W[mask])
    out = out.reshape(za.shape)
    flag = flag.reshape(za.shape)
    if scalar:
        return MapValue(complex(out[()]), bool(flag[()]))
    return MapValue(out, flag)
