"""Fixed-node quadrature for the core integral

    I(y, nn) = integral_0^1 exp(y*(s-1)) * s**nn ds,

vectorized over y, for real y >= 0 or complex y, and integer nn >= 0.

Everything in this package that needs a partial sum of exp in log form
reduces to I through the exact integration-by-parts identity

    nn * I(y, nn-1) + y * I(y, nn) = 1,

which also serves as a runtime error certificate.

Numerics: substituting s = 1 - u/S with S = y + nn turns the integrand
into exp(-u) times a slowly varying factor, so one graded Gauss-Legendre
panel rule on u in [0, min(70, S)] covers y from 0 to 1e16 and nn up
to ~1e15 at ~1e-14 relative error.  The complex evaluator splits three
ways on the contract region Re y >= -0.27 * nn:

  - |S| < 240: integrate s over the full interval [0, 1] on uniform
    panels.  The contract bounds nn <= 1.37 |S|, so decay plus
    oscillation stay near two radians per panel.
  - nn <= 0.45 |S|: a finite descending identity (see
    _descending_exact) evaluates I in closed form; quadrature along
    the s = 1 contour would silently drop an s = 0 endpoint
    contribution of relative size ~ exp(-Re y) / |y|^(nn+1) there.
  - otherwise: the u-contour from s = 1; the algebraic factor s^nn is
    then strong enough that everything away from s = 1 is far below
    double rounding.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

from .errors import DomainError

U_CAP = 70.0
_N_PANELS = 40
_GRADE = 1.6

_GL12_X, _GL12_W = np.polynomial.legendre.leggauss(12)


def _panel_rule():
    # Breakpoints graded toward u = 0 where the exp(-u) mass sits.
    b = (np.arange(_N_PANELS + 1) / _N_PANELS) ** _GRADE
    lo, hi = b[:-1], b[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = mid[:, None] + half[:, None] * _GL12_X[None, :]
    weights = half[:, None] * np.broadcast_to(_GL12_W, nodes.shape)
    return nodes.ravel(), weights.ravel()


_NODES01, _WEIGHTS01 = _panel_rule()


def _flat_rule(n_panels=120):
    # uniform panels on [0, 1]; used where the integrand oscillates but
    # does not decay enough for the graded contour rule
    b = np.arange(n_panels + 1) / n_panels
    mid = 0.5 * (b[:-1] + b[1:])
    half = 0.5 / n_panels
    nodes = mid[:, None] + half * _GL12_X[None, :]
    weights = np.broadcast_to(half * _GL12_W, nodes.shape)
    return nodes.ravel(), weights.ravel()


_NODES_FLAT, _WEIGHTS_FLAT = _flat_rule()


def log1p_any(x):
    """log(1 + x) accurate near 0 for real or complex arrays."""
    x = np.asarray(x)
    if not np.iscomplexobj(x):
        return np.log1p(x)
    ax = np.abs(x)
    small = ax < 1e-4
    xs = np.where(small, x, 0.0)
    # degree-7 alternating series; relative truncation ~ |x|^7 < 1e-28
    ser = xs * (1 + xs * (-1 / 2 + xs * (1 / 3 + xs * (-1 / 4 + xs * (1 / 5 + xs * (-1 / 6 + xs / 7))))))
    with np.errstate(divide="ignore", invalid="ignore"):
        full = np.log(np.where(small, 1.0, 1.0 + x))
    return np.where(small, ser, full)


def core_integral(y, nn):
    """I(y, nn) for real y >= 0 (scalar or array), integer nn >= 0."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DomainError("core_integral requires y >= 0 on the real path")
    nn = float(nn)
    if nn == 0.0:
        ys = np.maximum(y, 1e-300)
        yc = np.minimum(y, 1.0)  # series lane only; clip avoids spurious overflow
        return np.where(y > 1e-8, -np.expm1(-ys) / ys, 1.0 - yc / 2.0 + yc * yc / 6.0)
    S = y + nn
    cap = np.minimum(U_CAP, S)
    u = cap[..., None] * _NODES01
    w = cap[..., None] * _WEIGHTS01
    r = u / S[..., None]
    with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
        expo = -(y / S)[..., None] * u + nn * np.log1p(-r)
        vals = np.exp(expo)
    return np.einsum("...k,...k->...", vals, w) / S


def _descending_exact(W, nn):
    """I via the finite identity

        I(W, nn) = sum_{i=0}^{nn} (-1)^i nn!/(nn-i)! / W^(i+1)
                   + (-1)^(nn+1) nn! exp(-W) / W^(nn+1),

    valid for any W != 0.  Used when nn <= 0.45 |S|, where the term
    ratio (nn - i)/|W| stays below ~0.82 and the sum can be truncated
    once terms fall under 1e-60 of the head.
    """
    terms = int(min(nn, 320.0))
    t = 1.0 / W
    acc = t.copy()
    for i in range(terms):
        t = t * (-(nn - i) / W)
        acc += t
    # closing term, in log form so huge |W| cannot overflow the power
    expo = -W + gammaln(nn + 1.0) - (nn + 1.0) * np.log(W)
    sign = 1.0 if int(nn) % 2 == 1 else -1.0
    if terms == int(nn):
        acc += sign * np.exp(expo)
    return acc


def core_integral_complex(W, nn):
    """I(W, nn) for complex W with Re W >= -0.27 * nn.

    Outside that half-plane the branch split below is not validated (and the
    closing term of the descending identity can overflow), so the call is
    rejected rather than returning an unvetted value.  The threshold carries
    one degree-step of slack because the recurrence certificate evaluates
    the pair (nn, nn - 1) at the same W.
    """
    W = np.asarray(W, dtype=complex)
    nn = float(nn)
    if np.any(W.real < -0.27 * (nn + 1.0)):
        raise DomainError("core_integral_complex needs Re W >= -0.27 * nn")
    if nn == 0.0:
        aw = np.abs(W)
        Ws = np.where(aw > 1e-8, W, 1.0)
        Wc = np.where(aw > 1.0, 0.0, W)
        out = np.where(aw > 1e-8, -np.expm1(-Ws) / Ws, 1.0 - Wc / 2.0 + Wc * Wc / 6.0)
        return out
    scalar = W.ndim == 0
    Wf = np.atleast_1d(W)
    S = Wf + nn
    aS = np.abs(S)
    direct = aS < 240.0
    desc = ~direct & (nn <= 0.45 * aS)
    cont = ~direct & ~desc

    out = np.empty(Wf.shape, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
        if direct.any():
            # full interval, peak at s = 1; |S| < 240 over 120 panels keeps
            # decay plus oscillation at ~2 radians per panel
            s = 1.0 - _NODES_FLAT
            expo = Wf[direct][:, None] * (s - 1.0)[None, :] + nn * np.log(s)[None, :]
            out[direct] = np.exp(expo) @ _WEIGHTS_FLAT
        if desc.any():
            out[desc] = _descending_exact(Wf[desc], nn)
        if cont.any():
            # straight contour from s = 1 into the decay direction; with
            # nn > 0.45 |S| the algebraic factor pins all mass at s = 1 and
            # the dropped connecting piece is far below double rounding
            Sb, Wb = S[cont], Wf[cont]
            u = U_CAP * _NODES01
            expo = -(Wb / Sb)[:, None] * u[None, :] + nn * log1p_any(-u[None, :] / Sb[:, None])
            out[cont] = (np.exp(expo) @ (U_CAP * _WEIGHTS01)) / Sb
    return complex(out[0]) if scalar else out


def core_integral_log(y, nn):
    """log I(y, nn) for real y >= 0.

    Same rule as core_integral, but the 1/S factor is kept in log form so
    the result stays finite for y up to the float exponent limit, where
    I itself would round to a subnormal or to zero.
    """
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DomainError("core_integral_log requires y >= 0")
    nn = float(nn)
    if nn == 0.0:
        ys = np.maximum(y, 1e-300)
        yc = np.minimum(y, 1.0)
        val = np.where(y > 1e-8, -np.expm1(-ys) / ys, 1.0 - yc / 2.0 + yc * yc / 6.0)
        return np.log(val)
    S = y + nn
    cap = np.minimum(U_CAP, S)
    u = cap[..., None] * _NODES01
    w = cap[..., None] * _WEIGHTS01
    r = u / S[..., None]
    with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
        expo = -(y / S)[..., None] * u + nn * np.log1p(-r)
        vals = np.exp(expo)
    ssum = np.einsum("...k,...k->...", vals, w)
    return np.log(ssum) - np.log(S)


def recurrence_residual(y, nn):
    """|nn * I(y, nn-1) + y * I(y, nn) - 1|  (exact identity; error certificate)."""
    if nn < 1:
        raise DomainError("residual needs nn >= 1")
    y = np.asarray(y)
    if np.iscomplexobj(y):
        i0 = core_integral_complex(y, nn - 1)
        i1 = core_integral_complex(y, nn)
    else:
        i0 = core_integral(y, nn - 1)
        i1 = core_integral(y, nn)
    return np.abs(nn * i0 + y * i1 - 1.0)
