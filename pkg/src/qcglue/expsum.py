"""Log-domain evaluators for truncated exponential series.

The central object is the degree-2m alternating partial sum

    P_m(w) = sum_{k=0}^{2m} (-w)^k / k!,

together with h_m(y) = P_m(y) e^y and its log-substituted form
g_m(x) = h_m(e^x).  Everything here works with n = 2m + 1 and reduces to
the core integral I(y, nn) from ._quad through the exact identity

    log(g_m(x) - 1) = -log n! + y + n x + log n + log I(y, n - 1),
    y = e^x,

whose x-derivative is exactly 1 / I(y, n - 1).  That derivative makes
every Newton iteration in this module one quadrature call.

Real-axis functions are total: x past the float exponent limit returns
+inf, which is the correctly rounded value of the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln

from ._quad import core_integral, core_integral_log
from .errors import ConfigError, ConvergenceError, DomainError, RangeError

# slope of the large-m drift of s_m: the root of exp(r) + r + 1 = 0
R0 = float(brentq(lambda r: math.exp(r) + r + 1.0, -2.0, -1.0, xtol=1e-15))
if abs(R0 - (-1.27846454)) > 1e-8:
    raise AssertionError(f"startup self-check failed: R0 = {R0!r}")

_X_OVERFLOW = 709.782712893384  # log of the largest double

_LOG_2PI = math.log(2.0 * math.pi)


def _stirling_tail(n: float) -> float:
    # log n! - (n log n - n + 0.5 log(2 pi n)); next term ~ n^-9, < eps
    # for n >= 32
    n2 = n * n
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * n2)) / n2) / n2) / n


@dataclass(frozen=True)
class ExpPartialSum:
    """Degree-2m partial sum with its precomputed calibration point s_m.

    s_m is the real solution of g_m(s_m) = 2; the maps in this package
    pin strips to each other at these points.
    """

    m: int
    n: int
    log_n_factorial: float
    s_m: float


def log_gm_minus_1(ps: ExpPartialSum, x):
    """log(g_m(x) - 1) for real x, vectorized, total on the reals."""
    x = np.asarray(x, dtype=float)
    n = float(ps.n)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        y = np.exp(x)
        finite = np.isfinite(y)
        ysafe = np.where(finite, y, 1.0)
        logi = core_integral_log(ysafe, ps.n - 1)
        out = (-ps.log_n_factorial + ysafe + n * x + math.log(n)) + logi
        out = np.where(finite, out, np.inf)
    return out if out.ndim else float(out)


def log_gm_minus_1_prime(ps: ExpPartialSum, x):
    """d/dx log(g_m(x) - 1) = 1 / I(e^x, n - 1), vectorized."""
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", under="ignore"):
        y = np.exp(x)
        finite = np.isfinite(y)
        ysafe = np.where(finite, y, 1.0)
        out = np.exp(-core_integral_log(ysafe, ps.n - 1))
        out = np.where(finite, out, np.inf)
    return out if out.ndim else float(out)


def remainder_R(n: int, y):
    """Deviation of log(h_m(y) - 1) from its three-term skeleton.

    R(y, n) = log(h_m(y) - 1) + log n! - y - n log y + log(1 + y/n),
    evaluated in the collapsed stable form log I(y, n-1) + log(n + y).
    R(0, n) = 0 by the limit convention.
    """
    if n < 25 or n % 2 == 0:
        raise DomainError(f"remainder is defined for odd n >= 25, got {n}")
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DomainError("remainder is defined for y >= 0")
    out = core_integral_log(y, n - 1) + np.log(n + y)
    return out if out.ndim else float(out)


def _solve_increasing(f, lo, hi, newton_step=None, n_bisect=80, n_newton=10,
                      what="root"):
    """Bisection then Newton polish for an increasing scalar function.

    Newton steps are clipped to the current bracket; convergence is
    |dx| <= 1e-13 * max(1, |x|).
    """
    flo, fhi = f(lo), f(hi)
    if flo > 0 or fhi < 0:
        raise ConvergenceError(f"{what}: bracket [{lo}, {hi}] does not straddle zero")
    for _ in range(n_bisect):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    if newton_step is not None:
        for _ in range(n_newton):
            dx = newton_step(x)
            xn = min(max(x + dx, lo), hi)
            done = abs(xn - x) <= 1e-13 * max(1.0, abs(xn))
            x = xn
            if done:
                break
    return x


def solve_s_m(m: int) -> float:
    """The real point with g_m(s_m) = 2."""
    if m < 0:
        raise ConfigError(f"m must be >= 0, got {m}")
    if m == 0:
        return math.log(math.log(2.0))  # e^(e^s) = 2 exactly
    n = 2 * m + 1
    log_n = math.log(n)

    def f(r):
        y = n * math.exp(r)
        logi = float(core_integral_log(np.float64(y), n - 1))
        if n < 32:
            return -gammaln(n + 1) + y + n * (log_n + r) + log_n + logi
        head = n * (math.exp(r) + r + 1.0)
        return head - 0.5 * (_LOG_2PI + log_n) - _stirling_tail(n) + log_n + logi

    def step(r):
        y = n * math.exp(r)
        return -f(r) * float(core_integral(np.float64(y), n - 1))

    r = _solve_increasing(f, -2.5, -0.05, newton_step=step, what="s_m")
    resid = abs(f(r))
    if resid > max(1e-10, 8.0 * n * np.finfo(float).eps):
        raise ConvergenceError(f"s_m solve stalled at residual {resid:.3e} for m={m}")
    return log_n + r


@lru_cache(maxsize=None)
def make_partial_sum(m: int) -> ExpPartialSum:
    if m < 0:
        raise ConfigError(f"m must be >= 0, got {m}")
    n = 2 * m + 1
    return ExpPartialSum(m=m, n=n, log_n_factorial=float(gammaln(n + 1)),
                         s_m=solve_s_m(m))


# -- strip-change map ------------------------------------------------------


@dataclass(frozen=True)
class PhiMap:
    """Conjugating map between two partial-sum levels m <= M.

    phi(x) solves g_m(phi(x)) = g_M(x).  q is the abscissa where the
    difference g_M - g_m turns from falling to rising, p the fixed point
    phi(p) = p (equivalently g_M(p) = g_m(p)), always to the right of q.
    """

    lower: ExpPartialSum
    upper: ExpPartialSum
    q: float
    p: float

    @property
    def slope_ratio(self) -> float:
        return self.upper.n / self.lower.n


def _phi_asymptote(lower, upper, x):
    lgd1 = upper.log_n_factorial - lower.log_n_factorial
    return (upper.n / lower.n) * x - lgd1 / lower.n


_ASYMPTOTE_X = -38.0


def _newton_solve_family(ps: ExpPartialSum, target, y0, label: str):
    """Solve log(g - 1) = target within one family by clipped Newton.

    The objective is convex increasing in the argument and its derivative
    is exactly 1 / I(e^y, n - 1), so clipped steps converge from either
    side of the root.
    """
    y = np.array(y0, dtype=float, copy=True)
    target = np.asarray(target, dtype=float)
    bad = ~(np.isfinite(y) & np.isfinite(target))
    y[bad] = 0.0  # placeholder so the iteration stays warning-free
    ok = bad.copy()
    for _ in range(160):
        fy = log_gm_minus_1(ps, y) - target
        iy = np.exp(core_integral_log(np.exp(np.minimum(y, _X_OVERFLOW)), ps.n - 1))
        dy = -fy * iy
        dy = np.clip(dy, -2.0, 2.0)
        y = y + np.where(ok, 0.0, dy)
        ok |= np.abs(dy) <= 1e-14 * np.maximum(1.0, np.abs(y))
        if ok.all():
            break
    if not ok.all():
        raise ConvergenceError(f"{label} solve failed at {np.asarray(y0)[~ok][:4]!r}")
    y[bad] = np.nan
    return y


def phi_eval(pm: PhiMap, x):
    """phi(x), vectorized; RangeError past the float exponent limit."""
    lo_ps, up_ps = pm.lower, pm.upper
    x = np.asarray(x, dtype=float)
    if np.any(x > _X_OVERFLOW):
        raise RangeError("phi is not evaluable past x = 709.78")
    if lo_ps.n == up_ps.n:
        out = x.copy()
        return out if out.ndim else float(out)
    scalar = x.ndim == 0
    xf = np.atleast_1d(x).astype(float)
    out = np.empty_like(xf)

    # the linear branch needs both ends of the map deep enough that their
    # exponential corrections sit below double rounding
    cand = _phi_asymptote(lo_ps, up_ps, xf)
    asym = (xf <= _ASYMPTOTE_X) & (cand <= _ASYMPTOTE_X)
    out[asym] = cand[asym]

    todo = ~asym
    if todo.any():
        xs = xf[todo]
        target = log_gm_minus_1(up_ps, xs)
        # ascending maps: the root lies within O(1) of the lower of the two
        # tangent lines (identity and the deep-left asymptote); descending
        # maps: the asymptote line runs away below, but the root stays
        # within O(1) of the identity, and the clipped Newton converges
        # from either side of a convex increasing objective
        if up_ps.n > lo_ps.n:
            y0 = np.minimum(xs, cand[todo])
        else:
            y0 = xs.copy()
        out[todo] = _newton_solve_family(lo_ps, target, y0, "phi")
    return float(out[0]) if scalar else out.reshape(x.shape)


def phi_inverse(pm: PhiMap, y):
    """The x with phi(x) = y, vectorized; the solve runs in the upper family."""
    lo_ps, up_ps = pm.lower, pm.upper
    y = np.asarray(y, dtype=float)
    if np.any(y > _X_OVERFLOW):
        raise RangeError("phi_inverse is not evaluable past y = 709.78")
    if lo_ps.n == up_ps.n:
        out = y.copy()
        return out if out.ndim else float(out)
    scalar = y.ndim == 0
    yf = np.atleast_1d(y).astype(float)
    out = np.empty_like(yf)

    lgd1 = up_ps.log_n_factorial - lo_ps.log_n_factorial
    cand = (lo_ps.n * yf + lgd1) / up_ps.n
    asym = (yf <= _ASYMPTOTE_X) & (cand <= _ASYMPTOTE_X)
    out[asym] = cand[asym]

    todo = ~asym
    if todo.any():
        ys = yf[todo]
        target = log_gm_minus_1(lo_ps, ys)
        if up_ps.n > lo_ps.n:
            x0 = np.maximum(ys, cand[todo])
        else:
            x0 = ys.copy()
        out[todo] = _newton_solve_family(up_ps, target, x0, "phi_inverse")
    return float(out[0]) if scalar else out.reshape(y.shape)


def phi_prime(pm: PhiMap, x):
    """phi'(x) = I(e^phi, n-1) / I(e^x, N-1), vectorized and stable.

    The ratio form survives the regime where phi(x) - x has collapsed
    below one ulp; there both logs agree to ~1e-13 and the exponential
    of their difference is 1 to the same accuracy.
    """
    lo_ps, up_ps = pm.lower, pm.upper
    x = np.asarray(x, dtype=float)
    if lo_ps.n == up_ps.n:
        out = np.ones_like(x)
        return out if out.ndim else 1.0
    scalar = x.ndim == 0
    xf = np.atleast_1d(x).astype(float)
    out = np.empty_like(xf)
    cand = _phi_asymptote(lo_ps, up_ps, xf)
    asym = (xf <= _ASYMPTOTE_X) & (cand <= _ASYMPTOTE_X)
    out[asym] = up_ps.n / lo_ps.n
    todo = ~asym
    if todo.any():
        xs = xf[todo]
        ys = np.atleast_1d(phi_eval(pm, xs))
        la = core_integral_log(np.exp(ys), lo_ps.n - 1)
        lb = core_integral_log(np.exp(xs), up_ps.n - 1)
        out[todo] = np.exp(la - lb)
    return float(out[0]) if scalar else out.reshape(x.shape)


def fixed_point(pm: PhiMap) -> float:
    """The p > q with g_M(p) = g_m(p)."""
    lo_ps, up_ps = pm.lower, pm.upper

    def d(x):
        return float(log_gm_minus_1(up_ps, x) - log_gm_minus_1(lo_ps, x))

    def dprime(x):
        y = math.exp(x)
        ia = float(core_integral(np.float64(y), up_ps.n - 1))
        ib = float(core_integral(np.float64(y), lo_ps.n - 1))
        return 1.0 / ia - 1.0 / ib

    q = pm.q
    if d(q) >= 0:
        raise ConvergenceError("difference is not negative at its minimum abscissa")
    width = 1.0
    while d(q + width) <= 0:
        width *= 2.0
        if width > 1 << 20:
            raise ConvergenceError("no sign change found right of q")
    return _solve_increasing(d, q, q + width,
                             newton_step=lambda x: -d(x) / dprime(x),
                             what="fixed point")


def build_phi_map(m: int, M: int) -> PhiMap:
    """PhiMap between any two levels, with q and the fixed point p solved.

    m > M is allowed (schedules for shallow exponents are not monotone);
    q and p are symmetric in the pair, so the descending case reuses the
    ascending solve with the roles swapped.
    """
    if m < 0 or M < 0:
        raise ConfigError(f"levels must be >= 0, got ({m}, {M})")
    lower = make_partial_sum(m)
    upper = make_partial_sum(M)
    if m == M:
        q = lower.s_m
        return PhiMap(lower=lower, upper=upper, q=q, p=q)
    if m > M:
        rev = build_phi_map(M, m)
        return PhiMap(lower=lower, upper=upper, q=rev.q, p=rev.p)
    q = (gammaln(upper.n) - gammaln(lower.n)) / (upper.n - lower.n)
    pm = PhiMap(lower=lower, upper=upper, q=float(q), p=math.nan)
    p = fixed_point(pm)
    return PhiMap(lower=lower, upper=upper, q=float(q), p=p)
