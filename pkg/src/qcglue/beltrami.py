"""Beltrami coefficients and dilatations of the glued maps.

mu = f_zbar / f_z and K = (1 + |mu|) / (1 - |mu|).  The strip-interpolated
half-plane maps have mu in closed form: with w = z + t(z)(psi_k(x) - x)
and the level map holomorphic,

    w_z = 1 + a - i b,    w_zbar = a + i b,
    a = (t/2)(psi_k'(x) - 1),
    b = (psi_k(x) - x) / (4 pi)          on the right (U strips),
    b = (psi_k(x) - x) / (4 pi n_k)      on the left (V strips),

so mu = (a + ib) / (1 + a - ib).  The axis-alignment homeomorphism Q has
Q_zbar = -a - ib with a = ((1-x)/2)(g'(y) - 1) and b = (g(y) - y)/2 on its
interpolation strip, mu = ((gamma-1)/(gamma+1)) e^{2 i arg z} on the unit
half-disk (radial power), and mu = 0 where it is the identity.

Wherever exactly one layer of a composite is non-conformal, |mu| of the
composite equals |mu| of that layer at the lifted point, and holomorphic
pre-composition only rotates the phase: mu_{f o p} = (mu_f o p) conj(p')/p'.
The sector powers and level maps therefore never change K.  The one region
without a closed form is the lifted strip 0 < Re zeta < 1 where Q and the
strip interpolation are both non-conformal; there a four-point central
difference on the log values supplies mu (the factor exp(L) cancels from
the ratio f_zbar/f_z, so differencing L directly is exact up to branch
alignment, which is done mod 2 pi against the stencil center).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, RangeError, SeamError
from .expsum import phi_eval, phi_prime
from .expsum_complex import MapValue
from .glue import (TWO_PI, GlueConfig, RegionTag, _eval_U1, _g_profile,
                   eval_Q, eval_U)

# scalar analytic ops refuse points this close to a derivative seam
_SEAM_TOL = 1e-9
# grid sweeps skip (and bound separately) cells whose stencil cannot be
# shrunk clear of a seam
_TUBE = 1e-6


@dataclass(frozen=True)
class BeltramiSample:
    z: complex
    mu: complex
    K: float
    region: RegionTag
    method: str  # "analytic" or "finite_difference"


def _finish(z, mu, region, method) -> BeltramiSample:
    am = abs(mu)
    if not am < 1.0:
        raise DomainError(f"|mu| = {am} >= 1 at {z}: map is not quasiregular there")
    return BeltramiSample(z=complex(z), mu=complex(mu),
                          K=(1.0 + am) / (1.0 - am),
                          region=region, method=method)


def _mu_from_ab(a, b):
    return (a + 1j * b) / (1.0 + a - 1j * b)


# -- closed-form coefficients, vectorized ---------------------------------

def _mu_U_array(c: GlueConfig, zf: np.ndarray) -> np.ndarray:
    """mu of the right half-plane strip map at points with Re z >= 0."""
    x = zf.real
    yA = np.abs(zf.imag)
    k = np.clip(np.floor(yA / TWO_PI).astype(np.int64) + 1, 1, c.strips)
    t = yA / TWO_PI - (k - 1)
    mu = np.empty(zf.shape, dtype=complex)
    for kk in np.unique(k):
        sel = k == kk
        lo, up = c.levels[kk - 1], c.levels[kk]
        xs = x[sel]
        psi = phi_eval(c.phis[kk - 1], xs + up.s_m) - lo.s_m
        psip = phi_prime(c.phis[kk - 1], xs + up.s_m)
        a = 0.5 * t[sel] * (psip - 1.0)
        b = (psi - xs) / (2.0 * TWO_PI)
        mu[sel] = _mu_from_ab(a, b)
    neg = zf.imag < 0
    mu[neg] = np.conj(mu[neg])
    return mu


def _mu_V_array(c: GlueConfig, zf: np.ndarray) -> np.ndarray:
    """mu of the left half-plane strip map at points with Re z <= 0."""
    x = zf.real
    yA = np.abs(zf.imag)
    Np = np.array(c.partial_sums_N, dtype=float)
    q = yA / TWO_PI
    k = np.clip(np.searchsorted(Np, q, side="right"), 1, c.strips)
    mu = np.empty(zf.shape, dtype=complex)
    for kk in np.unique(k):
        sel = k == kk
        lo, up = c.levels[kk - 1], c.levels[kk]
        nk = float(lo.n)
        xs = x[sel]
        t = (q[sel] - Np[kk - 1]) / nk
        psi = nk * (phi_eval(c.phis[kk - 1], xs / up.n + up.s_m) - lo.s_m)
        psip = (nk / up.n) * phi_prime(c.phis[kk - 1], xs / up.n + up.s_m)
        a = 0.5 * t * (psip - 1.0)
        b = (psi - xs) / (2.0 * TWO_PI * nk)
        mu[sel] = _mu_from_ab(a, b)
    neg = zf.imag < 0
    mu[neg] = np.conj(mu[neg])
    return mu


def _g_profile_prime(c: GlueConfig, yA, shifted: bool) -> np.ndarray:
    """d/dy of the axis profile used by Q (or its half-turn variant)."""
    yA = np.atleast_1d(np.asarray(yA, dtype=float))
    if not shifted:
        return np.atleast_1d(np.asarray(c.schedule.eval_g_prime(yA)))
    Y = yA ** c.gamma
    out = c.gamma * yA ** (c.gamma - 1.0)  # identity profile below the crossover
    high = Y > 3.0 * np.pi
    if high.any():
        sched = c.schedule
        u = sched.h_inverse(Y[high] - np.pi)
        kk = np.clip(np.searchsorted(TWO_PI * np.arange(sched.k_max + 1), u,
                                     side="right"), 1, sched.k_max)
        out[high] = out[high] / sched.slope(kk)
    return out


def _mu_Q_strip_array(c: GlueConfig, zf: np.ndarray, shifted: bool) -> np.ndarray:
    """mu of Q on its interpolation strip (0 < Re z < 1, |Im z| > 1)."""
    x = zf.real
    yA = np.abs(zf.imag)
    g = _g_profile(c, yA, shifted)
    gp = _g_profile_prime(c, yA, shifted)
    a = 0.5 * (1.0 - x) * (gp - 1.0)
    b = 0.5 * (g - yA)
    mu = (-a - 1j * b) / (1.0 + a - 1j * b)
    neg = zf.imag < 0
    mu[neg] = np.conj(mu[neg])
    return mu


# -- scalar samples --------------------------------------------------------

def mu_U_analytic(c: GlueConfig, z) -> BeltramiSample:
    """Closed-form Beltrami coefficient of the right half-plane map.

    Refuses points within 1e-9 of an interior strip seam, where the
    one-sided derivatives disagree.
    """
    zc = complex(z)
    if zc.real < 0:
        raise DomainError("right half-plane map needs Re z >= 0")
    yA = abs(zc.imag)
    if yA > c.max_height_right() * (1.0 + 1e-12):
        raise RangeError("|Im z| past the configured strips")
    for j in range(1, c.strips):
        if abs(yA - TWO_PI * j) < _SEAM_TOL:
            raise SeamError(f"within {_SEAM_TOL} of the strip seam at 2 pi {j}")
    mu = _mu_U_array(c, np.array([zc]))[0]
    k = min(int(yA // TWO_PI) + 1, c.strips)
    tag = RegionTag("right_strip", k=k, t=float(yA / TWO_PI - (k - 1)))
    return _finish(zc, mu, tag, "analytic")


def mu_V_analytic(c: GlueConfig, z) -> BeltramiSample:
    """Closed-form Beltrami coefficient of the left half-plane map."""
    zc = complex(z)
    if zc.real > 0:
        raise DomainError("left half-plane map needs Re z <= 0")
    yA = abs(zc.imag)
    if yA > c.max_height_left() * (1.0 + 1e-12):
        raise RangeError("|Im z| past the configured strips")
    Np = c.partial_sums_N
    for j in range(1, c.strips):
        if abs(yA - TWO_PI * Np[j]) < _SEAM_TOL:
            raise SeamError(f"within {_SEAM_TOL} of the strip seam at 2 pi N_{j}")
    mu = _mu_V_array(c, np.array([zc]))[0]
    k = min(int(np.searchsorted(np.array(Np, dtype=float), yA / TWO_PI,
                                side="right")), c.strips)
    k = max(k, 1)
    t = (yA / TWO_PI - Np[k - 1]) / (Np[k] - Np[k - 1])
    return _finish(zc, mu, RegionTag("left_strip", k=k, t=float(t)), "analytic")


def mu_Q_analytic(c: GlueConfig, z, variant: str = "base") -> BeltramiSample:
    """Beltrami coefficient of the alignment homeomorphism Q.

    Identity region: mu = 0.  Unit half-disk: the radial power stretch,
    |mu| = (gamma-1)/(gamma+1), K = gamma.  Interpolation strip: the
    a, b coefficients built from the axis profile.  ``variant`` picks the
    base profile or the half-turn one ("shifted").
    """
    if variant not in ("base", "shifted"):
        raise ConfigError(f"variant must be 'base' or 'shifted', got {variant!r}")
    zc = complex(z)
    if zc.real < 0:
        raise DomainError("Q needs Re z >= 0")
    x, yA = zc.real, abs(zc.imag)
    r = abs(zc)
    if x < 1.0 and r <= 1.0:
        ratio = (c.gamma - 1.0) / (c.gamma + 1.0)
        th = np.angle(zc) if r > 0 else 0.0
        return _finish(zc, ratio * np.exp(2j * th),
                       RegionTag("q_disk_power"), "analytic")
    if x < 1.0 and yA > 1.0:
        mu = _mu_Q_strip_array(c, np.array([zc]),
                               shifted=(variant == "shifted"))[0]
        return _finish(zc, mu, RegionTag("q_strip_interp"), "analytic")
    return _finish(zc, 0j, RegionTag("q_identity"), "analytic")


# -- finite differences ----------------------------------------------------

def _branch_aligned(L, Lc):
    d = L - Lc
    return d.real + 1j * np.angle(np.exp(1j * d.imag))


def _fd_mu_array(fn, zf: np.ndarray, h) -> np.ndarray:
    """Vectorized 4-point central-difference mu of a log-domain map.

    ``fn`` maps an array of points to log values; ``h`` broadcasts.
    Differences are taken against the stencil center so each point's
    branch is aligned mod 2 pi before differencing.
    """
    h = np.broadcast_to(np.asarray(h, dtype=float), zf.shape)
    Lc = fn(zf)
    dp = _branch_aligned(fn(zf + h), Lc)
    dm = _branch_aligned(fn(zf - h), Lc)
    dip = _branch_aligned(fn(zf + 1j * h), Lc)
    dim = _branch_aligned(fn(zf - 1j * h), Lc)
    fx = (dp - dm) / (2.0 * h)
    fy = (dip - dim) / (2.0 * h)
    fz = 0.5 * (fx - 1j * fy)
    fzb = 0.5 * (fx + 1j * fy)
    return fzb / fz


def K_finite_difference(map_fn, z, h: float = None, region: RegionTag = None,
                        region_of=None) -> BeltramiSample:
    """Independent dilatation estimate from a 4-point stencil.

    ``map_fn`` takes a point array and returns either log values, plain
    complex values, or a MapValue.  When ``region_of`` is given, all five
    stencil points must classify identically or the stencil is rejected;
    the caller then shrinks h or skips the point.
    """
    zc = complex(z)
    if h is None:
        h = 1e-5 * max(1.0, abs(zc))
    if region_of is not None:
        tags = [region_of(zc)] + [region_of(zc + d)
                                  for d in (h, -h, 1j * h, -1j * h)]
        if any(t != tags[0] for t in tags[1:]):
            raise SeamError(f"stencil of half-width {h} crosses a seam at {zc}")

    def as_log(pts):
        out = map_fn(pts)
        if isinstance(out, MapValue):
            return np.asarray(out.log)
        # plain values go through a local log: mu is a ratio of partials,
        # so the post-composed log drops out of it
        return np.log(np.asarray(out, dtype=complex))

    mu = _fd_mu_array(as_log, np.array([zc]), h)[0]
    tag = region if region is not None else RegionTag("fd_probe")
    return _finish(zc, mu, tag, "finite_difference")


def _mu_W_fd_array(c: GlueConfig, zeta: np.ndarray, shifted: bool = False,
                   base_h: float = 1e-5) -> np.ndarray:
    """mu of the composed half-plane map by finite differences.

    Used where Q and the strip interpolation are both non-conformal (the
    lifted strip 0 < Re zeta < 1 and the unit half-disk).  The stencil is
    clamped inside the current piece and shrunk (twice, by 10) when its
    image straddles a level seam; points that cannot be cleared come back
    NaN for the caller to bound separately.
    """
    if shifted:
        def L(pts):
            return _eval_U1(c, eval_Q(c, pts, shifted=True)).log

        def image_strip(g):
            im = np.abs(np.asarray(g).imag)
            return np.where(im < np.pi, -1.0, np.floor((im - np.pi) / TWO_PI))
    else:
        def L(pts):
            return eval_U(c, eval_Q(c, pts)).log

        def image_strip(g):
            return np.floor(np.abs(np.asarray(g).imag) / TWO_PI)

    x = zeta.real
    yA = np.abs(zeta.imag)
    r = np.abs(zeta)
    h = np.minimum(base_h * np.maximum(1.0, np.abs(zeta)),
                   np.minimum(x, np.abs(1.0 - x)) / 2.0)
    in_disk = (x < 1.0) & (r <= 1.0)
    # disk points stay inside the half-disk; strip points clear the
    # unit-height edge of the interpolation region
    h = np.where(in_disk, np.minimum(h, (1.0 - r) / 2.0),
                 np.where(yA < 1.0 + 2.0 * h,
                          np.minimum(h, np.maximum(yA - 1.0, 0.0) / 2.0), h))
    mu = np.full(zeta.shape, np.nan + 1j * np.nan, dtype=complex)
    todo = h > _TUBE * 1e-3
    for _ in range(3):
        if not todo.any():
            break
        pts = zeta[todo]
        hh = h[todo]
        # the image must stay inside one level strip for all five points
        imgs = [eval_Q(c, pts + d, shifted=shifted)
                for d in (0, hh, -hh, 1j * hh, -1j * hh)]
        strip = [image_strip(g) for g in imgs]
        ok = np.ones(pts.shape, dtype=bool)
        for s in strip[1:]:
            ok &= s == strip[0]
        idx = np.flatnonzero(todo)
        good = idx[ok]
        if good.size:
            mu[good] = _fd_mu_array(L, zeta[good], h[good])
        h[idx[~ok]] /= 10.0
        nxt = np.zeros_like(todo)
        nxt[idx[~ok]] = h[idx[~ok]] > _TUBE * 1e-3
        todo = nxt
    return mu


# -- assembled coefficient on the glued plane ------------------------------

def mu_G(c: GlueConfig, z, variant: str = "G0") -> np.ndarray:
    """Beltrami coefficient of the glued map at plane points (vectorized).

    Analytic per piece wherever one layer carries all the distortion;
    finite differences on the lifted Q strip.  Points whose stencil cannot
    be cleared of a seam come back NaN.  Phases include the conj(p')/p'
    rotation of the sector powers, so this is the actual coefficient in
    plane coordinates, not just its magnitude.
    """
    if variant not in ("G0", "G1"):
        raise ConfigError(f"variant must be 'G0' or 'G1', got {variant!r}")
    shifted = variant == "G1"
    za = np.asarray(z, dtype=complex)
    zf = np.atleast_1d(za).astype(complex)
    if np.any(np.abs(zf) > c.max_radius() * (1.0 + 1e-12)):
        raise RangeError(f"|z| past the evaluable radius {c.max_radius():.4g}")
    mu = np.empty(zf.shape, dtype=complex)

    right = np.abs(np.angle(zf)) <= 0.5 * np.pi / c.sigma
    if right.any():
        zr = zf[right]
        zeta = zr ** c.sigma
        phase = np.exp(-2j * (c.sigma - 1.0) * np.angle(zr))
        x = zeta.real
        yA = np.abs(zeta.imag)
        r = np.abs(zeta)
        interp = (x < 1.0) & (r > 1.0) & (yA > 1.0)
        disk = (x < 1.0) & (r <= 1.0)
        ident = ~(interp | disk)
        sub = np.empty(zeta.shape, dtype=complex)
        if ident.any():
            sub[ident] = _mu_U_shifted(c, zeta[ident], shifted)
        if interp.any():
            sub[interp] = _mu_W_fd_array(c, zeta[interp], shifted=shifted)
        if disk.any():
            sub[disk] = _mu_W_fd_array(c, zeta[disk], shifted=shifted)
        mu[right] = sub * phase
    left = ~right
    if left.any():
        zl = zf[left]
        zeta = -((-zl) ** c.rho)
        phase = np.exp(-2j * (c.rho - 1.0) * np.angle(-zl))
        mu[left] = _mu_V_shifted(c, zeta, shifted) * phase
    return mu if za.ndim else mu[0]


def _mu_U_shifted(c: GlueConfig, w: np.ndarray, shifted: bool) -> np.ndarray:
    """mu of the right half-plane map or its half-turn variant."""
    if not shifted:
        return _mu_U_array(c, w)
    yA = np.abs(w.imag)
    mu = np.zeros(w.shape, dtype=complex)  # middle band is holomorphic
    hi = yA >= np.pi
    if hi.any():
        mu[hi] = _mu_U_array(c, w[hi].real + 1j * (yA[hi] - np.pi))
        neg = hi & (w.imag < 0)
        mu[neg] = np.conj(_mu_U_array(
            c, w[neg].real + 1j * (yA[neg] - np.pi)))
    return mu


def _mu_V_shifted(c: GlueConfig, w: np.ndarray, shifted: bool) -> np.ndarray:
    if not shifted:
        return _mu_V_array(c, w)
    yA = np.abs(w.imag)
    mu = np.zeros(w.shape, dtype=complex)
    hi = yA >= np.pi
    if hi.any():
        mu[hi] = _mu_V_array(c, w[hi].real + 1j * (yA[hi] - np.pi))
        neg = hi & (w.imag < 0)
        mu[neg] = np.conj(_mu_V_array(
            c, w[neg].real + 1j * (yA[neg] - np.pi)))
    return mu


# -- the integral condition -------------------------------------------------

@dataclass(frozen=True)
class AnnulusResult:
    r_lo: float
    r_hi: float
    integral: float
    richardson_err: float
    sup_K: float
    seam_bound: float  # bound on the skipped seam-tube contribution


def _twb_grid(c, variant, r_lo, r_hi, nr, nth, th_lo, th_hi):
    dr = (r_hi - r_lo) / nr
    dth = (th_hi - th_lo) / nth
    rr = r_lo + dr * (np.arange(nr) + 0.5)
    tt = th_lo + dth * (np.arange(nth) + 0.5)
    R, T = np.meshgrid(rr, tt, indexing="ij")
    zs = (R * np.exp(1j * T)).ravel()
    mu = mu_G(c, zs, variant=variant)
    am = np.abs(mu)
    bad = ~np.isfinite(am)
    am = np.where(bad, 0.0, am)
    K = (1.0 + am) / (1.0 - am)
    cell = dr * dth  # integrand (K-1)/r^2 times area element r dr dth
    integral = float(np.sum(np.where(bad, 0.0, (K - 1.0) / R.ravel())) * cell)
    sup_K = float(np.max(K))
    seam_bound = float(np.sum(bad / R.ravel()) * cell) * (sup_K - 1.0)
    return integral, sup_K, seam_bound


def twb_annulus_report(c: GlueConfig, r_lo: float, r_hi: float,
                       variant: str = "G0", grid=(64, 256),
                       theta=None) -> AnnulusResult:
    """Midpoint-rule integral of (K-1)/|z|^2 over an annulus, with a
    half-step Richardson refinement and error estimate."""
    if not 1.0 <= r_lo < r_hi:
        raise ConfigError(f"need 1 <= r_lo < r_hi, got ({r_lo}, {r_hi})")
    if r_hi > c.max_radius() * (1.0 + 1e-12):
        raise RangeError(f"r_hi = {r_hi} past the evaluable radius "
                         f"{c.max_radius():.4g}")
    nr, nth = grid
    th_lo, th_hi = theta if theta is not None else (-np.pi, np.pi)
    i1, s1, b1 = _twb_grid(c, variant, r_lo, r_hi, nr, nth, th_lo, th_hi)
    i2, s2, b2 = _twb_grid(c, variant, r_lo, r_hi, 2 * nr, 2 * nth, th_lo, th_hi)
    return AnnulusResult(r_lo=float(r_lo), r_hi=float(r_hi),
                         integral=i2 + (i2 - i1) / 3.0,
                         richardson_err=abs(i2 - i1) / 3.0,
                         sup_K=max(s1, s2), seam_bound=max(b1, b2))


def twb_annulus_integral(c: GlueConfig, variant: str = "G0", r_lo: float = 1.0,
                         r_hi: float = None, grid=(64, 256),
                         theta=None) -> float:
    if r_hi is None:
        r_hi = c.max_radius() * 0.98
    return twb_annulus_report(c, r_lo, r_hi, variant=variant, grid=grid,
                              theta=theta).integral


def twb_dyadic_table(c: GlueConfig, variant: str = "G0", r_lo: float = 1.0,
                     r_max: float = None, grid=(64, 256)) -> tuple:
    """Per-dyadic-annulus integrals out to the evaluable radius."""
    if r_max is None:
        r_max = c.max_radius() * 0.98
    out = []
    lo = r_lo
    while lo < r_max * 0.999:
        hi = min(2.0 * lo, r_max)
        out.append(twb_annulus_report(c, lo, hi, variant=variant, grid=grid))
        lo = hi
    return tuple(out)


def sk_contribution(c: GlueConfig, k: int, x_cap: float = 400.0,
                    grid=(96, 40)) -> float:
    """Integral of (K_U - 1)/|z|^2 over the far part of strip k.

    The region is 2 pi (k-1) < y < 2 pi k, x > max(1, 8 log n_k); the x
    range is truncated at x_cap and the remaining tail is bounded by the
    last column's dilatation times the exact 1/x^2 tail integral.
    """
    if not 1 <= k <= c.strips:
        raise ConfigError(f"strip index {k} outside 1..{c.strips}")
    nk = c.levels[k - 1].n
    x_min = max(1.0, 8.0 * math.log(nk)) if nk > 1 else 1.0
    if x_cap <= x_min:
        raise ConfigError(f"x_cap = {x_cap} inside the excluded core "
                          f"(needs > {x_min:.3g})")
    nx, ny = grid
    edges = np.geomspace(x_min, x_cap, nx + 1)
    xm = np.sqrt(edges[:-1] * edges[1:])  # log-midpoints
    wx = np.diff(edges)
    dy = TWO_PI / ny
    ym = TWO_PI * (k - 1) + dy * (np.arange(ny) + 0.5)
    X, Y = np.meshgrid(xm, ym, indexing="ij")
    mu = _mu_U_array(c, (X + 1j * Y).ravel()).reshape(X.shape)
    am = np.abs(mu)
    K = (1.0 + am) / (1.0 - am)
    integrand = (K - 1.0) / (X**2 + Y**2)
    total = float(np.sum(integrand * wx[:, None] * dy))
    tail_K = float(np.max(K[-1, :]))
    total += (tail_K - 1.0) * TWO_PI / x_cap
    return total


def fit_decay_exponent(ks, values) -> float:
    """OLS exponent beta with values ~ C k^(-beta) (log-log slope)."""
    ks = np.asarray(ks, dtype=float)
    vals = np.asarray(values, dtype=float)
    if ks.size < 2 or np.any(vals <= 0):
        raise ConfigError("need >= 2 strictly positive values to fit a decay")
    slope = np.polyfit(np.log(ks), np.log(vals), 1)[0]
    return float(-slope)


def annulus_csv(results) -> str:
    """Deterministic CSV of annulus rows (matches the report columns)."""
    lines = ["annulus_lo,annulus_hi,integral,richardson_err,sup_K"]
    for r in results:
        lines.append(f"{r.r_lo:.17g},{r.r_hi:.17g},{r.integral:.17g},"
                     f"{r.richardson_err:.17g},{r.sup_K:.17g}")
    return "\n".join(lines) + "\n"


def twb_summary(c: GlueConfig, variant: str = "G0", grid=(64, 256),
                fit_ks=None) -> dict:
    """JSON-ready convergence summary: dyadic table, per-strip far-field
    contributions, and the fitted decay exponent."""
    table = twb_dyadic_table(c, variant=variant, grid=grid)
    if fit_ks is None:
        fit_ks = tuple(range(2, c.strips + 1))
    sk = {k: sk_contribution(c, k) for k in fit_ks}
    delta = min(1.0, c.gamma - 1.0)
    return {
        "sigma": c.sigma,
        "variant": variant,
        "delta": delta,
        "annuli": [
            {"r_lo": r.r_lo, "r_hi": r.r_hi, "integral": r.integral,
             "richardson_err": r.richardson_err, "sup_K": r.sup_K,
             "seam_bound": r.seam_bound}
            for r in table
        ],
        "total": sum(r.integral for r in table),
        "sup_K": max(r.sup_K for r in table),
        "sk_contributions": {str(k): v for k, v in sk.items()},
        "fitted_decay_exponent": fit_decay_exponent(list(sk), list(sk.values())),
    }
