"""Glued plane maps built from strip-wise partial-sum interpolation.

The right half-plane carries U: strip k (heights 2*pi*(k-1) to 2*pi*k)
evaluates level m_k, and within the strip the real coordinate slides from
x to psi_k(x) so that the top of strip k lands exactly on the bottom of
strip k+1.  The left half-plane carries V, same idea with strips of width
2*pi*n_k and the level map rescaled by n_k.  V's inner argument uses the
strip-local height y - 2*pi*N_{k-1}: the full period of level k's map is
2*pi*n_k, so local coordinates are what make the strip seams close (the
base offsets 2*pi*N_{k-1} are not multiples of the period).

A homeomorphism Q of the right half-plane aligns the two boundary data
sets: Q(iy) = i g(y) with h(g(y)) = y**gamma, so that

    U(Q(iy)) = U(i g(y)) = V(i y**gamma).

The glued map is then

    G0(z) = U(Q(z**sigma))   for |arg z| <= pi/(2 sigma),
    G0(z) = V(-(-z)**rho)    for |arg -z| <= pi/(2 rho),

and the two sectors tile the plane edge to edge.  G1 replaces the lowest
strip by exp(-exp(z + s_0)) and pushes everything else out by a half
turn; its gluing needs the axis profile g1(y) built from the same h but
with the half-turn removed first (see _g_profile).

All evaluators are log-domain (MapValue) and conjugate-symmetric by
construction: they compute at |Im z| and conjugate the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import ConfigError, DomainError, RangeError
from .expsum import (
    ExpPartialSum,
    PhiMap,
    build_phi_map,
    log_gm_minus_1,
    make_partial_sum,
    phi_eval,
)
from .expsum_complex import MapValue, log_gm
from .slope_schedule import (SlopeSchedule, build_schedule,
                             build_schedule_with_prefix)

TWO_PI = 2.0 * np.pi

# past this the level maps overflow double exponentials anyway
_X_LIMIT = 700.0


@dataclass(frozen=True)
class GlueConfig:
    """Frozen bundle of everything the glued maps need.

    levels[k-1] is the partial sum for strip k, phis[k-1] the transition
    map joining strip k to strip k+1.  The number of fully usable strips
    is len(phis); the last level only serves as the upper endpoint of the
    last transition.
    """

    sigma: float
    gamma: float
    rho: float
    schedule: SlopeSchedule
    levels: tuple
    phis: tuple

    def __post_init__(self):
        if not (self.gamma > 1.0 and self.rho > 1.0):
            raise ConfigError("gamma and rho must both exceed 1")
        if len(self.levels) != len(self.phis) + 1:
            raise ConfigError("need exactly one more level than transitions")
        for k, ps in enumerate(self.levels, start=1):
            if ps.n != self.schedule.n[k - 1]:
                raise ConfigError(
                    f"level {k} degree {ps.n} does not match schedule slope "
                    f"{self.schedule.n[k - 1]}"
                )

    @property
    def strips(self) -> int:
        return len(self.phis)

    @property
    def partial_sums_N(self) -> tuple:
        """N_k = n_1 + ... + n_k for k = 0 .. strips (N_0 = 0)."""
        return tuple(self.schedule.p[: self.strips + 1])

    def max_height_right(self) -> float:
        """Largest |Im z| the right half-plane map supports."""
        return TWO_PI * self.strips

    def max_height_left(self) -> float:
        return TWO_PI * self.partial_sums_N[-1]

    def max_radius(self) -> float:
        """Largest |z| supported by the glued maps, either sector."""
        return self.max_height_left() ** (1.0 / self.rho)


@lru_cache(maxsize=8)
def build_glue_config(sigma: float, strips: int = 5,
                      flat_prefix: int = 0) -> GlueConfig:
    """Config for exponent sigma in (1/2, 1) with the given strip count.

    flat_prefix > 0 forces that many leading unit slopes onto the
    schedule.  The half-turn variant's reciprocal identity (G1 = 1/G0 low
    in the plane) holds exactly only when the prefix is long enough that
    g(y) = y**gamma through height 2*pi; see prefix_for_exact_power.
    """
    if not 0.5 < sigma < 1.0:
        raise ConfigError(f"sigma must lie in (1/2, 1), got {sigma!r}")
    if strips < 1:
        raise ConfigError(f"need at least one strip, got {strips!r}")
    gamma = 1.0 / (2.0 * sigma - 1.0)
    rho = sigma * gamma
    if flat_prefix:
        schedule = build_schedule_with_prefix(gamma, flat_prefix)
    else:
        schedule = build_schedule(gamma)
    if strips + 1 > schedule.k_max:
        raise ConfigError(f"strips={strips} exceeds the schedule size")
    ms = [(nk - 1) // 2 for nk in schedule.n[: strips + 1]]
    levels = tuple(make_partial_sum(m) for m in ms)
    phis = tuple(build_phi_map(ms[k], ms[k + 1]) for k in range(strips))
    return GlueConfig(sigma=sigma, gamma=gamma, rho=rho,
                      schedule=schedule, levels=levels, phis=phis)


@dataclass(frozen=True)
class RegionTag:
    """Which piecewise case applies at a point, with strip data if any."""

    variant: str
    k: Optional[int] = None
    t: Optional[float] = None


def _as_points(z):
    za = np.asarray(z, dtype=complex)
    return za, za.ndim == 0, np.atleast_1d(za).ravel()


def _pack(out, flag, shape, scalar):
    out = out.reshape(shape)
    flag = flag.reshape(shape)
    if scalar:
        return MapValue(complex(out[()]), bool(flag[()]))
    return MapValue(out, flag)


def _clamp_half_plane(zf, side):
    # sector powers land a hair across the axis through rounding; snap
    # those back, reject anything genuinely on the wrong side
    x = zf.real.copy()
    tol = 1e-12 * np.maximum(1.0, np.abs(zf))
    if side == "right":
        bad = x < -tol
        x[(x < 0) & ~bad] = 0.0
    else:
        bad = x > tol
        x[(x > 0) & ~bad] = 0.0
    if bad.any():
        raise DomainError(f"point off the {side} half-plane: {zf[bad][:3]!r}")
    return x


def eval_U(c: GlueConfig, z) -> MapValue:
    """Right half-plane map; |Im z| up to 2*pi*strips."""
    za, scalar, zf = _as_points(z)
    x = _clamp_half_plane(zf, "right")
    if np.any(x > _X_LIMIT):
        raise RangeError("Re z past the double-exponential overflow range")
    y = np.abs(zf.imag)
    if np.any(y > c.max_height_right() * (1.0 + 1e-12)):
        raise RangeError(
            f"|Im z| past 2*pi*{c.strips}; build the config with more strips"
        )
    # NaN inputs ride strip 1 and propagate through the level map
    k = np.minimum(
        np.floor(np.nan_to_num(y) / TWO_PI).astype(np.int64) + 1, c.strips
    )
    t = y / TWO_PI - (k - 1)
    out = np.empty(zf.shape, dtype=complex)
    flag = np.zeros(zf.shape, dtype=bool)
    for kk in np.unique(k):
        sel = k == kk
        lo = c.levels[kk - 1]
        up = c.levels[kk]
        xs = x[sel]
        ts = t[sel]
        psi = phi_eval(c.phis[kk - 1], xs + up.s_m) - lo.s_m
        w = (1.0 - ts) * xs + ts * psi + 1j * (TWO_PI * ts)
        mv = log_gm(lo, w + lo.s_m)
        out[sel] = mv.log
        flag[sel] = mv.near_zero
    neg = zf.imag < 0
    out[neg] = np.conj(out[neg])
    return _pack(out, flag, za.shape, scalar)


def eval_V(c: GlueConfig, z) -> MapValue:
    """Left half-plane map; |Im z| up to 2*pi*N_strips."""
    za, scalar, zf = _as_points(z)
    x = _clamp_half_plane(zf, "left")
    y = np.abs(zf.imag)
    if np.any(y > c.max_height_left() * (1.0 + 1e-12)):
        raise RangeError(
            f"|Im z| past 2*pi*N_{c.strips}; build the config with more strips"
        )
    Np = np.array(c.partial_sums_N, dtype=float)
    q = y / TWO_PI
    k = np.clip(np.searchsorted(Np, np.nan_to_num(q), side="right"), 1, c.strips)
    out = np.empty(zf.shape, dtype=complex)
    flag = np.zeros(zf.shape, dtype=bool)
    for kk in np.unique(k):
        sel = k == kk
        lo = c.levels[kk - 1]
        up = c.levels[kk]
        nk = float(lo.n)
        xs = x[sel]
        yloc = TWO_PI * (q[sel] - Np[kk - 1])
        ts = yloc / (TWO_PI * nk)
        psi = nk * (phi_eval(c.phis[kk - 1], xs / up.n + up.s_m) - lo.s_m)
        w = (1.0 - ts) * xs + ts * psi + 1j * yloc
        mv = log_gm(lo, w / nk + lo.s_m)
        out[sel] = mv.log
        flag[sel] = mv.near_zero
    neg = zf.imag < 0
    out[neg] = np.conj(out[neg])
    return _pack(out, flag, za.shape, scalar)


def _g_profile(c: GlueConfig, y, shifted: bool):
    """Axis profile of Q (shifted=False) or its half-turn variant.

    Base: g(y) = h^{-1}(y**gamma).  Shifted: the gluing partner sits one
    half-turn lower (the middle strip eats heights below pi), so the
    identification is g1(y) = h^{-1}(y**gamma - pi) + pi, which agrees
    with y**gamma while y**gamma <= 3*pi.
    """
    y = np.asarray(y, dtype=float)
    Y = y**c.gamma
    if not shifted:
        return c.schedule.h_inverse(Y)
    out = np.array(Y, dtype=float, copy=True)
    high = Y > 3.0 * np.pi
    if high.any():
        out[high] = c.schedule.h_inverse(Y[high] - np.pi) + np.pi
    return out


def eval_Q(c: GlueConfig, z, shifted: bool = False):
    """Right half-plane homeomorphism Q (or its half-turn variant Q1).

    Identity for Re z >= 1 and on the unit-cross part of the strip;
    radial power z|z|^(gamma-1) in the unit half-disk; elsewhere the
    imaginary part interpolates between the axis profile and identity.
    Plain complex output: Q carries no zero information.
    """
    za, scalar, zf = _as_points(z)
    x = _clamp_half_plane(zf, "right")
    yA = np.abs(zf.imag)
    r = np.hypot(x, yA)
    out = np.array(zf, dtype=complex, copy=True)
    disk = (x < 1.0) & (r <= 1.0)
    interp = (x < 1.0) & (r > 1.0) & (yA > 1.0)
    if disk.any():
        out[disk] = zf[disk] * r[disk] ** (c.gamma - 1.0)
    if interp.any():
        prof = _g_profile(c, yA[interp], shifted)
        val = (1.0 - x[interp]) * prof + x[interp] * yA[interp]
        out[interp] = x[interp] + 1j * np.copysign(val, zf.imag[interp])
    # remaining cases (Re z >= 1; tall-and-low sliver) are the identity
    if scalar:
        return complex(out.reshape(za.shape)[()])
    return out.reshape(za.shape)


def _eval_U1(c: GlueConfig, z) -> MapValue:
    za, scalar, zf = _as_points(z)
    im = zf.imag
    s0 = c.levels[0].s_m
    out = np.empty(zf.shape, dtype=complex)
    flag = np.zeros(zf.shape, dtype=bool)
    up = im >= np.pi
    dn = im <= -np.pi
    mid = ~up & ~dn
    if up.any():
        mv = eval_U(c, zf[up] - 1j * np.pi)
        out[up], flag[up] = mv.log, mv.near_zero
    if dn.any():
        mv = eval_U(c, zf[dn] + 1j * np.pi)
        out[dn], flag[dn] = mv.log, mv.near_zero
    if mid.any():
        if np.any(zf[mid].real + s0 > _X_LIMIT + 10.0):
            raise RangeError("middle strip past the exp overflow range")
        out[mid] = -np.exp(zf[mid] + s0)
    return _pack(out, flag, za.shape, scalar)


def _eval_V1(c: GlueConfig, z) -> MapValue:
    za, scalar, zf = _as_points(z)
    im = zf.imag
    s0 = c.levels[0].s_m
    out = np.empty(zf.shape, dtype=complex)
    flag = np.zeros(zf.shape, dtype=bool)
    up = im >= np.pi
    dn = im <= -np.pi
    mid = ~up & ~dn
    if up.any():
        mv = eval_V(c, zf[up] - 1j * np.pi)
        out[up], flag[up] = mv.log, mv.near_zero
    if dn.any():
        mv = eval_V(c, zf[dn] + 1j * np.pi)
        out[dn], flag[dn] = mv.log, mv.near_zero
    if mid.any():
        out[mid] = -np.exp(zf[mid] + s0)
    return _pack(out, flag, za.shape, scalar)


def _sector_split(c: GlueConfig, zf):
    th = np.angle(zf)
    right = np.abs(th) <= np.pi / (2.0 * c.sigma)
    return right, ~right


def eval_G0(c: GlueConfig, z) -> MapValue:
    """The glued map: U after Q on the right sector, V on the left."""
    za, scalar, zf = _as_points(z)
    right, left = _sector_split(c, zf)
    out = np.empty(zf.shape, dtype=complex)
    flag = np.zeros(zf.shape, dtype=bool)
    if right.any():
        w = zf[right] ** c.sigma
        mv = eval_U(c, eval_Q(c, w))
        out[right], flag[right] = mv.log, mv.near_zero
    if left.any():
        zeta = -((-zf[left]) ** c.rho)
        mv = eval_V(c, zeta)
        out[left], flag[left] = mv.log, mv.near_zero
    return _pack(out, flag, za.shape, scalar)


def eval_G0_minus_1_log(c: GlueConfig, x):
    """log(G0(x) - 1) on the negative real axis, computed directly.

    Far to the left G0 - 1 collapses below the double-precision floor of
    exp, so eval_G0's log underflows to 0; on the axis the left map
    reduces to the strip-1 level map whose log(g - 1) is total on the
    reals, giving the growth probe at any distance (the axis never leaves
    strip 1, so no height cap applies).
    """
    xs = np.asarray(x, dtype=float)
    if np.any(xs > 0):
        raise DomainError("the direct log(G0 - 1) probe lives on x <= 0")
    lo = c.levels[0]
    zeta = -np.abs(xs) ** c.rho
    out = log_gm_minus_1(lo, zeta / lo.n + lo.s_m)
    return out if xs.ndim else float(out)


def eval_G1(c: GlueConfig, z) -> MapValue:
    """Half-turn variant of the glued map (reciprocal of G0 low in the
    upper half-plane, used to manufacture a zero-free solution)."""
    za, scalar, zf = _as_points(z)
    right, left = _sector_split(c, zf)
    out = np.empty(zf.shape, dtype=complex)
    flag = np.zeros(zf.shape, dtype=bool)
    if right.any():
        w = zf[right] ** c.sigma
        mv = _eval_U1(c, eval_Q(c, w, shifted=True))
        out[right], flag[right] = mv.log, mv.near_zero
    if left.any():
        zeta = -((-zf[left]) ** c.rho)
        mv = _eval_V1(c, zeta)
        out[left], flag[left] = mv.log, mv.near_zero
    return _pack(out, flag, za.shape, scalar)


def eval_sector_power(c: GlueConfig, z, N: int, variant: str = "G0") -> MapValue:
    """G0(z**N) or G1(z**N); build the config with sigma_0 = sigma/N."""
    if not (isinstance(N, (int, np.integer)) and N >= 1):
        raise ConfigError(f"N must be a positive integer, got {N!r}")
    if variant not in ("G0", "G1"):
        raise ConfigError(f"variant must be 'G0' or 'G1', got {variant!r}")
    za = np.asarray(z, dtype=complex)
    w = za**int(N)
    return (eval_G0 if variant == "G0" else eval_G1)(c, w)


def classify_region(c: GlueConfig, z) -> RegionTag:
    """Which piecewise case governs a half-plane point (plumbing for the
    dilatation sweeps; scalar only)."""
    zc = complex(z)
    x, yA = zc.real, abs(zc.imag)
    if x <= 0.0:
        if yA > c.max_height_left() * (1.0 + 1e-12):
            raise RangeError("left strip index past the configured range")
        Np = c.partial_sums_N
        q = yA / TWO_PI
        k = min(int(np.searchsorted(np.array(Np, dtype=float), q, side="right")),
                c.strips)
        k = max(k, 1)
        t = (q - Np[k - 1]) / (Np[k] - Np[k - 1])
        return RegionTag("left_strip", k=k, t=float(t))
    if x >= 1.0:
        if yA > c.max_height_right() * (1.0 + 1e-12):
            raise RangeError("right strip index past the configured range")
        k = min(int(yA // TWO_PI) + 1, c.strips)
        return RegionTag("right_strip", k=k, t=float(yA / TWO_PI - (k - 1)))
    r = abs(zc)
    if r <= 1.0:
        return RegionTag("q_disk_power")
    if yA <= 1.0:
        return RegionTag("q_identity")
    return RegionTag("q_strip_interp")


def classify_sector(c: GlueConfig, z) -> RegionTag:
    """Which sector formula governs a plane point of the glued map.

    The two sectors tile the plane, so the only way a point lands outside
    both is by exceeding the evaluable radius.
    """
    zc = complex(z)
    if abs(zc) > c.max_radius() * (1.0 + 1e-12):
        return RegionTag("outside_sectors")
    if abs(np.angle(zc)) <= 0.5 * np.pi / c.sigma:
        return RegionTag("right_sector")
    return RegionTag("left_sector")
