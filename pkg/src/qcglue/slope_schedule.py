"""Odd-slope schedules approximating a power law.

A schedule is a sequence of odd positive integers ``n_k`` (with ``n_1 = 1``)
chosen so that the continuous function ``h`` with ``h(0) = 0`` that is linear
with slope ``n_k`` on ``[2*pi*(k-1), 2*pi*k]`` tracks ``x**gamma`` to within
``2*pi`` at the breakpoints.  Writing ``p_k = h(2*pi*k)/(2*pi)``, the
construction is: ``p_k = k`` for ``k <= k0`` (slope-1 prefix), and beyond the
threshold ``k0`` each ``p_k`` is the integer of opposite parity to ``p_{k-1}``
closest to ``(2*pi*k)**gamma / (2*pi)``, ties resolved to the larger
candidate.  Opposite parity forces every slope ``n_k = p_k - p_{k-1}`` to be
odd, and the threshold (the first index from which consecutive increments of
``(2*pi*k)**gamma`` stay >= ``4*pi``) keeps them positive.

Targets ``(2*pi*k)**gamma`` are evaluated in 60-digit arithmetic, so the
parity choice is exact for every index this module can represent; the float
protocol (pow plus one Newton correction) would start misclassifying
candidates once the targets pass 2**53.  The integers ``p_k`` are kept as
Python ints (they overflow int64 for steep schedules long before ``k_max``),
with float64 shadow arrays for the vectorized evaluators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath as mp
import numpy as np

from .errors import ConfigError, RangeError

TWO_PI = 2.0 * np.pi

# 60 significant digits covers |p_k| up to ~1e21 (sigma near 1/2, k_max 4096)
# with ~39 digits to spare for the parity decision.
_BUILD_DPS = 60


def _increment_reaches_4pi(gamma: float, k: int) -> bool:
    """Whether (2 pi k)^gamma - (2 pi (k-1))^gamma >= 4 pi."""
    with mp.workdps(_BUILD_DPS):
        g = mp.mpf(gamma)
        lhs = (2 * mp.pi * k) ** g - (2 * mp.pi * (k - 1)) ** g
        return lhs >= 4 * mp.pi


def _find_k0(gamma: float) -> int:
    # Increments are strictly increasing in k for gamma > 1, so the property
    # "holds for all k > k0" is equivalent to "holds at k0 + 1".  Doubling
    # search for an upper bound, then bisect for the minimal threshold.
    hi = 1
    while not _increment_reaches_4pi(gamma, hi + 1):
        hi *= 2
        if hi > 1 << 40:
            raise ConfigError(f"threshold index diverges for gamma={gamma!r}")
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if _increment_reaches_4pi(gamma, mid + 1):
            hi = mid
        else:
            lo = mid + 1
    return max(1, lo)  # the slope-1 prefix must cover k = 1


@dataclass(frozen=True)
class SlopeSchedule:
    """Frozen result of :func:`build_schedule`.

    ``p[k]`` is ``h(2*pi*k)/(2*pi)`` as an exact int (``p[0] = 0``), ``n[k]``
    the slope on strip k (``n[0]`` unused).  Evaluators are float64 and
    vectorized; they refuse strips whose integer data no longer round-trips
    through float64 rather than silently losing the low digits.
    """

    gamma: float
    k0: int
    k_max: int
    p: tuple  # exact ints, length k_max + 1, p[0] = 0

    # float64 shadows, filled in __post_init__
    _pf: np.ndarray = field(repr=False, compare=False, default=None)
    _nf: np.ndarray = field(repr=False, compare=False, default=None)
    _k_exact: int = field(repr=False, compare=False, default=0)

    def __post_init__(self):
        pf = np.array([float(v) for v in self.p])
        nf = np.diff(pf)
        # first index whose float64 image is no longer exact
        k_exact = self.k_max
        for k in range(1, self.k_max + 1):
            if int(pf[k]) != self.p[k]:
                k_exact = k - 1
                break
        object.__setattr__(self, "_pf", pf)
        object.__setattr__(self, "_nf", nf)
        object.__setattr__(self, "_k_exact", k_exact)

    # -- derived sequences ------------------------------------------------

    @property
    def n(self) -> tuple:
        """Slopes n_k as exact ints, index 1..k_max (n[0] is a placeholder)."""
        return tuple(b - a for a, b in zip(self.p, self.p[1:]))

    def slope(self, k) -> np.ndarray:
        """Vectorized n_k lookup (float64), k in 1..k_max."""
        return self._nf[np.asarray(k, dtype=np.int64) - 1]

    def strip_of_x(self, x) -> np.ndarray:
        """Index k with 2 pi (k-1) <= x < 2 pi k (clamped to 1..k_max)."""
        k = np.floor(np.asarray(x, dtype=float) / TWO_PI).astype(np.int64) + 1
        return np.clip(k, 1, self.k_max)

    # -- evaluators --------------------------------------------------------

    def _check_range(self, k_needed: int, what: str):
        if k_needed > self.k_max:
            raise RangeError(
                f"{what} needs strip {k_needed} > k_max={self.k_max}; "
                f"rebuild the schedule with a larger k_max"
            )
        if k_needed > self._k_exact:
            raise RangeError(
                f"{what} needs strip {k_needed} where the integer data "
                f"exceeds float64 exactness (first inexact strip: "
                f"{self._k_exact + 1})"
            )

    def eval_h(self, x):
        """Piecewise-linear h(x) for 0 <= x <= 2 pi k_max."""
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise RangeError("h is defined on x >= 0")
        if np.any(x > TWO_PI * self.k_max * (1 + 1e-15)):
            raise RangeError(f"h evaluated past 2 pi k_max = {TWO_PI * self.k_max:.6g}")
        k = self.strip_of_x(x)
        self._check_range(int(k.max()), "eval_h")
        base = self._pf[k - 1] * TWO_PI
        out = base + self._nf[k - 1] * (x - TWO_PI * (k - 1))
        return out if out.ndim else float(out)

    def h_inverse(self, v):
        """Inverse of h: the x with h(x) = v, for 0 <= v <= h(2 pi k_max)."""
        v = np.asarray(v, dtype=float)
        if np.any(v < 0):
            raise RangeError("h_inverse is defined on v >= 0")
        vmax = self._pf[self.k_max] * TWO_PI
        if np.any(v > vmax * (1 + 1e-15)):
            raise RangeError(f"h_inverse evaluated past h(2 pi k_max) = {vmax:.6g}")
        # strip index: smallest k with 2 pi p[k] >= v
        k = np.searchsorted(self._pf * TWO_PI, v, side="left")
        k = np.clip(k, 1, self.k_max)
        self._check_range(int(k.max()), "h_inverse")
        base = self._pf[k - 1] * TWO_PI
        out = TWO_PI * (k - 1) + (v - base) / self._nf[k - 1]
        return out if out.ndim else float(out)

    def eval_g(self, x):
        """g(x) solving h(g(x)) = x**gamma."""
        x = np.asarray(x, dtype=float)
        return self.h_inverse(x**self.gamma)

    def eval_g_prime(self, x, side: str = "right"):
        """One-sided derivative of g: gamma x^(gamma-1) / n_k at the strip of g(x).

        ``side`` picks the strip when g(x) lands exactly on a breakpoint
        (2 pi k): "right" uses the upcoming slope n_{k+1}, "left" the
        previous one.  Off the breakpoints both sides agree.
        """
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        x = np.asarray(x, dtype=float)
        u = self.eval_g(x)
        k = np.searchsorted(TWO_PI * np.arange(self.k_max + 1), u, side=side)
        k = np.clip(k, 1, self.k_max)
        self._check_range(int(np.max(k)), "eval_g_prime")
        out = self.gamma * x ** (self.gamma - 1.0) / self._nf[k - 1]
        return out if out.ndim else float(out)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {"gamma": self.gamma, "k0": self.k0, "k_max": self.k_max,
             "p": list(self.p)},
            sort_keys=True, separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "SlopeSchedule":
        d = json.loads(text)
        sched = cls(gamma=float(d["gamma"]), k0=int(d["k0"]),
                    k_max=int(d["k_max"]), p=tuple(int(v) for v in d["p"]))
        sched.validate()
        return sched

    def validate(self):
        """Cheap structural invariants; raises ConfigError on violation."""
        if len(self.p) != self.k_max + 1 or self.p[0] != 0:
            raise ConfigError("p must have k_max+1 entries starting at 0")
        for k in range(1, self.k_max + 1):
            nk = self.p[k] - self.p[k - 1]
            if nk <= 0 or nk % 2 == 0:
                raise ConfigError(f"slope n_{k} = {nk} is not an odd positive integer")
        if self.p[1] != 1:
            raise ConfigError("n_1 must be 1")


def _extend_by_targets(p: list, gamma: float, k_max: int):
    """Append p_k for k = len(p) .. k_max by the opposite-parity rule."""
    with mp.workdps(_BUILD_DPS):
        g = mp.mpf(gamma)
        for k in range(len(p), k_max + 1):
            target = (2 * mp.pi * k) ** g / (2 * mp.pi)
            lo = int(mp.floor(target))
            # candidates of opposite parity to p[k-1] bracketing target
            want = 1 - (p[k - 1] & 1)
            c_lo = lo if (lo & 1) == want else lo - 1
            c_hi = c_lo + 2
            # strict comparison in exact arithmetic; tie -> larger
            if abs(target - c_lo) < abs(target - c_hi):
                pk = c_lo
            else:
                pk = c_hi
            p.append(pk)


@lru_cache(maxsize=32)
def build_schedule(gamma: float, k_max: int = 4096) -> SlopeSchedule:
    """Construct the schedule for exponent ``gamma`` up to ``k_max`` strips."""
    if not gamma > 1.0:
        raise ConfigError(f"gamma must exceed 1, got {gamma!r}")
    if k_max < 1:
        raise ConfigError(f"k_max must be positive, got {k_max!r}")

    k0 = _find_k0(gamma)
    p = [0] + list(range(1, min(k0, k_max) + 1))  # slope-1 prefix
    _extend_by_targets(p, gamma, k_max)

    sched = SlopeSchedule(gamma=float(gamma), k0=k0, k_max=k_max, p=tuple(p))
    sched.validate()
    return sched


def prefix_for_exact_power(gamma: float) -> int:
    """Unit-slope prefix length that makes h the identity on [0, (2*pi)^gamma].

    With that many leading slope-1 strips the axis profile satisfies
    g(y) = y**gamma exactly for every y <= 2*pi, which is what the
    half-turn gluing variant needs to agree with the base map low in the
    plane.  Grows like (2*pi)**(gamma-1), so it is only practical for
    moderate gamma.
    """
    if not gamma > 1.0:
        raise ConfigError(f"gamma must exceed 1, got {gamma!r}")
    with mp.workdps(_BUILD_DPS):
        need = int(mp.ceil((2 * mp.pi) ** (mp.mpf(gamma) - 1)))
    return max(need, _find_k0(gamma))


@lru_cache(maxsize=32)
def build_schedule_with_prefix(gamma: float, prefix: int,
                               k_max: int = 4096) -> SlopeSchedule:
    """Schedule forced to start with ``prefix`` unit slopes.

    Past the prefix the usual opposite-parity targets resume.  The prefix
    must be at least the canonical threshold (shorter prefixes would not
    guarantee positive slopes at the resume point) and short enough to
    leave room: prefix >= k_max is rejected.
    """
    if not gamma > 1.0:
        raise ConfigError(f"gamma must exceed 1, got {gamma!r}")
    if not 1 <= prefix < k_max:
        raise ConfigError(f"prefix must lie in [1, k_max), got {prefix!r}")
    k0 = _find_k0(gamma)
    if prefix < k0:
        raise ConfigError(
            f"prefix {prefix} is below the threshold {k0} for gamma={gamma}"
        )
    p = [0] + list(range(1, prefix + 1))
    _extend_by_targets(p, gamma, k_max)
    sched = SlopeSchedule(gamma=float(gamma), k0=prefix, k_max=k_max, p=tuple(p))
    sched.validate()
    return sched
