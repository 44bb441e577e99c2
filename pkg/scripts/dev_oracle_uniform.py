"""Derivation and validation for the uniform asymptotic core-integral branch.

Dev tool, not part of the package.  Two modes:

  python3 scripts/dev_oracle_uniform.py derive
      Symbolically derive the saddle-to-endpoint change of variables for

          I(W, nn) = exp(-W) * lower_gamma(a, z) / z**a,   a = nn + 1, z = -W,

      via the classical mapping w**2/2 = tau - 1 - log(tau), lam = z/a,
      eta = w(lam).  Produces, as ready-to-paste python source:
        * closed forms k0..k3 as rational functions of (lam, eta),
        * Taylor tables of k0..k3 in eta (exact rationals -> floats),
        * the mapping series omega(t) with t = lam - 1.
      Asserts the endpoint constants G_j(0) against the Stirling series
      gamma*_j = {1, 1/12, 1/288, -139/51840} so a wrong reversion dies
      here and not in the numerics.

  python3 scripts/dev_oracle_uniform.py check
      Import qcglue._uniform (after the derived constants are frozen
      there) and sweep the zone Re lam >= 0.245, |lam| <= 1.2 against an
      mpmath oracle, printing the worst relative error per degree.
"""

from __future__ import annotations

import sys

import mpmath as mp
import numpy as np

NORD = 22  # series order for the reversion; plenty for |eta| < 0.25 tables


# ---------------------------------------------------------------- derivation


def derive():
    import sympy as sp
    from sympy.polys.ring_series import (
        rs_diff,
        rs_log,
        rs_mul,
        rs_nth_root,
        rs_series_inversion,
        rs_series_reversion,
    )

    lam, eta = sp.symbols("lam eta")
    R, t, w = sp.ring("t, w", sp.QQ)

    # omega(t) = 2 (t - log(1+t)) / t**2, unit constant term
    log1pt = rs_log(1 + t, t, NORD + 3)
    omega = 2 * (t - log1pt)
    omega = R({(m[0] - 2, m[1]): c for m, c in omega.items()})  # divide by t**2
    # w(t) = t sqrt(omega); revert to t(w) = tau - 1
    w_of_t = rs_mul(t, rs_nth_root(omega, 2, t, NORD + 1), t, NORD + 2)
    t_of_w = rs_series_reversion(w_of_t, t, NORD + 1, w)
    head = [t_of_w.coeff(w**j) for j in range(1, 5)]
    print("# tau(w) - 1 series head:", head)
    assert head[0] == 1 and head[1] == sp.Rational(1, 3)
    assert head[2] == sp.Rational(1, 36) and head[3] == sp.Rational(-1, 270)

    # G0(w) = w/(tau-1); endpoint sequence G_{j+1} = d/dw (G_j - G_j(0))/w
    stirling = [sp.QQ(1), sp.QQ(1, 12), sp.QQ(1, 288), sp.QQ(-139, 51840)]
    tw_over_w = R({(m[0], m[1] - 1): c for m, c in t_of_w.items()})
    Gser = rs_series_inversion(tw_over_w, w, NORD - 1)
    taylor_tables = []
    for j in range(4):
        g0 = Gser.get((0, 0), sp.QQ(0))
        assert g0 == stirling[j], (j, g0, stirling[j])
        kser = R({(m[0], m[1] - 1): c for m, c in Gser.items() if m != (0, 0)})
        # each level loses one order to the division and one to the derivative
        coeffs = [kser.get((0, i), sp.QQ(0)) for i in range(NORD - 2 - 2 * j)]
        taylor_tables.append(coeffs)
        Gser = rs_diff(kser, w)
    print("# endpoint constants match gamma*_0..3")

    # -- closed forms at a generic point: tau' = w tau/(tau-1), all rational
    wv, tauv = sp.symbols("wv tauv")
    dtau = wv * tauv / (tauv - 1)

    def ddw(expr):
        return sp.diff(expr, wv) + sp.diff(expr, tauv) * dtau

    G = wv / (tauv - 1)
    closed = []
    for j in range(4):
        kj = sp.cancel(sp.together((G - sp.Rational(str(stirling[j]))) / wv))
        closed.append(kj)
        G = sp.cancel(sp.together(ddw(kj)))

    # print as python, at (wv, tauv) -> (eta, lam)
    print("\n# ---- closed forms k0..k3(lam, eta) ----")
    closed_fns = []
    for j, kj in enumerate(closed):
        expr = kj.subs({tauv: lam, wv: eta})
        num, den = sp.fraction(sp.cancel(expr))
        num = sp.horner(sp.expand(num), wrt=lam)
        den = sp.factor(den)
        closed_fns.append(sp.lambdify((lam, eta), num / den, "numpy"))
        print(f"def _k{j}_closed(lam, eta):")
        print(f"    return ({sp.pycode(num)}) / ({sp.pycode(den)})")

    print("\n# ---- eta-Taylor tables (floats, ascending) ----")
    tay = []
    for j, coeffs in enumerate(taylor_tables):
        fl = [float(sp.Rational(str(x))) for x in coeffs]
        tay.append(fl)
        vals = ", ".join(repr(v) for v in fl)
        print(f"_K{j}_TAYLOR = np.array([{vals}])")

    # omega(t) series (t = lam - 1), for computing eta near lam = 1
    ofl = [float(sp.Rational(str(omega.get((i, 0), 0)))) for i in range(NORD - 2)]
    ovals = ", ".join(repr(v) for v in ofl)
    print(f"\n_OMEGA_TAYLOR = np.array([{ovals}])")

    # numeric cross-checks: closed forms vs Taylor tables at |eta| = 0.2,
    # and closed k0 against its hand form at a generic complex point
    lam0 = complex(mp.mpc("0.31", "0.22"))
    q0 = complex(mp.log(mp.mpc(lam0)))
    eta0 = (lam0 - 1) * complex(mp.sqrt(2 * (lam0 - 1 - q0) / (lam0 - 1) ** 2))
    k0_closed = complex(closed_fns[0](lam0, eta0))
    k0_direct = 1 / (lam0 - 1) - 1 / eta0
    assert abs(k0_closed - k0_direct) < 1e-13 * abs(k0_direct), (k0_closed, k0_direct)
    # at the crossover ring the closed forms lose digits to cancellation
    # (the k_j have removable eta = 0 singularities), so compare the full
    # 1/a-weighted sum, which is what the evaluator actually uses
    t_coeffs = [0.0] + [float(sp.Rational(str(t_of_w.get((0, i), sp.QQ(0)))))
                        for i in range(1, NORD + 1)]
    for phase in (0.0, 0.8, 2.4, -2.0):
        e = 0.6 * np.exp(1j * phase)
        lamg = 1.0 + np.polyval(list(reversed(t_coeffs)), e)
        for a in (300.0, 1000.0):
            via_closed = sum(closed_fns[j](lamg, e) / a**j for j in range(4))
            via_taylor = sum(np.polyval(list(reversed(tay[j])), e) / a**j
                             for j in range(4))
            rel = abs(via_closed - via_taylor) / abs(via_taylor)
            assert rel < 1e-10, (phase, a, via_closed, via_taylor)
    print("\n# closed forms and Taylor tables agree on the |eta| = 0.6 ring")


# ---------------------------------------------------------------- validation


def oracle_log_I(W, nn, dps=80):
    """log I(W, nn) from the confluent series at high precision."""
    with mp.workdps(dps):
        val = mp.hyp1f1(1, nn + 2, -W) / (nn + 1)
        return mp.log(val)


def check():
    sys.path.insert(0, "src")
    from qcglue._uniform import uniform_log_core_integral

    rng = np.random.default_rng(7)
    moduli = [0.28, 0.5, 0.8, 1.0, 1.09]
    args_deg = [0.0, 20.0, -20.0, 45.0, -45.0, 70.0, -70.0, 75.8, -75.8]
    rings = [0.15, 0.2, 0.25]  # |lam - 1| rings across the Taylor crossover

    for nn in (300, 500, 1000, 5000, 50000):
        a = nn + 1
        lams = []
        for r in moduli:
            for d in args_deg:
                lam = r * np.exp(1j * np.radians(d))
                if lam.real >= 0.245:
                    lams.append(lam)
        for r in rings:
            for d in range(0, 360, 45):
                lams.append(1.0 + r * np.exp(1j * np.radians(d)))
        lams.append(1.0 + 1e-3)  # eta ~ 0
        lams.append(1.0 - 1e-3)
        lams.append(1.0 + 1e-3j)

        worst = 0.0
        worst_lam = None
        for lam in lams:
            W = -a * complex(lam)
            got = complex(uniform_log_core_integral(W, nn))
            ref = oracle_log_I(mp.mpc(W.real, W.imag), nn)
            d = mp.mpc(got.real, got.imag) - ref
            # the assembled log differs from the principal log by 2 pi i k;
            # every consumer exponentiates, so compare modulo that
            dim = (float(mp.im(d)) + np.pi) % (2 * np.pi) - np.pi
            err = float(mp.sqrt(mp.re(d) ** 2 + dim**2))
            if err > worst:
                worst, worst_lam = err, lam
        print(f"nn={nn:6d}  points={len(lams):3d}  worst |dlog| = {float(worst):.3e}"
              f"  at lam = {worst_lam:.4f}")


if __name__ == "__main__":
    mode = sys.argv[1] if len(sys.argv) > 1 else "derive"
    if mode == "derive":
        derive()
    elif mode == "check":
        check()
    else:
        raise SystemExit(f"unknown mode {mode!r}")
