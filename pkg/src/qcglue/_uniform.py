"""Uniform asymptotic branch of the core integral, deep left half-plane.

For Re W < -0.27 nn with |W| < 1.1 (nn + 1) the s-integral is a lower
incomplete gamma in disguise:

    I(W, nn) = exp(-W) lgamma_int(a, z) / z**a,    a = nn + 1,  z = -W,

and the regularized ratio P(a, z) is evaluated through the classical
endpoint-to-saddle change of variables w**2/2 = tau - 1 - log tau.  With
lam = z/a and eta the image of lam under that map,

    P(a, z) = erfc(-u)/2 - exp(-u u) T(a, eta) / sqrt(2 pi a),
    u = eta sqrt(a/2),
    T = (k0 + k1/a + k2/a**2 + k3/a**3) / gammastar(a),

where the k_j are the Bleistein coefficient functions of the map and
gammastar(a) = Gamma(a) sqrt(a/(2 pi)) a**-a e**a.  The k_j closed forms
and Taylor tables below are generated by scripts/dev_oracle_uniform.py,
which also proves the normalization: the endpoint constants of the
integration-by-parts ladder reproduce the Stirling series coefficients
{1, 1/12, 1/288, -139/51840} exactly.

Branch policy.  The k_j have removable singularities at eta = 0 and their
closed forms lose ~10 digits to cancellation there, so |eta| < 0.6 uses
the Taylor tables (series radius 2 sqrt(pi), still fully converged at
0.6).  log P itself is assembled three ways depending on Re u so nothing
overflows: direct scaled erfc for Re u <= 0, a reflected one while
exp(u u) is representable, and a log1p form beyond.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln, wofz

from ._quad import log1p_any

# ---- generated by scripts/dev_oracle_uniform.py (exact rationals) ----

_K0_TAYLOR = np.array([-0.3333333333333333, 0.08333333333333333, -0.014814814814814815, 0.0011574074074074073, 0.0003527336860670194, -0.0001787551440329218, 3.919263178522438e-05, -2.185448510679992e-06, -1.85406221071516e-06, 8.296711340953087e-07, -1.7665952736826078e-07, 6.707853543401498e-09, 1.0261809784240309e-08, -4.382036018453353e-09, 9.14769958223679e-10, -2.5514193994946248e-11, -5.830772132550426e-11, 2.4361948020667415e-11, -5.0276692801141755e-12, 1.1004392031956135e-13])
_K1_TAYLOR = np.array([-0.02962962962962963, 0.003472222222222222, 0.0014109347442680777, -0.000893775720164609, 0.00023515579071134627, -1.5298139574759944e-05, -1.483249768572128e-05, 7.467040206857778e-06, -1.766595273682608e-06, 7.378638897741648e-08, 1.231417174108837e-07, -5.696646823989359e-08, 1.2806779415131507e-08, -3.8271290992419376e-10, -9.32923541208068e-10, 4.141531163513461e-10, -9.049804704205516e-11, 2.0908344860716655e-12])
_K2_TAYLOR = np.array([0.0028218694885361554, -0.0026813271604938273, 0.0009406231628453851, -7.649069787379973e-05, -8.899498611432768e-05, 5.226928144800444e-05, -1.4132762189460864e-05, 6.640775007967483e-07, 1.231417174108837e-06, -6.266311506388295e-07, 1.536813529815781e-07, -4.975267829014519e-09, -1.3060929576912952e-08, 6.212296745270191e-09, -1.4479687526728825e-09, 3.554418626321831e-11])
_K3_TAYLOR = np.array([0.0018812463256907702, -0.00022947209362139917, -0.0003559799444573107, 0.0002613464072400222, -8.479657313676519e-05, 4.6485425055772385e-06, 9.851337392870696e-06, -5.639680355749465e-06, 1.5368135298157807e-06, -5.47279461191597e-08, -1.5673115492295543e-07, 8.075985768851248e-08, -2.0271562537420356e-08, 5.331627939482747e-10])
_OMEGA_TAYLOR = np.array([1.0, -0.6666666666666666, 0.5, -0.4, 0.3333333333333333, -0.2857142857142857, 0.25, -0.2222222222222222, 0.2, -0.18181818181818182, 0.16666666666666666, -0.15384615384615385, 0.14285714285714285, -0.13333333333333333, 0.125, -0.11764705882352941, 0.1111111111111111, -0.10526315789473684, 0.1, -0.09523809523809523])

_K0_DESC = _K0_TAYLOR[::-1].copy()
_K1_DESC = _K1_TAYLOR[::-1].copy()
_K2_DESC = _K2_TAYLOR[::-1].copy()
_K3_DESC = _K3_TAYLOR[::-1].copy()
_OMEGA_DESC = _OMEGA_TAYLOR[::-1].copy()


def _k0_closed(lam, eta):
    return (eta - lam + 1) / (eta * (lam - 1))


def _k1_closed(lam, eta):
    return (eta**2 + lam * (eta**2 * (-12 * eta - 3) + lam * (3 * eta**2 + lam * (12 - eta**2) - 36) + 36) - 12) / (12 * eta**3 * (lam - 1)**3)


def _k2_closed(lam, eta):
    return (eta**2 * (eta**2 - 24) + lam * (eta**2 * (eta**2 * (288 * eta - 5) + 120) + lam * (eta**2 * (eta**2 * (576 * eta + 10) - 240) + lam * (eta**2 * (240 - 10 * eta**2) + lam * (eta**2 * (5 * eta**2 - 120) + lam * (eta**2 * (24 - eta**2) - 864) + 4320) - 8640) + 8640) - 4320) + 864) / (288 * eta**5 * (lam - 1)**5)


def _k3_closed(lam, eta):
    return (eta**2 * (eta**2 * (-139 * eta**2 - 180) + 12960) + lam * (eta**2 * (eta**2 * (eta**2 * (973 - 51840 * eta) + 1260) - 90720) + lam * (eta**2 * (eta**2 * (eta**2 * (-414720 * eta - 2919) - 3780) + 272160) + lam * (eta**2 * (eta**2 * (eta**2 * (4865 - 311040 * eta) + 6300) - 453600) + lam * (eta**2 * (eta**2 * (-4865 * eta**2 - 6300) + 453600) + lam * (eta**2 * (eta**2 * (2919 * eta**2 + 3780) - 272160) + lam * (eta**2 * (eta**2 * (-973 * eta**2 - 1260) + 90720) + lam * (eta**2 * (eta**2 * (139 * eta**2 + 180) - 12960) + 777600) - 5443200) + 16329600) - 27216000) + 27216000) - 16329600) + 5443200) - 777600) / (51840 * eta**7 * (lam - 1)**7)


_ETA_SMALL = 0.6
_T_SMALL = 0.25


def _erfcx(z):
    """Scaled complementary error function for Re z >= 0."""
    return wofz(1j * z)


def _gammastar(a: float) -> float:
    # Stirling series; next term is ~2.3e-4 / a**4, invisible for a >= 300
    return 1.0 + 1.0 / (12.0 * a) + 1.0 / (288.0 * a * a) - 139.0 / (51840.0 * a**3)


def uniform_log_core_integral(W, nn):
    """log I(W, nn) for complex W with Re W < 0 and |W| < 1.1 (nn + 1).

    Accuracy is O(a**-4) relative with a = nn + 1; the dispatcher only
    routes here for large nn (see test_gm_complex for the measured floor).
    Vectorized over W; nn is a scalar degree.
    """
    W = np.asarray(W, dtype=complex)
    scalar = W.ndim == 0
    Wf = np.atleast_1d(W)
    a = float(nn) + 1.0
    z = -Wf
    lam = z / a
    t = lam - 1.0
    with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
        om_closed = 2.0 * (t - np.log(lam)) / (t * t)
        om_series = np.polyval(_OMEGA_DESC, t)
        omega = np.where(np.abs(t) < _T_SMALL, om_series, om_closed)
        eta = t * np.sqrt(omega)
        u = eta * np.sqrt(0.5 * a)

        T = np.empty_like(eta)
        small = np.abs(eta) < _ETA_SMALL
        if small.any():
            e = eta[small]
            T[small] = (np.polyval(_K0_DESC, e)
                        + np.polyval(_K1_DESC, e) / a
                        + np.polyval(_K2_DESC, e) / (a * a)
                        + np.polyval(_K3_DESC, e) / (a**3))
        if (~small).any():
            lm, e = lam[~small], eta[~small]
            T[~small] = (_k0_closed(lm, e)
                         + _k1_closed(lm, e) / a
                         + _k2_closed(lm, e) / (a * a)
                         + _k3_closed(lm, e) / (a**3))
        T = T / (_gammastar(a) * np.sqrt(2.0 * np.pi * a))

        logP = np.empty_like(eta)
        u2 = u * u
        m1 = u.real <= 0.0
        m3 = ~m1 & (u2.real > 40.0)
        m2 = ~m1 & ~m3
        if m1.any():
            uu = u[m1]
            logP[m1] = -uu * uu + np.log(0.5 * _erfcx(-uu) - T[m1])
        if m2.any():
            uu = u[m2]
            logP[m2] = -uu * uu + np.log(np.exp(uu * uu) - 0.5 * _erfcx(uu) - T[m2])
        if m3.any():
            uu = u[m3]
            logP[m3] = log1p_any(-np.exp(-uu * uu) * (0.5 * _erfcx(uu) + T[m3]))

        out = -Wf + gammaln(a) - a * np.log(z) + logP
    return complex(out[0]) if scalar else out
