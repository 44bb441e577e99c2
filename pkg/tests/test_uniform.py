"""Checks for the uniform asymptotic evaluator of log I(W, nn) at large degree.

The frozen rows were produced by an arbitrary-precision confluent
hypergeometric oracle (scripts/dev_oracle_uniform.py check mode) and verified
stable between 80 and 140 digits.  Imaginary parts are compared mod 2*pi:
every consumer exponentiates, and the assembled branch can differ from the
principal one by a multiple of 2*pi*i.
"""

import numpy as np
import pytest

from qcglue._quad import core_integral_complex
from qcglue._uniform import uniform_log_core_integral

TWO_PI = 2.0 * np.pi


def dlog(got, ref):
    d = got - ref
    dim = (d.imag + np.pi) % TWO_PI - np.pi
    return np.hypot(d.real, dim)


# (W, nn, log I(W, nn)) spanning both Taylor lanes, all three tail branches,
# the eta ~ 0 seam, and the widest validated argument.
FROZEN = [
    (complex(-11.48, 0.0), 40, complex(-3.3974452395160135, 0.0)),
    (complex(-41.0, -6.1499999999999995), 40, complex(-1.724047067969223, 0.7149821073807691)),
    (complex(-43.050000000000004, 0.0), 40, complex(-1.3276155252462805, 0.0)),
    (complex(-10.0573, -39.745400000000004), 40, complex(-3.902760634284975, 0.9089998753860262)),
    (complex(-75.5, -75.5), 150, complex(-4.664183709263694, 0.7785557828372452)),
    (complex(-164.59, 0.0), 150, complex(-1.157442064732413, 0.0)),
    (complex(-253.95369999999997, -118.4183), 1000, complex(-6.6288931553513795, 0.1568743119829835)),
    (complex(-303.50320000000005, -1058.4574), 1000, complex(-7.1442074088177705, 0.9882238310747762)),
    (complex(-1002.0009999999999, 0.0), 1000, complex(-3.1949244797272636, 0.0)),
    (complex(-14000.28, 0.0), 50000, complex(-10.491305018899615, 0.0)),
    (complex(-50226.004499999995, -885.0177), 50000, complex(-6.765223807619001, 1.8663098352334015)),
    (complex(-13000.26, 45000.9), 50000, complex(-10.97264375264882, -0.882650166029691)),
]


@pytest.mark.parametrize("W,nn,ref", FROZEN)
def test_frozen_rows(W, nn, ref):
    got = uniform_log_core_integral(W, nn)
    # measured worst case over the validation grids is 5.4e-10 at nn = 40
    assert dlog(got, ref) < 3e-9


def test_matches_quadrature_in_overlap_band():
    # Both evaluators are valid on the band Re W = -0.26 nn, and they share
    # no code: one integrates, the other expands.  Agreement here is the
    # in-package cross-check.
    for nn in (40, 300, 2000):
        for t in (0.0, 0.3, 0.9):
            W = complex(-0.26 * nn, -t * nn)
            ref = np.log(complex(core_integral_complex(W, nn)))
            got = uniform_log_core_integral(W, nn)
            assert dlog(got, ref) < 2e-9, (nn, t)


def test_continuous_across_taylor_crossover():
    # lam = 0.52 resolves through the Taylor tables (|eta| ~ 0.59) and
    # lam = 0.511 through the closed coefficient forms (|eta| ~ 0.60+);
    # both must sit on the same smooth curve.
    mp = pytest.importorskip("mpmath")

    def oracle(W, nn):
        with mp.workdps(60):
            v = mp.log(mp.hyp1f1(1, nn + 2, -W) / (nn + 1))
        return complex(v)

    nn = 300
    a = nn + 1
    for lam in (0.52, 0.511, complex(0.52, 0.01), complex(0.511, 0.01)):
        W = -a * complex(lam)
        got = uniform_log_core_integral(W, nn)
        assert dlog(got, oracle(mp.mpc(W.real, W.imag), nn)) < 2e-10, lam


def test_batch_matches_scalar():
    Ws = np.array([w for w, _, _ in FROZEN[:4]])
    got = uniform_log_core_integral(Ws, 40)
    for i, w in enumerate(Ws):
        assert got[i] == uniform_log_core_integral(w, 40)


def test_random_spot_checks_against_mp():
    mp = pytest.importorskip("mpmath")
    rng = np.random.default_rng(7)
    for _ in range(6):
        nn = int(rng.integers(40, 1500))
        a = nn + 1
        r = rng.uniform(0.3, 1.08)
        th_max = min(np.arccos(min(0.25 / r, 1.0)), np.deg2rad(75.0))
        th = rng.uniform(-th_max, th_max)
        lam = r * np.exp(1j * th)
        W = -a * lam
        with mp.workdps(70):
            ref = complex(mp.log(mp.hyp1f1(1, nn + 2, mp.mpc(-W.real, -W.imag)) / (nn + 1)))
        assert dlog(uniform_log_core_integral(W, nn), ref) < 3e-9, (nn, lam)
