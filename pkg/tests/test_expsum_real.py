"""Real-axis tests for the truncated-exponential evaluators.

Reference values were produced by scripts/dev_oracle_expsum.py, which
computes every number by two independent high-precision routes (a
confluent-hypergeometric closed form and direct summation / direct
root-finding on the alternating partial sum) and prints them only when
the routes agree far below the tolerances used here.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcglue.errors import ConfigError, DomainError, RangeError
from qcglue.expsum import (
    R0,
    build_phi_map,
    log_gm_minus_1,
    log_gm_minus_1_prime,
    make_partial_sum,
    phi_eval,
    phi_inverse,
    phi_prime,
    remainder_R,
)

LOG_GM_TABLE = [
    (1, -30.0, -91.791759469227985),
    (1, -17.5, -54.291759450395561),
    (1, -8.0, -25.791507870147133),
    (1, -3.0, -10.754372819864737),
    (1, -1.0, -4.5133640746814147),
    (1, 0.0, -1.0240404487639998),
    (1, 0.5, 0.99118058367357826),
    (1, 1.5, 6.361118257491076),
    (1, 3.0, 25.292992928264687),
    (1, 7.0, 1109.9381874849799),
    (1, 13.0, 442438.69885721928),
    (1, 21.0, 1318815775.7900675),
    (1, 30.0, 10686474581583.769),
    (5, -30.0, -347.5023078458738),
    (5, -17.5, -210.00230782285639),
    (5, -8.0, -105.50200033813435),
    (5, -3.0, -50.456662431573282),
    (5, -1.0, -28.164693132134841),
    (5, 0.0, -16.582815576254943),
    (5, 0.5, -10.483485986007575),
    (5, 1.5, 3.1559400003581206),
    (5, 3.0, 34.565585409248477),
    (5, 7.0, 1151.5196601808121),
    (5, 13.0, 442528.28757374434),
    (5, 21.0, 1318815929.3788021),
    (5, 30.0, 10686474581809.358),
    (12, -30.0, -808.00360522298043),
    (12, -17.5, -495.5036051988363),
    (12, -8.0, -258.00328266268431),
    (12, -3.0, -132.95573134612358),
    (12, -1.0, -82.649783048993119),
    (12, 0.0, -57.041396621092076),
    (12, 0.5, -43.91649968763507),
    (12, 1.5, -16.181762180355604),
    (12, 3.0, 36.502149272952498),
    (12, 7.0, 1209.8267607614453),
    (12, 13.0, 442670.60722527583),
    (12, 21.0, 1318816183.6984853),
    (12, 30.0, 10686474582189.677),
    (50, -30.0, -3398.3544960724047),
    (50, -17.5, -2135.8544960475409),
    (50, -8.0, -1176.3541638986208),
    (50, -3.0, -671.30519699577498),
    (50, -1.0, -468.99021692941764),
    (50, 0.0, -367.36425316283164),
    (50, 0.5, -316.22181194829402),
    (50, 1.5, -212.41582445144874),
    (50, 3.0, -45.448972549031227),
    (50, 7.0, 1432.8064457412629),
    (50, 13.0, 443349.65240735703),
    (50, 21.0, 1318817470.7438391),
    (50, 30.0, 10686474584160.723),
    (200, -30.0, -14036.494659410548),
    (200, -17.5, -9023.9946593855004),
    (200, -8.0, -5214.4943247824039),
    (200, -3.0, -3209.4449961829783),
    (200, -1.0, -2407.127694675969),
    (200, 0.0, -2005.4971438991546),
    (200, 0.5, -1804.3500310905487),
    (200, 1.5, -1400.5240574359047),
    (200, 3.0, -783.45788400796328),
    (200, 7.0, 1895.8213084043587),
    (200, 13.0, 445612.89040721194),
    (200, 21.0, 1318822133.9825164),
    (200, 30.0, 10686474591523.961),
]

SM_TABLE = [
    (0, -0.36651292058166433),
    (1, 0.26242214171456081),
    (5, 1.2864134211646742),
    (12, 2.0268591955462099),
    (50, 3.3635056176086403),
    (200, 4.7236102798733427),
    (1000, 6.3248784588241396),
]

R_TABLE = [
    (25, 1e-06, 1.5384614233179988e-9),
    (25, 0.1, 0.00015270097037353169),
    (25, 10.0, 0.0080929082236228155),
    (25, 1000.0, 0.00095315427328911882),
    (25, 100000.0, 9.9951517038191515e-6),
    (101, 1e-06, 9.706852849291305e-11),
    (101, 0.1, 9.6879850017480814e-6),
    (101, 10.0, 0.00080597665148706084),
    (101, 1000.0, 0.00082589981459495273),
    (101, 100000.0, 9.9799798610743188e-6),
    (1001, 1e-06, 9.9700698304239025e-13),
    (1001, 0.1, 9.9680816006554961e-8),
    (1001, 10.0, 9.7741483733660539e-6),
    (1001, 1000.0, 0.00024978128649062454),
    (1001, 100000.0, 9.802909562378519e-6),
]


class TestLogGm:
    @pytest.mark.parametrize(("m", "x", "ref"), LOG_GM_TABLE)
    def test_reference_values(self, m, x, ref):
        ps = make_partial_sum(m)
        got = log_gm_minus_1(ps, x)
        assert abs(got - ref) <= 5e-13 * max(1.0, abs(ref))

    def test_worked_value_at_zero(self):
        ps = make_partial_sum(0)
        assert abs(log_gm_minus_1(ps, 0.0) - math.log(math.e - 1)) < 1e-14

    def test_vanishes_at_s_m(self):
        for m in (0, 1, 12, 200):
            ps = make_partial_sum(m)
            assert abs(log_gm_minus_1(ps, ps.s_m)) <= max(1e-11, 16 * ps.n * 2.3e-16)

    def test_total_on_the_real_line(self):
        ps = make_partial_sum(3)
        assert log_gm_minus_1(ps, 710.0) == math.inf
        assert log_gm_minus_1(ps, 1e308) == math.inf
        assert log_gm_minus_1(ps, -1e308) == -math.inf
        arr = log_gm_minus_1(ps, np.array([-1e300, 0.0, 1e300]))
        assert arr[0] < -1e299 and np.isfinite(arr[1]) and arr[2] == math.inf

    def test_derivative_matches_finite_differences(self):
        ps = make_partial_sum(5)
        xs = np.linspace(-10, 10, 41)
        h = 1e-6
        fd = (log_gm_minus_1(ps, xs + h) - log_gm_minus_1(ps, xs - h)) / (2 * h)
        an = log_gm_minus_1_prime(ps, xs)
        assert np.max(np.abs(fd - an) / an) < 1e-8

    def test_derivative_dominates_both_scales(self):
        # 1/I > e^x and 1/I > n hold for every x, since I < min(1/y, 1/n);
        # the inequalities collapse to equality in double at the far ends
        for m in (0, 2, 24):
            ps = make_partial_sum(m)
            xs = np.linspace(-40, 100, 57)
            pr = log_gm_minus_1_prime(ps, xs)
            assert np.all(pr >= np.exp(np.minimum(xs, 700)))
            assert np.all(pr >= ps.n)
            mid = log_gm_minus_1_prime(ps, 1.0)
            assert mid > math.e and mid > ps.n


class TestNormalizationShift:
    def test_drift_root_constant(self):
        assert abs(math.exp(R0) + R0 + 1.0) < 1e-14

    @pytest.mark.parametrize(("m", "ref"), SM_TABLE)
    def test_reference_values(self, m, ref):
        assert abs(make_partial_sum(m).s_m - ref) <= 5e-13

    @pytest.mark.parametrize("m", [1, 5, 12, 50, 200, 1000])
    def test_drift_bound(self, m):
        ps = make_partial_sum(m)
        n = ps.n
        drift = ps.s_m - math.log(n) - R0 + math.log(n) / (2 * R0 * n)
        assert n * abs(drift) <= 5.0

    def test_monotone_in_m(self):
        vals = [make_partial_sum(m).s_m for m in range(40)]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestRemainder:
    @pytest.mark.parametrize(("n", "y", "ref"), R_TABLE)
    def test_reference_values(self, n, y, ref):
        got = remainder_R(n, y)
        assert abs(got - ref) <= max(1e-11 * abs(ref), 5e-14)

    def test_zero_at_origin(self):
        assert remainder_R(25, 0.0) == 0.0

    def test_worked_bounds(self):
        assert abs(remainder_R(25, 10.0)) <= 0.27429
        assert abs(remainder_R(101, 1000.0)) <= 0.21584

    def test_small_y_expansion(self):
        # R ~ y / (n (n + 1)) as y -> 0
        for n in (25, 1001):
            y = 1e-6
            assert abs(remainder_R(n, y) / (y / (n * (n + 1.0))) - 1.0) < 1e-3

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            remainder_R(24, 1.0)
        with pytest.raises(DomainError):
            remainder_R(23, 1.0)
        with pytest.raises(DomainError):
            remainder_R(25, -0.5)

    @settings(max_examples=150, deadline=None)
    @given(
        mm=st.integers(min_value=12, max_value=2500),
        y=st.floats(min_value=0.0, max_value=1e7),
    )
    def test_scaled_bound(self, mm, y):
        # the 1e-12 slack absorbs the quadrature's absolute noise floor,
        # visible only where the bound itself is below ~1e-12
        n = 2 * mm + 1
        assert abs(remainder_R(n, y)) <= 24.0 * y / (n * (n + y)) + 1e-12


class TestPhiMap:
    def test_worked_first_pair(self):
        pm = build_phi_map(0, 1)
        assert abs(pm.q - math.log(2) / 2) < 1e-14
        assert abs(pm.p - math.log(2)) < 1e-12
        assert pm.slope_ratio == 3.0
        assert abs(phi_eval(pm, pm.p) - pm.p) < 1e-12

    def test_identity_when_levels_match(self):
        pm = build_phi_map(3, 3)
        assert pm.q == pm.p == pm.lower.s_m
        assert phi_eval(pm, 2.0) == 2.0
        assert phi_inverse(pm, 2.0) == 2.0
        assert phi_prime(pm, 2.0) == 1.0

    def test_rejects_bad_levels(self):
        with pytest.raises(ConfigError):
            build_phi_map(-1, 3)
        with pytest.raises(ConfigError):
            build_phi_map(3, -1)

    def test_descending_pair_swaps_roles(self):
        # non-monotone schedules need maps between a higher and a lower
        # level; the solve is symmetric in the pair
        pm = build_phi_map(2, 1)
        rev = build_phi_map(1, 2)
        assert pm.q == rev.q and pm.p == rev.p
        x = 3.7
        assert phi_eval(rev, phi_eval(pm, x)) == pytest.approx(x, rel=1e-13)

    def test_rejects_overflowing_argument(self):
        pm = build_phi_map(0, 1)
        with pytest.raises(RangeError):
            phi_eval(pm, 710.0)
        with pytest.raises(RangeError):
            phi_inverse(pm, 710.0)

    @pytest.mark.parametrize(("m", "M"), [(0, 1), (2, 7), (12, 157)])
    def test_defining_equation_residual(self, m, M):
        pm = build_phi_map(m, M)
        xs = np.linspace(-30, 25, 45)
        ys = phi_eval(pm, xs)
        lhs = log_gm_minus_1(pm.lower, ys)
        rhs = log_gm_minus_1(pm.upper, xs)
        assert np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))) < 5e-13

    def test_deep_left_is_linear(self):
        pm = build_phi_map(2, 7)
        lgd1 = pm.upper.log_n_factorial - pm.lower.log_n_factorial
        assert phi_eval(pm, -600.0) == 3.0 * -600.0 - lgd1 / 5.0
        assert phi_prime(pm, -600.0) == 3.0
        # no jump where the linear branch takes over
        a, b = phi_eval(pm, -38.0 - 1e-9), phi_eval(pm, -38.0 + 1e-9)
        assert abs(a - b) < 1e-7

    @pytest.mark.parametrize(("m", "M"), [(0, 1), (2, 7), (0, 157), (24936, 24937)])
    def test_roundtrips(self, m, M):
        pm = build_phi_map(m, M)
        xs = np.linspace(-60, 35, 39)
        back = phi_inverse(pm, phi_eval(pm, xs))
        assert np.max(np.abs(back - xs) / np.maximum(1.0, np.abs(xs))) < 1e-12
        ys = np.linspace(-150, 35, 39)
        fwd = phi_eval(pm, phi_inverse(pm, ys))
        assert np.max(np.abs(fwd - ys) / np.maximum(1.0, np.abs(ys))) < 1e-12

    def test_strictly_increasing(self):
        pm = build_phi_map(2, 7)
        xs = np.linspace(-80, 500, 2001)
        assert np.all(np.diff(phi_eval(pm, xs)) > 0)

    def test_prime_matches_finite_differences(self):
        pm = build_phi_map(2, 7)
        xs = np.linspace(-30, 20, 26)
        h = 1e-5
        fd = (phi_eval(pm, xs + h) - phi_eval(pm, xs - h)) / (2 * h)
        an = phi_prime(pm, xs)
        assert np.max(np.abs(fd - an) / an) < 1e-8

    def test_prime_limits_and_excursion(self):
        # slope rises to N/n on the far left, settles to 1 on the far
        # right, and overshoots both levels near the crossover by a
        # bounded factor
        for (m, M) in [(0, 1), (2, 7), (12, 157)]:
            pm = build_phi_map(m, M)
            ratio = pm.slope_ratio
            assert abs(phi_prime(pm, 700.0) - 1.0) < 1e-12
            xs = np.linspace(-80, 300, 400)
            pr = phi_prime(pm, xs)
            assert np.all(pr > 0.7)
            assert np.all(pr < 1.3 * ratio)

    @pytest.mark.parametrize(("m", "M"), [(0, 1), (0, 157), (12, 157), (157, 158), (24936, 24937)])
    def test_crossing_point_location(self, m, M):
        pm = build_phi_map(m, M)
        n, N = pm.lower.n, pm.upper.n
        assert pm.p > pm.q
        approx = math.log(n) + N * math.log(N / n) / (N - n) - 1.0
        assert n * abs(pm.p - approx) <= 0.5


@settings(max_examples=60, deadline=None)
@given(
    m=st.integers(min_value=0, max_value=60),
    x=st.floats(min_value=-40.0, max_value=20.0),
)
def test_log_gm_is_increasing(m, x):
    ps = make_partial_sum(m)
    assert log_gm_minus_1(ps, x + 0.5) > log_gm_minus_1(ps, x)


@settings(max_examples=60, deadline=None)
@given(
    m=st.integers(min_value=0, max_value=12),
    step=st.integers(min_value=1, max_value=30),
    x=st.floats(min_value=-60.0, max_value=25.0),
)
def test_phi_preserves_order_and_inverts(m, step, x):
    pm = build_phi_map(m, m + step)
    a = phi_eval(pm, x)
    b = phi_eval(pm, x + 1.0)
    assert b > a
    assert abs(phi_inverse(pm, a) - x) <= 1e-11 * max(1.0, abs(x))
