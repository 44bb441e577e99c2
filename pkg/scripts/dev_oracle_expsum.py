"""Generate frozen reference values for tests/test_expsum_real.py.

Every value is computed by two independent mpmath routes and printed only
if they agree far below the tolerance the tests will use.  Run:

    python3 scripts/dev_oracle_expsum.py
"""

import math

import mpmath as mp


def log_gm_route_hyp(m, x, dps=60):
    n = 2 * m + 1
    with mp.workdps(dps):
        xm = mp.mpf(x)
        y = mp.e ** xm
        return -mp.loggamma(n + 1) + y + n * xm + mp.log(mp.hyp1f1(1, n + 1, -y))


def log_gm_route_sum(m, x):
    n = 2 * m + 1
    # digits must cover both the result's own magnitude (n x - log n!) and
    # the alternating cancellation inside P_m, which is ~2y for y <~ n
    y_eff = min(math.exp(min(x, 32.0)), 3.0 * n)
    dps = 100 + int((n * abs(min(x, 0.0)) + math.lgamma(n + 1) + 2 * y_eff)
                    / math.log(10))
    with mp.workdps(min(dps, 8000)):
        y = mp.e ** mp.mpf(x)
        P = mp.fsum((-y) ** k / mp.factorial(k) for k in range(2 * m + 1))
        return mp.log(P * mp.e ** y - 1)


def sm_route_solve(m):
    """Root of P_m(e^s) e^(e^s) = 2, solved on the alternating sum itself."""
    n = 2 * m + 1
    guess = math.log(n) - 1.278464542761  # large-m drift line
    # cancellation inside P_m at y ~ 0.2785 n runs 2y/ln10 ~ 0.242 n digits
    dps = 80 + int(0.25 * n)
    with mp.workdps(min(dps, 6000)):
        def f(s):
            y = mp.e ** s
            P = mp.fsum((-y) ** k / mp.factorial(k) for k in range(2 * m + 1))
            return P * mp.e ** y - 2
        lo, hi = mp.mpf(guess) - 1, mp.mpf(guess) + 1
        if not f(lo) < 0 < f(hi):
            raise AssertionError(f"bracket failed for m={m}")
        for _ in range(120):
            mid = (lo + hi) / 2
            if f(mid) < 0:
                lo = mid
            else:
                hi = mid
        mid = (lo + hi) / 2
        return mp.findroot(f, (mid, mid + mp.mpf("1e-20")), solver="secant",
                           tol=mp.mpf(10) ** (-60))


def r_route_hyp(n, y, dps=60):
    with mp.workdps(dps):
        ym = mp.mpf(y)
        return mp.log(mp.hyp1f1(1, n + 1, -ym) / n) + mp.log(n + ym)


def r_route_quad(n, y, dps=40):
    with mp.workdps(dps):
        ym = mp.mpf(y)
        val = mp.quad(lambda s: mp.e ** (ym * (s - 1)) * s ** (n - 1), [0, 1])
        return mp.log(val) + mp.log(n + ym)


def main():
    ms = [1, 5, 12, 50, 200]
    xs = [-30.0, -17.5, -8.0, -3.0, -1.0, 0.0, 0.5, 1.5, 3.0, 7.0, 13.0, 21.0, 30.0]
    print("LOG_GM_TABLE = [")
    for m in ms:
        for x in xs:
            a = log_gm_route_hyp(m, x)
            b = log_gm_route_sum(m, x)
            rel = abs(a - b) / max(1, abs(a))
            tag = "" if rel < mp.mpf("1e-25") else "  # DISAGREE %.1e" % float(rel)
            print(f"    ({m}, {x!r}, {mp.nstr(a, 17)}),{tag}")
    print("]")

    print("SM_TABLE = [")
    for m in [0, 1, 5, 12, 50, 200, 1000]:
        if m == 0:
            with mp.workdps(70):
                s = mp.log(mp.log(2))
        else:
            s = sm_route_solve(m)
        # cross-check with the hyp route: log(g-1) must vanish at s
        resid = log_gm_route_hyp(m, s, dps=90)
        tag = "" if abs(resid) < mp.mpf("1e-30") else "  # DISAGREE %.1e" % float(abs(resid))
        print(f"    ({m}, {mp.nstr(s, 17)}),{tag}")
    print("]")

    print("R_TABLE = [")
    for n in [25, 101, 1001]:
        for y in [1e-6, 0.1, 10.0, 1000.0, 1e5]:
            a = r_route_hyp(n, y)
            b = r_route_quad(n, y)
            rel = abs(a - b) / max(1, abs(a))
            tag = "" if rel < mp.mpf("1e-20") else "  # DISAGREE %.1e" % float(rel)
            print(f"    ({n}, {y!r}, {mp.nstr(a, 17)}),{tag}")
    print("]")


if __name__ == "__main__":
    main()
