"""Dev helper: print frozen reference values for the core integral tests.

Two independent routes per point:
  closed form   I(y, nn) = 1F1(1; nn+2; -y) / (nn + 1)
  adaptive quad on [0, 1-w] + [1-w, 1] with w sized to the decay scale
Points where the two disagree beyond 1e-25 rel are flagged loudly.
"""

import mpmath as mp


def oracle_hyp(y, nn, dps=50):
    with mp.workdps(dps):
        return mp.hyp1f1(1, nn + 2, -mp.mpmathify(y)) / (nn + 1)


def oracle_quad(y, nn, dps=40):
    with mp.workdps(dps):
        y = mp.mpf(y)
        f = lambda s: mp.e ** (y * (s - 1)) * s ** nn
        w = min(mp.mpf(1), mp.mpf(120) / max(mp.mpf(1), y + nn))
        if w == 1:
            return mp.quad(f, [0, 1])
        return mp.quad(f, [0, 1 - w, 1])


def oracle_quad_cplx(W, nn, dps=40):
    with mp.workdps(dps):
        W = mp.mpc(W)
        f = lambda s: mp.e ** (W * (s - 1)) * s ** nn
        scale = abs(W) + nn
        w = min(mp.mpf(1), mp.mpf(120) / max(mp.mpf(1), scale))
        if w == 1:
            return mp.quad(f, [0, 1])
        return mp.quad(f, [0, 1 - w, 1])


def main():
    ys = [0.0, 1e-8, 1e-3, 0.5, 1.0, 7.3, 55.0, 400.0, 1e4, 1e8, 1e12, 1e16]
    nns = [0, 1, 2, 24, 100, 2001, 10**6]
    rows = []
    for nn in nns:
        for y in ys:
            a = oracle_hyp(y, nn)
            b = oracle_quad(y, nn)
            rel = abs(a - b) / abs(a)
            if rel > mp.mpf("1e-20"):
                print(f"# DISAGREE y={y} nn={nn} rel={mp.nstr(rel, 5)}")
            with mp.workdps(30):
                rows.append((y, nn, mp.log(a)))
    print("REAL_LOG_TABLE = [")
    for y, nn, lg in rows:
        print(f"    ({y!r}, {nn}, {mp.nstr(lg, 22)}),")
    print("]")

    # huge-y points for the log variant (closed form only; quad split underflows)
    print("HUGE_LOG_TABLE = [")
    for y in [1e200, 1e300, 8.0e307]:
        for nn in [1, 24, 2001]:
            with mp.workdps(60):
                lg = mp.log(mp.hyp1f1(1, nn + 2, -mp.mpf(y)) / (nn + 1))
            print(f"    ({y!r}, {nn}, {mp.nstr(lg, 22)}),")
    print("]")

    pts = [
        (complex(3.0, 4.0), 1),
        (complex(-5.0, 40.0), 24),
        (complex(-27.0, 0.1), 100),
        (complex(12.0, -9.0), 100),
        (complex(-540.0, 300.0), 2001),
        (complex(2.5e5, 1e5), 2001),
        (complex(0.0, 200.0), 51),
    ]
    print("COMPLEX_TABLE = [")
    for W, nn in pts:
        a = oracle_hyp(mp.mpc(W), nn)
        b = oracle_quad_cplx(W, nn)
        rel = abs(a - b) / abs(a)
        if rel > mp.mpf("1e-20"):
            print(f"# DISAGREE W={W} nn={nn} rel={mp.nstr(rel, 5)}")
        with mp.workdps(30):
            print(f"    ({W!r}, {nn}, complex({mp.nstr(a.real, 22)}, {mp.nstr(a.imag, 22)})),")
    print("]")


if __name__ == "__main__":
    main()
