#!/usr/bin/env python3
"""Independent reference values for the test suites (mpmath + plain Python).

Run: python3 tests/oracles/derive.py
The printed numbers are frozen into the C++ tests.
"""
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 40


def gauss_plus_avg(x, r):
    """A_r f(x) for f(t) = t 1_{t>0} and d mu = e^{t^2} dt."""
    lo, hi = x - r, x + r
    mass = mp.quad(lambda t: mp.e ** (t * t), [lo, 0, hi] if lo < 0 < hi else [lo, hi])
    top = max(hi, 0)
    integral = (mp.e ** (top * top) - 1) / 2 if top > 0 else mp.mpf(0)
    if lo > 0:
        integral -= (mp.e ** (lo * lo) - 1) / 2
    return integral / mass


def lattice_sum(weight, f, center, radius, metric):
    cn, cm = center
    reach = int(radius) + 2
    mass = Fraction(0)
    total = Fraction(0)
    for n in range(cn - reach, cn + reach + 1):
        for m in range(cm - reach, cm + reach + 1):
            dn, dm = abs(n - cn), abs(m - cm)
            inside = max(dn, dm) < radius if metric == "sup" else dn * dn + dm * dm < radius * radius
            if inside:
                w = weight(n, m)
                mass += w
                total += w * f(n, m)
    return mass, total


def ex3_w(n, m):
    return Fraction(4 ** abs(m)) if n == 0 else Fraction(1)


def ex4_w(n, m):
    if n == 0:
        return Fraction(4 ** abs(m))
    if n < 0 and m == 0:
        return Fraction(2 ** (n * n))
    return Fraction(1)


def ex3_f(n, m):
    return Fraction(2 ** n) if n > 0 and m == 0 else Fraction(0)


def ex4_g(n, m):
    return Fraction(2 ** (n * n)) if n > 0 and m == 0 else Fraction(0)


def main():
    print("A_r f(0):")
    for r in [1, 2, 4, 8, 16, 20, 21, 24, 32]:
        print(f"  r={r}: {mp.nstr(gauss_plus_avg(0, r), 15)}")
    print("A_r f(-1):")
    vals = []
    for r in range(1, 9):
        v = gauss_plus_avg(-1, r)
        vals.append(v)
        print(f"  r={r}: {mp.nstr(v, 15)}")
    print(f"  sup r<=8: {mp.nstr(max(vals), 15)}")
    print("sqrt(pi) erf(3):", mp.nstr(mp.sqrt(mp.pi) * mp.erf(3), 15))
    print("erf(4)/erf(3):", mp.nstr(mp.erf(4) / mp.erf(3), 15))
    print("erf(11)/erf(10) - 1:", mp.nstr(mp.erf(11) / mp.erf(10) - 1, 5))
    osc_num = mp.quad(lambda y: abs(y - 2) * mp.e ** (-y * y), [1, 2, 3])
    osc_den = mp.quad(lambda y: mp.e ** (-y * y), [1, 3])
    print("oscillation EX1_F gauss- B_1(2) at 2:", mp.nstr(osc_num / osc_den, 15))
    print("||EX5_F(depth 8)||_1:", mp.nstr(mp.fsum(2 ** k * mp.mpf(2) ** (-k * k) for k in range(1, 9)), 15))

    one = lambda n, m: Fraction(1)
    print("EX3 mass B_2(0,0) sup:", lattice_sum(ex3_w, one, (0, 0), 2, "sup")[0])
    print("EX3 B_3(3,0) integral:", lattice_sum(ex3_w, ex3_f, (3, 0), 3, "sup")[1])
    for N in range(2, 13):
        m, t = lattice_sum(ex3_w, ex3_f, (N, 0), N, "sup")
        print(f"EX3 avg B_{N}({N},0) = {t / m}  bound {Fraction(2 ** N, (2 * N - 1) ** 2)}")
    for r in [10, 14]:
        a = lattice_sum(ex3_w, one, (0, 0), r + 1, "sup")[0]
        b = lattice_sum(ex3_w, one, (0, 0), r, "sup")[0]
        print(f"EX3 ratio r={r}: {a / b} = {float(a / b)}")
    for N in range(5, 13):
        m, t = lattice_sum(ex4_w, ex4_g, (1, 0), N, "sup")
        lo = Fraction(2) ** (N * N - (N - 2) ** 2 - 1)
        m2, t2 = lattice_sum(ex4_w, ex4_g, (-1, 0), N, "sup")
        hi = Fraction(1, 2 ** (N * N - (N - 2) ** 2 - 1))
        print(f"EX4 N={N}: plus/bound = {float((t / m) / lo):.6f}  minus/bound = {float((t2 / m2) / hi):.6f}")


if __name__ == "__main__":
    main()
