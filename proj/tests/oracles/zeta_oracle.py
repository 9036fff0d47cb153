"""Independent quadrature of the Mellin integrand with mpmath.

Integrates t^(s/2-1) * sum_{n>=1} exp(-4 pi l n^2 t) over (0, inf) and checks
the magnitudes pi/24, pi^2/1440 and pi/48 used by the C++ zeta check.
"""
import sys

import mpmath as mp

mp.mp.dps = 30


def integrand(s, l):
    def f(t):
        if t > mp.mpf("0.05"):
            # (theta3(0, e^{-4 pi l t}) - 1) / 2
            half = (mp.jtheta(3, 0, mp.e ** (-4 * mp.pi * l * t)) - 1) / 2
        else:
            # nome too close to 1: use the inverted series, still summed and integrated numerically
            tail = mp.nsum(lambda n: mp.e ** (-mp.pi * n**2 / (4 * l * t)), [1, mp.inf])
            half = (1 + 2 * tail) / (2 * mp.sqrt(4 * l * t)) - mp.mpf(1) / 2
        return t ** (mp.mpf(s) / 2 - 1) * half
    return f


def main():
    cases = [(2, 1, mp.pi / 24), (4, 1, mp.pi**2 / 1440), (2, 2, mp.pi / 48)]
    bad = 0
    for s, l, expected in cases:
        value = mp.quad(integrand(s, l), [0, mp.mpf("1e-3"), mp.mpf("0.1"), 1, mp.inf])
        closed = mp.gamma(mp.mpf(s) / 2) * (4 * mp.pi * l) ** (-mp.mpf(s) / 2) * mp.zeta(s)
        ok = abs(value - expected) < mp.mpf("1e-12") and abs(closed - expected) < mp.mpf("1e-25")
        bad += not ok
        print(f"{'PASS' if ok else 'FAIL'} s={s} l={l} quad={mp.nstr(value, 20)} expected={mp.nstr(expected, 20)}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
