#!/usr/bin/env python3
# Copyright 2026 The unli Authors.
# SPDX-License-Identifier: Apache-2.0
"""Prints the high-precision reference values hard-coded in the unit tests.

E[max(Y1, Y2, 0)] is integrated after conditioning on Z1, with the inner
expectation E[max(a, Y2)] in closed form.
"""

import mpmath as mp

mp.mp.dps = 40


def unli_1d(mu, sigma):
    return mp.quad(lambda y: y * mp.npdf(y, mu, sigma), [0, max(mu, 0), mp.inf])


def expected_max(m1, m2, s1, s2, r):
    m1, m2, s1, s2, r = map(mp.mpf, (m1, m2, s1, s2, r))
    s = s2 * mp.sqrt(1 - r * r)

    def f(z):
        a = max(m1 + s1 * z, 0)
        m = m2 + s2 * r * z
        d = (m - a) / s
        return mp.npdf(z) * (a + (m - a) * mp.ncdf(d) + s * mp.npdf(d))

    return mp.quad(f, [-mp.inf, -m1 / s1, mp.inf])


def main():
    r3 = mp.sqrt(3)
    rows = [
        ("phi(1)", mp.npdf(1)),
        ("Phi(1.959964)", mp.ncdf(mp.mpf("1.959964"))),
        ("unli_1d(-2, 1)", unli_1d(-2, 1)),
        ("unli_1d(-1, 2)", unli_1d(-1, 2)),
        ("E max (0, 0, 1, 1, 0)", expected_max(0, 0, 1, 1, 0)),
        ("E max (-2, -2, 1, 1, -0.75)", expected_max(-2, -2, 1, 1, "-0.75")),
        ("E max (2, 2, sqrt3, sqrt3, 0.75)", expected_max(2, 2, r3, r3, "0.75")),
        ("E max (2, -2, 1, sqrt3, 0.75)", expected_max(2, -2, 1, r3, "0.75")),
        ("E max (-2, 0, sqrt3, 1, -0.5)", expected_max(-2, 0, r3, 1, "-0.5")),
        ("EVPI (-4734, -2668, 4678, 4645, 0.5)", expected_max(-4734, -2668, 4678, 4645, "0.5")),
    ]
    for name, value in rows:
        print(f"{name:40s} {mp.nstr(value, 30)}")


if __name__ == "__main__":
    main()
