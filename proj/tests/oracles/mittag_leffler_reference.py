"""Reference values for the Mittag-Leffler tests.

Two independent high-precision routes, cross-checked against each other:
  * the defining power series evaluated with enough working digits to absorb
    cancellation (used when the series is tractable),
  * Talbot inversion of the Laplace pair
      L{t^(b-1) E_{a,b}(-t^a)}(s) = s^(a-b) / (s^a + 1).
Output is pasted into tests/special_functions_test.cc.
"""
import mpmath as mp


def ml_series(a, b, x, dps):
    with mp.workdps(dps):
        a, b, x = mp.mpf(a), mp.mpf(b), mp.mpf(x)
        s, k = mp.mpf(0), 0
        while True:
            term = x**k / mp.gamma(a * k + b)
            s += term
            if k > 10 and abs(term) < mp.mpf(10) ** (-40) * max(1, abs(s)):
                return s
            k += 1


def ml_laplace(a, b, x):
    # x < 0 only
    with mp.workdps(60):
        a, b = mp.mpf(a), mp.mpf(b)
        t = (-mp.mpf(x)) ** (1 / a)
        F = lambda s: s ** (a - b) / (s**a + 1)
        return t ** (1 - b) * mp.invertlaplace(F, t, method="talbot")


cases = []
for a in [0.2, 0.25, 0.45, 0.5, 0.55, 0.65, 0.7, 0.9, 0.99]:
    for b in sorted({a, 1.0, 1.5}):
        for x in [-50.0, -20.0, -10.0, -5.0, -2.0, -1.0, -0.3, 0.5, 1.0, 3.0, 5.0]:
            if x > 0:
                if a < 0.5 and x > 1.0:
                    continue  # overflows double
                v = ml_series(a, b, x, 50)
            else:
                v = ml_laplace(a, b, x)
                if abs(x) <= 2:
                    w = ml_series(a, b, x, 80)
                    assert abs(v - w) <= mp.mpf(10) ** (-25) * abs(w), (a, b, x, v, w)
            cases.append((a, b, x, v))

for a, b, x, v in cases:
    print("    {%s, %s, %s, %s}," % (repr(a), repr(b), repr(x), mp.nstr(v, 20)))
