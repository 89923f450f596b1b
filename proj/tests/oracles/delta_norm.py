"""Brute-force Petersson norm of Delta over the standard fundamental domain.

Independent of the C++ library: Delta is evaluated from its product formula
and the double integral is done by mpmath's tanh-sinh quadrature.
"""
import mpmath as mp

mp.mp.dps = 30


def delta(tau):
    q = mp.exp(2j * mp.pi * tau)
    prod = mp.mpf(1)
    n = 1
    while True:
        qn = q ** n
        if abs(qn) < mp.mpf(10) ** (-mp.mp.dps - 5):
            break
        prod *= (1 - qn)
        n += 1
    return q * prod ** 24


def integrand(u, v):
    d = delta(mp.mpc(u, v))
    return (d * mp.conj(d)).real * v ** 10


def inner(u):
    lo = mp.sqrt(1 - u * u)
    return mp.quad(lambda v: integrand(u, v), [lo, lo + 1, 3, 8, mp.inf])


if __name__ == "__main__":
    # integrand is even in u for real coefficients
    val = 2 * mp.quad(inner, [0, mp.mpf(1) / 2])
    print(mp.nstr(val, 25))
