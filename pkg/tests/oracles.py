"""Small, slow, obviously-correct reference implementations used by the tests."""

import math


def is_prime_naive(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def primes_naive(lo, hi):
    """Primes p with lo < p <= hi."""
    return [p for p in range(max(lo + 1, 2), hi + 1) if is_prime_naive(p)]


def factor_naive(n):
    out, d = [], 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def r2_naive(n):
    r = math.isqrt(n)
    return sum(1 for x in range(-r, r + 1) for y in range(-r, r + 1) if x * x + y * y == n)


def liouville_naive(n):
    return (-1) ** sum(e for _, e in factor_naive(n))


def pythagorean_naive(zmax):
    """Unordered (x, y, z), x < y, x^2 + y^2 = z^2, z <= zmax, by z-first enumeration."""
    out = []
    for z in range(1, zmax + 1):
        for x in range(1, z):
            y2 = z * z - x * x
            y = math.isqrt(y2)
            if y * y == y2 and x < y:
                out.append((x, y, z))
    return out
