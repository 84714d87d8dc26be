"""Brute-force counting oracles over the grid v(m, n) = (Qm+a)^2 + (Qn+b)^2
next to their closed forms."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidArgument
from .factor_engine import GridFactorSieve, factor, grid, is_prime, r2

CSV_HEADER = "N,Q,a,b,p,q,empirical,closed_form,abs_error"


@dataclass(frozen=True)
class CountingReport:
    N: int
    Q: int
    a: int
    b: int
    p: int | None = None
    q: int | None = None
    l: int | None = None
    empirical: float = 0.0
    closed_form: float | None = None
    abs_error: float | None = None
    bound_rhs: float | None = None
    ratio: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def csv_row(self) -> str:
        return (f"{self.N},{self.Q},{self.a},{self.b},{self.p},{self.q},"
                f"{self.empirical!r},{self.closed_form!r},{self.abs_error!r}")


def _check_pq(p: int, q: int):
    for r in (p, q):
        if not is_prime(r) or r % 4 != 1:
            raise InvalidArgument(f"{r} is not a prime = 1 mod 4")


def w_pair_closed_form(p: int, q: int) -> float:
    _check_pq(p, q)
    if p == q:
        return 2 / p * (1 - 1 / p) ** 2
    return 4 / (p * q) * (1 - 1 / p) ** 2 * (1 - 1 / q) ** 2


def exactly_once(sieve: GridFactorSieve, p: int) -> np.ndarray:
    """Boolean (N, N) grid of p || v(m, n), from the sieve exponents."""
    return sieve.exponent_grid(p) == 1


def w_pair_empirical(N: int, Q: int, a: int, b: int, p: int, q: int, workers: int = 1) -> float:
    """Fraction of (m, n) in [N]^2 with p || v and q || v."""
    _check_pq(p, q)
    if math.gcd(p * q, Q) != 1:
        raise InvalidArgument(f"p={p}, q={q} must be coprime to Q={Q}")
    sieve = grid(Q, a, b, N, workers)
    hit = exactly_once(sieve, p)
    if q != p:
        hit &= exactly_once(sieve, q)
    return int(np.count_nonzero(hit)) / (N * N)


def w_pair(N: int, Q: int, a: int, b: int, p: int, q: int, workers: int = 1) -> CountingReport:
    emp = w_pair_empirical(N, Q, a, b, p, q, workers)
    cf = w_pair_closed_form(p, q)
    return CountingReport(N, Q, a, b, p=p, q=q, empirical=emp, closed_form=cf, abs_error=abs(emp - cf))


def w_divisor(N: int, Q: int, a: int, b: int, l: int, workers: int = 1) -> CountingReport:
    """Fraction of cells with l | v(m, n), next to the bound Q^2 / l."""
    if l < 1 or r2(l) == 0:
        raise InvalidArgument(f"l={l} is not a sum of two squares")
    sieve = grid(Q, a, b, N, workers)
    hit = np.ones((N, N), dtype=bool)
    for p, e in factor(l):
        hit &= sieve.exponent_grid(p) >= e
    emp = int(np.count_nonzero(hit)) / (N * N)
    return CountingReport(N, Q, a, b, l=l, empirical=emp, bound_rhs=Q * Q / l, ratio=emp * l / (Q * Q))
