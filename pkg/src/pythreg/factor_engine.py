"""Factorization of single integers and of quadratic-form values over a grid.

The grid sieve is the workhorse: every average over
v(m, n) = (Qm + a)^2 + (Qn + b)^2 reads its per-cell factorizations from a
:class:`GridFactorSieve`, stored as one flat CSR arena.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidArgument, ResourceLimit

SPF_MAX_LIMIT = 2**32
# v(m, n) must stay below this so that residues mod p < 2**31 multiply safely
GRID_VALUE_LIMIT = 2**62
# largest y accepted by prime-range iteration
PRIME_RANGE_LIMIT = 2**34
# n values up to this are factorized through a cached smallest-prime-factor table
SPF_CACHE_LIMIT = 2**24
TRIAL_DIVISION_LIMIT = 10**14

# grid sieve band width in n; fixed so output never depends on worker count
BAND = 64


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise InvalidArgument(f"malformed factorization of {self.n}: {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise InvalidArgument(f"factors {self.factors} multiply to {prod}, not {self.n}")

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


# ---------------------------------------------------------------------------
# primality and primes

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=8)
def _sieve_bool(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit as int64."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    # round the cache key up so nearby limits share one sieve
    key = 1 << max(10, (limit).bit_length())
    if key > 2**31:
        key = limit
    ps = np.flatnonzero(_sieve_bool(key)).astype(np.int64)
    return ps[: np.searchsorted(ps, limit, side="right")]


def prime_segments(lo: int, hi: int, segment: int = 1 << 20) -> Iterator[np.ndarray]:
    """Yield primes p with lo < p <= hi, in increasing order, one segment at a time.

    Segment boundaries depend only on (lo, hi, segment), so any reduction done
    segment by segment is reproducible.
    """
    lo = max(int(lo), 1)
    hi = int(hi)
    if hi > PRIME_RANGE_LIMIT:
        raise ResourceLimit(f"prime range up to {hi} exceeds sieve limit {PRIME_RANGE_LIMIT}")
    if hi <= lo:
        return
    base = primes_upto(math.isqrt(hi))
    start = lo + 1
    while start <= hi:
        stop = min(start + segment - 1, hi)
        if stop <= SPF_CACHE_LIMIT:
            ps = primes_upto(stop)
            yield ps[np.searchsorted(ps, start) :]
        else:
            flags = np.ones(stop - start + 1, dtype=bool)
            for p in base:
                p = int(p)
                if p * p > stop:
                    break
                first = max(p * p, ((start + p - 1) // p) * p)
                flags[first - start :: p] = False
            yield np.flatnonzero(flags).astype(np.int64) + start
        start = stop + 1


def primes_between(lo: float, hi: float) -> np.ndarray:
    """Primes p with lo < p <= hi for real endpoints."""
    parts = list(prime_segments(math.floor(lo), math.floor(hi)))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


# ---------------------------------------------------------------------------
# smallest prime factor table


@dataclass(frozen=True, eq=False)
class SpfTable:
    limit: int
    spf: np.ndarray

    def __getitem__(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise InvalidArgument(f"{n} outside SPF table range [2, {self.limit}]")
        return int(self.spf[n])

    def as_dict(self) -> dict[int, int]:
        return {n: int(self.spf[n]) for n in range(2, self.limit + 1)}

    def factorize(self, n: int) -> Factorization:
        if not 1 <= n <= self.limit:
            raise InvalidArgument(f"{n} outside SPF table range [1, {self.limit}]")
        out = []
        m = n
        while m > 1:
            p = int(self.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        return Factorization(n, tuple(out))


def build_spf_table(limit: int) -> SpfTable:
    if limit < 2:
        raise InvalidArgument("SPF table needs limit >= 2")
    if limit > SPF_MAX_LIMIT:
        raise ResourceLimit(f"SPF table limit {limit} > 2^32")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx.astype(np.uint32)
    spf[:2] = 0
    spf.setflags(write=False)
    return SpfTable(limit, spf)


@functools.lru_cache(maxsize=4)
def _cached_spf(limit: int) -> SpfTable:
    return build_spf_table(limit)


def spf_table_for(n: int) -> SpfTable:
    """Shared SPF table covering n (limits rounded up to powers of two)."""
    return _cached_spf(max(1 << 16, 1 << (int(n) - 1).bit_length()))


# ---------------------------------------------------------------------------
# single integers


def factorize(n: int, primes: Sequence[int] | np.ndarray) -> Factorization:
    """Trial division by an ascending prime list that covers ceil(sqrt(n))."""
    n = int(n)
    if n < 1:
        raise InvalidArgument("factorize needs n >= 1")
    out = []
    m = n
    exhausted = True
    for p in primes:
        p = int(p)
        if p * p > m:
            exhausted = False
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    last = int(primes[-1]) if len(primes) else 1
    if m > 1 and exhausted and math.isqrt(m) > last:
        raise InvalidArgument(f"prime list ending at {last} cannot certify the cofactor {m}")
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def factor(n: int) -> Factorization:
    """Factorize with whatever shared table fits n."""
    n = int(n)
    if n < 1:
        raise InvalidArgument("factor needs n >= 1")
    if n <= SPF_CACHE_LIMIT:
        return spf_table_for(n).factorize(n)
    if n > TRIAL_DIVISION_LIMIT:
        raise ResourceLimit(f"{n} is beyond the trial-division limit {TRIAL_DIVISION_LIMIT}")
    return factorize(n, primes_upto(math.isqrt(n) + 1))


def factor_many(values: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factorize an int64 array; returns CSR (offsets, primes, exponents)."""
    values = np.ascontiguousarray(values, dtype=np.int64)
    if values.size and values.min() < 1:
        raise InvalidArgument("factor_many needs positive integers")
    top = int(values.max()) if values.size else 1
    if top <= SPF_CACHE_LIMIT:
        return _kernels.spf_factor_many(values, spf_table_for(top).spf)
    if top > TRIAL_DIVISION_LIMIT:
        raise ResourceLimit(f"value {top} is beyond the trial-division limit {TRIAL_DIVISION_LIMIT}")
    return _kernels.trial_factor_many(values, primes_upto(math.isqrt(top) + 1))


# ---------------------------------------------------------------------------
# square roots mod p


def legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def smallest_nonresidue(p: int) -> int:
    c = 2
    while legendre(c, p) != -1:
        c += 1
    return c


def sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks square root of a modulo an odd prime p (smaller root)."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise InvalidArgument(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = smallest_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def sqrt_minus_one(p: int) -> int:
    if p % 4 != 1 or not is_prime(p):
        raise InvalidArgument(f"-1 is a square only mod primes p = 1 (mod 4); got {p}")
    return sqrt_mod(p - 1, p)


# ---------------------------------------------------------------------------
# sums of two squares


def r2(n: int) -> int:
    """Number of (x, y) in Z^2 with x^2 + y^2 = n."""
    if n < 1:
        raise InvalidArgument("r2 needs n >= 1")
    out = 4
    for p, e in factor(n):
        if p % 4 == 1:
            out *= e + 1
        elif p % 4 == 3 and e % 2:
            return 0
    return out


def is_sum_of_two_squares(n: int) -> bool:
    return r2(n) > 0


# ---------------------------------------------------------------------------
# grid sieve


@functools.lru_cache(maxsize=4)
def _sieve_primes(bound: int) -> tuple[np.ndarray, np.ndarray]:
    ps = primes_upto(bound)
    return ps, _kernels.sqrt_minus_one_table(ps)


@dataclass(frozen=True, eq=False)
class GridFactorSieve:
    """Factorizations of v(m, n) = (Qm+a)^2 + (Qn+b)^2 for 1 <= m, n <= N.

    Cell (m, n) lives at flat index (m-1)*N + (n-1).  ``offsets`` is the CSR
    index into ``primes``/``exponents``; within a cell primes are increasing.
    """

    Q: int
    a: int
    b: int
    N: int
    values: np.ndarray  # (N, N) int64
    offsets: np.ndarray
    cells: np.ndarray
    primes: np.ndarray
    exponents: np.ndarray
    sieve_bound: int

    def _flat(self, m: int, n: int) -> int:
        if not (1 <= m <= self.N and 1 <= n <= self.N):
            raise InvalidArgument(f"cell ({m}, {n}) outside [1, {self.N}]^2")
        return (m - 1) * self.N + (n - 1)

    def value(self, m: int, n: int) -> int:
        return int(self.values[m - 1, n - 1])

    def cell(self, m: int, n: int) -> Factorization:
        k = self._flat(m, n)
        lo, hi = self.offsets[k], self.offsets[k + 1]
        facs = tuple(zip(self.primes[lo:hi].tolist(), self.exponents[lo:hi].tolist()))
        return Factorization(int(self.values[m - 1, n - 1]), facs)

    def exponent_grid(self, p: int) -> np.ndarray:
        """(N, N) array of the exact power of p dividing each v(m, n)."""
        out = np.zeros(self.N * self.N, dtype=np.int64)
        mask = self.primes == p
        out[self.cells[mask]] = self.exponents[mask]
        return out.reshape(self.N, self.N)

    def residual_primes(self) -> np.ndarray:
        """Primes above the sieve bound that survived as cofactors (sorted, unique)."""
        return np.unique(self.primes[self.primes > self.sieve_bound])


def _validate_grid(Q: int, a: int, b: int, N: int) -> int:
    if Q < 1 or N < 1:
        raise InvalidArgument("grid needs Q >= 1 and N >= 1")
    if not (-Q <= a <= Q and -Q <= b <= Q):
        raise InvalidArgument(f"need -Q <= a, b <= Q; got a={a}, b={b}, Q={Q}")
    if a == -Q and b == -Q:
        raise InvalidArgument("a = b = -Q makes v(1, 1) = 0")
    vmax = (Q * N + abs(a)) ** 2 + (Q * N + abs(b)) ** 2
    if vmax >= GRID_VALUE_LIMIT:
        raise ResourceLimit(f"v_max = {vmax} does not fit the 2^62 grid-sieve range")
    return vmax


def quadratic_values(Q: int, a: int, b: int, N: int) -> np.ndarray:
    _validate_grid(Q, a, b, N)
    x = Q * np.arange(1, N + 1, dtype=np.int64) + a
    y = Q * np.arange(1, N + 1, dtype=np.int64) + b
    return x[:, None] ** 2 + y[None, :] ** 2


def grid_quadratic_factorize(Q: int, a: int, b: int, N: int, workers: int = 1,
                             verify: bool = False) -> GridFactorSieve:
    """Sieve-factorize (Qm+a)^2 + (Qn+b)^2 over [N]^2.

    Each prime p up to ceil(sqrt(v_max)) is handled by marking arithmetic
    progressions in m for every n: two classes m = Q^{-1}(+-r(Qn+b) - a) when
    p = 1 (mod 4) with r^2 = -1, the single class Qm+a = 0 when p | Qn+b or
    p = 3 (mod 4), and a parity class for p = 2.  Work is split into fixed
    n-bands, so ``workers`` only changes wall time.  With ``verify`` every
    residual cofactor is re-checked by Miller-Rabin.
    """
    vmax = _validate_grid(Q, a, b, N)
    bound = math.isqrt(vmax) + 1
    ps, roots = _sieve_primes(bound)
    values = quadratic_values(Q, a, b, N)

    bands = [(lo, min(lo + BAND - 1, N)) for lo in range(1, N + 1, BAND)]

    def run(band):
        lo, hi = band
        rem = np.ascontiguousarray(values[:, lo - 1 : hi])
        return _kernels.sieve_band(Q, a, b, N, lo, hi, ps, roots, rem.copy())

    if workers > 1 and len(bands) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, bands))
    else:
        parts = [run(band) for band in bands]

    cells = np.concatenate([p[0] for p in parts])
    primes = np.concatenate([p[1] for p in parts])
    exps = np.concatenate([p[2] for p in parts])
    offsets, perm = _kernels.csr_by_cell(cells, N * N)
    cells, primes, exps = cells[perm], primes[perm], exps[perm]

    if verify:
        big = primes > ps[-1] if ps.size else primes > 1
        for r in np.unique(primes[big]).tolist():
            assert is_prime(r), f"sieve residual {r} is composite"
    for arr in (values, offsets, cells, primes, exps):
        arr.setflags(write=False)
    return GridFactorSieve(Q, a, b, N, values, offsets, cells, primes, exps,
                           int(ps[-1]) if ps.size else 1)


_GRID_CACHE: dict[tuple[int, int, int, int], GridFactorSieve] = {}
_GRID_CACHE_SIZE = 2


def grid(Q: int, a: int, b: int, N: int, workers: int = 1) -> GridFactorSieve:
    """Shared sieve for repeated queries on the same grid.

    Content never depends on ``workers``, so cached sieves are reused regardless
    of the worker count they were built with.
    """
    key = (int(Q), int(a), int(b), int(N))
    g = _GRID_CACHE.get(key)
    if g is None:
        g = grid_quadratic_factorize(*key, workers=workers)
        while len(_GRID_CACHE) >= _GRID_CACHE_SIZE:
            _GRID_CACHE.pop(next(iter(_GRID_CACHE)))
        _GRID_CACHE[key] = g
    return g
