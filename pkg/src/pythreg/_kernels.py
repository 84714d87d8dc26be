"""Compiled inner loops (numba).

All modular arithmetic here assumes moduli below 2**31 so that products of two
residues fit in a signed 64-bit integer.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def powmod(b, e, m):
    r = 1
    b %= m
    while e > 0:
        if e & 1:
            r = (r * b) % m
        b = (b * b) % m
        e >>= 1
    return r


@njit(cache=True)
def sqrt_minus_one_table(primes):
    """Smaller square root of -1 mod p for every p = 1 (mod 4); 0 elsewhere."""
    out = np.zeros(primes.shape[0], dtype=np.int64)
    for i in range(primes.shape[0]):
        p = primes[i]
        if p % 4 != 1:
            continue
        c = 2
        while powmod(c, (p - 1) // 2, p) != p - 1:
            c += 1
        r = powmod(c, (p - 1) // 4, p)
        if r > p - r:
            r = p - r
        out[i] = r
    return out


@njit(cache=True)
def _grow(cells, primes, exps):
    k = cells.shape[0] * 2
    c2 = np.empty(k, dtype=cells.dtype)
    p2 = np.empty(k, dtype=primes.dtype)
    e2 = np.empty(k, dtype=exps.dtype)
    c2[: cells.shape[0]] = cells
    p2[: primes.shape[0]] = primes
    e2[: exps.shape[0]] = exps
    return c2, p2, e2


@njit(cache=True, nogil=True)
def sieve_band(Q, a, b, N, n_lo, n_hi, primes, roots, rem):
    """Strip every prime in ``primes`` out of the band n_lo <= n <= n_hi.

    ``rem`` has shape (N, n_hi - n_lo + 1) and holds v(m, n) on entry; on exit it
    holds the cofactor left after sieving.  Returns parallel arrays of
    (cell, prime, exponent) entries in prime-major order, where
    cell = (m - 1) * N + (n - 1).
    """
    cap = max(16, 4 * N * (n_hi - n_lo + 1))
    cells = np.empty(cap, dtype=np.int64)
    ps = np.empty(cap, dtype=np.int64)
    es = np.empty(cap, dtype=np.int8)
    cnt = 0
    width = n_hi - n_lo + 1
    for i in range(primes.shape[0]):
        p = primes[i]
        qp = Q % p
        if qp == 0:
            # v = a^2 + b^2 (mod p) on the whole grid
            if (a * a + b * b) % p != 0:
                continue
            for j in range(width):
                for mi in range(N):
                    e = 0
                    while rem[mi, j] % p == 0:
                        rem[mi, j] //= p
                        e += 1
                    if e > 0:
                        if cnt == cells.shape[0]:
                            cells, ps, es = _grow(cells, ps, es)
                        cells[cnt] = mi * N + (n_lo + j - 1)
                        ps[cnt] = p
                        es[cnt] = e
                        cnt += 1
            continue
        qinv = powmod(qp, p - 2, p) if p > 2 else 1
        r = roots[i]
        for j in range(width):
            n = n_lo + j
            y = (Q * n + b) % p
            m1 = -1
            m2 = -1
            step = p
            if p == 2:
                m1 = (y - a) % 2
            elif p % 4 == 3:
                if y != 0:
                    continue
                m1 = ((-a) * qinv) % p
            else:
                if y == 0:
                    m1 = ((-a) * qinv) % p
                else:
                    t = (r * y) % p
                    m1 = ((t - a) * qinv) % p
                    m2 = ((p - t - a) * qinv) % p
            for root in (m1, m2):
                if root < 0:
                    continue
                m = root if root >= 1 else step
                while m <= N:
                    e = 0
                    while rem[m - 1, j] % p == 0:
                        rem[m - 1, j] //= p
                        e += 1
                    if e > 0:
                        if cnt == cells.shape[0]:
                            cells, ps, es = _grow(cells, ps, es)
                        cells[cnt] = (m - 1) * N + (n - 1)
                        ps[cnt] = p
                        es[cnt] = e
                        cnt += 1
                    m += step
    # residual cofactors are 1 or a single prime above the sieve bound
    for j in range(width):
        for mi in range(N):
            if rem[mi, j] > 1:
                if cnt == cells.shape[0]:
                    cells, ps, es = _grow(cells, ps, es)
                cells[cnt] = mi * N + (n_lo + j - 1)
                ps[cnt] = rem[mi, j]
                es[cnt] = 1
                cnt += 1
    return cells[:cnt], ps[:cnt], es[:cnt]


@njit(cache=True)
def spf_factor_many(values, spf):
    """Factor each value with a smallest-prime-factor table; CSR output."""
    n = values.shape[0]
    offsets = np.zeros(n + 1, dtype=np.int64)
    cap = max(16, 4 * n)
    ps = np.empty(cap, dtype=np.int64)
    es = np.empty(cap, dtype=np.int8)
    cnt = 0
    for i in range(n):
        v = values[i]
        while v > 1:
            p = np.int64(spf[v])
            e = 0
            while v % p == 0:
                v //= p
                e += 1
            if cnt == ps.shape[0]:
                ps2 = np.empty(2 * cnt, dtype=np.int64)
                es2 = np.empty(2 * cnt, dtype=np.int8)
                ps2[:cnt] = ps
                es2[:cnt] = es
                ps, es = ps2, es2
            ps[cnt] = p
            es[cnt] = e
            cnt += 1
        offsets[i + 1] = cnt
    return offsets, ps[:cnt], es[:cnt]


@njit(cache=True)
def trial_factor_many(values, primes):
    """Factor each value by trial division; caller guarantees primes cover sqrt(max)."""
    n = values.shape[0]
    offsets = np.zeros(n + 1, dtype=np.int64)
    cap = max(16, 4 * n)
    ps = np.empty(cap, dtype=np.int64)
    es = np.empty(cap, dtype=np.int8)
    cnt = 0
    for i in range(n):
        v = values[i]
        k = 0
        while v > 1:
            if k < primes.shape[0] and primes[k] * primes[k] <= v:
                p = primes[k]
                k += 1
                if v % p != 0:
                    continue
                e = 0
                while v % p == 0:
                    v //= p
                    e += 1
            else:
                p = v
                e = 1
                v = 1
            if cnt == ps.shape[0]:
                ps2 = np.empty(2 * cnt, dtype=np.int64)
                es2 = np.empty(2 * cnt, dtype=np.int8)
                ps2[:cnt] = ps
                es2[:cnt] = es
                ps, es = ps2, es2
            ps[cnt] = p
            es[cnt] = e
            cnt += 1
        offsets[i + 1] = cnt
    return offsets, ps[:cnt], es[:cnt]


@njit(cache=True)
def segment_prod(offsets, vals):
    n = offsets.shape[0] - 1
    out = np.ones(n, dtype=np.complex128)
    for i in range(n):
        acc = 1.0 + 0.0j
        for k in range(offsets[i], offsets[i + 1]):
            acc *= vals[k]
        out[i] = acc
    return out


@njit(cache=True)
def csr_by_cell(cells, ncells):
    """Stable counting sort permutation and CSR offsets for cell ids."""
    counts = np.zeros(ncells + 1, dtype=np.int64)
    for c in cells:
        counts[c + 1] += 1
    for i in range(ncells):
        counts[i + 1] += counts[i]
    pos = counts[:-1].copy()
    perm = np.empty(cells.shape[0], dtype=np.int64)
    for k in range(cells.shape[0]):
        c = cells[k]
        perm[pos[c]] = k
        pos[c] += 1
    return counts, perm
