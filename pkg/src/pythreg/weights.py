"""Trapezoid arc weights on the grid and multiplicative Folner sets.

The weight of (m, n) looks at where the unit complex number
(l * Q1(m, n))^i * (l' m n)^{-i} sits on the circle, with Q1 = m^2 - n^2
(hyperbolic, only m > n) or m^2 + n^2 (elliptic).
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidArgument, ResourceLimit
from .factor_engine import primes_upto
from .multfunc import MultFuncSpec, turn_of

FOLNER_MAX_SIZE = 10**6
INT64_MAX = 2**63 - 1
KINDS = ("hyperbolic", "elliptic")


@dataclass(frozen=True)
class WeightConfig:
    ell: int = 1
    ell_prime: int = 2
    delta: float = 0.1
    kind: str = "hyperbolic"

    def __post_init__(self):
        if not 0 < self.delta < 0.5:
            raise InvalidArgument(f"delta must lie in (0, 1/2); got {self.delta}")
        if self.ell < 1 or self.ell_prime < 1:
            raise InvalidArgument("ell and ell_prime must be positive")
        if self.kind not in KINDS:
            raise InvalidArgument(f"kind must be one of {KINDS}; got {self.kind!r}")


def trapezoid_turn(phi, delta: float):
    """Trapezoid in the arc coordinate phi (turns): 1 for |phi| <= delta/2, 0 for |phi| >= delta."""
    return np.clip((delta - np.abs(phi)) / (delta / 2), 0.0, 1.0)


def trapezoid(z: complex, delta: float) -> float:
    if abs(abs(z) - 1) > 1e-9:
        raise InvalidArgument(f"trapezoid needs |z| = 1; got |z| = {abs(z)}")
    if not 0 < delta < 0.5:
        raise InvalidArgument("delta must lie in (0, 1/2)")
    return float(trapezoid_turn(turn_of(z), delta))


def arc_turns(m, n, cfg: WeightConfig):
    """Arc coordinate in [-1/2, 1/2] of the weight argument; logs are differenced before reducing."""
    m = np.asarray(m, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        if cfg.kind == "hyperbolic":
            top = np.log(m - n) + np.log(m + n)
        else:
            top = np.log(m * m + n * n)
        theta = math.log(cfg.ell) + top - math.log(cfg.ell_prime) - np.log(m) - np.log(n)
        phi = theta / (2 * np.pi)
        return phi - np.round(phi)


def weight(m: int, n: int, cfg: WeightConfig) -> float:
    if m < 1 or n < 1:
        raise InvalidArgument("weight needs m, n >= 1")
    if cfg.kind == "hyperbolic" and m <= n:
        return 0.0
    return float(trapezoid_turn(arc_turns(m, n, cfg), cfg.delta))


def weight_grid(cfg: WeightConfig, N: int, m_lo: int = 1, m_hi: int | None = None) -> np.ndarray:
    """Weights for m_lo <= m <= m_hi (rows) and 1 <= n <= N (columns)."""
    m_hi = N if m_hi is None else m_hi
    m = np.arange(m_lo, m_hi + 1, dtype=np.int64)[:, None]
    n = np.arange(1, N + 1, dtype=np.int64)[None, :]
    w = trapezoid_turn(arc_turns(m, n, cfg), cfg.delta)
    if cfg.kind == "hyperbolic":
        w = np.where(m > n, w, 0.0)
    return w


def weight_density(cfg: WeightConfig, N: int) -> float:
    """(1/N^2) sum of weights over [N]^2, correctly rounded."""
    if N < 100:
        raise InvalidArgument("weight_density needs N >= 100")
    parts = []
    for lo in range(1, N + 1, 256):
        parts.append(math.fsum(weight_grid(cfg, N, lo, min(lo + 255, N)).ravel()))
    return math.fsum(parts) / (N * N)


@dataclass(frozen=True)
class Resonance:
    slope: float
    k: int
    b: float | None
    boundary: bool


def resonance(cfg: WeightConfig) -> Resonance:
    """Slope a with weight argument exactly 1 along x = a y."""
    l, lp = cfg.ell, cfg.ell_prime
    if cfg.kind == "hyperbolic":
        return Resonance((lp + math.sqrt(lp * lp + 4 * l * l)) / (2 * l), 0, None, False)
    k = 0
    while lp / l * math.exp(2 * k * math.pi) < 2:
        k += 1
    b = lp / l * math.exp(2 * k * math.pi)
    boundary = b == 2
    if boundary:
        warnings.warn("b = 2: the resonance is the diagonal x = y (degenerate slope 1)", stacklevel=2)
    return Resonance((b + math.sqrt(max(b * b - 4, 0.0))) / 2, k, b, boundary)


def resonance_slope(cfg: WeightConfig) -> float:
    return resonance(cfg).slope


# ---------------------------------------------------------------------------
# Folner sets


@dataclass(frozen=True, eq=False)
class FolnerSet:
    """All prod_{p <= K} p^{a_p} with K < a_p <= 2K, carried as exponent vectors."""

    K: int
    primes: tuple[int, ...]
    exponents: np.ndarray  # (size, len(primes))

    def __len__(self):
        return self.exponents.shape[0]

    def integers(self) -> list[int]:
        return [math.prod(p**int(a) for p, a in zip(self.primes, row)) for row in self.exponents]

    def values(self) -> list[int | None]:
        """Elements as integers when they fit in 63 bits, else None."""
        return [q if q <= INT64_MAX else None for q in self.integers()]

    def divisible_by(self, q: int) -> np.ndarray:
        """Per-element flag q | Q, decided on the exponent vectors."""
        need = {}
        m = q
        for p in range(2, q + 1):
            while m % p == 0:
                need[p] = need.get(p, 0) + 1
                m //= p
        ok = np.ones(len(self), dtype=bool)
        for p, e in need.items():
            if p not in self.primes:
                return np.zeros(len(self), dtype=bool)
            ok &= self.exponents[:, self.primes.index(p)] >= e
        return ok


def folner_size(K: int) -> int:
    return K ** int(primes_upto(K).size)


def folner_set(K: int) -> FolnerSet:
    if K < 2:
        raise InvalidArgument("folner_set needs K >= 2")
    size = folner_size(K)
    if size > FOLNER_MAX_SIZE:
        raise ResourceLimit(f"Phi_{K} has {size} elements (> {FOLNER_MAX_SIZE})")
    ps = tuple(int(p) for p in primes_upto(K))
    rng = range(K + 1, 2 * K + 1)
    exps = np.array(list(itertools.product(rng, repeat=len(ps))), dtype=np.int64)
    return FolnerSet(K, ps, exps)


def folner_values(f: MultFuncSpec, fs: FolnerSet) -> np.ndarray:
    """f(Q) for every Q in the set, from exponent vectors (never the integer Q)."""
    ps = np.array(fs.primes, dtype=np.int64)
    pv = f.prime_values(ps)
    vals = np.prod(pv[None, :] ** fs.exponents, axis=1)
    t = f.twist
    if t:
        vals = vals * np.exp(1j * t * (fs.exponents @ np.log(ps.astype(np.float64))))
    return vals


def folner_average(f: MultFuncSpec, K: int) -> complex:
    v = folner_values(f, folner_set(K))
    return complex(math.fsum(v.real), math.fsum(v.imag)) / v.size


def folner_average_exact(f: MultFuncSpec, K: int) -> Fraction:
    """Exact mean for f with real prime values in {-1, 0, 1} and no twist."""
    fs = folner_set(K)
    pv = f.prime_values(np.array(fs.primes, dtype=np.int64))
    if f.twist or np.any(pv.imag != 0) or not np.all(np.isin(pv.real, (-1.0, 0.0, 1.0))):
        raise InvalidArgument("exact Folner average needs prime values in {-1, 0, 1} and no twist")
    sign = [int(x) for x in pv.real]
    total = 0
    for row in fs.exponents.tolist():
        total += math.prod(s**a for s, a in zip(sign, row))
    return Fraction(total, len(fs))
