"""Pretentious distances, drift sums over primes, and mean-value probes."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .errors import InvalidArgument
from .factor_engine import prime_segments
from .multfunc import AddFuncSpec, Archimedean, MultFuncSpec, One, Product, values_at

DISTANCE_Y_LIMIT = 2**40
SNAP = 1e-12


@dataclass(frozen=True)
class DistanceReport:
    f_desc: str
    g_desc: str
    x: float
    y: float
    d_squared: float
    restricted: bool
    prime_count: int

    @property
    def distance(self) -> float:
        return math.sqrt(self.d_squared)

    def to_dict(self) -> dict:
        return asdict(self)


def at_primes(f: MultFuncSpec, ps: np.ndarray) -> np.ndarray:
    """f(p) for an array of primes, twist included, without factoring anything."""
    v = f.prime_values(ps)
    t = f.twist
    if t:
        v = v * np.exp(1j * t * np.log(ps.astype(np.float64)))
    return v


def _relative(f: MultFuncSpec, g: MultFuncSpec, ps: np.ndarray) -> np.ndarray:
    """f(p) conj g(p) with the two twists merged before exponentiating."""
    v = f.prime_values(ps) * np.conj(g.prime_values(ps))
    t = f.twist - g.twist
    if t:
        v = v * np.exp(1j * t * np.log(ps.astype(np.float64)))
    # z conj z for a root of unity is 1 only up to rounding
    v[np.abs(v - 1) <= SNAP] = 1
    return v


def _one_minus_re(z: np.ndarray) -> np.ndarray:
    """1 - Re z for z in {0} or the unit circle, as 2 sin^2(arg/2) so it is never negative."""
    return np.where(np.abs(z) < 0.5, 1.0, 2.0 * np.sin(np.angle(z) / 2) ** 2)


def prime_sum(term: Callable[[np.ndarray], np.ndarray], x: float, y: float,
              restricted: bool = False) -> tuple[complex, int]:
    """Sum term(p) over primes x < p <= y (restricted: p = 1 mod 4).

    Segments are summed with fsum and the segment totals fsum'ed again, so the
    result does not depend on how the work is split.
    """
    if y > DISTANCE_Y_LIMIT:
        raise InvalidArgument(f"y={y} is above the supported range 2^40")
    re_parts, im_parts, count = [], [], 0
    for ps in prime_segments(math.floor(max(x, 0)), math.floor(y)):
        if restricted:
            ps = ps[ps % 4 == 1]
        if ps.size == 0:
            continue
        vals = np.asarray(term(ps), dtype=np.complex128)
        re_parts.append(math.fsum(vals.real))
        im_parts.append(math.fsum(vals.imag))
        count += int(ps.size)
    return complex(math.fsum(re_parts), math.fsum(im_parts)), count


def distance_squared(f: MultFuncSpec, g: MultFuncSpec, x: float, y: float,
                     restricted: bool = False) -> DistanceReport:
    """Sum over x < p <= y of (1 - Re f(p) conj g(p)) / p."""
    if not 0 <= x or y < x:
        raise InvalidArgument(f"need 0 <= x <= y; got x={x}, y={y}")

    def term(ps):
        return _one_minus_re(_relative(f, g, ps)) / ps

    s, count = prime_sum(term, x, y, restricted)
    return DistanceReport(f.desc(), g.desc(), float(x), float(y), max(s.real, 0.0), restricted, count)


def distance(f: MultFuncSpec, g: MultFuncSpec, x: float, y: float, restricted: bool = False) -> float:
    return distance_squared(f, g, x, y, restricted).distance


def abs_distance(f: MultFuncSpec, chi: MultFuncSpec, x: float, y: float) -> float:
    """Sum over x < p <= y of |1 - f(p) conj chi(p)| / p."""
    if y < x:
        return 0.0

    def term(ps):
        return np.abs(1.0 - _relative(f, chi, ps)) / ps

    return prime_sum(term, x, y)[0].real


def _drift_term(f, chi, t):
    def term(ps):
        return (_relative(f, twisted(chi, t), ps) - 1.0) / ps

    return term


def drift_F(f: MultFuncSpec, chi: MultFuncSpec, t: float, K: float, N: float) -> complex:
    """Sum over K < p <= N of (f(p) conj chi(p) p^{-it} - 1) / p."""
    if not K < N:
        raise InvalidArgument(f"drift_F needs K < N; got K={K}, N={N}")
    return prime_sum(_drift_term(f, chi, t), K, N)[0]


def drift_G(f: MultFuncSpec, chi: MultFuncSpec, t: float, K: float, N: float) -> complex:
    """Twice the sum over K < p <= N, p = 1 mod 4, of (f(p) conj chi(p) p^{-it} - 1) / p."""
    if not K < N:
        raise InvalidArgument(f"drift_G needs K < N; got K={K}, N={N}")
    return 2 * prime_sum(_drift_term(f, chi, t), K, N, restricted=True)[0]


def drift_H(h: AddFuncSpec, K0: float, N: float) -> complex:
    """Twice the sum over K0 < p <= N of h(p) / p."""
    if not K0 < N:
        raise InvalidArgument(f"drift_H needs K0 < N; got K0={K0}, N={N}")
    # h is finitely supported, so sum over its support instead of sieving
    re, im = [], []
    for p in h.primes():
        if K0 < p <= N:
            z = h.at(p, 1) / p
            re.append(z.real)
            im.append(z.imag)
    return 2 * complex(math.fsum(re), math.fsum(im))


def mean_probe(f: MultFuncSpec, a: int, b: int, N: int, mode: str = "cesaro") -> complex:
    """Average of f(an + b) over n <= N, Cesaro or with weights 1/n."""
    if a < 1 or b < 0 or N < 1:
        raise InvalidArgument("mean_probe needs a >= 1, b >= 0, N >= 1")
    n = np.arange(1, N + 1, dtype=np.int64)
    v = values_at(f, a * n + b)
    if mode == "cesaro":
        return complex(math.fsum(v.real) / N, math.fsum(v.imag) / N)
    if mode in ("log", "logarithmic"):
        w = 1.0 / n
        H = math.fsum(w)
        return complex(math.fsum(v.real * w) / H, math.fsum(v.imag * w) / H)
    raise InvalidArgument(f"unknown mode {mode!r}")


def twisted(chi: MultFuncSpec, t: float) -> MultFuncSpec:
    """chi * n^{it}, or chi itself when t = 0."""
    if t == 0:
        return chi
    if isinstance(chi, One):
        return Archimedean(t)
    return Product((chi, Archimedean(t)))
