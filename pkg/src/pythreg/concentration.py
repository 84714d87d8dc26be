"""Empirical harnesses for the linear and quadratic concentration inequalities
and the Turan-Kubilius variance bound for sums of two squares.

Each harness reports the empirical left-hand side next to the pieces of the
theoretical bound; the absolute constant is unknown, so only the ratio is
reported.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import InvalidArgument
from .factor_engine import GridFactorSieve, grid, primes_upto
from .multfunc import (
    AddFuncSpec,
    Archimedean,
    MultFuncSpec,
    Product,
    character_modulus,
    dirichlet_character,
    grid_values,
    modify_character,
    values_at,
    with_prime_override,
)
from .pretentious import distance, drift_F, drift_G, drift_H, twisted

# primes beyond this are not summed in the "up to infinity" distance pieces
DEFAULT_TAIL_LIMIT = 10**7


@dataclass
class ConcentrationReport:
    kind: str
    params: dict
    lhs: float
    drift: complex
    bound_terms: dict
    bound_total: float
    ratio: float
    tail_limit: int | None = None
    flags: list = field(default_factory=list)

    def __post_init__(self):
        assert self.lhs >= 0 and self.bound_total > 0
        assert all(v >= 0 for v in self.bound_terms.values())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["drift"] = [self.drift.real, self.drift.imag]
        return d


def _radical_upto(K: int) -> int:
    return math.prod(int(p) for p in primes_upto(K))


def _mean_abs(z: np.ndarray) -> float:
    return math.fsum(np.abs(z).ravel()) / z.size


def _check_support(Q: int, K0: int):
    """Q must be a product of p^{a_p}, a_p >= 1, over exactly the primes p <= K0."""
    m = Q
    for p in primes_upto(K0).tolist():
        if m % p:
            raise InvalidArgument(f"Q={Q} is not divisible by the prime {p} <= K0={K0}")
        while m % p == 0:
            m //= p
    if m != 1:
        raise InvalidArgument(f"Q={Q} has a prime factor above K0={K0}")


def _linear_bound(f, chi, t, K, tail_limit):
    tail = max(tail_limit, K)
    terms = {
        "D(K,inf)": distance(f, twisted(chi, t), K, tail),
        "K^-1/2": K**-0.5,
    }
    return terms


def linear_concentration(f: MultFuncSpec, chi: MultFuncSpec, t: float, K: int, Q: int, N: int,
                         tail_limit: int = DEFAULT_TAIL_LIMIT) -> ConcentrationReport:
    """Mean over n <= N of |f(Qn+1) - (Qn)^{it} exp(F_N(f, K))|.

    Q must be divisible by the period q of chi and by every prime p <= K.
    """
    q = character_modulus(chi)
    need = math.lcm(q, _radical_upto(K))
    if K < 1 or Q % need:
        raise InvalidArgument(f"Q={Q} must be divisible by lcm(q, prod_(p<=K) p) = {need}")
    if N < 10:
        raise InvalidArgument("linear_concentration needs N >= 10")
    F = drift_F(f, chi, t, K, N) if K < N else 0j
    drift = cmath.exp(F)
    n = np.arange(1, N + 1, dtype=np.int64)
    fv = values_at(f, Q * n + 1)
    target = drift * (np.exp(1j * t * np.log((Q * n).astype(np.float64))) if t else 1.0)
    lhs = _mean_abs(fv - target)
    terms = _linear_bound(f, chi, t, K, tail_limit)
    total = math.fsum(terms.values())
    flags = ["drift_modulus_above_1.001"] if abs(drift) > 1.001 else []
    return ConcentrationReport("linear", dict(f=f.desc(), chi=chi.desc(), t=t, K=K, Q=Q, N=N),
                               lhs, drift, terms, total, lhs / total, max(tail_limit, K), flags)


def shifted_linear_concentration(f: MultFuncSpec, chi: MultFuncSpec, t: float, K: int, Q: int,
                                 l1: int, l2: int, N: int,
                                 tail_limit: int = DEFAULT_TAIL_LIMIT) -> ConcentrationReport:
    """(1/N^2) sum over m, n <= N with u = l1 m + l2 n >= 1 of |f(Qu+1) - (Qu)^{it} exp(F_{lN})|."""
    if (l1, l2) == (0, 0):
        raise InvalidArgument("(l1, l2) must not both vanish")
    q = character_modulus(chi)
    need = math.lcm(q, _radical_upto(K))
    if K < 1 or Q % need:
        raise InvalidArgument(f"Q={Q} must be divisible by lcm(q, prod_(p<=K) p) = {need}")
    if N < 10:
        raise InvalidArgument("shifted_linear_concentration needs N >= 10")
    ell = abs(l1) + abs(l2)
    F = drift_F(f, chi, t, K, ell * N) if K < ell * N else 0j
    drift = cmath.exp(F)
    # multiplicity of each u = l1 m + l2 n over the grid
    m = np.arange(1, N + 1, dtype=np.int64)
    u = (l1 * m[:, None] + l2 * m[None, :]).ravel()
    u = u[u >= 1]
    uniq, counts = np.unique(u, return_counts=True)
    fv = values_at(f, Q * uniq + 1)
    target = drift * (np.exp(1j * t * np.log((Q * uniq).astype(np.float64))) if t else 1.0)
    lhs = math.fsum(counts * np.abs(fv - target)) / (N * N)
    base = _linear_bound(f, chi, t, K, tail_limit)
    terms = {k: 2 * ell * v for k, v in base.items()}
    total = math.fsum(terms.values())
    flags = ["drift_modulus_above_1.001"] if abs(drift) > 1.001 else []
    return ConcentrationReport("shifted_linear",
                               dict(f=f.desc(), chi=chi.desc(), t=t, K=K, Q=Q, l1=l1, l2=l2, N=N),
                               lhs, drift, terms, total, lhs / total, max(tail_limit, K), flags)


def quadratic_concentration(f: MultFuncSpec, chi: MultFuncSpec, t: float, K0: int, Q: int,
                            a: int, b: int, N: int, workers: int = 1,
                            tail_limit: int = DEFAULT_TAIL_LIMIT) -> ConcentrationReport:
    """Mean over [N]^2 of |f(v) - chi(a^2+b^2) v^{it} exp(G_N(f, K0))|, v = (Qm+a)^2 + (Qn+b)^2."""
    _check_support(Q, K0)
    q = character_modulus(chi)
    if Q % q:
        raise InvalidArgument(f"period {q} of chi does not divide Q={Q}")
    if not (-Q <= a <= Q and -Q <= b <= Q):
        raise InvalidArgument("need -Q <= a, b <= Q")
    if math.gcd(a * a + b * b, Q) != 1:
        raise InvalidArgument(f"gcd(a^2+b^2, Q) = {math.gcd(a * a + b * b, Q)} != 1")
    sieve = grid(Q, a, b, N, workers)
    G = drift_G(f, chi, t, K0, N) if K0 < N else 0j
    drift = cmath.exp(G)
    chi_ab = complex(values_at(chi, [a * a + b * b])[0])
    fv = grid_values(f, sieve)
    target = chi_ab * drift
    if t:
        target = target * np.exp(1j * t * np.log(sieve.values.astype(np.float64)))
    lhs = _mean_abs(fv - target)

    g = twisted(chi, t)
    r = math.sqrt(N)
    d1_low = distance(f, g, K0, max(r, K0), restricted=True)
    tail = min(3 * Q * Q * N * N, tail_limit)
    terms = {
        "(D1+D1^2)(K0,sqrtN)": d1_low + d1_low**2,
        "Q^2*D1(N,3Q^2N^2)": Q * Q * distance(f, g, N, max(tail, N), restricted=True),
        "Q*D1(sqrtN,N)": Q * distance(f, g, r, N, restricted=True),
        "K0^-1/2": K0**-0.5,
    }
    total = math.fsum(terms.values())
    flags = []
    if N < Q * Q:
        flags.append("N_below_Q^2_untrusted")
    if abs(drift) > 1.001:
        flags.append("drift_modulus_above_1.001")
    if tail < 3 * Q * Q * N * N:
        flags.append("tail_truncated")
    return ConcentrationReport("quadratic",
                               dict(f=f.desc(), chi=chi.desc(), t=t, K0=K0, Q=Q, a=a, b=b, N=N),
                               lhs, drift, terms, total, lhs / total, tail, flags)


# ---------------------------------------------------------------------------
# additive functions


@dataclass
class TKReport:
    variance_lhs: float
    H_N: complex
    exact_mean_check: float
    full_mean_check: float
    bound_terms: dict
    bound_total: float
    ratio: float
    params: dict

    def to_dict(self) -> dict:
        d = asdict(self)
        d["H_N"] = [self.H_N.real, self.H_N.imag]
        return d


def _check_admissible(h: AddFuncSpec, K0: int, N: int):
    for (p, k), z in h._map.items():
        if z == 0:
            continue
        if k >= 2:
            raise InvalidArgument(f"h(p^k) must vanish for k >= 2; h({p}^{k}) = {z}")
        if p <= K0 or p > N:
            raise InvalidArgument(f"h({p}) must vanish for p <= K0={K0} and p > N={N}")
        if p % 4 == 3:
            raise InvalidArgument(f"h({p}) must vanish for p = 3 mod 4")
        if abs(z) > 1 + 1e-12:
            raise InvalidArgument(f"|h({p})| = {abs(z)} exceeds 1")


def exact_fraction(sieve: GridFactorSieve, p: int) -> float:
    """Fraction of grid cells with p || v(m, n), read from the sieve exponents."""
    hit = (sieve.primes == p) & (sieve.exponents == 1)
    return int(np.count_nonzero(hit)) / (sieve.N * sieve.N)


def h_sq_distance(h: AddFuncSpec, x: float, y: float) -> float:
    return math.fsum(abs(h.at(p, 1)) ** 2 / p for p in h.primes() if x < p <= y)


def mean_identity_gap(h: AddFuncSpec, sieve: GridFactorSieve) -> float:
    """|E h(v) - sum_p h(p) w(p)| with w(p) the fraction of cells where p || v.

    The left side is summed cell by cell, the right side prime by prime.
    """
    hv = h.grid_values(sieve).ravel()
    lhs = complex(math.fsum(hv.real), math.fsum(hv.imag)) / hv.size
    re, im = [], []
    for p in h.primes():
        z = h.at(p, 1) * exact_fraction(sieve, p)
        re.append(z.real)
        im.append(z.imag)
    return abs(lhs - complex(math.fsum(re), math.fsum(im)))


def tk_additive(h: AddFuncSpec, K0: int, Q: int, a: int, b: int, N: int, workers: int = 1) -> TKReport:
    _check_support(Q, K0)
    _check_admissible(h, K0, N)
    if not (-Q <= a <= Q and -Q <= b <= Q):
        raise InvalidArgument("need -Q <= a, b <= Q")
    sieve = grid(Q, a, b, N, workers)
    H = drift_H(h, K0, N) if K0 < N else 0j
    hv = h.grid_values(sieve)
    var = math.fsum((np.abs(hv - H) ** 2).ravel()) / hv.size
    r = math.sqrt(N)
    h1 = h.restrict(lambda p: p <= r)
    terms = {
        "D^2(h;K0,sqrtN)": h_sq_distance(h, K0, r),
        "Q^2*D^2(h;sqrtN,N)": Q * Q * h_sq_distance(h, r, N),
        "1/K0": 1.0 / K0,
    }
    total = math.fsum(terms.values())
    return TKReport(var, H, mean_identity_gap(h1, sieve), mean_identity_gap(h, sieve), terms, total,
                    var / total, dict(h=h.desc(), K0=K0, Q=Q, a=a, b=b, N=N))


# ---------------------------------------------------------------------------
# randomized perturbation suite

SUITE_MODULI = (3, 5, 7, 13)


def _perturb(chi: MultFuncSpec, K: int, rng: np.random.Generator) -> MultFuncSpec:
    """chi~ with one to three primes in (K, 100] moved to random points of the circle."""
    choices = [int(p) for p in primes_upto(100) if p > K]
    ps = rng.choice(choices, size=int(rng.integers(1, 4)), replace=False)
    return with_prime_override(modify_character(chi), {int(p): cmath.exp(2j * math.pi * rng.random()) for p in ps})


def perturbation_suite(seed: int = 0, size: int = 30, N_linear: int = 1000, N_quadratic: int = 100,
                       workers: int = 1, tail_limit: int = 10**6) -> list[ConcentrationReport]:
    """Linear and quadratic harness runs on random finite perturbations of characters.

    Every third instance is quadratic; every other linear instance carries a
    random twist t in [-1, 1].  The suite constant is the largest ratio.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(size):
        q = int(rng.choice(SUITE_MODULI))
        chi = dirichlet_character(q, int(rng.integers(0, q - 1)))
        if i % 3 == 2:
            K0 = q if q > 3 else 5
            Q = _radical_upto(K0) * int(rng.choice((1, 2, 3)))
            f = _perturb(chi, K0, rng)
            while True:
                a, b = (int(x) for x in rng.integers(-Q, Q + 1, size=2))
                if math.gcd(a * a + b * b, Q) == 1:
                    break
            out.append(quadratic_concentration(f, chi, 0.0, K0, Q, a, b, N_quadratic, workers, tail_limit))
        else:
            K = int(rng.choice([p for p in (3, 5, 7, 11, 13) if p >= q]))
            Q = math.lcm(q, _radical_upto(K))
            f = _perturb(chi, K, rng)
            t = float(rng.uniform(-1, 1)) if i % 2 else 0.0
            if t:
                f = Product((f, Archimedean(t)))
            out.append(linear_concentration(f, chi, t, K, Q, N_linear, tail_limit))
    return out
