"""Weighted Type I / Type II pair averages, Folner averaging over Q, the
Q-stability diagnostic and the logarithmic n(n+1) vs m^2 correlation.

Arguments such as l((Qm+1)^2 - (Qn)^2) are never formed as one integer when a
product split is available: complete multiplicativity gives

    f(l((Qm+1)^2 - (Qn)^2)) = f(l) f(Q(m-n)+1) f(Q(m+n)+1)
    f(l'(Qm+1)Qn)          = f(l') f(Qm+1) f(Q) f(n)

so every grid cell reads from a few vectors of length <= 2N.  The elliptic
first argument has no such split and is read from the grid sieve.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidArgument, ResourceLimit
from .factor_engine import GRID_VALUE_LIMIT, grid
from .multfunc import MultFuncSpec, grid_values, values_at
from .weights import WeightConfig, folner_set, weight_grid

CSV_HEADER = "kind,f,Q,ell,ell_prime,delta,N,value_re,value_im,weight_mass"
INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class PairAverageReport:
    kind: str
    f_desc: str
    Q: int
    N: int
    cfg: WeightConfig
    value: complex
    weight_mass: float
    runtime_cells: int

    def __post_init__(self):
        assert abs(self.value) <= self.weight_mass + 1e-9 and self.weight_mass <= 1 + 1e-12

    def to_dict(self) -> dict:
        d = asdict(self)
        d["value"] = [self.value.real, self.value.imag]
        return d

    def csv_row(self) -> str:
        c = self.cfg
        return (f"{self.kind},{self.f_desc},{self.Q},{c.ell},{c.ell_prime},{c.delta!r},{self.N},"
                f"{self.value.real!r},{self.value.imag!r},{self.weight_mass!r}")


def _ints(values: list[int] | np.ndarray):
    """int64 array when safe, else an object array of Python ints."""
    arr = np.asarray(values, dtype=object)
    if arr.size and max(int(x) for x in arr.ravel()) > INT64_MAX:
        return arr
    return arr.astype(np.int64)


def _linear(Q: int, lo: int, hi: int) -> np.ndarray:
    """Q*k + 1 for lo <= k <= hi."""
    if Q * hi + 1 <= INT64_MAX:
        return Q * np.arange(lo, hi + 1, dtype=np.int64) + 1
    return np.array([Q * k + 1 for k in range(lo, hi + 1)], dtype=object)


def _fsum_complex(z: np.ndarray) -> complex:
    z = z.ravel()
    return complex(math.fsum(z.real), math.fsum(z.imag))


def _f1(f: MultFuncSpec, n: int) -> complex:
    return complex(values_at(f, _ints([n]))[0])


def _second_factor(f: MultFuncSpec, Q: int, N: int, ell_prime: int, with_Q: bool) -> np.ndarray:
    """conj f(l'(Qm+1) Q n) (with_Q) or conj f(l'(Qm+1) n), as an (N, N) grid."""
    fm = values_at(f, _linear(Q, 1, N))
    fn = values_at(f, np.arange(1, N + 1, dtype=np.int64))
    c = _f1(f, ell_prime) * (_f1(f, Q) if with_Q else 1.0)
    return np.conj(c * fm[:, None] * fn[None, :])


def _report(kind, f, Q, N, cfg, w, prod) -> PairAverageReport:
    mass = math.fsum(w.ravel()) / (N * N)
    value = _fsum_complex(w * prod) / (N * N)
    return PairAverageReport(kind, f.desc(), Q, N, cfg, value, mass, N * N)


def typeI_average(f: MultFuncSpec, Q: int, cfg: WeightConfig, N: int, workers: int = 1) -> PairAverageReport:
    """(1/N^2) sum of w(m,n) f(l((Qm+1)^2 - (Qn)^2)) conj f(l'(Qm+1)Qn)."""
    if cfg.kind != "hyperbolic":
        raise InvalidArgument("typeI_average needs a hyperbolic weight config")
    if Q < 1 or N < 10:
        raise InvalidArgument("typeI_average needs Q >= 1 and N >= 10")
    w = weight_grid(cfg, N)
    # (Qm+1)^2 - (Qn)^2 = (Q(m-n)+1)(Q(m+n)+1); only m > n carries weight
    fd = values_at(f, _linear(Q, 1, N - 1))
    fs = values_at(f, _linear(Q, 2, 2 * N))
    m = np.arange(1, N + 1)[:, None]
    n = np.arange(1, N + 1)[None, :]
    diff = np.clip(m - n, 1, N - 1) - 1
    first = _f1(f, cfg.ell) * fd[diff] * fs[(m + n) - 2]
    prod = np.where(m > n, first, 0) * _second_factor(f, Q, N, cfg.ell_prime, True)
    return _report("typeI", f, Q, N, cfg, w, prod)


def _elliptic_first(f: MultFuncSpec, Q: int, N: int, workers: int) -> np.ndarray:
    """f((Qm+1)^2 + (Qn)^2) on [N]^2."""
    vmax = (Q * N + 1) ** 2 + (Q * N) ** 2
    if f.residue_evaluable:
        if vmax <= INT64_MAX:
            x = Q * np.arange(1, N + 1, dtype=np.int64) + 1
            y = Q * np.arange(1, N + 1, dtype=np.int64)
            return values_at(f, x[:, None] ** 2 + y[None, :] ** 2)
        vals = np.array([[(Q * i + 1) ** 2 + (Q * j) ** 2 for j in range(1, N + 1)]
                         for i in range(1, N + 1)], dtype=object)
        return values_at(f, vals)
    if vmax >= GRID_VALUE_LIMIT:
        raise ResourceLimit(f"(QN+1)^2 + (QN)^2 = {vmax} is beyond the grid sieve range")
    return grid_values(f, grid(Q, 1, 0, N, workers))


def typeII_average(f: MultFuncSpec, Q: int, cfg: WeightConfig, N: int, workers: int = 1) -> PairAverageReport:
    """(1/N^2) sum of w~(m,n) f(l((Qm+1)^2 + (Qn)^2)) conj f(l'(Qm+1)Qn)."""
    if cfg.kind != "elliptic":
        raise InvalidArgument("typeII_average needs an elliptic weight config")
    if Q < 1 or N < 10:
        raise InvalidArgument("typeII_average needs Q >= 1 and N >= 10")
    w = weight_grid(cfg, N)
    first = _f1(f, cfg.ell) * _elliptic_first(f, Q, N, workers)
    prod = first * _second_factor(f, Q, N, cfg.ell_prime, True)
    return _report("typeII", f, Q, N, cfg, w, prod)


def _folner_Qs(K: int) -> list[int]:
    qs = folner_set(K).integers()
    if max(qs) > INT64_MAX:
        raise ResourceLimit(f"elements of Phi_{K} exceed 63 bits")
    return qs


def folner_q_average(f: MultFuncSpec, cfg: WeightConfig, K: int, N: int, kind: str = "typeI",
                     workers: int = 1) -> complex:
    """Mean over Q in Phi_K of the Type I or Type II average at fixed N."""
    if kind not in ("typeI", "typeII"):
        raise InvalidArgument(f"kind must be typeI or typeII; got {kind!r}")
    avg = typeI_average if kind == "typeI" else typeII_average
    vals = [avg(f, Q, cfg, N, workers).value for Q in _folner_Qs(K)]
    return _fsum_complex(np.array(vals)) / len(vals)


@dataclass(frozen=True)
class QStabilityReport:
    value: float
    L: dict
    argmax: tuple
    params: dict

    def to_dict(self) -> dict:
        d = asdict(self)
        d["L"] = {str(k): [v.real, v.imag] for k, v in self.L.items()}
        return d


def q_stability_values(f: MultFuncSpec, t: float, cfg: WeightConfig, Q: int, N: int,
                       workers: int = 1) -> complex:
    """Q^{-it} (1/N^2) sum of w~(m,n) f(l((Qm+1)^2 + (Qn)^2)) conj f(l'(Qm+1) n)."""
    w = weight_grid(cfg, N)
    first = _f1(f, cfg.ell) * _elliptic_first(f, Q, N, workers)
    prod = first * _second_factor(f, Q, N, cfg.ell_prime, False)
    return complex(np.exp(-1j * t * math.log(Q))) * _fsum_complex(w * prod) / (N * N)


def q_stability(f: MultFuncSpec, chi: MultFuncSpec, t: float, cfg: WeightConfig, K: int, N: int,
                workers: int = 1) -> QStabilityReport:
    """max over Q, Q' in Phi_K of |L~(Q) - L~(Q')|.

    ``chi`` is the pretentious target; it is recorded but the quantity itself
    depends only on f and t.
    """
    if cfg.kind != "elliptic":
        raise InvalidArgument("q_stability needs an elliptic weight config")
    if N < 10:
        raise InvalidArgument("q_stability needs N >= 10")
    qs = _folner_Qs(K)
    L = {Q: q_stability_values(f, t, cfg, Q, N, workers) for Q in qs}
    best, arg = 0.0, (qs[0], qs[0])
    for i, Q in enumerate(qs):
        for Q2 in qs[i + 1:]:
            d = abs(L[Q] - L[Q2])
            if d > best:
                best, arg = d, (Q, Q2)
    return QStabilityReport(best, L, arg, dict(f=f.desc(), chi=chi.desc(), t=t, K=K, N=N,
                                               ell=cfg.ell, ell_prime=cfg.ell_prime, delta=cfg.delta))


def dlms_log_average(f: MultFuncSpec, N: int) -> complex:
    """sum f(n(n+1)) conj f(m^2) / (mn) over m, n <= N, divided by sum 1/(mn).

    The double sum factors: f(n(n+1)) = f(n) f(n+1) and f(m^2) = f(m)^2.
    """
    if N < 10:
        raise InvalidArgument("dlms_log_average needs N >= 10")
    v = values_at(f, np.arange(1, N + 2, dtype=np.int64))
    inv = 1.0 / np.arange(1, N + 1, dtype=np.float64)
    s1 = _fsum_complex(v[:-1] * v[1:] * inv)
    s2 = _fsum_complex(np.conj(v[:-1]) ** 2 * inv)
    H = math.fsum(inv)
    return s1 * s2 / (H * H)
