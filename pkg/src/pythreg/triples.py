"""Parametric Pythagorean triples, level-set searches and the finite
triple-density average over a Folner set of dilations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, ResourceLimit
from .multfunc import MultFuncSpec, turn_of, values_at
from .weights import folner_set, folner_values

SEARCH_BOUND_LIMIT = 10**7
CSV_HEADER = "k,m,n,x,y,z,f_x,f_y,f_z"
TOL = 1e-9


@dataclass(frozen=True)
class TripleHit:
    k: int
    m: int
    n: int
    x: int
    y: int
    z: int
    certificate: tuple[complex, complex, complex] = (1, 1, 1)

    def csv_row(self) -> str:
        c = ",".join(_fmt_unit(v) for v in self.certificate)
        return f"{self.k},{self.m},{self.n},{self.x},{self.y},{self.z},{c}"


def _fmt_unit(z: complex) -> str:
    z = complex(z)
    re = 0.0 if abs(z.real) < 1e-12 else z.real
    im = 0.0 if abs(z.imag) < 1e-12 else z.imag
    return f"{re:.12g}" if im == 0 else f"{re:.12g}{im:+.12g}j"


def parametric_triple(k: int, m: int, n: int, ell1: int = 1, ell2: int = 2, ell3: int = 1) -> tuple[int, int, int]:
    """(k l1 (m^2 - n^2), k l2 m n, k l3 (m^2 + n^2))."""
    if not (m > n >= 1 and k >= 1):
        raise InvalidArgument(f"need m > n >= 1 and k >= 1; got k={k}, m={m}, n={n}")
    return k * ell1 * (m * m - n * n), k * ell2 * m * n, k * ell3 * (m * m + n * n)


def form_coefficients(ell1: int, ell2: int, ell3: int) -> tuple[int, int, int]:
    """(a, b, c) with a x^2 + b y^2 = c z^2 for every parametric triple, reduced."""
    a, b, c = (ell2 * ell3) ** 2, 4 * (ell1 * ell3) ** 2, (ell1 * ell2) ** 2
    g = math.gcd(a, math.gcd(b, c))
    return a // g, b // g, c // g


def _mn_pairs(zmax: int, primitive: bool) -> tuple[np.ndarray, np.ndarray]:
    """(m, n), m > n >= 1, m^2 + n^2 <= zmax, coprime (and opposite parity if primitive)."""
    top = math.isqrt(zmax)
    m = np.repeat(np.arange(2, top + 1, dtype=np.int64), np.arange(1, top))
    n = np.concatenate([np.arange(1, k, dtype=np.int64) for k in range(2, top + 1)]) if top >= 2 else m
    keep = (m * m + n * n <= zmax) & (np.gcd(m, n) == 1)
    if primitive:
        keep &= (m - n) % 2 == 1
    return m[keep], n[keep]


@dataclass(frozen=True)
class TripleSearch:
    hits: list
    dropped_degenerate: int
    coefficients: tuple[int, int, int]


def enumerate_triples(bound: int, ells: tuple[int, int, int] = (1, 2, 1)):
    """All parametric (k, m, n, x, y, z) with z <= bound, as parallel arrays.

    For the default coefficients each Pythagorean triple appears once, with the
    legs reported as x < y.  Other coefficient choices walk every coprime
    (m, n); repeated (x, y, z) keep the smallest k and triples with two equal
    entries are dropped and counted.
    """
    l1, l2, l3 = ells
    pyth = ells == (1, 2, 1)
    m, n = _mn_pairs(bound // l3, primitive=pyth)
    z0 = l3 * (m * m + n * n)
    reps = bound // z0
    starts = np.repeat(np.cumsum(reps) - reps, reps)
    k = np.arange(starts.size, dtype=np.int64) - starts + 1
    m = np.repeat(m, reps)
    n = np.repeat(n, reps)
    x = k * l1 * (m * m - n * n)
    y = k * l2 * m * n
    z = k * l3 * (m * m + n * n)
    dropped = 0
    if pyth:
        x, y = np.minimum(x, y), np.maximum(x, y)
    else:
        ok = (x != y) & (y != z) & (x != z)
        dropped = int(np.count_nonzero(~ok))
        k, m, n, x, y, z = (a[ok] for a in (k, m, n, x, y, z))
        order = np.lexsort((k, y, x, z))
        k, m, n, x, y, z = (a[order] for a in (k, m, n, x, y, z))
        first = np.ones(z.size, dtype=bool)
        first[1:] = (z[1:] != z[:-1]) | (x[1:] != x[:-1]) | (y[1:] != y[:-1])
        k, m, n, x, y, z = (a[first] for a in (k, m, n, x, y, z))
    order = np.lexsort((y, x, z))
    return tuple(a[order] for a in (k, m, n, x, y, z)), dropped


def search_level_set_triples(f: MultFuncSpec, bound: int, ells: tuple[int, int, int] = (1, 2, 1),
                             d: int | None = None) -> TripleSearch:
    """Triples with z <= bound and f(x) = f(y) = f(z) = 1, ordered by z then x."""
    if bound < 1:
        raise InvalidArgument("bound must be >= 1")
    if bound > SEARCH_BOUND_LIMIT:
        raise ResourceLimit(f"bound {bound} above {SEARCH_BOUND_LIMIT}")
    if not f.circle_valued:
        raise InvalidArgument("level-set searches need a circle-valued f")
    (k, m, n, x, y, z), dropped = enumerate_triples(bound, tuple(ells))
    top = int(max(z.max(), x.max(), y.max())) if z.size else 1
    fv = values_at(f, np.arange(1, top + 1, dtype=np.int64))
    if d is not None and np.any(np.abs(fv**d - 1) > TOL):
        raise InvalidArgument(f"{f.desc()} is not d-th-root-valued (d={d})")
    one = np.abs(fv - 1) <= TOL
    ok = one[x - 1] & one[y - 1] & one[z - 1]
    hits = [TripleHit(int(a), int(b), int(c), int(p), int(q), int(r), (fv[p - 1], fv[q - 1], fv[r - 1]))
            for a, b, c, p, q, r in zip(k[ok], m[ok], n[ok], x[ok], y[ok], z[ok])]
    return TripleSearch(hits, dropped, form_coefficients(*ells))


# ---------------------------------------------------------------------------
# colorings and pair searches


@dataclass(frozen=True, eq=False)
class ColoringSpec:
    """Colors of 1..N; ``colors[i]`` is the color of i + 1."""

    colors: np.ndarray
    label: str = "table"

    @property
    def N(self) -> int:
        return int(self.colors.size)

    @classmethod
    def from_table(cls, colors) -> "ColoringSpec":
        return cls(np.asarray(colors, dtype=np.int64), "table")

    @classmethod
    def level_sets(cls, f: MultFuncSpec, N: int) -> "ColoringSpec":
        """Color = index of the value f(n) among the distinct values met (rounded to 1e-9)."""
        v = values_at(f, np.arange(1, N + 1, dtype=np.int64))
        key = np.round(v.real * 1e9).astype(np.int64) * (1 << 32) + np.round(v.imag * 1e9).astype(np.int64)
        _, colors = np.unique(key, return_inverse=True)
        return cls(colors.astype(np.int64), f.desc())

    @classmethod
    def single(cls, N: int) -> "ColoringSpec":
        return cls(np.zeros(N, dtype=np.int64), "single")


def search_monochromatic_pairs(coloring: ColoringSpec, N: int, kind: str = "xy") -> list[tuple[int, int, int]]:
    """Monochromatic Pythagorean pairs inside [N].

    kind "xy": (x, y, z) with legs x < y of the same color, witness z <= N.
    kind "yz": (y, z, x) with leg y and hypotenuse z <= N of the same color, x the witness.
    Sorted by the largest entry, then the smallest.
    """
    if coloring.N < N:
        raise InvalidArgument(f"coloring covers [1, {coloring.N}] but N={N}")
    if kind not in ("xy", "yz"):
        raise InvalidArgument(f"kind must be xy or yz; got {kind!r}")
    col = coloring.colors
    out = []
    if kind == "xy":
        (_, _, _, x, y, z), _ = enumerate_triples(N)
        same = col[x - 1] == col[y - 1]
        out = [(int(a), int(b), int(c)) for a, b, c in zip(x[same], y[same], z[same])]
        out.sort(key=lambda t: (t[1], t[0], t[2]))
    else:
        if N >= 5:
            (_, _, _, x, y, z), _ = enumerate_triples(N)
            for leg, other in ((x, y), (y, x)):
                same = col[leg - 1] == col[z - 1]
                out += [(int(a), int(b), int(c)) for a, b, c in zip(leg[same], z[same], other[same])]
        out.sort(key=lambda t: (t[1], t[0], t[2]))
    return out


# ---------------------------------------------------------------------------
# triple density


def root_index(v: np.ndarray, d: int) -> np.ndarray:
    """j with v = e(j/d), checked to 1e-9."""
    j = np.round(np.asarray(turn_of(v)) * d).astype(np.int64) % d
    if np.any(np.abs(v - np.exp(2j * np.pi * j / d)) > TOL):
        raise InvalidArgument(f"values are not {d}-th roots of unity")
    return j


def triple_density(f: MultFuncSpec, d: int, N: int, K: int) -> float:
    """Mean over m > n in [N] and k in Phi_K of 1[f = 1 at k(m^2-n^2), 2kmn, k(m^2+n^2)].

    f(k u) = f(k) f(u), so with f = e(j/d) the indicator is j_k + j_u = 0 (mod d)
    for all three u; only the distribution of j_k over Phi_K is needed.
    """
    if d < 1 or N < 2:
        raise InvalidArgument("triple_density needs d >= 1 and N >= 2")
    if f.twist:
        raise InvalidArgument("a finite-valued f cannot carry an Archimedean twist")
    jk = root_index(folner_values(f, folner_set(K)), d)
    share = np.bincount(jk, minlength=d) / jk.size
    m = np.repeat(np.arange(2, N + 1, dtype=np.int64), np.arange(1, N))
    n = np.concatenate([np.arange(1, k, dtype=np.int64) for k in range(2, N + 1)])
    ja = root_index(values_at(f, m * m - n * n), d)
    jb = root_index(values_at(f, 2 * m * n), d)
    jc = root_index(values_at(f, m * m + n * n), d)
    same = (ja == jb) & (jb == jc)
    contrib = share[(-ja[same]) % d]
    return math.fsum(contrib) / m.size
