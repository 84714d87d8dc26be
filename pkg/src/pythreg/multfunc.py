"""Completely multiplicative functions into the closed unit disk.

A function is a small immutable expression tree.  Every node splits its value
at n into a *prime part*, a product over p^e || n of per-prime values, and a
*twist* n^{iT} evaluated from the integer n itself (Archimedean leaves only
contribute to T).  Nodes whose prime part depends only on residues (characters
and their products/powers/conjugates) can also be evaluated without factoring,
which is what lets huge arguments through.

Mini-language (prefix, whitespace separated)::

    one | liouville | char q j | modchar q j | arch t | table PATH
    prod A B | pow A j | conj A | root A d
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidArgument, ResourceLimit, Unsupported
from .factor_engine import (
    Factorization,
    GridFactorSieve,
    factor_many,
    is_prime,
    TRIAL_DIVISION_LIMIT,
)

TOL = 1e-9
INT64_MAX = 2**63 - 1


def unit_close(z: complex, w: complex, tol: float = TOL) -> bool:
    return abs(complex(z) - complex(w)) <= tol


def turn_of(z) -> np.ndarray | float:
    """Angle of z in turns, reduced to [-1/2, 1/2)."""
    th = np.angle(z) / (2 * np.pi)
    th = np.where(np.abs(th - 0.5) < 1e-12, -0.5, th)
    th = np.where(th >= 0.5, th - 1.0, th)
    return th if np.ndim(th) else float(th)


def root_of_unity(num: int, den: int) -> complex:
    """e(num/den) with exact values at quarter turns."""
    r = num % den
    if (4 * r) % den == 0:
        return (1, 1j, -1, -1j)[4 * r // den]
    return cmath.exp(2j * math.pi * r / den)


def _as_int_array(ns) -> np.ndarray:
    if isinstance(ns, np.ndarray) and ns.dtype != object:
        arr = ns.astype(np.int64, copy=False)
        if arr.size and arr.min() < 1:
            raise InvalidArgument("multiplicative functions are evaluated only at n >= 1")
        return arr
    vals = [int(x) for x in np.ravel(np.asarray(ns, dtype=object))]
    if vals and min(vals) < 1:
        raise InvalidArgument("multiplicative functions are evaluated only at n >= 1")
    if vals and max(vals) > INT64_MAX:
        return np.array(vals, dtype=object).reshape(np.shape(ns))
    return np.array(vals, dtype=np.int64).reshape(np.shape(ns))


# ---------------------------------------------------------------------------
# expression nodes


class MultFuncSpec:
    """Base class; subclasses are frozen dataclasses."""

    def prime_values(self, ps: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def twist(self) -> float:
        return 0.0

    @property
    def residue_evaluable(self) -> bool:
        return False

    def residue_values(self, ns: np.ndarray) -> np.ndarray:
        raise Unsupported(f"{self.desc()} needs factorizations")

    @property
    def circle_valued(self) -> bool:
        return True

    def desc(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.desc()

    # convenience
    def __call__(self, n: int) -> complex:
        return complex(values_at(self, np.array([n], dtype=object))[0])


@dataclass(frozen=True)
class One(MultFuncSpec):
    def prime_values(self, ps):
        return np.ones(np.shape(ps), dtype=np.complex128)

    @property
    def residue_evaluable(self):
        return True

    def residue_values(self, ns):
        return np.ones(np.shape(ns), dtype=np.complex128)

    def desc(self):
        return "one"


@dataclass(frozen=True)
class DirichletCharacter(MultFuncSpec):
    q: int
    table: tuple[complex, ...]
    label: str = ""

    def __post_init__(self):
        q = self.q
        if q < 1 or len(self.table) != q:
            raise InvalidArgument("character table must have exactly q entries")
        for r, z in enumerate(self.table):
            z = complex(z)
            if math.gcd(r, q) != 1:
                if z != 0:
                    raise InvalidArgument(f"character value at non-unit residue {r} must be 0")
            elif abs(abs(z) - 1) > TOL:
                raise InvalidArgument(f"character value at unit residue {r} is not on the circle")
        if q <= 2000:
            t = np.array(self.table, dtype=np.complex128)
            r = np.arange(q)
            prod = (r[:, None] * r[None, :]) % q
            if np.max(np.abs(t[:, None] * t[None, :] - t[prod])) > 1e-9:
                raise InvalidArgument("character table is not multiplicative mod q")
        object.__setattr__(self, "_arr", np.array(self.table, dtype=np.complex128))

    def prime_values(self, ps):
        return self._arr[np.asarray(ps, dtype=np.int64) % self.q]

    @property
    def residue_evaluable(self):
        return True

    def residue_values(self, ns):
        res = np.asarray(ns % self.q).astype(np.int64)
        return self._arr[res]

    @property
    def circle_valued(self):
        return self.q == 1

    def desc(self):
        return self.label or f"char {self.q} <table>"


@dataclass(frozen=True)
class ModifiedCharacter(MultFuncSpec):
    chi: DirichletCharacter

    def prime_values(self, ps):
        v = self.chi.prime_values(ps)
        return np.where(v == 0, 1.0 + 0j, v)

    @property
    def residue_evaluable(self):
        return True

    def residue_values(self, ns):
        # p | q contributes 1, so strip every prime factor of q first
        ns = np.array(ns, copy=True)
        for p in _prime_divisors(self.chi.q):
            while True:
                hit = ns % p == 0
                if not np.any(hit):
                    break
                ns[hit] //= p
        return self.chi.residue_values(ns)

    def desc(self):
        d = self.chi.desc()
        return "mod" + d if d.startswith("char ") else f"modify {d}"


@dataclass(frozen=True)
class Archimedean(MultFuncSpec):
    t: float

    def prime_values(self, ps):
        return np.ones(np.shape(ps), dtype=np.complex128)

    @property
    def twist(self):
        return float(self.t)

    @property
    def residue_evaluable(self):
        return True

    def residue_values(self, ns):
        return np.ones(np.shape(ns), dtype=np.complex128)

    def desc(self):
        return f"arch {self.t!r}"


@dataclass(frozen=True)
class Liouville(MultFuncSpec):
    def prime_values(self, ps):
        return -np.ones(np.shape(ps), dtype=np.complex128)

    def desc(self):
        return "liouville"


@dataclass(frozen=True)
class PrimeTable(MultFuncSpec):
    values: tuple[tuple[int, complex], ...]
    default: complex = 1.0
    label: str = ""

    def __post_init__(self):
        for p, z in self.values:
            if not is_prime(p):
                raise InvalidArgument(f"prime table key {p} is not prime")
            if abs(z) > 1 + TOL:
                raise InvalidArgument(f"value {z} at {p} is outside the unit disk")
        if abs(self.default) > 1 + TOL:
            raise InvalidArgument("default value is outside the unit disk")
        object.__setattr__(self, "_map", {int(p): complex(z) for p, z in self.values})

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, complex], default: complex = 1.0, label: str = ""):
        return cls(tuple(sorted((int(p), complex(z)) for p, z in mapping.items())), complex(default), label)

    def prime_values(self, ps):
        ps = np.asarray(ps, dtype=np.int64)
        out = np.full(ps.shape, complex(self.default), dtype=np.complex128)
        if self._map:
            keys = np.fromiter(self._map.keys(), dtype=np.int64)
            vals = np.fromiter(self._map.values(), dtype=np.complex128)
            order = np.argsort(keys)
            keys, vals = keys[order], vals[order]
            idx = np.searchsorted(keys, ps)
            idx = np.minimum(idx, keys.size - 1)
            hit = keys[idx] == ps
            out[hit] = vals[idx[hit]]
        return out

    @property
    def circle_valued(self):
        vals = list(self._map.values()) + [complex(self.default)]
        return all(abs(abs(z) - 1) <= TOL for z in vals)

    def desc(self):
        return self.label or f"table <{len(self.values)} primes>"


@dataclass(frozen=True)
class Product(MultFuncSpec):
    factors: tuple[MultFuncSpec, ...]

    def prime_values(self, ps):
        out = np.ones(np.shape(ps), dtype=np.complex128)
        for f in self.factors:
            out = out * f.prime_values(ps)
        return out

    @property
    def twist(self):
        return float(sum(f.twist for f in self.factors))

    @property
    def residue_evaluable(self):
        return all(f.residue_evaluable for f in self.factors)

    def residue_values(self, ns):
        out = np.ones(np.shape(ns), dtype=np.complex128)
        for f in self.factors:
            out = out * f.residue_values(ns)
        return out

    @property
    def circle_valued(self):
        return all(f.circle_valued for f in self.factors)

    def desc(self):
        out = self.factors[-1].desc()
        for f in reversed(self.factors[:-1]):
            out = f"prod {f.desc()} {out}"
        return out


@dataclass(frozen=True)
class Power(MultFuncSpec):
    base: MultFuncSpec
    j: int

    def __post_init__(self):
        if self.j < 0 and not self.base.circle_valued:
            raise InvalidArgument("negative powers need a circle-valued base")

    def prime_values(self, ps):
        v = self.base.prime_values(ps)
        return _int_power(v, self.j)

    @property
    def twist(self):
        return self.j * self.base.twist

    @property
    def residue_evaluable(self):
        return self.base.residue_evaluable

    def residue_values(self, ns):
        return _int_power(self.base.residue_values(ns), self.j)

    @property
    def circle_valued(self):
        return self.base.circle_valued or self.j == 0

    def desc(self):
        return f"pow {self.base.desc()} {self.j}"


@dataclass(frozen=True)
class Conjugate(MultFuncSpec):
    base: MultFuncSpec

    def prime_values(self, ps):
        return np.conj(self.base.prime_values(ps))

    @property
    def twist(self):
        return -self.base.twist

    @property
    def residue_evaluable(self):
        return self.base.residue_evaluable

    def residue_values(self, ns):
        return np.conj(self.base.residue_values(ns))

    @property
    def circle_valued(self):
        return self.base.circle_valued

    def desc(self):
        return f"conj {self.base.desc()}"


@dataclass(frozen=True)
class DthRoot(MultFuncSpec):
    """g(p) = e(theta_p / d) where base(p) = e(theta_p), theta_p in [-1/2, 1/2).

    The Archimedean part of the base is folded into theta_p, so g carries no
    separate twist.
    """

    base: MultFuncSpec
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise InvalidArgument("root degree must be >= 1")
        if not self.base.circle_valued:
            raise InvalidArgument(f"{self.base.desc()} can vanish at a prime; no d-th root")

    def prime_values(self, ps):
        ps = np.asarray(ps, dtype=np.int64)
        v = self.base.prime_values(ps)
        t = self.base.twist
        if t:
            v = v * np.exp(1j * t * np.log(ps.astype(np.float64)))
        th = turn_of(v)
        return np.exp(2j * np.pi * np.asarray(th) / self.d)

    def desc(self):
        return f"root {self.base.desc()} {self.d}"


def _int_power(v: np.ndarray, j: int) -> np.ndarray:
    if j >= 0:
        return v**j
    return np.conj(v) ** (-j)


def _prime_divisors(q: int) -> list[int]:
    out, m, p = [], q, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# constructors


def primitive_root(q: int) -> int:
    if not is_prime(q):
        raise Unsupported(f"primitive roots only for prime moduli; got {q}")
    if q == 2:
        return 1
    fs = _prime_divisors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // r, q) != 1 for r in fs):
            return g
    raise AssertionError("unreachable")


def dirichlet_character(q: int, j: int) -> DirichletCharacter:
    """chi(g^k) = e(jk/(q-1)) for the least primitive root g mod prime q."""
    if q < 2 or not is_prime(q):
        raise Unsupported(f"dirichlet_character needs a prime modulus; got {q}")
    table = [0j] * q
    g = primitive_root(q)
    x = 1
    for k in range(q - 1):
        table[x] = complex(root_of_unity(j * k, q - 1))
        x = x * g % q
    return DirichletCharacter(q, tuple(table), label=f"char {q} {j % (q - 1) if q > 2 else 0}")


def modify_character(chi: MultFuncSpec) -> ModifiedCharacter:
    if not isinstance(chi, DirichletCharacter):
        raise InvalidArgument("modify_character needs a Dirichlet character")
    return ModifiedCharacter(chi)


def liouville() -> Liouville:
    return Liouville()


def combine(op: str, *args, j: int | None = None) -> MultFuncSpec:
    """op in {"product", "power", "conjugate"}."""
    if op == "product":
        if len(args) < 1:
            raise InvalidArgument("product needs at least one factor")
        return Product(tuple(args))
    if op == "power":
        if len(args) != 1 or j is None:
            raise InvalidArgument("power needs one argument and an exponent j")
        return Power(args[0], int(j))
    if op == "conjugate":
        if len(args) != 1:
            raise InvalidArgument("conjugate needs one argument")
        return Conjugate(args[0])
    raise InvalidArgument(f"unknown combine op {op!r}")


def dth_root(f: MultFuncSpec, d: int) -> DthRoot:
    return DthRoot(f, int(d))


def character_modulus(chi: MultFuncSpec) -> int:
    """Period of a character-type spec (lcm over its character leaves)."""
    if isinstance(chi, One):
        return 1
    if isinstance(chi, (DirichletCharacter,)):
        return chi.q
    if isinstance(chi, ModifiedCharacter):
        return chi.chi.q
    if isinstance(chi, Product):
        return math.lcm(*(character_modulus(f) for f in chi.factors))
    if isinstance(chi, (Power, Conjugate)):
        return character_modulus(chi.base)
    raise InvalidArgument(f"{chi.desc()} is not a character")


def is_character(chi: MultFuncSpec) -> bool:
    try:
        character_modulus(chi)
    except InvalidArgument:
        return False
    return True


def decompose(f: MultFuncSpec, d: int, chi: MultFuncSpec, t: float) -> tuple[MultFuncSpec, MultFuncSpec]:
    """Split f = g * h with g^d = chi~, h(p) = root of f^d conj(chi~) p^{-it}, times n^{it/d}.

    ``chi`` may be a character (it is modified here) or an already
    circle-valued character-type spec.  Returns (g, h).
    """
    if not f.circle_valued:
        raise InvalidArgument("decompose needs a circle-valued f")
    chit = modify_character(chi) if isinstance(chi, DirichletCharacter) else chi
    if not chit.circle_valued:
        raise InvalidArgument("target character must be circle-valued after modification")
    inner = Product((Power(f, d), Conjugate(chit), Archimedean(-t)))
    h = Product((DthRoot(inner, d), Archimedean(t / d)))
    g = Product((f, Conjugate(h)))
    return g, h


# ---------------------------------------------------------------------------
# evaluation


def evaluate(f: MultFuncSpec, fact: Factorization) -> complex:
    if fact.n < 1:
        raise InvalidArgument("evaluation only at n >= 1")
    if not fact.factors:
        return 1 + 0j
    ps = np.array([p for p, _ in fact.factors], dtype=np.int64)
    es = np.array([e for _, e in fact.factors], dtype=np.int64)
    val = complex(np.prod(f.prime_values(ps) ** es))
    t = f.twist
    if t:
        val *= cmath.exp(1j * t * math.log(fact.n))
    return val


def _twist_factor(t: float, ns: np.ndarray) -> np.ndarray:
    if ns.dtype == object:
        logs = np.array([math.log(int(x)) for x in ns.ravel()], dtype=np.float64).reshape(ns.shape)
    else:
        logs = np.log(ns.astype(np.float64))
    return np.exp(1j * t * logs)


def values_at(f: MultFuncSpec, ns) -> np.ndarray:
    """f at every positive integer in ``ns`` (array-like, any shape)."""
    arr = _as_int_array(ns)
    shape = arr.shape
    flat = arr.ravel()
    if flat.size == 0:
        return np.zeros(shape, dtype=np.complex128)
    if f.residue_evaluable:
        out = np.asarray(f.residue_values(flat), dtype=np.complex128)
    else:
        if flat.dtype == object:
            raise ResourceLimit(f"{f.desc()} needs factorizations of values beyond 64 bits")
        if int(flat.max()) > TRIAL_DIVISION_LIMIT:
            raise ResourceLimit(f"values up to {int(flat.max())} are too large to factor for {f.desc()}")
        offsets, ps, es = factor_many(flat)
        out = _csr_values(f, offsets, ps, es)
    t = f.twist
    if t:
        out = out * _twist_factor(t, flat)
    return out.reshape(shape)


def _csr_values(f: MultFuncSpec, offsets, ps, es) -> np.ndarray:
    if ps.size == 0:
        return np.ones(offsets.size - 1, dtype=np.complex128)
    uniq, inv = np.unique(ps, return_inverse=True)
    pv = f.prime_values(uniq)
    vals = pv[inv] ** es.astype(np.int64)
    return _kernels.segment_prod(offsets, vals)


def grid_values(f: MultFuncSpec, sieve: GridFactorSieve) -> np.ndarray:
    """f(v(m, n)) on the sieve grid, shape (N, N), read from the stored factorizations."""
    out = _csr_values(f, sieve.offsets, sieve.primes, sieve.exponents)
    t = f.twist
    if t:
        out = out * _twist_factor(t, sieve.values.ravel())
    return out.reshape(sieve.N, sieve.N)


def indicator_one(f: MultFuncSpec, d: int, ns) -> np.ndarray:
    """1[f(n) = 1] for f with values in the d-th roots of unity, checked two ways."""
    if d < 1:
        raise InvalidArgument("d must be >= 1")
    v = values_at(f, ns)
    if np.any(np.abs(v**d - 1) > TOL):
        bad = np.flatnonzero(np.abs(v.ravel() ** d - 1) > TOL)[0]
        raise InvalidArgument(f"{f.desc()} is not d-th-root-valued at n={np.ravel(ns)[bad]} (d={d})")
    direct = (np.abs(v - 1) <= TOL).astype(np.int64)
    avg = np.zeros(v.shape, dtype=np.complex128)
    pw = np.ones(v.shape, dtype=np.complex128)
    for _ in range(d):
        avg += pw
        pw = pw * v
    avg = (avg / d).real
    if np.max(np.abs(avg - direct)) > TOL:
        raise AssertionError("root-of-unity average disagrees with the direct indicator")
    return direct


def indicator_one_mean(f: MultFuncSpec, d: int, n: int) -> int:
    return int(indicator_one(f, d, np.array([n], dtype=object))[0])


# ---------------------------------------------------------------------------
# additive functions


@dataclass(frozen=True)
class AddFuncSpec:
    """Additive h with h(n) = sum over p^k || n of h(p, k); unlisted pairs are 0."""

    values: tuple[tuple[int, int, complex], ...] = ()

    def __post_init__(self):
        for p, k, _ in self.values:
            if k < 1 or not is_prime(p):
                raise InvalidArgument(f"bad additive-function key ({p}, {k})")
        object.__setattr__(self, "_map", {(int(p), int(k)): complex(z) for p, k, z in self.values})

    @classmethod
    def on_primes(cls, mapping: Mapping[int, complex]) -> "AddFuncSpec":
        """h(p) from the mapping, h(p^k) = 0 for k >= 2."""
        return cls(tuple(sorted((int(p), 1, complex(z)) for p, z in mapping.items())))

    def at(self, p: int, k: int = 1) -> complex:
        return self._map.get((int(p), int(k)), 0j)

    def primes(self) -> list[int]:
        return sorted({p for p, _ in self._map})

    def prime_only(self) -> bool:
        return all(k == 1 or z == 0 for (_, k), z in self._map.items())

    def restrict(self, keep) -> "AddFuncSpec":
        return AddFuncSpec(tuple((p, k, z) for (p, k), z in sorted(self._map.items()) if keep(p)))

    def __call__(self, n: int) -> complex:
        from .factor_engine import factor

        return sum((self.at(p, e) for p, e in factor(n)), 0j)

    def csr_values(self, cells: np.ndarray, ps: np.ndarray, es: np.ndarray, ncells: int) -> np.ndarray:
        if not self._map or ps.size == 0:
            return np.zeros(ncells, dtype=np.complex128)
        keys = np.array(list(self._map.keys()), dtype=np.int64)
        vals = np.array(list(self._map.values()), dtype=np.complex128)
        code = keys[:, 0] * 64 + keys[:, 1]
        order = np.argsort(code)
        code, vals = code[order], vals[order]
        q = ps * 64 + es.astype(np.int64)
        idx = np.minimum(np.searchsorted(code, q), code.size - 1)
        hit = code[idx] == q
        w = np.where(hit, vals[idx], 0)
        return (np.bincount(cells, weights=w.real, minlength=ncells)
                + 1j * np.bincount(cells, weights=w.imag, minlength=ncells))

    def grid_values(self, sieve: GridFactorSieve) -> np.ndarray:
        out = self.csr_values(sieve.cells, sieve.primes, sieve.exponents, sieve.N * sieve.N)
        return out.reshape(sieve.N, sieve.N)

    def desc(self) -> str:
        return "add{" + ",".join(f"{p}^{k}:{z:g}" for (p, k), z in sorted(self._map.items())) + "}"


# ---------------------------------------------------------------------------
# mini-language


def load_prime_table(path: str) -> PrimeTable:
    """Lines "p re im"; optional "default re im"; '#' starts a comment."""
    vals: dict[int, complex] = {}
    default = 1.0 + 0j
    try:
        fh = open(path)
    except OSError as exc:
        raise InvalidArgument(f"cannot read prime table {path}: {exc}") from None
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise InvalidArgument(f"{path}:{lineno}: expected 'p re im'")
            try:
                z = complex(float(parts[1]), float(parts[2]))
                if parts[0] == "default":
                    default = z
                else:
                    vals[int(parts[0])] = z
            except ValueError:
                raise InvalidArgument(f"{path}:{lineno}: cannot parse {line!r}") from None
    return PrimeTable.from_mapping(vals, default, label=f"table {path}")


def parse_spec(text: str) -> MultFuncSpec:
    tokens = text.split()
    if not tokens:
        raise InvalidArgument("empty function spec")
    f, pos = _parse(tokens, 0)
    if pos != len(tokens):
        raise InvalidArgument(f"trailing tokens in spec: {' '.join(tokens[pos:])}")
    return f


def _take_int(tokens, pos, what):
    if pos >= len(tokens):
        raise InvalidArgument(f"missing {what}")
    try:
        return int(tokens[pos])
    except ValueError:
        raise InvalidArgument(f"{what} must be an integer, got {tokens[pos]!r}") from None


def _parse(tokens: Sequence[str], pos: int) -> tuple[MultFuncSpec, int]:
    if pos >= len(tokens):
        raise InvalidArgument("unexpected end of spec")
    tok = tokens[pos].lower()
    pos += 1
    if tok == "one":
        return One(), pos
    if tok in ("liouville", "lambda"):
        return Liouville(), pos
    if tok in ("char", "modchar"):
        q = _take_int(tokens, pos, "modulus")
        j = _take_int(tokens, pos + 1, "character index")
        chi = dirichlet_character(q, j)
        return (ModifiedCharacter(chi) if tok == "modchar" else chi), pos + 2
    if tok == "arch":
        if pos >= len(tokens):
            raise InvalidArgument("arch needs t")
        try:
            return Archimedean(float(tokens[pos])), pos + 1
        except ValueError:
            raise InvalidArgument(f"bad t {tokens[pos]!r}") from None
    if tok == "table":
        if pos >= len(tokens):
            raise InvalidArgument("table needs a path")
        return load_prime_table(tokens[pos]), pos + 1
    if tok == "prod":
        a, pos = _parse(tokens, pos)
        b, pos = _parse(tokens, pos)
        return Product((a, b)), pos
    if tok == "pow":
        a, pos = _parse(tokens, pos)
        return Power(a, _take_int(tokens, pos, "exponent")), pos + 1
    if tok == "conj":
        a, pos = _parse(tokens, pos)
        return Conjugate(a), pos
    if tok == "root":
        a, pos = _parse(tokens, pos)
        return DthRoot(a, _take_int(tokens, pos, "root degree")), pos + 1
    raise InvalidArgument(f"unknown spec token {tok!r}")


def with_prime_override(f: MultFuncSpec, overrides: Mapping[int, complex]) -> MultFuncSpec:
    """f with its values at the listed primes replaced (prime part only)."""
    ps = np.array(sorted(overrides), dtype=np.int64)
    base = f.prime_values(ps)
    fix = {int(p): complex(overrides[int(p)]) / complex(b) if b != 0 else None for p, b in zip(ps, base)}
    if any(v is None for v in fix.values()):
        raise InvalidArgument("cannot override a prime where f vanishes")
    label = "override " + ",".join(f"{p}:{complex(overrides[p]):g}" for p in sorted(overrides))
    return Product((f, PrimeTable.from_mapping(fix, 1.0, label=label)))


def builtin_specs() -> dict[str, MultFuncSpec]:
    """A handful of named functions used by tests and scripts."""
    chi5 = dirichlet_character(5, 2)
    return {
        "one": One(),
        "liouville": Liouville(),
        "char 5 2": chi5,
        "modchar 5 2": ModifiedCharacter(chi5),
        "char 13 3": dirichlet_character(13, 3),
        "arch 1.0": Archimedean(1.0),
        "prod modchar 5 2 arch 0.5": Product((ModifiedCharacter(chi5), Archimedean(0.5))),
        "root liouville 3": DthRoot(Liouville(), 3),
    }
