import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pythreg.errors import InvalidArgument, ResourceLimit
from pythreg.multfunc import Archimedean, Liouville, One, dirichlet_character, dth_root, modify_character
from pythreg.triples import (
    CSV_HEADER,
    ColoringSpec,
    enumerate_triples,
    form_coefficients,
    parametric_triple,
    search_level_set_triples,
    search_monochromatic_pairs,
    triple_density,
)
from pythreg.weights import folner_set

from oracles import liouville_naive, pythagorean_naive

MOD5 = modify_character(dirichlet_character(5, 2))
CUBIC = modify_character(dirichlet_character(7, 2))  # values in cube roots of unity


def xyz(search):
    return [(h.x, h.y, h.z) for h in search.hits]


def test_parametric_examples():
    assert parametric_triple(1, 2, 1) == (3, 4, 5)
    x, y, z = parametric_triple(2, 4, 1)
    assert (x, y, z) == (30, 16, 34) and x * x + y * y == z * z
    with pytest.raises(InvalidArgument):
        parametric_triple(1, 1, 1)
    with pytest.raises(InvalidArgument):
        parametric_triple(0, 2, 1)


@given(st.integers(1, 50), st.integers(2, 200), st.integers(1, 199),
       st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))
def test_form_identity(k, m, n, l1, l2, l3):
    if n >= m:
        return
    x, y, z = parametric_triple(k, m, n, l1, l2, l3)
    a, b, c = form_coefficients(l1, l2, l3)
    assert a * x * x + b * y * y == c * z * z


def test_search_examples():
    s = search_level_set_triples(One(), 100)
    assert s.hits[0].k == 1 and (s.hits[0].m, s.hits[0].n) == (2, 1)
    assert xyz(s)[0] == (3, 4, 5)
    s = search_level_set_triples(MOD5, 50)
    assert s.hits and (16, 30, 34) in xyz(s) and (3, 4, 5) not in xyz(s)
    hit = next(h for h in s.hits if h.z == 34)
    assert (hit.k, hit.m, hit.n) == (2, 4, 1)
    assert hit.csv_row() == "2,4,1,16,30,34,1,1,1"
    assert CSV_HEADER.count(",") == hit.csv_row().count(",")


def test_search_limits():
    with pytest.raises(ResourceLimit):
        search_level_set_triples(One(), 10**7 + 1)
    with pytest.raises(InvalidArgument):
        search_level_set_triples(dirichlet_character(5, 2), 100)
    with pytest.raises(InvalidArgument):
        search_level_set_triples(CUBIC, 100, d=2)


def test_one_matches_z_first_oracle():
    got = sorted(xyz(search_level_set_triples(One(), 1000)))
    assert got == sorted(pythagorean_naive(1000))


def test_enumeration_order_and_identity():
    (k, m, n, x, y, z), dropped = enumerate_triples(5000)
    assert dropped == 0
    assert np.all(x * x + y * y == z * z) and np.all(x < y)
    keys = list(zip(z.tolist(), x.tolist()))
    assert keys == sorted(keys)


@pytest.mark.parametrize("f", [MOD5, Liouville(), CUBIC, dth_root(Liouville(), 2)])
def test_hits_subset_and_certified(f):
    bound = 3000
    everything = set(xyz(search_level_set_triples(One(), bound)))
    s = search_level_set_triples(f, bound)
    for h in s.hits:
        assert h.x * h.x + h.y * h.y == h.z * h.z
        assert len({h.x, h.y, h.z}) == 3
        assert all(abs(c - 1) <= 1e-9 for c in h.certificate)
        assert all(abs(f(v) - 1) <= 1e-9 for v in (h.x, h.y, h.z))
    assert set(xyz(s)) <= everything


@pytest.mark.parametrize("f", [MOD5, Liouville(), CUBIC])
def test_level_set_exhaustive(f):
    bound = 400
    expected = [t for t in pythagorean_naive(bound) if all(abs(f(v) - 1) <= 1e-9 for v in t)]
    assert sorted(xyz(search_level_set_triples(f, bound))) == sorted(expected)


def test_dilation_invariance():
    bound = 5000
    f = MOD5
    hits = set(xyz(search_level_set_triples(f, bound)))
    for lam in range(2, 40):
        if abs(f(lam) - 1) > 1e-9:
            continue
        for x, y, z in hits:
            if lam * z <= bound:
                assert (lam * x, lam * y, lam * z) in hits


def test_general_coefficients():
    s = search_level_set_triples(One(), 100, ells=(1, 1, 1))
    assert s.coefficients == (1, 4, 1) and s.dropped_degenerate == 0 and len(s.hits) == 72
    for h in s.hits:
        assert h.x**2 + 4 * h.y**2 == h.z**2
    s = search_level_set_triples(One(), 200, ells=(1, 2, 2))
    for h in s.hits:
        a, b, c = s.coefficients
        assert a * h.x**2 + b * h.y**2 == c * h.z**2
        assert len({h.x, h.y, h.z}) == 3


def brute_pairs(colors, N, kind):
    out = []
    if kind == "xy":
        for y in range(1, N + 1):
            for x in range(1, y):
                z = math.isqrt(x * x + y * y)
                if z * z == x * x + y * y and z <= N and colors(x) == colors(y):
                    out.append((x, y, z))
    else:
        for z in range(1, N + 1):
            for y in range(1, z):
                x = math.isqrt(z * z - y * y)
                if x * x == z * z - y * y and x > 0 and colors(y) == colors(z):
                    out.append((y, z, x))
    return out


@pytest.mark.parametrize("kind", ["xy", "yz"])
def test_liouville_pairs_brute_force(kind):
    N = 100
    got = search_monochromatic_pairs(ColoringSpec.level_sets(Liouville(), N), N, kind)
    assert sorted(got) == sorted(brute_pairs(liouville_naive, N, kind))


def test_liouville_first_pairs_frozen():
    got = search_monochromatic_pairs(ColoringSpec.level_sets(Liouville(), 100), 100, "xy")
    assert got[:5] == [(5, 12, 13), (10, 24, 26), (15, 36, 39), (9, 40, 41), (28, 45, 53)]
    assert all(p[:2] != (20, 21) for p in got)


def test_single_color_examples():
    assert search_monochromatic_pairs(ColoringSpec.single(5), 5, "xy") == [(3, 4, 5)]
    assert search_monochromatic_pairs(ColoringSpec.single(4), 4, "xy") == []
    assert search_monochromatic_pairs(ColoringSpec.single(5), 5, "yz") == [(3, 5, 4), (4, 5, 3)]
    assert search_monochromatic_pairs(ColoringSpec.single(4), 4, "yz") == []


@settings(max_examples=20, deadline=None)
@given(st.integers(5, 80), st.integers(1, 4), st.integers(0, 2**32 - 1), st.sampled_from(["xy", "yz"]))
def test_random_colorings(N, ncolors, seed, kind):
    colors = np.random.default_rng(seed).integers(0, ncolors, N)
    got = search_monochromatic_pairs(ColoringSpec.from_table(colors), N, kind)
    assert sorted(got) == sorted(brute_pairs(lambda v: colors[v - 1], N, kind))


def test_coloring_errors():
    with pytest.raises(InvalidArgument):
        search_monochromatic_pairs(ColoringSpec.single(10), 20)
    with pytest.raises(InvalidArgument):
        search_monochromatic_pairs(ColoringSpec.single(10), 10, "xz")


def test_triple_density_examples():
    assert triple_density(One(), 1, 50, 3) == 1
    v = triple_density(Liouville(), 2, 200, 3)
    assert 0 <= v <= 1
    assert triple_density(MOD5, 2, 200, 3) > 0
    with pytest.raises(InvalidArgument):
        triple_density(Archimedean(0.5), 2, 50, 3)
    with pytest.raises(InvalidArgument):
        triple_density(CUBIC, 2, 50, 3)


@pytest.mark.parametrize("f,d", [(Liouville(), 2), (MOD5, 2), (CUBIC, 3)])
def test_triple_density_dual_route(f, d):
    N, K = 40, 2
    ks = folner_set(K).integers()
    assert ks == [8, 16]
    hits = total = 0
    for m in range(2, N + 1):
        for n in range(1, m):
            total += 1
            for k in ks:
                vals = (k * (m * m - n * n), 2 * k * m * n, k * (m * m + n * n))
                hits += all(abs(f(v) - 1) <= 1e-9 for v in vals)
    assert triple_density(f, d, N, K) == pytest.approx(hits / (total * len(ks)), abs=1e-12)
