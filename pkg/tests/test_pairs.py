import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pythreg.errors import InvalidArgument, ResourceLimit
from pythreg.multfunc import (
    Archimedean,
    Conjugate,
    Liouville,
    One,
    PrimeTable,
    Product,
    builtin_specs,
    dirichlet_character,
    modify_character,
    values_at,
)
from pythreg.pairs import (
    CSV_HEADER,
    dlms_log_average,
    folner_q_average,
    q_stability,
    typeI_average,
    typeII_average,
)
from pythreg.weights import WeightConfig, weight_density, weight_grid

CHI5 = dirichlet_character(5, 2)
MOD5 = modify_character(CHI5)
HYP = WeightConfig(1, 2, 0.1)
ELL = WeightConfig(1, 2, 0.1, "elliptic")
SPECS = builtin_specs()


def fsum_c(z):
    z = np.asarray(z, dtype=complex).ravel()
    return complex(math.fsum(z.real), math.fsum(z.imag))


def direct_average(f, Q, cfg, N, elliptic, with_Q=True):
    """Evaluate f at the full integers, one cell at a time."""
    w = weight_grid(cfg, N)
    total = []
    for m in range(1, N + 1):
        for n in range(1, N + 1):
            if w[m - 1, n - 1] == 0:
                continue
            x, y = Q * m + 1, Q * n
            first = x * x + y * y if elliptic else x * x - y * y
            a = values_at(f, np.array([cfg.ell * first], dtype=object))[0]
            second = cfg.ell_prime * x * (y if with_Q else n)
            b = values_at(f, np.array([second], dtype=object))[0]
            total.append(w[m - 1, n - 1] * a * np.conj(b))
    return fsum_c(total) / (N * N)


def test_one_gives_weight_mass():
    r = typeI_average(One(), 1, WeightConfig(1, 2, 0.1), 1000)
    assert r.value == r.weight_mass
    assert r.weight_mass == pytest.approx(0.13501240491244865, abs=1e-12)
    assert r.weight_mass == weight_density(WeightConfig(1, 2, 0.1), 1000)
    r = typeII_average(One(), 30, ELL, 200)
    assert r.value == r.weight_mass


def test_report_fields():
    r = typeI_average(Liouville(), 30, HYP, 100)
    assert r.kind == "typeI" and r.runtime_cells == 10_000 and r.f_desc == "liouville"
    assert r.csv_row().count(",") == CSV_HEADER.count(",")
    assert r.to_dict()["value"] == [r.value.real, r.value.imag]


@pytest.mark.parametrize("f", [Liouville(), MOD5, Archimedean(0.7), Product((MOD5, Archimedean(-0.4)))])
def test_typeI_dual_route(f):
    for Q in (1, 30):
        fast = typeI_average(f, Q, HYP, 24).value
        slow = direct_average(f, Q, HYP, 24, elliptic=False)
        assert abs(fast - slow) <= 1e-12


def test_typeI_huge_Q_dual_route():
    # Q beyond 64 bits; characters evaluate on Python ints by residue
    Q = 2**40 * 3**30
    for f in (MOD5, Product((dirichlet_character(13, 5), Archimedean(0.2)))):
        fast = typeI_average(f, Q, HYP, 12).value
        assert abs(fast - direct_average(f, Q, HYP, 12, elliptic=False)) <= 1e-12


@pytest.mark.parametrize("f", [MOD5, dirichlet_character(13, 3), Product((MOD5, Archimedean(0.3)))])
def test_typeII_residue_vs_sieve(f):
    # multiplying by the constant-1 table hides residue evaluability and forces the grid sieve
    g = Product((f, PrimeTable((), 1.0, "unit")))
    assert not g.residue_evaluable and f.residue_evaluable
    for Q in (1, 30):
        a = typeII_average(f, Q, ELL, 60).value
        b = typeII_average(g, Q, ELL, 60).value
        assert abs(a - b) <= 1e-12


def test_typeII_against_direct():
    for f in (Liouville(), MOD5):
        fast = typeII_average(f, 30, ELL, 20).value
        assert abs(fast - direct_average(f, 30, ELL, 20, elliptic=True)) <= 1e-12


def test_typeII_big_values_residue_path():
    Q = 3**40
    r = typeII_average(CHI5, Q, ELL, 12)
    assert abs(r.value - direct_average(CHI5, Q, ELL, 12, elliptic=True)) <= 1e-12
    with pytest.raises(ResourceLimit):
        typeII_average(Liouville(), Q, ELL, 12)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(SPECS)), st.sampled_from([1, 2, 30]), st.floats(0.02, 0.3))
def test_value_within_mass(name, Q, delta):
    f = SPECS[name]
    for avg, kind in ((typeI_average, "hyperbolic"), (typeII_average, "elliptic")):
        r = avg(f, Q, WeightConfig(1, 2, delta, kind), 40)
        assert abs(r.value) <= r.weight_mass + 1e-12


def test_conjugation_symmetry():
    for f in (dirichlet_character(13, 1), Archimedean(0.9), Product((MOD5, Archimedean(0.2)))):
        for avg, cfg in ((typeI_average, HYP), (typeII_average, ELL)):
            a = avg(f, 30, cfg, 80).value
            b = avg(Conjugate(f), 30, cfg, 80).value
            assert abs(a - b.conjugate()) <= 1e-12


def test_kind_checks():
    with pytest.raises(InvalidArgument):
        typeI_average(One(), 1, ELL, 50)
    with pytest.raises(InvalidArgument):
        typeII_average(One(), 1, HYP, 50)
    with pytest.raises(InvalidArgument):
        typeI_average(One(), 1, HYP, 5)
    with pytest.raises(InvalidArgument):
        folner_q_average(One(), HYP, 2, 50, kind="typeIII")


def test_folner_q_average():
    vals = [typeI_average(Liouville(), Q, HYP, 40).value for Q in (8, 16)]
    assert folner_q_average(Liouville(), HYP, 2, 40) == pytest.approx(sum(vals) / 2, abs=1e-15)
    assert folner_q_average(One(), HYP, 2, 40) == typeI_average(One(), 8, HYP, 40).weight_mass
    v = folner_q_average(MOD5, ELL, 3, 30, kind="typeII")
    assert abs(v) <= 1
    with pytest.raises(ResourceLimit):
        folner_q_average(One(), HYP, 7, 20)


def test_q_stability():
    r = q_stability(One(), One(), 0, ELL, 2, 40)
    assert r.value == 0 and set(r.L) == {8, 16}
    r = q_stability(MOD5, CHI5, 0, ELL, 3, 30)
    assert len(r.L) == 9 and r.value >= 0
    assert r.value == max(abs(r.L[a] - r.L[b]) for a in r.L for b in r.L)
    assert r.params["chi"] == CHI5.desc()
    with pytest.raises(InvalidArgument):
        q_stability(One(), One(), 0, HYP, 2, 40)


def test_dlms_against_double_sum():
    N = 60
    for f in (Liouville(), MOD5, Archimedean(0.5), dirichlet_character(7, 1)):
        num = []
        for m in range(1, N + 1):
            for n in range(1, N + 1):
                num.append(f(n * (n + 1)) * np.conj(f(m * m)) / (m * n))
        den = math.fsum(1 / (m * n) for m in range(1, N + 1) for n in range(1, N + 1))
        assert abs(dlms_log_average(f, N) - fsum_c(num) / den) <= 1e-12


def test_dlms_one():
    assert dlms_log_average(One(), 100) == pytest.approx(1, abs=1e-14)
    with pytest.raises(InvalidArgument):
        dlms_log_average(One(), 5)
