import itertools
from fractions import Fraction

import numpy as np
import pytest

from pythreg.counting import CSV_HEADER, w_divisor, w_pair, w_pair_closed_form, w_pair_empirical
from pythreg.errors import InvalidArgument
from pythreg.factor_engine import grid

MODULI = (5, 13, 17, 29)
N = 2000


def closed_form_fraction(p, q):
    if p == q:
        return Fraction(2, p) * (1 - Fraction(1, p)) ** 2
    return Fraction(4, p * q) * (1 - Fraction(1, p)) ** 2 * (1 - Fraction(1, q)) ** 2


def test_closed_form_examples():
    assert w_pair_closed_form(5, 5) == pytest.approx(0.256, abs=1e-15)
    assert w_pair_closed_form(13, 13) == pytest.approx(288 / 2197, abs=1e-15)
    assert w_pair_closed_form(5, 13) == pytest.approx(0.033558, abs=1e-6)
    assert w_pair_closed_form(5, 13) == pytest.approx(0.03355848884842969, abs=1e-15)


def test_closed_form_rational():
    for p, q in itertools.product(MODULI, repeat=2):
        assert w_pair_closed_form(p, q) == pytest.approx(float(closed_form_fraction(p, q)), rel=1e-14)
        assert w_pair_closed_form(p, q) == pytest.approx(w_pair_closed_form(q, p), rel=1e-15)


def test_precondition_errors():
    with pytest.raises(InvalidArgument):
        w_pair_closed_form(3, 5)
    with pytest.raises(InvalidArgument):
        w_pair_closed_form(5, 9)
    with pytest.raises(InvalidArgument):
        w_pair_empirical(50, 5, 1, 0, 5, 13)
    with pytest.raises(InvalidArgument):
        w_divisor(50, 7, 1, 0, 3)
    with pytest.raises(InvalidArgument):
        w_divisor(50, 7, 1, 0, 0)


def test_pair_examples():
    r = w_pair(N, 7, 1, 0, 5, 5)
    assert abs(r.empirical - 0.256) <= 0.02
    r = w_pair(N, 7, 1, 0, 5, 13)
    assert abs(r.empirical - 0.033558) <= 0.01
    assert r.abs_error == abs(r.empirical - r.closed_form)
    assert r.csv_row().count(",") == CSV_HEADER.count(",")


def test_closed_form_agreement_grid():
    for p, q in itertools.product(MODULI, repeat=2):
        r = w_pair(N, 7, 1, 0, p, q)
        assert 0 <= r.empirical <= 1
        assert r.abs_error <= 50 / N, (p, q)


def test_product_structure():
    diag = {p: w_pair_empirical(N, 7, 1, 0, p, p) for p in MODULI}
    for p, q in itertools.combinations(MODULI, 2):
        assert abs(w_pair_empirical(N, 7, 1, 0, p, q) - diag[p] * diag[q]) <= 50 / N


def test_exactly_once_against_modulo():
    s = grid(7, 1, 0, 300)
    v = s.values
    for p, q in ((5, 5), (5, 13), (13, 29)):
        hit = (v % p == 0) & (v % (p * p) != 0) & (v % q == 0) & (v % (q * q) != 0)
        assert w_pair_empirical(300, 7, 1, 0, p, q) == np.count_nonzero(hit) / v.size


def test_divisor_examples():
    r = w_divisor(100, 7, 1, 0, 1)
    assert r.empirical == 1 and r.ratio == pytest.approx(1 / 49) and r.bound_rhs == 49
    r = w_divisor(500, 7, 1, 0, 25)
    # 7m+1 and 7n run over all residues mod 25; 65 of the 625 pairs have x^2 + y^2 = 0 mod 25
    assert sum((x * x + y * y) % 25 == 0 for x in range(25) for y in range(25)) == 65
    assert abs(r.empirical - 65 / 625) <= 0.02
    assert r.ratio <= 4


@pytest.mark.parametrize("l", [2, 5, 10, 13, 25, 65])
def test_divisor_ratio_and_modulo(l):
    r = w_divisor(500, 7, 1, 0, l)
    assert r.ratio <= 4
    v = grid(7, 1, 0, 500).values
    assert r.empirical == np.count_nonzero(v % l == 0) / v.size
