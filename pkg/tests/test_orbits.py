from functools import reduce

import pytest

from cyclofactor.cyclotomic import cyclotomic_poly
from cyclofactor.errors import CharacteristicDividesOrder
from cyclofactor.ffield import FieldTower
from cyclofactor.orbits import (
    cyclotomic_cosets, minimal_polynomial, orbit, orbit_factorize_unity, symmetric_values,
)
from cyclofactor.poly import is_irreducible


@pytest.mark.parametrize("q,r", [(5, 7), (19, 7), (3, 13), (9, 5), (2, 21), (7, 15), (25, 9)])
def test_orbit_product_is_phi_r(q, r):
    t = FieldTower.for_order(q)
    facs = orbit_factorize_unity(t, r)
    assert reduce(lambda a, b: a * b, [w.minpoly for w in facs]) == cyclotomic_poly(t, r)
    for w in facs:
        assert is_irreducible(w.minpoly)
        assert w.degree == w.minpoly.degree


def test_symmetric_value_identity():
    t = FieldTower(19)
    for w in orbit_factorize_unity(t, 7):
        g, S = w.minpoly, w.sym
        d = g.degree
        for i in range(d + 1):
            c = S[i] if i % 2 == 0 else t.base.neg(S[i])
            assert g.coeffs[d - i] == c


def test_cosets():
    assert cyclotomic_cosets(2, 7) == [[1, 2, 4], [3, 6, 5]]


def test_minimal_polynomial_of_frobenius_fixed_element():
    t = FieldTower(3, 2)
    L = t.extend(3)
    c = L.embed(t.base.from_index(4))
    assert minimal_polynomial(L, c).degree == 1
    assert len(orbit(L, c)) == 1


def test_characteristic_divides():
    with pytest.raises(CharacteristicDividesOrder):
        orbit_factorize_unity(FieldTower(5), 10)
