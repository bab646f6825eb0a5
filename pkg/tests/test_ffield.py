import random

from hypothesis import given, strategies as st
import pytest

from cyclofactor.errors import CompositeCharacteristic, InputError
from cyclofactor.ffield import FieldTower, matmul_mod

import numpy as np

LEVELS = [(3, 1), (3, 2), (5, 1), (2, 3), (7, 2), (9, 2), (25, 1), (2, 1)]


def elements(level, rng, k):
    return [level.random(rng) for _ in range(k)]


@pytest.mark.parametrize("q,d", LEVELS)
def test_group_order(towers, q, d):
    level = towers(q).extend(d)
    rng = random.Random(q * 100 + d)
    for _ in range(200):
        x = level.random_nonzero(rng)
        assert level.pow(x, level.order - 1) == level.one


@pytest.mark.parametrize("q,d", LEVELS)
def test_field_axioms(towers, q, d):
    L = towers(q).extend(d)
    rng = random.Random(d)
    for a, b, c in zip(*[elements(L, rng, 60)] * 3):
        assert L.mul(a, L.add(b, c)) == L.add(L.mul(a, b), L.mul(a, c))
        assert L.mul(L.mul(a, b), c) == L.mul(a, L.mul(b, c))
        assert L.mul(a, b) == L.mul(b, a)
        if not L.is_zero(a):
            assert L.mul(a, L.inv(a)) == L.one


@pytest.mark.parametrize("q,d", LEVELS)
def test_frobenius_is_qth_power(towers, q, d):
    L = towers(q).extend(d)
    rng = random.Random(7)
    for a in elements(L, rng, 30):
        assert L.frob(a) == L.pow(a, q)
        assert L.frob(a, d) == a


def test_mul_matrix_agrees(towers):
    L = towers(9).extend(3)
    rng = random.Random(1)
    for a, b in zip(elements(L, rng, 20), elements(L, rng, 20)):
        v = L.to_vec(b) @ L.mul_matrix(a) % L.p
        assert L.from_vec(v) == L.mul(a, b)


def test_base_modulus_for_nine_is_y2_plus_1():
    assert FieldTower(3, 2, 0).base_modulus == (1, 0, 1)


def test_rebuild_is_deterministic():
    a, b = FieldTower(5, 1, 11), FieldTower(5, 1, 11)
    for d in (2, 3, 4):
        assert a.extend(d).outer == b.extend(d).outer
    assert a.to_json() == b.to_json()


def test_seed_changes_search_offset():
    moduli = {FieldTower(7, 1, s).extend(4).outer for s in range(6)}
    assert len(moduli) > 1


def test_extend_is_cached(towers):
    t = towers(5)
    assert t.extend(3) is t.extend(3)


def test_bad_inputs():
    with pytest.raises(CompositeCharacteristic):
        FieldTower(6)
    with pytest.raises(CompositeCharacteristic):
        FieldTower.for_order(12)
    with pytest.raises(InputError):
        FieldTower(5).extend(0)


@given(st.integers(0, 10**6))
def test_sqrt_squares_back(seed):
    t = FieldTower(3, 2)
    L = t.extend(3)
    a = L.random(random.Random(seed))
    sq = L.mul(a, a)
    r = L.sqrt(sq)
    assert L.mul(r, r) == sq


def test_in_base_and_descend(towers):
    t = towers(9)
    L = t.extend(4)
    c = t.base.from_index(5)
    up = L.embed(c)
    assert L.in_base(up)
    assert L.descend(up) == c


def test_primitive_roots_of_unity_count(towers):
    t = towers(5)
    roots = t.primitive_roots_of_unity(7)
    assert len(roots) == 6
    L = t.extend(6)
    for w in roots:
        assert L.element_order(w.value) == 7


@pytest.mark.parametrize("p", [3, 65521, 2**31 - 1])
def test_matmul_mod_exact(p):
    rng = np.random.default_rng(p)
    a = rng.integers(0, p, size=(5, 9))
    b = rng.integers(0, p, size=(9, 4))
    want = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(9)) % p for j in range(4)] for i in range(5)]
    assert matmul_mod(a, b, p).tolist() == want
