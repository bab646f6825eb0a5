import math
import random

from hypothesis import given, strategies as st
import pytest

from conftest import poly
from cyclofactor.composed import (
    ComposedKind, brawley_carlitz_irreducible, composed_product, oracle_composed,
    random_irreducible, random_monic,
)
from cyclofactor.construct import affine_substitution, conjugate_product
from cyclofactor.errors import InputError, MixedLevels, RootOutsideDomain
from cyclofactor.ffield import FieldTower
from cyclofactor.orbits import minimal_polynomial
from cyclofactor.poly import is_irreducible

KINDS = list(ComposedKind)


def test_trivial_examples(towers):
    t = towers(5)
    assert composed_product("sum", poly(t, [1, 1]), poly(t, [1, 1])) == poly(t, [2, 1])
    assert composed_product("mul", poly(t, [2, 1]), poly(t, [2, 1])) == poly(t, [1, 1])


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("q", [3, 5, 4, 9])
def test_closed_form_matches_oracle(towers, kind, q):
    t = towers(q)
    rng = random.Random(f"{kind.value}:{q}")
    for _ in range(8):
        bad = kind.excluded(t.base)
        f = random_monic(t.base, rng.randrange(1, 4), rng, bad)
        g = random_monic(t.base, rng.randrange(1, 4), rng, bad)
        h = composed_product(kind, f, g)
        assert h == oracle_composed(kind, f, g)
        assert h.degree == f.degree * g.degree
        assert h.field is t.base


@given(st.integers(0, 10**6))
def test_associative_and_commutative(seed):
    t = FieldTower(5)
    rng = random.Random(seed)
    f, g, h = (random_monic(t.base, rng.randrange(1, 3), rng, t.base.zero) for _ in range(3))
    for kind in (ComposedKind.MUL, ComposedKind.SUM):
        assert composed_product(kind, f, g) == composed_product(kind, g, f)
        left = composed_product(kind, composed_product(kind, f, g), h)
        right = composed_product(kind, f, composed_product(kind, g, h))
        assert left == right


def test_distributes_over_products(towers):
    t = towers(7)
    rng = random.Random(2)
    f1, f2, g = (random_monic(t.base, 2, rng, t.base.zero) for _ in range(3))
    for kind in KINDS:
        bad = kind.excluded(t.base)
        if bad is not None and any(t.base.is_zero(h(bad)) for h in (f1, f2, g)):
            continue
        assert composed_product(kind, f1 * f2, g) == \
            composed_product(kind, f1, g) * composed_product(kind, f2, g)


@pytest.mark.parametrize("kind", KINDS)
def test_irreducibility_criterion_both_ways(towers, kind):
    t = towers(3)
    rng = random.Random(kind.value)
    for m, n in [(2, 3), (3, 4), (1, 5), (2, 4), (3, 3), (2, 2)]:
        bad = kind.excluded(t.base)
        while True:
            f, g = random_irreducible(t.base, m, rng), random_irreducible(t.base, n, rng)
            if bad is None or not any(t.base.is_zero(h(bad)) for h in (f, g)):
                break
        h = composed_product(kind, f, g)
        assert is_irreducible(h) == brawley_carlitz_irreducible(kind, f, g)
        assert brawley_carlitz_irreducible(kind, f, g) == (math.gcd(m, n) == 1)


def test_domain_errors(towers):
    t = towers(5)
    with pytest.raises(RootOutsideDomain):
        composed_product("mul", poly(t, [0, 1]), poly(t, [1, 1]))
    with pytest.raises(RootOutsideDomain):
        composed_product("circle-", poly(t, [4, 1]), poly(t, [2, 1]))
    with pytest.raises(RootOutsideDomain):
        composed_product("circle+", poly(t, [1, 1]), poly(t, [2, 1]))
    with pytest.raises(InputError):
        composed_product("mul", poly(t, [1, 2]), poly(t, [1, 1]))
    with pytest.raises(MixedLevels):
        composed_product("sum", poly(t, [1, 1]), poly(towers(7), [1, 1]))
    with pytest.raises(InputError):
        ComposedKind.parse("div")


# -- conjugate products of f(αx + β) ------------------------------------------------------

def _proper(level, rng, q, d):
    while True:
        a = level.random_nonzero(rng)
        if len({a, *[level.frob(a, k) for k in range(1, d)]}) == d:
            return a


def _setup(q, k, d, seed):
    t = FieldTower.for_order(q)
    rng = random.Random(seed)
    f = random_irreducible(t.base, k, rng)
    L = t.extend(d)
    return t, rng, f, L


@pytest.mark.parametrize("q,k,d", [(5, 3, 2), (3, 2, 3), (7, 3, 2), (4, 3, 2)])
def test_case_alpha_in_base(q, k, d):
    t, rng, f, L = _setup(q, k, d, f"i{q}")
    alpha = L.embed(t.base.random_nonzero(rng))
    beta = _proper(L, rng, q, d)
    F = conjugate_product(affine_substitution(f, alpha, beta, L))
    a_inv = L.inv(alpha)
    fbar = f.scale_variable(L.descend(alpha)).monic()
    h = minimal_polynomial(L, L.neg(L.mul(a_inv, beta)))
    assert F.monic() == composed_product("sum", fbar, h)
    assert F.degree == k * d and is_irreducible(F)


def test_case_alpha_in_base_spelled_out():
    # f irreducible over F_5 of degree 3, α = 2, β proper in F_25: degree 6 and irreducible
    t = FieldTower(5)
    f = poly(t, [1, 1, 0, 1])
    assert is_irreducible(f)
    L = t.extend(2)
    beta = _proper(L, random.Random(1), 5, 2)
    F = conjugate_product(affine_substitution(f, L.embed(2), beta, L))
    fbar = f.scale_variable(2).monic()
    h = minimal_polynomial(L, L.neg(L.mul(L.inv(L.embed(2)), beta)))
    assert F.monic() == composed_product("sum", fbar, h)
    assert F.degree == 6 and is_irreducible(F)


@pytest.mark.parametrize("q,k,d", [(5, 3, 2), (3, 2, 3), (7, 2, 3)])
def test_case_beta_in_base(q, k, d):
    t, rng, f, L = _setup(q, k, d, f"ii{q}")
    alpha = _proper(L, rng, q, d)
    b = t.base.random(rng)
    F = conjugate_product(affine_substitution(f, alpha, L.embed(b), L))
    h = minimal_polynomial(L, L.inv(alpha))
    assert F.monic() == composed_product("mul", f.shift(b), h)
    assert is_irreducible(F)


@pytest.mark.parametrize("q,k,d", [(5, 3, 2), (3, 2, 3)])
def test_case_beta_multiple_of_alpha(q, k, d):
    t, rng, f, L = _setup(q, k, d, f"iii{q}")
    alpha = _proper(L, rng, q, d)
    c = t.base.random_nonzero(rng)
    F = conjugate_product(affine_substitution(f, alpha, L.mul(L.embed(c), alpha), L))
    H = conjugate_product(affine_substitution(f, alpha, L.zero, L))
    assert F == H.shift(c)
    assert is_irreducible(F)


@pytest.mark.parametrize("q,k,d", [(5, 3, 2), (3, 2, 3), (7, 3, 2)])
def test_case_circle_minus(q, k, d):
    t, rng, f, L = _setup(q, k, d, f"iv{q}")
    beta = _proper(L, rng, q, d)
    alpha = L.sub(L.one, beta)
    F = conjugate_product(affine_substitution(f, alpha, beta, L))
    h = minimal_polynomial(L, L.sub(L.one, L.inv(alpha)))
    assert F.monic() == composed_product("circle-", f, h)
    assert is_irreducible(F)


@pytest.mark.parametrize("q,k,d", [(5, 3, 2), (3, 2, 3), (7, 3, 2)])
def test_case_circle_plus(q, k, d):
    t, rng, f, L = _setup(q, k, d, f"v{q}")
    beta = _proper(L, rng, q, d)
    alpha = L.add(beta, L.one)
    F = conjugate_product(affine_substitution(f, alpha, beta, L))
    h = minimal_polynomial(L, L.sub(L.inv(alpha), L.one))
    assert F.monic() == composed_product("circle+", f, h)
    assert is_irreducible(F)
