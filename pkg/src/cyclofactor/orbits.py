"""Frobenius orbits, minimal polynomials and the orbit factorization of Φ_r."""
from dataclasses import dataclass, field as dc_field

from . import ntheory as nt
from .errors import CharacteristicDividesOrder, DescentFailure
from .poly import Polynomial


def orbit(level, beta):
    """The conjugates beta, beta^q, beta^(q^2), ... until the cycle closes."""
    out = [beta]
    cur = level.frob(beta)
    while cur != beta:
        out.append(cur)
        cur = level.frob(cur)
    return out


def descend_or_fail(poly):
    try:
        return poly.descend()
    except ValueError:
        raise DescentFailure("orbit product has coefficients outside F_q") from None


def minimal_polynomial(level, beta):
    """Minimal polynomial of ``beta`` over F_q, as the product over its orbit.

    The product is formed in ``level`` and every coefficient is checked to lie
    in F_q before it is moved down.
    """
    beta = level.elem(beta)
    return descend_or_fail(Polynomial.from_roots(level, orbit(level, beta)))


def minimal_polynomial_from_orbit(level, conjugates):
    return descend_or_fail(Polynomial.from_roots(level, conjugates))


def symmetric_values(minpoly):
    """S_0..S_d with minpoly = sum (-1)^i S_i x^(d-i)."""
    f = minpoly.field
    d = minpoly.degree
    out = []
    for i in range(d + 1):
        c = minpoly.coeffs[d - i]
        out.append(f.neg(c) if i % 2 else c)
    return tuple(out)


@dataclass(frozen=True)
class OrbitFactor:
    """One Frobenius orbit of a primitive r-th root of unity ``xi^exponent``."""

    exponent: int
    root: tuple
    level: object = dc_field(compare=False, repr=False)
    orbit: tuple = dc_field(compare=False, repr=False)
    minpoly: Polynomial = None
    sym: tuple = ()

    @property
    def degree(self):
        return len(self.orbit)


def cyclotomic_cosets(q, r):
    """Cosets {j q^i mod r} of units mod r, each listed from its smallest member."""
    seen = set()
    out = []
    for j in range(1, r + 1):
        j %= r
        if nt.gcd(j, r) != 1 or j in seen:
            continue
        coset = []
        e = j
        while e not in coset:
            coset.append(e)
            e = e * q % r
        seen.update(coset)
        out.append(coset)
    return out


def unity_generator(tower, r, level=None):
    """The seeded generator xi of the primitive r-th roots of unity in ``level``."""
    d = nt.order_mod(tower.q, r)
    level = level or tower.extend(d)
    if (level.order - 1) % r:
        raise CharacteristicDividesOrder(f"no primitive {r}-th roots in {level!r}")
    return level, level.primitive_root_of_unity(r, tower.rng("unity", level.qdeg, r))


def orbit_factorize_unity(tower, r, level=None):
    """Split the primitive r-th roots of unity into Frobenius orbits.

    Returns one OrbitFactor per cyclotomic coset of q modulo r, in order of the
    coset's smallest exponent.  ``level`` may be any level holding the r-th
    roots of unity (default: the smallest one, of degree ord_r(q)).
    """
    r = int(r)
    if r % tower.p == 0:
        raise CharacteristicDividesOrder(f"p = {tower.p} divides {r}")
    level, xi = unity_generator(tower, r, level)
    powers = [level.one]
    for _ in range(r - 1):
        powers.append(level.mul(powers[-1], xi))
    out = []
    for coset in cyclotomic_cosets(tower.q, r) if r > 1 else [[0]]:
        conj = tuple(powers[e] for e in coset)
        g = minimal_polynomial_from_orbit(level, conj)
        out.append(OrbitFactor(coset[0], conj[0], level, conj, g, symmetric_values(g)))
    return out
