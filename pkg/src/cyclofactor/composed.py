"""Composed products f ⋄ g: the polynomial whose roots are all a ⋄ b with
f(a) = 0 and g(b) = 0, for the four operations below."""
import enum
from functools import reduce

from . import ntheory as nt
from .errors import InputError, MixedLevels, RootOutsideDomain
from .factor import factor, roots
from .orbits import descend_or_fail, orbit
from .poly import Polynomial, is_irreducible


class ComposedKind(enum.Enum):
    MUL = "mul"
    SUM = "sum"
    CIRCLE_MINUS = "circle-"  # a + b - ab
    CIRCLE_PLUS = "circle+"  # a + b + ab

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        for kind in cls:
            if text in (kind.value, kind.name, kind.name.lower()):
                return kind
        raise InputError(f"unknown composed kind {text!r}")

    def apply(self, field, a, b):
        if self is ComposedKind.MUL:
            return field.mul(a, b)
        s = field.add(a, b)
        if self is ComposedKind.SUM:
            return s
        ab = field.mul(a, b)
        return field.sub(s, ab) if self is ComposedKind.CIRCLE_MINUS else field.add(s, ab)

    def excluded(self, field):
        """The one element outside the group domain, or None."""
        if self is ComposedKind.MUL:
            return field.zero
        if self is ComposedKind.CIRCLE_MINUS:
            return field.one
        if self is ComposedKind.CIRCLE_PLUS:
            return field.neg(field.one)
        return None


def _check_inputs(kind, f, g):
    if f.field is not g.field:
        raise MixedLevels("composed product of polynomials over different fields")
    if f.degree < 1 or g.degree < 1:
        raise InputError("composed products need polynomials of positive degree")
    if not (f.is_monic() and g.is_monic()):
        raise InputError("composed products are defined for monic polynomials")
    bad = kind.excluded(f.field)
    if bad is not None:
        for name, h in (("f", f), ("g", g)):
            if f.field.is_zero(h(bad)):
                raise RootOutsideDomain(
                    f"{name} has the root {bad!r}, outside the domain of {kind.value}")


def _scaled_reverse(g_lift, alpha):
    """alpha^n g(x / alpha) for monic g of degree n."""
    L = g_lift.field
    n = g_lift.degree
    coeffs, pw = [L.zero] * (n + 1), L.one
    for k in range(n, -1, -1):
        coeffs[k] = L.mul(g_lift.coeffs[k], pw)
        pw = L.mul(pw, alpha)
    return Polynomial(L, coeffs)


def _irreducible_root_orbit(tower, h, level=None):
    level = level or tower.extend(h.degree)
    first = roots(h, level)[0]
    return level, orbit(level, first)


def composed_product(kind, f, g):
    """Closed forms for MUL (prod a^n g(x/a)) and SUM (prod g(x - a)); the
    circle kinds go through root pairs in the compositum."""
    kind = ComposedKind.parse(kind)
    _check_inputs(kind, f, g)
    tower = f.field.tower
    out = Polynomial(f.field, [1])
    for fi, e in factor(f):
        if kind in (ComposedKind.MUL, ComposedKind.SUM):
            level, alphas = _irreducible_root_orbit(tower, fi)
            gl = g.lift(level)
            terms = []
            for a in alphas:
                if kind is ComposedKind.MUL:
                    terms.append(_scaled_reverse(gl, a))
                else:
                    terms.append(gl.shift(level.neg(a)))
            piece = descend_or_fail(reduce(lambda u, v: u * v, terms))
        else:
            piece = Polynomial(f.field, [1])
            for gj, ej in factor(g):
                level = tower.extend(nt.lcm(fi.degree, gj.degree))
                alphas = roots(fi, level)
                betas = roots(gj, level)
                pairs = [kind.apply(level, a, b) for a in alphas for b in betas]
                piece = piece * descend_or_fail(Polynomial.from_roots(level, pairs)) ** ej
        out = out * piece ** e
    return out


def oracle_composed(kind, f, g):
    """Brute force: every root pair, in one extension holding all roots."""
    kind = ComposedKind.parse(kind)
    _check_inputs(kind, f, g)
    tower = f.field.tower
    ff, gf = factor(f), factor(g)
    L = nt.lcm(*[h.degree for h, _ in ff + gf])
    level = tower.extend(L)
    alphas = [a for h, e in ff for a in roots(h, level) for _ in range(e)]
    betas = [b for h, e in gf for b in roots(h, level) for _ in range(e)]
    pairs = [kind.apply(level, a, b) for a in alphas for b in betas]
    return descend_or_fail(Polynomial.from_roots(level, pairs))


def composed_product_lists(kind, fs, gs):
    """All pairwise composed products, canonically sorted."""
    out = [composed_product(kind, f, g) for f in fs for g in gs]
    return sorted(out, key=lambda h: h.sort_key())


def brawley_carlitz_irreducible(kind, f, g):
    """True iff f and g are irreducible with coprime degrees (then f ⋄ g is
    irreducible, and conversely a composed product of irreducibles of
    non-coprime degrees never is)."""
    ComposedKind.parse(kind)
    if f.degree < 1 or g.degree < 1:
        return False
    return nt.gcd(f.degree, g.degree) == 1 and is_irreducible(f) and is_irreducible(g)


def random_monic(field, degree, rng, avoid=None):
    """Random monic polynomial of the given degree; optionally without the root ``avoid``."""
    while True:
        coeffs = [field.random(rng) for _ in range(degree)] + [field.one]
        f = Polynomial(field, coeffs)
        if avoid is None or not field.is_zero(f(avoid)):
            return f


def random_irreducible(field, degree, rng):
    while True:
        f = random_monic(field, degree, rng)
        if is_irreducible(f):
            return f


__all__ = [
    "ComposedKind", "brawley_carlitz_irreducible", "composed_product",
    "composed_product_lists", "oracle_composed", "random_irreducible", "random_monic",
]
