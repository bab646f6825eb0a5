"""General factorization over any tower level (Cantor-Zassenhaus).

This is the independent oracle: it knows nothing about cyclotomic structure.
"""
import random

import numpy as np

from .errors import InputError
from .poly import Polynomial, gcd_arrays, mod_context, sub_arrays, trim


def _pth_root(field, a):
    # In a field of order p^D the inverse of x -> x^p is x -> x^(p^(D-1)).
    return field.pow(a, field.order // field.p)


def squarefree_decomposition(f):
    """List of (g, e) with f = lead * prod g^e, every g squarefree and monic."""
    f = f.monic()
    out = []
    _sqf(f, 1, out)
    return out


def _sqf(f, mult, out):
    field = f.field
    if f.degree < 1:
        return
    df = f.derivative()
    c = f.gcd(df) if df else f
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac, i * mult))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        p = field.p
        root = Polynomial(field, [_pth_root(field, c.coeffs[k]) for k in range(0, len(c.coeffs), p)])
        _sqf(root, mult * p, out)


def distinct_degree(f):
    """Split a squarefree monic f into (g, d): g the product of its degree-d factors."""
    field = f.field
    ctx = mod_context(f)
    x = ctx.x()
    h = x
    rest = f
    out = []
    d = 0
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = ctx.frob(h)
        g = Polynomial.from_array(field, gcd_arrays(field, rest.array(), sub_arrays(trim(h), x, field.p)))
        if g.degree > 0:
            out.append((g, d))
            rest = rest.exact_div(g)
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def equal_degree(f, d, rng):
    """Split a squarefree monic f whose irreducible factors all have degree d."""
    if f.degree == d:
        return [f]
    field = f.field
    ctx = mod_context(f)
    p = field.p
    n = f.degree
    while True:
        a = np.array([field.to_vec(field.random(rng)) for _ in range(n)], dtype=field.dtype)
        if not trim(a).any():
            continue
        if p == 2:
            # absolute trace from F_{2^(kd)} down to F_2
            steps = d * field.dim
            t, cur = a.copy(), a
            for _ in range(steps - 1):
                cur = ctx.mul(cur, cur)
                t = (t + cur) % p
            b = t
        else:
            acc, cur = a, a
            for _ in range(d - 1):
                cur = ctx.frob(cur)
                acc = ctx.mul(acc, cur)
            b = ctx.pow(acc, (field.order - 1) // 2)
            b = sub_arrays(b, ctx.one(), p)
        g = Polynomial.from_array(field, gcd_arrays(field, f.array(), trim(b)))
        if 0 < g.degree < n:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor(f, rng=None):
    """Irreducible factorization as a sorted list of (monic factor, multiplicity)."""
    if f.degree < 1:
        raise InputError("cannot factor a constant")
    rng = rng or random.Random(0)
    result = {}
    for g, e in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for piece in equal_degree(h, d, rng):
                result[piece] = result.get(piece, 0) + e
    return sorted(result.items(), key=lambda kv: kv[0].sort_key())


def irreducible_factors(f, rng=None):
    """Factors repeated according to multiplicity, canonically sorted."""
    out = []
    for g, e in factor(f, rng):
        out.extend([g] * e)
    return out


def roots(f, level=None, rng=None):
    """Distinct roots of f in ``level`` (default: f's own field), sorted."""
    level = level or f.field
    g = f.lift(level).monic()
    if g.degree < 1:
        return []
    rng = rng or random.Random(0)
    ctx = mod_context(g)
    xq = ctx.pow(ctx.x(), level.order)
    split = Polynomial.from_array(level, gcd_arrays(level, g.array(), sub_arrays(trim(xq), ctx.x(), level.p)))
    if split.degree < 1:
        return []
    out = []
    for lin in equal_degree(split, 1, rng):
        out.append(level.neg(lin.coeffs[0]))
    return sorted(out, key=level.sort_key)
