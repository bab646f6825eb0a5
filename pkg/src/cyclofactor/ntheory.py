"""Integer helpers: valuations, orders, totients, divisors.

Primality, factoring and the multiplicative order are delegated to sympy;
the rest are one-liners kept here so callers have a single import.
"""
from math import gcd

from sympy import divisors, factorint, isprime, mobius, n_order, totient

from .errors import SizeLimitExceeded

MAX_FACTOR = 2**128


def v2(k):
    """2-adic valuation of a non-zero integer."""
    if k == 0:
        raise ValueError("v2(0) is infinite")
    k = abs(k)
    return (k & -k).bit_length() - 1


def v2_by_halving(k):
    # Deliberately naive; used to cross-check closed forms.
    k, e = abs(k), 0
    while k % 2 == 0:
        k //= 2
        e += 1
    return e


def factor(n, limit=MAX_FACTOR):
    """Prime factorization of ``n`` as a dict, refusing ``n > limit``."""
    if n > limit:
        raise SizeLimitExceeded(f"refusing to factor {n} (> 2^128)")
    return {int(p): int(e) for p, e in factorint(n).items()}


def prime_factors(n):
    return sorted(factor(n)) if n > 1 else []


def order_mod(q, n):
    """Multiplicative order of q modulo n (1 for n = 1)."""
    if n == 1:
        return 1
    if gcd(q, n) != 1:
        raise ValueError(f"{q} is not a unit modulo {n}")
    return int(n_order(q, n))


def phi(n):
    return int(totient(n))


def mu(n):
    return int(mobius(n))


def is_prime(n):
    return bool(isprime(n))


def prime_power(q):
    """Split a prime power into (p, s); ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, s),) = f.items()
    return int(p), int(s)


def is_primitive_root(q, m):
    """True iff q generates the unit group modulo m."""
    if m <= 2:
        return gcd(q, m) == 1
    return gcd(q, m) == 1 and order_mod(q, m) == phi(m)


def lcm(*args):
    out = 1
    for a in args:
        out = out * a // gcd(out, a)
    return out


__all__ = [
    "MAX_FACTOR", "divisors", "factor", "gcd", "is_prime", "is_primitive_root",
    "lcm", "mu", "order_mod", "phi", "prime_factors", "prime_power", "v2",
    "v2_by_halving",
]
