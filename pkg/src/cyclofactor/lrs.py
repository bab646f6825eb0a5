"""Linear recurring sequences, Berlekamp-Massey and the product-sequence checks."""
from dataclasses import dataclass, field as dc_field

from . import ntheory as nt
from .composed import ComposedKind, composed_product
from .cyclotomic import expected_degree, two_adic_profile
from .errors import InputError, LengthMismatch, MixedLevels
from .poly import Polynomial


@dataclass
class LinearSequence:
    """s_{n+k} = sum a_i s_{n+i}, with x^k - sum a_i x^i the (monic) charpoly."""

    charpoly: Polynomial
    init: tuple
    terms: list = dc_field(default_factory=list, repr=False)

    def __post_init__(self):
        f = self.charpoly.field
        if not self.charpoly.is_monic():
            raise InputError("the characteristic polynomial must be monic")
        self.init = tuple(f.elem(c) for c in self.init)
        if len(self.init) != self.charpoly.degree:
            raise LengthMismatch(
                f"{len(self.init)} initial terms for a recurrence of order {self.charpoly.degree}")
        self.terms = list(self.init)

    @property
    def field(self):
        return self.charpoly.field

    @property
    def order(self):
        return self.charpoly.degree


def generate(seq, N):
    """The first N terms, extending the buffer as needed."""
    f = seq.field
    k = seq.order
    a = [f.neg(c) for c in seq.charpoly.coeffs[:k]]
    buf = seq.terms
    while len(buf) < N:
        n = len(buf) - k
        acc = f.zero
        for i in range(k):
            acc = f.add(acc, f.mul(a[i], buf[n + i]))
        buf.append(acc)
    return buf[:N]


def product_sequence(S, T, N):
    if S.field is not T.field:
        raise MixedLevels("sequences over different fields")
    f = S.field
    return [f.mul(a, b) for a, b in zip(generate(S, N), generate(T, N))]


def berlekamp_massey(field, terms):
    """(minimal polynomial, linear complexity) of the finite prefix ``terms``."""
    f = field
    terms = [f.elem(t) for t in terms]
    C, B = [f.one], [f.one]
    L, m, b = 0, 1, f.one
    for n, s in enumerate(terms):
        d = s
        for i in range(1, L + 1):
            if i < len(C):
                d = f.add(d, f.mul(C[i], terms[n - i]))
        if f.is_zero(d):
            m += 1
            continue
        coef = f.div(d, b)
        shifted = [f.zero] * m + [f.mul(coef, c) for c in B]
        size = max(len(C), len(shifted))
        newC = [f.sub(C[i] if i < len(C) else f.zero, shifted[i] if i < len(shifted) else f.zero)
                for i in range(size)]
        if 2 * L <= n:
            B, L, b, m = C, n + 1 - L, d, 1
        else:
            m += 1
        C = newC
    C = (C + [f.zero] * (L + 1))[: L + 1]
    # the minimal polynomial is the reversal of the connection polynomial
    return Polynomial(f, C[::-1]), L


def safe_length(S, T):
    return 2 * S.order * T.order


def zierler_mills_check(S, T, N=None):
    """Whether the minimal polynomial of the product sequence divides the
    composed product of the two characteristic polynomials."""
    N = N or safe_length(S, T)
    prod = product_sequence(S, T, N)
    mp, L = berlekamp_massey(S.field, prod)
    if L == 0:
        return True
    return mp.divides(composed_product(ComposedKind.MUL, S.charpoly, T.charpoly))


def predicted_complexity(q, r, n):
    """Closed-form degree of one irreducible factor of Φ_(2^n r), and the
    full degree φ(2^n r) reached by a generic product sequence."""
    prof = two_adic_profile(q, r)
    return {"factor_degree": expected_degree(prof, n), "generic": nt.phi(2 ** n * r),
            "K": prof.K, "A": prof.A, "d_r": prof.d_r}


__all__ = [
    "LinearSequence", "berlekamp_massey", "generate", "predicted_complexity",
    "product_sequence", "safe_length", "zierler_mills_check",
]
