"""Cyclotomic polynomials over F_q and their explicit factorization.

The closed-form factorizers of Φ_{2^n} and Φ_{2^n r} are driven by the 2-adic
profile of q.  Every factor is parameterized by an actual root (a product of
a 2-power root of unity and a primitive r-th root of unity), and that root is
carried along so later levels can be lifted by square roots instead of by
solving the coefficient recurrences.
"""
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import reduce

from . import ntheory as nt
from .composed import ComposedKind, composed_product
from .errors import (
    BadParity,
    CharacteristicDividesIndex,
    DegreeGrowth,
    EvenCharacteristic,
    GcdViolation,
    InputError,
    InternalError,
    NonResidue,
    NotPrimitiveRoot,
    OrdersNotCoprime,
)
from .orbits import descend_or_fail, minimal_polynomial, orbit_factorize_unity, unity_generator
from .poly import Polynomial, is_irreducible


# -- Φ_n itself -------------------------------------------------------------------

def cyclotomic_integer_coeffs(n):
    """Coefficients of Φ_n over Z (ascending), from the Möbius product."""
    if n < 1:
        raise InputError("cyclotomic index must be positive")
    num, den = [], []
    for d in nt.divisors(n):
        m = nt.mu(n // d)
        if m == 1:
            num.append(d)
        elif m == -1:
            den.append(d)
    poly = [1]
    for d in num:  # multiply by x^d - 1
        out = [0] * (len(poly) + d)
        for i, c in enumerate(poly):
            out[i] -= c
            out[i + d] += c
        poly = out
    for d in den:  # exact division by x^d - 1
        quo = [0] * (len(poly) - d)
        for k in range(len(quo)):
            quo[k] = (quo[k - d] if k >= d else 0) - poly[k]
        poly = quo
    return poly


def cyclotomic_poly(tower, n):
    if n % tower.p == 0:
        raise CharacteristicDividesIndex(f"p = {tower.p} divides n = {n}")
    return Polynomial(tower.base, cyclotomic_integer_coeffs(n))


# -- the 2-adic profile -------------------------------------------------------------

@dataclass(frozen=True)
class TwoAdicProfile:
    q: int
    r: int
    d_r: int
    A: int
    m_odd: int
    K: int
    L: int

    @property
    def q_mod4(self):
        return self.q % 4

    @property
    def d_even(self):
        return self.d_r % 2 == 0

    def as_dict(self):
        return {"q": self.q, "r": self.r, "q_mod_4": self.q_mod4, "A": self.A,
                "m": self.m_odd, "d_r": self.d_r, "K": self.K, "L": self.L}


def two_adic_exponent(q):
    """A with q = 2^A m +- 1: v2(q-1) for q = 1 mod 4, v2(q+1) for q = 3 mod 4."""
    if q % 2 == 0:
        raise BadParity(f"q = {q} must be odd")
    return nt.v2(q - 1) if q % 4 == 1 else nt.v2(q + 1)


def v2_power_minus_one(q, i):
    """v2(q^i - 1) for odd q by the closed form."""
    if i % 2:
        return nt.v2(q - 1)
    return nt.v2(q - 1) + nt.v2(i) + nt.v2(q + 1) - 1


def two_adic_profile(q, r):
    if q % 2 == 0 or r % 2 == 0:
        raise BadParity(f"q = {q} and r = {r} must both be odd")
    if r < 3:
        raise BadParity(f"r = {r} must be an odd integer >= 3")
    if nt.gcd(q, r) != 1:
        raise GcdViolation(f"gcd(q, r) = {nt.gcd(q, r)} != 1")
    d = nt.order_mod(q, r)
    A = two_adic_exponent(q)
    m = ((q - 1) if q % 4 == 1 else (q + 1)) >> A
    K = v2_power_minus_one(q, d)
    L = v2_power_minus_one(q, nt.phi(r))
    return TwoAdicProfile(q, r, d, A, m, K, L)


# -- factorization containers --------------------------------------------------------

@dataclass
class Entry:
    poly: Polynomial
    tag: str
    params: dict = dc_field(default_factory=dict)
    level: object = None  # where ``root`` lives, when a root is carried
    root: object = None


@dataclass
class Factorization:
    n: int
    factors: list
    provenance: list
    parameters: list

    @classmethod
    def from_entries(cls, n, entries):
        entries = sorted(entries, key=lambda e: e.poly.sort_key())
        return cls(n, [e.poly for e in entries], [e.tag for e in entries],
                   [e.params for e in entries])

    def __len__(self):
        return len(self.factors)

    def multiset(self):
        return Counter(tuple(f.to_ints()) for f in self.factors)

    def degrees(self):
        return sorted({f.degree for f in self.factors})

    def product(self):
        return reduce(lambda a, b: a * b, self.factors)

    def tuples(self):
        """Each factor as (a_1, ..., a_deg) for x^deg + a_1 x^(deg-1) + ... + a_deg."""
        return [tuple(f.descending()[1:]) for f in self.factors]

    def to_json(self):
        return {
            "n": self.n,
            "count": len(self.factors),
            "degrees": self.degrees(),
            "factors": [
                {"coeffs": f.to_ints(), "provenance": tag, "parameters": params}
                for f, tag, params in zip(self.factors, self.provenance, self.parameters)
            ],
        }


def certify(tower, fact):
    """Product = Φ_n, all factors distinct and irreducible, count = φ(n)/ord_n(q)."""
    n = fact.n
    if fact.product() != cyclotomic_poly(tower, n):
        raise InternalError(f"factor product differs from Φ_{n}")
    if len(set(fact.factors)) != len(fact.factors):
        raise InternalError(f"repeated factor in Φ_{n}")
    deg = nt.order_mod(tower.q, n)
    if len(fact.factors) != nt.phi(n) // deg or any(f.degree != deg for f in fact.factors):
        raise InternalError(f"factor count or degree wrong for Φ_{n}")
    for f in fact.factors:
        if not is_irreducible(f):
            raise InternalError(f"reducible factor {f} of Φ_{n}")
    return True


# -- small helpers ------------------------------------------------------------------

def negate_roots(f):
    """Monic polynomial whose roots are the negatives of f's: (-1)^deg f(-x)."""
    g = f.sign_flip()
    return g if f.degree % 2 == 0 else -g


def _substitute(entries, t, tag="power-substitution"):
    out = []
    for e in entries:
        params = dict(e.params, substitution=t, source=e.tag)
        out.append(Entry(e.poly.compose_power(t), tag, params))
    return out


def _two_power_roots(tower, level, m):
    """Primitive 2^m-th roots of unity in ``level`` as (odd exponent j, xi^j)."""
    if m == 0:
        return [(0, level.one)]
    xi = level.primitive_root_of_unity(2**m, tower.rng("unity", level.qdeg, 2**m))
    out, cur, sq = [], xi, level.mul(xi, xi)
    for j in range(1, 2**m, 2):
        out.append((j, cur))
        cur = level.mul(cur, sq)
    return out


def _root_json(level, a):
    return level.to_json(a)


# -- Φ_{2^n} --------------------------------------------------------------------------

def factor_phi_2n(tower, n, certify_result=True):
    """Φ_{2^n} over F_q, q odd."""
    q = tower.q
    if q % 2 == 0:
        raise EvenCharacteristic("Φ_{2^n} factorization needs odd q")
    if n < 1:
        raise InputError("n must be >= 1")
    base = tower.base
    entries = []
    if n == 1:
        entries.append(Entry(Polynomial(base, [1, 1]), "linear", {"v": _root_json(base, base.neg(base.one))}))
    elif q % 4 == 1:
        A = nt.v2(q - 1)
        m = min(n, A)
        for j, v in _two_power_roots(tower, base, m):
            if n <= A:
                entries.append(Entry(Polynomial(base, [base.neg(v), 1]), "linear",
                                     {"v": _root_json(base, v), "j": j}))
            else:
                t = 2 ** (n - A)
                entries.append(Entry(Polynomial.monomial(base, t) - Polynomial(base, [v]),
                                     "binomial", {"v": _root_json(base, v), "j": j}))
    else:
        A = nt.v2(q + 1)
        E = tower.extend(2)
        if n <= A:
            seen = set()
            for j, u in _two_power_roots(tower, E, n):
                if j in seen:
                    continue
                seen.update({j, (-j) % 2**n})
                c = E.add(u, E.inv(u))
                c = base.neg(E.descend(c))
                entries.append(Entry(Polynomial(base, [1, c, 1]), "trinomial",
                                     {"u": _root_json(E, u), "j": j}))
        else:
            seen = set()
            t = 2 ** (n - A)
            for j, u in _two_power_roots(tower, E, A + 1):
                if j in seen:
                    continue
                seen.update({j, j * q % 2 ** (A + 1)})
                c = E.descend(E.sub(u, E.inv(u)))
                poly = (Polynomial.monomial(base, t) + Polynomial.monomial(base, t // 2, c)
                        - Polynomial(base, [1]))
                entries.append(Entry(poly, "trinomial", {"u": _root_json(E, u), "j": j}))
    fact = Factorization.from_entries(2**n, entries)
    if certify_result:
        certify(tower, fact)
    return fact


# -- building blocks for Φ_{2^n r} ------------------------------------------------------

def _scaled_orbits(tower, level, orbits, m):
    """q = 1 mod 4, m <= A: factors v^d g_w(x/v) for v in U_m (inside F_q)."""
    base = tower.base
    out = []
    for j, v in _two_power_roots(tower, base, m):
        for w in orbits:
            g = w.minpoly
            d = g.degree
            coeffs = [base.mul(g.coeffs[d - i], base.pow(v, i)) for i in range(d + 1)][::-1]
            root = level.mul(level.embed(v), w.root)
            out.append(Entry(Polynomial(base, coeffs), "scaled-orbit",
                             {"v": _root_json(base, v), "j": j, "orbit": w.exponent},
                             level, root))
    return out


def _negated_orbits(level, orbits):
    return [Entry(negate_roots(w.minpoly), "negated-orbit", {"orbit": w.exponent},
                  level, level.neg(w.root)) for w in orbits]


def z_polynomial(level, u, sym):
    """Z_u = sum_i u^i S_i x^(d-i), a polynomial over ``level``; its roots are -u*w^(q^k)."""
    d = len(sym) - 1
    coeffs = [None] * (d + 1)
    pw = level.one
    for i in range(d + 1):
        coeffs[d - i] = level.mul(pw, level.embed(sym[i]))
        pw = level.mul(pw, u)
    return Polynomial(level, coeffs)


def conjugate_pair_product(level, u, sym):
    """Z_u times its coefficient-wise q-Frobenius conjugate, moved down to F_q."""
    z = z_polynomial(level, u, sym)
    return descend_or_fail(z * z.frobenius_twist())


def _conjugate_products(tower, level, orbits, m, q, tag):
    """q = 3 mod 4, d_r odd, 2 <= m <= A+1: degree-2d_r factors Z_u Z_u^sigma."""
    out = []
    seen = set()
    for j, u in _two_power_roots(tower, level, m):
        if j in seen:
            continue
        seen.update({j, j * q % 2**m})
        for w in orbits:
            poly = conjugate_pair_product(level, u, w.sym)
            root = level.neg(level.mul(u, w.root))
            out.append(Entry(poly, tag, {"u": _root_json(level, u), "j": j, "orbit": w.exponent},
                             level, root))
    return out


def _orbit_splits(tower, level, orbits, m):
    """q = 3 mod 4, d_r even, 2 <= m <= A: minimal polynomials of -u*w."""
    out = []
    seen = set()
    for j, u in _two_power_roots(tower, level, m):
        for w in orbits:
            beta = level.neg(level.mul(u, w.root))
            poly = minimal_polynomial(level, beta)
            if poly in seen:
                continue
            seen.add(poly)
            out.append(Entry(poly, "orbit-split", {"u": _root_json(level, u), "j": j, "orbit": w.exponent},
                             level, beta))
    return out


def split_lift(h, root=None, level=None):
    """Split h(x^2) = f(x) f(-x) for an irreducible h whose roots have square
    roots in the field F_q(root).

    ``root`` is a root of h in ``level``; when omitted one is found.  Returns
    ((f, sqrt(root)), (f(-x), -sqrt(root))) in canonical order.  DegreeGrowth
    signals that the square roots live in a larger field, i.e. h(x^2) is itself
    irreducible.
    """
    tower = h.field.tower
    if root is None:
        from .factor import roots

        level = tower.extend(h.degree)
        root = roots(h, level)[0]
    try:
        gamma = level.sqrt(root)
    except NonResidue:
        raise DegreeGrowth("root has no square root in its field; the degree grows") from None
    f = minimal_polynomial(level, gamma)
    if f.degree != h.degree:
        raise DegreeGrowth("square root generates a larger field")
    g = negate_roots(f)
    if f * g != h.compose_power(2):
        raise InternalError("split does not reproduce h(x^2)")
    pair = sorted([(f, gamma), (g, level.neg(gamma))], key=lambda t: t[0].sort_key())
    return tuple(pair)


def _lift_entries(entries):
    out = []
    for e in entries:
        for f, gamma in split_lift(e.poly, e.root, e.level):
            out.append(Entry(f, "split-lift", dict(e.params, lifted_from=e.tag), e.level, gamma))
    return out


def phi_2nr_entries(tower, prof, n):
    """Closed-form factor entries of Φ_{2^n r}, dispatching on the profile."""
    q, r, d, A, K = prof.q, prof.r, prof.d_r, prof.A, prof.K
    if q % 4 == 1:
        level = tower.extend(d)
        orbits = orbit_factorize_unity(tower, r, level)
        top = min(n, K)
        entries = _scaled_orbits(tower, level, orbits, min(top, A))
        for _ in range(A + 1, top + 1):
            entries = _lift_entries(entries)
        if n > K:
            entries = _substitute(entries, 2 ** (n - K))
        return entries
    if n == 1:
        level = tower.extend(d)
        return _negated_orbits(level, orbit_factorize_unity(tower, r, level))
    if d % 2:
        # Degrees stay 2d_r up to n = A+1 = v2(q^2 - 1), then double each step.
        level = tower.extend(2 * d)
        orbits = orbit_factorize_unity(tower, r, level)
        top = min(n, A + 1)
        tag = "conjugate-product" if top <= A else "conjugate-product-top"
        entries = _conjugate_products(tower, level, orbits, top, q, tag)
        if n > A + 1:
            entries = _substitute(entries, 2 ** (n - A - 1))
        return entries
    level = tower.extend(d)
    orbits = orbit_factorize_unity(tower, r, level)
    top = min(n, K)
    entries = _orbit_splits(tower, level, orbits, min(top, A))
    for _ in range(A + 1, top + 1):
        entries = _lift_entries(entries)
    if n > K:
        entries = _substitute(entries, 2 ** (n - K))
    return entries


def factor_phi_2nr(tower, n, r, certify_result=True):
    """Explicit factorization of Φ_{2^n r} over F_q (q odd, r odd >= 3)."""
    if tower.q % 2 == 0:
        raise BadParity(f"q = {tower.q} must be odd")
    if n < 1:
        raise InputError("n must be >= 1")
    prof = two_adic_profile(tower.q, r)
    fact = Factorization.from_entries(2**n * r, phi_2nr_entries(tower, prof, n))
    if certify_result:
        certify(tower, fact)
    return fact


def expected_degree(prof, n):
    """Common factor degree ord_{2^n r}(q), from the profile alone."""
    q, d, A, K = prof.q, prof.d_r, prof.A, prof.K
    if q % 4 == 3 and d % 2:
        if n == 1:
            return d
        return 2 * d if n <= A + 1 else 2 ** (n - A) * d
    return d if n <= K else 2 ** (n - K) * d


# -- the orbit oracle ------------------------------------------------------------------

def oracle_factor_cyclotomic(tower, n):
    """Minimal polynomials of the primitive n-th roots of unity, orbit by orbit."""
    if n % tower.p == 0:
        raise CharacteristicDividesIndex(f"p = {tower.p} divides n = {n}")
    entries = [Entry(w.minpoly, "orbit-oracle", {"exponent": w.exponent})
               for w in orbit_factorize_unity(tower, n)]
    return Factorization.from_entries(n, entries)


# -- composed-product factorizations ------------------------------------------------------

def factor_phi_coprime_composed(tower, n, certify_result=True):
    """Φ_n as all composed products f_1 ⊙ f_2 ⊙ ... of the prime-power factors,
    valid when the orders ord_{p_i^e_i}(q) are pairwise coprime."""
    if n % tower.p == 0:
        raise CharacteristicDividesIndex(f"p = {tower.p} divides n = {n}")
    parts = [ell**e for ell, e in sorted(nt.factor(n).items())]
    orders = [nt.order_mod(tower.q, m) for m in parts]
    for i in range(len(orders)):
        for j in range(i + 1, len(orders)):
            if nt.gcd(orders[i], orders[j]) != 1:
                raise OrdersNotCoprime(
                    f"ord_{parts[i]}(q) = {orders[i]} and ord_{parts[j]}(q) = {orders[j]} share a factor")
    if len(parts) <= 1:
        fact = oracle_factor_cyclotomic(tower, n)
        fact.provenance = ["orbit"] * len(fact.factors)
        return fact
    current = [(f, ()) for f in oracle_factor_cyclotomic(tower, parts[0]).factors]
    for idx, m in enumerate(parts[1:], start=1):
        nxt = []
        for g_i, g in enumerate(oracle_factor_cyclotomic(tower, m).factors):
            for f, label in current:
                nxt.append((composed_product(ComposedKind.MUL, f, g), label + (g_i,)))
        current = nxt
    entries = [Entry(f, "composed", {"moduli": parts, "orders": orders}) for f, _ in current]
    fact = Factorization.from_entries(n, entries)
    if certify_result:
        certify(tower, fact)
    return fact


def factor_phi_mn_primitive(tower, m, n, certify_result=True):
    """Φ_{mn} from the factors of Φ_n when q is a primitive root modulo m and
    gcd(φ(m), ord_n(q)) = 1: F_i = prod_{d|m} Ψ_{i,d}(x^d)^μ(m/d), with Ψ_{i,d}
    the factor of Φ_n vanishing at ξ_i^d."""
    q = tower.q
    if nt.gcd(m, n) != 1:
        raise GcdViolation(f"gcd(m, n) = {nt.gcd(m, n)} != 1")
    if (m * n) % tower.p == 0:
        raise CharacteristicDividesIndex(f"p = {tower.p} divides mn = {m * n}")
    if not nt.is_primitive_root(q, m):
        raise NotPrimitiveRoot(f"q = {q} is not a primitive root modulo {m}")
    e = nt.order_mod(q, n)
    if nt.gcd(nt.phi(m), e) != 1:
        raise GcdViolation(f"gcd(φ({m}), ord_{n}(q)) = {nt.gcd(nt.phi(m), e)} != 1")
    orbits = orbit_factorize_unity(tower, n)
    level = orbits[0].level
    entries = []
    for w in orbits:
        num, den = Polynomial(tower.base, [1]), Polynomial(tower.base, [1])
        used = {}
        for d in nt.divisors(m):
            mu = nt.mu(m // d)
            if mu == 0:
                continue
            target = level.pow(w.root, d)
            psi = next(o.minpoly for o in orbits if target in o.orbit)
            used[d] = psi.to_ints()
            term = psi.compose_power(d)
            if mu == 1:
                num = num * term
            else:
                den = den * term
        entries.append(Entry(num.exact_div(den), "minpoly-moebius",
                             {"orbit": w.exponent, "psi": {str(k): v for k, v in used.items()}}))
    fact = Factorization.from_entries(m * n, entries)
    if certify_result:
        certify(tower, fact)
    return fact


def factor_cyclotomic(tower, N, method="auto"):
    """Factor Φ_N by closed form where one applies, else (or additionally) by
    the orbit oracle.  ``auto`` runs both and insists they agree."""
    if method not in ("auto", "closed", "oracle"):
        raise InputError(f"unknown method {method!r}")
    if N % tower.p == 0:
        raise CharacteristicDividesIndex(f"p = {tower.p} divides n = {N}")
    n = nt.v2(N)
    r = N >> n
    if method == "oracle" or tower.q % 2 == 0 or n == 0:
        fact = oracle_factor_cyclotomic(tower, N)
        if method == "auto":
            certify(tower, fact)
        return fact
    closed = factor_phi_2n(tower, n) if r == 1 else factor_phi_2nr(tower, n, r)
    if method == "auto":
        oracle = oracle_factor_cyclotomic(tower, N)
        if closed.multiset() != oracle.multiset():
            raise InternalError(f"closed form and oracle disagree on Φ_{N}")
    return closed
