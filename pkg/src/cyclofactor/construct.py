"""Irreducible polynomials built from a known one.

Every construction checks its preconditions, logs each of them, and
re-certifies its output with the Rabin test before calling it irreducible.
"""
from dataclasses import dataclass, field as dc_field
from functools import reduce

from . import ntheory as nt
from .composed import ComposedKind, composed_product
from .cyclotomic import cyclotomic_poly
from .errors import (
    HypothesisViolation, InputError, InternalError, NonDivisibility, SizeLimitExceeded,
)
from .factor import roots
from .orbits import descend_or_fail, minimal_polynomial
from .poly import Polynomial, is_irreducible, mod_context, poly_order


@dataclass(frozen=True)
class MinimalPolyPair:
    """Ψ_d, the minimal polynomial of α^d, with R_d = x^d mod f."""

    d: int
    R_d: Polynomial
    psi_d: Polynomial

    def to_json(self):
        return {"d": self.d, "R_d": self.R_d.to_ints(), "psi_d": self.psi_d.to_ints()}


@dataclass
class ConstructionReport:
    result: Polynomial
    degree: int
    irreducible: bool
    order: int = None
    expected_order: int = None
    hypothesis_log: list = dc_field(default_factory=list)
    components: list = dc_field(default_factory=list)

    @property
    def hypotheses_hold(self):
        return all(ok for _, ok, _ in self.hypothesis_log)

    def to_json(self):
        comps = [c.to_json() if hasattr(c, "to_json") and not isinstance(c, Polynomial)
                 else c.to_ints() for c in self.components]
        return {
            "result": self.result.to_ints() if self.result is not None else None,
            "degree": self.degree,
            "irreducible": self.irreducible,
            "order": self.order,
            "expected_order": self.expected_order,
            "hypotheses": [{"name": n, "pass": ok, "detail": det} for n, ok, det in self.hypothesis_log],
            "components": comps,
        }


class _Log:
    def __init__(self):
        self.entries = []

    def check(self, name, ok, detail=""):
        self.entries.append((name, bool(ok), detail))
        return bool(ok)

    def first_failure(self):
        for name, ok, detail in self.entries:
            if not ok:
                return name, detail
        return None

    def enforce(self, report=None):
        bad = self.first_failure()
        if bad:
            err = HypothesisViolation(*bad)
            err.log = list(self.entries)
            err.report = report
            raise err


def _order_or_none(f):
    try:
        return poly_order(f)
    except SizeLimitExceeded:
        return None


def _check_base(f):
    if f.field is not f.field.tower.base:
        raise InputError("constructions take polynomials over the base field F_q")
    if f.degree < 1 or not f.is_monic():
        raise InputError("f must be monic of positive degree")


def _log_irreducible(log, f):
    ok = log.check("f-irreducible", is_irreducible(f))
    ok &= log.check("f-nonzero-constant", not f.field.is_zero(f.coeffs[0]))
    return ok


# -- self divisibility ----------------------------------------------------------------

def check_self_divisibility(f, r):
    """(True, i) when r = q^i mod t for some 0 <= i < n, i.e. f(x) | f(x^r)."""
    _check_base(f)
    t = poly_order(f)
    q = f.field.tower.q
    r = int(r)
    qi = 1
    for i in range(f.degree):
        if (r - qi) % t == 0:
            return True, i
        qi = qi * q % t
    return False, None


# -- F_m from minimal polynomials of powers of a root --------------------------------------

def minimal_poly_pairs(f, ds, use_charpoly=False):
    """One MinimalPolyPair per d, with α the first root of f in F_{q^n}."""
    tower = f.field.tower
    level = tower.extend(f.degree)
    alpha = roots(f, level)[0]
    ctx = mod_context(f)
    out = []
    for d in ds:
        psi = minimal_polynomial(level, level.pow(alpha, d))
        if use_charpoly:
            psi = psi ** (f.degree // psi.degree)
        R = ctx.to_poly(ctx.pow(ctx.x(), d))
        out.append(MinimalPolyPair(d, R, psi))
    return out


def _moebius_assemble(m, pairs):
    num = den = None
    for pair in pairs:
        mu = nt.mu(m // pair.d)
        if not mu:
            continue
        term = pair.psi_d.compose_power(pair.d)
        if mu == 1:
            num = term if num is None else num * term
        elif mu == -1:
            den = term if den is None else den * term
    if den is None:
        return num
    quo, rem = divmod(num, den)
    if rem:
        raise NonDivisibility("the Möbius quotient is not a polynomial")
    return quo


def construct_fm(f, m, use_charpoly=False, strict=True, with_order=True):
    """F_m = prod over d | m of Ψ_d(x^d)^μ(m/d); irreducible of degree n φ(m)
    and order lcm(t, m) under the logged hypotheses.

    ``expected_order`` holds lcm(t, m); the measured ``order`` falls short of
    it when t and m have the same positive 2-adic valuation.

    ``use_charpoly`` replaces each Ψ_d by the characteristic polynomial of α^d
    (Ψ_d raised to n / deg Ψ_d), an experimental variant.  With
    ``strict=False`` failing hypotheses are logged instead of raised.
    """
    _check_base(f)
    m = int(m)
    if m < 1:
        raise InputError("m must be positive")
    q = f.field.tower.q
    n = f.degree
    log = _Log()
    good = _log_irreducible(log, f)
    log.check("q-primitive-root-mod-m", nt.is_primitive_root(q, m), f"q={q}, m={m}")
    log.check("degree-coprime-to-phi-m", nt.gcd(n, nt.phi(m)) == 1, f"n={n}, phi={nt.phi(m)}")
    t = poly_order(f) if good else None
    if t is not None and m % 2 == 0 and t % 2 == 0:
        half = t // 2
        o = nt.order_mod(q, half) if nt.gcd(q, half) == 1 else None
        log.check("half-order-condition", o == n, f"ord_{half}(q)={o}")
    if strict:
        log.enforce()
    if not good:
        return ConstructionReport(None, 0, False, hypothesis_log=log.entries)
    # d = 1 is kept even when μ(m) = 0: Ψ_1 = f is part of the record
    pairs = minimal_poly_pairs(f, [d for d in nt.divisors(m) if d == 1 or nt.mu(m // d)], use_charpoly)
    F = _moebius_assemble(m, pairs)
    irred = F.degree >= 1 and is_irreducible(F)
    if log.first_failure() is None and not irred:
        raise InternalError("hypotheses hold but the output is reducible")
    report = ConstructionReport(
        F, F.degree, irred, hypothesis_log=log.entries, components=pairs,
        expected_order=nt.lcm(t, m))
    if with_order and F.degree >= 1 and not F.field.is_zero(F.coeffs[0]):
        report.order = _order_or_none(F)
    return report


# -- f(x^r) / f(x) ---------------------------------------------------------------------------

def _log_quotient_base(log, f, r):
    q = f.field.tower.q
    n = f.degree
    good = _log_irreducible(log, f)
    log.check("r-prime", nt.is_prime(r), f"r={r}")
    log.check("q-primitive-root-mod-r", nt.is_primitive_root(q, r), f"q={q}, r={r}")
    log.check("degree-coprime-to-r-minus-1", nt.gcd(n, r - 1) == 1, f"n={n}")
    return good


def construct_thm2(f, r, k=None, with_order=False):
    """F = f(x^r) / f(x), which equals f ⊙ Φ_r; with ``k`` also F(x^(r^k)).

    F(x^(r^k)), when requested, is certified and appended to ``components``.
    """
    _check_base(f)
    r = int(r)
    log = _Log()
    good = _log_quotient_base(log, f, r)
    if good:
        ok, i = check_self_divisibility(f, r)
        log.check("self-divisibility", ok, f"witness i={i}" if ok else "r is no power of q mod t")
    n = f.degree
    q = f.field.tower.q
    if k is not None:
        log.check("r-odd", r % 2 == 1, f"r={r}")
        log.check("r-squared-not-dividing", (q ** (r - 1) - 1) % (r * r) != 0, f"r={r}")
        log.check("degree-coprime-to-r(r-1)", nt.gcd(n, r * (r - 1)) == 1, f"n={n}")
    bad = log.first_failure()
    if bad and bad[0] == "self-divisibility":
        raise NonDivisibility(f"f(x) does not divide f(x^{r})")
    log.enforce()
    quo, rem = divmod(f.compose_power(r), f)
    if rem:
        raise NonDivisibility(f"f(x) does not divide f(x^{r})")
    phi_r = cyclotomic_poly(f.field.tower, r)
    if quo != composed_product(ComposedKind.MUL, f, phi_r):
        raise InternalError("f(x^r)/f(x) differs from f ⊙ Φ_r")
    irred = is_irreducible(quo)
    if not irred:
        raise InternalError("hypotheses hold but f(x^r)/f(x) is reducible")
    report = ConstructionReport(quo, quo.degree, irred, hypothesis_log=log.entries,
                                components=[phi_r], expected_order=nt.lcm(poly_order(f), r))
    if with_order:
        report.order = _order_or_none(quo)
    if k is not None:
        lifted = quo.compose_power(r ** int(k))
        if not is_irreducible(lifted):
            raise InternalError("hypotheses hold but F(x^(r^k)) is reducible")
        report.components.append(lifted)
    return report


def thm2_power_equals_composed(f, r, k):
    """Whether F(x^(r^k)) equals f ⊙ Φ_(r^(k+1)) coefficient for coefficient."""
    F = f.compose_power(r).exact_div(f)
    big = cyclotomic_poly(f.field.tower, r ** (int(k) + 1))
    return F.compose_power(r ** int(k)) == composed_product(ComposedKind.MUL, f, big)


# -- Varshamov -------------------------------------------------------------------------------

def _minimal_relation(field, vectors):
    """Coefficients c_0..c_{k-1} of the first vector v_k with
    v_k = sum c_i v_i; plus k.  Plain Gaussian elimination over ``field``."""
    basis = []  # (pivot, row, combination)
    for k, v in enumerate(vectors):
        row = list(v)
        comb = [field.zero] * k + [field.one]
        for pivot, brow, bcomb in basis:
            c = row[pivot]
            if not field.is_zero(c):
                row = [field.sub(a, field.mul(c, b)) for a, b in zip(row, brow)]
                comb = [field.sub(a, field.mul(c, b)) for a, b in zip(comb, bcomb + [field.zero] * (len(comb) - len(bcomb)))]
        pivot = next((i for i, c in enumerate(row) if not field.is_zero(c)), None)
        if pivot is None:
            return comb, k
        inv = field.inv(row[pivot])
        basis.append((pivot, [field.mul(inv, a) for a in row], [field.mul(inv, a) for a in comb]))
    raise InternalError("no linear relation found")


def minimal_poly_of_residue(f, R):
    """Least-degree monic ψ with ψ(R) = 0 mod f, found by linear algebra on
    the powers of R modulo f."""
    field = f.field
    ctx = mod_context(f)
    n = f.degree
    cur, vecs = ctx.one(), []
    for _ in range(n + 1):
        arr = ctx.to_poly(cur)
        vecs.append([arr.coeff(i) for i in range(n)])
        cur = ctx.mul(cur, ctx.lift(R))
    comb, k = _minimal_relation(field, vecs)
    return Polynomial(field, comb)


def varshamov(f, r, with_order=True):
    """F = ψ(x^r) / f with ψ the minimal polynomial of α^r; irreducible of
    degree (r-1) n and order r t under the logged hypotheses."""
    _check_base(f)
    r = int(r)
    q = f.field.tower.q
    n = f.degree
    log = _Log()
    good = _log_irreducible(log, f)
    log.check("r-odd-prime", r % 2 == 1 and nt.is_prime(r), f"r={r}")
    log.check("q-primitive-root-mod-r", r % 2 == 1 and nt.is_primitive_root(q, r), f"q={q}, r={r}")
    log.check("degree-coprime-to-r-minus-1", nt.gcd(n, r - 1) == 1, f"n={n}")
    log.enforce()
    assert good
    ctx = mod_context(f)
    R = ctx.to_poly(ctx.pow(ctx.x(), r))
    psi = minimal_poly_of_residue(f, R)
    quo, rem = divmod(psi.compose_power(r), f)
    if rem:
        raise NonDivisibility("f does not divide ψ(x^r)")
    irred = is_irreducible(quo)
    if not irred:
        raise InternalError("hypotheses hold but ψ(x^r)/f is reducible")
    report = ConstructionReport(quo, quo.degree, irred, hypothesis_log=log.entries,
                                components=[MinimalPolyPair(r, R, psi)],
                                expected_order=r * poly_order(f))
    if with_order:
        report.order = _order_or_none(quo)
    return report


# -- Φ_r(x^(r^k)) -----------------------------------------------------------------------------

def phi_r_power(tower, r, k=0):
    """Φ_r(x^(r^k)) = Φ_(r^(k+1)), irreducible when q is a primitive root mod r
    and r^2 does not divide q^(r-1) - 1."""
    r, k = int(r), int(k)
    q = tower.q
    log = _Log()
    log.check("r-odd-prime", r % 2 == 1 and nt.is_prime(r), f"r={r}")
    log.check("q-primitive-root-mod-r", r % 2 == 1 and nt.is_primitive_root(q, r), f"q={q}, r={r}")
    log.check("r-squared-not-dividing", (q ** (r - 1) - 1) % (r * r) != 0, f"r={r}")
    log.enforce()
    out = cyclotomic_poly(tower, r).compose_power(r ** k)
    if not is_irreducible(out):
        raise InternalError("hypotheses hold but Φ_r(x^(r^k)) is reducible")
    return out


# -- Frobenius-conjugate products ---------------------------------------------------------------

def conjugate_product(g):
    """prod over u < d of g^(u), the coefficient-wise q^u-Frobenius twists of
    g over F_(q^d); the result lies over F_q."""
    level = g.field
    d = level.qdeg if level.tower is not None else 1
    if d == 1:
        return g
    twists = [g] + [g.frobenius_twist(u) for u in range(1, d)]
    return descend_or_fail(reduce(lambda a, b: a * b, twists))


def coefficient_field_degree(g):
    """Degree over F_q of the field generated by the coefficients of g."""
    level = g.field
    out = 1
    for c in g.coeffs:
        k, cur = 1, level.frob(c)
        while cur != c:
            cur = level.frob(cur)
            k += 1
        out = nt.lcm(out, k)
    return out


def conjugate_product_report(g):
    F = conjugate_product(g)
    d = g.field.qdeg if g.field.tower is not None else 1
    full = coefficient_field_degree(g) == d
    log = _Log()
    log.check("coefficient-field-full", full, f"d={d}")
    return ConstructionReport(F, F.degree, is_irreducible(F), hypothesis_log=log.entries,
                              components=[g])


def affine_substitution(f, alpha, beta, level):
    """f(αx + β) with f lifted to ``level``."""
    return f.lift(level).shift(level.elem(beta)).scale_variable(alpha)


__all__ = [
    "ConstructionReport", "MinimalPolyPair", "affine_substitution", "check_self_divisibility",
    "coefficient_field_degree", "conjugate_product", "conjugate_product_report", "construct_fm",
    "construct_thm2", "minimal_poly_of_residue", "minimal_poly_pairs", "phi_r_power",
    "thm2_power_equals_composed", "varshamov",
]
