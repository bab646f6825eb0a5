"""Dense univariate polynomials over any level of a FieldTower.

Coefficients are stored as a trimmed ascending tuple of field elements.  The
heavy routines work on 2-D integer arrays of shape ``(len, dim)`` where row k
holds the F_p coordinates of the coefficient of x^k.
"""
from functools import lru_cache

import numpy as np

from . import ntheory as nt
from .errors import (
    DivisionByZeroPoly,
    HypothesisError,
    InputError,
    MixedLevels,
    ZeroConstantTerm,
)
from .ffield import convolve_mod, matmul_mod

# Above this many matrix entries ModContext falls back to long division.
_REDUCTION_LIMIT = 2_000_000


# -- array kernels -------------------------------------------------------------

def _empty(field):
    return np.zeros((0, field.dim), dtype=field.dtype)


def trim(arr):
    n = len(arr)
    while n and not arr[n - 1].any():
        n -= 1
    return arr[:n]


def add_arrays(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = (out[: len(b)] + b) % p
    return out


def sub_arrays(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros((n, a.shape[1]), dtype=a.dtype)
    out[: len(a)] += a
    out[: len(b)] -= b
    return out % p


def mul_arrays(field, a, b):
    if len(a) == 0 or len(b) == 0:
        return _empty(field)
    p = field.p
    if field.dim == 1:
        return convolve_mod(a[:, 0], b[:, 0], p)[:, None].astype(field.dtype)
    block = field.block
    n = len(a) + len(b) - 1
    pa = np.zeros((len(a), block), dtype=field.dtype)
    pb = np.zeros((len(b), block), dtype=field.dtype)
    pa[:, field._pos] = a
    pb[:, field._pos] = b
    c = convolve_mod(pa.reshape(-1), pb.reshape(-1), p)
    full = np.zeros(n * block, dtype=c.dtype)
    full[: len(c)] = c[: n * block]
    return matmul_mod(full.reshape(n, block), field.reduction, p).astype(field.dtype)


def scale_array(field, a, c):
    if field.dim == 1:
        return (a * int(c)) % field.p
    return matmul_mod(a, field.mul_matrix(c), field.p).astype(field.dtype)


def _mul_stack(field, rows):
    """Stacked multiplication matrices so that ``c @ stack`` gives every c*row."""
    return np.hstack([field.mul_matrix(field.from_vec(r)) for r in rows])


def divmod_arrays(field, a, b):
    b = trim(b)
    if len(b) == 0:
        raise DivisionByZeroPoly("division by the zero polynomial")
    a = trim(a)
    n = len(b) - 1
    if len(a) <= n:
        return _empty(field), a
    p = field.p
    lead = field.from_vec(b[-1])
    inv = field.inv(lead)
    bm = b if lead == field.one else scale_array(field, b, inv)
    if n == 0:
        return trim(scale_array(field, a, inv)), _empty(field)
    if field.dim == 1:
        r = a[:, 0].copy()
        low = bm[:n, 0]
        quo = np.zeros(len(a) - n, dtype=field.dtype)
        for k in range(len(a) - 1, n - 1, -1):
            c = int(r[k])
            if c:
                quo[k - n] = c
                r[k - n:k] = (r[k - n:k] - c * low) % p
                r[k] = 0
        q = quo[:, None]
        rem = r[:n, None]
    else:
        dim = field.dim
        stack = _mul_stack(field, bm[:n])
        r = a.copy()
        q = np.zeros((len(a) - n, dim), dtype=field.dtype)
        for k in range(len(a) - 1, n - 1, -1):
            c = r[k]
            if c.any():
                q[k - n] = c
                r[k - n:k] = (r[k - n:k] - matmul_mod(c, stack, p).reshape(n, dim)) % p
                r[k] = 0
        rem = r[:n]
    if lead != field.one:
        q = scale_array(field, q, inv)
    return trim(q), trim(rem)


def monic_array(field, a):
    a = trim(a)
    if len(a) == 0:
        return a
    lead = field.from_vec(a[-1])
    if lead == field.one:
        return a
    return scale_array(field, a, field.inv(lead))


def gcd_arrays(field, a, b):
    a, b = trim(a), trim(b)
    while len(b):
        a, b = b, divmod_arrays(field, a, b)[1]
    return monic_array(field, a)


# -- Polynomial ----------------------------------------------------------------

class Polynomial:
    """Immutable polynomial with coefficients in ``field`` (ascending order)."""

    __slots__ = ("field", "coeffs", "_arr")

    def __init__(self, field, coeffs=()):
        cs = [field.elem(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._arr = None

    @classmethod
    def from_array(cls, field, arr):
        arr = trim(np.asarray(arr))
        obj = cls.__new__(cls)
        obj.field = field
        if field.dim == 1:
            obj.coeffs = tuple(int(c) for c in arr[:, 0].tolist())
        else:
            obj.coeffs = tuple(tuple(row) for row in arr.tolist())
        obj._arr = None
        return obj

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def monomial(cls, field, k, c=1):
        return cls(field, [0] * k + [c])

    @classmethod
    def from_roots(cls, field, roots):
        """``prod (x - r)`` over the given roots."""
        arr = np.zeros((1, field.dim), dtype=field.dtype)
        arr[0] = field.to_vec(field.one)
        p = field.p
        for r in roots:
            shifted = np.zeros((len(arr) + 1, field.dim), dtype=field.dtype)
            shifted[1:] = arr
            shifted[:-1] = (shifted[:-1] - scale_array(field, arr, r)) % p
            arr = shifted
        return cls.from_array(field, arr)

    # -- basic properties --------------------------------------------------------
    def array(self):
        if self._arr is None:
            f = self.field
            arr = np.zeros((len(self.coeffs), f.dim), dtype=f.dtype)
            for i, c in enumerate(self.coeffs):
                arr[i] = f.to_vec(c)
            self._arr = arr
        return self._arr

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (self.field.one,)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field is other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def sort_key(self):
        key = self.field.sort_key
        return (len(self.coeffs), tuple(key(c) for c in self.coeffs))

    # -- ring operations ----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial(self.field, [other])
        if other.field is not self.field:
            raise MixedLevels(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Polynomial.from_array(self.field, add_arrays(self.array(), other.array(), self.field.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Polynomial.from_array(self.field, sub_arrays(self.array(), other.array(), self.field.p))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Polynomial.from_array(self.field, (-self.array()) % self.field.p)

    def __mul__(self, other):
        other = self._check(other)
        return Polynomial.from_array(self.field, mul_arrays(self.field, self.array(), other.array()))

    __rmul__ = __mul__

    def __pow__(self, e):
        result = Polynomial(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        q, r = divmod_arrays(self.field, self.array(), other.array())
        return Polynomial.from_array(self.field, q), Polynomial.from_array(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise HypothesisError("polynomial division is not exact")
        return q

    def divides(self, other):
        return not (other % self)

    def scale(self, c):
        """Multiply every coefficient by the field element ``c``."""
        return Polynomial.from_array(self.field, scale_array(self.field, self.array(), self.field.elem(c)))

    def monic(self):
        if not self.coeffs:
            raise DivisionByZeroPoly("the zero polynomial has no monic form")
        return Polynomial.from_array(self.field, monic_array(self.field, self.array()))

    def gcd(self, other):
        other = self._check(other)
        return Polynomial.from_array(self.field, gcd_arrays(self.field, self.array(), other.array()))

    def __call__(self, a):
        """Evaluate at an element of the coefficient field (Horner)."""
        f = self.field
        a = f.elem(a)
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, a), c)
        return acc

    def evaluate_in(self, level, a):
        """Evaluate at an element of a larger level via coefficient embedding."""
        return self.lift(level)(a)

    def derivative(self):
        f = self.field
        return Polynomial(f, [f.mul(f.elem(k % f.p), c) for k, c in enumerate(self.coeffs)][1:])

    # -- substitutions --------------------------------------------------------
    def compose_power(self, t):
        """f(x^t)."""
        if t < 1:
            raise InputError("exponent must be positive")
        arr = self.array()
        out = np.zeros(((len(arr) - 1) * t + 1 if len(arr) else 0, self.field.dim), dtype=arr.dtype)
        out[::t] = arr
        return Polynomial.from_array(self.field, out)

    def sign_flip(self):
        """f(-x)."""
        arr = self.array().copy()
        arr[1::2] = (-arr[1::2]) % self.field.p
        return Polynomial.from_array(self.field, arr)

    def scale_variable(self, a):
        """f(a x)."""
        f = self.field
        a = f.elem(a)
        out, pw = [], f.one
        for c in self.coeffs:
            out.append(f.mul(c, pw))
            pw = f.mul(pw, a)
        return Polynomial(f, out)

    def shift(self, b):
        """f(x + b)."""
        f = self.field
        lin = Polynomial(f, [b, 1])
        acc = Polynomial(f, [])
        for c in reversed(self.coeffs):
            acc = acc * lin + Polynomial(f, [c])
        return acc

    def reciprocal(self):
        """x^deg f(1/x)."""
        return Polynomial(self.field, self.coeffs[::-1])

    def frobenius_twist(self, k=1):
        """Apply c -> c^(q^k) to every coefficient."""
        f = self.field
        if not hasattr(f, "frob_rows"):
            return self
        return Polynomial.from_array(f, f.frob_rows(self.array(), k))

    def lift(self, level):
        """The same polynomial with coefficients embedded into ``level``."""
        if level is self.field:
            return self
        return Polynomial(level, [level.embed(c) for c in self.coeffs])

    def descend(self, base=None):
        """Coefficients moved down to the base field; ValueError if impossible."""
        f = self.field
        base = base or f.tower.base
        if base is f:
            return self
        return Polynomial(base, [f.descend(c) for c in self.coeffs])

    # -- presentation ------------------------------------------------------------
    def to_ints(self):
        """Integer representative (base-p index) of every coefficient, ascending."""
        return [self.field.index(c) for c in self.coeffs] if self.field.dim > 1 else list(self.coeffs)

    def to_text(self):
        return ",".join(str(c) for c in self.to_ints())

    def to_json(self):
        f = self.field
        level = f.qdeg if f.tower is not None else 1
        return {"level": level, "coeffs": [f.to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, tower, data):
        level = tower.extend(int(data.get("level", 1)))
        return cls(level, [tuple(c) if isinstance(c, list) else c for c in data["coeffs"]])

    @classmethod
    def from_text(cls, field, text):
        parts = [t for t in text.replace(";", ",").replace(" ", "").split(",") if t]
        try:
            ints = [int(t) for t in parts]
        except ValueError:
            raise InputError(f"bad polynomial text {text!r}") from None
        if field.dim == 1:
            return cls(field, ints)
        if any(not 0 <= c < field.order for c in ints):
            raise InputError("coefficient index out of range")
        return cls(field, [field.from_index(c) for c in ints])

    def descending(self):
        """Coefficients from the leading one down, as integer representatives."""
        return self.to_ints()[::-1]

    def __repr__(self):
        return f"Polynomial({self.field!r}, {self.to_ints()})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        ints = self.to_ints()
        for k in range(len(ints) - 1, -1, -1):
            c = ints[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def poly_from_ints(field, ints):
    return Polynomial(field, ints)


# -- modular arithmetic ---------------------------------------------------------

class ModContext:
    """Arithmetic in ``field[x]/(g)`` on coefficient arrays of shape (n, dim)."""

    def __init__(self, g):
        if g.degree < 1:
            raise InputError("modulus must have positive degree")
        self.field = field = g.field
        self.g = g.monic()
        self.n = n = self.g.degree
        self.dim = dim = field.dim
        self.p = field.p
        self._frob = None
        self.red = None
        if (n - 1) * dim * n * dim <= _REDUCTION_LIMIT:
            self.red = self._reduction_matrix()

    def _basis_matrices(self):
        f = self.field
        return [f.mul_matrix(f.from_vec([0] * b + [1])) for b in range(self.dim)]

    def _reduction_matrix(self):
        f, n, dim, p = self.field, self.n, self.dim, self.p
        garr = self.g.array()
        low = garr[:n]
        stack = _mul_stack(f, low) if dim > 1 else None
        cur = (-low) % p  # x^n mod g
        rows = []
        basis = self._basis_matrices() if dim > 1 else None
        for _ in range(n, 2 * n - 1):
            if dim == 1:
                rows.append(cur[:, 0].copy())
            else:
                for m in basis:
                    rows.append(matmul_mod(cur, m, p).reshape(-1))
            top = cur[n - 1].copy()
            nxt = np.zeros_like(cur)
            nxt[1:] = cur[:-1]
            if top.any():
                if dim == 1:
                    nxt = (nxt - int(top[0]) * low) % p
                else:
                    nxt = (nxt - matmul_mod(top, stack, p).reshape(n, dim)) % p
            cur = nxt
        if not rows:
            return np.zeros((0, n * dim), dtype=f.dtype)
        return np.array(rows, dtype=f.dtype)

    def zero(self):
        return np.zeros((self.n, self.dim), dtype=self.field.dtype)

    def one(self):
        out = self.zero()
        out[0] = self.field.to_vec(self.field.one)
        return out

    def x(self):
        if self.n == 1:
            return self.reduce(Polynomial.x(self.field).array())
        out = self.zero()
        out[1] = self.field.to_vec(self.field.one)
        return out

    def lift(self, poly):
        return self.reduce(poly.array())

    def to_poly(self, arr):
        return Polynomial.from_array(self.field, arr)

    def reduce(self, arr):
        n, dim, p = self.n, self.dim, self.p
        m = len(arr)
        if m <= n:
            out = self.zero()
            out[:m] = arr
            return out
        if self.red is not None and m <= 2 * n - 1:
            high = arr[n:].reshape(-1)
            res = (arr[:n].reshape(-1) + matmul_mod(high, self.red[: len(high)], p)) % p
            return res.reshape(n, dim).astype(self.field.dtype)
        rem = divmod_arrays(self.field, arr, self.g.array())[1]
        out = self.zero()
        out[: len(rem)] = rem
        return out

    def mul(self, a, b):
        return self.reduce(mul_arrays(self.field, trim(a), trim(b)))

    def pow(self, a, e):
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    @property
    def frobenius_matrix(self):
        """F_p matrix of ``v -> v^Q`` on flattened residues, Q = |field|."""
        if self._frob is None:
            f, n, dim, p = self.field, self.n, self.dim, self.p
            xq = self.pow(self.x(), f.order)
            basis = self._basis_matrices() if dim > 1 else None
            rows = []
            cur = self.one()
            for _ in range(n):
                if dim == 1:
                    rows.append(cur.reshape(-1))
                else:
                    for m in basis:
                        rows.append(matmul_mod(cur, m, p).reshape(-1))
                cur = self.mul(cur, xq)
            self._frob = np.array(rows, dtype=f.dtype)
        return self._frob

    def frob(self, a, k=1):
        m = self.frobenius_matrix
        v = a.reshape(-1)
        for _ in range(k):
            v = matmul_mod(v, m, self.p)
        return v.reshape(self.n, self.dim).astype(self.field.dtype)


@lru_cache(maxsize=64)
def mod_context(g):
    return ModContext(g)


# -- irreducibility ----------------------------------------------------------------

def is_irreducible(f):
    """Rabin's test: x^(Q^n) = x mod f and gcd(x^(Q^(n/l)) - x, f) = 1 for
    each prime l | n, where Q is the size of the coefficient field."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    field = f.field
    ctx = mod_context(f.monic())
    x = ctx.x()
    checkpoints = {n // ell for ell in nt.prime_factors(n)}
    h = x
    for k in range(1, n + 1):
        h = ctx.frob(h)
        if k in checkpoints:
            g = gcd_arrays(field, ctx.g.array(), sub_arrays(h, x, field.p))
            if len(g) > 1:
                return False
    return bool(np.array_equal(h, x))


def ben_or(f):
    """Early-exit irreducibility test (checks for factors of degree <= n/2)."""
    n = f.degree
    if n < 1:
        return False
    field = f.field
    ctx = mod_context(f.monic())
    x = ctx.x()
    h = x
    garr = ctx.g.array()
    for _ in range(n // 2):
        h = ctx.frob(h)
        if len(gcd_arrays(field, garr, sub_arrays(h, x, field.p))) > 1:
            return False
    return True


def first_irreducible(level, d, rng=None):
    """First monic irreducible of degree d over ``level`` in a fixed
    enumeration: constant term non-zero, coefficients read as digits with the
    constant term most significant.  A seeded RNG picks the starting point."""
    Q = level.order
    if d == 1:
        return [level.zero, level.one]
    span = Q ** (d - 1)
    total = (Q - 1) * span
    start = rng.randrange(total) if rng is not None else 0
    for step in range(total):
        idx = (start + step) % total
        head, rest = divmod(idx, span)
        coeffs = [level.from_index(head + 1)]
        digits = []
        for _ in range(d - 1):
            rest, r = divmod(rest, Q)
            digits.append(level.from_index(r))
        coeffs.extend(reversed(digits))
        coeffs.append(level.one)
        cand = Polynomial(level, coeffs)
        if ben_or(cand):
            if not is_irreducible(cand):
                raise AssertionError("Ben-Or and Rabin disagree")
            return coeffs
    raise AssertionError(f"no irreducible polynomial of degree {d}")


# -- polynomial order ----------------------------------------------------------------

def poly_order(f):
    """Least t with f | x^t - 1 (f(0) != 0).

    For irreducible f this descends prime-by-prime from Q^n - 1.  Otherwise the
    factorization is used: ord(g^e) = ord(g) * p^c with p^c the least power >= e.
    """
    if f.degree < 1:
        raise InputError("order needs a polynomial of positive degree")
    if f.field.is_zero(f.coeffs[0]):
        raise ZeroConstantTerm("f(0) = 0, so f has no order")
    if is_irreducible(f):
        return _irreducible_order(f)
    from .factor import factor

    t = 1
    p = f.field.p
    for g, e in factor(f):
        c = 1
        while c < e:
            c *= p
        t = nt.lcm(t, _irreducible_order(g) * c)
    return t


def _irreducible_order(f):
    n = f.degree
    if n == 1:
        fld = f.field
        return fld.element_order(fld.neg(fld.div(f.coeffs[0], f.coeffs[1])))
    ctx = mod_context(f.monic())
    one, x = ctx.one(), ctx.x()
    t = f.field.order ** n - 1
    for ell, e in nt.factor(t).items():
        for _ in range(e):
            if np.array_equal(ctx.pow(x, t // ell), one):
                t //= ell
            else:
                break
    return t
