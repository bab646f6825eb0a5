"""Exact arithmetic in F_p, a base field F_q = F_p[y]/(m(y)) and single-step
extensions F_{q^d} = F_q[z]/(M(z)).

Elements of a prime field are plain ints.  Elements of an extension are tuples
of ``dim`` ints in [0, p): the coefficient of ``z^i y^j`` sits at index
``i*s + j``.  With this layout an element of F_{q^d} lies in F_q exactly when
every coordinate past the first ``s`` is zero, so descent is a slice.

Multiplication packs both operands into one integer polynomial (Kronecker
substitution, ``y^j z^i -> X^(i*(2s-1) + j)``), convolves, and maps the
``(2d-1)(2s-1)`` product slots back to ``dim`` coordinates with a precomputed
reduction matrix.
"""
import random
from dataclasses import dataclass

import numpy as np

from . import ntheory as nt
from .errors import (
    CharacteristicDividesOrder,
    CompositeCharacteristic,
    InputError,
    NonResidue,
    ZeroElement,
)

_FLOAT_EXACT = 2**52
_INT64_SAFE = 2**62


def int_dtype(p):
    return np.int64 if p < 2**31 else object


def matmul_mod(a, b, p):
    """``(a @ b) % p`` for integer arrays with entries in [0, p).

    Uses a float64 BLAS product whenever every partial sum stays below 2^52,
    which covers all desk-scale characteristics.
    """
    inner = a.shape[-1]
    bound = inner * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        out = np.rint(np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64))
        return out.astype(np.int64) % p
    if bound < _INT64_SAFE:
        return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
    return (np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)) % p


def convolve_mod(a, b, p):
    if min(len(a), len(b)) * (p - 1) ** 2 < _INT64_SAFE:
        return np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % p
    return np.convolve(np.asarray(a, dtype=object), np.asarray(b, dtype=object)) % p


class _Level:
    """Behaviour shared by the prime field and the extension levels."""

    p: int
    dim: int
    order: int
    q: int
    tower = None

    # -- derived metadata ---------------------------------------------------
    def _degree_over_q(self):
        """Degree of this level over the tower's base field F_q (0 below it)."""
        d, o = 0, 1
        while o < self.order:
            o *= self.q
            d += 1
        return d if o == self.order else 0

    @property
    def characteristic(self):
        return self.p

    # -- generic arithmetic -------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, e):
        e = int(e)
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroElement("zero has no inverse")
        if a == self.one:
            return a
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frob(self, a, k=1):
        """``a^(q^k)``: the k-th power of the q-Frobenius."""
        return self.pow(a, self.q ** k) if k else a

    # -- enumeration and sampling -------------------------------------------
    def from_index(self, i):
        digits = []
        for _ in range(self.dim):
            i, r = divmod(i, self.p)
            digits.append(r)
        return self.from_vec(digits)

    def index(self, a):
        out = 0
        for c in reversed(self.to_vec(a).tolist()):
            out = out * self.p + int(c)
        return out

    def elements(self):
        for i in range(self.order):
            yield self.from_index(i)

    def random(self, rng):
        return self.from_vec([rng.randrange(self.p) for _ in range(self.dim)])

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def sort_key(self, a):
        return tuple(self.to_vec(a).tolist())

    # -- orders, roots of unity, square roots --------------------------------
    def element_order(self, a):
        if self.is_zero(a):
            raise ZeroElement("the zero element has no multiplicative order")
        t = self.order - 1
        for ell, e in nt.factor(t).items():
            for _ in range(e):
                if self.pow(a, t // ell) == self.one:
                    t //= ell
                else:
                    break
        return t

    def primitive_root_of_unity(self, n, rng):
        """A seeded-random element of exact order ``n``; n must divide |F|-1."""
        if (self.order - 1) % n:
            raise CharacteristicDividesOrder(
                f"{n} does not divide {self.order}-1; no primitive {n}-th root here")
        if n == 1:
            return self.one
        cofactor = (self.order - 1) // n
        primes = nt.prime_factors(n)
        while True:
            b = self.pow(self.random_nonzero(rng), cofactor)
            if all(self.pow(b, n // ell) != self.one for ell in primes):
                return b

    def is_square(self, a):
        if self.is_zero(a) or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def _nonresidue(self):
        cached = getattr(self, "_nonres", None)
        if cached is None:
            i = 1
            while True:
                c = self.from_index(i)
                if not self.is_square(c):
                    break
                i += 1
            cached = self._nonres = c
        return cached

    def sqrt(self, a):
        """Square root by Tonelli-Shanks; the canonical root of the pair +-y
        is the one with the lexicographically smaller coordinate vector."""
        a = self.elem(a)
        if self.is_zero(a):
            return a
        Q = self.order
        if self.p == 2:
            return self.pow(a, Q // 2)
        if not self.is_square(a):
            raise NonResidue(f"{a} is not a square in a field of order {Q}")
        e = nt.v2(Q - 1)
        t = (Q - 1) >> e
        c = self.pow(self._nonresidue(), t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        m = e
        one = self.one
        while b != one:
            i, bb = 1, self.mul(b, b)
            while bb != one:
                bb = self.mul(bb, bb)
                i += 1
            g = self.pow(c, 1 << (m - i - 1))
            x = self.mul(x, g)
            c = self.mul(g, g)
            b = self.mul(b, c)
            m = i
        y = self.neg(x)
        return min(x, y, key=self.sort_key)

    # -- relation to the base field -----------------------------------------
    def embed(self, c):
        """Image of a base-field (F_q) element in this level."""
        base = self.tower.base if self.tower is not None else self
        if base is self:
            return self.elem(c)
        v = list(base.to_vec(base.elem(c)).tolist())
        return self.from_vec(v + [0] * (self.dim - len(v)))

    def in_base(self, a):
        if self.tower is None or self.tower.base is self:
            return True
        return not any(self.to_vec(a)[self.tower.s:].tolist())

    def descend(self, a):
        """Return ``a`` as an element of F_q; ValueError if it is not there."""
        if self.tower is None or self.tower.base is self:
            return a
        if not self.in_base(a):
            raise ValueError("element does not lie in the base field")
        return self.tower.base.from_vec(self.to_vec(a)[: self.tower.s])


class PrimeField(_Level):
    """F_p with elements represented by ints in [0, p)."""

    def __init__(self, p, tower=None):
        if not nt.is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        self.p = self.order = int(p)
        self.q = tower.q if tower is not None else self.p
        self.dim = 1
        self.tower = tower
        self.zero, self.one = 0, 1
        self.dtype = int_dtype(self.p)
        self.qdeg = self._degree_over_q()

    def __repr__(self):
        return f"GF({self.p})"

    def elem(self, x):
        if isinstance(x, (tuple, list, np.ndarray)):
            if len(x) > 1 and any(int(v) % self.p for v in x[1:]):
                raise InputError(f"{x!r} is not an element of GF({self.p})")
            x = x[0] if len(x) else 0
        return int(x) % self.p

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroElement("zero has no inverse")
        return pow(a, -1, self.p)

    def frob(self, a, k=1):
        return a

    def to_vec(self, a):
        return np.array([a], dtype=self.dtype)

    def from_vec(self, v):
        return int(v[0]) % self.p if len(v) else 0

    def mul_matrix(self, a):
        return np.array([[a]], dtype=self.dtype)

    def sort_key(self, a):
        return a

    def to_json(self, a):
        return [a]


class ExtField(_Level):
    """F_p[y]/(inner) [z]/(outer), the inner part optional.

    ``outer`` is a list of ``d+1`` coefficient vectors (each of length ``s``,
    ascending in z, monic); ``inner`` the ascending F_p coefficients of the
    degree-``s`` modulus of the coefficient field, or None when s = 1.
    """

    def __init__(self, p, outer, inner=None, q=None, tower=None):
        self.p = int(p)
        self.inner = tuple(int(c) % p for c in inner) if inner else None
        s = self.s = len(self.inner) - 1 if self.inner else 1
        self.outer = tuple(tuple(int(c) % p for c in row) for row in outer)
        d = self.d = len(self.outer) - 1
        if d < 1 or any(len(row) != s for row in self.outer):
            raise InputError("malformed extension modulus")
        self.dim = s * d
        self.order = self.p ** self.dim
        self.q = q if q is not None else self.p ** s
        self.tower = tower
        self.dtype = int_dtype(self.p)
        self.zero = (0,) * self.dim
        self.one = (1,) + (0,) * (self.dim - 1)
        self.qdeg = self._degree_over_q()
        w = 2 * s - 1
        self._pos = np.array([i * w + j for i in range(d) for j in range(s)])
        self._packlen = (d - 1) * w + s
        self.block = (2 * d - 1) * w
        self.reduction = self._build_reduction(w)
        self._frob_matrix = None

    def __repr__(self):
        return f"GF({self.p}^{self.dim})"

    # Reduction matrix: row k is the reduced image of the packed monomial X^k.
    def _build_reduction(self, w):
        p, s, d = self.p, self.s, self.d
        inner = self.inner

        def reduce_y(v):
            v = list(v)
            if inner:
                for k in range(len(v) - 1, s - 1, -1):
                    c = v[k]
                    if c:
                        for j in range(s + 1):
                            v[k - s + j] = (v[k - s + j] - c * inner[j]) % p
            return (v + [0] * s)[:s]

        def imul(a, b):
            prod = [0] * (2 * s - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
            return reduce_y(prod)

        ypow = [reduce_y([0] * j + [1]) for j in range(w)]
        zero = [0] * s
        one = [1] + [0] * (s - 1)
        cur = [one] + [zero] * (d - 1)
        zpow = []
        for _ in range(2 * d - 1):
            zpow.append(cur)
            top = cur[d - 1]
            nxt = [zero] + cur[:-1]
            if any(top):
                nxt = [
                    [(a - b) % p for a, b in zip(nxt[k], imul(top, self.outer[k]))]
                    for k in range(d)
                ]
            cur = nxt
        red = np.zeros((self.block, self.dim), dtype=self.dtype)
        for i in range(2 * d - 1):
            for j in range(w):
                row = red[i * w + j]
                for k in range(d):
                    row[k * s:(k + 1) * s] = imul(ypow[j], zpow[i][k])
        return red

    # -- element plumbing -----------------------------------------------------
    def elem(self, x):
        if isinstance(x, (tuple, list, np.ndarray)):
            v = [int(c) % self.p for c in x]
            if len(v) > self.dim:
                if any(v[self.dim:]):
                    raise InputError(f"{len(v)} coordinates given, level has {self.dim}")
                v = v[: self.dim]
            return tuple(v + [0] * (self.dim - len(v)))
        return (int(x) % self.p,) + (0,) * (self.dim - 1)

    def to_vec(self, a):
        return np.array(a, dtype=self.dtype)

    def from_vec(self, v):
        v = [int(c) % self.p for c in v]
        return tuple(v + [0] * (self.dim - len(v)))

    def to_json(self, a):
        return list(a)

    def is_zero(self, a):
        return not any(a)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _pack(self, v):
        out = np.zeros(self._packlen, dtype=self.dtype)
        out[self._pos] = v
        return out

    def mul_arrays(self, a, b):
        c = convolve_mod(self._pack(a), self._pack(b), self.p)
        return matmul_mod(c, self.reduction, self.p)

    def mul(self, a, b):
        return tuple(self.mul_arrays(np.array(a, dtype=self.dtype),
                                     np.array(b, dtype=self.dtype)).tolist())

    def pow(self, a, e):
        e = int(e)
        if e < 0:
            a, e = self.inv(a), -e
        result = np.array(self.one, dtype=self.dtype)
        base = np.array(a, dtype=self.dtype)
        while e:
            if e & 1:
                result = self.mul_arrays(result, base)
            e >>= 1
            if e:
                base = self.mul_arrays(base, base)
        return tuple(result.tolist())

    def mul_matrix(self, a):
        """Matrix M with ``v @ M == v * a`` for coordinate row vectors v."""
        shifts = np.zeros((self.dim, self.block), dtype=self.dtype)
        rows = np.arange(self.dim)[:, None]
        shifts[rows, self._pos[:, None] + self._pos[None, :]] = np.asarray(a, dtype=self.dtype)[None, :]
        return matmul_mod(shifts, self.reduction, self.p)

    def mul_packed_rows(self, rows, a):
        """Multiply every row of a 2-D coordinate array by the element ``a``."""
        return matmul_mod(rows, self.mul_matrix(a), self.p)

    @property
    def frobenius_matrix(self):
        """F_p matrix of ``x -> x^q`` on coordinate row vectors."""
        if self._frob_matrix is None:
            rows = [self.to_vec(self.pow(self.from_vec([0] * i + [1]), self.q))
                    for i in range(self.dim)]
            self._frob_matrix = np.array(rows, dtype=self.dtype)
        return self._frob_matrix

    def frob(self, a, k=1):
        k %= max(self.qdeg, 1)
        if k == 0:
            return a
        v = np.array(a, dtype=self.dtype)
        m = self.frobenius_matrix
        for _ in range(k):
            v = matmul_mod(v, m, self.p)
        return tuple(v.tolist())

    def frob_rows(self, rows, k=1):
        k %= max(self.qdeg, 1)
        for _ in range(k):
            rows = matmul_mod(rows, self.frobenius_matrix, self.p)
        return rows


@dataclass(frozen=True)
class RootOfUnity:
    value: object
    order: int
    level: int


class FieldTower:
    """F_p, the base field F_q = F_{p^s}, and extensions F_{q^d} built on demand.

    Every modulus is chosen by a deterministic search driven by ``seed``;
    rebuilding with the same (p, s, seed) reproduces every modulus exactly.
    """

    def __init__(self, p, s=1, seed=0):
        p, s = int(p), int(s)
        if p < 2 or not nt.is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if s < 1:
            raise InputError("s must be a positive integer")
        self.p, self.s, self.q, self.seed = p, s, p**s, int(seed)
        self.prime = PrimeField(p, tower=self)
        self._levels = {}
        if s == 1:
            self.base_modulus = None
            self.base = self.prime
        else:
            coeffs = _search_modulus(self.prime, s, self._offset_rng("base", s))
            self.base_modulus = tuple(coeffs)
            self.base = ExtField(p, [(c,) for c in coeffs], q=self.q, tower=self)
        self._levels[1] = self.base

    @classmethod
    def for_order(cls, q, seed=0):
        try:
            p, s = nt.prime_power(q)
        except ValueError:
            raise CompositeCharacteristic(f"{q} is not a prime power") from None
        return cls(p, s, seed)

    def __repr__(self):
        return f"FieldTower(p={self.p}, s={self.s}, seed={self.seed})"

    def rng(self, *labels):
        """A private RNG stream keyed by the seed and a label."""
        return random.Random(":".join(str(x) for x in (self.seed,) + labels))

    def _offset_rng(self, *labels):
        return None if self.seed == 0 else self.rng("modulus", *labels)

    def extend(self, d):
        """The level F_{q^d}; cached, so repeated calls return the same object."""
        d = int(d)
        if d < 1:
            raise InputError("extension degree must be positive")
        level = self._levels.get(d)
        if level is None:
            coeffs = _search_modulus(self.base, d, self._offset_rng("ext", d))
            outer = [tuple(self.base.to_vec(c).tolist()) for c in coeffs]
            level = ExtField(self.p, outer, inner=self.base_modulus, q=self.q, tower=self)
            self._levels[d] = level
        return level

    def modulus(self, d):
        """Ascending coefficient list (base-field elements) of the degree-d modulus."""
        level = self.extend(d)
        if d == 1:
            return [self.base.zero, self.base.one]
        return [self.base.from_vec(row) for row in level.outer]

    def primitive_roots_of_unity(self, n):
        """All primitive n-th roots of unity, as powers xi^j (gcd(j, n) = 1)
        of one seeded generator, in the smallest level containing them."""
        n = int(n)
        if n < 1:
            raise InputError("n must be positive")
        if n % self.p == 0:
            raise CharacteristicDividesOrder(f"p = {self.p} divides n = {n}")
        d = nt.order_mod(self.q, n)
        level = self.extend(d)
        xi = level.primitive_root_of_unity(n, self.rng("unity", d, n))
        out, cur = [], level.one
        for j in range(1, n + 1):
            cur = level.mul(cur, xi)
            if nt.gcd(j, n) == 1:
                out.append(RootOfUnity(cur, n, d))
        return out

    def to_json(self):
        moduli = {}
        for d, level in sorted(self._levels.items()):
            if d == 1:
                continue
            moduli[str(d)] = [list(row) for row in level.outer]
        return {
            "p": self.p,
            "s": self.s,
            "seed": self.seed,
            "base_modulus": list(self.base_modulus) if self.base_modulus else None,
            "moduli": moduli,
        }


def _search_modulus(level, d, rng):
    from .poly import first_irreducible

    return first_irreducible(level, d, rng)
