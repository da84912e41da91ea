"""Finite fields F_q and their extensions F_{q^m}.

Elements are plain Python ints.  An element of a field of order ``q = b^d``
built over a base field of order ``b`` is encoded by the little-endian
base-``b`` digits of its polynomial representation, so the prime field
elements are simply ``0 .. p-1`` and ``x`` in F_4 is ``2``.

Scalar arithmetic works for every field; the ``v*`` methods operate on
numpy integer arrays and are what the matrix routines use.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

MAX_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, e


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """A finite field.

    Either a prime field (``base is None``) or ``base[x] / (modulus)`` where
    ``modulus`` is a monic irreducible polynomial over ``base`` given as a
    tuple of base elements, constant term first.
    """

    def __init__(self, p: int, base: GF | None = None, modulus: tuple[int, ...] | None = None):
        self.p = p
        self.base = base
        self.modulus = modulus
        if base is None:
            self.degree = 1
            self.q = p
        else:
            self.degree = len(modulus) - 1
            self.q = base.q ** self.degree
        if self.q > MAX_ORDER:
            raise ValueError(f"field order {self.q} exceeds the ceiling {MAX_ORDER}")
        self._exp = None
        self._log = None

    # ------------------------------------------------------------ identity
    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.q}; base={self.base.q}, modulus={self.modulus})"

    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p and self.modulus == other.modulus
                and self.base == other.base)

    def __hash__(self):
        return hash((self.p, self.q, self.modulus))

    @property
    def is_prime(self) -> bool:
        return self.base is None

    @property
    def prime_degree(self) -> int:
        """Degree over the prime field."""
        return 1 if self.base is None else self.degree * self.base.prime_degree

    def elements(self) -> range:
        return range(self.q)

    # ------------------------------------------------------------ vectors
    def to_vector(self, a: int) -> list[int]:
        """Coordinates of ``a`` over the base field (length ``degree``)."""
        if self.base is None:
            return [a]
        b = self.base.q
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, b)
            out.append(r)
        return out

    def from_vector(self, coeffs) -> int:
        if self.base is None:
            (a,) = coeffs
            return int(a)
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coeffs)}")
        b = self.base.q
        a = 0
        for c in reversed(coeffs):
            a = a * b + int(c)
        return a

    # ------------------------------------------------------------ scalar ops
    def add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        B = self.base
        return self.from_vector([B.add(x, y) for x, y in zip(self.to_vector(a), self.to_vector(b))])

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_vector([self.base.neg(x) for x in self.to_vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) + int(self._log[b])) % (self.q - 1)])
        if self.base.q == 2:
            return self._mul_bits(a, b)
        return self.from_vector(self._polymulmod(self.to_vector(a), self.to_vector(b)))

    def _mul_bits(self, a: int, b: int) -> int:
        # carry-less multiply over GF(2), reduce by the modulus
        d = self.degree
        mod = self.from_vector(list(self.modulus[:d])) | (1 << d)
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> d & 1:
                a ^= mod
        return r

    def _polymulmod(self, x, y):
        B = self.base
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        prod[i + j] = B.add(prod[i + j], B.mul(xi, yj))
        mod = self.modulus
        for top in range(len(prod) - 1, d - 1, -1):
            c = prod[top]
            if c:
                for i in range(d):
                    prod[top - d + i] = B.sub(prod[top - d + i], B.mul(c, mod[i]))
                prod[top] = 0
        return prod[:d]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.base is None:
            return pow(a, -1, self.p)
        if self._log is not None:
            return int(self._exp[(-int(self._log[a])) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int) -> int:
        """``a ** base.q`` (``a ** p`` for a prime field, i.e. the identity)."""
        if self.base is None:
            return a
        return self.pow(a, self.base.q)

    def order_of(self, a: int) -> int:
        n = self.q - 1
        for r in _prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def primitive_element(self) -> int:
        for g in range(1, self.q):
            if self.order_of(g) == self.q - 1:
                return g
        raise RuntimeError("no primitive element")  # unreachable for a field

    def build_tables(self):
        """Precompute exp/log tables (idempotent)."""
        if self._log is not None or self.base is None:
            return
        g = self.primitive_element()
        exp = np.zeros(self.q - 1, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self.mul(x, g)
        self._exp, self._log = exp, log

    # ------------------------------------------------------------ vector ops
    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.prime_degree):
            out += ((a // scale % self.p + b // scale % self.p) % self.p) * scale
            scale *= self.p
        return out

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.base is None:
            return (-a) % self.p
        if self.p == 2:
            return a
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.prime_degree):
            out += ((-(a // scale % self.p)) % self.p) * scale
            scale *= self.p
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.base is None:
            return (a * b) % self.p
        self.build_tables()
        a, b = np.broadcast_arrays(a, b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.base is None:
            return np.array([pow(int(x), -1, self.p) for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        self.build_tables()
        return self._exp[(-self._log[a]) % (self.q - 1)]


def _poly_mod_divides(B: GF, f: tuple[int, ...], g: tuple[int, ...]) -> bool:
    """True iff monic ``g`` divides ``f`` over ``B`` (coefficients low-first)."""
    r = list(f)
    dg = len(g) - 1
    for top in range(len(r) - 1, dg - 1, -1):
        c = r[top]
        if c:
            for i in range(dg + 1):
                r[top - dg + i] = B.sub(r[top - dg + i], B.mul(c, g[i]))
    return not any(r[:dg])


def _monic_polys(B: GF, d: int):
    """Monic degree-d polynomials over B, in increasing integer encoding."""
    for low in product(range(B.q), repeat=d):
        yield tuple(reversed(low)) + (1,)


def is_irreducible(B: GF, f: tuple[int, ...]) -> bool:
    """Exhaustive factor search; fine for the small degrees used here."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    for dg in range(1, d // 2 + 1):
        for g in _monic_polys(B, dg):
            if _poly_mod_divides(B, f, g):
                return False
    return True


def smallest_irreducible(B: GF, d: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``d`` over ``B`` with the smallest encoding."""
    for f in _monic_polys(B, d):
        if is_irreducible(B, f):
            return f
    raise RuntimeError("no irreducible polynomial found")  # unreachable


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> GF:
    """The field F_{p^e} with a deterministic reduction polynomial."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree e={e} must be >= 1")
    if p ** e > MAX_ORDER:
        raise ValueError(f"field order {p}^{e} exceeds the ceiling {MAX_ORDER}")
    prime = GF(p)
    if e == 1:
        return prime
    return GF(p, prime, smallest_irreducible(prime, e))


@lru_cache(maxsize=None)
def ext_make(base: GF, m: int) -> GF:
    """The degree-``m`` extension of ``base``; ``m == 1`` returns ``base``."""
    if m < 1:
        raise ValueError(f"m={m} must be >= 1")
    if m == 1:
        return base
    if base.q ** m > MAX_ORDER:
        raise ValueError(f"field order {base.q}^{m} exceeds the ceiling {MAX_ORDER}")
    return GF(base.p, base, smallest_irreducible(base, m))


def get_field(q) -> GF:
    """Accept a GF or an integer prime power."""
    if isinstance(q, GF):
        return q
    p, e = prime_power(int(q))
    return field_make(p, e)
