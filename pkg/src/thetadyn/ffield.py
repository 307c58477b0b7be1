"""Arithmetic in F_p and F_{p^n}, plus the projective point at infinity.

Elements of F_{p^n} are plain ``int`` values in ``[0, p**n)``: the base-p
digits of the integer are the little-endian coefficients of the polynomial
representative modulo the defining polynomial.  Prime-field elements are
therefore the integers ``0..p-1`` in every extension, which makes the
embedding of constants trivial.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .arith import factorint, is_prime
from .errors import (
    EvenCharacteristicError,
    NotASquareError,
    NotPrimeError,
    ReducibleModulusError,
    ZeroElementError,
)

#: Fields of at most this many elements get exp/log tables on first use.
TABLE_LIMIT = 1 << 20


class _Infinity:
    """The point at infinity of the projective line (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "∞"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ProjPoint = int | _Infinity


def is_inf(x) -> bool:
    return x is INF


# -- polynomials over F_p as little-endian coefficient lists ---------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_mod(out, f, p)


def _poly_powmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (little-endian)."""
    f = [c % p for c in f]
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^n) == x mod f
    xp = list(x)
    powers = {}
    for i in range(1, n + 1):
        xp = _poly_powmod(xp, p, f, p)
        powers[i] = xp
    if _poly_sub(powers[n], x, p):
        return False
    for r in factorint(n):
        g = _poly_gcd(f, _poly_sub(powers[n // r], x, p), p)
        if len(g) != 1:
            return False
    return True


# -- the field context -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Arithmetic context for F_{p^n}; elements are ints in ``[0, q)``."""

    p: int
    n: int
    modulus: tuple[int, ...]
    _powers: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_powers", tuple(self.p**i for i in range(self.n + 1)))

    @property
    def q(self) -> int:
        return self._powers[self.n]

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    # encoding
    def coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.n):
            x, c = divmod(x, self.p)
            out.append(c)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.n:
            coeffs = _poly_mod(list(coeffs), self.modulus, self.p)
        return sum((c % self.p) * self._powers[i] for i, c in enumerate(coeffs))

    def elem(self, c: int) -> int:
        """Embed a rational integer into the prime subfield."""
        return c % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def sort_key(self, x: int) -> tuple[int, ...]:
        """Lexicographic order on the little-endian coefficient list."""
        return tuple(self.coeffs(x))

    # ring operations
    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        p, out, w = self.p, 0, 1
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        p, out, w = self.p, 0, 1
        while a:
            a, c = divmod(a, p)
            out += (-c % p) * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, c: int, a: int) -> int:
        """Multiply ``a`` by the prime-field scalar ``c``."""
        if self.n == 1:
            return c * a % self.p
        c %= self.p
        p, out, w = self.p, 0, 1
        while a:
            a, d = divmod(a, p)
            out += (c * d % p) * w
            w *= p
        return out

    def _polymul(self, a: int, b: int) -> int:
        return self.from_coeffs(_poly_mulmod(self.coeffs(a), self.coeffs(b), self.modulus, self.p))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if a < self.p:
            return self.scale(a, b)
        if b < self.p:
            return self.scale(b, a)
        tables = self._tables
        if tables is None:
            return self._polymul(a, b)
        exp, log = tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.n == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[log[a] * e % (self.q - 1)]
        return self.from_coeffs(_poly_powmod(self.coeffs(a), e, self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElementError("zero has no inverse")
        if self.n == 1:
            return pow(a, -1, self.p)
        if a < self.p:
            return pow(a, -1, self.p)
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[-log[a] % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, times: int = 1) -> int:
        """``a ** (p ** times)``."""
        return self.pow(a, self.p**times)

    # structure
    @cached_property
    def order_factors(self) -> dict[int, int]:
        return factorint(self.q - 1)

    def _is_generator(self, g: int, use_poly: bool) -> bool:
        if g == 0:
            return False
        power = self._poly_pow if use_poly else self.pow
        if power(g, self.q - 1) != 1:
            return False
        return all(power(g, (self.q - 1) // ell) != 1 for ell in self.order_factors)

    def _poly_pow(self, a: int, e: int) -> int:
        if self.n == 1:
            return pow(a, e, self.p)
        return self.from_coeffs(_poly_powmod(self.coeffs(a), e, self.modulus, self.p))

    @cached_property
    def generator(self) -> int:
        """Smallest primitive element in coefficient-lexicographic order."""
        if self.q == 2:
            return 1
        for cs in itertools.product(range(self.p), repeat=self.n):
            g = self.from_coeffs(cs)
            if self._is_generator(g, use_poly=True):
                return g
        raise AssertionError("no primitive element found")  # pragma: no cover

    @cached_property
    def _tables(self):
        if self.n == 1 or self.q > TABLE_LIMIT:
            return None
        g = self.generator
        exp = [0] * (self.q - 1)
        log = [-1] * self.q
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self._polymul(x, g)
        return exp, log

    @cached_property
    def _dlog_table(self) -> list[int]:
        if self._tables is not None:
            return self._tables[1]
        if self.q > TABLE_LIMIT:
            raise ValueError(f"dlog table not available for q={self.q} > {TABLE_LIMIT}")
        log = [-1] * self.q
        x, g = 1, self.generator
        for i in range(self.q - 1):
            log[x] = i
            x = self.mul(x, g)
        return log

    def mul_order(self, x: int) -> int:
        """Multiplicative order, by descending from q-1 over its prime factors."""
        if x == 0:
            raise ZeroElementError("zero has no multiplicative order")
        t = self.q - 1
        for ell in self.order_factors:
            while t % ell == 0 and self.pow(x, t // ell) == 1:
                t //= ell
        return t

    def is_square(self, x: int) -> bool:
        if x == 0:
            return True
        return self.pow(x, (self.q - 1) // 2) == 1

    @cached_property
    def _nonresidue(self) -> int:
        for cs in itertools.product(range(self.p), repeat=self.n):
            z = self.from_coeffs(cs)
            if z and not self.is_square(z):
                return z
        raise AssertionError("no quadratic non-residue")  # pragma: no cover

    def sqrt(self, x: int) -> tuple[int, int]:
        """Both square roots of ``x``, lexicographically smaller one first."""
        if x == 0:
            return 0, 0
        if not self.is_square(x):
            raise NotASquareError(f"{x} is not a square in F_{self.q}")
        # Tonelli-Shanks in the cyclic group F_q^*
        odd, s = _split2(self.q - 1)
        z = self.pow(self._nonresidue, odd)
        t = self.pow(x, odd)
        r = self.pow(x, (odd + 1) // 2)
        m = s
        while t != 1:
            i, t2 = 1, self.square(t)
            while t2 != 1:
                t2 = self.square(t2)
                i += 1
            b = self.pow(z, 1 << (m - i - 1))
            m, z = i, self.square(b)
            t, r = self.mul(t, z), self.mul(r, b)
        pair = sorted((r, self.neg(r)), key=self.sort_key)
        return pair[0], pair[1]

    def dlog(self, x: int) -> int:
        """Exponent ``i`` in ``[0, q-1)`` with ``generator**i == x``."""
        if x == 0:
            raise ZeroElementError("zero has no discrete logarithm")
        return self._dlog_table[x]

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={list(self.modulus)})"


def _split2(t: int) -> tuple[int, int]:
    s = 0
    while t % 2 == 0:
        t //= 2
        s += 1
    return t, s


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``n`` over F_p."""
    for low in itertools.product(range(p), repeat=n):
        f = tuple(low) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def build_field(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Construct F_{p^n}; ``modulus`` is a little-endian monic coefficient list."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristicError("characteristic 2 is not supported")
    if n < 1:
        raise ValueError("extension degree must be positive")
    if modulus is None:
        mod = default_modulus(p, n)
    else:
        mod = tuple(c % p for c in modulus)
        if len(mod) != n + 1 or mod[-1] != 1:
            raise ReducibleModulusError(f"modulus must be monic of degree {n}")
        if not is_irreducible(mod, p):
            raise ReducibleModulusError(f"{list(modulus)} is reducible over F_{p}")
    return FieldCtx(p, n, mod)


def mul_order(ctx: FieldCtx, x: int) -> int:
    return ctx.mul_order(x)


def is_square(ctx: FieldCtx, x: int) -> bool:
    return ctx.is_square(x)


def sqrt(ctx: FieldCtx, x: int) -> tuple[int, int]:
    return ctx.sqrt(x)


def dlog_label(ctx: FieldCtx, x: int) -> int:
    return ctx.dlog(x)


def embed_field(small: FieldCtx, big: FieldCtx) -> list[int]:
    """Image in ``big`` of every element of ``small`` under a field embedding.

    The embedding sends the class of ``x`` in ``small`` to a root of the
    defining polynomial of ``small`` found inside the subfield of ``big``
    of the right size; the returned list is indexed by elements of ``small``.
    """
    if small.p != big.p or big.n % small.n:
        raise ValueError("no embedding between these fields")
    if small.n == 1:
        return list(range(small.q))
    step = (big.q - 1) // (small.q - 1)
    h = big.pow(big.generator, step)
    root = None
    y = 1
    for _ in range(small.q - 1):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, y), c)
        if acc == 0:
            root = y
            break
        y = big.mul(y, h)
    if root is None:  # pragma: no cover
        raise AssertionError("defining polynomial has no root in the big field")
    images = []
    powers = [1]
    for _ in range(small.n - 1):
        powers.append(big.mul(powers[-1], root))
    for x in range(small.q):
        acc = 0
        for c, pw in zip(small.coeffs(x), powers):
            if c:
                acc = big.add(acc, big.scale(c, pw))
        images.append(acc)
    return images
