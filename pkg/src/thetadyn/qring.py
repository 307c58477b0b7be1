"""The Euclidean imaginary quadratic orders Z[i] and Z[(1 + sqrt(-7))/2].

Elements are ``a + b*w`` with ``w = i`` (``w**2 = -1``) or
``w = (1 + sqrt(-7))/2`` (``w**2 = w - 2``).  Besides ring arithmetic the
module factors elements into primes and tabulates, for each prime-power
component ``R / rho**e R`` of a residue ring, how many elements have each
additive order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .arith import (
    factorint,
    lcm,
    legendre,
    quadratic_roots_mod,
    sqrt_mod_prime,
    totient,
)
from .errors import FactorizationError, ZeroElementError


class Ring(enum.Enum):
    GAUSSIAN = "Z[i]"
    KLEIN7 = "Z[(1+sqrt(-7))/2]"

    @property
    def units(self) -> tuple[QuadInt, ...]:
        if self is Ring.GAUSSIAN:
            return (QuadInt(1, 0, self), QuadInt(0, 1, self), QuadInt(-1, 0, self), QuadInt(0, -1, self))
        return (QuadInt(1, 0, self), QuadInt(-1, 0, self))

    @property
    def omega_name(self) -> str:
        return "i" if self is Ring.GAUSSIAN else "a"

    @property
    def alpha(self) -> QuadInt:
        """The norm-2 generator: ``1 + i`` or ``(1 + sqrt(-7))/2``."""
        return QuadInt(1, 1, self) if self is Ring.GAUSSIAN else QuadInt(0, 1, self)

    @property
    def ramified_odd(self) -> QuadInt | None:
        """``sqrt(-7) = 2w - 1`` in the Kleinian order; Z[i] has none."""
        return QuadInt(-1, 2, self) if self is Ring.KLEIN7 else None

    def __call__(self, a: int, b: int = 0) -> QuadInt:
        return QuadInt(a, b, self)


@dataclass(frozen=True)
class QuadInt:
    a: int
    b: int
    ring: Ring = Ring.GAUSSIAN

    def _coerce(self, other) -> QuadInt:
        if isinstance(other, QuadInt):
            if other.ring is not self.ring:
                raise TypeError("mixing elements of different rings")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.ring)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return QuadInt(self.a + o.a, self.b + o.b, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        a, b, c, d = self.a, self.b, o.a, o.b
        if self.ring is Ring.GAUSSIAN:
            return QuadInt(a * c - b * d, a * d + b * c, self.ring)
        return QuadInt(a * c - 2 * b * d, a * d + b * c + b * d, self.ring)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not ring elements in general")
        result, base = QuadInt(1, 0, self.ring), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> QuadInt:
        if self.ring is Ring.GAUSSIAN:
            return QuadInt(self.a, -self.b, self.ring)
        return QuadInt(self.a + self.b, -self.b, self.ring)

    def norm(self) -> int:
        a, b = self.a, self.b
        if self.ring is Ring.GAUSSIAN:
            return a * a + b * b
        return a * a + a * b + 2 * b * b

    def __divmod__(self, other):
        return euclid_divmod(self, self._coerce(other))

    def __mod__(self, other):
        return euclid_divmod(self, self._coerce(other))[1]

    def __floordiv__(self, other):
        return euclid_divmod(self, self._coerce(other))[0]

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __str__(self):
        w = self.ring.omega_name
        if self.b == 0:
            return str(self.a)
        coef = {1: "", -1: "-"}.get(self.b, str(self.b))
        if self.a == 0:
            return f"{coef}{w}"
        sign = "+" if self.b > 0 else "-"
        mag = "" if abs(self.b) == 1 else str(abs(self.b))
        return f"{self.a}{sign}{mag}{w}"


def ring_add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def ring_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def ring_conj(x: QuadInt) -> QuadInt:
    return x.conj()


def ring_norm(x: QuadInt) -> int:
    return x.norm()


def euclid_divmod(a: QuadInt, b: QuadInt) -> tuple[QuadInt, QuadInt]:
    """``a = q*b + r`` with ``N(r) < N(b)``.

    The exact quotient ``a * conj(b) / N(b)`` is rounded coordinate-wise; the
    four surrounding lattice points are tried and the one with the smallest
    remainder norm wins (first in floor/ceil order on ties).
    """
    if b.is_zero():
        raise ZeroElementError("division by zero in quadratic order")
    nb = b.norm()
    z = a * b.conj()
    best = None
    for qa in (z.a // nb, -(-z.a // nb)):
        for qb in (z.b // nb, -(-z.b // nb)):
            q = QuadInt(qa, qb, a.ring)
            r = a - q * b
            nr = r.norm()
            if best is None or nr < best[0]:
                best = (nr, q, r)
    assert best[0] < nb
    return best[1], best[2]


def divides(d: QuadInt, x: QuadInt) -> bool:
    return euclid_divmod(x, d)[1].is_zero()


def exact_div(x: QuadInt, d: QuadInt) -> QuadInt:
    q, r = euclid_divmod(x, d)
    if not r.is_zero():
        raise ValueError(f"{d} does not divide {x}")
    return q


def gcd(x: QuadInt, y: QuadInt) -> QuadInt:
    while not y.is_zero():
        x, y = y, euclid_divmod(x, y)[1]
    return x


def canonical_associate(x: QuadInt) -> QuadInt:
    """Deterministic representative of ``x`` up to units: smallest
    ``(|a|, |b|, a < 0, b < 0)`` among the unit multiples."""
    return min(
        (u * x for u in x.ring.units),
        key=lambda y: (abs(y.a), abs(y.b), y.a < 0, y.b < 0),
    )


def are_associate(x: QuadInt, y: QuadInt) -> bool:
    return any(u * x == y for u in x.ring.units)


# -- factorization -----------------------------------------------------------

NORM2 = "norm2"
INERT = "inert"
SPLIT = "split"
RAMIFIED = "ramified"


@dataclass(frozen=True)
class ResidueComponent:
    """One factor ``R / prime**exponent R`` of a residue ring.

    ``order_table[h]`` counts the elements of additive order ``ell**h``,
    ``ell`` being the rational prime below ``prime``.
    """

    prime: QuadInt
    exponent: int
    kind: str
    rational_prime: int
    order_table: dict[int, int] = field(compare=False)

    @property
    def h_range(self) -> range:
        if self.kind == RAMIFIED:
            return range((self.exponent + 1) // 2 + 1)
        return range(self.exponent + 1)

    @property
    def size(self) -> int:
        return (self.prime**self.exponent).norm()

    def annihilator_classes(self):
        """Yield ``(h, a, count)``: ``count`` elements of additive order
        ``ell**h`` whose annihilator ideal is ``prime**a``.

        Outside the ramified case ``a == h``; for ``sqrt(-7)`` an element of
        order ``7**h`` has annihilator exponent ``2h - 1`` or ``2h``.
        """
        if self.kind != RAMIFIED:
            for h in self.h_range:
                yield h, h, self.order_table[h]
            return
        ell = self.rational_prime
        for a in range(self.exponent + 1):
            count = 1 if a == 0 else ell**a - ell ** (a - 1)
            yield (a + 1) // 2, a, count


def component_table(prime: QuadInt, exponent: int, kind: str) -> ResidueComponent:
    """Additive-order counts for ``R / prime**exponent R``."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    nrm = prime.norm()
    if kind == INERT:
        ell = math.isqrt(nrm)
        assert ell * ell == nrm
        table = {h: 1 if h == 0 else ell ** (2 * h) - ell ** (2 * (h - 1)) for h in range(exponent + 1)}
    elif kind in (SPLIT, NORM2):
        ell = nrm
        table = {h: totient(ell**h) for h in range(exponent + 1)}
    elif kind == RAMIFIED:
        ell = nrm
        table = {0: 1}
        if exponent % 2 == 0:
            for h in range(1, exponent // 2 + 1):
                table[h] = ell ** (2 * h) - ell ** (2 * (h - 1))
        else:
            for h in range(1, (exponent - 1) // 2 + 1):
                table[h] = ell ** (2 * h) - ell ** (2 * (h - 1))
            table[(exponent + 1) // 2] = ell**exponent - ell ** (exponent - 1)
    else:
        raise ValueError(f"unknown component kind {kind!r}")
    return ResidueComponent(prime, exponent, kind, ell, table)


@dataclass(frozen=True)
class QuadFactorization:
    """``x = unit * rho0**e0 * prod(component primes ** exponents)``.

    ``components[0]`` is always the ``rho0`` component (possibly with
    exponent 0); inert, split and ramified components follow.
    """

    value: QuadInt
    unit: QuadInt
    components: tuple[ResidueComponent, ...]

    @property
    def rho0(self) -> QuadInt:
        return self.components[0].prime

    @property
    def e0(self) -> int:
        return self.components[0].exponent

    @property
    def others(self) -> tuple[ResidueComponent, ...]:
        return self.components[1:]

    def reassemble(self) -> QuadInt:
        out = self.unit
        for c in self.components:
            out = out * c.prime**c.exponent
        return out


def _strip(x: QuadInt, prime: QuadInt) -> tuple[QuadInt, int]:
    e = 0
    while True:
        q, r = euclid_divmod(x, prime)
        if not r.is_zero():
            return x, e
        x, e = q, e + 1


def _split_prime_above(ell: int, ring: Ring) -> QuadInt:
    """A prime of norm ``ell`` for a rational prime that splits in ``ring``."""
    if ring is Ring.GAUSSIAN:
        t = sqrt_mod_prime(-1, ell)
        return gcd(QuadInt(ell, 0, ring), QuadInt(t, 1, ring))
    if ell == 2:
        return ring.alpha
    r = quadratic_roots_mod(1, -1, 2, ell)[0]
    return gcd(QuadInt(ell, 0, ring), QuadInt(-r, 1, ring))


def prime_kind(ell: int, ring: Ring) -> str:
    """How the rational prime ``ell`` behaves in ``ring``."""
    if ring is Ring.GAUSSIAN:
        if ell == 2:
            return RAMIFIED
        return SPLIT if ell % 4 == 1 else INERT
    if ell == 7:
        return RAMIFIED
    if ell == 2:
        return SPLIT
    return SPLIT if legendre(-7, ell) == 1 else INERT


def factor(x: QuadInt, rho0: QuadInt) -> QuadFactorization:
    """Factor ``x`` with the norm-2 prime ``rho0`` extracted first."""
    if x.is_zero():
        raise ZeroElementError("cannot factor zero")
    if rho0.norm() != 2 or rho0.ring is not x.ring:
        raise ValueError("rho0 must be a norm-2 prime of the same ring")
    ring = x.ring
    rest, e0 = _strip(x, rho0)
    comps = [component_table(rho0, e0, NORM2)]
    inert, split, ramified = [], [], []
    for ell in factorint(x.norm()):
        kind = prime_kind(ell, ring)
        if ring is Ring.GAUSSIAN and ell == 2:
            # every norm-2 prime of Z[i] is associate to rho0
            if rest.norm() % 2 != 0:
                continue
            raise FactorizationError("residual 2-part after removing rho0")
        if kind == INERT:
            prime = QuadInt(ell, 0, ring)
            rest, e = _strip(rest, prime)
            if e:
                inert.append(component_table(prime, e, INERT))
        elif kind == RAMIFIED:
            prime = canonical_associate(ring.ramified_odd)
            rest, e = _strip(rest, prime)
            if e:
                ramified.append(component_table(prime, e, RAMIFIED))
        else:
            if ell == 2:
                candidates = [rho0.conj()]
            else:
                pi = canonical_associate(_split_prime_above(ell, ring))
                candidates = sorted(
                    {pi, canonical_associate(pi.conj())},
                    key=lambda y: (y.a, y.b),
                )
            for prime in candidates:
                rest, e = _strip(rest, prime)
                if e:
                    split.append(component_table(prime, e, SPLIT))
    if not rest.is_unit():
        raise FactorizationError(f"unfactored cofactor {rest} of {x}")
    comps += inert + split + ramified
    fac = QuadFactorization(x, rest, tuple(comps))
    if fac.reassemble() != x:
        raise FactorizationError(f"factorization of {x} does not reassemble")
    return fac


# -- periods of multiplication by rho0 on residue components ----------------


def _powers_hit_pm1(rho0: QuadInt, modulus: QuadInt, limit: int) -> int:
    """Smallest ``s >= 1`` with ``modulus | rho0**s - 1`` or ``modulus | rho0**s + 1``."""
    if modulus.is_unit():
        return 1
    r = rho0 % modulus
    for s in range(1, limit + 1):
        if ((r - 1) % modulus).is_zero() or ((r + 1) % modulus).is_zero():
            return s
        r = (r * rho0) % modulus
    raise AssertionError(f"{rho0} has no +-1 power modulo {modulus}")


def component_period(rho0: QuadInt, prime: QuadInt, exponent: int) -> int:
    modulus = prime**exponent
    return _powers_hit_pm1(rho0, modulus, modulus.norm() + 1)


def cycle_length_for_exponents(rho0: QuadInt, moduli: list[QuadInt]) -> int:
    """Length of the ``[rho0]``-orbit up to sign of a point whose
    components have annihilators ``moduli``."""
    moduli = [m for m in moduli if not m.is_unit()]
    if not moduli:
        return 1
    l_prime = lcm(*(_powers_hit_pm1(rho0, m, m.norm() + 1) for m in moduli))
    power = rho0**l_prime
    if all(divides(m, power - 1) for m in moduli) or all(divides(m, power + 1) for m in moduli):
        return l_prime
    return 2 * l_prime


def cycle_length_for_h(rho0: QuadInt, components, h) -> int:
    """Cycle length attached to the order vector ``h`` (``h[0]`` belongs to
    the ``rho0`` component and must be 0)."""
    if h[0] != 0:
        raise ValueError("periodic classes have h0 = 0")
    moduli = [c.prime ** hi for c, hi in zip(components[1:], h[1:])]
    return cycle_length_for_exponents(rho0, moduli)


def cycle_length_for_annihilators(rho0: QuadInt, components, a) -> int:
    """Like :func:`cycle_length_for_h`, but ``a[i]`` is the exact annihilator
    exponent on component ``i``.  The two agree except on a ramified
    component of exponent >= 2, where one additive order covers two
    annihilator exponents."""
    if a[0] != 0:
        raise ValueError("periodic classes have a trivial rho0-part")
    moduli = [c.prime ** ai for c, ai in zip(components[1:], a[1:])]
    return cycle_length_for_exponents(rho0, moduli)
