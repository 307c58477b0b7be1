"""The two CM curves behind cases 2 and 3.

``y^2 = x^3 + x`` has endomorphism ring Z[i]; ``y^2 = x^3 - 35x + 98`` has
Z[(1 + sqrt(-7))/2].  For each curve we provide the group law over F_{p^n}
and F_{p^{2n}}, the degree-2 endomorphisms whose x-action is (conjugate to)
``theta_k``, Frobenius as a quadratic integer, and the split of
``P^1(F_{p^n})`` into x-coordinates of rational points (A), of points
defined only over the quadratic extension (B) and, for the Gaussian curve,
the exceptional pair ``{1, -1}`` (C).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from math import isqrt

from .arith import is_prime, legendre, quadratic_roots_mod
from .errors import (
    DomainTooLargeError,
    KNotInCaseError,
    NotInRingError,
    PointNotOnCurveError,
    WrongResidueClassError,
)
from .ffield import INF, FieldCtx, ProjPoint, build_field, embed_field
from .projdyn import brute_force_limit
from .qring import QuadInt, Ring


class CurveCase(enum.Enum):
    CASE2 = "y^2 = x^3 + x"
    CASE3 = "y^2 = x^3 - 35x + 98"

    @property
    def coefficients(self) -> tuple[int, int]:
        return (1, 0) if self is CurveCase.CASE2 else (-35, 98)

    @property
    def ring(self) -> Ring:
        return Ring.GAUSSIAN if self is CurveCase.CASE2 else Ring.KLEIN7

    def admits(self, p: int) -> bool:
        if self is CurveCase.CASE2:
            return p % 4 == 1
        return p % 7 in (1, 2, 4)


class _Zero:
    """The point at infinity of a Weierstrass curve."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "O"

    def __reduce__(self):
        return (_Zero, ())


O = _Zero()
ECPoint = "tuple[int, int] | _Zero"


@dataclass(frozen=True)
class Weierstrass:
    """``y^2 = x^3 + a x + b`` over ``field``; points are ``(x, y)`` or ``O``."""

    field: FieldCtx
    a: int
    b: int

    def rhs(self, x: int) -> int:
        f = self.field
        return f.add(f.add(f.mul(f.square(x), x), f.mul(self.a, x)), self.b)

    def contains(self, P) -> bool:
        if P is O:
            return True
        x, y = P
        return self.field.square(y) == self.rhs(x)

    def check(self, P):
        if not self.contains(P):
            raise PointNotOnCurveError(f"{P} is not on the curve over F_{self.field.q}")
        return P

    def neg(self, P):
        if P is O:
            return O
        return (P[0], self.field.neg(P[1]))

    def add(self, P, Q):
        f = self.field
        if P is O:
            return Q
        if Q is O:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if f.add(y1, y2) == 0:
                return O
            # tangent slope (3x^2 + a) / 2y
            lam = f.div(f.add(f.scale(3, f.square(x1)), self.a), f.scale(2, y1))
        else:
            lam = f.div(f.sub(y2, y1), f.sub(x2, x1))
        x3 = f.sub(f.sub(f.square(lam), x1), x2)
        y3 = f.sub(f.mul(lam, f.sub(x1, x3)), y1)
        return (x3, y3)

    def smul(self, n: int, P):
        if n < 0:
            return self.smul(-n, self.neg(P))
        acc, base = O, P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def frobenius(self, P, times: int = 1):
        """Coordinate-wise ``p**times`` power map."""
        if P is O:
            return O
        return (self.field.frobenius(P[0], times), self.field.frobenius(P[1], times))

    def lift_x(self, x: int) -> frozenset:
        r = self.rhs(x)
        if not self.field.is_square(r):
            return frozenset()
        y1, y2 = self.field.sqrt(r)
        return frozenset({(x, y1), (x, y2)})

    def points(self):
        yield O
        for x in self.field.elements():
            yield from sorted(self.lift_x(x))


@dataclass(frozen=True, eq=False)
class CurveCtx:
    """One of the two curves over F_{p^n}, with F_{p^{2n}} built on demand."""

    case: CurveCase
    field: FieldCtx

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return self.field.n

    @cached_property
    def base(self) -> Weierstrass:
        a, b = self.case.coefficients
        return Weierstrass(self.field, a % self.p, b % self.p)

    @cached_property
    def ext_field(self) -> FieldCtx:
        return build_field(self.p, 2 * self.n)

    @cached_property
    def embedding(self) -> list[int]:
        return embed_field(self.field, self.ext_field)

    @cached_property
    def ext(self) -> Weierstrass:
        a, b = self.case.coefficients
        return Weierstrass(self.ext_field, a % self.p, b % self.p)

    def embed(self, x):
        if x is O or x is INF:
            return x
        if isinstance(x, tuple):
            return (self.embedding[x[0]], self.embedding[x[1]])
        return self.embedding[x]

    @cached_property
    def params(self) -> CaseParams:
        return case_params(self.case, self.p)


def make_curve(case: CurveCase, p: int, n: int = 1, modulus=None) -> CurveCtx:
    if not is_prime(p) or p == 2:
        raise WrongResidueClassError(f"{p} is not an odd prime")
    if not case.admits(p):
        raise WrongResidueClassError(f"p = {p} is outside the residue classes of {case.name}")
    a, b = case.coefficients
    if (4 * a**3 + 27 * b**2) % p == 0:
        raise WrongResidueClassError(f"{case.value} is singular mod {p}")
    return CurveCtx(case, build_field(p, n, modulus))


# -- counting and Frobenius --------------------------------------------------


def count_points(curve: CurveCtx, limit: int | None = None) -> int:
    """``|E(F_p)|`` by summing the quadratic character over all x."""
    p = curve.p
    lim = brute_force_limit(limit)
    if p > lim:
        raise DomainTooLargeError(p, lim)
    a, b = curve.case.coefficients
    return 1 + sum(1 + legendre(x**3 + a * x + b, p) for x in range(p))


@dataclass(frozen=True)
class FrobeniusData:
    m: int
    d: int
    pi_p: QuadInt

    @property
    def trace(self) -> int:
        return self.pi_p.a * 2 + self.pi_p.b if self.pi_p.ring is Ring.KLEIN7 else 2 * self.pi_p.a


def frobenius_elem(curve: CurveCtx) -> FrobeniusData:
    """``pi_p = (p + 1 - m + sqrt(d)) / 2`` written in the ring basis.

    The sign of ``sqrt(d)`` is fixed so that the coefficient of the ring
    generator is positive.
    """
    p = curve.p
    m = count_points(curve)
    t = p + 1 - m
    d = t * t - 4 * p
    ring = curve.case.ring
    disc = -4 if ring is Ring.GAUSSIAN else -7
    if d >= 0 or d % disc:
        raise NotInRingError(f"d = {d} is not a square times {disc}")
    s = isqrt(d // disc)
    if s * s * disc != d:
        raise NotInRingError(f"d = {d} is not a square times {disc}")
    if ring is Ring.GAUSSIAN:
        # sqrt(d) = 2 s i
        pi = QuadInt(t // 2, s, ring)
    else:
        # sqrt(d) = s sqrt(-7) = s (2 alpha - 1)
        if (t - s) % 2:
            raise NotInRingError(f"(t - s)/2 is not integral for t={t}, s={s}")
        pi = QuadInt((t - s) // 2, s, ring)
    if pi.norm() != p or pi + pi.conj() != QuadInt(t, 0, ring):
        raise NotInRingError(f"{pi} has the wrong norm or trace")
    return FrobeniusData(m, d, pi)


# -- per-case constants ------------------------------------------------------


@dataclass(frozen=True)
class CaseParams:
    """Both choices ``sigma`` for one case and prime.

    Case 2: ``sigmas`` are the roots of ``x^2 - 2x + 2`` and
    ``k = sigma**-2``.  Case 3: ``sigmas`` are the roots of ``x^2 - x + 2``,
    ``k = (sigma - 1)/2`` and ``chi`` uses the constants ``b, c, d``.
    """

    case: CurveCase
    p: int
    sigmas: tuple[int, int]
    ks: tuple[int, int]
    i_p: int | None = None
    chi_b: tuple[int, int] | None = None
    chi_c: tuple[int, int] | None = None
    chi_d: tuple[int, int] | None = None

    def choice_for_k(self, k: int) -> int:
        k %= self.p
        if k not in self.ks:
            raise KNotInCaseError(f"k = {k} is not a {self.case.name} parameter mod {self.p}")
        return self.ks.index(k)


def case_params(case: CurveCase, p: int) -> CaseParams:
    if not case.admits(p) or p == 2 or (case is CurveCase.CASE3 and p == 7):
        raise WrongResidueClassError(f"p = {p} is outside the residue classes of {case.name}")
    if case is CurveCase.CASE2:
        roots = quadratic_roots_mod(1, -2, 2, p)
        ks = tuple(pow(a * a, -1, p) for a in roots)
        return CaseParams(case, p, tuple(roots), ks, i_p=2 * ks[0] % p)
    roots = quadratic_roots_mod(1, -1, 2, p)
    half = pow(2, -1, p)
    ks = tuple((w - 1) * half % p for w in roots)
    bs = tuple((k + 5 * half) % p for k in ks)
    cs = tuple(-pow(4 * k + 1, -1, p) % p for k in ks)
    ds = tuple((half + k) * pow(4 * k + 1, -1, p) % p for k in ks)
    return CaseParams(case, p, tuple(roots), ks, chi_b=bs, chi_c=cs, chi_d=ds)


# -- endomorphisms and the case-3 conjugacy ----------------------------------


def _field_of(curve: CurveCtx, ext: bool) -> Weierstrass:
    return curve.ext if ext else curve.base


def endo_apply(curve: CurveCtx, choice: int, P, ext: bool = False):
    """The degree-2 endomorphism attached to ``sigmas[choice]``."""
    E = _field_of(curve, ext)
    E.check(P)
    if P is O:
        return O
    f = E.field
    prm = curve.params
    sigma = prm.sigmas[choice]
    x, y = P
    if curve.case is CurveCase.CASE2:
        if x == 0:
            return O
        k = prm.ks[choice]
        x2 = f.square(x)
        nx = f.scale(k, f.div(f.add(x2, 1), x))
        coef = k * pow(sigma, -1, curve.p) % curve.p
        ny = f.scale(coef, f.mul(y, f.div(f.sub(x2, 1), x2)))
    else:
        shift = (sigma * sigma - 2) % curve.p
        den = f.add(x, shift)
        if den == 0:
            return O
        nx = eta_apply(curve, choice, x, f)
        c7 = 7 * pow(1 - sigma, 4, curve.p) % curve.p
        factor = f.add(1, f.scale(c7, f.inv(f.square(den))))
        ny = f.scale(pow(sigma, -3, curve.p), f.mul(y, factor))
    return E.check((nx, ny))


def eta_apply(curve: CurveCtx, choice: int, x: ProjPoint, field: FieldCtx | None = None) -> ProjPoint:
    """``(x - 7 (1 - sigma)^4 / (x + sigma^2 - 2)) / sigma^2``; pole and ``INF`` go to ``INF``."""
    if curve.case is not CurveCase.CASE3:
        raise WrongResidueClassError("eta is defined for the case-3 curve only")
    f = field or curve.field
    p = curve.p
    sigma = curve.params.sigmas[choice]
    if x is INF:
        return INF
    shift = (sigma * sigma - 2) % p
    den = f.add(x, shift)
    if den == 0:
        return INF
    c7 = 7 * pow(1 - sigma, 4, p) % p
    inner = f.sub(x, f.scale(c7, f.inv(den)))
    return f.scale(pow(sigma * sigma, -1, p), inner)


def chi_apply(curve: CurveCtx, choice: int, x: ProjPoint, field: FieldCtx | None = None) -> ProjPoint:
    """``(x + b) / (c x + d)``, conjugating ``theta_k`` to ``eta``."""
    f = field or curve.field
    prm = curve.params
    b, c, d = prm.chi_b[choice], prm.chi_c[choice], prm.chi_d[choice]
    if x is INF:
        return pow(c, -1, curve.p)
    den = f.add(f.scale(c, x), d)
    if den == 0:
        return INF
    return f.div(f.add(x, b), den)


def chi_inv(curve: CurveCtx, choice: int, x: ProjPoint, field: FieldCtx | None = None) -> ProjPoint:
    """``(d x - b) / (1 - c x)``."""
    f = field or curve.field
    prm = curve.params
    b, c, d = prm.chi_b[choice], prm.chi_c[choice], prm.chi_d[choice]
    p = curve.p
    if x is INF:
        return -d * pow(c, -1, p) % p
    den = f.sub(1, f.scale(c, x))
    if den == 0:
        return INF
    return f.div(f.sub(f.scale(d, x), b), den)


# -- the A / B / C split -----------------------------------------------------


@dataclass(frozen=True)
class DomainPartition:
    A: frozenset
    B: frozenset
    C: frozenset
    star_set: tuple  # points over F_{p^{2n}}


def has_exceptional_pair(curve: CurveCtx) -> bool:
    """Gaussian curve, ``n`` odd and ``p = +-3 mod 8``: 1 and -1 lie in C."""
    return curve.case is CurveCase.CASE2 and curve.n % 2 == 1 and curve.p % 8 in (3, 5)


def two_torsion_x(curve: CurveCtx) -> tuple[int, ...]:
    """Roots of the cubic, as prime-field elements."""
    p = curve.p
    prm = curve.params
    if curve.case is CurveCase.CASE2:
        return tuple(sorted({0, prm.i_p, -prm.i_p % p}))
    return tuple(sorted({-7 % p, (prm.sigmas[0] + 3) % p, (prm.sigmas[1] + 3) % p}))


def partition_domain(curve: CurveCtx, limit: int | None = None) -> DomainPartition:
    f = curve.field
    lim = brute_force_limit(limit)
    if f.q + 1 > lim:
        raise DomainTooLargeError(f.q + 1, lim)
    A, B = {INF}, set()
    for x in f.elements():
        (A if f.is_square(curve.base.rhs(x)) else B).add(x)
    C = set()
    star = [O] + [(curve.embed(x), 0) for x in two_torsion_x(curve)]
    if has_exceptional_pair(curve):
        C = {1, f.neg(1)}
        B -= C
        g = curve.ext_field
        lam = g.sqrt(2)
        tau = g.sqrt(g.neg(2))
        star += [(1, lam[0]), (1, lam[1]), (g.neg(1), tau[0]), (g.neg(1), tau[1])]
    return DomainPartition(frozenset(A), frozenset(B), frozenset(C), tuple(star))


def lift_points(curve: CurveCtx, x: int, ext: bool = False) -> frozenset:
    """Points with x-coordinate ``x`` (a base-field element) over F_{p^n} or F_{p^{2n}}."""
    if ext:
        return curve.ext.lift_x(curve.embed(x))
    return curve.base.lift_x(x)


def twist_kernel_check(curve: CurveCtx, P) -> bool:
    """Whether ``(pi_p^n + 1) P = O`` for a point over F_{p^{2n}}."""
    E = curve.ext
    E.check(P)
    return E.add(E.frobenius(P, curve.n), P) is O
