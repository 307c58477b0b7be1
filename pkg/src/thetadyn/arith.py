"""Small integer helpers: factoring, totients, orders modulo d."""

from functools import lru_cache
from math import gcd

from sympy import factorint as _sympy_factorint
from sympy import isprime as _sympy_isprime


def is_prime(n: int) -> bool:
    return n >= 2 and bool(_sympy_isprime(n))


@lru_cache(maxsize=4096)
def factorint(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    return dict(sorted(_sympy_factorint(n).items()))


def divisors(n: int) -> list[int]:
    divs = [1]
    for prime, exp in factorint(n).items():
        divs = [d * prime**k for d in divs for k in range(exp + 1)]
    return sorted(divs)


def totient(n: int) -> int:
    result = n
    for prime in factorint(n):
        result -= result // prime
    return result


def split_order(t: int) -> tuple[int, int]:
    """Write ``t = d * 2**a`` with ``d`` odd and return ``(d, a)``."""
    if t < 1:
        raise ValueError("t must be positive")
    a = 0
    while t % 2 == 0:
        t //= 2
        a += 1
    return t, a


def order_mod(g: int, d: int) -> int:
    """Multiplicative order of ``g`` in ``(Z/dZ)^*`` by direct powering."""
    if d < 1:
        raise ValueError("modulus must be positive")
    if d == 1:
        return 1
    g %= d
    if gcd(g, d) != 1:
        raise ValueError(f"{g} is not a unit modulo {d}")
    x, t = g, 1
    while x != 1:
        x = x * g % d
        t += 1
    return t


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol for an odd prime ``p`` (0, 1 or -1)."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Smallest square root of ``a`` modulo the odd prime ``p``, or None."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = split_order(p - 1)
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 1, t * t % p
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def quadratic_roots_mod(a: int, b: int, c: int, p: int) -> list[int]:
    """Sorted roots in F_p of ``a x^2 + b x + c`` for an odd prime ``p``."""
    a, b, c = a % p, b % p, c % p
    if a == 0:
        raise ValueError("leading coefficient vanishes mod p")
    disc = (b * b - 4 * a * c) % p
    r = sqrt_mod_prime(disc, p)
    if r is None:
        return []
    inv = pow(2 * a, -1, p)
    return sorted({(-b + r) * inv % p, (-b - r) * inv % p})
