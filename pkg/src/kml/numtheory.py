"""Elementary number theory helpers: symbols, valuations, Hensel lifts."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for 64-bit range
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


def ord_p(x, p: int) -> int:
    """p-adic valuation of a nonzero rational (or int)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("ord_p(0) undefined")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x, p: int) -> Fraction:
    """x / p^ord_p(x) as an exact rational p-adic unit."""
    return Fraction(x) / Fraction(p) ** ord_p(x, p)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    assert n > 0 and n % 2 == 1
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), any integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    return sign * jacobi(a, n)


def is_fundamental_discriminant(d: int) -> bool:
    """d a fundamental discriminant (of a quadratic field), d != 1."""
    if d == 1 or d == 0:
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    i = 2
    while i * i <= n:
        if n % (i * i) == 0:
            return False
        while n % i == 0:
            n //= i
        i += 1
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: exponent}."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def hilbert_symbol(a, b, p: int) -> int:
    """Local Hilbert symbol (a,b)_p for nonzero rationals, p prime."""
    a, b = Fraction(a), Fraction(b)
    assert a != 0 and b != 0
    al, bl = ord_p(a, p), ord_p(b, p)
    u = unit_part(a, p)
    v = unit_part(b, p)
    if p != 2:
        # (u,v)=1; (p,u) = legendre(u); formula via valuations
        s = 1
        if al % 2 == 1 and bl % 2 == 1:
            s *= jacobi((-1) % p, p) if p > 2 else 1
            s *= jacobi(_fr_mod(u, p), p) * jacobi(_fr_mod(v, p), p)
        elif al % 2 == 1:
            s *= jacobi(_fr_mod(v, p), p)
        elif bl % 2 == 1:
            s *= jacobi(_fr_mod(u, p), p)
        return s
    # p = 2: epsilon/omega formula with units mod 8
    um = _fr_mod(u, 8)
    vm = _fr_mod(v, 8)
    eps_u = (um - 1) // 2 % 2
    eps_v = (vm - 1) // 2 % 2
    om_u = (um * um - 1) // 8 % 2
    om_v = (vm * vm - 1) // 8 % 2
    e = eps_u * eps_v + al * om_v + bl * om_u
    return -1 if e % 2 else 1


def _fr_mod(x: Fraction, m: int) -> int:
    num = x.numerator % m
    den = x.denominator % m
    return num * pow(den, -1, m) % m


def inv_mod(a: int, m: int) -> int:
    return pow(a % m, -1, m)


def fraction_mod(x, m: int) -> int:
    """Residue of a rational with denominator coprime to m."""
    x = Fraction(x)
    if gcd(x.denominator, m) != 1:
        raise ValueError(f"denominator {x.denominator} not invertible mod {m}")
    return x.numerator % m * pow(x.denominator % m, -1, m) % m


def sqrt_mod_prime_power(a: int, p: int, n: int):
    """A square root of a mod p^n, or None.  a may be divisible by p."""
    m = p**n
    a %= m
    if a == 0:
        return 0
    v = 0
    aa = a
    while aa % p == 0:
        aa //= p
        v += 1
    if v >= n:
        # a = p^v * unit with v >= n: representative 0 works iff 2*ceil(n/2) >= n
        return pow(p, (n + 1) // 2, m)
    if v % 2 == 1:
        return None
    r = _sqrt_unit_mod(aa % (p ** (n - v)), p, n - v)
    if r is None:
        return None
    return r * p ** (v // 2) % m


def _sqrt_unit_mod(u: int, p: int, n: int):
    if p != 2:
        if jacobi(u % p, p) != 1:
            return None
        r = _tonelli(u % p, p)
        k = 1
        while k < n:
            # Hensel: r -> r - (r^2-u)/(2r)
            k = min(2 * k, n)
            m = p**k
            r = (r - (r * r - u) * pow(2 * r, -1, m)) % m
        return r
    # p = 2
    if n == 1:
        return u % 2
    if n == 2:
        return 1 if u % 4 == 1 else None
    if u % 8 != 1:
        return None
    r = 1
    for k in range(3, n + 1):
        m = 1 << k
        if (r * r - u) % m:
            r += 1 << (k - 2)
            r %= m
    return r % (1 << n)


def _tonelli(a: int, p: int) -> int:
    assert p % 2 == 1
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r
