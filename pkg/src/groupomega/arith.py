"""Small integer helpers: primality, factorization, exact logarithms."""

from __future__ import annotations


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division, primes ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def exact_log(n: int, p: int) -> int | None:
    """Return ``k`` with ``p**k == n``, or None if ``n`` is not a power of ``p``."""
    if n < 1 or p < 2:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)
