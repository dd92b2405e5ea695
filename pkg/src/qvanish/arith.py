"""Shared integer helpers: primes, factorization, divisor sums."""

from __future__ import annotations

# Witnesses making Miller-Rabin deterministic for all n < 3.3e24 (Sorenson-Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3317044064679887385961981


def sieve_primes(bound: int) -> list[int]:
    """All primes <= bound, by Eratosthenes."""
    if bound < 2:
        return []
    flags = bytearray(b"\x01") * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(bound**0.5) + 1):
        if flags[p]:
            start = p * p
            flags[start : bound + 1 : p] = b"\x00" * ((bound - start) // p + 1)
    return [i for i, f in enumerate(flags) if f]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; valid for n < 3.3e24 (ample for scan indices)."""
    if n < 2:
        return False
    if n >= _MR_LIMIT:
        raise ValueError(f"primality test witnesses only cover n < {_MR_LIMIT}")
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] by trial division, p ascending."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 2 if d % 6 == 5 else 4  # step over multiples of 2 and 3
    if n > 1:
        out.append((n, 1))
    return out


def radical(n: int) -> int:
    """Product of the distinct primes dividing n."""
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r
