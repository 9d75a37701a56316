"""Slow, obviously-correct references.  Nothing here imports primepairs."""

from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_upto(n: int) -> list[int]:
    return [k for k in range(2, n + 1) if is_prime(k)]


def candidates_by_enumeration(p: int) -> list[int]:
    """Multiples of 6 strictly inside ((p-2)^2, p^2), minus p^2 - 1."""
    return [N for N in range((p - 2) ** 2 + 1, p * p) if N % 6 == 0 and N != p * p - 1]


def twin_centers(p: int) -> list[int]:
    return [N for N in candidates_by_enumeration(p) if is_prime(N - 1) and is_prime(N + 1)]


def pair_count(lo: int, hi: int, m: int) -> int:
    return sum(1 for P in range(lo, hi + 1) if is_prime(P) and is_prime(P + m))


def product_fraction(primes, f) -> Fraction:
    out = Fraction(1)
    for p in primes:
        out *= f(p)
    return out
