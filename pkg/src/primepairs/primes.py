"""Prime generation and lookup.

Two containers live here. ``PrimeTable`` is the ordered list of every prime up
to a limit, used for index arithmetic (p_n, p_{n-1}, ...). ``PrimalityWindow``
is a bit-packed primality map over an arbitrary interval, built by a segmented
sieve so that memory scales with the interval width rather than its end point.

Both store odd numbers only; 2 is handled as a special case.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

DEFAULT_SEGMENT_SIZE = 1 << 22


class PreconditionError(ValueError):
    """An input does not satisfy the documented precondition of an operation."""


def _small_odd_primes(limit: int) -> np.ndarray:
    """Odd primes <= limit by a plain (unsegmented) sieve; used for base tables."""
    if limit < 3:
        return np.empty(0, dtype=np.int64)
    flags = np.ones((limit + 1) // 2, dtype=bool)  # slot i <-> 2i+1
    flags[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            flags[p * p // 2 :: p] = False
    return 2 * np.flatnonzero(flags).astype(np.int64) + 1


def _sieve_odd_segment(lo: int, nslots: int, base: np.ndarray) -> np.ndarray:
    """Primality flags for the odd numbers lo, lo+2, ..., lo+2*(nslots-1).

    ``lo`` must be odd and ``base`` must hold every odd prime up to the square
    root of the last value.
    """
    flags = np.ones(nslots, dtype=bool)
    hi = lo + 2 * (nslots - 1)
    if lo == 1:
        flags[0] = False
    base = base[: np.searchsorted(base, math.isqrt(hi), side="right")]
    if base.size == 0:
        return flags
    # first odd multiple of p that is >= max(lo, p*p)
    start = -(-lo // base) * base
    start += np.where(start % 2 == 0, base, 0)
    start = np.maximum(start, base * base)
    offsets = (start - lo) // 2
    for p, off in zip(base.tolist(), offsets.tolist()):
        if off < nslots:
            flags[off::p] = False
    return flags


def _segments(first_odd: int, nslots: int, segment_size: int) -> list[tuple[int, int]]:
    # slots per segment rounded to whole 64-bit words so packed pieces concatenate
    per = max(64, (segment_size // 2) // 64 * 64)
    return [(first_odd + 2 * s, min(per, nslots - s)) for s in range(0, nslots, per)]


def _odd_flags(first_odd: int, nslots: int, base: np.ndarray, segment_size: int,
               threads: int, pack: bool) -> list[np.ndarray]:
    segs = _segments(first_odd, nslots, segment_size)

    def work(seg):
        flags = _sieve_odd_segment(seg[0], seg[1], base)
        if pack:
            return np.packbits(flags, bitorder="little")
        return flags

    if threads <= 1 or len(segs) == 1:
        return [work(s) for s in segs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, segs))


@dataclass(frozen=True)
class PrimeTable:
    """Every prime up to ``limit``, in increasing order.

    Indices are 1-based throughout (``nth(1) == 2``).  The paper-style "k-th odd
    prime" is available as :meth:`odd_prime`, which is ``nth(k + 1)``.
    """

    limit: int
    primes: np.ndarray = field(repr=False)
    count: int = field(init=False)

    def __post_init__(self):
        self.primes.setflags(write=False)
        object.__setattr__(self, "count", int(self.primes.size))

    def __len__(self) -> int:
        return self.count

    def __contains__(self, x) -> bool:
        x = int(x)
        if x > self.limit:
            raise PreconditionError(f"{x} is beyond the table limit {self.limit}")
        i = int(np.searchsorted(self.primes, x))
        return i < self.count and int(self.primes[i]) == x

    def nth(self, n: int) -> int:
        return nth_prime(n, self)

    def odd_prime(self, k: int) -> int:
        """The k-th odd prime (3 is the first), i.e. ``nth(k + 1)``."""
        return nth_prime(k + 1, self)

    def index_of(self, p: int) -> int:
        """1-based index of the prime ``p``."""
        i = int(np.searchsorted(self.primes, p))
        if i >= self.count or int(self.primes[i]) != p:
            raise ValueError(f"{p} is not a prime in this table")
        return i + 1

    def pi(self, x: int) -> int:
        """Number of primes <= x (x must not exceed the limit)."""
        if x > self.limit:
            raise PreconditionError(f"{x} is beyond the table limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def between(self, lo: int, hi: int) -> np.ndarray:
        """Primes p with lo <= p <= hi."""
        a = np.searchsorted(self.primes, lo, side="left")
        b = np.searchsorted(self.primes, hi, side="right")
        return self.primes[a:b]

    def upto(self, limit: int) -> "PrimeTable":
        if limit > self.limit:
            raise PreconditionError(f"cannot extend a table to {limit} (limit {self.limit})")
        return PrimeTable(limit, self.primes[: self.pi(limit)].copy())


def sieve_upto(limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1) -> PrimeTable:
    """Sieve every prime <= limit."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    base = _small_odd_primes(math.isqrt(limit))
    nslots = (limit + 1) // 2  # odd numbers 1, 3, ..., <= limit
    parts = _odd_flags(1, nslots, base, segment_size, threads, pack=False)
    found = [np.array([2], dtype=np.int64)]
    offset = 0
    for part in parts:
        found.append(2 * (np.flatnonzero(part).astype(np.int64) + offset) + 1)
        offset += part.size
    return PrimeTable(limit, np.concatenate(found))


@dataclass(frozen=True)
class PrimalityWindow:
    """Bit-packed primality flags over the integers in ``[low, high]``.

    Bit ``i`` of ``words`` (little-endian bit order within each 64-bit word)
    describes the odd number ``odd_start + 2*i``.  Even numbers need no storage:
    only 2 can be prime.
    """

    low: int
    high: int
    words: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.words.setflags(write=False)

    @property
    def odd_start(self) -> int:
        return self.low | 1

    @property
    def nbits(self) -> int:
        """Number of odd numbers covered."""
        return max(0, (self.high - self.odd_start) // 2 + 1)

    def is_prime(self, x: int) -> bool:
        if not self.low <= x <= self.high:
            raise IndexError(f"{x} is outside the window [{self.low}, {self.high}]")
        if x % 2 == 0:
            return x == 2
        i = (x - self.odd_start) // 2
        return bool((int(self.words[i >> 6]) >> (i & 63)) & 1)

    __contains__ = is_prime

    def odd_flags(self) -> np.ndarray:
        """Boolean flag per odd number, starting at ``odd_start``."""
        bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return bits[: self.nbits].astype(bool)

    def flags(self) -> np.ndarray:
        """Boolean flag per integer in ``[low, high]``."""
        out = np.zeros(self.high - self.low + 1, dtype=bool)
        out[self.odd_start - self.low :: 2] = self.odd_flags()
        if self.low <= 2 <= self.high:
            out[2 - self.low] = True
        return out

    def primes(self) -> np.ndarray:
        found = self.odd_start + 2 * np.flatnonzero(self.odd_flags()).astype(np.int64)
        if self.low <= 2 <= self.high:
            found = np.concatenate(([2], found))
        return found

    def count(self) -> int:
        n = int(np.bitwise_count(self.words).sum())
        return n + (1 if self.low <= 2 <= self.high else 0)


def segmented_window(low: int, high: int, base: PrimeTable,
                     segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1) -> PrimalityWindow:
    """Exact primality flags for ``[low, high]`` by a segmented sieve.

    ``base`` must contain every prime up to ``isqrt(high)``.  Segments are
    sieved independently (optionally on ``threads`` workers) and packed into a
    single bit array; the result does not depend on the thread count.
    """
    if low < 2 or high < low:
        raise ValueError(f"need 2 <= low <= high, got [{low}, {high}]")
    need = math.isqrt(high)
    if base.limit < need:
        raise PreconditionError(
            f"base table covers primes up to {base.limit}; need at least isqrt({high}) = {need}")
    odd_base = base.primes[1 : base.pi(need)]
    first = low | 1
    nslots = max(0, (high - first) // 2 + 1)
    parts = _odd_flags(first, nslots, odd_base, segment_size, threads, pack=True)
    packed = np.concatenate(parts) if parts else np.empty(0, dtype=np.uint8)
    packed = np.concatenate([packed, np.zeros(-packed.size % 8, dtype=np.uint8)])
    return PrimalityWindow(low, high, packed.view("<u8").copy())


def nth_prime(n: int, table: PrimeTable) -> int:
    """The n-th prime, 1-based (``nth_prime(1, t) == 2``)."""
    if not 1 <= n <= table.count:
        raise IndexError(f"prime index {n} outside 1..{table.count}")
    return int(table.primes[n - 1])


def nth_prime_upper_bound(n: int) -> int:
    """An integer >= p_n (Rosser-Schoenfeld bound for n >= 6)."""
    if n < 6:
        return 13
    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 1




def is_prime_small(n: int) -> bool:
    """Trial-division primality, for validating single arguments without a table."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))
