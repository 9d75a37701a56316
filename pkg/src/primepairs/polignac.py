"""Prime pairs (P, P + m) for even gaps m, and the gap-ratio model.

Relative to twin pairs, a gap m is expected to occur

    (2 if 3 | m else 1) * prod_{p | m, p >= 5} (p - 1)/(p - 2)

times as often: divisibility by 3 doubles the candidate pairs, and each other
odd prime divisor of m removes one forbidden residue for the High member.

Pairs are counted with the Low member P inside a closed range and the High
member P + m allowed to run past its upper end.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .primes import (DEFAULT_SEGMENT_SIZE, PreconditionError, PrimalityWindow, PrimeTable,
                     segmented_window, sieve_upto)

log = logging.getLogger(__name__)

PAPER_M_MAX = 3000
PAPER_EXTRA_MS = (30030,)


@dataclass(frozen=True)
class GapSpec:
    m: int
    distinct_prime_divisors: tuple[int, ...]

    @property
    def divisible_by_3(self) -> bool:
        return 3 in self.distinct_prime_divisors


@dataclass(frozen=True)
class PolignacRecord:
    m: int
    pairs_m: int
    occurrence_ratio: float
    expected_ratio: float
    quotient: float


@dataclass(frozen=True)
class RatioStats:
    minimum: float
    maximum: float
    mean: float
    std_dev: float


def _check_gap(m) -> int:
    if isinstance(m, bool) or int(m) != m or m < 2 or m % 2:
        raise ValueError(f"gap must be an even integer >= 2, got {m!r}")
    return int(m)


def gap_spec(m: int) -> GapSpec:
    m = _check_gap(m)
    divisors, d, rest = [], 2, m
    while d * d <= rest:
        if rest % d == 0:
            divisors.append(d)
            while rest % d == 0:
                rest //= d
        d += 1
    if rest > 1:
        divisors.append(rest)
    return GapSpec(m, tuple(divisors))


def expected_ratio_exact(m: int) -> Fraction:
    spec = gap_spec(m)
    ratio = Fraction(2 if spec.divisible_by_3 else 1)
    for p in spec.distinct_prime_divisors:
        if p >= 5:
            ratio *= Fraction(p - 1, p - 2)
    return ratio


def expected_ratio(m: int) -> float:
    return float(expected_ratio_exact(m))


def _bit_slice(words: np.ndarray, offset: int, nbits: int) -> np.ndarray:
    """Bits [offset, offset + nbits) of a little-endian bit array, re-based at 0.

    Bits past ``nbits`` in the last word are cleared.
    """
    nwords = (nbits + 63) // 64
    q, r = divmod(offset, 64)
    need = q + nwords + 1
    if words.size < need:
        words = np.concatenate([words, np.zeros(need - words.size, dtype=np.uint64)])
    lo = words[q : q + nwords]
    if r:
        out = (lo >> np.uint64(r)) | (words[q + 1 : q + nwords + 1] << np.uint64(64 - r))
    else:
        out = lo.copy()
    tail = nbits % 64
    if tail:
        out[-1] &= np.uint64((1 << tail) - 1)
    return out


def _low_bits(low_prime: int, high_prime: int, window: PrimalityWindow) -> tuple[int, int]:
    """Bit offset and length of the odd numbers in [low_prime, high_prime]."""
    first = low_prime | 1
    if high_prime < first:
        return 0, 0
    return (first - window.odd_start) // 2, (high_prime - first) // 2 + 1


def _check_range(low_prime: int, high_prime: int, m_top: int, window: PrimalityWindow):
    if low_prime < 5:
        raise ValueError(f"low_prime must be >= 5, got {low_prime}")
    if window.low > low_prime or window.high < high_prime + m_top:
        raise PreconditionError(
            f"window [{window.low}, {window.high}] must cover [{low_prime}, {high_prime + m_top}]")


def count_pairs_m(low_prime: int, high_prime: int, m: int, window: PrimalityWindow) -> int:
    """Number of primes P in [low_prime, high_prime] with P + m prime."""
    m = _check_gap(m)
    _check_range(low_prime, high_prime, m, window)
    off, nbits = _low_bits(low_prime, high_prime, window)
    if nbits == 0:
        return 0
    base = _bit_slice(window.words, off, nbits)
    return _count_shifted(base, window.words, off, nbits, m)


def _count_shifted(base: np.ndarray, words: np.ndarray, off: int, nbits: int, m: int) -> int:
    high = _bit_slice(words, off + m // 2, nbits)
    high &= base
    return int(np.bitwise_count(high).sum())


def gap_list(m_max: int, extra_ms=()) -> list[int]:
    """Sorted, de-duplicated gaps {2, 4, ..., m_max} | extra_ms, always including 2."""
    ms = set(range(2, m_max + 1, 2)) | {_check_gap(m) for m in extra_ms} | {2}
    return sorted(ms)


def count_all_gaps(low_prime: int, high_prime: int, ms, window: PrimalityWindow,
                   threads: int = 1) -> dict[int, int]:
    ms = [_check_gap(m) for m in ms]
    _check_range(low_prime, high_prime, max(ms), window)
    off, nbits = _low_bits(low_prime, high_prime, window)
    if nbits == 0:
        return {m: 0 for m in ms}
    base = _bit_slice(window.words, off, nbits)

    def work(m):
        return _count_shifted(base, window.words, off, nbits, m)

    if threads <= 1:
        counts = [work(m) for m in ms]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(work, ms))
    return dict(zip(ms, counts))


def build_records(counts: dict[int, int]) -> list[PolignacRecord]:
    pairs_2 = counts[2]
    if pairs_2 == 0:
        raise ValueError("no twin pairs in range; ratios against m = 2 are undefined")
    records = []
    for m in sorted(counts):
        occ = counts[m] / pairs_2
        exp = expected_ratio(m)
        records.append(PolignacRecord(m, counts[m], occ, exp, occ / exp))
    return records


def scan_all_gaps(low_prime: int, high_prime: int, m_max: int = PAPER_M_MAX,
                  extra_ms=PAPER_EXTRA_MS, window: PrimalityWindow | None = None,
                  threads: int = 1, segment_size: int = DEFAULT_SEGMENT_SIZE) -> list[PolignacRecord]:
    """Pair counts and ratios for every even m <= m_max plus ``extra_ms``.

    Without a ``window`` one is sieved over [low_prime, high_prime + max m].
    """
    ms = gap_list(m_max, extra_ms)
    if window is None:
        top = high_prime + ms[-1]
        base = sieve_upto(max(2, math.isqrt(top)))
        log.info("sieving [%d, %d]", low_prime, top)
        window = segmented_window(low_prime, top, base, segment_size=segment_size, threads=threads)
    log.info("counting pairs for %d gaps", len(ms))
    return build_records(count_all_gaps(low_prime, high_prime, ms, window, threads))


def ratio_stats(records) -> RatioStats:
    """Min, max, mean and population standard deviation of the quotients."""
    q = np.array([r.quotient for r in records], dtype=np.float64)
    if q.size == 0:
        raise ValueError("ratio_stats needs at least one record")
    return RatioStats(float(q.min()), float(q.max()), float(q.mean()), float(q.std()))


def odd_prime_range(low_index: int, high_index: int, table: PrimeTable) -> tuple[int, int]:
    """Values of the low_index-th and high_index-th odd primes."""
    if low_index < 1 or high_index < low_index:
        raise ValueError(f"need 1 <= low_index <= high_index, got {low_index}, {high_index}")
    return table.odd_prime(low_index), table.odd_prime(high_index)
