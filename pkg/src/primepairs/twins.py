"""Counting twin primes in the windows ((p_n - 2)^2, p_n^2) by the double sieve.

A candidate N (a multiple of 6 in the window) survives when no prime p with
5 <= p <= p_{n-1} leaves N mod p in {1, p - 1}.  Inside the window N +- 1 is
below p_n^2, so surviving is the same as N - 1 and N + 1 both being prime.

Two implementations are kept:

* :func:`survives_double_sieve` / :func:`reference_survivors` test each
  candidate against every sieve prime (the criterion as stated).
* :func:`scan_twin_windows` strikes out, for every sieve prime, the two residue
  classes of candidate indices at once.  This is the same criterion executed
  prime-major instead of candidate-major, compiled with numba.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from .candidates import CandidateRange, candidate_bounds
from .primes import PreconditionError, PrimeTable, segmented_window

log = logging.getLogger(__name__)

#: windows handed to one worker at a time; fixed so results never depend on thread count
CHUNK_WINDOWS = 256
#: twin_centers are kept by default only for p_n up to this value
KEEP_CENTERS_LIMIT = 10**5


@dataclass(frozen=True)
class TwinScanRecord:
    p_n: int
    candidates: int
    twins_found: int
    twin_centers: tuple[int, ...] | None = None


def survives_double_sieve(N: int, sieve_primes) -> bool:
    """True unless some sieve prime p has N mod p equal to 1 or p - 1."""
    if N % 6:
        raise ValueError(f"candidate must be a multiple of 6, got {N}")
    for p in sieve_primes:
        r = N % int(p)
        if r == 1 or r == p - 1:
            return False
    return True


def sieve_primes_for(p_n: int, table: PrimeTable) -> np.ndarray:
    """The primes 5 <= p <= p_{n-1}; exactly n - 3 of them."""
    if table.limit < p_n:
        raise PreconditionError(f"table limit {table.limit} does not reach p_n = {p_n}")
    n = table.index_of(p_n)
    return table.primes[2 : n - 1]


def reference_survivors(p_n: int, table: PrimeTable) -> np.ndarray:
    """Candidate-major double sieve, vectorised over (candidate, prime) pairs."""
    rng = candidate_bounds(p_n)
    cands = np.arange(rng.first_candidate, rng.last_candidate + 1, 6, dtype=np.int64)
    sp = sieve_primes_for(p_n, table)
    keep = np.ones(cands.size, dtype=bool)
    for lo in range(0, sp.size, 512):
        block = sp[lo : lo + 512]
        r = cands[:, None] % block[None, :]
        keep &= ~((r == 1) | (r == block - 1)).any(axis=1)
    return cands[keep]


def primality_survivors(p_n: int, table: PrimeTable) -> np.ndarray:
    """Twin centres in the window found from a segmented primality sieve instead."""
    rng = candidate_bounds(p_n)
    win = segmented_window(rng.low, rng.high, table)
    cands = np.arange(rng.first_candidate, rng.last_candidate + 1, 6, dtype=np.int64)
    odd = win.odd_flags()
    lo_idx = (cands - 1 - win.odd_start) // 2
    return cands[odd[lo_idx] & odd[lo_idx + 1]]


@numba.njit(nogil=True, cache=True)
def _strike(first, count, sieve_primes, k, inv6, alive):
    # candidate i is N = 6(m0 + i); N = +-1 (mod q) iff m0 + i = +-inv6 (mod q)
    m0 = first // 6
    alive[:count] = 1
    for j in range(k):
        q = sieve_primes[j]
        r = m0 % q
        v = inv6[j]
        i = v - r
        if i < 0:
            i += q
        while i < count:
            alive[i] = 0
            i += q
        i = q - v - r
        if i < 0:
            i += q
        while i < count:
            alive[i] = 0
            i += q
    total = 0
    for i in range(count):
        total += alive[i]
    return total


@numba.njit(nogil=True, cache=True)
def _count_batch(firsts, counts, ks, sieve_primes, inv6):
    out = np.empty(firsts.size, np.int64)
    alive = np.empty(counts.max(), np.uint8)
    for w in range(firsts.size):
        out[w] = _strike(firsts[w], counts[w], sieve_primes, ks[w], inv6, alive)
    return out


def _inverse_of_six(primes: np.ndarray) -> np.ndarray:
    return np.array([pow(6, -1, int(q)) for q in primes], dtype=np.int64)


def _window_survivors(rng: CandidateRange, sp: np.ndarray, inv6: np.ndarray) -> np.ndarray:
    alive = np.empty(rng.count, dtype=np.uint8)
    _strike(rng.first_candidate, rng.count, sp, sp.size, inv6[: sp.size], alive)
    return rng.first_candidate + 6 * np.flatnonzero(alive).astype(np.int64)


def count_twins_in_window(p_n: int, table: PrimeTable, keep_centers: bool = False) -> TwinScanRecord:
    """Twin pairs straddling the candidates of a single window."""
    rng = candidate_bounds(p_n)
    sp = sieve_primes_for(p_n, table)
    centers = _window_survivors(rng, sp, _inverse_of_six(sp))
    kept = tuple(int(c) for c in centers) if keep_centers else None
    return TwinScanRecord(p_n, rng.count, int(centers.size), kept)


def window_geometry(p_values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised first candidate and candidate count for each p_n."""
    p = np.asarray(p_values, dtype=np.int64)
    low = (p - 2) ** 2
    first = low + np.where((p - 2) % 3 == 0, 3, 5)
    last = p * p - 7
    return first, (last - first) // 6 + 1


def count_twins_all(p_max: int, table: PrimeTable, threads: int = 1) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Twin counts for every window with 7 <= p_n <= p_max.

    Returns ``(p_values, candidate_counts, twin_counts)`` as arrays ordered by p_n.
    """
    if table.limit < p_max:
        raise PreconditionError(f"table limit {table.limit} does not reach p_max = {p_max}")
    n_hi = table.pi(p_max)
    if n_hi < 4:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, empty
    p_values = table.primes[3:n_hi]
    ks = np.arange(1, n_hi - 2, dtype=np.int64)  # p_4 = 7 has one sieve prime
    firsts, counts = window_geometry(p_values)
    sp = np.ascontiguousarray(table.primes[2 : n_hi - 1])
    inv6 = _inverse_of_six(sp)

    chunks = [slice(i, i + CHUNK_WINDOWS) for i in range(0, p_values.size, CHUNK_WINDOWS)]

    def work(sl):
        return _count_batch(firsts[sl], counts[sl], ks[sl], sp, inv6)

    log.info("double-sieving %d windows up to p_n = %d", p_values.size, p_max)
    if threads <= 1:
        parts = [work(sl) for sl in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    return p_values.copy(), counts, np.concatenate(parts)


def scan_twin_windows(p_max: int, table: PrimeTable, threads: int = 1,
                      keep_centers_upto: int = KEEP_CENTERS_LIMIT) -> list[TwinScanRecord]:
    """One record per window 7 <= p_n <= p_max; centres retained for p_n <= keep_centers_upto."""
    p_values, counts, twins = count_twins_all(p_max, table, threads)
    records = []
    inv6 = None
    for n, (p, c, t) in enumerate(zip(p_values.tolist(), counts.tolist(), twins.tolist()), start=4):
        centers = None
        if p <= keep_centers_upto:
            if inv6 is None:
                sp_all = table.primes[2 : table.pi(min(p_max, keep_centers_upto))]
                inv6 = _inverse_of_six(sp_all)
            found = _window_survivors(candidate_bounds(p), table.primes[2 : n - 1], inv6)
            centers = tuple(found.tolist())
        records.append(TwinScanRecord(p, c, t, centers))
    return records


def zero_windows(records) -> list[int]:
    """p_n values whose window holds no twin pair."""
    return [r.p_n for r in records if r.twins_found == 0]
