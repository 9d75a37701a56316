"""Twin-prime candidates inside the window ((p_n - 2)^2, p_n^2).

Every twin pair other than (3, 5) straddles a multiple of 6, so the candidates
for a window are the multiples of 6 strictly inside it.  p_n^2 - 1 is always a
multiple of 6 but never a candidate (its upper neighbour is p_n^2), which puts
the last candidate at p_n^2 - 7.
"""

from __future__ import annotations

from dataclasses import dataclass

from .primes import is_prime_small


@dataclass(frozen=True)
class CandidateRange:
    p_n: int
    low: int
    high: int
    first_candidate: int
    last_candidate: int
    count: int

    def __iter__(self):
        return iter(range(self.first_candidate, self.last_candidate + 1, 6))

    def __len__(self):
        return self.count

    @property
    def excluded(self) -> int:
        """Width of the window that cannot hold candidates (12, or 10 when 3 | p_n - 2)."""
        return (self.first_candidate - self.low) + (self.high - self.last_candidate)


def candidate_bounds(p_n: int) -> CandidateRange:
    """First/last candidate and exact candidate count for the window of ``p_n``."""
    if p_n < 7 or not is_prime_small(p_n):
        raise ValueError(f"p_n must be a prime >= 7, got {p_n}")
    low, high = (p_n - 2) ** 2, p_n * p_n
    # (p_n - 2)^2 is 1 mod 6 unless 3 divides p_n - 2, in which case it is 3 mod 6
    first = low + (3 if (p_n - 2) % 3 == 0 else 5)
    last = high - 7
    return CandidateRange(p_n, low, high, first, last, (last - first) // 6 + 1)


def candidate_count_closed_form(p_n: int) -> int:
    """The two closed forms (4(p_n-1) - 12)/6 + 1 and (4(p_n-1) - 10)/6 + 1."""
    excluded = 10 if (p_n - 2) % 3 == 0 else 12
    return (4 * (p_n - 1) - excluded) // 6 + 1


def candidate_count_approx(p_n: int) -> float:
    """Large-p_n approximation of the candidate count, 2/3 p_n."""
    if p_n < 7:
        raise ValueError(f"p_n must be >= 7, got {p_n}")
    return 2.0 * p_n / 3.0


def enumerate_candidates(rng: CandidateRange) -> list[int]:
    return list(rng)
