"""Estimators for windows beyond the reach of a prime table.

p_n comes from Cesaro's expansion, the (p - 2)/p product from an exact
anchor over primes up to 10^4 scaled by (log 10001 / log x)^2, and the
candidate count from 2/3 p_n.  The resulting prediction behaves like
C x / (log x)^2, which grows with x.

``scenario_experiment`` measures how much the product depends on where
exactly primes sit, by moving every other prime to three different places.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .prediction import MERTENS_FACTOR
from .primes import PreconditionError, PrimeTable

ANCHOR_LIMIT = 10_000


@dataclass(frozen=True)
class AsymptoticPrediction:
    n: int
    p_n_estimate: float
    product_estimate: float
    candidates_estimate: float
    predicted_twins: float


@dataclass(frozen=True)
class ScenarioResult:
    prod1: float
    prod2: float
    prod3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.prod1, self.prod2, self.prod3)


def cesaro_nth_prime(n: int) -> float:
    """n (log n + log log n - 1 + (log log n - 2) / log n)."""
    if n < 10:
        raise ValueError(f"n must be >= 10, got {n}")
    ln = math.log(n)
    lln = math.log(ln)
    return n * (ln + lln - 1.0 + (lln - 2.0) / ln)


def anchor_product(anchor: PrimeTable, upto: float = ANCHOR_LIMIT) -> float:
    """Exact prod (p - 2)/p over primes 5 <= p <= upto (upto <= 10^4)."""
    if anchor.limit < min(upto, ANCHOR_LIMIT):
        raise PreconditionError(f"anchor table must cover {ANCHOR_LIMIT}, covers {anchor.limit}")
    acc = 1.0
    for p in anchor.primes[2 : anchor.pi(int(upto))].tolist():
        acc *= (p - 2) / p
    return acc


def product_estimate(x: float, anchor: PrimeTable) -> float:
    """Approximate prod (p - 2)/p over primes 5 <= p <= x, for x >= 10001."""
    if x < ANCHOR_LIMIT + 1:
        raise ValueError(f"x must be >= {ANCHOR_LIMIT + 1}, got {x}")
    return anchor_product(anchor) * (math.log(ANCHOR_LIMIT + 1) / math.log(x)) ** 2


def predict_twins_asymptotic(n: int, anchor: PrimeTable) -> AsymptoticPrediction:
    """Twin prediction for the window of p_n with no knowledge of p_n itself.

    Below the anchor (estimated p_n <= 10^4) the product is taken exactly
    from the anchor table instead of the scaled estimate.
    """
    x = cesaro_nth_prime(n)
    if x > ANCHOR_LIMIT + 1:
        prod = product_estimate(x, anchor)
    else:
        prod = anchor_product(anchor, upto=x)
    cands = 2.0 * x / 3.0
    return AsymptoticPrediction(n, x, prod, cands, prod * cands / MERTENS_FACTOR**2)


def scenario_experiment(table: PrimeTable, first: int = 1_000_000, last: int = 5_000_000) -> ScenarioResult:
    """Sensitivity of the composite part of the product to prime placement.

    Indices are odd-prime indices (3 is the first odd prime).  For k = first,
    first + 2, ..., last the true primes q = o_k and r = o_{k+2} are kept and
    the odd prime between them is replaced by a hypothetical h at q + 2
    (scenario 1), r - 2 (scenario 2) or (q + r)/2 (scenario 3).  The odd
    composites strictly between consecutive primes a < b contribute
    prod (c - 2)/c = a/(b - 2), so each step multiplies by

        q/(h - 2) * h/(r - 2).
    """
    if first < 1 or last < first or (last - first) % 2:
        raise ValueError("need 1 <= first <= last with last - first even")
    need = last + 3  # o_{last+2} is p_{last+3}
    if table.count < need:
        raise PreconditionError(
            f"table holds {table.count} primes; scenario needs p_{need} (limit >= ~{int(need * (math.log(need) + math.log(math.log(need))))})")
    q = table.primes[first : last + 1 : 2].astype(np.float64)
    r = table.primes[first + 2 : last + 3 : 2].astype(np.float64)
    prods = []
    for h in (q + 2.0, r - 2.0, (q + r) / 2.0):
        acc = 1.0
        for f in ((q / (h - 2.0)) * (h / (r - 2.0))).tolist():
            acc *= f
        prods.append(acc)
    return ScenarioResult(*prods)
