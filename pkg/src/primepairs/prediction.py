"""Predicted twin counts per window and the constants behind them.

The survival probability of a candidate is the product of (p - 2)/p over the
sieve primes 5 <= p <= p_{n-1}.  Multiplied by the candidate count it
overshoots by the square of the Mertens factor 2 e^-gamma, so the prediction is

    product * candidates / 1.12292**2
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .candidates import candidate_bounds
from .primes import PreconditionError, PrimeTable
from .twins import window_geometry

#: 2 e^-gamma at the precision printed in the paper's formula
MERTENS_FACTOR = 1.12292
MERTENS_FACTOR_EXACT = 2.0 * math.exp(-np.euler_gamma)


def mertens_factor(exact: bool = False) -> float:
    return MERTENS_FACTOR_EXACT if exact else MERTENS_FACTOR


@dataclass(frozen=True)
class PredictionBreakdown:
    p_n: int
    product_pminus2_over_p: float
    n_of_candidates: int
    correction: float
    prediction: float


def _sieve_primes(p_n: int, table: PrimeTable) -> np.ndarray:
    if p_n < 7:
        raise ValueError(f"p_n must be a prime >= 7, got {p_n}")
    if table.limit < p_n:
        raise PreconditionError(f"table limit {table.limit} does not cover p_n = {p_n}")
    n = table.index_of(p_n)
    return table.primes[2 : n - 1]


def product_pminus2_over_p(p_n: int, table: PrimeTable) -> float:
    """Running product of (p - 2)/p over the n - 3 primes 5 <= p <= p_{n-1}."""
    acc = 1.0
    for p in _sieve_primes(p_n, table).tolist():
        acc *= (p - 2) / p
    return acc


def product_pminus2_over_p_log(p_n: int, table: PrimeTable) -> float:
    """Same product accumulated as a sum of logarithms (cross-check path)."""
    sp = _sieve_primes(p_n, table).astype(np.float64)
    return math.exp(math.fsum(np.log1p(-2.0 / sp).tolist()))


def telescoping_check(p_n: int, table: PrimeTable) -> tuple[float, float]:
    """The product computed directly and rebuilt from its telescoped form.

    Over *all* odd k from 5 to p_{n-1}, prod (k-2)/k collapses to 3/p_{n-1}.
    Dividing out the odd composites leaves the prime-only product.
    """
    if p_n < 11:
        raise ValueError(f"p_n must be a prime >= 11, got {p_n}")
    direct = product_pminus2_over_p(p_n, table)
    prev = int(table.primes[table.index_of(p_n) - 2])
    odds = np.arange(9, prev, 2, dtype=np.int64)
    composites = odds[~np.isin(odds, table.primes)]
    denom = 1.0
    for c in composites.tolist():
        denom *= (c - 2) / c
    return direct, (3.0 / prev) / denom


def telescoping_errors(p_max: int, table: PrimeTable) -> tuple[np.ndarray, np.ndarray]:
    """Relative difference direct vs rebuilt for every prime 11 <= p_n <= p_max.

    Returns ``(p_values, relative_errors)``.
    """
    n_hi = table.pi(p_max)
    primes = table.primes[:n_hi]
    p_values = primes[4:]  # p_5 = 11 onward
    prev = primes[3:-1]
    direct = np.cumprod((primes[2:-1] - 2) / primes[2:-1])[1:]
    odds = np.arange(1, int(prev[-1]) + 1, 2, dtype=np.int64) if prev.size else np.empty(0, np.int64)
    factor = np.where(np.isin(odds, primes) | (odds < 9), 1.0, (odds - 2) / odds)
    denom = np.cumprod(factor)[(prev - 1) // 2]
    rebuilt = (3.0 / prev) / denom
    return p_values, np.abs(rebuilt - direct) / direct


def predict_twins(p_n: int, table: PrimeTable, exact_mertens: bool = False) -> PredictionBreakdown:
    """Predicted number of twin pairs in ((p_n - 2)^2, p_n^2)."""
    product = product_pminus2_over_p(p_n, table)
    count = candidate_bounds(p_n).count
    corr = mertens_factor(exact_mertens) ** 2
    return PredictionBreakdown(p_n, product, count, corr, product * count / corr)


def predict_many(p_max: int, table: PrimeTable, exact_mertens: bool = False):
    """Vectorised predictions for every prime 7 <= p_n <= p_max.

    Returns ``(p_values, products, candidate_counts, predictions)``.
    """
    n_hi = table.pi(p_max)
    if n_hi < 4:
        e = np.empty(0)
        return e.astype(np.int64), e, e.astype(np.int64), e
    p_values = table.primes[3:n_hi]
    sp = table.primes[2 : n_hi - 1]
    products = np.cumprod((sp - 2) / sp)
    _, counts = window_geometry(p_values)
    preds = products * counts / mertens_factor(exact_mertens) ** 2
    return p_values.copy(), products, counts, preds


def mertens_product(limit: int, table: PrimeTable) -> float:
    """prod (p - 1)/p over all primes p <= limit."""
    if table.limit < limit:
        raise PreconditionError(f"table limit {table.limit} does not cover {limit}")
    acc = 1.0
    for p in table.primes[: table.pi(limit)].tolist():
        acc *= (p - 1) / p
    return acc


def mertens_estimate(limit: float, exact: bool = False) -> float:
    """2 e^-gamma / log(limit^2), the asymptotic value of :func:`mertens_product`."""
    return mertens_factor(exact) / math.log(limit * limit)


def twin_constant_partial(limit: int, table: PrimeTable) -> float:
    """prod p(p - 2)/(p - 1)^2 over odd primes 3 <= p <= limit."""
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    if table.limit < limit:
        raise PreconditionError(f"table limit {table.limit} does not cover {limit}")
    acc = 1.0
    for p in table.primes[1 : table.pi(limit)].tolist():
        acc *= p * (p - 2) / ((p - 1) * (p - 1))
    return acc
