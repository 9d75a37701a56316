import math
from fractions import Fraction

import numpy as np
import pytest

from primepairs.prediction import (MERTENS_FACTOR, MERTENS_FACTOR_EXACT, mertens_estimate,
                                   mertens_product, predict_many, predict_twins,
                                   product_pminus2_over_p, product_pminus2_over_p_log,
                                   telescoping_check, telescoping_errors, twin_constant_partial)
from primepairs.primes import PreconditionError, sieve_upto

from oracles import primes_upto, product_fraction


def test_mertens_constant():
    assert MERTENS_FACTOR == 1.12292
    assert MERTENS_FACTOR_EXACT == pytest.approx(1.1229189671, abs=1e-10)


@pytest.mark.parametrize("p, expected", [
    (7, Fraction(3, 5)),
    (11, Fraction(3, 7)),
    (13, Fraction(3, 5) * Fraction(5, 7) * Fraction(9, 11)),
])
def test_product_small(table_1e4, p, expected):
    assert product_pminus2_over_p(p, table_1e4) == pytest.approx(float(expected), rel=1e-15)


def test_product_against_fractions(table_1e4):
    ps = primes_upto(600)
    for i, p in enumerate(ps[3:], start=3):
        exact = product_fraction(ps[2:i], lambda q: Fraction(q - 2, q))
        assert product_pminus2_over_p(p, table_1e4) == pytest.approx(float(exact), rel=1e-13)


def test_factor_count(table_1e4):
    for p in table_1e4.between(7, 5000).tolist():
        n = table_1e4.index_of(p)
        assert len([q for q in table_1e4.primes.tolist() if 5 <= q < p]) == n - 3


def test_log_path_agrees(table_1e6):
    p = int(table_1e6.primes[-1])
    assert product_pminus2_over_p_log(p, table_1e6) == pytest.approx(
        product_pminus2_over_p(p, table_1e6), rel=1e-9)


def test_telescoping_examples(table_1e4, table_1e6):
    d, r = telescoping_check(13, table_1e4)
    assert d == pytest.approx(27 / 77, rel=1e-15) and r == pytest.approx(3 / 11 * 9 / 7, rel=1e-15)
    d, r = telescoping_check(11, table_1e4)
    assert d == pytest.approx(3 / 7) and r == pytest.approx(3 / 7)
    d, r = telescoping_check(10007, table_1e6)
    assert abs(d - r) / d <= 1e-12
    with pytest.raises(ValueError):
        telescoping_check(7, table_1e4)


def test_telescoping_table_matches_scalar(table_1e4):
    pv, err = telescoping_errors(3000, table_1e4)
    for p, e in zip(pv.tolist()[::37], err.tolist()[::37]):
        d, r = telescoping_check(p, table_1e4)
        assert abs(d - r) / d == pytest.approx(e, abs=1e-14)


def test_predict_small(table_1e4):
    b = predict_twins(7, table_1e4)
    assert b.prediction == pytest.approx(0.6 * 3 / 1.12292**2)
    assert b.prediction == pytest.approx(1.4275, abs=1e-4)
    assert b.n_of_candidates == 3 and b.correction == 1.12292**2
    assert predict_twins(7, table_1e4, exact_mertens=True).prediction > b.prediction


def test_predict_many_matches_scalar(table_1e4):
    pv, prods, counts, preds = predict_many(5000, table_1e4)
    for i in range(0, pv.size, 53):
        b = predict_twins(int(pv[i]), table_1e4)
        assert preds[i] == pytest.approx(b.prediction, rel=1e-12)
        assert counts[i] == b.n_of_candidates
    assert (preds > 0).all()
    assert ((prods > 0) & (prods < 1)).all()


def test_mertens_product(table_1e4):
    assert mertens_product(3, table_1e4) == pytest.approx(1 / 3)
    assert mertens_product(2, table_1e4) == 0.5
    ratio = mertens_product(10**4, table_1e4) / mertens_estimate(10**4)
    assert abs(ratio - 1) < 0.02
    assert mertens_estimate(10**4) == pytest.approx(1.12292 / math.log(1e8))
    vals = [mertens_product(x, table_1e4) for x in (10, 100, 1000, 10**4)]
    assert vals == sorted(vals, reverse=True)


def test_twin_constant_small(table_1e4):
    assert twin_constant_partial(3, table_1e4) == 0.75
    exact = product_fraction(primes_upto(97)[1:], lambda p: Fraction(p * (p - 2), (p - 1) ** 2))
    assert twin_constant_partial(97, table_1e4) == pytest.approx(float(exact), rel=1e-14)
    assert twin_constant_partial(97, table_1e4) == pytest.approx(0.6613, abs=2e-4)


def test_twin_constant_limit(table_1e6):
    v = twin_constant_partial(10**6, table_1e6)
    assert v == pytest.approx(0.66016, abs=1e-4)
    checkpoints = [twin_constant_partial(x, table_1e6) for x in (3, 5, 97, 10**3, 10**4, 10**5, 10**6)]
    assert all(a > b for a, b in zip(checkpoints, checkpoints[1:]))
    assert checkpoints[-1] > 0.66016 - 1e-4


def test_preconditions():
    t = sieve_upto(100)
    with pytest.raises(PreconditionError):
        product_pminus2_over_p(101, t)
    with pytest.raises(ValueError):
        twin_constant_partial(2, t)
