from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from entronet.scalars import (
    Factorization,
    NonzeroExpected,
    NotPrime,
    factor,
    factor_int,
    is_prime,
    parse_rational,
    prime_table,
    valuation,
)


def test_factor_examples():
    assert factor(F(12)) == Factorization(1, ((2, 2), (3, 1)))
    assert factor(F(-1, 2)) == Factorization(-1, ((2, -1),))
    assert factor(F(1)) == Factorization(1, ())


def test_valuation_examples():
    assert valuation(F(8, 3), 2) == 3
    assert valuation(F(8, 3), 3) == -1
    assert valuation(F(5), 7) == 0


def test_valuation_rejects_nonprime():
    with pytest.raises(NotPrime):
        valuation(F(3), 4)
    with pytest.raises(NotPrime):
        valuation(F(3), 1)


def test_factor_zero_rejected():
    with pytest.raises(NonzeroExpected):
        factor(F(0))


def test_prime_table_certified():
    table = prime_table()
    assert table[:5] == (2, 3, 5, 7, 11)
    assert all(is_prime(p) for p in table[:2000])


def test_large_semiprime():
    # both factors above the small-prime stripping range
    p, q = 104729, 1299709
    assert dict(factor_int(p * q)) == {p: 1, q: 1}


nonzero_rationals = st.fractions(
    min_value=F(-10**4), max_value=F(10**4), max_denominator=10**4
).filter(lambda q: q != 0)


@given(nonzero_rationals, nonzero_rationals)
def test_factor_multiplicative(q, r):
    fq, fr, fqr = factor(q), factor(r), factor(q * r)
    assert fqr.sign == fq.sign * fr.sign
    merged = dict(fq.exponents)
    for p, e in fr.exponents:
        merged[p] = merged.get(p, 0) + e
    assert dict(fqr.exponents) == {p: e for p, e in merged.items() if e}


@given(nonzero_rationals)
def test_factor_round_trip(q):
    assert factor(q).reconstruct() == q


@given(nonzero_rationals, nonzero_rationals, st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_additive(q, r, p):
    assert valuation(q * r, p) == valuation(q, p) + valuation(r, p)


def test_parse_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-7") == F(-7)
    assert parse_rational("-7/2") == F(-7, 2)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("1/-2")


def test_factor_multiplicative_bulk():
    import random
    from fractions import Fraction as F

    rng = random.Random(7)
    for _ in range(1000):
        q = F(rng.randint(-9999, 9999) or 1, rng.randint(1, 9999))
        r = F(rng.randint(-9999, 9999) or 1, rng.randint(1, 9999))
        fq, fr, fqr = factor(q), factor(r), factor(q * r)
        assert fqr.sign == fq.sign * fr.sign
        merged = dict(fq.exponents)
        for p, e in fr.exponents:
            merged[p] = merged.get(p, 0) + e
        assert dict(fqr.exponents) == {p: e for p, e in merged.items() if e}
        assert fqr.reconstruct() == q * r
