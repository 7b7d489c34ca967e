from fractions import Fraction as F
from math import comb

import pytest

from entronet.groupnet.catalog import (
    ProbSpace,
    binomial_cocycle,
    carry,
    fontene_ward,
    pmi_cocycle,
    witt,
)
from entronet.groupnet.cohomology import central_extension, is_coboundary2, verify_cocycle2


def test_carry_values():
    c = carry(2)
    assert c(1, 1) == (1,)
    assert c(0, 1) == (0,) and c(1, 0) == (0,)
    c10 = carry(10)
    assert c10(7, 5) == (1,)
    assert c10(3, 4) == (0,)


def test_carry_is_cocycle_all_bases():
    for n in range(2, 13):
        assert verify_cocycle2(carry(n))


def test_carry_extension_is_cyclic_squared():
    for n in (2, 3, 5, 8):
        T = central_extension(carry(n))
        assert T.order == n * n
        assert max(T.element_orders) == n * n


def test_carry_rejects_base_one():
    with pytest.raises(ValueError):
        carry(1)


def test_witt_values():
    w3 = witt(3)
    assert w3(1, 1) == (2,)  # (3 choose 1 + 3 choose 2) / 3 = 2
    w2 = witt(2)
    assert w2(1, 1) == (1,)
    assert w2.table() == carry(2).table()


def test_witt_cocycle_and_nontriviality():
    for p in (2, 3, 5, 7):
        assert verify_cocycle2(witt(p))
    for p in (2, 3):
        assert not is_coboundary2(witt(p))


def test_witt_rejects_composite():
    with pytest.raises(ValueError):
        witt(6)


def test_binomial_values_and_identity():
    c = binomial_cocycle(8)
    assert c(2, 3) == F(comb(5, 2)) == 10
    assert c(5, 1) == 6
    assert c(2, 3) * c(5, 1) == c(3, 1) * c(2, 4) == 60
    assert c.verify()


def test_binomial_is_factorial_coboundary():
    from math import factorial

    c = binomial_cocycle(10)
    for a in range(6):
        for b in range(6):
            assert c(a, b) == F(factorial(a + b), factorial(a) * factorial(b))


def test_fontene_ward_recovers_binomials():
    c = fontene_ward(lambda k: F(k), 6)
    b = binomial_cocycle(6)
    for x in range(4):
        for y in range(4):
            assert c(x, y) == b(x, y)
    assert c.verify()


def test_fontene_ward_general():
    # a q-style deformation with q = 2: g(k) = 2**k - 1
    c = fontene_ward(lambda k: F(2**k - 1), 5)
    assert c.verify()
    with pytest.raises(ValueError):
        fontene_ward(lambda k: F(0), 3)


def test_pmi_cocycle():
    space = ProbSpace({"a": F(1, 2), "b": F(1, 4), "c": F(1, 4)})
    c = pmi_cocycle(space)
    assert c.verify()
    a = frozenset({"a"})
    ab = frozenset({"a", "b"})
    import math

    got = c(ab, a)
    want = math.log(1 / 2) - math.log(3 / 4) - math.log(1 / 2)
    assert abs(got - want) < 1e-12


def test_pmi_rejects_zero_mass_pairs():
    space = ProbSpace({"a": F(1, 2), "b": F(1, 2)})
    c = pmi_cocycle(space)
    with pytest.raises(ValueError):
        c(frozenset({"a"}), frozenset({"b"}))


def test_prob_space_validation():
    with pytest.raises(ValueError):
        ProbSpace({"a": F(1, 2)})
    with pytest.raises(ValueError):
        ProbSpace({"a": F(3, 2), "b": F(-1, 2)})
