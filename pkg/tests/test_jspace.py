import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from entronet.jspace import (
    BetaSymbol,
    EntropyScalar,
    PrimeVector,
    beta_to_j,
    bracket_H_float,
    bracket_tsallis,
    bracket_tsallis_float,
    entropy_render,
    j_to_beta,
    render_float,
    scale,
    symbol,
    tensor_vector,
    tsallis_entropy,
)

rationals = st.fractions(min_value=F(-60), max_value=F(60), max_denominator=30)
nonzero = rationals.filter(lambda q: q != 0)


# -- the symbol map ----------------------------------------------------------


def test_symbol_examples():
    assert symbol(F(7), F(0)).is_zero()
    assert symbol(F(0), F(7)).is_zero()
    assert symbol(F(1, 2), F(1, 2)) == PrimeVector({2: F(-1)})
    assert symbol(F(2), F(3)) == PrimeVector({2: F(2), 3: F(3), 5: F(-5)})


def test_symbol_against_tensor_oracle():
    # <a,b> must match a(x)a + b(x)b - (a+b)(x)(a+b) computed independently
    import random

    rng = random.Random(0)
    for _ in range(100):
        a = F(rng.randint(-30, 30), rng.randint(1, 20))
        b = F(rng.randint(-30, 30), rng.randint(1, 20))
        expected = PrimeVector()
        for x in (a, b):
            if x:
                expected = expected + tensor_vector(x, x)
        if a + b:
            expected = expected - tensor_vector(a + b, a + b)
        assert symbol(a, b) == expected


def test_tensor_identification():
    """The prime-vector model of the tensor product, on random tensors."""
    import random

    rng = random.Random(1)
    for _ in range(100):
        a = F(rng.randint(-20, 20), rng.randint(1, 12))
        b = F(rng.randint(-20, 20), rng.randint(1, 12))
        q = F(rng.randint(1, 40), rng.randint(1, 40))
        r = F(rng.randint(1, 40), rng.randint(1, 40))
        lam = F(rng.randint(-6, 6), rng.randint(1, 6))
        # biadditivity in the multiplicative slot, additivity in the first
        assert tensor_vector(a, q * r) == tensor_vector(a, q) + tensor_vector(a, r)
        assert tensor_vector(a + b, q) == tensor_vector(a, q) + tensor_vector(b, q)
        assert tensor_vector(lam * a, q) == tensor_vector(a, q).scaled(lam)
        # the sign dies: 2-torsion is killed by tensoring with the rationals
        assert tensor_vector(a, -q) == tensor_vector(a, q)
    assert tensor_vector(F(1), F(-1)).is_zero()


@given(rationals, rationals)
def test_symbol_symmetry(a, b):
    assert symbol(a, b) == symbol(b, a)


@given(rationals, rationals, rationals)
def test_symbol_cocycle(a, b, c):
    assert symbol(a, b) + symbol(a + b, c) == symbol(b, c) + symbol(a, b + c)


@given(nonzero, rationals, rationals)
def test_symbol_scaling(c, a, b):
    assert scale(c, symbol(a, b)) == symbol(c * a, c * b)


@given(rationals)
def test_symbol_antipode(a):
    assert symbol(a, -a).is_zero()
    assert scale(F(-1), symbol(a, 1 - a)) == symbol(-a, a - 1)


def test_scale_examples():
    assert scale(F(3), PrimeVector()).is_zero()
    assert scale(F(2), symbol(F(1, 2), F(1, 2))) == symbol(F(1), F(1))
    assert symbol(F(1), F(1)) == PrimeVector({2: F(-2)})


# -- beta symbols ------------------------------------------------------------


def test_beta_examples():
    assert beta_to_j(BetaSymbol.of((1, 1))).is_zero()
    assert beta_to_j(BetaSymbol.of((1, F(1, 2)))) == PrimeVector({2: F(-1)})
    assert beta_to_j(BetaSymbol.of((1, 2))) == symbol(F(2), F(-1))


def test_beta_rejects_zero_generator():
    with pytest.raises(ValueError):
        BetaSymbol.of((1, 0))


def test_j_to_beta_examples():
    assert j_to_beta(F(3), F(-3)).terms == ()
    assert j_to_beta(F(1), F(1)).terms == ((F(2), F(1, 2)),)
    assert j_to_beta(F(2), F(3)).terms == ((F(5), F(2, 5)),)
    assert j_to_beta(F(0), F(5)).terms == ()


@given(rationals, rationals)
def test_beta_round_trip(a, b):
    assert beta_to_j(j_to_beta(a, b)) == symbol(a, b)


@given(rationals.filter(lambda a: a not in (0, 1)), rationals.filter(lambda b: b not in (0, 1)))
def test_beta_four_term(a, b):
    total = (
        beta_to_j(BetaSymbol.of((1, a)))
        - beta_to_j(BetaSymbol.of((1, b)))
        + scale(a, beta_to_j(BetaSymbol.of((1, b / a))))
        + scale(1 - a, beta_to_j(BetaSymbol.of((1, (1 - b) / (1 - a)))))
    )
    assert total.is_zero()


# -- entropy scalars ---------------------------------------------------------


def test_entropy_render_examples():
    assert entropy_render(symbol(F(1, 2), F(1, 2))) == EntropyScalar(
        F(0), PrimeVector({2: F(1)})
    )
    assert entropy_render(symbol(F(3), F(0))).is_zero()
    third = entropy_render(symbol(F(1, 3), F(2, 3)))
    assert third == EntropyScalar(F(0), PrimeVector({2: F(-2, 3), 3: F(1)}))
    want = -(1 / 3) * math.log(1 / 3) - (2 / 3) * math.log(2 / 3)
    assert abs(render_float(third) - want) < 1e-12


def test_bracket_float_examples():
    assert abs(bracket_H_float(0.5, 0.5) - math.log(2)) < 1e-15
    assert bracket_H_float(3.25, 0.0) == 0.0
    assert bracket_H_float(2.5, -2.5) == 0.0
    exact = render_float(entropy_render(symbol(F(2), F(3))))
    assert abs(bracket_H_float(2.0, 3.0) - exact) < 1e-12


@given(rationals, rationals)
def test_bracket_float_matches_exact(a, b):
    exact = render_float(entropy_render(symbol(a, b)))
    assert abs(bracket_H_float(float(a), float(b)) - exact) < 1e-12


def test_entropy_symmetry_and_inversion():
    import random

    rng = random.Random(3)
    H = lambda p: entropy_render(symbol(p, 1 - p))
    for _ in range(200):
        p = F(rng.randint(-40, 40), rng.randint(1, 25))
        assert H(1 - p) == H(p)
        if p != 0:
            assert H(1 / p).scaled(p) == -H(p)


# -- deformed brackets -------------------------------------------------------


def test_tsallis_examples():
    assert bracket_tsallis(F(5), F(0), 3) == 0
    assert bracket_tsallis(F(1, 2), F(1, 2), 2) == F(-1, 2)
    assert tsallis_entropy(F(1, 2), 2) == F(1, 2)


@given(rationals, st.sampled_from([2, 3, 4, 5]))
def test_tsallis_identity(p, alpha):
    assert bracket_tsallis(p, 1 - p, alpha) == -(alpha - 1) * tsallis_entropy(p, alpha)


def test_tsallis_argument_validation():
    with pytest.raises(ValueError):
        bracket_tsallis(F(1), F(1), 1)
    with pytest.raises(ValueError):
        bracket_tsallis_float(1.0, 1.0, 1)


def test_tsallis_float_agrees():
    import random

    rng = random.Random(4)
    for _ in range(100):
        p = F(rng.randint(-20, 20), rng.randint(1, 12))
        got = bracket_tsallis_float(float(p), float(1 - p), 2.0)
        assert abs(got - float(bracket_tsallis(p, 1 - p, 2))) < 1e-10


# -- textual forms ----------------------------------------------------------


def test_prime_vector_text():
    assert PrimeVector({3: F(2, 5), 2: F(-1)}).to_text() == "{2: -1, 3: 2/5}"
    assert PrimeVector().to_text() == "{}"


def test_entropy_scalar_pretty():
    assert EntropyScalar(F(0), PrimeVector({2: F(1)})).pretty() == "log(2)"
    assert EntropyScalar(F(0), PrimeVector()).pretty() == "0"
    text = EntropyScalar(F(1, 2), PrimeVector({2: F(-2, 3)})).pretty()
    assert text == "1/2 - (2/3)*log(2)"
