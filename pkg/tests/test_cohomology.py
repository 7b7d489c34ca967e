import math

import pytest

from entronet.groupnet.cohomology import (
    Cocycle1,
    Cocycle2,
    SizeBoundExceeded,
    central_extension,
    coboundary1,
    coboundary2,
    h_exhaustive,
    h_solver,
    integer_kernel,
    is_coboundary2,
    is_normalized,
    shift_by_coboundary,
    smith_normal_form,
    verify_cocycle1,
    verify_cocycle2,
)
from entronet.groupnet.catalog import carry
from entronet.groupnet.groups import GModule, Group, GroupValidationError
from entronet.sampling import random_normalized_cocycle, seeded_rng


# -- groups and modules ---------------------------------------------------------


def test_group_constructors():
    assert Group.cyclic(6).order == 6
    assert Group.cyclic(6).is_abelian()
    v4 = Group.direct_product(Group.cyclic(2), Group.cyclic(2))
    assert v4.order == 4 and sorted(v4.element_orders) == [1, 2, 2, 2]
    aff = Group.aff1_mod_p(3)
    assert aff.order == 6 and not aff.is_abelian()
    assert sorted(aff.element_orders) == sorted([1, 3, 3, 2, 2, 2])


def test_group_validation():
    with pytest.raises(GroupValidationError):
        Group([[0, 1], [0, 1]])
    with pytest.raises(GroupValidationError):
        Group([[1, 0], [0, 1]])
    # a magma with an identity that is not associative
    with pytest.raises(GroupValidationError):
        Group(
            [
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 4, 0, 1, 3],
                [3, 2, 4, 0, 1],
                [4, 3, 1, 2, 0],
            ]
        )


def test_module_action_validation():
    G = Group.cyclic(2)
    with pytest.raises(GroupValidationError):
        GModule(G, (4,), {0: [[1]], 1: [[2]]})  # 2 is not invertible mod 4
    ok = GModule(G, (4,), {0: [[1]], 1: [[3]]})
    assert ok.act(1, (1,)) == (3,)
    with pytest.raises(GroupValidationError):
        GModule(G, (3,), {0: [[1]], 1: [[1]], 2: [[1]]})


# -- cochains ---------------------------------------------------------------------


def test_zero_cochains_verify():
    G = Group.cyclic(4)
    U = GModule.trivial(G, (3,))
    z1 = Cocycle1(U, tuple(U.zero() for _ in G.elements()))
    z2 = Cocycle2(U, tuple(tuple(U.zero() for _ in G.elements()) for _ in G.elements()))
    assert verify_cocycle1(z1) and verify_cocycle2(z2) and is_normalized(z2)


def test_coboundary1_examples():
    G = Group.cyclic(3)
    U = GModule(G, (3,), {0: [[1]], 1: [[1]], 2: [[1]]})
    assert coboundary1(U, (0,)).values == ((0,), (0,), (0,))
    # nontrivial action: the sign involution on z5 under a two-element group
    G2 = Group.cyclic(2)
    U2 = GModule(G2, (5,), {0: [[1]], 1: [[4]]})
    f = coboundary1(U2, (1,))
    assert verify_cocycle1(f)
    assert f(1) == (3,)  # 4*1 - 1


def test_coboundary2_trivial_action_formula():
    G = Group.cyclic(4)
    U = GModule.trivial(G, (5,))
    rng = seeded_rng(301)
    b = [U.zero()] + [(rng.randrange(5),) for _ in range(3)]
    c = coboundary2(U, b)
    assert verify_cocycle2(c) and is_normalized(c)
    for s in G.elements():
        for t in G.elements():
            want = (b[s][0] + b[t][0] - b[G.mul(s, t)][0]) % 5
            assert c(s, t) == (want,)


def test_coboundary2_rejects_unnormalized():
    G = Group.cyclic(2)
    U = GModule.trivial(G, (2,))
    with pytest.raises(ValueError):
        coboundary2(U, [(1,), (0,)])


def test_random_coboundaries_are_cocycles():
    rng = seeded_rng(302)
    for G in (Group.cyclic(5), Group.aff1_mod_p(3)):
        for _ in range(20):
            U = GModule.trivial(G, (rng.choice([2, 3, 4]),))
            c = random_normalized_cocycle(rng, U)
            assert verify_cocycle2(c) and is_normalized(c)


def test_co_symm_relation():
    rng = seeded_rng(303)
    for G in (Group.cyclic(6), Group.aff1_mod_p(3)):
        U = GModule.trivial(G, (4,))
        for _ in range(10):
            c = random_normalized_cocycle(rng, U)
            for s in G.elements():
                assert c(s, G.inv(s)) == U.act(s, c(G.inv(s), s))


# -- central extensions --------------------------------------------------------


def test_extension_of_zero_cocycle_is_product():
    G = Group.cyclic(3)
    U = GModule.trivial(G, (2,))
    zero = Cocycle2(U, tuple(tuple(U.zero() for _ in G.elements()) for _ in G.elements()))
    T = central_extension(zero)
    assert T.order == 6
    assert sorted(T.element_orders) == sorted(
        Group.direct_product(Group.cyclic(2), Group.cyclic(3)).element_orders
    )


def test_carry_extension_digits():
    T = central_extension(carry(10))
    n = 10
    # the pair (value 7) times (value 5) carries into (1, 2)
    assert divmod(T.mul(7, 5), n) == (1, 2)
    assert max(T.element_orders) == 100


def test_shift_preserves_extension_profile():
    rng = seeded_rng(304)
    for n in (3, 4, 6):
        c = carry(n)
        U = c.module
        for _ in range(5):
            b = [U.zero()] + [(rng.randrange(n),) for _ in range(n - 1)]
            c2 = shift_by_coboundary(c, b)
            assert verify_cocycle2(c2)
            t1, t2 = central_extension(c), central_extension(c2)
            assert t1.order_profile() == t2.order_profile()


# -- smith normal form ------------------------------------------------------------


def test_snf_transforms():
    import random

    rng = random.Random(305)
    for _ in range(30):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        D, S, T, Sinv, Tinv = smith_normal_form(A)
        # S*A*T == D
        SA = [[sum(S[i][k] * A[k][j] for k in range(m)) for j in range(n)] for i in range(m)]
        SAT = [[sum(SA[i][k] * T[k][j] for k in range(n)) for j in range(n)] for i in range(m)]
        assert SAT == D
        # inverses really invert
        eye_m = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        eye_n = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        SS = [[sum(S[i][k] * Sinv[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
        TT = [[sum(T[i][k] * Tinv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert SS == eye_m and TT == eye_n
        # diagonal with divisibility
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert D[i][j] == 0
        diag = [D[i][i] for i in range(min(m, n)) if D[i][i]]
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0


def test_integer_kernel():
    A = [[2, 4, 6], [1, 2, 3]]
    basis = integer_kernel(A)
    assert len(basis) == 2
    for col in basis:
        assert all(sum(r[k] * col[k] for k in range(3)) == 0 for r in A)


# -- the solver --------------------------------------------------------------------


def test_h2_of_klein_group():
    G = Group.direct_product(Group.cyclic(2), Group.cyclic(2))
    U = GModule.trivial(G, (2,))
    factors, reps = h_solver(G, U, 2)
    assert factors == [2, 2, 2]
    for rep in reps:
        assert verify_cocycle2(rep) and is_normalized(rep)
        assert not is_coboundary2(rep)


def test_h2_matches_exhaustive_small():
    cases = [
        (Group.cyclic(2), (2,)),
        (Group.cyclic(2), (3,)),
        (Group.cyclic(3), (3,)),
    ]
    for G, moduli in cases:
        U = GModule.trivial(G, moduli)
        factors, _ = h_solver(G, U, 2)
        order = math.prod(factors) if factors else 1
        ex_order, _ = h_exhaustive(G, U)
        assert order == ex_order


def test_h2_carry_class_is_the_generator():
    G = Group.cyclic(2)
    U = GModule.trivial(G, (2,))
    factors, reps = h_solver(G, U, 2)
    assert factors == [2]
    # same class as carry(2): the difference is a coboundary
    diff_table = tuple(
        tuple(U.sub(reps[0](g, h), carry(2)(g, h)) for h in G.elements()) for g in G.elements()
    )
    assert is_coboundary2(Cocycle2(U, diff_table))


def test_h1_trivial_when_coprime():
    for n, m in ((2, 3), (3, 4), (4, 9)):
        G = Group.cyclic(n)
        U = GModule.trivial(G, (m,))
        factors, _ = h_solver(G, U, 1)
        assert factors == []


def test_h1_cyclic_trivial_action():
    # Hom(Z/n, Z/m) has order gcd(n, m); trivial action kills coboundaries
    for n, m in ((2, 2), (4, 6), (6, 4)):
        G = Group.cyclic(n)
        U = GModule.trivial(G, (m,))
        factors, reps = h_solver(G, U, 1)
        order = math.prod(factors) if factors else 1
        assert order == math.gcd(n, m)
        for rep in reps:
            assert verify_cocycle1(rep)


def test_h2_with_nontrivial_action():
    # scaling action of a two-element group by -1 on z5: H^2 vanishes
    G = Group.cyclic(2)
    U = GModule(G, (5,), {0: [[1]], 1: [[4]]})
    factors, _ = h_solver(G, U, 2)
    assert factors == []


def test_h2_multi_component_module():
    G = Group.cyclic(2)
    U = GModule.trivial(G, (2, 2))
    factors, _ = h_solver(G, U, 2)
    assert factors == [2, 2]


def test_size_bound():
    G = Group.cyclic(65)
    U = GModule.trivial(G, (2,))
    with pytest.raises(SizeBoundExceeded):
        h_solver(G, U, 2)
    with pytest.raises(SizeBoundExceeded):
        h_exhaustive(Group.cyclic(6), GModule.trivial(Group.cyclic(6), (6,)))
