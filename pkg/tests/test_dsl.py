import os
from fractions import Fraction as F

import pytest

from entronet import affine as af
from entronet import dsl
from entronet.jspace import EntropyScalar, PrimeVector, symbol
from entronet.sampling import random_source, seeded_rng

FIXTURES = os.path.join(os.path.dirname(dsl.__file__), "fixtures")


def parse_fixture(name):
    with open(os.path.join(FIXTURES, name), "r", encoding="utf-8") as fh:
        return dsl.parse(fh.read())


def test_single_point_object():
    sf = dsl.parse("object Z = X+(1)\n")
    r = dsl.resolve(sf)
    assert r.objects["Z"] == (af.xplus(1),)


def test_empty_object_is_unit():
    r = dsl.resolve(dsl.parse("object E =\n"))
    assert r.objects["E"] == ()


def test_affine_mult_fixture_weight():
    r = dsl.resolve(parse_fixture("affine_mult.net"))
    w = af.object_weight(r.objects["Z0"])
    a1, c1, a2, c2 = F(1, 2), F(3), F(2, 5), F(7, 2)
    assert w == af.AffWeight(a1 + c1 * a2, c1 * c2)
    assert af.object_weight(r.objects["Z1"]) == w
    assert af.validate(r.diagrams["mult"]) == r.objects["Z1"]


def test_worked_example_fixture():
    r = dsl.resolve(parse_fixture("worked_example.net"))
    d = r.diagrams["worked"]
    a1, a2, a3, a4 = F(2), F(3), F(5), F(7)
    c1, c2 = F(2), F(3)
    want = -symbol(a1, a2) + symbol(a2, c1 * a3) - symbol(c1 * a3, c1 * c2 * a4)
    assert af.j_invariant(d) == want


def test_entropy_fixture_modes():
    r = dsl.resolve(parse_fixture("entropy_fold.net"))
    fold = r.diagrams["fold"]
    assert fold.mode == af.MODE_H
    assert af.j_invariant(fold) == EntropyScalar(F(0), PrimeVector({2: F(3, 2)}))
    dotted = r.diagrams["fold_dotted"]
    assert af.j_invariant(dotted) == EntropyScalar(F(0), PrimeVector({2: F(5, 2)}))


def test_zero_denominator_position():
    with pytest.raises(dsl.ParseError) as info:
        dsl.parse("object Z = X+(1/0)\n")
    assert "zero denominator" in str(info.value)
    assert info.value.line == 1 and info.value.col == 17  # points at the denominator


def test_errors_carry_positions():
    with pytest.raises(dsl.ParseError) as info:
        dsl.parse("object Z = X+(1)\nobject W = X*(2)\n")
    assert info.value.line == 2
    with pytest.raises(dsl.ParseError):
        dsl.parse("mode Q\n")
    with pytest.raises(dsl.ParseError):
        dsl.parse("object Z = X+(1)\nobject Z = X+(2)\n")


def test_forward_reference_rejected():
    text = "diagram D : Z -> Z {}\nobject Z = X+(1)\n"
    with pytest.raises(dsl.ResolveError):
        dsl.resolve(dsl.parse(text))


def test_declared_target_checked():
    text = "object A = X+(1) X+(2)\nobject B = X+(4)\ndiagram D : A -> B { add_merge @0; }\n"
    with pytest.raises(dsl.ResolveError):
        dsl.resolve(dsl.parse(text))


def test_layer_validation_error_carries_position():
    text = "object A = X+(1)\nobject B = X+(1)\ndiagram D : A -> B {\n  add_merge @0;\n}\n"
    with pytest.raises(dsl.ResolveError) as info:
        dsl.resolve(dsl.parse(text))
    assert info.value.line == 4


def test_bad_cocycle_rejected():
    text = (
        "group G = cyclic(2)\n"
        "module U over G = z(2)\n"
        "cocycle2 c : G -> U = { (1, 0): (1); }\n"
    )
    with pytest.raises(dsl.ResolveError) as info:
        dsl.resolve(dsl.parse(text))
    assert "normalized" in str(info.value)


def test_whitespace_normalization():
    sf = dsl.parse("object Z = X+( 1/2 )\n")
    assert dsl.print_source(sf) == "object Z = X+(1/2)\n"


def test_payload_key_sorting():
    sf = dsl.parse("object E =\ndiagram D : E -> E { dot @0 {5: 1, 2: -1}; }\n")
    assert "{2: -1, 5: 1}" in dsl.print_source(sf)


def test_round_trip_fixtures():
    for name in sorted(os.listdir(FIXTURES)):
        if name.endswith(".net"):
            sf = parse_fixture(name)
            assert dsl.parse(dsl.print_source(sf)) == sf


def test_round_trip_generated():
    rng = seeded_rng(401)
    for _ in range(300):
        sf = random_source(rng)
        assert dsl.parse(dsl.print_source(sf)) == sf


def test_networks_fixture_semantics():
    r = dsl.resolve(parse_fixture("networks.net"))
    from entronet.groupnet.catalog import carry
    from entronet.groupnet.diagrams import eval_alpha_c

    assert r.cocycles2["cy"].table() == carry(4).table()
    assert eval_alpha_c(r.gdiagrams["circ"], r.cocycles2["cy"]) == (0,)
    m = r.gdiagrams["merge3"]
    assert eval_alpha_c(m, r.cocycles2["cy"]) == r.cocycles2["cy"](1, 2)


def test_mode_statement_scopes_following_diagrams():
    text = "mode H\nobject E =\ndiagram D : E -> E {}\nmode J\nobject E2 =\ndiagram D2 : E2 -> E2 {}\n"
    sf = dsl.parse(text)
    modes = [d.mode for d in sf.decls if isinstance(d, dsl.DiagramDecl)]
    assert modes == [af.MODE_H, af.MODE_J]
    assert dsl.parse(dsl.print_source(sf)) == sf


def test_diagram_to_decl_round_trip():
    from entronet.sampling import random_diagram

    rng = seeded_rng(402)
    for _ in range(40):
        d = random_diagram(rng, max_strands=7, max_layers=10)
        src_decl = dsl.object_to_decl("S", d.source)
        tgt_decl = dsl.object_to_decl("T", af.validate(d))
        decl = dsl.diagram_to_decl("D", "S", "T", d)
        text = dsl.print_source(dsl.SourceFile((src_decl, tgt_decl, decl), d.mode))
        r = dsl.resolve(dsl.parse(text))
        d2 = r.diagrams["D"]
        assert d2.source == d.source and d2.layers == d.layers and d2.mode == d.mode
