"""Seeded random generators for diagrams, objects, and scalars.

Used by the property suite and the self test.  The seed comes from the
ENTRONET_SEED environment variable when set, so runs are reproducible.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from . import affine as af
from .groupnet.cohomology import Cocycle2, coboundary2
from .groupnet.diagrams import (
    GCapLR,
    GCapRL,
    GCupLR,
    GCupRL,
    GDiagram,
    GDot,
    GFlip,
    GPt,
    T2MergeLL,
    T2MergeRR,
    T2SplitLL,
    T2SplitRR,
    VMergeL,
    VMergeR,
    VSplitL,
    VSplitR,
)
from .groupnet.groups import GModule, Group
from .jspace import EntropyScalar, PrimeVector, symbol

DEFAULT_SEED = 20240801

_AFFINE_LAYER_NAMES = (
    "add_merge",
    "add_split",
    "add_merge_dual",
    "add_split_dual",
    "add_cross",
    "xy_cross",
    "mult_merge",
    "mult_split",
    "mult_merge_dual",
    "mult_split_dual",
    "coorient_rev",
    "cup_x",
    "cap_x",
    "cup_y",
    "cap_y",
)

_GLAYER_NAMES = (
    "merge_l",
    "merge_r",
    "split_l",
    "split_r",
    "flip",
    "cup_lr",
    "cup_rl",
    "cap",
    "t2_merge_ll",
    "t2_merge_rr",
    "t2_split_ll",
    "t2_split_rr",
)


def seeded_rng(offset: int = 0) -> random.Random:
    seed = int(os.environ.get("ENTRONET_SEED", DEFAULT_SEED))
    return random.Random(seed + offset)


def random_rational(rng: random.Random, max_num: int = 30, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_num))
        if q or not nonzero:
            return q


def random_distribution(rng: random.Random, n: int, max_num: int = 12) -> list[Fraction]:
    """A positive rational probability vector of length n."""
    ws = [Fraction(rng.randint(1, max_num), rng.randint(1, max_num)) for _ in range(n)]
    total = sum(ws)
    return [w / total for w in ws]


def random_object(rng: random.Random, max_points: int = 5, max_num: int = 9) -> af.Obj:
    pts = []
    for _ in range(rng.randint(0, max_points)):
        kind = rng.choice("xXyY")
        if kind == "x":
            pts.append(af.xplus(random_rational(rng, max_num)))
        elif kind == "X":
            pts.append(af.xminus(random_rational(rng, max_num)))
        elif kind == "y":
            pts.append(af.yplus(random_rational(rng, max_num, nonzero=True)))
        else:
            pts.append(af.yminus(random_rational(rng, max_num, nonzero=True)))
    return tuple(pts)


def _applicable_generators(rng: random.Random, obj: af.Obj, max_num: int) -> list[af.Layer]:
    """All single-layer moves applicable to obj (one random parameter choice each)."""
    out: list[af.Layer] = []
    r = lambda: random_rational(rng, max_num)
    rnz = lambda: random_rational(rng, max_num, nonzero=True)
    for i, pt in enumerate(obj):
        if pt.kind is af.Kind.XP:
            a = r()
            out.append((af.AddSplit(a, pt.weight - a), i))
        if pt.kind is af.Kind.XM:
            a = r()
            out.append((af.AddSplitDual(a, pt.weight - a), i))
        if pt.kind is af.Kind.YP:
            c = rnz()
            out.append((af.MultSplit(c, pt.weight / c), i))
            out.append((af.CoorientRev(pt.weight, True), i))
        if pt.kind is af.Kind.YM:
            c = rnz()
            out.append((af.MultSplitDual(c, pt.weight / c), i))
            out.append((af.CoorientRev(pt.weight, False), i))
    for i in range(len(obj) - 1):
        p, q = obj[i], obj[i + 1]
        if p.kind is af.Kind.XP and q.kind is af.Kind.XP:
            out.append((af.AddMerge(p.weight, q.weight), i))
        if p.kind is af.Kind.XM and q.kind is af.Kind.XM:
            out.append((af.AddMergeDual(q.weight, p.weight), i))
        if p.kind.additive and q.kind.additive:
            out.append((af.AddCross(p, q), i))
        if p.kind.multiplicative and q.kind.additive:
            out.append((af.XYCross(p, q), i))
        if p.kind is af.Kind.YP and q.kind is af.Kind.YP:
            out.append((af.MultMerge(p.weight, q.weight), i))
        if p.kind is af.Kind.YM and q.kind is af.Kind.YM:
            out.append((af.MultMergeDual(p.weight, q.weight), i))
        if (p.kind, q.kind) == (af.Kind.XP, af.Kind.XM) and p.weight == q.weight:
            out.append((af.CapX(p.weight, True), i))
        if (p.kind, q.kind) == (af.Kind.XM, af.Kind.XP) and p.weight == q.weight:
            out.append((af.CapX(p.weight, False), i))
        if (p.kind, q.kind) == (af.Kind.YP, af.Kind.YM) and p.weight == q.weight:
            out.append((af.CapY(p.weight, True), i))
        if (p.kind, q.kind) == (af.Kind.YM, af.Kind.YP) and p.weight == q.weight:
            out.append((af.CapY(p.weight, False), i))
    gap = rng.randint(0, len(obj))
    out.append((af.CupX(r(), rng.random() < 0.5), gap))
    out.append((af.CupY(rnz(), rng.random() < 0.5), gap))
    return out


def random_dot_payload(rng: random.Random, mode: str):
    if mode == af.MODE_J:
        v = PrimeVector()
        for _ in range(rng.randint(0, 2)):
            v = v + symbol(random_rational(rng, 9), random_rational(rng, 9)).scaled(
                random_rational(rng, 5)
            )
        return v
    if mode == af.MODE_H:
        v = PrimeVector()
        for _ in range(rng.randint(0, 2)):
            v = v + symbol(random_rational(rng, 9), random_rational(rng, 9))
        return EntropyScalar(random_rational(rng, 9), v)
    return rng.uniform(-2.0, 2.0)


def random_diagram(
    rng: random.Random,
    mode: str = af.MODE_J,
    max_strands: int = 12,
    max_layers: int = 25,
    max_dots: int = 3,
    max_num: int = 9,
) -> af.Diagram:
    """A random valid diagram built by applying applicable moves in turn."""
    obj = random_object(rng, max_points=min(5, max_strands), max_num=max_num)
    layers: list[af.Layer] = []
    dots = 0
    n_layers = rng.randint(0, max_layers)
    cur = obj
    for _ in range(n_layers):
        if dots < max_dots and rng.random() < 0.12:
            gap = rng.randint(0, len(cur))
            layers.append((af.Dot(random_dot_payload(rng, mode)), gap))
            dots += 1
            continue
        options = [
            (gen, pos)
            for gen, pos in _applicable_generators(rng, cur, max_num)
            if len(cur) - len(gen.dom()) + len(gen.cod()) <= max_strands
        ]
        if not options:
            break
        gen, pos = rng.choice(options)
        layers.append((gen, pos))
        cur = af.apply_layer(cur, gen, pos)
    return af.Diagram(obj, tuple(layers), mode)


# ---------------------------------------------------------------------------
# Group networks.


def random_gmodule(rng: random.Random, group: Group) -> GModule:
    """A small module over the group: trivial action, or scaling for Aff1(F3)."""
    m = rng.choice([2, 3, 4, 5, 6])
    return GModule.trivial(group, (m,))


def random_normalized_cocycle(rng: random.Random, module: GModule) -> Cocycle2:
    """A random coboundary shift (optionally seeded with a solver class rep)."""
    G = module.group
    b = [module.zero()] + [
        module.reduce(tuple(rng.randrange(m) for m in module.moduli))
        for _ in range(G.order - 1)
    ]
    return coboundary2(module, b)


def _random_gpoint(rng: random.Random, group: Group) -> GPt:
    return GPt(rng.randrange(group.order), rng.random() < 0.5)


def random_closed_gdiagram(
    rng: random.Random,
    group: Group,
    grow_layers: int = 8,
    allow_dots: bool = False,
    module: GModule | None = None,
) -> GDiagram:
    """A random closed diagram: grow from the empty object, then close up."""
    G = group
    layers: list = []
    cur: tuple[GPt, ...] = ()

    def emit(gen, pos):
        nonlocal cur
        from .groupnet.diagrams import apply_glayer

        layers.append((gen, pos))
        cur = apply_glayer(G, cur, gen, pos)

    for _ in range(grow_layers):
        choices = []
        g = rng.randrange(G.order)
        gap = rng.randint(0, len(cur))
        choices.append((GCupLR(g), gap))
        choices.append((GCupRL(g), gap))
        if allow_dots and module is not None and rng.random() < 0.3:
            u = module.reduce(tuple(rng.randrange(m) for m in module.moduli))
            choices.append((GDot(u), gap))
        for i, pt in enumerate(cur):
            choices.append((GFlip(pt.g, pt.left), i))
            if pt.left:
                s = rng.randrange(G.order)
                t = G.mul(G.inv(s), pt.g)
                choices.append((VSplitL(s, t), i))
                s2 = rng.randrange(G.order)
                t2 = G.mul(G.inv(s2), G.inv(pt.g))  # t*s = g^-1
                choices.append((T2SplitRR(t2, s2), i))
            else:
                s = rng.randrange(G.order)
                t = G.mul(pt.g, G.inv(s))
                choices.append((VSplitR(s, t), i))
                s2 = rng.randrange(G.order)
                t2 = G.mul(G.inv(s2), G.inv(pt.g))  # s*t = g^-1
                choices.append((T2SplitLL(s2, t2), i))
        for i in range(len(cur) - 1):
            p, q = cur[i], cur[i + 1]
            if p.left and q.left:
                choices.append((VMergeL(p.g, q.g), i))
                choices.append((T2MergeLL(p.g, q.g), i))
            if not p.left and not q.left:
                choices.append((VMergeR(p.g, q.g), i))
                choices.append((T2MergeRR(p.g, q.g), i))
            if p.g == q.g and p.left and not q.left:
                choices.append((GCapLR(p.g), i))
            if p.g == q.g and not p.left and q.left:
                choices.append((GCapRL(p.g), i))
        emit(*rng.choice(choices))

    # close: flip everything left-co-oriented, merge down to one strand, kill it
    while len(cur) > 1:
        i = rng.randrange(len(cur) - 1)
        p, q = cur[i], cur[i + 1]
        if not p.left:
            emit(GFlip(p.g, False), i)
            continue
        if not q.left:
            emit(GFlip(q.g, False), i + 1)
            continue
        emit(VMergeL(p.g, q.g), i)
    if cur:
        pt = cur[0]
        if not pt.left:
            emit(GFlip(pt.g, False), 0)
            pt = cur[0]
        # total winding of a closed-up single strand is the identity
        emit(GCupLR(0), 1)
        emit(VMergeL(pt.g, 0), 0)
        emit(GCapLR(0), 0)
    return GDiagram(G, (), tuple(layers))


# ---------------------------------------------------------------------------
# Random syntax trees (round-trip testing).


def _random_layer_spec(rng: random.Random, mode: str):
    from . import dsl

    name = rng.choice(_AFFINE_LAYER_NAMES + ("dot",))
    args: tuple = ()
    payload = None
    if name in ("add_split", "add_split_dual"):
        args = (random_rational(rng, 9), random_rational(rng, 9))
    elif name in ("mult_split", "mult_split_dual"):
        args = (random_rational(rng, 9, nonzero=True), random_rational(rng, 9, nonzero=True))
    elif name == "cup_x":
        args = (random_rational(rng, 9), rng.choice("+-"))
    elif name == "cup_y":
        args = (random_rational(rng, 9, nonzero=True), rng.choice("+-"))
    elif name == "dot":
        payload = random_dot_payload(rng, mode)
    return dsl.LayerSpec(name, args, rng.randint(0, 9), payload)


def _random_gpoints(rng: random.Random, max_order: int):
    from . import dsl

    return tuple(
        dsl.GPointSpec(rng.randrange(max_order), rng.random() < 0.5)
        for _ in range(rng.randint(0, 4))
    )


def random_source(rng: random.Random):
    """A random well-formed syntax tree (not necessarily resolvable)."""
    from . import dsl

    decls = []
    mode = af.MODE_J
    n = rng.randint(1, 7)
    for k in range(n):
        kind = rng.choice(("object", "diagram", "group", "module", "cocycle", "gdiagram"))
        name = f"n{k}"
        if kind == "object":
            points = []
            for _ in range(rng.randint(0, 5)):
                pk = rng.choice(("X+", "X-", "Y+", "Y-"))
                w = random_rational(rng, 9, nonzero=pk.startswith("Y"))
                points.append(dsl.PointSpec(pk, w))
            decls.append(dsl.ObjectDecl(name, tuple(points)))
        elif kind == "diagram":
            mode = rng.choice(af.MODES)
            layers = tuple(_random_layer_spec(rng, mode) for _ in range(rng.randint(0, 6)))
            decls.append(dsl.DiagramDecl(name, f"s{k}", f"t{k}", layers, mode))
        elif kind == "group":
            ctor = rng.choice(("cyclic", "aff1modp", "table", "product"))
            if ctor == "cyclic":
                args: tuple = (rng.randint(1, 9),)
            elif ctor == "aff1modp":
                args = (rng.choice((2, 3, 5)),)
            elif ctor == "product":
                args = (f"a{k}", f"b{k}")
            else:
                m = rng.randint(1, 3)
                args = (tuple(tuple(rng.randint(0, 5) for _ in range(m)) for _ in range(m)),)
            decls.append(dsl.GroupDecl(name, ctor, args))
        elif kind == "module":
            moduli = tuple(rng.randint(1, 8) for _ in range(rng.randint(1, 2)))
            action = None
            if rng.random() < 0.4:
                r = len(moduli)
                action = tuple(
                    sorted(
                        (g, tuple(tuple(rng.randint(0, 5) for _ in range(r)) for _ in range(r)))
                        for g in range(rng.randint(1, 3))
                    )
                )
            decls.append(dsl.ModuleDecl(name, f"g{k}", moduli, action))
        elif kind == "cocycle":
            degree = rng.choice((1, 2))
            r = rng.randint(1, 2)
            entries = []
            for _ in range(rng.randint(0, 4)):
                u = tuple(rng.randint(0, 9) for _ in range(r))
                if degree == 2:
                    entries.append(((rng.randint(0, 5), rng.randint(0, 5)), u))
                else:
                    entries.append((rng.randint(0, 5), u))
            entries = sorted(set(entries), key=lambda e: e[0])
            dedup = []
            seen = set()
            for key, u in entries:
                if key not in seen:
                    seen.add(key)
                    dedup.append((key, u))
            decls.append(dsl.CocycleDecl(degree, name, f"g{k}", f"u{k}", tuple(dedup)))
        else:
            layers = []
            for _ in range(rng.randint(0, 5)):
                lname = rng.choice(_GLAYER_NAMES + ("dot",))
                if lname in ("split_l", "split_r", "t2_split_ll", "t2_split_rr"):
                    largs: tuple = (rng.randint(0, 7), rng.randint(0, 7))
                elif lname in ("cup_lr", "cup_rl"):
                    largs = (rng.randint(0, 7),)
                elif lname == "dot":
                    largs = tuple(rng.randint(0, 7) for _ in range(rng.randint(1, 2)))
                else:
                    largs = ()
                layers.append(dsl.LayerSpec(lname, largs, rng.randint(0, 9), None))
            decls.append(
                dsl.GDiagramDecl(
                    name, f"g{k}", _random_gpoints(rng, 8), _random_gpoints(rng, 8), tuple(layers)
                )
            )
    return dsl.SourceFile(tuple(decls), mode)


# ---------------------------------------------------------------------------
# Constructive rewrite sites: a diagram containing a given rule's pattern,
# placed in a random context (so windings vary), with the site at layer 0.


def random_rule_site(rng: random.Random, rule_name: str, max_num: int = 7):
    r = lambda: random_rational(rng, max_num)
    rnz = lambda: random_rational(rng, max_num, nonzero=True)
    left = random_object(rng, max_points=3, max_num=max_num)
    right = random_object(rng, max_points=2, max_num=max_num)
    p = len(left)

    def build(domain_points, layers):
        src = left + tuple(domain_points) + right
        return af.Diagram(src, tuple(layers), af.MODE_J), 0

    if rule_name == "merge_assoc":
        a, b, c = r(), r(), r()
        return build(
            (af.xplus(a), af.xplus(b), af.xplus(c)),
            [(af.AddMerge(a, b), p), (af.AddMerge(a + b, c), p)],
        )
    if rule_name == "split_assoc":
        a, b, c = r(), r(), r()
        return build(
            (af.xplus(a + b + c),),
            [(af.AddSplit(a, b + c), p), (af.AddSplit(b, c), p + 1)],
        )
    if rule_name == "cancel_merge_split":
        a, b = r(), r()
        return build(
            (af.xplus(a), af.xplus(b)),
            [(af.AddMerge(a, b), p), (af.AddSplit(a, b), p)],
        )
    if rule_name == "cancel_split_merge":
        a, b = r(), r()
        return build(
            (af.xplus(a + b),),
            [(af.AddSplit(a, b), p), (af.AddMerge(a, b), p)],
        )
    if rule_name == "cross_as_merge_split":
        a, b = r(), r()
        pts = (af.xplus(a), af.xplus(b))
        return build(pts, [(af.AddCross(*pts), p)])
    if rule_name == "cross_pull_apart":
        pts = tuple(
            af.xplus(r()) if rng.random() < 0.5 else af.xminus(r()) for _ in range(2)
        )
        return build(
            pts,
            [(af.AddCross(pts[0], pts[1]), p), (af.AddCross(pts[1], pts[0]), p)],
        )
    if rule_name == "curl_remove":
        a = r()
        return build(
            (af.xplus(a),),
            [
                (af.CupX(a, True), p + 1),
                (af.AddCross(af.xplus(a), af.xplus(a)), p),
                (af.CapX(a, True), p + 1),
            ],
        )
    if rule_name == "additive_skein":
        a1, a2 = r(), r()
        while True:
            b = r()
            if b != a1:
                break
        return build(
            (af.xplus(a1), af.xplus(a2)),
            [(af.AddMerge(a1, a2), p), (af.AddSplit(b, a1 + a2 - b), p)],
        )
    if rule_name == "zero_circle":
        po = rng.random() < 0.5
        zero = Fraction(0)
        return build((), [(af.CupX(zero, po), p), (af.CapX(zero, po), p)])
    if rule_name == "mult_assoc":
        c1, c2, c3 = rnz(), rnz(), rnz()
        return build(
            (af.yplus(c1), af.yplus(c2), af.yplus(c3)),
            [(af.MultMerge(c1, c2), p), (af.MultMerge(c1 * c2, c3), p)],
        )
    if rule_name == "mult_cancel":
        c1, c2 = rnz(), rnz()
        return build(
            (af.yplus(c1), af.yplus(c2)),
            [(af.MultMerge(c1, c2), p), (af.MultSplit(c1, c2), p)],
        )
    if rule_name == "unit_circle":
        po = rng.random() < 0.5
        one = Fraction(1)
        return build((), [(af.CupY(one, po), p), (af.CapY(one, po), p)])
    if rule_name == "mult_through_merge":
        c = rnz()
        y = af.yplus(c) if rng.random() < 0.5 else af.yminus(c)
        s = c if y.kind is af.Kind.YP else 1 / c
        a, b = r(), r()
        return build(
            (y, af.xplus(a), af.xplus(b)),
            [
                (af.XYCross(y, af.xplus(a)), p),
                (af.XYCross(y, af.xplus(b)), p + 1),
                (af.AddMerge(s * a, s * b), p),
            ],
        )
    if rule_name == "cross_past_coorient_rev":
        c = rnz()
        from_plus = rng.random() < 0.5
        y = af.yplus(c) if from_plus else af.yminus(c)
        x = af.xplus(r()) if rng.random() < 0.5 else af.xminus(r())
        return build(
            (y, x),
            [(af.XYCross(y, x), p), (af.CoorientRev(c, from_plus), p + 1)],
        )
    if rule_name == "exchange_disjoint":
        a, b, c = r(), r(), rnz()
        mid = random_object(rng, max_points=2, max_num=max_num)
        src_pts = (af.xplus(a), af.xplus(b)) + mid + (af.yplus(c),)
        layers = [
            (af.AddMerge(a, b), p),
            (af.CoorientRev(c, True), p + 1 + len(mid)),
        ]
        return build(src_pts, layers)
    raise ValueError(f"unknown rule {rule_name!r}")
