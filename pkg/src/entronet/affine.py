"""Sliced two-type diagrams for the affine group of the rational line.

A diagram is an ordered list of layers applied bottom-to-top to a boundary
object.  Objects are tensor words in four kinds of points: additive points
X+(a) / X-(a) (upward / downward oriented lines carrying a rational weight)
and multiplicative points Y+(c) / Y-(c) (left / right co-oriented lines
carrying a nonzero rational weight).  Each generator knows its exact domain
and codomain, so validation is a fold over layers.

The evaluation of a diagram collects a signed, winding-scaled symbol from
every additive merge and split, plus winding-scaled dot labels.  It depends
only on the boundary for dotless diagrams; equality of morphisms is decided
by (boundary, evaluation).

Modes: "J" evaluates into the symbol space (prime vectors), "H" into exact
entropy scalars, "Hfloat" into doubles.  Boundary weights stay rational in
every mode; only evaluation arithmetic and dot payloads change.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .jspace import (
    EntropyScalar,
    PrimeVector,
    bracket_H_float,
    entropy_render,
    symbol,
)

Rational = Fraction

MODE_J = "J"
MODE_H = "H"
MODE_HFLOAT = "Hfloat"
MODES = (MODE_J, MODE_H, MODE_HFLOAT)

FLOAT_TOL = 1e-10


class DiagramError(Exception):
    """Base class for diagram validation failures."""

    def __init__(self, message: str, layer: int | None = None):
        self.layer = layer
        if layer is not None:
            message = f"layer {layer}: {message}"
        super().__init__(message)


class KindMismatch(DiagramError):
    pass


class WeightMismatch(DiagramError):
    pass


class PositionOutOfRange(DiagramError):
    pass


class ZeroMultiplicativeWeight(DiagramError):
    pass


class BoundaryMismatch(DiagramError):
    pass


class Kind(enum.Enum):
    XP = "X+"
    XM = "X-"
    YP = "Y+"
    YM = "Y-"

    @property
    def additive(self) -> bool:
        return self in (Kind.XP, Kind.XM)

    @property
    def multiplicative(self) -> bool:
        return not self.additive


@dataclass(frozen=True)
class Pt:
    """A boundary point: kind plus rational weight (nonzero for Y kinds)."""

    kind: Kind
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.kind.multiplicative and self.weight == 0:
            raise ZeroMultiplicativeWeight("multiplicative weight must be nonzero")

    def __repr__(self) -> str:
        return f"{self.kind.value}({self.weight})"


def xplus(a) -> Pt:
    return Pt(Kind.XP, Fraction(a))


def xminus(a) -> Pt:
    return Pt(Kind.XM, Fraction(a))


def yplus(c) -> Pt:
    return Pt(Kind.YP, Fraction(c))


def yminus(c) -> Pt:
    return Pt(Kind.YM, Fraction(c))


Obj = tuple[Pt, ...]


@dataclass(frozen=True)
class AffWeight:
    """Element (a, c) of the affine group: x |-> c*x + a."""

    a: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c == 0:
            raise ZeroMultiplicativeWeight("multiplicative part must be nonzero")

    def __mul__(self, other: "AffWeight") -> "AffWeight":
        return AffWeight(self.a + self.c * other.a, self.c * other.c)

    @classmethod
    def identity(cls) -> "AffWeight":
        return cls(Fraction(0), Fraction(1))

    def inverse(self) -> "AffWeight":
        return AffWeight(-self.a / self.c, 1 / self.c)


# ---------------------------------------------------------------------------
# Generators.  Each stores the weights it needs; domain and codomain are a
# total function of the generator.


@dataclass(frozen=True)
class AddMerge:
    a: Fraction
    b: Fraction

    def dom(self) -> Obj:
        return (xplus(self.a), xplus(self.b))

    def cod(self) -> Obj:
        return (xplus(self.a + self.b),)


@dataclass(frozen=True)
class AddSplit:
    a: Fraction
    b: Fraction

    def dom(self) -> Obj:
        return (xplus(self.a + self.b),)

    def cod(self) -> Obj:
        return (xplus(self.a), xplus(self.b))


@dataclass(frozen=True)
class AddMergeDual:
    """Merge of downward lines: [X-(b), X-(a)] -> [X-(a+b)]."""

    a: Fraction
    b: Fraction

    def dom(self) -> Obj:
        return (xminus(self.b), xminus(self.a))

    def cod(self) -> Obj:
        return (xminus(self.a + self.b),)


@dataclass(frozen=True)
class AddSplitDual:
    a: Fraction
    b: Fraction

    def dom(self) -> Obj:
        return (xminus(self.a + self.b),)

    def cod(self) -> Obj:
        return (xminus(self.b), xminus(self.a))


@dataclass(frozen=True)
class AddCross:
    """Transposition of two adjacent additive points, any orientations."""

    first: Pt
    second: Pt

    def __post_init__(self):
        if not (self.first.kind.additive and self.second.kind.additive):
            raise KindMismatch("additive crossing needs two X points")

    def dom(self) -> Obj:
        return (self.first, self.second)

    def cod(self) -> Obj:
        return (self.second, self.first)


def _cross_scale(y: Pt) -> Fraction:
    return y.weight if y.kind is Kind.YP else 1 / y.weight


@dataclass(frozen=True)
class XYCross:
    """Move an additive point left across a multiplicative one.

    [Y(c), X(a)] -> [X(c'a), Y(c)] where c' is c for a left co-oriented line
    and 1/c for a right co-oriented one, independent of the X orientation.
    """

    y: Pt
    x: Pt

    def __post_init__(self):
        if not self.y.kind.multiplicative or not self.x.kind.additive:
            raise KindMismatch("xy crossing needs a Y point then an X point")

    def dom(self) -> Obj:
        return (self.y, self.x)

    def cod(self) -> Obj:
        return (Pt(self.x.kind, _cross_scale(self.y) * self.x.weight), self.y)


@dataclass(frozen=True)
class MultMerge:
    c1: Fraction
    c2: Fraction

    def dom(self) -> Obj:
        return (yplus(self.c1), yplus(self.c2))

    def cod(self) -> Obj:
        return (yplus(self.c1 * self.c2),)


@dataclass(frozen=True)
class MultSplit:
    c1: Fraction
    c2: Fraction

    def dom(self) -> Obj:
        return (yplus(self.c1 * self.c2),)

    def cod(self) -> Obj:
        return (yplus(self.c1), yplus(self.c2))


@dataclass(frozen=True)
class MultMergeDual:
    c1: Fraction
    c2: Fraction

    def dom(self) -> Obj:
        return (yminus(self.c1), yminus(self.c2))

    def cod(self) -> Obj:
        return (yminus(self.c1 * self.c2),)


@dataclass(frozen=True)
class MultSplitDual:
    c1: Fraction
    c2: Fraction

    def dom(self) -> Obj:
        return (yminus(self.c1 * self.c2),)

    def cod(self) -> Obj:
        return (yminus(self.c1), yminus(self.c2))


@dataclass(frozen=True)
class CoorientRev:
    """Reversal node: Y+(c) <-> Y-(1/c)."""

    c: Fraction
    from_plus: bool

    def dom(self) -> Obj:
        return (yplus(self.c) if self.from_plus else yminus(self.c),)

    def cod(self) -> Obj:
        inv = 1 / Fraction(self.c)
        return (yminus(inv) if self.from_plus else yplus(inv),)


@dataclass(frozen=True)
class CupX:
    a: Fraction
    plus_on_left: bool

    def dom(self) -> Obj:
        return ()

    def cod(self) -> Obj:
        pair = (xplus(self.a), xminus(self.a))
        return pair if self.plus_on_left else pair[::-1]


@dataclass(frozen=True)
class CapX:
    a: Fraction
    plus_on_left: bool

    def dom(self) -> Obj:
        pair = (xplus(self.a), xminus(self.a))
        return pair if self.plus_on_left else pair[::-1]

    def cod(self) -> Obj:
        return ()


@dataclass(frozen=True)
class CupY:
    c: Fraction
    plus_on_left: bool

    def dom(self) -> Obj:
        return ()

    def cod(self) -> Obj:
        pair = (yplus(self.c), yminus(self.c))
        return pair if self.plus_on_left else pair[::-1]


@dataclass(frozen=True)
class CapY:
    c: Fraction
    plus_on_left: bool

    def dom(self) -> Obj:
        pair = (yplus(self.c), yminus(self.c))
        return pair if self.plus_on_left else pair[::-1]

    def cod(self) -> Obj:
        return ()


DotPayload = Union[PrimeVector, EntropyScalar, float]


@dataclass(frozen=True)
class Dot:
    """A floating label in a region gap; contributes its winding-scaled value."""

    payload: DotPayload

    def dom(self) -> Obj:
        return ()

    def cod(self) -> Obj:
        return ()


Generator = Union[
    AddMerge,
    AddSplit,
    AddMergeDual,
    AddSplitDual,
    AddCross,
    XYCross,
    MultMerge,
    MultSplit,
    MultMergeDual,
    MultSplitDual,
    CoorientRev,
    CupX,
    CapX,
    CupY,
    CapY,
    Dot,
]

Layer = tuple[Generator, int]


@dataclass(frozen=True)
class Diagram:
    source: Obj
    layers: tuple[Layer, ...]
    mode: str = MODE_J

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")

    def with_mode(self, mode: str) -> "Diagram":
        return Diagram(self.source, self.layers, mode)


def identity_diagram(obj: Sequence[Pt], mode: str = MODE_J) -> Diagram:
    return Diagram(tuple(obj), (), mode)


def apply_layer(obj: Obj, gen: Generator, pos: int, layer_index: int | None = None) -> Obj:
    """Apply one generator at a strand position, checking its domain exactly."""
    dom = gen.dom()
    n = len(dom)
    if pos < 0 or pos + n > len(obj) or (n == 0 and pos > len(obj)):
        raise PositionOutOfRange(
            f"position {pos} with arity {n} in object of length {len(obj)}", layer_index
        )
    actual = obj[pos : pos + n]
    for want, got in zip(dom, actual):
        if want.kind is not got.kind:
            raise KindMismatch(f"expected {want!r}, found {got!r}", layer_index)
        if want.weight != got.weight:
            raise WeightMismatch(f"expected {want!r}, found {got!r}", layer_index)
    return obj[:pos] + gen.cod() + obj[pos + n :]


def states(d: Diagram) -> list[Obj]:
    """Objects between layers, from the source (index 0) to the target."""
    out = [tuple(d.source)]
    for i, (gen, pos) in enumerate(d.layers):
        out.append(apply_layer(out[-1], gen, pos, i))
    return out


def validate(d: Diagram) -> Obj:
    """Target object of a well-formed diagram; raises at the first bad layer."""
    return states(d)[-1]


def target(d: Diagram) -> Obj:
    return validate(d)


# ---------------------------------------------------------------------------
# Weights, windings, and effective weights.


def winding_product(obj: Obj, gap: int) -> Fraction:
    """Product over multiplicative points left of the gap: c for Y+, 1/c for Y-."""
    if gap < 0 or gap > len(obj):
        raise PositionOutOfRange(f"gap {gap} in object of length {len(obj)}")
    w = Fraction(1)
    for pt in obj[:gap]:
        if pt.kind is Kind.YP:
            w *= pt.weight
        elif pt.kind is Kind.YM:
            w /= pt.weight
    return w


def winding(d: Diagram, layer: int, gap: int) -> Fraction:
    """Winding of a gap in the object just below the given layer index."""
    st = states(d)
    if layer < 0 or layer >= len(st):
        raise PositionOutOfRange(f"layer {layer} of {len(st)} states")
    return winding_product(st[layer], gap)


def effective_weights(obj: Obj) -> list[Fraction]:
    """Signed, winding-scaled additive weights, in left-to-right order."""
    out = []
    w = Fraction(1)
    for pt in obj:
        if pt.kind is Kind.YP:
            w *= pt.weight
        elif pt.kind is Kind.YM:
            w /= pt.weight
        elif pt.kind is Kind.XP:
            out.append(w * pt.weight)
        else:
            out.append(-w * pt.weight)
    return out


def object_weight(obj: Obj) -> AffWeight:
    a = sum(effective_weights(obj), Fraction(0))
    return AffWeight(a, winding_product(obj, len(obj)))


def jstar(obj: Obj) -> PrimeVector:
    """Sum of symbols of successive prefixes of the effective weights."""
    bs = effective_weights(obj)
    out = PrimeVector()
    prefix = Fraction(0)
    for i in range(len(bs) - 1):
        prefix += bs[i]
        out = out + symbol(prefix, bs[i + 1])
    return out


# ---------------------------------------------------------------------------
# Evaluation.


def _zero_value(mode: str):
    if mode == MODE_J:
        return PrimeVector()
    if mode == MODE_H:
        return EntropyScalar.zero()
    return 0.0


def _vertex_value(mode: str, a: Fraction, b: Fraction):
    if mode == MODE_J:
        return symbol(a, b)
    if mode == MODE_H:
        return entropy_render(symbol(a, b))
    return bracket_H_float(float(a), float(b))


def _scale_value(mode: str, w: Fraction, value):
    if mode == MODE_HFLOAT:
        return float(w) * value
    return value.scaled(w)


def _dot_value(mode: str, payload: DotPayload):
    if mode == MODE_J:
        if not isinstance(payload, PrimeVector):
            raise KindMismatch("J-mode dots carry prime vectors")
        return payload
    if mode == MODE_H:
        if not isinstance(payload, EntropyScalar):
            raise KindMismatch("H-mode dots carry entropy scalars")
        return payload
    if not isinstance(payload, (float, int)):
        raise KindMismatch("Hfloat-mode dots carry floats")
    return float(payload)


def layer_contribution(mode: str, obj: Obj, gen: Generator, pos: int):
    """Evaluation contribution of one layer applied to obj at pos."""
    w = winding_product(obj, pos)
    if isinstance(gen, AddMerge):
        return _scale_value(mode, w, _vertex_value(mode, gen.a, gen.b))
    if isinstance(gen, AddSplit):
        return _scale_value(mode, -w, _vertex_value(mode, gen.a, gen.b))
    if isinstance(gen, AddMergeDual):
        return _scale_value(mode, -w, _vertex_value(mode, gen.a, gen.b))
    if isinstance(gen, AddSplitDual):
        return _scale_value(mode, w, _vertex_value(mode, gen.a, gen.b))
    if isinstance(gen, Dot):
        return _scale_value(mode, w, _dot_value(mode, gen.payload))
    return None


def j_invariant(d: Diagram):
    """Evaluation of the diagram: prime vector, entropy scalar, or float."""
    total = _zero_value(d.mode)
    obj = tuple(d.source)
    for i, (gen, pos) in enumerate(d.layers):
        piece = layer_contribution(d.mode, obj, gen, pos)
        if piece is not None:
            total = total + piece
        obj = apply_layer(obj, gen, pos, i)
    return total


def dot_contribution(d: Diagram):
    """Winding-scaled sum of dot labels alone (the non-boundary part)."""
    total = _zero_value(d.mode)
    obj = tuple(d.source)
    for i, (gen, pos) in enumerate(d.layers):
        if isinstance(gen, Dot):
            w = winding_product(obj, pos)
            total = total + _scale_value(d.mode, w, _dot_value(d.mode, gen.payload))
        obj = apply_layer(obj, gen, pos, i)
    return total


def values_equal(mode: str, x, y, tol: float = FLOAT_TOL) -> bool:
    if mode == MODE_HFLOAT:
        return abs(x - y) <= tol
    return x == y


# ---------------------------------------------------------------------------
# Category structure.


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """Stack d2 on top of d1; boundaries must match exactly."""
    if d1.mode != d2.mode:
        raise BoundaryMismatch("cannot compose diagrams of different modes")
    t = validate(d1)
    if t != tuple(d2.source):
        raise BoundaryMismatch(f"target {t!r} != source {tuple(d2.source)!r}")
    return Diagram(d1.source, d1.layers + d2.layers, d1.mode)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Place d2 to the right of d1."""
    if d1.mode != d2.mode:
        raise BoundaryMismatch("cannot tensor diagrams of different modes")
    offset = len(validate(d1))
    shifted = tuple((gen, pos + offset) for gen, pos in d2.layers)
    return Diagram(tuple(d1.source) + tuple(d2.source), d1.layers + shifted, d1.mode)


def morphism_exists(z0: Sequence[Pt], z1: Sequence[Pt]) -> bool:
    return object_weight(tuple(z0)) == object_weight(tuple(z1))


def is_dotless(d: Diagram) -> bool:
    return all(not isinstance(gen, Dot) for gen, _ in d.layers)


def equal_morphisms(d1: Diagram, d2: Diagram, tol: float = FLOAT_TOL) -> bool:
    """Equality in the dotted calculus: same boundary and equal evaluation.

    For dotless diagrams the evaluation comparison is automatic (it depends
    only on the boundary), so this also decides equality in the dotless
    category.
    """
    if d1.mode != d2.mode:
        raise BoundaryMismatch("cannot compare diagrams of different modes")
    if tuple(d1.source) != tuple(d2.source) or validate(d1) != validate(d2):
        raise BoundaryMismatch("boundaries differ")
    return values_equal(d1.mode, j_invariant(d1), j_invariant(d2), tol)


def inverse_layers(layers: Iterable[Layer]) -> tuple[Layer, ...]:
    """Layer list of the vertically reflected diagram.

    Every generator reverses individually; the one-directional crossing
    reverses to a three-layer conjugate by a cup and a cap.
    """
    out: list[Layer] = []
    for gen, pos in reversed(tuple(layers)):
        if isinstance(gen, AddMerge):
            out.append((AddSplit(gen.a, gen.b), pos))
        elif isinstance(gen, AddSplit):
            out.append((AddMerge(gen.a, gen.b), pos))
        elif isinstance(gen, AddMergeDual):
            out.append((AddSplitDual(gen.a, gen.b), pos))
        elif isinstance(gen, AddSplitDual):
            out.append((AddMergeDual(gen.a, gen.b), pos))
        elif isinstance(gen, MultMerge):
            out.append((MultSplit(gen.c1, gen.c2), pos))
        elif isinstance(gen, MultSplit):
            out.append((MultMerge(gen.c1, gen.c2), pos))
        elif isinstance(gen, MultMergeDual):
            out.append((MultSplitDual(gen.c1, gen.c2), pos))
        elif isinstance(gen, MultSplitDual):
            out.append((MultMergeDual(gen.c1, gen.c2), pos))
        elif isinstance(gen, CoorientRev):
            out.append((CoorientRev(1 / Fraction(gen.c), not gen.from_plus), pos))
        elif isinstance(gen, CupX):
            out.append((CapX(gen.a, gen.plus_on_left), pos))
        elif isinstance(gen, CapX):
            out.append((CupX(gen.a, gen.plus_on_left), pos))
        elif isinstance(gen, CupY):
            out.append((CapY(gen.c, gen.plus_on_left), pos))
        elif isinstance(gen, CapY):
            out.append((CupY(gen.c, gen.plus_on_left), pos))
        elif isinstance(gen, AddCross):
            out.append((AddCross(gen.second, gen.first), pos))
        elif isinstance(gen, XYCross):
            y, x_out = gen.y, gen.cod()[0]
            if y.kind is Kind.YP:
                out.append((CupY(y.weight, True), pos))
                out.append((XYCross(yminus(y.weight), x_out), pos + 1))
                out.append((CapY(y.weight, False), pos + 2))
            else:
                out.append((CupY(y.weight, False), pos))
                out.append((XYCross(yplus(y.weight), x_out), pos + 1))
                out.append((CapY(y.weight, True), pos + 2))
        elif isinstance(gen, Dot):
            payload = gen.payload
            neg = -payload if not isinstance(payload, (float, int)) else -float(payload)
            out.append((Dot(neg), pos))
        else:  # pragma: no cover
            raise TypeError(f"cannot invert {gen!r}")
    return tuple(out)


def inverse(d: Diagram) -> Diagram:
    return Diagram(validate(d), inverse_layers(d.layers), d.mode)


# ---------------------------------------------------------------------------
# Entropy diagrams.


def merge_fold_diagram(weights: Sequence[Fraction], mode: str = MODE_H) -> Diagram:
    """Left-fold of merges collapsing n additive lines into one."""
    ws = [Fraction(w) for w in weights]
    if not ws:
        raise ValueError("need at least one weight")
    src = tuple(xplus(w) for w in ws)
    layers = []
    prefix = ws[0]
    for w in ws[1:]:
        layers.append((AddMerge(prefix, w), 0))
        prefix += w
    return Diagram(src, tuple(layers), mode)


def shannon_entropy(weights: Sequence[Fraction]) -> EntropyScalar:
    """Exact entropy of a weight sequence via the fold diagram.

    For a probability distribution this is the Shannon entropy; general
    rational sequences give the additivity defect of psi on the sequence.
    """
    return j_invariant(merge_fold_diagram(weights, MODE_H))


def _chain_distributions(z: Sequence[Fraction], ys: Sequence[Sequence[Fraction]]):
    z = [Fraction(p) for p in z]
    ys = [[Fraction(q) for q in y] for y in ys]
    if len(ys) != len(z):
        raise ValueError("need one inner distribution per outer weight")
    if any(not y for y in ys):
        raise ValueError("inner distributions must be nonempty")
    return z, ys


def chain_diagrams(z: Sequence[Fraction], ys: Sequence[Sequence[Fraction]]) -> tuple[Diagram, Diagram]:
    """The two sliced forms of the grouped-merge picture for the chain rule.

    Both start from blocks [Y+(p_i), X+(q_1i) ... X+(q_ki), Y-(p_i)] and end
    in a single additive line.  The first folds each block inside its
    multiplicative arc before crossing out; the second crosses every additive
    line out of the arc first.  Outer weights must be nonzero.
    """
    z, ys = _chain_distributions(z, ys)
    if any(p == 0 for p in z):
        raise ZeroMultiplicativeWeight("outer weights must be nonzero to form the arcs")

    src = []
    for p, y in zip(z, ys):
        src.append(yplus(p))
        src.extend(xplus(q) for q in y)
        src.append(yminus(p))
    src = tuple(src)

    def close_blocks(fold_first: bool) -> tuple[Layer, ...]:
        layers: list[Layer] = []
        base = 0  # position of the current block's Y+ point
        for p, y in zip(z, ys):
            k = len(y)
            if fold_first:
                prefix = y[0]
                for q in y[1:]:
                    layers.append((AddMerge(prefix, q), base + 1))
                    prefix += q
                layers.append((XYCross(yplus(p), xplus(prefix)), base))
                layers.append((CapY(p, True), base + 1))
            else:
                for j, q in enumerate(y):
                    layers.append((XYCross(yplus(p), xplus(q)), base + j))
                layers.append((CapY(p, True), base + k))
                prefix = p * y[0]
                for q in y[1:]:
                    layers.append((AddMerge(prefix, p * q), base))
                    prefix += p * q
            base += 1
        prefix = z[0] * sum(ys[0], Fraction(0))
        for p, y in zip(z[1:], ys[1:]):
            block = p * sum(y, Fraction(0))
            layers.append((AddMerge(prefix, block), 0))
            prefix += block
        return tuple(layers)

    lhs = Diagram(src, close_blocks(fold_first=True), MODE_H)
    rhs = Diagram(src, close_blocks(fold_first=False), MODE_H)
    return lhs, rhs


def chain_rule_check(z: Sequence[Fraction], ys: Sequence[Sequence[Fraction]]) -> bool:
    """Exact grouping identity for entropy, plus the diagram-level equality.

    Verifies H(X) = H(Z) + sum_i p_i H(Y_i) with X the composite sequence
    (p_i * q_ji), and, when every p_i is nonzero, that the two sliced forms
    of the grouped-merge picture evaluate identically.
    """
    z, ys = _chain_distributions(z, ys)
    composite = [p * q for p, y in zip(z, ys) for q in y]
    lhs_value = shannon_entropy(composite)
    rhs_value = shannon_entropy(z)
    for p, y in zip(z, ys):
        rhs_value = rhs_value + shannon_entropy(y).scaled(p)
    if lhs_value != rhs_value:
        return False
    if all(p != 0 for p in z):
        da, db = chain_diagrams(z, ys)
        if not equal_morphisms(da, db):
            return False
        if j_invariant(da) != lhs_value:
            return False
    return True


def is_finprob(d: Diagram) -> bool:
    """Upward merge-and-permutation diagrams of total weight one.

    Every boundary point must be X+ with weight in [0, 1], every layer an
    additive merge or crossing of upward strands, and every slice must have
    total weight 1.
    """
    obj = tuple(d.source)
    if any(pt.kind is not Kind.XP or not 0 <= pt.weight <= 1 for pt in obj):
        return False
    if sum((pt.weight for pt in obj), Fraction(0)) != 1:
        return False
    for gen, pos in d.layers:
        if isinstance(gen, AddCross):
            if gen.first.kind is not Kind.XP or gen.second.kind is not Kind.XP:
                return False
        elif not isinstance(gen, AddMerge):
            return False
        try:
            obj = apply_layer(obj, gen, pos)
        except DiagramError:
            return False
    return True


def aff_cocycle(w1: AffWeight, w2: AffWeight) -> PrimeVector:
    """The symbol-valued pairing on the affine group: <(a1,c1),(a2,c2)> = <a1, c1*a2>."""
    return symbol(w1.a, w1.c * w2.a)
