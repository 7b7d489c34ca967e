"""The symbol space J(Q) in computable normal form, plus entropy values.

A symbol <a,b> (a, b rational) is stored as its image inside the tensor
product Q (+) Q^x, identified with the direct sum over primes of copies of Q:
the coefficient at a prime p is  a*v_p(a) + b*v_p(b) - (a+b)*v_p(a+b), with
terms at zero arguments omitted.  This normal form is faithful over Q, so
vector equality decides symbol equality exactly.  Entropy values are carried
exactly as a rational constant plus a rational combination of log p; the
log p are linearly independent over Q, so componentwise equality is the
equality of the corresponding real numbers (documented, classical).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .scalars import NonzeroExpected, factor, format_rational

Rational = Fraction


class PrimeVector:
    """Finitely supported map prime -> Q; exact componentwise arithmetic."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None):
        clean = {}
        if coeffs:
            for p, c in coeffs.items():
                c = Fraction(c)
                if c:
                    clean[p] = c
        self._coeffs = clean

    @classmethod
    def zero(cls) -> "PrimeVector":
        return cls()

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return tuple(sorted(self._coeffs.items()))

    def coeff(self, p: int) -> Fraction:
        return self._coeffs.get(p, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: "PrimeVector") -> "PrimeVector":
        out = dict(self._coeffs)
        for p, c in other._coeffs.items():
            out[p] = out.get(p, Fraction(0)) + c
        return PrimeVector(out)

    def __sub__(self, other: "PrimeVector") -> "PrimeVector":
        return self + (-other)

    def __neg__(self) -> "PrimeVector":
        return PrimeVector({p: -c for p, c in self._coeffs.items()})

    def scaled(self, c: Fraction) -> "PrimeVector":
        c = Fraction(c)
        if not c:
            return PrimeVector()
        return PrimeVector({p: c * v for p, v in self._coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeVector):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self.items())

    def __repr__(self) -> str:
        return f"PrimeVector({self.to_text()})"

    def to_text(self) -> str:
        inner = ", ".join(f"{p}: {format_rational(c)}" for p, c in self.items())
        return "{" + inner + "}"


def tensor_vector(a: Fraction, q: Fraction) -> PrimeVector:
    """Image of the simple tensor a (x) q under Q (+) Q^x ~ sum_p Q.

    Sends a (x) q to the vector with coefficient a*v_p(q) at p.  The sign of
    q carries no information (the 2-torsion dies after tensoring with Q), so
    q and -q map to the same vector.
    """
    a, q = Fraction(a), Fraction(q)
    if q == 0:
        raise NonzeroExpected("second tensor factor must be nonzero")
    if a == 0:
        return PrimeVector()
    return PrimeVector({p: a * e for p, e in factor(q).exponents})


def symbol(a: Fraction, b: Fraction) -> PrimeVector:
    """The symbol <a,b> in normal form; a, b, a+b may each be zero."""
    a, b = Fraction(a), Fraction(b)
    out: dict[int, Fraction] = {}

    def accumulate(coeff: Fraction, value: Fraction) -> None:
        if value == 0 or coeff == 0:
            return
        for p, e in factor(value).exponents:
            out[p] = out.get(p, Fraction(0)) + coeff * e

    accumulate(a, a)
    accumulate(b, b)
    accumulate(-(a + b), a + b)
    return PrimeVector(out)


def scale(c: Fraction, v: PrimeVector) -> PrimeVector:
    """Scalar action of Q on J(Q): scale(c, <a,b>) = <ca,cb>."""
    return v.scaled(Fraction(c))


@dataclass(frozen=True)
class BetaSymbol:
    """Formal Q-linear combination of generators [a], a nonzero.

    [1] is an allowed generator and maps to zero under the isomorphism with
    the symbol space.
    """

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        for coeff, gen in self.terms:
            if gen == 0:
                raise ValueError("beta generator [0] is not allowed")

    @classmethod
    def of(cls, *terms: tuple[Fraction | int, Fraction | int]) -> "BetaSymbol":
        return cls(tuple((Fraction(c), Fraction(g)) for c, g in terms))

    def __add__(self, other: "BetaSymbol") -> "BetaSymbol":
        return BetaSymbol(self.terms + other.terms)

    def scaled(self, c: Fraction) -> "BetaSymbol":
        c = Fraction(c)
        return BetaSymbol(tuple((c * k, g) for k, g in self.terms))


def beta_to_j(s: BetaSymbol) -> PrimeVector:
    """[a] |-> <a, 1-a>, extended linearly; [1] contributes zero."""
    out = PrimeVector()
    for coeff, gen in s.terms:
        if gen == 1:
            continue
        out = out + symbol(gen, 1 - gen).scaled(coeff)
    return out


def j_to_beta(a: Fraction, b: Fraction) -> BetaSymbol:
    """Inverse direction on generators: <a,b> |-> (a+b)[a/(a+b)].

    <a,-a> maps to the empty combination; so does <0,b>, whose would-be
    generator [0] is the zero of the beta space.
    """
    a, b = Fraction(a), Fraction(b)
    if a + b == 0 or a == 0:
        return BetaSymbol()
    return BetaSymbol(((a + b, a / (a + b)),))


class EntropyScalar:
    """Exact entropy value: rational constant plus sum of q_p * log p."""

    __slots__ = ("constant", "logpart")

    def __init__(self, constant: Fraction = Fraction(0), logpart: PrimeVector | None = None):
        self.constant = Fraction(constant)
        self.logpart = logpart if logpart is not None else PrimeVector()

    @classmethod
    def zero(cls) -> "EntropyScalar":
        return cls()

    def is_zero(self) -> bool:
        return self.constant == 0 and self.logpart.is_zero()

    def __add__(self, other: "EntropyScalar") -> "EntropyScalar":
        return EntropyScalar(self.constant + other.constant, self.logpart + other.logpart)

    def __sub__(self, other: "EntropyScalar") -> "EntropyScalar":
        return EntropyScalar(self.constant - other.constant, self.logpart - other.logpart)

    def __neg__(self) -> "EntropyScalar":
        return EntropyScalar(-self.constant, -self.logpart)

    def scaled(self, c: Fraction) -> "EntropyScalar":
        c = Fraction(c)
        return EntropyScalar(c * self.constant, self.logpart.scaled(c))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EntropyScalar):
            return NotImplemented
        return self.constant == other.constant and self.logpart == other.logpart

    def __hash__(self) -> int:
        return hash((self.constant, self.logpart))

    def __repr__(self) -> str:
        return f"EntropyScalar({self.to_text()})"

    def to_text(self) -> str:
        return f"{format_rational(self.constant)} + {self.logpart.to_text()}"

    def pretty(self) -> str:
        """Human form like `log(2)` or `log(3) - (2/3)*log(2)`."""
        terms: list[tuple[int, str]] = []
        if self.constant:
            terms.append((-1 if self.constant < 0 else 1, format_rational(abs(self.constant))))
        for p, c in self.logpart.items():
            mag = abs(c)
            text = f"log({p})" if mag == 1 else f"({format_rational(mag)})*log({p})"
            terms.append((-1 if c < 0 else 1, text))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] < 0 else "") + terms[0][1]
        for sign, text in terms[1:]:
            out += (" - " if sign < 0 else " + ") + text
        return out


def entropy_render(v: PrimeVector) -> EntropyScalar:
    """Entropy value of a symbol vector: <a,b> renders to <a,b>_H exactly."""
    return EntropyScalar(Fraction(0), -v)


def render_float(s: EntropyScalar) -> float:
    return float(s.constant) + sum(float(c) * math.log(p) for p, c in s.logpart.items())


def psi_float(a: float) -> float:
    """psi(a) = -a*log|a| with psi(0) = 0."""
    return 0.0 if a == 0 else -a * math.log(abs(a))


def bracket_H_float(a: float, b: float) -> float:
    """<a,b>_H = psi(a) + psi(b) - psi(a+b) in double precision."""
    return psi_float(a) + psi_float(b) - psi_float(a + b)


def _psi_tsallis(x: Fraction, alpha: int) -> Fraction:
    return x * abs(x) ** (alpha - 1)


def bracket_tsallis(a: Fraction, b: Fraction, alpha: int) -> Fraction:
    """Exact deformed symbol with psi_alpha(x) = x*|x|**(alpha-1), integer alpha >= 2."""
    if not isinstance(alpha, int) or alpha < 2:
        raise ValueError("exact deformed bracket requires integer alpha >= 2")
    a, b = Fraction(a), Fraction(b)
    return _psi_tsallis(a, alpha) + _psi_tsallis(b, alpha) - _psi_tsallis(a + b, alpha)


def bracket_tsallis_float(a: float, b: float, alpha: float) -> float:
    if alpha == 1:
        raise ValueError("alpha = 1 is the undeformed (Shannon) limit; use bracket_H_float")

    def psi(x: float) -> float:
        return 0.0 if x == 0 else x * abs(x) ** (alpha - 1)

    return psi(a) + psi(b) - psi(a + b)


def tsallis_entropy(p: Fraction, alpha: int) -> Fraction:
    """H_alpha(p) = (1 - psi_alpha(p) - psi_alpha(1-p)) / (alpha - 1), exact."""
    if not isinstance(alpha, int) or alpha < 2:
        raise ValueError("exact deformed entropy requires integer alpha >= 2")
    p = Fraction(p)
    return (1 - _psi_tsallis(p, alpha) - _psi_tsallis(1 - p, alpha)) / (alpha - 1)
