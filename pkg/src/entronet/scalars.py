"""Exact rational scalars: certified factorization and p-adic valuations.

Rationals are plain :class:`fractions.Fraction` values (always in lowest
terms, positive denominator, arbitrary precision).  This module supplies the
multiplicative bookkeeping the rest of the package needs: a nonzero rational
decomposed into a sign and finitely many prime exponents, plus p-adic
valuations.  Factoring is trial division over a sieved prime table up to
10**6 with a Pollard-rho fallback; every reported prime is certified by a
deterministic Miller-Rabin check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

Rational = Fraction

TRIAL_DIVISION_BOUND = 10**6

# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NonzeroExpected(ValueError):
    """Raised when an operation defined on Q^x receives zero."""


class NotPrime(ValueError):
    """Raised when a valuation is requested at a composite or unit base."""


@lru_cache(maxsize=1)
def prime_table() -> tuple[int, ...]:
    """All primes below TRIAL_DIVISION_BOUND, sieved once on first use."""
    bound = TRIAL_DIVISION_BOUND
    sieve = bytearray([1]) * bound
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i in range(bound) if sieve[i])


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"pollard rho failed on {n}")  # pragma: no cover


@lru_cache(maxsize=200_000)
def factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as sorted (prime, exponent) pairs."""
    if n < 1:
        raise NonzeroExpected(f"factor_int expects a positive integer, got {n}")
    out: dict[int, int] = {}
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        for p in prime_table():
            if p * p > m:
                break
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            d = _pollard_brent(m)
            stack.append(d)
            stack.append(m // d)
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class Factorization:
    """A nonzero rational as sign * prod p**e_p, exponents without zeros."""

    sign: int
    exponents: tuple[tuple[int, int], ...] = field(default=())

    def exponent(self, p: int) -> int:
        for q, e in self.exponents:
            if q == p:
                return e
        return 0

    def reconstruct(self) -> Fraction:
        num, den = self.sign, 1
        for p, e in self.exponents:
            if e >= 0:
                num *= p**e
            else:
                den *= p ** (-e)
        return Fraction(num, den)

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)


def factor(q: Fraction | int) -> Factorization:
    """Certified factorization of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise NonzeroExpected("cannot factor 0")
    sign = 1 if q > 0 else -1
    merged = dict(factor_int(abs(q.numerator)))
    for p, e in factor_int(q.denominator):
        merged[p] = merged.get(p, 0) - e
    pairs = tuple(sorted((p, e) for p, e in merged.items() if e != 0))
    return Factorization(sign, pairs)


def valuation(q: Fraction | int, p: int) -> int:
    """p-adic valuation v_p(q) for nonzero rational q and prime p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        raise NonzeroExpected("valuation of 0 is undefined")
    v = 0
    n = abs(q.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def parse_rational(text: str) -> Fraction:
    """Parse `p/q` or integer form; negative sign on the numerator only."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        num, den = num.strip(), den.strip()
        if den.startswith(("-", "+")):
            raise ValueError(f"sign allowed on numerator only: {text!r}")
        d = int(den)
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        return Fraction(int(num), d)
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    return str(q)
