"""Exact arithmetic in the localization Z[1/n].

Every element is stored as ``l / n**p`` with ``p == 0`` or ``n`` not dividing
``l``, which makes the representation unique.  Zero is ``(0, 0)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import (
    BaseMismatch,
    NotAUnit,
    NotCoprime,
    NotInZn,
    ParseError,
    PreconditionError,
)

__all__ = [
    "Base", "ZnElem", "UnitDecomp",
    "zn_normalize", "zn_add", "zn_neg", "zn_sub", "zn_mul", "zn_div",
    "zn_from_fraction", "in_zn", "zn_unit_decompose", "unit_recompose",
    "zn_coprime_part", "zn_gcd", "zn_divides",
    "mu", "q_ratio", "mult_order", "factorize", "totient", "divisors",
    "format_zn", "parse_zn",
]


def factorize(m: int) -> list[tuple[int, int]]:
    """Prime factorization of ``m >= 1`` by trial division."""
    if m <= 0:
        raise PreconditionError(f"factorize needs m >= 1, got {m}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def totient(m: int) -> int:
    result = m
    for p, _ in factorize(m):
        result = result // p * (p - 1)
    return result


def divisors(m: int) -> list[int]:
    """Positive divisors of ``m >= 1`` in ascending order."""
    divs = [1]
    for p, e in factorize(m):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def mult_order(a: int, m: int) -> int:
    """Smallest ``e >= 1`` with ``a**e == 1 (mod m)``."""
    if m < 1:
        raise PreconditionError(f"modulus must be >= 1, got {m}")
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) != 1")
    if m == 1:
        return 1
    a %= m
    order = totient(m)
    for q, _ in factorize(order):
        while order % q == 0 and pow(a, order // q, m) == 1:
            order //= q
    return order


@dataclass(frozen=True)
class Base:
    """The parameter ``n >= 2`` together with its factorization."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise PreconditionError(f"n must be an integer >= 2, got {self.n!r}")

    @cached_property
    def primes(self) -> tuple[tuple[int, int], ...]:
        return tuple(factorize(self.n))

    @property
    def r(self) -> int:
        return len(self.primes)

    @property
    def prime_list(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.primes)

    def zero(self) -> ZnElem:
        return ZnElem(0, 0, self)

    def one(self) -> ZnElem:
        return ZnElem(1, 0, self)

    def __call__(self, value, p: int = 0) -> ZnElem:
        """Shorthand: ``B(3)``, ``B(3, 2)`` for 3/n^2, ``B(Fraction(3, 4))``, ``B("3/4")``."""
        if isinstance(value, ZnElem):
            return value
        if isinstance(value, str):
            return parse_zn(value, self)
        if isinstance(value, Fraction):
            return zn_from_fraction(value / Fraction(self.n) ** p, self)
        return ZnElem(int(value), p, self)


@dataclass(frozen=True)
class ZnElem:
    """``l / n**p`` in canonical form; construction always normalizes."""

    l: int
    p: int
    base: Base

    def __post_init__(self):
        if self.p < 0:
            raise PreconditionError(f"exponent p must be >= 0, got {self.p}")
        l, p, n = self.l, self.p, self.base.n
        if l == 0:
            p = 0
        else:
            while p > 0 and l % n == 0:
                l //= n
                p -= 1
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def denominator(self) -> int:
        return self.base.n**self.p

    def to_fraction(self) -> Fraction:
        return Fraction(self.l, self.denominator)

    def is_zero(self) -> bool:
        return self.l == 0

    def __bool__(self):
        return self.l != 0

    def __add__(self, other):
        o = _coerce(other, self.base)
        if o is NotImplemented:
            return o
        return zn_add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other, self.base)
        if o is NotImplemented:
            return o
        return zn_sub(self, o)

    def __rsub__(self, other):
        o = _coerce(other, self.base)
        if o is NotImplemented:
            return o
        return zn_sub(o, self)

    def __neg__(self):
        return zn_neg(self)

    def __mul__(self, other):
        o = _coerce(other, self.base)
        if o is NotImplemented:
            return o
        return zn_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other, self.base)
        if o is NotImplemented:
            return o
        return zn_div(self, o)

    def __pow__(self, k: int):
        if k >= 0:
            return zn_from_fraction(self.to_fraction() ** k, self.base)
        return zn_from_fraction(Fraction(1) / self.to_fraction() ** (-k), self.base)

    def __str__(self):
        return format_zn(self)

    def __repr__(self):
        return f"ZnElem({format_zn(self)}, n={self.base.n})"


def _coerce(x, base: Base) -> ZnElem:
    if isinstance(x, ZnElem):
        return x
    if isinstance(x, int):
        return ZnElem(x, 0, base)
    if isinstance(x, Fraction):
        return zn_from_fraction(x, base)
    return NotImplemented


def _check_base(a: ZnElem, b: ZnElem):
    if a.base != b.base:
        raise BaseMismatch(f"n={a.base.n} vs n={b.base.n}")


def zn_normalize(l: int, p: int, base: Base) -> ZnElem:
    return ZnElem(l, p, base)


def zn_add(a: ZnElem, b: ZnElem) -> ZnElem:
    _check_base(a, b)
    n = a.base.n
    p = max(a.p, b.p)
    return ZnElem(a.l * n ** (p - a.p) + b.l * n ** (p - b.p), p, a.base)


def zn_neg(a: ZnElem) -> ZnElem:
    return ZnElem(-a.l, a.p, a.base)


def zn_sub(a: ZnElem, b: ZnElem) -> ZnElem:
    return zn_add(a, zn_neg(b))


def zn_mul(a: ZnElem, b: ZnElem) -> ZnElem:
    _check_base(a, b)
    return ZnElem(a.l * b.l, a.p + b.p, a.base)


def _valuation(m: int, q: int) -> int:
    """Largest v with q**v | m (m != 0), using repeated squaring."""
    if m % q:
        return 0
    powers = [q]
    while m % (powers[-1] * powers[-1]) == 0:
        powers.append(powers[-1] * powers[-1])
    v = 0
    for i in reversed(range(len(powers))):
        if m % powers[i] == 0:
            m //= powers[i]
            v += 1 << i
    return v


@lru_cache(maxsize=256)
def _prime_powers(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(factorize(n))


def _smooth_exponent(den: int, n: int) -> int | None:
    """Least p with den | n**p, or None when den is not n-smooth."""
    if den == 1:
        return 0
    p = 0
    for q, e in _prime_powers(n):
        v = _valuation(den, q)
        if v:
            den //= q**v
            p = max(p, -(-v // e))
    return p if den == 1 else None


def in_zn(q: Fraction, base: Base) -> bool:
    return _smooth_exponent(Fraction(q).denominator, base.n) is not None


def zn_from_fraction(q: Fraction, base: Base) -> ZnElem:
    q = Fraction(q)
    p = _smooth_exponent(q.denominator, base.n)
    if p is None:
        raise NotInZn(f"{q} is not in Z[1/{base.n}]")
    return ZnElem(q.numerator * (base.n**p // q.denominator), p, base)


def zn_div(a: ZnElem, b: ZnElem) -> ZnElem:
    """Exact quotient; raises NotInZn when ``a/b`` leaves Z[1/n]."""
    _check_base(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by zero in Z[1/n]")
    return zn_from_fraction(a.to_fraction() / b.to_fraction(), a.base)


def zn_coprime_part(l: int, base: Base) -> int:
    """``l`` with every prime factor of ``n`` removed; the sign stays on the result."""
    if l == 0:
        raise PreconditionError("coprime part of 0 is undefined")
    for p in base.prime_list:
        while l % p == 0:
            l //= p
    return l


@dataclass(frozen=True)
class UnitDecomp:
    sign: int
    exps: tuple[int, ...]


def zn_unit_decompose(a: ZnElem) -> UnitDecomp:
    if a.is_zero():
        raise NotAUnit("0 is not a unit")
    base = a.base
    if abs(zn_coprime_part(a.l, base)) != 1:
        raise NotAUnit(f"{format_zn(a)} is not a unit of Z[1/{base.n}]")
    l = abs(a.l)
    exps = []
    for p, k in base.primes:
        e = 0
        while l % p == 0:
            l //= p
            e += 1
        exps.append(e - k * a.p)
    return UnitDecomp(1 if a.l > 0 else -1, tuple(exps))


def unit_recompose(u: UnitDecomp, base: Base) -> ZnElem:
    q = Fraction(u.sign)
    for p, e in zip(base.prime_list, u.exps):
        q *= Fraction(p) ** e
    return zn_from_fraction(q, base)


def zn_gcd(a: ZnElem, b: ZnElem) -> ZnElem:
    """Positive n-coprime integer generating the ideal (a, b)."""
    _check_base(a, b)
    if a.is_zero() and b.is_zero():
        raise PreconditionError("gcd(0, 0) is undefined")
    ca = 0 if a.is_zero() else zn_coprime_part(a.l, a.base)
    cb = 0 if b.is_zero() else zn_coprime_part(b.l, b.base)
    return ZnElem(math.gcd(ca, cb), 0, a.base)


def zn_divides(a: ZnElem, b: ZnElem) -> bool:
    """True iff ``b / a`` lies in Z[1/n]."""
    _check_base(a, b)
    if a.is_zero():
        raise PreconditionError("divisibility by 0")
    if b.is_zero():
        return True
    return zn_coprime_part(b.l, b.base) % zn_coprime_part(a.l, a.base) == 0


def _geometric(c: int, n: int) -> Fraction:
    return (Fraction(n) ** c - 1) / (n - 1)


@lru_cache(maxsize=4096)
def _mu_cached(c: int, n: int) -> tuple[int, int]:
    if c >= 0:
        return (n**c - 1) // (n - 1), 0
    return -((n ** (-c) - 1) // (n - 1)), -c


def mu(c: int, base: Base) -> ZnElem:
    """The geometric sum ``(n**c - 1) / (n - 1)`` for any integer ``c``."""
    l, p = _mu_cached(c, base.n)
    return ZnElem(l, p, base)


def q_ratio(c: int, k: int, base: Base) -> ZnElem:
    """``(n**(c*k) - 1) / (n**c - 1)``, with the limit value ``k`` at ``c == 0``."""
    if c == 0:
        return ZnElem(k, 0, base)
    n = base.n
    if c > 0 and k >= 0:
        return ZnElem((n ** (c * k) - 1) // (n**c - 1), 0, base)
    return zn_from_fraction(_geometric(c * k, n) / _geometric(c, n), base)


_ZN_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_zn(text: str, base: Base, offset: int = 0, source: str | None = None) -> ZnElem:
    """Parse ``l`` or ``a/b``; ``b`` must have only prime factors of ``n``.

    ``offset`` and ``source`` locate ``text`` inside a larger literal for diagnostics.
    """
    source = text if source is None else source
    m = _ZN_RE.match(text)
    if not m:
        bad = next((i for i, ch in enumerate(text) if not (ch.isdigit() or ch in "+-/ ")), 0)
        raise ParseError(f"malformed number {text.strip()!r}", offset + bad, source)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator", offset + m.start(2), source)
    try:
        return zn_from_fraction(Fraction(num, den), base)
    except NotInZn:
        raise ParseError(
            f"denominator {den} is not a product of primes dividing {base.n}",
            offset + m.start(2), source,
        ) from None


def format_zn(a: ZnElem) -> str:
    if a.p == 0:
        return str(a.l)
    return f"{a.l}/{a.denominator}"
