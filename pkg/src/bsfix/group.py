"""The group BS(1, n) as pairs (gamma, c) in Z[1/n] x Z.

Multiplication is ``(g1, c1)(g2, c2) = (g1 * n**c2 + g2, c1 + c2)``.

Generator convention: ``a = (1, 0)`` and ``t = (0, 1)``.  With this law
``t a t^-1`` evaluates to ``(1/n, 0)``, i.e. ``t^-1 a t = a^n``.  The usual
presentation ``t a t^-1 = a^n`` is the same group with ``t`` and ``t^-1``
swapped; words are evaluated under the multiplication law above.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BaseMismatch, NoMaximalRoot, NotInZn, ParseError, PreconditionError
from .ring import (
    Base,
    ZnElem,
    divisors,
    format_zn,
    mu,
    parse_zn,
    q_ratio,
    zn_div,
    zn_from_fraction,
)

__all__ = [
    "BsElem", "GL2", "SubgroupClass",
    "identity", "gen_a", "gen_t",
    "bs_mul", "bs_inv", "bs_pow", "bs_from_word", "bs_to_matrix",
    "bs_kth_root", "bs_root_closure", "classify_subgroup",
    "eval_word_tokens", "parse_word", "format_element", "parse_element",
]


@dataclass(frozen=True)
class BsElem:
    gamma: ZnElem
    c: int

    @property
    def base(self) -> Base:
        return self.gamma.base

    def is_identity(self) -> bool:
        return self.c == 0 and self.gamma.is_zero()

    def __mul__(self, other):
        if not isinstance(other, BsElem):
            return NotImplemented
        return bs_mul(self, other)

    def __pow__(self, k: int):
        return bs_pow(self, k)

    def inv(self) -> BsElem:
        return bs_inv(self)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"BsElem{format_element(self)}"


def element(gamma, c: int, base: Base) -> BsElem:
    """Build ``(gamma, c)`` from an int, Fraction, string or ZnElem."""
    return BsElem(base(gamma), c)


def identity(base: Base) -> BsElem:
    return BsElem(base.zero(), 0)


def gen_a(base: Base) -> BsElem:
    return BsElem(base.one(), 0)


def gen_t(base: Base) -> BsElem:
    return BsElem(base.zero(), 1)


def bs_mul(g: BsElem, h: BsElem) -> BsElem:
    if g.base != h.base:
        raise BaseMismatch(f"n={g.base.n} vs n={h.base.n}")
    n = g.base.n
    g1 = g.gamma
    if h.c >= 0:
        shifted = ZnElem(g1.l * n**h.c, g1.p, g.base)
    else:
        shifted = ZnElem(g1.l, g1.p - h.c, g.base)
    return BsElem(shifted + h.gamma, g.c + h.c)


def bs_inv(g: BsElem) -> BsElem:
    # (gamma, c)^-1 = (-gamma n^-c, -c)
    n = g.base.n
    gm = g.gamma
    if g.c >= 0:
        gamma = ZnElem(-gm.l, gm.p + g.c, g.base)
    else:
        gamma = ZnElem(-gm.l * n ** (-g.c), gm.p, g.base)
    return BsElem(gamma, -g.c)


def bs_pow(g: BsElem, k: int) -> BsElem:
    return BsElem(q_ratio(g.c, k, g.base) * g.gamma, g.c * k)


@dataclass(frozen=True)
class GL2:
    """2x2 matrix over the rationals, rows ``(a11, a12), (a21, a22)``."""

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction

    def __matmul__(self, o: GL2) -> GL2:
        return GL2(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )

    def rows(self):
        return ((self.a11, self.a12), (self.a21, self.a22))

    @classmethod
    def eye(cls) -> GL2:
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))


def bs_to_matrix(g: BsElem) -> GL2:
    return GL2(Fraction(g.base.n) ** g.c, Fraction(0), g.gamma.to_fraction(), Fraction(1))


# ---------------------------------------------------------------- words

_TOKEN_RE = re.compile(r"([aAtT])(?:\^([+-]?\d+))?")


def parse_word(w: str) -> list[tuple[str, int]]:
    """Tokenize a word into ``(letter, exponent)`` with letters in ``{"a", "t"}``.

    ``A`` and ``T`` are the inverses; ``x^k`` raises to a signed power.
    """
    tokens = []
    i = 0
    while i < len(w):
        if w[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(w, i)
        if not m:
            raise ParseError(f"unexpected character {w[i]!r} in word", i, w)
        end = m.end()
        if m.group(2) is None and end < len(w) and w[end] == "^":
            raise ParseError("expected signed integer exponent after '^'", end + 1, w)
        letter = m.group(1)
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if letter.isupper():
            exp = -exp
        tokens.append((letter.lower(), exp))
        i = end
    return tokens


def eval_word_tokens(tokens, base: Base) -> BsElem:
    out = identity(base)
    gens = {"a": gen_a(base), "t": gen_t(base)}
    for letter, exp in tokens:
        if exp == 0:
            continue
        out = bs_mul(out, bs_pow(gens[letter], exp))
    return out


def bs_from_word(w: str, base: Base) -> BsElem:
    return eval_word_tokens(parse_word(w), base)


# ---------------------------------------------------------------- roots

def bs_kth_root(g: BsElem, k: int) -> BsElem | None:
    """The unique ``h`` with ``h**k == g``, or None."""
    if k < 1:
        raise PreconditionError(f"root index must be >= 1, got {k}")
    base = g.base
    if g.c == 0:
        divisor = ZnElem(k, 0, base)
        c = 0
    else:
        if g.c % k:
            return None
        c = g.c // k
        divisor = q_ratio(c, k, base)
    try:
        return BsElem(zn_div(g.gamma, divisor), c)
    except NotInZn:
        return None


def bs_root_closure(g: BsElem) -> tuple[BsElem, int]:
    """Maximal root: ``(h, m)`` with ``h**m == g`` and ``m`` as large as possible."""
    if g.c == 0:
        raise NoMaximalRoot("elements of the kernel have roots of every order")
    sign = 1 if g.c > 0 else -1
    ratio = g.gamma.to_fraction() / mu(g.c, g.base).to_fraction()
    for e in divisors(abs(g.c)):
        try:
            gamma = zn_from_fraction(ratio * mu(sign * e, g.base).to_fraction(), g.base)
        except NotInZn:
            continue
        return BsElem(gamma, sign * e), abs(g.c) // e
    raise AssertionError("unreachable: e = |c| always succeeds")


# ---------------------------------------------------------------- subgroups

Word = tuple
"""A product of input generators, read left to right.

Each item is ``(index, exponent)`` for an input generator or
``(subword, exponent)`` for a nested product raised to a power.
"""


@dataclass(frozen=True)
class SubgroupClass:
    """Either ``cyclic`` (``generator``) or ``finite_index`` (``t_part``, ``kernel_gen``).

    The ``*_word`` fields record each witness as a product of the input
    generators.
    """

    kind: str
    generator: BsElem | None = None
    t_part: BsElem | None = None
    kernel_gen: BsElem | None = None
    generator_word: Word = field(default=(), compare=False)
    t_word: Word = field(default=(), compare=False)
    kernel_word: Word = field(default=(), compare=False)


def evaluate_product(word: Word, gens, base: Base) -> BsElem:
    out = identity(base)
    for item, e in word:
        g = gens[item] if isinstance(item, int) else evaluate_product(item, gens, base)
        out = bs_mul(out, bs_pow(g, e))
    return out


def _xgcd_list(values: list[int]) -> tuple[int, list[int]]:
    """``(g, x)`` with ``sum(x_i v_i) == g == gcd(values) >= 0``."""
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        if v == 0:
            continue
        if g == 0:
            g, coeffs = abs(v), [0] * len(values)
            coeffs[i] = 1 if v > 0 else -1
            continue
        # extended Euclid on (g, v)
        r0, r1, s0, s1, t0, t1 = g, v, 1, 0, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0 < 0:
            r0, s0, t0 = -r0, -s0, -t0
        coeffs = [s0 * x for x in coeffs]
        coeffs[i] += t0
        g = r0
    return g, coeffs


def _kernel_gcd(items: list[tuple[ZnElem, Word]], base: Base) -> tuple[ZnElem, Word]:
    """Additive gcd of kernel values, with the word realizing it."""
    P = max(z.p for z, _ in items)
    nums = [z.l * base.n ** (P - z.p) for z, _ in items]
    g, coeffs = _xgcd_list(nums)
    word = tuple((w, x) for x, (_, w) in zip(coeffs, items) if x)
    return ZnElem(g, P, base), word


def classify_subgroup(gens: list[BsElem]) -> SubgroupClass:
    """Classify ``<gens>`` as infinite cyclic (or trivial) versus finite index."""
    if not gens:
        raise PreconditionError("classify_subgroup needs at least one generator")
    base = gens[0].base
    for g in gens:
        if g.base != base:
            raise BaseMismatch("generators over different n")
    cs = [g.c for g in gens]
    if all(c == 0 for c in cs):
        items = [(g.gamma, ((i, 1),)) for i, g in enumerate(gens)]
        delta, word = _kernel_gcd(items, base)
        return SubgroupClass("cyclic", generator=BsElem(delta, 0), generator_word=word)

    k, xs = _xgcd_list(cs)
    h_word = tuple((i, x) for i, x in enumerate(xs) if x)
    h = evaluate_product(h_word, gens, base)
    assert h.c == k
    residues = []
    for i, g in enumerate(gens):
        m = g.c // k
        u = bs_mul(g, bs_pow(h, -m))
        if not u.gamma.is_zero():
            residues.append((u.gamma, ((i, 1), (h_word, -m))))
    if not residues:
        return SubgroupClass("cyclic", generator=h, generator_word=h_word)
    delta, word = _kernel_gcd(residues, base)
    return SubgroupClass(
        "finite_index", t_part=h, kernel_gen=BsElem(delta, 0),
        t_word=h_word, kernel_word=word,
    )


# ---------------------------------------------------------------- text

def format_element(g: BsElem) -> str:
    return f"({format_zn(g.gamma)}; {g.c})"


_INT_RE = re.compile(r"\s*([+-]?\d+)\s*$")


def parse_element(text: str, base: Base) -> BsElem:
    """Parse ``(gamma; c)``."""
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not s.startswith("("):
        raise ParseError("expected '('", lead, text)
    if not s.endswith(")"):
        raise ParseError("expected ')'", lead + len(s), text)
    inner = s[1:-1]
    if inner.count(";") != 1:
        raise ParseError("expected exactly one ';' inside (gamma; c)", lead + 1, text)
    left, right = inner.split(";")
    gamma = parse_zn(left, base, offset=lead + 1, source=text)
    m = _INT_RE.match(right)
    if not m:
        skip = len(right) - len(right.lstrip())
        raise ParseError(f"malformed integer {right.strip()!r}", lead + 2 + len(left) + skip, text)
    return BsElem(gamma, int(m.group(1)))
