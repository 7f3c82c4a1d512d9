"""Endomorphisms of BS(1, n).

Two disjoint kinds cover the whole monoid:

* ``Affine(alpha, beta)`` with ``alpha != 0`` sends ``a -> (alpha, 0)`` and
  ``t -> (beta, 1)``; it is an automorphism exactly when ``alpha`` is a unit
  of Z[1/n] (Type I otherwise).
* ``TypeII(target)`` kills ``a`` and sends ``t -> target``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BaseMismatch, NotAUnit, NotInvertible, ParseError, PreconditionError
from .group import BsElem, bs_pow, parse_element
from .ring import Base, ZnElem, format_zn, mu, parse_zn, zn_from_fraction, zn_unit_decompose

__all__ = [
    "Affine", "TypeII", "Morphism",
    "apply", "compose", "morph_pow", "aut_inverse", "inner", "is_automorphism",
    "identity_morphism", "format_morphism", "parse_morphism",
]


@dataclass(frozen=True)
class Affine:
    alpha: ZnElem
    beta: ZnElem

    def __post_init__(self):
        if self.alpha.is_zero():
            raise PreconditionError("alpha = 0 is not an affine endomorphism; use TypeII((beta, 1))")
        if self.alpha.base != self.beta.base:
            raise BaseMismatch("alpha and beta over different n")

    @property
    def base(self) -> Base:
        return self.alpha.base

    @property
    def kind(self) -> str:
        return "automorphism" if is_automorphism(self) else "type_i"

    def __call__(self, g: BsElem) -> BsElem:
        return apply(self, g)

    def __str__(self):
        return format_morphism(self)


@dataclass(frozen=True)
class TypeII:
    target: BsElem

    @property
    def base(self) -> Base:
        return self.target.base

    kind = "type_ii"

    def __call__(self, g: BsElem) -> BsElem:
        return apply(self, g)

    def __str__(self):
        return format_morphism(self)


Morphism = Affine | TypeII


def affine(alpha, beta, base: Base) -> Affine:
    return Affine(base(alpha), base(beta))


def identity_morphism(base: Base) -> Affine:
    return Affine(base.one(), base.zero())


def is_automorphism(f: Morphism) -> bool:
    if not isinstance(f, Affine):
        return False
    try:
        zn_unit_decompose(f.alpha)
    except NotAUnit:
        return False
    return True


def apply(f: Morphism, g: BsElem) -> BsElem:
    if f.base != g.base:
        raise BaseMismatch(f"morphism over n={f.base.n}, element over n={g.base.n}")
    if isinstance(f, Affine):
        return BsElem(f.alpha * g.gamma + f.beta * mu(g.c, g.base), g.c)
    return bs_pow(f.target, g.c)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``f o g``: apply ``g`` first."""
    if f.base != g.base:
        raise BaseMismatch("morphisms over different n")
    if isinstance(g, TypeII):
        # everything factors through t -> g.target
        return TypeII(apply(f, g.target))
    if isinstance(f, TypeII):
        # g fixes the t-exponent and f kills the kernel
        return f
    return Affine(f.alpha * g.alpha, f.alpha * g.beta + f.beta)


def _geometric_sum(alpha: ZnElem, k: int) -> ZnElem:
    """1 + alpha + ... + alpha^(k-1) for k >= 0."""
    if alpha.l == 1 and alpha.p == 0:
        return ZnElem(k, 0, alpha.base)
    q = alpha.to_fraction()
    return zn_from_fraction((q**k - 1) / (q - 1), alpha.base)


def morph_pow(f: Morphism, k: int) -> Morphism:
    if k < 0:
        if not is_automorphism(f):
            raise NotInvertible("negative powers need an automorphism")
        return morph_pow(aut_inverse(f), -k)
    if k == 0:
        return identity_morphism(f.base)
    if isinstance(f, Affine):
        return Affine(f.alpha**k, f.beta * _geometric_sum(f.alpha, k))
    # phi_u^k = phi_{u^(c^(k-1))}
    return TypeII(bs_pow(f.target, f.target.c ** (k - 1)))


def aut_inverse(f: Morphism) -> Affine:
    if not is_automorphism(f):
        raise NotInvertible(f"{format_morphism(f)} is not an automorphism")
    inv_alpha = zn_from_fraction(1 / f.alpha.to_fraction(), f.base)
    return Affine(inv_alpha, -(inv_alpha * f.beta))


def inner(g: BsElem) -> Affine:
    """Conjugation ``x -> g x g^-1``."""
    base = g.base
    scale = zn_from_fraction(Fraction(base.n) ** (-g.c), base)
    return Affine(scale, g.gamma * scale * (base.n - 1))


def format_morphism(f: Morphism) -> str:
    if isinstance(f, Affine):
        return f"[{format_zn(f.alpha)}; {format_zn(f.beta)}]"
    t = f.target
    return f"<<{format_zn(t.gamma)}; {t.c}>>"


def parse_morphism(text: str, base: Base) -> Morphism:
    """Parse ``[alpha; beta]`` or ``<<gamma; c>>``."""
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if s.startswith("<<"):
        if not s.endswith(">>"):
            raise ParseError("expected '>>'", lead + len(s), text)
        try:
            target = parse_element("(" + s[2:-2] + ")", base)
        except ParseError as e:
            # the synthetic "(" stands in for "<<"
            pos = None if e.position is None else e.position + lead + 1
            raise ParseError(e.detail, pos, text) from None
        return TypeII(target)
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError("expected ']'", lead + len(s), text)
        inner_text = s[1:-1]
        if inner_text.count(";") != 1:
            raise ParseError("expected exactly one ';' inside [alpha; beta]", lead + 1, text)
        left, right = inner_text.split(";")
        alpha = parse_zn(left, base, offset=lead + 1, source=text)
        beta = parse_zn(right, base, offset=lead + 2 + len(left), source=text)
        if alpha.is_zero():
            raise ParseError("alpha must be nonzero", lead + 1, text)
        return Affine(alpha, beta)
    raise ParseError("expected '[' or '<<'", lead, text)
