"""Brute-force verifiers, independent of the closed-form procedures.

Each scan works straight from the fixing equation or the matrix model and
never calls ``fix``/``stab_aut``; the test suite and ``bsn verify`` compare
the two routes.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import NotInZn, PreconditionError, UseKernelDescriptor
from .group import GL2, BsElem, bs_from_word, bs_to_matrix
from .morphisms import (
    Affine,
    Morphism,
    TypeII,
    apply,
    aut_inverse,
    compose,
    identity_morphism,
    is_automorphism,
)
from .ring import Base, ZnElem, divisors, in_zn, mu, zn_from_fraction, zn_unit_decompose

__all__ = [
    "ScanBox",
    "oracle_fixed_scan", "oracle_stab_scan", "oracle_lattice_member",
    "oracle_word_differential", "oracle_divisor_scan",
    "random_zn", "random_element", "random_unit", "random_morphism", "random_word",
]


@dataclass(frozen=True)
class ScanBox:
    c_bound: int = 3
    exp_bound: int = 3
    include_sign: bool = True

    def __post_init__(self):
        if self.c_bound < 1 or self.exp_bound < 1:
            raise PreconditionError("scan bounds must be >= 1")


def oracle_fixed_scan(f: Morphism, box: ScanBox) -> list[BsElem]:
    """All fixed elements with ``|c| <= box.c_bound``, sorted by ``c``."""
    base = f.base
    B = box.c_bound
    out = []
    if isinstance(f, Affine):
        if f.alpha == base.one():
            raise UseKernelDescriptor("alpha = 1 fixes infinitely many elements with c = 0")
        a = f.alpha.to_fraction()
        b = f.beta.to_fraction()
        for c in range(-B, B + 1):
            # (alpha - 1) gamma + beta mu(c) = 0 has exactly one rational solution
            gamma = -b * mu(c, base).to_fraction() / (a - 1)
            if in_zn(gamma, base):
                out.append(BsElem(zn_from_fraction(gamma, base), c))
        return out
    # any fixed x lies in the image <target>, so x = target**m with |m| <= |x.c| or x trivial
    seen = set()
    for m in range(-B, B + 1):
        x = f.target**m
        if abs(x.c) <= B and x not in seen and apply(f, x) == x:
            seen.add(x)
            out.append(x)
    return sorted(out, key=lambda x: x.c)


def _units_in_box(base: Base, box: ScanBox):
    signs = (1, -1) if box.include_sign else (1,)
    E = box.exp_bound
    for sign in signs:
        for exps in itertools.product(range(-E, E + 1), repeat=base.r):
            q = Fraction(sign)
            for p, e in zip(base.prime_list, exps):
                q *= Fraction(p) ** e
            yield q


def _morph_key(f: Affine):
    return (f.alpha.to_fraction(), f.beta.to_fraction())


def oracle_stab_scan(g: BsElem, box: ScanBox) -> list[Affine]:
    """Every automorphism with ``alpha`` in the unit box that fixes ``g``."""
    base = g.base
    if g.is_identity():
        raise PreconditionError("identity is fixed by every automorphism")
    if g.c == 0:
        raise UseKernelDescriptor("Stab((gamma, 0)) is all translations")
    ratio = g.gamma.to_fraction() / mu(g.c, base).to_fraction()
    out = []
    for a in _units_in_box(base, box):
        beta = -ratio * (a - 1)
        if in_zn(beta, base):
            out.append(Affine(zn_from_fraction(a, base), zn_from_fraction(beta, base)))
    return sorted(out, key=_morph_key)


def _unit_vector(alpha: ZnElem) -> tuple[int, ...]:
    u = zn_unit_decompose(alpha)
    return (0 if u.sign > 0 else 1,) + u.exps


@lru_cache(maxsize=64)
def _member_table(gens: tuple[Affine, ...], bound: int) -> dict:
    """Map unit vector -> shortest exponent vector over ``gens`` within ``bound``."""
    if not all(is_automorphism(f) for f in gens):
        raise PreconditionError("lattice membership needs automorphisms")
    k = len(gens)
    G = np.array([_unit_vector(f.alpha) for f in gens], dtype=np.int64)
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    combos = np.stack(np.meshgrid(*([axis] * k), indexing="ij"), axis=-1).reshape(-1, k)
    order = np.lexsort((np.arange(len(combos)), np.abs(combos).sum(axis=1)))
    combos = combos[order]
    vecs = combos @ G
    vecs[:, 0] %= 2
    table = {}
    for row, combo in zip(map(tuple, vecs.tolist()), combos.tolist()):
        table.setdefault(row, combo)
    return table


def oracle_lattice_member(target: Affine, gens: list[Affine], bound: int) -> list[int] | None:
    """Exponents ``x`` in ``[-bound, bound]`` with ``prod gens[i]**x[i] == target``, or None.

    Candidates are matched on ``alpha`` and then confirmed by composing the
    automorphisms exactly.
    """
    if bound < 1:
        raise PreconditionError("bound must be >= 1")
    if not is_automorphism(target):
        raise PreconditionError("lattice membership needs automorphisms")
    if not gens:
        return [] if target == identity_morphism(target.base) else None
    table = _member_table(tuple(gens), bound)
    combo = table.get(_unit_vector(target.alpha))
    if combo is None:
        return None
    prod = identity_morphism(target.base)
    for f, x in zip(gens, combo):
        prod = compose(prod, _compose_power(f if x >= 0 else aut_inverse(f), abs(x)))
    return list(combo) if prod == target else None


def _compose_power(f: Affine, k: int) -> Affine:
    """``f o f o ... o f`` (k times) by repeated squaring through ``compose``."""
    out = identity_morphism(f.base)
    while k:
        if k & 1:
            out = compose(out, f)
        f = compose(f, f)
        k >>= 1
    return out


def oracle_divisor_scan(f: Affine, c0: int) -> int:
    """Smallest divisor ``c`` of ``c0`` whose fixing equation has a solution in Z[1/n]."""
    base = f.base
    a = f.alpha.to_fraction()
    for c in divisors(c0):
        gamma = -f.beta.to_fraction() * mu(c, base).to_fraction() / (a - 1)
        if in_zn(gamma, base):
            return c
    raise NotInZn(f"no divisor of {c0} gives a fixed element")


# ---------------------------------------------------------------- random sampling

def random_zn(rng: random.Random, base: Base, lmax: int = 50, pmax: int = 2,
              nonzero: bool = False) -> ZnElem:
    while True:
        z = ZnElem(rng.randint(-lmax, lmax), rng.randint(0, pmax), base)
        if not (nonzero and z.is_zero()):
            return z


def random_element(rng: random.Random, base: Base, cmax: int = 4, lmax: int = 50,
                   pmax: int = 2, nonzero_c: bool = False) -> BsElem:
    while True:
        c = rng.randint(-cmax, cmax)
        if nonzero_c and c == 0:
            continue
        g = BsElem(random_zn(rng, base, lmax, pmax), c)
        if not g.is_identity():
            return g


def random_unit(rng: random.Random, base: Base, emax: int = 3) -> ZnElem:
    q = Fraction(rng.choice((1, -1)))
    for p in base.prime_list:
        q *= Fraction(p) ** rng.randint(-emax, emax)
    return zn_from_fraction(q, base)


def random_morphism(rng: random.Random, base: Base, kind: str, emax: int = 3) -> Morphism:
    """``kind`` is ``automorphism``, ``type_i`` (non-unit alpha) or ``type_ii``.

    ``emax`` bounds the prime exponents of a random unit ``alpha``.
    """
    if kind == "automorphism":
        return Affine(random_unit(rng, base, emax), random_zn(rng, base, lmax=20))
    if kind == "type_i":
        while True:
            f = Affine(random_zn(rng, base, lmax=20, nonzero=True), random_zn(rng, base, lmax=20))
            if not is_automorphism(f):
                return f
    if kind == "type_ii":
        return TypeII(BsElem(random_zn(rng, base, lmax=20), rng.randint(-2, 3)))
    raise ValueError(f"unknown morphism kind {kind!r}")


def random_word(rng: random.Random, max_len: int, max_exp: int = 3) -> str:
    tokens = []
    for _ in range(rng.randint(0, max_len)):
        letter = rng.choice("aAtT")
        if rng.random() < 0.3:
            tokens.append(f"{letter}^{rng.randint(-max_exp, max_exp)}")
        else:
            tokens.append(letter)
    return " ".join(tokens)


# ---------------------------------------------------------------- word differential

def _word_matrix(word: str, base: Base) -> GL2:
    """Evaluate a word by multiplying generator matrices, one letter at a time.

    The running product is kept as an integer matrix over a common
    denominator ``n**s``; right multiplication by a generator only touches
    one column.
    """
    n = base.n
    x, y, z, w, s = 1, 0, 0, 1, 0
    inverse = {"a": "A", "A": "a", "t": "T", "T": "t"}
    for tok in word.split():
        letter, _, exp = tok.partition("^")
        e = int(exp) if exp else 1
        if e < 0:
            letter, e = inverse[letter], -e
        for _ in range(e):
            if letter == "a":    # [[1, 0], [1, 1]]
                x, z = x + y, z + w
            elif letter == "A":  # [[1, 0], [-1, 1]]
                x, z = x - y, z - w
            elif letter == "t":  # [[n, 0], [0, 1]]
                x, z = x * n, z * n
            else:                # [[1/n, 0], [0, 1]]
                y, w, s = y * n, w * n, s + 1
    d = Fraction(n) ** s
    return GL2(x / d, y / d, z / d, w / d)


def oracle_word_differential(count: int, max_len: int, base: Base, seed: int) -> dict:
    """Fold random words with the group law and with 2x2 matrices; report mismatches."""
    if count < 1 or max_len < 0:
        raise PreconditionError("count must be >= 1 and max_len >= 0")
    rng = random.Random(seed)
    mismatches = []
    for _ in range(count):
        word = random_word(rng, max_len)
        fold = bs_to_matrix(bs_from_word(word, base))
        ref = _word_matrix(word, base)
        if fold != ref:
            mismatches.append({"word": word, "fold": str(fold.rows()), "matrix": str(ref.rows())})
    return {"n": base.n, "seed": seed, "checked": count, "mismatches": mismatches}
