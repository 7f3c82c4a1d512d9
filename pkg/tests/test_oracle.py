import random

import pytest

from bsfix.errors import PreconditionError, UseKernelDescriptor
from bsfix.group import bs_from_word, element
from bsfix.morphisms import TypeII, affine, apply, compose, identity_morphism
from bsfix.oracle import (
    ScanBox,
    oracle_divisor_scan,
    oracle_fixed_scan,
    oracle_lattice_member,
    oracle_stab_scan,
    oracle_word_differential,
    random_morphism,
    random_word,
)
from bsfix.ring import Base

B2 = Base(2)


def test_word_differential_is_deterministic():
    r1 = oracle_word_differential(200, 12, Base(6), seed=5)
    r2 = oracle_word_differential(200, 12, Base(6), seed=5)
    assert r1 == r2
    assert r1["mismatches"] == [] and r1["checked"] == 200


def test_random_word_respects_seed_and_length():
    w1 = [random_word(random.Random(9), 8) for _ in range(3)]
    w2 = [random_word(random.Random(9), 8) for _ in range(3)]
    assert w1 == w2
    assert all(len(w.split()) <= 8 for w in w1)
    assert bs_from_word("", B2).is_identity()


def test_word_differential_rejects_bad_arguments():
    with pytest.raises(PreconditionError):
        oracle_word_differential(0, 5, B2, 1)


def test_fixed_scan_grows_with_box():
    f = affine(3, 1, B2)
    small = oracle_fixed_scan(f, ScanBox(c_bound=2))
    large = oracle_fixed_scan(f, ScanBox(c_bound=5))
    assert set(small) <= set(large)
    assert all(apply(f, x) == x for x in large)
    assert [x.c for x in large] == sorted(x.c for x in large)


def test_fixed_scan_refuses_translations():
    with pytest.raises(UseKernelDescriptor):
        oracle_fixed_scan(affine(1, 3, B2), ScanBox())
    with pytest.raises(PreconditionError):
        ScanBox(c_bound=0)


def test_type_ii_scan_stays_in_image():
    u = element(3, 1, B2)
    hits = oracle_fixed_scan(TypeII(u), ScanBox(c_bound=2))
    assert hits == [u**-2, u**-1, u**0, u, u**2]
    # with c = 2 the map sends u to u**2, leaving only the identity
    assert oracle_fixed_scan(TypeII(element(3, 2, B2)), ScanBox(c_bound=4)) == [element(0, 0, B2)]


def test_stab_scan():
    g = element(1, 1, B2)
    hits = oracle_stab_scan(g, ScanBox(1, 2, True))
    assert all(apply(f, g) == g for f in hits)
    assert identity_morphism(B2) in hits
    no_sign = oracle_stab_scan(g, ScanBox(1, 2, False))
    assert set(no_sign) <= set(hits) and len(no_sign) < len(hits)
    with pytest.raises(UseKernelDescriptor):
        oracle_stab_scan(element(4, 0, B2), ScanBox())
    with pytest.raises(PreconditionError):
        oracle_stab_scan(element(0, 0, B2), ScanBox())


def test_lattice_member():
    f, h = affine(2, -1, B2), affine(-1, 2, B2)
    target = compose(compose(f, f), h)
    x = oracle_lattice_member(target, [f, h], 3)
    assert x is not None and sum(map(abs, x)) == 3
    assert oracle_lattice_member(affine(2, 0, B2), [f, h], 3) is None
    assert oracle_lattice_member(identity_morphism(B2), [], 1) == []
    with pytest.raises(PreconditionError):
        oracle_lattice_member(affine(3, 0, B2), [f], 2)
    with pytest.raises(PreconditionError):
        oracle_lattice_member(f, [f], 0)


def test_divisor_scan():
    f = affine(3, 1, B2)  # fixes (-1/2, 1), so c = 1 already works
    assert oracle_divisor_scan(f, 12) == 1
    g = affine(5, 1, Base(10))  # kappa = -1/36, needs 10**c = 1 mod 9
    assert oracle_divisor_scan(g, 6) == 1


def test_random_morphism_kinds():
    rng = random.Random(1)
    for kind in ("automorphism", "type_i", "type_ii"):
        assert random_morphism(rng, B2, kind).kind == kind
    with pytest.raises(ValueError):
        random_morphism(rng, B2, "other")


def test_word_matrix_matches_naive_product():
    from fractions import Fraction as F

    from bsfix.group import GL2
    from bsfix.oracle import _word_matrix

    b = Base(6)
    gens = {"a": GL2(F(1), F(0), F(1), F(1)), "t": GL2(F(6), F(0), F(0), F(1))}
    gens["A"] = GL2(F(1), F(0), F(-1), F(1))
    gens["T"] = GL2(F(1, 6), F(0), F(0), F(1))
    rng = random.Random(2)
    for _ in range(50):
        letters = [rng.choice("aAtT") for _ in range(rng.randint(0, 15))]
        ref = GL2(F(1), F(0), F(0), F(1))
        for x in letters:
            ref = ref @ gens[x]
        assert _word_matrix(" ".join(letters), b) == ref
