from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bsfix.errors import BaseMismatch, NoMaximalRoot, ParseError, PreconditionError
from bsfix.group import (
    BsElem,
    bs_from_word,
    bs_inv,
    bs_kth_root,
    bs_mul,
    bs_pow,
    bs_root_closure,
    bs_to_matrix,
    classify_subgroup,
    element,
    evaluate_product,
    format_element,
    gen_a,
    gen_t,
    identity,
    parse_element,
    parse_word,
)
from bsfix.ring import Base
from conftest import bases, elem_strategy


def E(gamma, c, n=2):
    return element(gamma, c, Base(n))


def slow_pow(g, k):
    out = identity(g.base)
    step = g if k >= 0 else bs_inv(g)
    for _ in range(abs(k)):
        out = bs_mul(out, step)
    return out


# ---------------------------------------------------------------- law

def test_multiplication_law():
    assert E(1, 1) * E(3, 2) == E(7, 3)  # 1*4 + 3
    assert E(1, -1) * E(1, 0) == E(2, -1)
    assert E(1, 0) * E(1, -1) == E("3/2", -1)


@given(st.data())
def test_matrix_embedding_is_homomorphism(data):
    b = data.draw(bases)
    g, h = data.draw(elem_strategy(b)), data.draw(elem_strategy(b))
    assert bs_to_matrix(g * h) == bs_to_matrix(g) @ bs_to_matrix(h)


@given(st.data())
def test_group_axioms(data):
    b = data.draw(bases)
    g, h, k = (data.draw(elem_strategy(b)) for _ in range(3))
    e = identity(b)
    assert (g * h) * k == g * (h * k)
    assert g * e == g == e * g
    assert g * bs_inv(g) == e == bs_inv(g) * g


@given(st.data())
def test_closed_form_powers(data):
    b = data.draw(bases)
    g = data.draw(elem_strategy(b))
    k = data.draw(st.integers(-6, 6))
    assert bs_pow(g, k) == slow_pow(g, k)


def test_base_mismatch():
    with pytest.raises(BaseMismatch):
        E(1, 1, 2) * E(1, 1, 3)


# ---------------------------------------------------------------- words

def test_word_evaluation():
    b = Base(2)
    assert bs_from_word("t a T", b) == E("1/2", 0)
    assert bs_from_word("", b) == identity(b)
    assert bs_from_word("a^3 A^2", b) == gen_a(b)
    assert bs_from_word("t^-2 T^-1", b) == gen_t(b) ** -1
    # relation of the group under this multiplication law
    assert bs_from_word("T a t", b) == bs_from_word("a^2", b)


def test_parse_word_errors():
    assert parse_word("a^-2 T") == [("a", -2), ("t", -1)]
    with pytest.raises(ParseError) as e:
        parse_word("a b")
    assert e.value.position == 2
    with pytest.raises(ParseError):
        parse_word("a^")


# ---------------------------------------------------------------- roots

def test_root_examples():
    assert bs_kth_root(E(3, 2), 2) == E(1, 1)
    assert bs_kth_root(E(1, 2), 2) is None
    assert bs_kth_root(E(1, 1), 2) is None
    assert bs_kth_root(E(4, 0), 8) == E("1/2", 0)
    with pytest.raises(PreconditionError):
        bs_kth_root(E(1, 1), 0)


@given(st.data())
def test_roots_are_unique(data):
    b = data.draw(bases)
    g = data.draw(elem_strategy(b))
    k = data.draw(st.integers(1, 5))
    assert bs_kth_root(bs_pow(g, k), k) == g
    h = bs_kth_root(g, k)
    if h is not None:
        assert slow_pow(h, k) == g


def test_root_closure():
    h, m = bs_root_closure(E(21, 6))
    assert (h, m) == (E(1, 2), 3)
    # ratio gamma/mu(c) = -4, so h = (-4 * mu(-1), -1) = (2, -1)
    assert bs_root_closure(E(3, -2)) == (E(2, -1), 2)
    with pytest.raises(NoMaximalRoot):
        bs_root_closure(E(1, 0))


@given(st.data())
def test_root_closure_is_maximal(data):
    b = data.draw(bases)
    g = data.draw(elem_strategy(b, nonzero_c=True))
    h, m = bs_root_closure(g)
    assert bs_pow(h, m) == g
    for k in range(m + 1, abs(g.c) + 1):
        assert bs_kth_root(g, k) is None or abs(g.c) % k != 0


# ---------------------------------------------------------------- subgroups

@pytest.mark.parametrize(
    "gens, kind, expected",
    [
        ([E(1, 1)], "cyclic", E(1, 1)),
        ([E(1, 0), E("1/2", 0)], "cyclic", E("1/2", 0)),
        ([E(3, 2), E(1, 1)], "cyclic", E(1, 1)),
        ([E(0, 1), E(1, 0)], "finite_index", None),
    ],
)
def test_classify_examples(gens, kind, expected):
    cls = classify_subgroup(gens)
    assert cls.kind == kind
    if expected is not None:
        assert cls.generator == expected
    else:
        assert cls.t_part == E(0, 1) and cls.kernel_gen == E(1, 0)


@given(st.data())
def test_classify_witnesses(data):
    b = data.draw(bases)
    gens = data.draw(st.lists(elem_strategy(b), min_size=1, max_size=4))
    cls = classify_subgroup(gens)
    if cls.kind == "cyclic":
        assert evaluate_product(cls.generator_word, gens, b) == cls.generator
        h = cls.generator
        for g in gens:
            if h.is_identity():
                assert g.is_identity()
            elif h.c != 0:
                assert g.c % h.c == 0 and bs_pow(h, g.c // h.c) == g
            else:
                q = g.gamma.to_fraction() / h.gamma.to_fraction()
                assert g.c == 0 and q.denominator == 1
    else:
        assert evaluate_product(cls.t_word, gens, b) == cls.t_part
        assert evaluate_product(cls.kernel_word, gens, b) == cls.kernel_gen
        assert cls.kernel_gen.c == 0 and not cls.kernel_gen.is_identity()


def test_classify_rejects_empty():
    with pytest.raises(PreconditionError):
        classify_subgroup([])


# ---------------------------------------------------------------- text

def test_element_text():
    b = Base(6)
    g = element(Fraction(-5, 36), 3, b)
    assert format_element(g) == "(-5/36; 3)"
    assert parse_element(" ( -5/36 ;3 ) ", b) == g
    for bad, pos in (("1; 2)", 0), ("(1; 2", 5), ("(1, 2)", 1), ("(1; x)", 4)):
        with pytest.raises(ParseError) as e:
            parse_element(bad, b)
        assert e.value.position == pos, bad


@given(st.data())
def test_element_round_trip(data):
    b = data.draw(bases)
    g = data.draw(elem_strategy(b))
    assert parse_element(str(g), b) == g
    assert isinstance(g, BsElem)
