import random

import pytest

from coinctrace import (
    Alphabet,
    AlphabetMismatch,
    Endomorphism,
    GroupRingElement,
    Letter,
    Word,
    WordSyntaxError,
    endo_apply,
    parse_word,
    ring_involution,
    word_invert,
    word_multiply,
    word_reduce,
)

from conftest import random_endo, random_word


def test_alphabet_rejects_bad_names():
    with pytest.raises(ValueError):
        Alphabet([])
    with pytest.raises(ValueError):
        Alphabet(["a", "a"])
    with pytest.raises(ValueError):
        Alphabet(["a", "b^-1"])


def test_parse_and_str_round_trip(rank3):
    for text in ["1", "a", "a^-1", "a b^-1 c", "a^3", "b^-1 a^2 c^-1"]:
        w = parse_word(rank3, text)
        assert str(w) == text
        assert parse_word(rank3, str(w)) == w


def test_parse_keeps_letters_as_written(rank2):
    # parsing does not cancel; reduce() does
    w = parse_word(rank2, "a a^-1")
    assert len(w) == 2
    assert w.reduce() == Word(rank2, ())
    assert str(parse_word(rank2, "a b b^-1 a").reduce()) == "a^2"


def test_parse_errors_carry_columns(rank2):
    with pytest.raises(WordSyntaxError) as ei:
        parse_word(rank2, "a q")
    assert ei.value.column == 2
    with pytest.raises(WordSyntaxError):
        parse_word(rank2, "a^x")
    with pytest.raises(WordSyntaxError):
        parse_word(rank2, "")


def test_reduction_is_a_group(rank2):
    rng = random.Random(101)
    e = Word(rank2, ())
    for _ in range(300):
        u = random_word(rng, rank2, 8)
        v = random_word(rng, rank2, 8)
        w = random_word(rng, rank2, 8)
        assert (u * v) * w == u * (v * w)
        assert u * u.inverse() == e
        assert u.inverse().inverse() == u
        assert (u * v).inverse().reduce() == v.inverse() * u.inverse()
        # reduction is confluent: reducing the unreduced concat agrees
        assert u.concat(v).reduce() == u * v


def test_powers(rank2):
    a = rank2.gen(0)
    b = rank2.gen(1)
    w = a * b
    assert w ** 0 == Word(rank2, ())
    assert w ** 3 == w * w * w
    assert w ** -2 == (w * w).inverse()


def test_shortlex_order(rank2):
    words = ["1", "a", "a^-1", "b", "b^-1", "a^2", "a b", "a b^-1", "b a"]
    keys = [parse_word(rank2, t).shortlex_key() for t in words]
    assert keys == sorted(keys)


def test_exponent_sums(rank3):
    w = parse_word(rank3, "a b^-1 a c c a^-1")
    assert w.exponent_sums() == (1, -1, 2)


def test_alphabet_mismatch(rank2, rank3):
    with pytest.raises(AlphabetMismatch):
        rank2.gen(0) * rank3.gen(0)


def test_endomorphism_is_homomorphism(rank3):
    rng = random.Random(202)
    for _ in range(100):
        e = random_endo(rng, rank3, 4)
        u = random_word(rng, rank3, 6)
        v = random_word(rng, rank3, 6)
        assert e(u * v) == e(u) * e(v)
        assert e(u.inverse()) == e(u).inverse()


def test_endomorphism_application_respects_reduction(rank2):
    rng = random.Random(203)
    for _ in range(50):
        e1 = random_endo(rng, rank2, 3)
        e2 = random_endo(rng, rank2, 3)
        w = random_word(rng, rank2, 6)
        assert e1(e2(w)) == e1(e2(w.reduce()))


def test_identity_endomorphism(rank3):
    ident = Endomorphism.identity(rank3)
    assert ident.is_identity()
    w = parse_word(rank3, "a b^-1 c^2")
    assert ident(w) == w


def test_ring_arithmetic(rank2):
    rng = random.Random(303)
    zero = GroupRingElement.zero(rank2)
    for _ in range(100):
        def rand_elt():
            out = zero
            for _ in range(rng.randint(0, 4)):
                out = out + GroupRingElement.from_word(
                    random_word(rng, rank2, 5).reduce(), rng.randint(-3, 3)
                )
            return out

        x, y, z = rand_elt(), rand_elt(), rand_elt()
        assert x + y == y + x
        assert (x + y) + z == x + (y + z)
        assert x - x == zero
        assert x.scale(0) == zero
        assert x.scale(-1) + x == zero


def test_ring_involution_is_an_antihomomorphism(rank2):
    rng = random.Random(304)
    for _ in range(100):
        u = random_word(rng, rank2, 5).reduce()
        v = random_word(rng, rank2, 5).reduce()
        x = GroupRingElement.from_word(u, rng.randint(-3, 3))
        y = GroupRingElement.from_word(v, rng.randint(-3, 3))
        assert ring_involution(ring_involution(x + y)) == x + y
        xy = x.right_mul(v)
        assert ring_involution(xy) == ring_involution(x).left_mul(v.inverse())


def test_ring_str(rank2):
    a = rank2.gen(0)
    x = GroupRingElement.one(rank2) - GroupRingElement.from_word(a, 2)
    assert str(GroupRingElement.zero(rank2)) == "0"
    assert "2" in str(x)


def test_spec_named_helpers(rank2):
    u = parse_word(rank2, "a b")
    v = parse_word(rank2, "b^-1 a")
    assert word_multiply(u, v) == u * v
    assert word_invert(u) == u.inverse()
    assert word_reduce(u.concat(v)) == u * v
    e = Endomorphism.identity(rank2)
    assert endo_apply(e, u) == u


def test_coefficient_sum(rank2):
    x = GroupRingElement.one(rank2) - GroupRingElement.from_word(rank2.gen(0), 3)
    assert x.coefficient_sum() == -2
