import itertools
import random

from coinctrace import (
    Alphabet,
    GroupRingElement,
    Letter,
    Word,
    delta_derivative,
    fox_derivative,
    ring_involution,
)

from conftest import random_word


def all_reduced_words(alphabet, max_len):
    letters = [Letter(g, s) for g in range(len(alphabet)) for s in (1, -1)]
    for n in range(max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            ok = all(
                not (combo[i].gen == combo[i + 1].gen and combo[i].sign == -combo[i + 1].sign)
                for i in range(n - 1)
            )
            if ok:
                yield Word(alphabet, combo)


def fundamental_identity_holds(alphabet, w):
    """sum_g d_g(w) * (g - 1) == w - 1 in the group ring."""
    total = GroupRingElement.zero(alphabet)
    for g in range(len(alphabet)):
        d = fox_derivative(g, w)
        total = total + d.right_mul(alphabet.gen(g)) - d
    return total == GroupRingElement.from_word(w.reduce()) - GroupRingElement.one(alphabet)


def foxxof_identity_holds(alphabet, g, w):
    """Delta_x w == x^-1 * i(d_x w) * w."""
    lhs = delta_derivative(g, w)
    rhs = (
        ring_involution(fox_derivative(g, w))
        .left_mul(alphabet.gen(g, -1))
        .right_mul(w.reduce())
    )
    return lhs == rhs


def test_fox_axioms(rank2):
    a, b = rank2.gen(0), rank2.gen(1)
    one = Word(rank2, ())
    assert fox_derivative(0, one) == GroupRingElement.zero(rank2)
    assert fox_derivative(0, a) == GroupRingElement.one(rank2)
    assert fox_derivative(0, b) == GroupRingElement.zero(rank2)
    assert fox_derivative(0, a.inverse()) == GroupRingElement.from_word(a.inverse(), -1)


def test_delta_axioms(rank2):
    a, b = rank2.gen(0), rank2.gen(1)
    one = Word(rank2, ())
    assert delta_derivative(0, one) == GroupRingElement.zero(rank2)
    assert delta_derivative(0, a) == GroupRingElement.one(rank2)
    assert delta_derivative(0, b) == GroupRingElement.zero(rank2)
    # forced by 0 = D(a a^-1) = (Da) a^-1 + D(a^-1)
    assert delta_derivative(0, a.inverse()) == GroupRingElement.from_word(a.inverse(), -1)
    # D(uv) = (Du)v + Dv reads right-to-left: D_a(ba) = 1 (the trailing a), D_a(ab) = b
    assert delta_derivative(0, b * a) == GroupRingElement.one(rank2)
    assert delta_derivative(0, a * b) == GroupRingElement.from_word(b)


def test_product_rules_random(rank3):
    rng = random.Random(404)
    for _ in range(200):
        u = random_word(rng, rank3, 6)
        v = random_word(rng, rank3, 6)
        g = rng.randrange(3)
        # d(uv) = du + u dv
        lhs = fox_derivative(g, u.concat(v))
        rhs = fox_derivative(g, u) + fox_derivative(g, v).left_mul(u.reduce())
        assert lhs == rhs
        # D(uv) = (Du) v + Dv
        lhs = delta_derivative(g, u.concat(v))
        rhs = delta_derivative(g, u).right_mul(v.reduce()) + delta_derivative(g, v)
        assert lhs == rhs


def test_derivative_of_reduced_equals_unreduced(rank2):
    rng = random.Random(405)
    for _ in range(200):
        w = random_word(rng, rank2, 8)
        for g in range(2):
            assert fox_derivative(g, w) == fox_derivative(g, w.reduce())
            assert delta_derivative(g, w) == delta_derivative(g, w.reduce())


def test_fundamental_identity_exhaustive(rank2):
    for w in all_reduced_words(rank2, 4):
        assert fundamental_identity_holds(rank2, w)


def test_foxxof_exhaustive(rank2):
    for w in all_reduced_words(rank2, 4):
        for g in range(2):
            assert foxxof_identity_holds(rank2, g, w)


def test_identities_random_rank3(rank3):
    rng = random.Random(406)
    for _ in range(200):
        w = random_word(rng, rank3, 10)
        assert fundamental_identity_holds(rank3, w)
        assert foxxof_identity_holds(rank3, rng.randrange(3), w)


def test_power_derivative(rank2):
    # d_a a^n = 1 + a + ... + a^(n-1)
    a = rank2.gen(0)
    expected = GroupRingElement.zero(rank2)
    for n in range(6):
        assert fox_derivative(0, a ** n) == expected
        expected = expected + GroupRingElement.from_word(a ** n)
