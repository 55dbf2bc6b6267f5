import random

from coinctrace import (
    Alphabet,
    DecideConfig,
    Endomorphism,
    GroupRingElement,
    fixed_point_raw,
    fixed_point_trace,
    match_traces,
    nielsen_bound,
    raw_trace,
    raw_trace_delta,
    reduce_trace,
)

from conftest import random_endo


def circle_pair(n, m):
    ab = Alphabet(["a"])
    a = ab.gen(0)
    return Endomorphism(ab, [a ** n]), Endomorphism(ab, [a ** m])


def test_circle_raw_trace():
    # phi(a)=a^n, psi(a)=a^m, n>m: 1 - (1+...+a^(n-1)) - a^(n-m)
    #                              + (a^(n-m)+...+a^(n-1)) = -(a+...+a^(n-m))
    phi, psi = circle_pair(3, 1)
    ab = phi.alphabet
    a = ab.gen(0)
    expected = GroupRingElement.zero(ab) - GroupRingElement.from_word(a) - GroupRingElement.from_word(a * a)
    assert raw_trace(phi, psi) == expected


def test_circle_nielsen_numbers():
    for n in range(7):
        for m in range(n + 1):
            phi, psi = circle_pair(n, m)
            t = reduce_trace(raw_trace(phi, psi), phi, psi)
            assert t.resolved
            assert nielsen_bound(t) == (n - m, n - m)


def test_circle_equal_degrees_cancel():
    for n in range(7):
        phi, psi = circle_pair(n, n)
        raw = raw_trace(phi, psi)
        assert raw.coefficient_sum() == 0
        assert raw == GroupRingElement.zero(phi.alphabet)


def test_example_trace_and_nielsen(example2):
    phi, psi = example2
    t = reduce_trace(raw_trace(phi, psi), phi, psi)
    assert t.resolved
    assert t.coefficients() == [-3, -1, -1]
    assert [str(w) for _, w in t.terms] == ["a", "a^2", "a c b^-1"]
    assert nielsen_bound(t) == (3, 3)


def test_delta_form_matches_by_class(example2):
    phi, psi = example2
    t1 = reduce_trace(raw_trace(phi, psi), phi, psi)
    t2 = reduce_trace(raw_trace_delta(phi, psi), phi, psi)
    assert match_traces(t1, t2, phi, psi) == "match"


def test_delta_form_matches_by_class_random(rank3):
    rng = random.Random(606)
    cfg = DecideConfig()
    checked = 0
    for _ in range(15):
        phi = random_endo(rng, rank3, 3, min_len=1)
        psi = random_endo(rng, rank3, 3, min_len=1)
        t1 = reduce_trace(raw_trace(phi, psi), phi, psi, cfg)
        t2 = reduce_trace(raw_trace_delta(phi, psi), phi, psi, cfg)
        verdict = match_traces(t1, t2, phi, psi, cfg)
        assert verdict != "mismatch"
        if verdict == "match":
            checked += 1
    assert checked >= 12


def test_fixed_point_specialization_is_literal(rank3):
    # with psi the identity the coincidence formula collapses to
    # 1 - sum d phi(a) exactly, term by term
    rng = random.Random(607)
    ident = Endomorphism.identity(rank3)
    for _ in range(50):
        phi = random_endo(rng, rank3, 4)
        assert raw_trace(phi, ident) == fixed_point_raw(phi)


def test_fixed_point_trace_wrapper(rank3):
    phi = Endomorphism.from_strings(rank3, "b", "c", "a b")
    ident = Endomorphism.identity(rank3)
    t1 = fixed_point_trace(phi)
    t2 = reduce_trace(fixed_point_raw(phi), phi, ident)
    assert t1 == t2


def test_reduce_trace_merges_equivalent_terms(example2):
    phi, psi = example2
    raw = raw_trace(phi, psi)
    # the raw element has five terms; merging folds them into three classes
    assert len(raw.sorted_terms()) == 5
    t = reduce_trace(raw, phi, psi)
    assert len(t.terms) == 3


def test_reduce_trace_drops_zero_sum_classes(rank3):
    phi, psi = circle_pair(2, 2)
    t = reduce_trace(raw_trace(phi, psi), phi, psi)
    assert t.terms == ()
    assert nielsen_bound(t) == (0, 0)
    assert str(t).startswith("0")


def test_nielsen_bound_with_unknown_pairs(example2):
    phi, psi = example2
    # crippled search cannot certify the merges; the bounds must bracket 3
    cfg = DecideConfig(max_witness_len=0, nilpotent_level=1)
    t = reduce_trace(raw_trace(phi, psi), phi, psi, cfg)
    lower, upper = nielsen_bound(t)
    assert not t.resolved
    assert lower <= 3 <= upper
    assert upper == len(t.terms)


def test_match_traces_detects_mismatch(example2, rank3):
    phi, psi = example2
    t1 = reduce_trace(raw_trace(phi, psi), phi, psi)
    t2 = reduce_trace(fixed_point_raw(Endomorphism.from_strings(rank3, "b", "c", "a")), phi, psi)
    assert match_traces(t1, t2, phi, psi) == "mismatch"


def test_trace_str_format(example2):
    phi, psi = example2
    t = reduce_trace(raw_trace(phi, psi), phi, psi)
    assert str(t) == "-1·[a] -3·[a^2] -1·[a c b^-1]  (resolved)"
