import random

import pytest

from torlink.cyclic import SupportProfile
from torlink.invariants import (
    BraidSyntaxError,
    InvariantSpec,
    epsilon,
    evaluate,
    parse_braid,
    random_word,
    render_braid,
    verify_markov,
    verify_skein,
)
from torlink.scalars import U, V, sint, svar, yvar


u, v = svar(U), svar(V)


def test_parse_and_render():
    w = parse_braid("s1 s2^-1 r1", 3, 1)
    assert w.letters == (("s", 1, 1), ("s", 2, -1), ("r", 1, 1))
    assert render_braid(w) == "s1 s2^-1 r1"
    w = parse_braid("t1^2 s1", 2, 3)
    assert w.letters == (("t", 1, 2), ("s", 1, 1))
    assert epsilon(parse_braid("s1 s1 s1^-1 r1", 2, 1)) == 1


def test_parse_errors():
    with pytest.raises(BraidSyntaxError):
        parse_braid("s3", 3, 1)
    with pytest.raises(BraidSyntaxError):
        parse_braid("w1", 2, 1)
    with pytest.raises(BraidSyntaxError):
        parse_braid("t1^2", 2, 1)  # framing letters need modulus > 1
    with pytest.raises(BraidSyntaxError):
        parse_braid("r2", 2, 1)


def test_unknot_values():
    assert evaluate(parse_braid("", 1, 1), InvariantSpec(kind="vb")).is_one()
    assert evaluate(parse_braid("", 1, 1), InvariantSpec(kind="pb")).is_one()


def test_loop_value():
    got = evaluate(parse_braid("r1", 1, 1), InvariantSpec(kind="pb"))
    assert got == svar(yvar(0))


def test_spec_validation():
    with pytest.raises(ValueError):
        evaluate(parse_braid("", 1, 1), InvariantSpec(kind="pb", d=2))
    with pytest.raises(ValueError):
        evaluate(
            parse_braid("", 1, 2),
            InvariantSpec(kind="rhob", d=2, support=frozenset({1})),
        )


def test_degenerations_at_d1():
    rng = random.Random(11)
    xb = InvariantSpec(kind="xb", d=1, support=frozenset({0}))
    rhob = InvariantSpec(kind="rhob", d=1, support=frozenset({0}))
    pb = InvariantSpec(kind="pb")
    vb = InvariantSpec(kind="vb")
    for _ in range(6):
        n = rng.randint(1, 3)
        word = random_word(n, 1, rng.randint(0, 5), rng)
        assert evaluate(word, xb) == evaluate(word, pb), str(word)
        assert evaluate(word, rhob) == evaluate(word, vb), str(word)


@pytest.mark.parametrize(
    "kind,d,support",
    [
        ("pb", 1, None),
        ("vb", 1, None),
        ("xb", 2, frozenset({0, 1})),
        ("xb", 2, frozenset({0})),
        ("rhob", 2, frozenset({0})),
        ("rhob", 3, frozenset({0, 1})),
    ],
)
def test_skein_relations(kind, d, support):
    rng = random.Random(hash((kind, d)) & 0xFFFF)
    spec = InvariantSpec(kind=kind, d=d, support=support)
    for _ in range(3):
        n = rng.randint(2, 3)
        word = random_word(n, d, rng.randint(0, 4), rng)
        site = ("s", rng.randint(1, n - 1), rng.randint(0, len(word.letters)))
        assert all(ok for _, ok in verify_skein(spec, word, site)), str(word)
        site = ("r", rng.randint(1, n), rng.randint(0, len(word.letters)))
        assert all(ok for _, ok in verify_skein(spec, word, site)), str(word)


@pytest.mark.parametrize(
    "kind,d,support",
    [
        ("pb", 1, None),
        ("vb", 1, None),
        ("xb", 2, frozenset({1})),
        ("rhob", 2, frozenset({0, 1})),
    ],
)
def test_markov_moves(kind, d, support):
    rng = random.Random(hash((kind, d)) & 0xFFFF)
    spec = InvariantSpec(kind=kind, d=d, support=support)
    word = random_word(2, d, 3, rng)
    assert all(ok for _, ok in verify_markov(spec, word, trials=3, seed=5))


def test_profile_bound_invariant():
    prof = SupportProfile(
        d=2, sup1=frozenset({0}), sup2=frozenset({1}), supy3=frozenset({1})
    )
    spec = InvariantSpec(kind="xb", d=2, support=frozenset({0, 1}), profile=prof, branch=2)
    rng = random.Random(3)
    word = random_word(2, 2, 3, rng)
    assert all(ok for _, ok in verify_markov(spec, word, trials=2, seed=1))


def test_fixed_stabilization_examples():
    pb = InvariantSpec(kind="pb")
    assert evaluate(parse_braid("r1", 1, 1), pb) == evaluate(parse_braid("r1 s1", 2, 1), pb)
    rho = InvariantSpec(kind="rhob", d=2, support=frozenset({0}))
    assert evaluate(parse_braid("s1", 2, 2), rho) == evaluate(parse_braid("s1 s2", 3, 2), rho)
    vb = InvariantSpec(kind="vb")
    w = parse_braid("s1 s1 s1", 2, 1)
    conj = parse_braid("s1 s1 s1 s1 s1^-1", 2, 1)
    assert evaluate(w, vb) == evaluate(conj, vb)
