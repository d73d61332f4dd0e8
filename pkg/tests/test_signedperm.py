import math

from torlink.oracle import bfs_coxeter
from torlink.signedperm import (
    all_windows,
    compose,
    factor_letters,
    gen_r1,
    gen_s,
    identity,
    inverse,
    is_valid,
    length,
    lift_factor,
    parse_window,
    reduced_word,
    render_window,
    right_descent,
    top_factor,
)


def test_identity_and_generators():
    assert length(identity(3)) == 0
    assert length(gen_r1(2)) == 1
    assert compose(identity(3), gen_s(2, 3)) == gen_s(2, 3)
    assert compose(gen_s(1, 2), gen_s(1, 2)) == identity(2)


def test_braid_relation_projected():
    r1, s1 = gen_r1(2), gen_s(1, 2)
    a = compose(compose(compose(r1, s1), r1), s1)
    b = compose(compose(compose(s1, r1), s1), r1)
    assert a == b


def test_group_sizes():
    for n in (1, 2, 3):
        windows = list(all_windows(n))
        assert len(windows) == 2 ** n * math.factorial(n)
        assert all(is_valid(w) for w in windows)


def test_length_against_bfs():
    for n in (1, 2, 3):
        dist = bfs_coxeter(n)
        assert len(dist) == 2 ** n * math.factorial(n)
        for w, expected in dist.items():
            assert length(w) == expected, w


def test_longest_element_of_rank_two():
    dist = bfs_coxeter(2)
    longest = max(dist.values())
    assert longest == 4
    assert [w for w, l in dist.items() if l == longest] == [(-1, -2)]
    assert length((-2, -1)) == 3


def test_descents_match_length_drops():
    for n in (2, 3):
        gens = [("r", 1, gen_r1(n))] + [("s", i, gen_s(i, n)) for i in range(1, n)]
        for w in all_windows(n):
            for kind, idx, g in gens:
                drop = length(compose(w, g)) == length(w) - 1
                assert right_descent(w, (kind, idx)) == drop, (w, kind, idx)


def test_top_factor_bijection_and_lengths():
    for n in (1, 2, 3):
        seen = set()
        for w in all_windows(n):
            factor, rest = top_factor(w)
            assert compose(rest, lift_factor(factor)) == w
            assert rest[-1] == n
            assert length(w) == length(rest) + factor.word_length()
            seen.add((rest, factor.p, factor.signed))
        assert len(seen) == 2 ** n * math.factorial(n)


def test_factor_letters_rebuild_lift():
    for n in (2, 3):
        for w in all_windows(n):
            factor, _ = top_factor(w)
            cur = identity(n)
            for kind, i in factor_letters(factor):
                g = gen_r1(n) if kind == "r" else gen_s(i, n)
                cur = compose(cur, g)
            assert cur == lift_factor(factor)


def test_reduced_words():
    for n in (1, 2, 3):
        for w in all_windows(n):
            word = reduced_word(w)
            assert len(word) == length(w)
            cur = identity(n)
            for kind, i in word:
                g = gen_r1(n) if kind == "r" else gen_s(i, n)
                cur = compose(cur, g)
            assert cur == w


def test_inverse():
    for w in all_windows(3):
        assert compose(w, inverse(w)) == identity(3)


def test_window_text():
    w = parse_window("[2,-1,3]")
    assert w == (2, -1, 3)
    assert render_window(w) == "[2,-1,3]"
