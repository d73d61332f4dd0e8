import random

from torlink.oracle import (
    OracleBudgetExceeded,
    bfs_coxeter,
    certify_algebra,
    word_trace_oracle,
)
from torlink.trace import trace_of_word


def test_bfs_sizes():
    assert {n: len(bfs_coxeter(n)) for n in (1, 2, 3)} == {1: 2, 2: 8, 3: 48}


def test_oracle_base_cases():
    cases = [
        ([("g", 1, 1)], 2, 1),
        ([("b", 1, 1)], 1, 1),
        ([("b", 1, -1)], 1, 2),
        ([("g", 1, 1), ("b", 1, 1), ("g", 1, 1)], 2, 1),
        ([("b", 1, 1), ("g", 1, 1), ("b", 1, 1), ("g", 1, 1)], 2, 1),
        ([("t", 1, 1), ("g", 1, 1), ("t", 1, 1)], 2, 2),
        ([("g", 2, 1), ("g", 1, 1), ("b", 1, 1)], 3, 1),
        ([("g", 1, 1), ("b", 1, 1), ("g", 1, 1), ("g", 2, 1)], 3, 2),
    ]
    for letters, n, d in cases:
        assert word_trace_oracle(letters, n, d) == trace_of_word(letters, n, d), letters


def test_oracle_random_batch():
    rng = random.Random(424242)
    for _ in range(60):
        n = rng.randint(1, 3)
        d = rng.randint(1, 3)
        length = rng.randint(0, 7)
        letters = []
        for _ in range(length):
            kind = rng.choice(["g", "g", "b", "b"] + (["t"] if d > 1 else []))
            if kind == "g" and n >= 2:
                letters.append(("g", rng.randint(1, n - 1), rng.choice((1, -1))))
            elif kind == "b":
                letters.append(("b", 1, rng.choice((1, -1))))
            elif kind == "t":
                letters.append(("t", rng.randint(1, n), rng.randint(1, d - 1)))
        got = word_trace_oracle(letters, n, d, budget=400000)
        assert got == trace_of_word(letters, n, d), (n, d, letters)


def test_certify_small_algebras():
    for n, d in [(1, 1), (2, 1), (2, 2)]:
        report = certify_algebra(n, d, seed=7, samples=40)
        assert report.passed(), report.details
        assert report.basis_size == report.expected_size
