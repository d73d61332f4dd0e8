import random

import pytest

from torlink.algebra import (
    AlgebraElement,
    b_lift_word,
    enumerate_basis,
    from_word,
    ideal_generator,
    monomial_element,
    unit,
)
from torlink.scalars import U, V, ZVAR, sint, svar, xvar, yvar
from torlink.trace import TraceParams, symbolic_params, trace, trace_of_word


u, v, z = svar(U), svar(V), svar(ZVAR)
y0 = svar(yvar(0))


def rand_elem(rng, n, d, nterms=2):
    basis = enumerate_basis(n, d)
    out = AlgebraElement(n, d, {})
    for _ in range(nterms):
        out = out + monomial_element(n, d, rng.choice(basis), sint(rng.randint(1, 2)))
    return out


def test_unit_trace():
    for n, d in [(1, 1), (2, 2), (3, 3)]:
        assert trace(unit(n, d)).is_one()


def test_base_rules():
    assert trace(from_word(2, 1, [("g", 1, 1)])) == z
    assert trace(from_word(1, 1, [("b", 1, 1)])) == y0
    for d in (2, 3):
        for m in range(d):
            expect = sint(1) if m == 0 else svar(xvar(m))
            assert trace(from_word(1, d, [("t", 1, m)])) == expect
            assert trace(from_word(1, d, [("t", 1, m), ("b", 1, 1)])) == svar(yvar(m))


def test_positive_loop_lift_trace():
    # the positive lift of the level-2 flip differs from the conjugated loop
    got = trace(from_word(2, 1, [("g", 1, 1), ("b", 1, 1), ("g", 1, 1)]))
    assert got == y0 + (u - u ** -1) * z * y0


def test_classical_cup_trace():
    got = trace(ideal_generator("h12", 3, 1))
    want = (u * u + sint(1)) * (u * z) ** 2 + (u * u + sint(2)) * u * z + sint(1)
    assert got == want


def test_loop_cup_trace():
    got = trace(ideal_generator("hB", 2, 1))
    want = (
        u ** 2 * v ** 2 * y0 ** 2
        + (u * v + u ** 3 * v ** 3) * z * y0
        + (v + u * u * v) * y0
        + (u + u ** 3 * v * v) * z
        + sint(1)
    )
    assert got == want


def test_mixed_word_traces():
    h12 = ideal_generator("h12", 3, 1)
    one = sint(1)
    got = trace(from_word(3, 1, [("b", 1, 1), ("g", 1, 1), ("b", 1, 1)]) * h12)
    want = v ** -1 * (
        u * (one + u * z + u ** 3 * z) * (v * y0 ** 2 + u * (v + (v * v - one) * y0) * z)
    )
    assert got == want
    got = trace(
        from_word(
            3, 1, [("b", 1, 1), ("g", 1, 1), ("b", 1, 1), ("g", 2, 1), ("g", 1, 1), ("b", 1, 1)]
        )
        * h12
    )
    want = v ** -2 * (
        u ** 3
        * (
            v * v * y0 ** 3
            + u * (sint(2) + u * u) * v * y0 * (v + (v * v - one) * y0) * z
            + u * u * (one + u * u) * (y0 + v * (v * v - one) * (one + v * y0)) * z ** 2
        )
    )
    assert got == want


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2)])
def test_stabilization_rules(n, d):
    rng = random.Random(41)
    basis = enumerate_basis(n, d)
    for _ in range(4):
        mono = rng.choice(basis)
        embedded = monomial_element(n + 1, d, (mono[0] + (0,), mono[1] + (n + 1,)))
        base = trace(monomial_element(n, d, mono))
        assert trace(embedded.mul_word([("g", n, 1)])) == z * base
        for m in range(d):
            got = trace(embedded.mul_word([("t", n + 1, m)]))
            expect = (sint(1) if m == 0 else svar(xvar(m))) * base
            assert got == expect
            letters = b_lift_word(n + 1) + ([("t", n + 1, m)] if m else [])
            assert trace(embedded.mul_word(letters)) == svar(yvar(m)) * base


def test_conjugation_invariance():
    # the sharpest certification of the peel recursion: the functional it
    # defines must be a class function, checked on 200+ random pairs
    rng = random.Random(7)
    plan = [
        ((1, 1), 20), ((2, 1), 40), ((3, 1), 40),
        ((1, 3), 20), ((2, 2), 40), ((3, 2), 20),
        ((2, 3), 20), ((3, 3), 12),
    ]
    total = 0
    for (n, d), count in plan:
        for _ in range(count):
            a = rand_elem(rng, n, d)
            b = rand_elem(rng, n, d)
            assert trace(a * b) == trace(b * a), (n, d)
            total += 1
    assert total >= 200


def test_linearity():
    rng = random.Random(9)
    a = rand_elem(rng, 2, 2)
    b = rand_elem(rng, 2, 2)
    assert trace(a + b) == trace(a) + trace(b)
    assert trace(a.scale(u)) == u * trace(a)


def test_trace_of_word_matches_element_route():
    letters = [("g", 1, 1), ("b", 1, 1), ("g", 1, 1)]
    assert trace_of_word(letters, 2, 1) == trace(from_word(2, 1, letters))


def test_bound_parameters():
    one = sint(1)
    params = TraceParams(d=1, z=sint(-1) / u, x=(one,), y=(v,))
    got = trace(ideal_generator("hB", 2, 1), params)
    assert got.is_zero()
    # partial binding keeps the remaining symbols
    sym = symbolic_params(2)
    assert sym.is_symbolic()


def test_param_validation():
    with pytest.raises(ValueError):
        TraceParams(d=1, z=z, x=(u,), y=(y0,))
    with pytest.raises(ValueError):
        TraceParams(d=2, z=z, x=(sint(1),), y=(y0,))
