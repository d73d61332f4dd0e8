import pytest

from torlink.cyclic import (
    CyclicFunction,
    SupportProfile,
    admitted_y_values,
    build_solution,
    character,
    compatible_branches,
    const_one,
    convolve,
    delta,
    enumerate_profiles,
    fourier,
    functional_equations,
    inverse_fourier,
    parse_profile,
    pointwise,
    solution_params,
    verify_functional_system,
)
from torlink.scalars import U, V, ZVAR, sint, svar, xvar, yvar


u, v = svar(U), svar(V)


def symbolic_fn(d, kind):
    if kind == "x":
        return CyclicFunction(d, tuple(sint(1) if k == 0 else svar(xvar(k)) for k in range(d)))
    return CyclicFunction(d, tuple(svar(yvar(k)) for k in range(d)))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_convolution_identities(d):
    f = symbolic_fn(d, "y")
    assert convolve(delta(d, 0), f) == f
    assert convolve(delta(d, 1), delta(d, 2)) == delta(d, 3)
    assert convolve(const_one(d), const_one(d)) == const_one(d).scale(sint(d))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_fourier_identities(d):
    f = symbolic_fn(d, "y")
    assert fourier(delta(d, 0)) == const_one(d)
    assert fourier(const_one(d)) == delta(d, 0).scale(sint(d))
    ff = fourier(fourier(f))
    for k in range(d):
        assert ff(k) == sint(d) * f(-k)
    assert inverse_fourier(fourier(f)) == f
    g = symbolic_fn(d, "x")
    assert fourier(convolve(f, g)) == pointwise(fourier(f), fourier(g))


def test_characters():
    chi = character(3, 1)
    assert chi(0).is_one()
    assert chi(3).is_one()  # exponents are modulus-periodic
    # the transform of a character concentrates on its frequency
    hat = fourier(character(4, 1))
    assert hat(1) == sint(4)
    assert hat(0).is_zero() and hat(2).is_zero() and hat(3).is_zero()


def test_profile_validation():
    with pytest.raises(ValueError):
        SupportProfile(d=2, sup1=frozenset({0}), sup2=frozenset({0}))
    with pytest.raises(ValueError):
        SupportProfile(d=2, sup1=frozenset(), sup2=frozenset())
    with pytest.raises(ValueError):
        SupportProfile(d=2, sup1=frozenset({1}), sup2=frozenset())  # 0 missing
    with pytest.raises(ValueError):
        SupportProfile(d=2, sup1=frozenset({0, 1}), sup2=frozenset())  # y1/y2 missing
    SupportProfile(d=2, sup1=frozenset({0, 1}), sup2=frozenset(), supy1=frozenset({1}))


def test_profile_text_round_trip():
    prof = parse_profile("sup1=0,2;sup2=1;y1=2;y2=;y3=1;y4=", 3)
    assert prof.sup1 == frozenset({0, 2})
    assert prof.supy3 == frozenset({1})
    assert parse_profile(str(prof), 3) == prof


def test_profile_counts():
    assert len(enumerate_profiles(1)) == 2
    assert len(enumerate_profiles(2)) == 12
    assert len(enumerate_profiles(3)) == 72


def test_branch_compatibility():
    p1 = SupportProfile(d=1, sup1=frozenset({0}), sup2=frozenset())
    assert compatible_branches(p1) == (1, 2)
    p2 = SupportProfile(d=1, sup1=frozenset(), sup2=frozenset({0}))
    assert compatible_branches(p2) == (3, 4)
    with pytest.raises(ValueError):
        build_solution(p1, 3)


def test_classical_solution_values():
    one = sint(1)
    p1 = SupportProfile(d=1, sup1=frozenset({0}), sup2=frozenset())
    x, y, z = build_solution(p1, 1)
    assert (z, y(0)) == (sint(-1) / u, sint(-1) / v) and x(0).is_one()
    x, y, z = build_solution(p1, 2)
    assert (z, y(0)) == (sint(-1) / u, v)
    p2 = SupportProfile(d=1, sup1=frozenset(), sup2=frozenset({0}))
    x, y, z = build_solution(p2, 3)
    assert (z, y(0)) == (sint(-1) / (u * (one + u * u)), sint(-1) / v)
    x, y, z = build_solution(p2, 4)
    assert y(0) == (v * v - one) / ((one + u * u) * v)


def test_character_sum_solution_at_d2():
    prof = SupportProfile(d=2, sup1=frozenset(), sup2=frozenset({0, 1}))
    x, y, z = build_solution(prof, 4)
    assert x(1).is_zero()
    assert z == sint(-1) / (sint(2) * u * (u * u + sint(1)))
    assert x(0).is_one()


def test_functional_system_on_solutions_d2():
    for prof in enumerate_profiles(2):
        for br in compatible_branches(prof):
            x, y, z = build_solution(prof, br)
            report = verify_functional_system(x, y, z)
            assert all(ok for _, ok in report), (str(prof), br, report)


def test_functional_system_rejects_generic():
    d = 2
    x = symbolic_fn(d, "x")
    y = symbolic_fn(d, "y")
    eqs = functional_equations(x, y, svar(ZVAR))
    assert not eqs["sys4"].is_zero()
    assert not eqs["FA"].is_zero()


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize(
    "situation", ["sup1-nonzero", "sup2-nonzero", "sup1-zero", "sup2-zero"]
)
def test_admitted_value_sets(d, situation):
    ok, detail = admitted_y_values(d, situation)
    assert ok, detail


def test_solution_params_round():
    prof = SupportProfile(d=2, sup1=frozenset({0}), sup2=frozenset({1}), supy3=frozenset({1}))
    params = solution_params(prof, 2)
    assert params.d == 2
    assert params.x[0].is_one()


def test_functional_system_sampled_at_d4():
    # the functional route also certifies solutions at modulus 4
    samples = [
        (SupportProfile(d=4, sup1=frozenset({0, 2}), sup2=frozenset({1}),
                        supy1=frozenset({2}), supy3=frozenset({1})), 2),
        (SupportProfile(d=4, sup1=frozenset(), sup2=frozenset({0, 1, 2, 3}),
                        supy3=frozenset({1, 3}), supy4=frozenset({2})), 4),
        (SupportProfile(d=4, sup1=frozenset({0, 1, 2, 3}), sup2=frozenset(),
                        supy1=frozenset({1}), supy2=frozenset({2, 3})), 1),
    ]
    for prof, br in samples:
        x, y, z = build_solution(prof, br)
        report = verify_functional_system(x, y, z)
        assert all(ok for _, ok in report), (str(prof), br, report)
