"""Harmonic analysis on Z/dZ over the exact scalar ring.

Supplies convolution, characters and the discrete Fourier transform used to
construct and certify the trace-factorization conditions: the parameter
choices for which the Markov trace kills the quotient ideal.  Everything is
computed with exact roots of unity; the Fourier conventions are

    fhat(k) = sum_y f(y) zeta^{-ky},    f(k) = (1/d) sum_m fhat(m) zeta^{mk},

so the double transform is d times the reflection f(-k).

The solution sets are parametrized by a ``SupportProfile``: a splitting
sup1 | sup2 of the support of xhat together with a labelling of where yhat
is allowed to be nonzero (y1/y2 on sup1 away from 0, weighted +-1; y3/y4 on
sup2 away from 0, weighted +-(u^2+1)) and a branch choice 1..4 fixing
yhat(0).  ``build_solution`` emits the exact parameter values and
``verify_functional_system`` recertifies them against the functional
equations, independently of the basis-exhaustive ideal check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .scalars import (
    Scalar,
    U,
    V,
    ZVAR,
    sint,
    srat,
    ssum,
    svar,
    szeta,
    yvar,
)
from .trace import TraceParams

__all__ = [
    "CyclicFunction",
    "SupportProfile",
    "convolve",
    "pointwise",
    "fourier",
    "inverse_fourier",
    "delta",
    "const_one",
    "character",
    "build_solution",
    "solution_params",
    "functional_equations",
    "verify_functional_system",
    "enumerate_profiles",
    "compatible_branches",
    "parse_profile",
    "pointwise_system",
    "admitted_y_values",
    "ADMITTED_VALUE_SETS",
]


@dataclass(frozen=True)
class CyclicFunction:
    """A function Z/dZ -> scalars, stored as its value vector."""

    d: int
    values: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.values) != self.d:
            raise ValueError("value vector must have length d")

    def __call__(self, k: int) -> Scalar:
        return self.values[k % self.d]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def scale(self, c: Scalar) -> "CyclicFunction":
        return CyclicFunction(self.d, tuple(c * v for v in self.values))

    def __add__(self, other: "CyclicFunction") -> "CyclicFunction":
        _match(self, other)
        return CyclicFunction(self.d, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "CyclicFunction") -> "CyclicFunction":
        _match(self, other)
        return CyclicFunction(self.d, tuple(a - b for a, b in zip(self.values, other.values)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicFunction):
            return NotImplemented
        return self.d == other.d and all(a == b for a, b in zip(self.values, other.values))


def _match(f: CyclicFunction, g: CyclicFunction) -> None:
    if f.d != g.d:
        raise ValueError(f"modulus mismatch: {f.d} vs {g.d}")


def delta(d: int, a: int = 0) -> CyclicFunction:
    vals = [sint(0)] * d
    vals[a % d] = sint(1)
    return CyclicFunction(d, tuple(vals))


def const_one(d: int) -> CyclicFunction:
    return CyclicFunction(d, (sint(1),) * d)


def character(d: int, m: int) -> CyclicFunction:
    """chi_m(t^k) = zeta_d^{mk}."""
    return CyclicFunction(d, tuple(szeta(d, m * k) for k in range(d)))


def convolve(f: CyclicFunction, g: CyclicFunction) -> CyclicFunction:
    _match(f, g)
    d = f.d
    vals = []
    for k in range(d):
        vals.append(ssum(f.values[y] * g.values[(k - y) % d] for y in range(d)))
    return CyclicFunction(d, tuple(vals))


def pointwise(f: CyclicFunction, g: CyclicFunction) -> CyclicFunction:
    _match(f, g)
    return CyclicFunction(f.d, tuple(a * b for a, b in zip(f.values, g.values)))


def fourier(f: CyclicFunction) -> CyclicFunction:
    d = f.d
    vals = []
    for k in range(d):
        vals.append(ssum(f.values[y] * szeta(d, (-k * y) % d) for y in range(d)))
    return CyclicFunction(d, tuple(vals))


def inverse_fourier(f: CyclicFunction) -> CyclicFunction:
    d = f.d
    inv = srat(1, d)
    vals = []
    for k in range(d):
        vals.append(inv * ssum(f.values[m] * szeta(d, (m * k) % d) for m in range(d)))
    return CyclicFunction(d, tuple(vals))


# ---------------------------------------------------------------------------
# support profiles and solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SupportProfile:
    """Support data for one trace-factorization solution family."""

    d: int
    sup1: frozenset[int]
    sup2: frozenset[int]
    supy1: frozenset[int] = frozenset()
    supy2: frozenset[int] = frozenset()
    supy3: frozenset[int] = frozenset()
    supy4: frozenset[int] = frozenset()

    def __post_init__(self):
        full = set(range(self.d))
        for name in ("sup1", "sup2", "supy1", "supy2", "supy3", "supy4"):
            if not getattr(self, name) <= full:
                raise ValueError(f"{name} must be a subset of Z/{self.d}")
        if self.sup1 & self.sup2:
            raise ValueError("sup1 and sup2 must be disjoint")
        if not (self.sup1 | self.sup2):
            raise ValueError("sup1 | sup2 must be nonempty")
        if 0 not in self.sup1 | self.sup2:
            raise ValueError("0 must belong to one of the supports")
        ys = [self.supy1, self.supy2, self.supy3, self.supy4]
        for i in range(4):
            for j in range(i + 1, 4):
                if ys[i] & ys[j]:
                    raise ValueError("y-support parts must be pairwise disjoint")
        if self.supy1 | self.supy2 != self.sup1 - {0}:
            raise ValueError("y1 and y2 must partition sup1 away from 0")
        if not (self.supy3 | self.supy4) <= self.sup2 - {0}:
            raise ValueError("y3 and y4 must sit inside sup2 away from 0")

    def zero_in_sup1(self) -> bool:
        return 0 in self.sup1

    def __str__(self) -> str:
        def j(s: frozenset[int]) -> str:
            return ",".join(str(x) for x in sorted(s))

        return (
            f"sup1={j(self.sup1)};sup2={j(self.sup2)};"
            f"y1={j(self.supy1)};y2={j(self.supy2)};y3={j(self.supy3)};y4={j(self.supy4)}"
        )


def parse_profile(text: str, d: int) -> SupportProfile:
    parts: dict[str, frozenset[int]] = {}
    for chunk in text.strip().split(";"):
        if not chunk:
            continue
        key, _, body = chunk.partition("=")
        vals = frozenset(int(x) % d for x in body.split(",") if x.strip() != "")
        parts[key.strip()] = vals
    return SupportProfile(
        d=d,
        sup1=parts.get("sup1", frozenset()),
        sup2=parts.get("sup2", frozenset()),
        supy1=parts.get("y1", frozenset()),
        supy2=parts.get("y2", frozenset()),
        supy3=parts.get("y3", frozenset()),
        supy4=parts.get("y4", frozenset()),
    )


def compatible_branches(profile: SupportProfile) -> tuple[int, int]:
    """Branches 1-2 need 0 in sup1; branches 3-4 need 0 in sup2."""
    return (1, 2) if profile.zero_in_sup1() else (3, 4)


def enumerate_profiles(d: int) -> list[SupportProfile]:
    """Every valid support profile, in lexicographic order."""
    out: list[SupportProfile] = []
    others = list(range(1, d))
    for zero_home in (1, 2):
        for assignment in iproduct((0, 1, 2), repeat=len(others)):
            sup1 = {0} if zero_home == 1 else set()
            sup2 = {0} if zero_home == 2 else set()
            for k, where in zip(others, assignment):
                if where == 1:
                    sup1.add(k)
                elif where == 2:
                    sup2.add(k)
            body1 = sorted(sup1 - {0})
            body2 = sorted(sup2 - {0})
            for colors1 in iproduct((1, 2), repeat=len(body1)):
                for colors2 in iproduct((3, 4, 0), repeat=len(body2)):
                    ys = {1: set(), 2: set(), 3: set(), 4: set()}
                    for k, c in zip(body1, colors1):
                        ys[c].add(k)
                    for k, c in zip(body2, colors2):
                        if c:
                            ys[c].add(k)
                    out.append(
                        SupportProfile(
                            d=d,
                            sup1=frozenset(sup1),
                            sup2=frozenset(sup2),
                            supy1=frozenset(ys[1]),
                            supy2=frozenset(ys[2]),
                            supy3=frozenset(ys[3]),
                            supy4=frozenset(ys[4]),
                        )
                    )
    return out


def _branch_zero_coeff(branch: int) -> Scalar:
    u, v = svar(U), svar(V)
    one = sint(1)
    if branch == 1:
        return sint(-1) / v
    if branch == 2:
        return v
    if branch == 3:
        return -(u * u + one) / v
    if branch == 4:
        return (v * v - one) / v
    raise ValueError("branch must be 1..4")


def build_solution(profile: SupportProfile, branch: int) -> tuple[CyclicFunction, CyclicFunction, Scalar]:
    """Exact (x, y, z) for the given support profile and branch.

    x_k is -z times the weighted character sums over sup1 (weight u) and sup2
    (weight u(u^2+1)); z makes x_0 = 1.  y_k is -uz times the weighted
    character sums over the y-supports with the branch coefficient on chi_0.
    """
    d = profile.d
    if branch in (1, 2) and not profile.zero_in_sup1():
        raise ValueError("branches 1-2 require 0 in sup1")
    if branch in (3, 4) and profile.zero_in_sup1():
        raise ValueError("branches 3-4 require 0 in sup2")
    u = svar(U)
    one = sint(1)
    weight2 = u * (u * u + one)
    zval = sint(-1) / (u * sint(len(profile.sup1)) + weight2 * sint(len(profile.sup2)))
    xvals = []
    for k in range(d):
        s1 = ssum(szeta(d, m * k) for m in sorted(profile.sup1))
        s2 = ssum(szeta(d, m * k) for m in sorted(profile.sup2))
        xvals.append(-zval * (u * s1 + weight2 * s2))
    c0 = _branch_zero_coeff(branch)
    uu1 = u * u + one
    yvals = []
    for k in range(d):
        body = c0
        body = body + ssum(szeta(d, m * k) for m in sorted(profile.supy1))
        body = body - ssum(szeta(d, m * k) for m in sorted(profile.supy2))
        body = body + uu1 * ssum(szeta(d, m * k) for m in sorted(profile.supy3))
        body = body - uu1 * ssum(szeta(d, m * k) for m in sorted(profile.supy4))
        yvals.append(-u * zval * body)
    return CyclicFunction(d, tuple(xvals)), CyclicFunction(d, tuple(yvals)), zval


def solution_params(profile: SupportProfile, branch: int) -> TraceParams:
    x, y, z = build_solution(profile, branch)
    return TraceParams(d=profile.d, z=z, x=x.values, y=y.values)


# ---------------------------------------------------------------------------
# the functional system
# ---------------------------------------------------------------------------

def _umuinv() -> Scalar:
    return svar(U) - svar(U, -1)


def _vmvinv() -> Scalar:
    return svar(V) - svar(V, -1)


def functional_equations(
    x: CyclicFunction, y: CyclicFunction, z: Scalar
) -> dict[str, CyclicFunction]:
    """All five functional equations, as cyclic functions that must vanish.

    The cubic equations carry the coefficients u(u^2+2) and u^2(u^2+1) z^2
    certified by the direct trace computation; the alternate convention with
    (u+1), (u+2) fails against the traces of the defining elements, and the
    lemma suite records that resolution.
    """
    d = x.d
    u, v = svar(U), svar(V)
    one_s = sint(1)
    du = sint(d)
    um, vm = _umuinv(), _vmvinv()
    onef = const_one(d)
    xx = convolve(x, x)
    xy = convolve(x, y)
    yy = convolve(y, y)
    x1 = convolve(x, onef)
    y1 = convolve(y, onef)
    xy1 = convolve(xy, onef)
    yy1 = convolve(yy, onef)
    zz = z * z

    fa1 = xx.scale(z / du) + xy1.scale(vm * z / (du * du))
    fa2 = convolve(x, yy).scale(one_s / (du * du)) + fa1.scale(um)
    fa3 = x.scale(zz) + y1.scale(vm * zz / du)
    fa4 = yy.scale(z / du) + fa3.scale(um)
    fa6 = fa3 + fa4.scale(um)
    fa = fa1 + (fa2 + fa3).scale(u) + (fa4 + fa4).scale(u * u) + fa6.scale(u ** 3)

    fb1 = (
        xy.scale(z / du)
        + y.scale(um * zz)
        + yy1.scale(vm * z / (du * du))
        + x1.scale(zz / du * vm * um)
        + y1.scale(zz / du * vm * vm * um)
    )
    fb2 = y.scale(zz) + x1.scale(zz / du * vm) + y1.scale(zz / du * vm * vm) + fb1.scale(um)
    fb4 = fb1 + fb2.scale(um)
    fb6 = (
        convolve(y, yy).scale(one_s / (du * du))
        + xy.scale(z / du * um)
        + yy1.scale(um * vm * z / (du * du))
        + (fb1 + fb4).scale(um)
    )
    fb = fb1 + (fb2 + fb2).scale(u) + (fb4 + fb4).scale(u * u) + fb6.scale(u ** 3)

    uu1 = u * u + one_s
    sys3 = (
        convolve(xx, onef)
        + yy1.scale(u * u * v * v)
        + xy1.scale(v * uu1)
        + x1.scale(du * z * u * (one_s + u * u * v * v))
        + y1.scale(du * z * (u ** 3 * v ** 3 + u * v))
    )
    cubic_mid = du * z * u * (u * u + sint(2))
    cubic_low = du * du * zz * u * u * uu1
    sys4 = convolve(x, xx) + xx.scale(cubic_mid) + x.scale(cubic_low)
    sys5 = convolve(xx, y) + xy.scale(cubic_mid) + y.scale(cubic_low)

    return {"FA": fa, "FB": fb, "sys3": sys3, "sys4": sys4, "sys5": sys5}


def verify_functional_system(
    x: CyclicFunction, y: CyclicFunction, z: Scalar
) -> list[tuple[str, bool]]:
    """Report (name, vanishes) for each functional equation."""
    eqs = functional_equations(x, y, z)
    return [(name, f.is_zero()) for name, f in eqs.items()]


# ---------------------------------------------------------------------------
# pointwise Fourier-domain analysis of the admitted yhat values
# ---------------------------------------------------------------------------

# univariate polynomials in the unknown Y = yhat(k): low-degree-first lists
_UniPoly = list[Scalar]


def _up_add(a: _UniPoly, b: _UniPoly) -> _UniPoly:
    out = [sint(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    while out and out[-1].is_zero():
        out.pop()
    return out


def _up_scale(a: _UniPoly, c: Scalar) -> _UniPoly:
    return [ci * c for ci in a] if not c.is_zero() else []


def _up_mul(a: _UniPoly, b: _UniPoly) -> _UniPoly:
    if not a or not b:
        return []
    out = [sint(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    while out and out[-1].is_zero():
        out.pop()
    return out


def _up_mod(a: _UniPoly, b: _UniPoly) -> _UniPoly:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] / lead
        shift = len(a) - 1 - db
        for j in range(len(b)):
            a[shift + j] = a[shift + j] - c * b[j]
        while a and a[-1].is_zero():
            a.pop()
    return a


def _up_gcd(a: _UniPoly, b: _UniPoly) -> _UniPoly:
    while b:
        a, b = b, _up_mod(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _up_div_root(a: _UniPoly, root: Scalar) -> _UniPoly | None:
    """Divide by (Y - root); None if the root does not divide exactly."""
    quot = [sint(0)] * (len(a) - 1)
    carry = sint(0)
    for i in range(len(a) - 1, 0, -1):
        carry = a[i] + carry * root if i < len(a) - 1 else a[i]
        quot[i - 1] = carry
    rem = a[0] + carry * root
    if not rem.is_zero():
        return None
    return quot


def pointwise_system(d: int, xhat: Scalar, at_zero: bool) -> list[_UniPoly]:
    """The Fourier-side equations at a single frequency, in the unknown yhat.

    Convolution turns into multiplication and the transform of the constant
    function is d at frequency 0 and vanishes elsewhere, so the functional
    equations become one polynomial system per frequency.  Returns the
    transformed quotient-condition polynomials [A, B] plus the loop-generator
    condition at frequency 0.
    """
    u, v = svar(U), svar(V)
    z = svar(ZVAR)
    one = sint(1)
    du = sint(d)
    um, vm = _umuinv(), _vmvinv()
    X = xhat
    hat1 = du if at_zero else sint(0)

    def c(s: Scalar) -> _UniPoly:
        return [s] if not s.is_zero() else []

    Y: _UniPoly = [sint(0), sint(1)]
    zz = z * z
    a1 = _up_add(c(z / du * X * X), _up_scale(Y, vm * z / (du * du) * X * hat1))
    a2 = _up_add(_up_scale(_up_mul(Y, Y), X / (du * du)), _up_scale(a1, um))
    a3 = _up_add(c(zz * X), _up_scale(Y, vm * zz / du * hat1))
    a4 = _up_add(_up_scale(_up_mul(Y, Y), z / du), _up_scale(a3, um))
    a6 = _up_add(a3, _up_scale(a4, um))
    a_total = a1
    a_total = _up_add(a_total, _up_scale(_up_add(a2, a3), u))
    a_total = _up_add(a_total, _up_scale(_up_add(a4, a4), u * u))
    a_total = _up_add(a_total, _up_scale(a6, u ** 3))

    b1 = _up_add(_up_scale(Y, z / du * X), _up_scale(Y, um * zz))
    b1 = _up_add(b1, _up_scale(_up_mul(Y, Y), vm * z / (du * du) * hat1))
    b1 = _up_add(b1, c(zz / du * vm * um * X * hat1))
    b1 = _up_add(b1, _up_scale(Y, zz / du * vm * vm * um * hat1))
    b2 = _up_add(_up_scale(Y, zz), c(zz / du * vm * X * hat1))
    b2 = _up_add(b2, _up_scale(Y, zz / du * vm * vm * hat1))
    b2 = _up_add(b2, _up_scale(b1, um))
    b4 = _up_add(b1, _up_scale(b2, um))
    yyy = _up_mul(Y, _up_mul(Y, Y))
    b6 = _up_add(_up_scale(yyy, one / (du * du)), _up_scale(Y, z / du * um * X))
    b6 = _up_add(b6, _up_scale(_up_mul(Y, Y), um * vm * z / (du * du) * hat1))
    b6 = _up_add(b6, _up_scale(_up_add(b1, b4), um))
    b_total = b1
    b_total = _up_add(b_total, _up_scale(_up_add(b2, b2), u))
    b_total = _up_add(b_total, _up_scale(_up_add(b4, b4), u * u))
    b_total = _up_add(b_total, _up_scale(b6, u ** 3))

    system = [a_total, b_total]
    if at_zero:
        uu1 = u * u + one
        rb = c(X * X)
        rb = _up_add(rb, _up_scale(_up_mul(Y, Y), u * u * v * v))
        rb = _up_add(rb, _up_scale(Y, v * uu1 * X))
        rb = _up_add(rb, c(du * z * u * (one + u * u * v * v) * X))
        rb = _up_add(rb, _up_scale(Y, du * z * (u ** 3 * v ** 3 + u * v)))
        system.append(rb)
    return system


def ADMITTED_VALUE_SETS(d: int) -> dict[str, tuple[Scalar, list[Scalar]]]:
    """The four admitted-value situations: xhat value and expected yhat roots."""
    u, v = svar(U), svar(V)
    z = svar(ZVAR)
    one = sint(1)
    du = sint(d)
    uu1 = u * u + one
    duz = du * u * z
    return {
        "sup1-nonzero": (-duz, [-duz, duz]),
        "sup2-nonzero": (-duz * uu1, [sint(0), -duz * uu1, duz * uu1]),
        "sup1-zero": (-duz, [duz / v, -du * u * v * z]),
        "sup2-zero": (-duz * uu1, [duz * uu1 / v, duz * (one - v * v) / v]),
    }


def admitted_y_values(d: int, situation: str) -> tuple[bool, str]:
    """Certify that the admitted yhat values are exactly the system's roots.

    Computes the gcd of the pointwise system, divides out each expected root,
    and checks that nothing of positive degree survives, which both confirms
    every candidate and rejects every other value.
    """
    xval, expected = ADMITTED_VALUE_SETS(d)[situation]
    at_zero = situation.endswith("zero") and not situation.endswith("nonzero")
    system = pointwise_system(d, xval, at_zero)
    g = system[0]
    for other in system[1:]:
        g = _up_gcd(g, other)
    detail = f"gcd degree {len(g) - 1}"
    if len(g) - 1 != len(expected):
        return False, detail + f", expected {len(expected)} roots"
    for root in expected:
        nxt = _up_div_root(g, root)
        if nxt is None:
            return False, detail + f"; {root} is not a root"
        g = nxt
    if len(g) != 1:
        return False, detail + "; leftover factor of positive degree"
    return True, detail
