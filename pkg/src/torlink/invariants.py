"""Braid words of type B and the solid-torus link invariants.

A braid word is a sequence of letters over n strands: braiding generators
``s<i>`` / ``s<i>^-1``, the loop generator ``r1`` / ``r1^-1`` winding around
the torus axis, and framing letters ``t<j>^<k>`` when the framing modulus d
is larger than 1.  Closures of such words are (framed) links in the solid
torus, and the invariants evaluate as: map the word into the algebra, take
the Markov trace at a parameter binding that the trace-factorization theory
certifies, and rescale by a writhe-dependent prefactor.

Four invariant families are implemented:

* ``pb``  -- the two-parameter Hecke-level invariant (d = 1, z and y free),
  with the square root of the rescaling factor kept as the formal symbol l.
* ``vb``  -- its Temperley-Lieb specialization (z = -1/(u(1+u^2)),
  y = (v^2-1)/((1+u^2)v)), where the rescaling factor is u^4.
* ``xb``  -- the framed-Hecke-level invariant for a support S: x bound to the
  averaged characters over S, z free, y free-scaled by default (yhat
  proportional to xhat) or bound through a support profile.
* ``rhob`` -- the framed Temperley-Lieb specialization for S (0 in S).

``verify_skein`` and ``verify_markov`` check the defining skein relations and
invariance under conjugation and both stabilizations, exactly.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from . import algebra as alg
from .cyclic import SupportProfile, build_solution, character
from .scalars import (
    LVAR,
    Poly,
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
from .trace import TraceParams, trace

__all__ = [
    "BraidWord",
    "BraidSyntaxError",
    "InvariantSpec",
    "parse_braid",
    "render_braid",
    "epsilon",
    "evaluate",
    "reduce_sqrt",
    "verify_skein",
    "verify_markov",
    "random_word",
]


class BraidSyntaxError(ValueError):
    """Malformed braid text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at token {position})")
        self.position = position


# braid letters: ("s", i, +1|-1), ("r", 1, +1|-1), ("t", j, k)
BraidLetter = tuple[str, int, int]


@dataclass(frozen=True)
class BraidWord:
    n: int
    d: int
    letters: tuple[BraidLetter, ...]

    def __str__(self) -> str:
        return render_braid(self)


def parse_braid(text: str, n: int, d: int) -> BraidWord:
    """Parse whitespace-separated letters: s<i>[^-1], r1[^-1], t<j>^<k>."""
    letters: list[BraidLetter] = []
    tokens = text.split()
    for pos, tok in enumerate(tokens, start=1):
        m = re.fullmatch(r"(s|r|t)(\d+)(?:\^(-?\d+))?", tok)
        if not m:
            raise BraidSyntaxError(f"unknown token {tok!r}", pos)
        kind, idx_s, pow_s = m.groups()
        idx = int(idx_s)
        power = int(pow_s) if pow_s is not None else 1
        if kind == "s":
            if not 1 <= idx <= n - 1:
                raise BraidSyntaxError(f"strand index out of range in {tok!r}", pos)
            if power not in (1, -1):
                raise BraidSyntaxError(f"braiding letters take power +-1: {tok!r}", pos)
            letters.append(("s", idx, power))
        elif kind == "r":
            if idx != 1:
                raise BraidSyntaxError(f"only the loop r1 exists: {tok!r}", pos)
            if power not in (1, -1):
                raise BraidSyntaxError(f"the loop letter takes power +-1: {tok!r}", pos)
            letters.append(("r", 1, power))
        else:
            if d == 1:
                raise BraidSyntaxError(f"framing letter {tok!r} needs modulus > 1", pos)
            if not 1 <= idx <= n:
                raise BraidSyntaxError(f"framing strand out of range in {tok!r}", pos)
            letters.append(("t", idx, power % d))
    return BraidWord(n=n, d=d, letters=tuple(letters))


def render_braid(word: BraidWord) -> str:
    out = []
    for kind, idx, power in word.letters:
        if kind == "t":
            out.append(f"t{idx}^{power}")
        elif power == 1:
            out.append(f"{kind}{idx}")
        else:
            out.append(f"{kind}{idx}^-1")
    return " ".join(out)


def epsilon(word: BraidWord) -> int:
    """Algebraic exponent sum of the braiding letters only."""
    return sum(p for kind, _, p in word.letters if kind == "s")


def _to_algebra(word: BraidWord) -> alg.AlgebraElement:
    letters: list[alg.Letter] = []
    for kind, idx, power in word.letters:
        if kind == "s":
            letters.append(("g", idx, power))
        elif kind == "r":
            letters.append(("b", 1, power))
        else:
            letters.append(("t", idx, power))
    return alg.from_word(word.n, word.d, letters)


# ---------------------------------------------------------------------------
# invariant specifications and parameter binding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantSpec:
    """Which invariant to evaluate, and with which solution data.

    ``support`` parametrizes the framed invariants (defaults to all of
    Z/dZ); ``profile``/``branch`` optionally pin the loop parameters of the
    framed-Hecke invariant to one solution family.  ``substitute_sqrt``
    replaces the formal square root l by its value when the rescaling factor
    is a perfect square (the Temperley-Lieb specializations always do this).
    """

    kind: str  # pb | vb | xb | rhob
    d: int = 1
    support: frozenset[int] | None = None
    profile: SupportProfile | None = None
    branch: int | None = None
    substitute_sqrt: bool = True

    def resolved_support(self) -> frozenset[int]:
        if self.support is not None:
            return self.support
        return frozenset(range(self.d))


def _e_system_x(d: int, support: frozenset[int]) -> tuple[Scalar, ...]:
    size = sint(len(support))
    vals = []
    for k in range(d):
        vals.append(ssum(szeta(d, m * k) for m in sorted(support)) / size)
    return tuple(vals)


def _spec_params(spec: InvariantSpec, d: int) -> tuple[TraceParams, Scalar, Scalar]:
    """Returns (params, rescale factor lambda, loop-normalizer E_S)."""
    u, v = svar(U), svar(V)
    one = sint(1)
    z = svar(ZVAR)
    if spec.kind == "pb":
        if d != 1:
            raise ValueError("the Hecke-level invariant lives at d = 1")
        params = TraceParams(d=1, z=z, x=(one,), y=(svar(yvar(0)),))
        lam = (z - (u - u ** -1)) / z
        return params, lam, one
    if spec.kind == "vb":
        if d != 1:
            raise ValueError("the Temperley-Lieb invariant lives at d = 1")
        zv = sint(-1) / (u * (one + u * u))
        yv = (v * v - one) / ((one + u * u) * v)
        return TraceParams(d=1, z=zv, x=(one,), y=(yv,)), u ** 4, one
    support = spec.resolved_support()
    if not support:
        raise ValueError("the support set must be nonempty")
    es = one / sint(len(support))
    xs = _e_system_x(d, support)
    if spec.kind == "xb":
        if spec.profile is not None:
            if spec.branch is None:
                raise ValueError("a profile needs a branch")
            prof_support = spec.profile.sup1 | spec.profile.sup2
            if prof_support != support:
                raise ValueError("profile support must match the invariant support")
            _, y, _ = build_solution(spec.profile, spec.branch)
            ys = y.values
        else:
            # free loop parameters with yhat supported inside the support of
            # xhat: yhat = y0-scaled xhat, which degenerates to a free y at
            # d = 1 and keeps the trace rescalable for any support
            y0 = svar(yvar(0))
            ys = tuple(y0 * xk for xk in xs)
        params = TraceParams(d=d, z=z, x=xs, y=ys)
        lam = (z - (u - u ** -1) * es) / z
        return params, lam, es
    if spec.kind == "rhob":
        if 0 not in support:
            raise ValueError("the framed Temperley-Lieb invariant needs 0 in the support")
        zv = sint(-1) / (u * (u * u + one) * sint(len(support)))
        supy3: frozenset[int] = frozenset()
        supy4: frozenset[int] = frozenset()
        if spec.profile is not None:
            supy3, supy4 = spec.profile.supy3, spec.profile.supy4
        size = sint(len(support))
        ys = []
        for k in range(d):
            body = (v * v - one) / (v * (u * u + one)) * szeta(d, 0)
            body = body + ssum(szeta(d, m * k) for m in sorted(supy3))
            body = body - ssum(szeta(d, m * k) for m in sorted(supy4))
            ys.append(body / size)
        xs_rho = _e_system_x(d, support)
        params = TraceParams(d=d, z=zv, x=xs_rho, y=tuple(ys))
        return params, u ** 4, es
    raise ValueError(f"unknown invariant kind {spec.kind!r}")


def _sqrt_split(p: Poly, square: Scalar) -> tuple[Scalar, Scalar]:
    """Even and odd parts of a polynomial in the formal root l, after folding
    l^2 -> square."""
    evens: list[Scalar] = []
    odds: list[Scalar] = []
    for mono, coeff in p.terms.items():
        l_exp = 0
        rest = []
        for var, e in mono:
            if var == LVAR:
                l_exp = e
            else:
                rest.append((var, e))
        half, parity = divmod(l_exp, 2)
        base = Scalar(Poly({tuple(rest): coeff})) * square ** half
        (odds if parity else evens).append(base)
    return ssum(evens), ssum(odds)


def reduce_sqrt(value: Scalar, square: Scalar) -> Scalar:
    """Canonical form modulo l^2 = square: degree at most one in the formal
    root, with a root-free denominator.  On this form plain equality is a
    sound test for equality in the quadratic extension."""
    a, b = _sqrt_split(value.num, square)
    c, e = _sqrt_split(value.den, square)
    norm = c * c - e * e * square
    if norm.is_zero():
        raise ZeroDivisionError("denominator vanishes in the quadratic extension")
    ell = svar(LVAR)
    num = (a * c - b * e * square) + (b * c - a * e) * ell
    return num / norm


def evaluate(word: BraidWord, spec: InvariantSpec) -> Scalar:
    """Evaluate the invariant on the closure of the braid word."""
    if word.d != spec.d:
        raise ValueError("braid and invariant modulus differ")
    params, lam, es = _spec_params(spec, word.d)
    tr = trace(_to_algebra(word), params)
    eps = epsilon(word)
    n = word.n
    u = svar(U)
    if spec.kind in ("vb", "rhob"):
        prefactor = (-(sint(1) + u * u) / (es * u)) ** (n - 1) * u ** (2 * eps)
        return prefactor * tr
    ell = svar(LVAR)
    prefactor = ((sint(1) - lam) / (ell * (u - u ** -1) * es)) ** (n - 1) * ell ** eps
    value = prefactor * tr
    if spec.substitute_sqrt:
        value = reduce_sqrt(value, lam)
    return value


# ---------------------------------------------------------------------------
# skein and Markov verification
# ---------------------------------------------------------------------------

def _insert(word: BraidWord, pos: int, letters: list[BraidLetter]) -> BraidWord:
    ls = list(word.letters)
    return BraidWord(word.n, word.d, tuple(ls[:pos] + letters + ls[pos:]))


def _loop_letters(i: int, power: int) -> list[BraidLetter]:
    """The loop of strand i as a braid word (conjugated r1)."""
    down = [("s", j, 1) for j in range(i - 1, 0, -1)]
    up = [("s", j, -1) for j in range(1, i)]
    return down + [("r", 1, power)] + up


def verify_skein(
    spec: InvariantSpec, base: BraidWord, site: tuple[str, int, int]
) -> list[tuple[str, bool]]:
    """Check both skein relations at one insertion site.

    ``site`` is (kind, index, position): kind 's' splices a braiding crossing
    at the position, kind 'r' splices a loop of the indexed strand.  Both
    relations are exact scalar identities.
    """
    kind, idx, pos = site
    d = spec.d
    u, v = svar(U), svar(V)
    results: list[tuple[str, bool]] = []
    if kind == "s":
        plus = evaluate(_insert(base, pos, [("s", idx, 1)]), spec)
        minus = evaluate(_insert(base, pos, [("s", idx, -1)]), spec)
        smooth = ssum(
            evaluate(
                _insert(
                    base,
                    pos,
                    ([("t", idx, s), ("t", idx + 1, (d - s) % d)] if d > 1 else []),
                ),
                spec,
            )
            for s in range(d)
        )
        _, lam, _ = _spec_params(spec, d)
        if spec.kind in ("vb", "rhob"):
            lhs = u ** -2 * plus - u ** 2 * minus
        else:
            # divide the +-1 crossing values by the formal root and reduce
            ell = svar(LVAR)
            lhs = reduce_sqrt(plus / ell - minus * ell, lam)
        rhs = (u - u ** -1) / sint(d) * smooth
        results.append(("crossing-skein", lhs == rhs))
    elif kind == "r":
        plus = evaluate(_insert(base, pos, _loop_letters(idx, 1)), spec)
        minus = evaluate(_insert(base, pos, _loop_letters(idx, -1)), spec)
        smooth = ssum(
            evaluate(_insert(base, pos, [("t", idx, s)] if d > 1 else []), spec)
            for s in range(d)
        )
        lhs = plus - minus
        rhs = (v - v ** -1) / sint(d) * smooth
        results.append(("loop-skein", lhs == rhs))
    else:
        raise ValueError(f"unknown site kind {kind!r}")
    return results


def verify_markov(
    spec: InvariantSpec, word: BraidWord, trials: int, seed: int = 0
) -> list[tuple[str, bool]]:
    """Invariance under random conjugations and both stabilizations."""
    rng = random.Random(seed)
    base_val = evaluate(word, spec)
    results: list[tuple[str, bool]] = []
    gens: list[BraidLetter] = [("r", 1, 1)] + [("s", i, 1) for i in range(1, word.n)]
    if word.d > 1:
        gens += [("t", j, 1) for j in range(1, word.n + 1)]
    for t in range(trials):
        g = rng.choice(gens)
        ginv = (g[0], g[1], -g[2]) if g[0] != "t" else ("t", g[1], (-g[2]) % word.d)
        conj = BraidWord(word.n, word.d, (g,) + word.letters + (ginv,))
        results.append((f"conjugation-{t}", evaluate(conj, spec) == base_val))
    up = BraidWord(word.n + 1, word.d, word.letters + (("s", word.n, 1),))
    down = BraidWord(word.n + 1, word.d, word.letters + (("s", word.n, -1),))
    results.append(("stabilization-positive", evaluate(up, spec) == base_val))
    results.append(("stabilization-negative", evaluate(down, spec) == base_val))
    return results


def random_word(n: int, d: int, length: int, rng: random.Random) -> BraidWord:
    letters: list[BraidLetter] = []
    kinds = ["s"] * 3 + ["r"] * 2 + (["t"] if d > 1 else [])
    for _ in range(length):
        kind = rng.choice(kinds)
        if kind == "s" and n >= 2:
            letters.append(("s", rng.randint(1, n - 1), rng.choice((1, -1))))
        elif kind == "r":
            letters.append(("r", 1, rng.choice((1, -1))))
        elif kind == "t":
            letters.append(("t", rng.randint(1, n), rng.randint(1, d - 1)))
    return BraidWord(n, d, tuple(letters))
