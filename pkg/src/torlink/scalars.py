"""Exact scalar arithmetic for the knot-algebra engine.

Three layers, all exact (no floating point anywhere):

* ``Cyclotomic`` -- elements of Q(zeta_d), stored as coordinate vectors with
  respect to the power basis of Q[x] modulo the d-th cyclotomic polynomial.
  For d = 1 this degenerates to plain rationals.
* ``Poly`` -- sparse multivariate Laurent polynomials over ``Cyclotomic``
  coefficients in the variables u, v, z, l and the indexed families
  x0..x{d-1}, y0..y{d-1}.  The trace parameters x*, y* only ever appear with
  non-negative exponents; u, v, z, l are Laurent.  ``l`` is the formal square
  root used when rescaling factors are kept symbolic.
* ``Scalar`` -- a lazy fraction num/den of two Polys.  Equality is decided by
  cross-multiplication (a/b == c/d iff a*d - c*b == 0); no multivariate gcd is
  ever computed.  Only content (a common rational factor and a common monomial
  factor of numerator and denominator jointly) is stripped after every
  operation, which keeps representations small at the problem sizes that occur
  here.

The text rendering produced by ``Scalar.__str__`` / parsed by
``parse_scalar`` is the exchange format used by the CLI and the golden tests:
an expanded polynomial over an expanded polynomial with terms in a fixed total
order, e.g. ``(u^2 + 1)/(u*z)``.  Roots of unity render as ``z{d}^k``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

__all__ = [
    "Cyclotomic",
    "Poly",
    "Scalar",
    "ScalarError",
    "U",
    "V",
    "ZVAR",
    "LVAR",
    "xvar",
    "yvar",
    "svar",
    "szeta",
    "sint",
    "srat",
    "ssum",
    "sprod",
    "parse_scalar",
    "var_name",
]


class ScalarError(ArithmeticError):
    """Raised for division by zero and for substitutions that collapse a denominator."""


# ---------------------------------------------------------------------------
# cyclotomic rationals
# ---------------------------------------------------------------------------

def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Euclidean division of dense one-variable rational polynomials."""
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dden, 0)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i] / lead
        if c:
            quot[i - dden] = c
            for j, dc in enumerate(den):
                num[i - dden + j] -= c * dc
    while num and not num[-1]:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[Fraction, ...]:
    """Dense coefficients of the d-th cyclotomic polynomial (monic, exact)."""
    if d < 1:
        raise ValueError("modulus must be positive")
    poly = [Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)]  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(e)))
            if rem:
                raise AssertionError("cyclotomic division must be exact")
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi_degree(d: int) -> int:
    return len(cyclotomic_polynomial(d)) - 1


@lru_cache(maxsize=None)
def _power_reductions(d: int) -> tuple[tuple[Fraction, ...], ...]:
    """x^m reduced modulo the d-th cyclotomic polynomial, for m < 2*deg - 1."""
    deg = _phi_degree(d)
    phi = cyclotomic_polynomial(d)
    rows: list[tuple[Fraction, ...]] = []
    for m in range(max(2 * deg - 1, d + 1)):
        if m < deg:
            row = [Fraction(0)] * deg
            row[m] = Fraction(1)
            rows.append(tuple(row))
        else:
            shifted = [Fraction(0)] + list(rows[m - 1])
            top = shifted.pop()  # coefficient of x^deg
            if top:
                for j in range(deg):
                    shifted[j] -= top * phi[j]
            rows.append(tuple(shifted))
    return tuple(rows)


class Cyclotomic:
    """An element of Q(zeta_d) in the power basis mod the d-th cyclotomic polynomial."""

    __slots__ = ("d", "coords", "_hash")

    def __init__(self, d: int, coords: tuple[Fraction, ...]):
        self.d = d
        self.coords = coords
        self._hash: int | None = None

    # -- constructors -------------------------------------------------------
    @staticmethod
    def from_rational(value: Fraction | int, d: int = 1) -> "Cyclotomic":
        deg = _phi_degree(d)
        coords = (Fraction(value),) + (Fraction(0),) * (deg - 1)
        return Cyclotomic(d, coords)

    @staticmethod
    def zeta(d: int, power: int = 1) -> "Cyclotomic":
        """zeta_d^power as an exact element of Q(zeta_d)."""
        power %= d
        deg = _phi_degree(d)
        if d == 1:
            return Cyclotomic(1, (Fraction(1),))
        row = _power_reductions(d)[power]
        return Cyclotomic(d, tuple(row[:deg]))

    # -- coercion ------------------------------------------------------------
    def _match(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.d == other.d:
            return self, other
        if self.d == 1:
            return Cyclotomic.from_rational(self.coords[0], other.d), other
        if other.d == 1:
            return self, Cyclotomic.from_rational(other.coords[0], self.d)
        raise ValueError(f"cannot mix roots of unity of orders {self.d} and {other.d}")

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        a, b = self._match(other)
        return Cyclotomic(a.d, tuple(x + y for x, y in zip(a.coords, b.coords)))

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        a, b = self._match(other)
        return Cyclotomic(a.d, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.d, tuple(-x for x in self.coords))

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        a, b = self._match(other)
        d = a.d
        deg = len(a.coords)
        if deg == 1:
            return Cyclotomic(d, (a.coords[0] * b.coords[0],))
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coords):
            if not x:
                continue
            for j, y in enumerate(b.coords):
                if y:
                    conv[i + j] += x * y
        rows = _power_reductions(d)
        out = [Fraction(0)] * deg
        for m, c in enumerate(conv):
            if c:
                row = rows[m]
                for j in range(deg):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyclotomic(d, tuple(out))

    def scale(self, q: Fraction) -> "Cyclotomic":
        return Cyclotomic(self.d, tuple(x * q for x in self.coords))

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return all(not x for x in self.coords)

    def is_rational(self) -> bool:
        return all(not x for x in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational value")
        return self.coords[0]

    def leading_sign(self) -> int:
        for x in self.coords:
            if x:
                return 1 if x > 0 else -1
        return 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.d != other.d:
            if self.is_rational() and other.is_rational():
                return self.coords[0] == other.coords[0]
            return False
        return self.coords == other.coords

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coords[0])
            else:
                self._hash = hash((self.d, self.coords))
        return self._hash

    def __repr__(self) -> str:
        return f"Cyclotomic({self.d}, {self.coords})"

    def __str__(self) -> str:
        return render_cyclotomic(self)


# ---------------------------------------------------------------------------
# variables & monomials
# ---------------------------------------------------------------------------

# A variable is a pair (kind, index).  Kinds order u < v < z < l < x* < y*.
Var = tuple[int, int]

_KIND_U, _KIND_V, _KIND_Z, _KIND_L, _KIND_X, _KIND_Y = range(6)

U: Var = (_KIND_U, 0)
V: Var = (_KIND_V, 0)
ZVAR: Var = (_KIND_Z, 0)
LVAR: Var = (_KIND_L, 0)

_LAURENT_KINDS = {_KIND_U, _KIND_V, _KIND_Z, _KIND_L}


def xvar(m: int) -> Var:
    return (_KIND_X, m)


def yvar(m: int) -> Var:
    return (_KIND_Y, m)


def var_name(var: Var) -> str:
    kind, idx = var
    if kind == _KIND_U:
        return "u"
    if kind == _KIND_V:
        return "v"
    if kind == _KIND_Z:
        return "z"
    if kind == _KIND_L:
        return "l"
    if kind == _KIND_X:
        return f"x{idx}"
    return f"y{idx}"


# A monomial is a tuple of (var, exponent) pairs sorted by var, exponent != 0.
Mono = tuple[tuple[Var, int], ...]

_EMPTY_MONO: Mono = ()


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for var, e in b:
        ne = merged.get(var, 0) + e
        if ne:
            merged[var] = ne
        else:
            del merged[var]
    return tuple(sorted(merged.items()))


def _mono_sort_key(mono: Mono):
    # Descending lexicographic order on exponent vectors; constants sort last.
    return tuple((var[0], var[1], -e) for var, e in mono) + (((9, 0, 0),))


# ---------------------------------------------------------------------------
# sparse polynomials
# ---------------------------------------------------------------------------

_ZERO_CYC = Cyclotomic(1, (Fraction(0),))
_ONE_CYC = Cyclotomic(1, (Fraction(1),))


class Poly:
    """Sparse Laurent polynomial with Cyclotomic coefficients; immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[Mono, Cyclotomic]):
        self.terms = terms
        self._hash: int | None = None

    # -- constructors --------------------------------------------------------
    @staticmethod
    def zero() -> "Poly":
        return _POLY_ZERO

    @staticmethod
    def one() -> "Poly":
        return _POLY_ONE

    @staticmethod
    def const(c: Cyclotomic) -> "Poly":
        if c.is_zero():
            return _POLY_ZERO
        return Poly({_EMPTY_MONO: c})

    @staticmethod
    def rational(q: Fraction | int) -> "Poly":
        q = Fraction(q)
        if not q:
            return _POLY_ZERO
        return Poly({_EMPTY_MONO: Cyclotomic.from_rational(q)})

    @staticmethod
    def variable(var: Var, exp: int = 1) -> "Poly":
        if exp == 0:
            return _POLY_ONE
        return Poly({((var, exp),): _ONE_CYC})

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        c = self.terms.get(_EMPTY_MONO)
        return c is not None and c.is_rational() and c.rational_value() == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _EMPTY_MONO in self.terms)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        small, large = (self.terms, other.terms) if len(self.terms) <= len(other.terms) else (other.terms, self.terms)
        out = dict(large)
        for mono, c in small.items():
            cur = out.get(mono)
            if cur is None:
                out[mono] = c
            else:
                s = cur + c
                if s.is_zero():
                    del out[mono]
                else:
                    out[mono] = s
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.terms or not other.terms:
            return _POLY_ZERO
        if other.is_one():
            return self
        if self.is_one():
            return other
        if len(other.terms) == 1:
            ((m2, c2),) = other.terms.items()
            res: dict[Mono, Cyclotomic] = {}
            for m1, c1 in self.terms.items():
                c = c1 * c2
                if not c.is_zero():
                    res[_mono_mul(m1, m2)] = c
            return Poly(res)
        if len(self.terms) == 1:
            ((m1, c1),) = self.terms.items()
            res = {}
            for m2, c2 in other.terms.items():
                c = c1 * c2
                if not c.is_zero():
                    res[_mono_mul(m1, m2)] = c
            return Poly(res)
        out: dict[Mono, Cyclotomic] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                cur = out.get(m)
                if cur is None:
                    if not c.is_zero():
                        out[m] = c
                else:
                    s = cur + c
                    if s.is_zero():
                        del out[m]
                    else:
                        out[m] = s
        return Poly(out)

    def mul_mono(self, mono: Mono) -> "Poly":
        if not mono:
            return self
        return Poly({_mono_mul(m, mono): c for m, c in self.terms.items()})

    def scale_rational(self, q: Fraction) -> "Poly":
        if not q:
            return _POLY_ZERO
        return Poly({m: c.scale(q) for m, c in self.terms.items()})

    def __pow__(self, exp: int) -> "Poly":
        if exp < 0:
            raise ValueError("Poly power must be non-negative")
        result = _POLY_ONE
        base = self
        while exp:
            if exp & 1:
                result = result * base
            exp >>= 1
            if exp:
                base = base * base
        return result

    # -- structure -----------------------------------------------------------
    def key(self) -> frozenset:
        return frozenset(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def sorted_terms(self) -> list[tuple[Mono, Cyclotomic]]:
        return sorted(self.terms.items(), key=lambda kv: _mono_sort_key(kv[0]))

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Poly({render_poly(self)!r})"


_POLY_ZERO = Poly({})
_POLY_ONE = Poly({_EMPTY_MONO: _ONE_CYC})


# ---------------------------------------------------------------------------
# fraction normalization
# ---------------------------------------------------------------------------

def _rational_content(polys: Iterable[Poly]) -> Fraction:
    num_gcd = 0
    den_lcm = 1
    for p in polys:
        for c in p.terms.values():
            for q in c.coords:
                if q:
                    num_gcd = gcd(num_gcd, q.numerator)
                    den_lcm = den_lcm * q.denominator // gcd(den_lcm, q.denominator)
    if num_gcd == 0:
        return Fraction(1)
    return Fraction(num_gcd, den_lcm)


def _joint_monomial_shift(num: Poly, den: Poly) -> Mono:
    mins: dict[Var, int] = {}
    seen: dict[Var, int] = {}
    total = len(num.terms) + len(den.terms)
    for p in (num, den):
        for mono in p.terms:
            for var, e in mono:
                if var in mins:
                    if e < mins[var]:
                        mins[var] = e
                    seen[var] += 1
                else:
                    mins[var] = e
                    seen[var] = 1
    shift = []
    for var, mn in mins.items():
        if seen[var] < total:
            mn = min(mn, 0)
        if mn:
            shift.append((var, -mn))
    return tuple(sorted(shift))


def _normalize_fraction(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ScalarError("zero denominator")
    if num.is_zero():
        return _POLY_ZERO, _POLY_ONE
    shift = _joint_monomial_shift(num, den)
    if shift:
        num = num.mul_mono(shift)
        den = den.mul_mono(shift)
    content = _rational_content((num, den))
    if content != 1:
        inv = 1 / content
        num = num.scale_rational(inv)
        den = den.scale_rational(inv)
    # orient the sign by the leading denominator coefficient
    lead = min(den.terms, key=_mono_sort_key)
    if den.terms[lead].leading_sign() < 0:
        num = -num
        den = -den
    if den.is_constant():
        c = den.terms[_EMPTY_MONO]
        if c.is_rational():
            q = c.rational_value()
            if q != 1:
                num = num.scale_rational(1 / q)
            den = _POLY_ONE
    elif num.terms == den.terms:
        return _POLY_ONE, _POLY_ONE
    return num, den


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

class Scalar:
    """Lazy fraction of two Polys with cross-multiplication equality."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = _POLY_ONE, _normalized: bool = False):
        if _normalized:
            self.num = num
            self.den = den
        else:
            self.num, self.den = _normalize_fraction(num, den)

    # -- constructors --------------------------------------------------------
    @staticmethod
    def zero() -> "Scalar":
        return _S_ZERO

    @staticmethod
    def one() -> "Scalar":
        return _S_ONE

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Scalar") -> "Scalar":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den, _normalized=True)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if self.is_zero() or other.is_zero():
            return _S_ZERO
        if self.is_one():
            return other
        if other.is_one():
            return self
        return Scalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        if other.is_zero():
            raise ScalarError("division by zero")
        return Scalar(self.num * other.den, self.den * other.num)

    def __pow__(self, exp: int) -> "Scalar":
        if exp == 0:
            return _S_ONE
        if exp < 0:
            if self.is_zero():
                raise ScalarError("negative power of zero")
            return Scalar(self.den ** (-exp), self.num ** (-exp))
        return Scalar(self.num ** exp, self.den ** exp)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.num == other.num and self.den == other.den:
            return True
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self) -> int:
        # Hash only structurally-normalized data; equal-by-cross-multiplication
        # values may hash differently, so Scalars are not meant as dict keys.
        return hash((self.num, self.den))

    # -- substitution --------------------------------------------------------
    def substitute(self, bindings: Mapping[Var, "Scalar"]) -> "Scalar":
        """Simultaneous substitution; unbound variables pass through."""
        if not bindings:
            return self
        num = _subst_value(self.num, bindings)
        den = _subst_value(self.den, bindings)
        if den.is_zero():
            raise ScalarError("denominator vanishes under substitution")
        return num / den

    def __str__(self) -> str:
        return render_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({render_scalar(self)!r})"


_S_ZERO = Scalar(_POLY_ZERO, _POLY_ONE, _normalized=True)
_S_ONE = Scalar(_POLY_ONE, _POLY_ONE, _normalized=True)


def sint(n: int) -> Scalar:
    return Scalar(Poly.rational(n))


def srat(p: int, q: int = 1) -> Scalar:
    return Scalar(Poly.rational(Fraction(p, q)))


def svar(var: Var, exp: int = 1) -> Scalar:
    if exp >= 0:
        return Scalar(Poly.variable(var, exp))
    return Scalar(_POLY_ONE, Poly.variable(var, -exp))


def szeta(d: int, power: int = 1) -> Scalar:
    return Scalar(Poly.const(Cyclotomic.zeta(d, power)))


def ssum(values: Iterable[Scalar]) -> Scalar:
    """Sum with identical-denominator batching (keeps lazy fractions small)."""
    groups: dict[Poly, Poly] = {}
    order: list[Poly] = []
    for s in values:
        if s.is_zero():
            continue
        cur = groups.get(s.den)
        if cur is None:
            groups[s.den] = s.num
            order.append(s.den)
        else:
            groups[s.den] = cur + s.num
    total = _S_ZERO
    for den in order:
        num = groups[den]
        if num.is_zero():
            continue
        total = total + Scalar(num, den)
    return total


def sprod(values: Iterable[Scalar]) -> Scalar:
    total = _S_ONE
    for s in values:
        total = total * s
        if total.is_zero():
            return _S_ZERO
    return total


def _subst_value(p: Poly, bindings: Mapping[Var, Scalar]) -> Scalar:
    """Substitute bound variables into a Poly; returns the value as a Scalar.

    Terms are assembled with denominator batching (ssum) so that values whose
    bindings share denominators never cross-multiply against themselves.
    """
    parts: list[Scalar] = []
    for mono, coeff in p.terms.items():
        num = Poly.const(coeff)
        den = _POLY_ONE
        residual: list[tuple[Var, int]] = []
        for var, e in mono:
            b = bindings.get(var)
            if b is None:
                residual.append((var, e))
                continue
            if e >= 0:
                num = num * (b.num ** e)
                den = den * (b.den ** e)
            else:
                if b.is_zero():
                    raise ScalarError("negative power of a zero substitution value")
                num = num * (b.den ** (-e))
                den = den * (b.num ** (-e))
        if residual:
            num = num.mul_mono(tuple(sorted(residual)))
        parts.append(Scalar(num, den))
    return ssum(parts)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_cyclotomic(c: Cyclotomic) -> str:
    if c.is_rational():
        return _render_fraction(c.rational_value())
    parts: list[str] = []
    for k, q in enumerate(c.coords):
        if not q:
            continue
        if k == 0:
            body = _render_fraction(abs(q))
        else:
            zname = f"z{c.d}" if k == 1 else f"z{c.d}^{k}"
            body = zname if abs(q) == 1 else f"{_render_fraction(abs(q))}*{zname}"
        sign = "-" if q < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def _render_term(mono: Mono, coeff: Cyclotomic, lead: bool) -> str:
    factors = []
    for var, e in mono:
        name = var_name(var)
        factors.append(name if e == 1 else f"{name}^{e}")
    body = "*".join(factors)
    if coeff.is_rational():
        q = coeff.rational_value()
        sign = "-" if q < 0 else "+"
        aq = abs(q)
        if body:
            cs = "" if aq == 1 else f"{_render_fraction(aq)}*"
            text = f"{cs}{body}"
        else:
            text = _render_fraction(aq)
    else:
        sign = "+"
        ctext = f"({render_cyclotomic(coeff)})"
        text = f"{ctext}*{body}" if body else ctext
    if lead:
        return text if sign == "+" else f"-{text}"
    return f" {sign} {text}"


def render_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (mono, coeff) in enumerate(p.sorted_terms()):
        out.append(_render_term(mono, coeff, lead=(i == 0)))
    return "".join(out)


def render_scalar(s: Scalar) -> str:
    if s.den.is_one():
        return render_poly(s.num)
    return f"({render_poly(s.num)})/({render_poly(s.den)})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Tok:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ValueError(f"expected {ch!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def match(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def read_int(self) -> int:
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == start or (self.pos == start + 1 and not self.text[start].isdigit()):
            raise ValueError(f"expected integer at position {start} in {self.text!r}")
        return int(self.text[start:self.pos])

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_var_token(tk: _Tok) -> tuple[str, int]:
    """Return ('var', kind-data) for u/v/z/l/x{m}/y{m}, or zeta tokens z{d}."""
    ch = tk.peek()
    tk.pos += 1
    digits = ""
    while tk.peek().isdigit():
        digits += tk.peek()
        tk.pos += 1
    return ch, int(digits) if digits else -1


def _parse_cyclo_body(tk: _Tok, d_hint: int) -> Cyclotomic:
    total: Cyclotomic | None = None
    sign = 1
    tk.skip_ws()
    if tk.match("-"):
        sign = -1
    while True:
        tk.skip_ws()
        q = Fraction(1)
        have_num = False
        if tk.peek().isdigit():
            num = tk.read_int()
            den = 1
            if tk.match("/"):
                den = tk.read_int()
            q = Fraction(num, den)
            have_num = True
            tk.skip_ws()
            tk.match("*")
            tk.skip_ws()
        if tk.peek() == "z":
            ch, idx = _parse_var_token(tk)
            if idx < 0:
                raise ValueError("root of unity must carry its order, e.g. z3")
            power = 1
            if tk.match("^"):
                power = tk.read_int()
            val = Cyclotomic.zeta(idx, power).scale(q * sign)
        elif have_num:
            val = Cyclotomic.from_rational(q * sign)
        else:
            raise ValueError(f"bad coefficient near position {tk.pos} in {tk.text!r}")
        total = val if total is None else total + val
        tk.skip_ws()
        if tk.match("+"):
            sign = 1
        elif tk.match("-"):
            sign = -1
        else:
            break
    assert total is not None
    return total


def _parse_poly(tk: _Tok) -> Poly:
    total = Poly.zero()
    sign = 1
    tk.skip_ws()
    if tk.match("-"):
        sign = -1
    while True:
        term = _parse_term(tk)
        if sign < 0:
            term = -term
        total = total + term
        tk.skip_ws()
        save = tk.pos
        if tk.match("+"):
            sign = 1
        elif tk.match("-"):
            sign = -1
        else:
            tk.pos = save
            break
        tk.skip_ws()
    return total


def _parse_term(tk: _Tok) -> Poly:
    coeff = _ONE_CYC
    mono: dict[Var, int] = {}
    saw_factor = False
    while True:
        tk.skip_ws()
        ch = tk.peek()
        if ch == "(":
            tk.expect("(")
            coeff = coeff * _parse_cyclo_body(tk, 1)
            tk.skip_ws()
            tk.expect(")")
            saw_factor = True
        elif ch.isdigit():
            num = tk.read_int()
            den = 1
            save = tk.pos
            if tk.match("/"):
                if tk.peek().isdigit():
                    den = tk.read_int()
                else:
                    tk.pos = save
            coeff = coeff.scale(Fraction(num, den))
            saw_factor = True
        elif ch in "uvzlxy":
            name, idx = _parse_var_token(tk)
            exp = 1
            if tk.match("^"):
                exp = tk.read_int()
            if name == "u":
                var: Var | None = U
            elif name == "v":
                var = V
            elif name == "l":
                var = LVAR
            elif name == "z" and idx < 0:
                var = ZVAR
            elif name == "z":
                coeff = coeff * Cyclotomic.zeta(idx, exp)
                var = None
            elif name == "x":
                if idx < 0:
                    raise ValueError("x variables are indexed, e.g. x1")
                var = xvar(idx)
            else:
                if idx < 0:
                    raise ValueError("y variables are indexed, e.g. y0")
                var = yvar(idx)
            if var is not None:
                mono[var] = mono.get(var, 0) + exp
            saw_factor = True
        else:
            break
        tk.skip_ws()
        if not tk.match("*"):
            break
    if not saw_factor:
        raise ValueError(f"expected term at position {tk.pos} in {tk.text!r}")
    mono_t = tuple(sorted((v, e) for v, e in mono.items() if e))
    return Poly({mono_t: coeff}) if not coeff.is_zero() else Poly.zero()


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical Scalar text format (round-trips with str())."""
    text = text.strip()
    tk = _Tok(text)
    tk.skip_ws()
    if tk.peek() == "(":
        save = tk.pos
        tk.expect("(")
        num = _parse_poly(tk)
        tk.skip_ws()
        if tk.match(")"):
            tk.skip_ws()
            if tk.match("/"):
                tk.skip_ws()
                tk.expect("(")
                den = _parse_poly(tk)
                tk.skip_ws()
                tk.expect(")")
                if not tk.done():
                    raise ValueError(f"trailing input in scalar: {text!r}")
                return Scalar(num, den)
        tk.pos = save
    num = _parse_poly(tk)
    if not tk.done():
        raise ValueError(f"trailing input in scalar: {text!r}")
    return Scalar(num)
